#pragma once

#include "pht/cocycle.hpp"
#include "pht/hecke.hpp"
#include "pht/isocrystal.hpp"
#include "pht/rational.hpp"
#include "pht/root_datum.hpp"
#include "pht/satake.hpp"
#include "pht/scalar.hpp"

#include "json.hpp"

#include <map>
#include <string>

namespace pht {

// JSON conventions shared by the CLI and the table files:
//   * rationals are never serialized as floating point. A rational that is
//     an integer fitting in 64 bits is emitted as a JSON number; everything
//     else is emitted as the string "num/den". Readers accept integers,
//     "num", and "num/den" interchangeably. Isocrystal files always use the
//     string form for valuations and jumps.
//   * scalar coefficients c * pi^a * q^b are flattened to one JSON object per
//     monomial, with keys "coeff" (rational), "pipow" (a) and "qpow" (b);
//     the power keys default to 0 and are omitted when zero. Entries with
//     equal support keys are summed on load.

std::string rational_to_string(const Rational& r);   // "num" or "num/den"
Rational rational_from_string(const std::string& s); // accepts both forms

nlohmann::json rational_to_json(const Rational& r);
Rational rational_from_json(const nlohmann::json& j);

nlohmann::json qvec_to_json(const QVec& v);
QVec qvec_from_json(const nlohmann::json& j);
// Same but every entry rendered as a string (isocrystal file convention).
nlohmann::json qvec_to_json_strings(const QVec& v);

nlohmann::json intvec_to_json(const IntVec& v);
IntVec intvec_from_json(const nlohmann::json& j);

// {"type":"GL","n":3} | {"type":"PGL2"} |
// {"type":"custom","simple_roots":[[...]],"simple_coroots":[[...]],
//  "positive_roots":[[...]],"positive_coroots":[[...]]}.
// The reader additionally accepts a bare name string such as "GL2".
nlohmann::json datum_to_json(const RootDatumPtr& datum);
RootDatumPtr datum_from_json(const nlohmann::json& j);

nlohmann::json field_to_json(const FieldInvariants& k);
FieldInvariants field_from_json(const nlohmann::json& j);

// {"datum":..., "xi":[...], "field":{"p":2,"e":1,"f":1},
//  "variant":"gamma_xi"}
nlohmann::json spec_to_json(const CocycleSpec& spec);
CocycleSpec spec_from_json(const nlohmann::json& j);

// {"frobenius":{"blocks":[{"label":"z1","val":"1/2","jordan":[2]}]},
//  "flag":{"jumps":["0","1"],"bases":[[[...]],...]},"field":{...}}
nlohmann::json isocrystal_to_json(const FilteredIsocrystal& D);
FilteredIsocrystal isocrystal_from_json(const nlohmann::json& j);

// List of {"w":[generator indices],"lambda":[...],"coeff":"num/den"} with
// the optional "qpow"/"pipow" monomial keys described above. "w" is a word
// in the simple reflections of the finite Weyl group (0-based); it may be
// omitted when empty.
nlohmann::json hecke_to_json(const AffineWeyl& group, const HeckeElt& h);
HeckeElt hecke_from_json(const AffineWeyl& group, const nlohmann::json& j);

// Coordinate lists keyed by lattice points only — the file form of spherical
// elements (psi coordinates) and of transform images (sigma coordinates):
// list of {"lambda":[...],"coeff":...(,"qpow","pipow")}.
nlohmann::json coords_to_json(const std::map<IntVec, Scalar>& coords);
std::map<IntVec, Scalar> coords_from_json(const nlohmann::json& j);

nlohmann::json spherical_to_json(const SphericalElt& f);
SphericalElt spherical_from_json(const nlohmann::json& j);

// [{"lambda":[...],"bound":...,"equality":bool}]
nlohmann::json conditions_to_json(const std::vector<DomainCondition>& conds);

}  // namespace pht
