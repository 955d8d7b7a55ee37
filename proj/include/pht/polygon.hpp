#pragma once

#include <string>
#include <vector>

#include "pht/rational.hpp"

namespace pht {

// Convex polygon through (0,0), (1, r1), (2, r1+r2), ... for a weakly
// increasing slope sequence r.
struct Polygon {
  // vertices[k] = (k, r1 + ... + rk); vertices[0] = (0, 0).
  std::vector<Rational> heights;

  size_t segments() const { return heights.empty() ? 0 : heights.size() - 1; }
  const Rational& height_at(size_t k) const { return heights.at(k); }
  const Rational& endpoint() const { return heights.back(); }
};

// Build the polygon of a weakly increasing slope sequence; throws
// invalid_argument when the sequence decreases somewhere or is empty.
Polygon polygon_of(const QVec& slopes);

// True iff `newton` lies on or above `hodge` at every integer abscissa and
// both endpoints coincide. Throws invalid_argument on segment-count mismatch.
bool newton_above_hodge(const Polygon& newton, const Polygon& hodge);

// Static SVG plot of one or two polygons (hodge drawn second when present).
std::string polygons_to_svg(const Polygon& newton, const Polygon* hodge);

}  // namespace pht
