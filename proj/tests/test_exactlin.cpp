#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "pht/exactlin.hpp"
#include "pht/rational.hpp"

using namespace pht;

TEST_CASE("rational parsing and formatting") {
  CHECK(parse_rational("3/4") == Rational(3, 4));
  CHECK(parse_rational("-2") == Rational(-2));
  CHECK(parse_rational("6/4") == Rational(3, 2));
  CHECK(rational_string(Rational(3, 2)) == "3/2");
  CHECK(rational_string(Rational(5)) == "5/1");
  CHECK(rational_string(Rational(-1, 3)) == "-1/3");
  CHECK_THROWS(parse_rational("1/0"));
  CHECK_THROWS(parse_rational("abc"));
}

TEST_CASE("p-adic valuation") {
  CHECK(val_p(Rational(8), 2) == 3);
  CHECK(val_p(Rational(1, 4), 2) == -2);
  CHECK(val_p(Rational(18), 3) == 2);
  CHECK(val_p(Rational(5), 3) == 0);
  CHECK_THROWS(val_p(Rational(0), 2));
}

TEST_CASE("matrix inverse and determinant") {
  QMatrix m = QMatrix::from_rows({{rat(2), rat(1)}, {rat(1), rat(1)}});
  CHECK(m.det() == Rational(1));
  QMatrix inv = m.inverse();
  QMatrix prod = m.mul(inv);
  CHECK(prod.at(0, 0) == Rational(1));
  CHECK(prod.at(0, 1) == Rational(0));
  CHECK(prod.at(1, 0) == Rational(0));
  CHECK(prod.at(1, 1) == Rational(1));
  QMatrix sing = QMatrix::from_rows({{rat(1), rat(2)}, {rat(2), rat(4)}});
  CHECK(sing.det() == Rational(0));
  CHECK_THROWS(sing.inverse());
}

TEST_CASE("rank and subspace intersection dimension") {
  std::vector<QVec> a = {{rat(1), rat(0), rat(0)}, {rat(0), rat(1), rat(0)}};
  std::vector<QVec> b = {{rat(0), rat(1), rat(0)}, {rat(0), rat(0), rat(1)}};
  CHECK(rank(QMatrix::from_rows(a)) == 2);
  CHECK(intersect_dim(a, b) == 1);
  std::vector<QVec> c = {{rat(1), rat(1), rat(0)}};
  CHECK(intersect_dim(a, c) == 1);
  std::vector<QVec> d = {{rat(0), rat(0), rat(1)}};
  CHECK(intersect_dim(a, d) == 0);
  CHECK(intersect_dim(a, a) == 2);
}

TEST_CASE("p-power elementary divisor valuations") {
  QMatrix m = QMatrix::from_rows({{rat(2), rat(0)}, {rat(1), rat(2)}});
  IntVec v = snf_p_valuations(m, 2);
  CHECK(v == IntVec{2, 0});
  QMatrix m2 = QMatrix::from_rows({{rat(1), rat(0)}, {Rational(1, 2), rat(1)}});
  IntVec v2 = snf_p_valuations(m2, 2);
  CHECK(v2 == IntVec{1, -1});
  QMatrix m3 = QMatrix::from_rows({{rat(4), rat(0), rat(0)},
                                   {rat(0), rat(1), rat(0)},
                                   {rat(0), rat(0), rat(2)}});
  CHECK(snf_p_valuations(m3, 2) == IntVec{2, 1, 0});
  // Valuations are invariant under row/column operations over Z_p.
  QMatrix m4 = QMatrix::from_rows({{rat(4), rat(1)}, {rat(0), rat(2)}});
  CHECK(snf_p_valuations(m4, 2) == IntVec{3, 0});
}

TEST_CASE("cone membership via exact LP") {
  std::vector<QVec> rays = {{rat(1), rat(-1), rat(0)}, {rat(0), rat(1), rat(-1)}};
  CHECK(in_cone(rays, {rat(1), rat(0), rat(-1)}));
  CHECK(in_cone(rays, {rat(2), rat(-1), rat(-1)}));
  CHECK(in_cone(rays, {rat(0), rat(0), rat(0)}));
  CHECK_FALSE(in_cone(rays, {rat(-1), rat(1), rat(0)}));
  CHECK_FALSE(in_cone(rays, {rat(1), rat(0), rat(0)}));
  CHECK(in_cone(rays, {Rational(1, 2), Rational(1, 2), rat(-1)}));
}

TEST_CASE("convex hull membership via exact LP") {
  std::vector<QVec> pts = {{rat(0), rat(0)}, {rat(1), rat(0)}, {rat(0), rat(1)}};
  CHECK(in_hull(pts, {Rational(1, 3), Rational(1, 3)}));
  CHECK(in_hull(pts, {rat(1), rat(0)}));
  CHECK(in_hull(pts, {Rational(1, 2), Rational(1, 2)}));
  CHECK_FALSE(in_hull(pts, {Rational(2, 3), Rational(2, 3)}));
  CHECK_FALSE(in_hull(pts, {rat(-1), rat(0)}));
}
