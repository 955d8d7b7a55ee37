#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <random>

#include "doctest.h"
#include "pht/polygon.hpp"
#include "pht/root_datum.hpp"

using namespace pht;

namespace {
QVec qv(std::vector<Rational> v) { return v; }
}

TEST_CASE("polygon construction") {
  auto p = polygon_of(qv({rat(0), rat(1)}));
  CHECK(p.heights == std::vector<Rational>{rat(0), rat(0), rat(1)});
  auto h = polygon_of(qv({rat(1, 2), rat(1, 2)}));
  CHECK(h.heights == std::vector<Rational>{rat(0), rat(1, 2), rat(1)});
  auto t = polygon_of(qv({rat(0), rat(2), rat(4)}));
  CHECK(t.heights == std::vector<Rational>{rat(0), rat(0), rat(2), rat(6)});

  CHECK_THROWS_AS(polygon_of(qv({rat(1), rat(0)})), std::invalid_argument);
  CHECK_THROWS_AS(polygon_of(qv({})), std::invalid_argument);

  CHECK(t.segments() == 3);
  CHECK(t.endpoint() == rat(6));
  CHECK(t.height_at(2) == rat(2));
}

TEST_CASE("lies-above comparison") {
  auto p01 = polygon_of(qv({rat(0), rat(1)}));
  auto ph = polygon_of(qv({rat(1, 2), rat(1, 2)}));
  CHECK(newton_above_hodge(ph, p01));
  CHECK(newton_above_hodge(p01, p01));
  CHECK_FALSE(newton_above_hodge(p01, ph));

  // Different endpoints: never above.
  auto p02 = polygon_of(qv({rat(0), rat(2)}));
  CHECK_FALSE(newton_above_hodge(p02, p01));
  CHECK_FALSE(newton_above_hodge(p01, p02));

  auto p3 = polygon_of(qv({rat(0), rat(0), rat(1)}));
  CHECK_THROWS_AS(newton_above_hodge(p3, p01), std::invalid_argument);
}

TEST_CASE("polygon comparison matches dominance order") {
  std::mt19937 rng(31337);
  for (int n : {2, 3, 4}) {
    auto rd = root_datum_by_name("GL" + std::to_string(n));
    std::uniform_int_distribution<long> num(-6, 6);
    std::uniform_int_distribution<long> den(1, 3);
    for (int t = 0; t < 400; ++t) {
      QVec a(n), b(n);
      for (int i = 0; i < n; ++i) a[i] = rat(num(rng), den(rng));
      for (int i = 0; i < n - 1; ++i) b[i] = rat(num(rng), den(rng));
      std::sort(a.begin(), a.end());
      // Force equal totals, then sort b; if sorting breaks the totals
      // equality invariant nothing is lost -- both sides see the same data.
      Rational sa = 0, sb = 0;
      for (int i = 0; i < n; ++i) sa += a[i];
      for (int i = 0; i + 1 < n; ++i) sb += b[i];
      b[n - 1] = sa - sb;
      std::sort(b.begin(), b.end());
      const bool above = newton_above_hodge(polygon_of(a), polygon_of(b));
      const bool dom = rd->leq_dominance(a, b);
      CHECK(above == dom);
    }
  }
}

TEST_CASE("convexity of constructed polygons") {
  std::mt19937 rng(7);
  std::uniform_int_distribution<long> num(-9, 9);
  std::uniform_int_distribution<long> den(1, 4);
  for (int t = 0; t < 200; ++t) {
    QVec r(5);
    for (auto& c : r) c = rat(num(rng), den(rng));
    std::sort(r.begin(), r.end());
    auto p = polygon_of(r);
    for (size_t k = 2; k < p.heights.size(); ++k) {
      // Slopes nondecreasing: h[k] - h[k-1] >= h[k-1] - h[k-2].
      CHECK(p.heights[k] - p.heights[k - 1] >=
            p.heights[k - 1] - p.heights[k - 2]);
    }
  }
}

TEST_CASE("svg rendering") {
  auto p01 = polygon_of(qv({rat(0), rat(1)}));
  auto ph = polygon_of(qv({rat(1, 2), rat(1, 2)}));
  auto svg = polygons_to_svg(ph, &p01);
  CHECK(svg.find("<svg") == 0);
  CHECK(svg.find("polyline") != std::string::npos);
  CHECK(svg.find("newton") != std::string::npos);
  CHECK(svg.find("hodge") != std::string::npos);
  auto svg1 = polygons_to_svg(ph, nullptr);
  CHECK(svg1.find("hodge") == std::string::npos);
}
