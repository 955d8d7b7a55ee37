#include "pht/polygon.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace pht {

Polygon polygon_of(const QVec& slopes) {
  if (slopes.empty()) throw std::invalid_argument("empty slope sequence");
  Polygon p;
  p.heights.reserve(slopes.size() + 1);
  p.heights.push_back(rat(0));
  Rational sum = 0;
  for (size_t i = 0; i < slopes.size(); ++i) {
    if (i > 0 && slopes[i] < slopes[i - 1])
      throw std::invalid_argument("slope sequence must be weakly increasing");
    sum += slopes[i];
    p.heights.push_back(sum);
  }
  return p;
}

bool newton_above_hodge(const Polygon& newton, const Polygon& hodge) {
  if (newton.heights.size() != hodge.heights.size())
    throw std::invalid_argument("polygons have different numbers of vertices");
  if (newton.heights.empty())
    throw std::invalid_argument("empty polygon");
  if (newton.endpoint() != hodge.endpoint()) return false;
  for (size_t k = 0; k < newton.heights.size(); ++k)
    if (newton.heights[k] < hodge.heights[k]) return false;
  return true;
}

namespace {

double approx(const Rational& r) { return r.get_d(); }

void emit_polyline(std::ostringstream& os, const Polygon& p, double ox,
                   double oy, double sx, double sy, const char* color) {
  os << "  <polyline fill=\"none\" stroke=\"" << color
     << "\" stroke-width=\"2\" points=\"";
  for (size_t k = 0; k < p.heights.size(); ++k) {
    const double x = ox + sx * static_cast<double>(k);
    const double y = oy - sy * approx(p.heights[k]);
    os << x << "," << y << " ";
  }
  os << "\"/>\n";
  for (size_t k = 0; k < p.heights.size(); ++k) {
    const double x = ox + sx * static_cast<double>(k);
    const double y = oy - sy * approx(p.heights[k]);
    os << "  <circle cx=\"" << x << "\" cy=\"" << y << "\" r=\"3\" fill=\""
       << color << "\"/>\n";
  }
}

}  // namespace

std::string polygons_to_svg(const Polygon& newton, const Polygon* hodge) {
  const double width = 480, height = 360, margin = 40;
  double ymin = 0, ymax = 1e-9;
  auto scan = [&](const Polygon& p) {
    for (const auto& h : p.heights) {
      const double y = approx(h);
      ymin = std::min(ymin, y);
      ymax = std::max(ymax, y);
    }
  };
  scan(newton);
  if (hodge) scan(*hodge);
  const size_t nseg = newton.segments();
  const double sx = (width - 2 * margin) / std::max<double>(1, nseg);
  const double sy = (height - 2 * margin) / std::max(1e-9, ymax - ymin);
  const double oy = height - margin + sy * ymin;

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
     << "\" height=\"" << height << "\" viewBox=\"0 0 " << width << " "
     << height << "\">\n";
  os << "  <rect width=\"" << width << "\" height=\"" << height
     << "\" fill=\"white\"/>\n";
  // Axis line at y = 0.
  os << "  <line x1=\"" << margin << "\" y1=\"" << oy << "\" x2=\""
     << width - margin << "\" y2=\"" << oy
     << "\" stroke=\"#999\" stroke-width=\"1\"/>\n";
  if (hodge) emit_polyline(os, *hodge, margin, oy, sx, sy, "#d62728");
  emit_polyline(os, newton, margin, oy, sx, sy, "#1f77b4");
  os << "  <text x=\"" << margin << "\" y=\"" << margin - 16
     << "\" font-family=\"sans-serif\" font-size=\"13\" fill=\"#1f77b4\">"
        "newton</text>\n";
  if (hodge)
    os << "  <text x=\"" << margin + 70 << "\" y=\"" << margin - 16
       << "\" font-family=\"sans-serif\" font-size=\"13\" fill=\"#d62728\">"
          "hodge</text>\n";
  os << "</svg>\n";
  return os.str();
}

}  // namespace pht
