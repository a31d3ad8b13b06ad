#include "svg.hpp"

#include <cstdio>

#include "vortexsphere/errors.hpp"

namespace vortexsphere::tools {

namespace {

constexpr double kRadius = 450.0;
constexpr double kCenter = 500.0;

struct Frame {
  Vec3 e1, e2, n;
};

Frame view_frame(char axis) {
  switch (axis) {
    case 'x': return {{0, 1, 0}, {0, 0, 1}, {1, 0, 0}};
    case 'y': return {{0, 0, 1}, {1, 0, 0}, {0, 1, 0}};
    case 'z': return {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
    default: throw ConfigError("view axis must be one of x, y, z");
  }
}

void append(std::string& out, const char* f, double a, double b) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, a, b);
  out += buf;
}

// One <path> per run of constant visibility.
void append_curve(std::string& out, const std::vector<UnitVector3>& pts,
                  const Frame& fr, const char* color) {
  if (pts.size() < 2) return;
  size_t i = 0;
  while (i + 1 < pts.size()) {
    const bool vis = dot(pts[i].vec(), fr.n) >= 0.0;
    std::string d;
    size_t j = i;
    for (; j < pts.size() && (dot(pts[j].vec(), fr.n) >= 0.0) == vis; ++j) {
      append(d, d.empty() ? "M%.2f %.2f" : " L%.2f %.2f",
             kCenter + kRadius * dot(pts[j].vec(), fr.e1),
             kCenter - kRadius * dot(pts[j].vec(), fr.e2));
    }
    if (j - i >= 2) {
      out += "  <path d=\"";
      out += d;
      out += "\" fill=\"none\" stroke=\"";
      out += color;
      out += vis ? "\" stroke-width=\"1.2\" stroke-opacity=\"1\"/>\n"
                 : "\" stroke-width=\"1.2\" stroke-opacity=\"0.25\"/>\n";
    }
    i = j > i + 1 ? j - 1 : j;  // overlap one point so runs connect
  }
}

}  // namespace

const char* curve_color(CurveClass c) {
  switch (c) {
    case CurveClass::AroundMin: return "#2e8b57";
    case CurveClass::Separatrix: return "#1f4fa0";
    case CurveClass::CollisionLoop: return "#c03030";
    case CurveClass::Unclassified: return "#e08020";
  }
  return "#e08020";
}

std::string render_portrait_svg(const PhasePortrait& portrait,
                                const std::vector<EquilibriumRecord>& records,
                                char view_axis) {
  const Frame fr = view_frame(view_axis);
  std::string out =
      "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 1000 1000\">\n"
      "  <rect width=\"1000\" height=\"1000\" fill=\"#ffffff\"/>\n"
      "  <circle cx=\"500\" cy=\"500\" r=\"450\" fill=\"none\" stroke=\"#999999\" "
      "stroke-width=\"1\"/>\n";
  for (const auto& c : portrait.curves)
    append_curve(out, c.points, fr, curve_color(c.label));
  for (const auto& r : records) {
    const char* fill = r.kind == EquilibriumKind::Min       ? "#2e8b57"
                       : r.kind == EquilibriumKind::Saddle  ? "#202020"
                       : r.kind == EquilibriumKind::Max     ? "#6a3fa0"
                                                            : "#c03030";
    const bool vis = dot(r.point.vec(), fr.n) >= 0.0;
    char buf[192];
    std::snprintf(buf, sizeof buf,
                  "  <circle cx=\"%.2f\" cy=\"%.2f\" r=\"5\" fill=\"%s\" "
                  "fill-opacity=\"%s\"/>\n",
                  kCenter + kRadius * dot(r.point.vec(), fr.e1),
                  kCenter - kRadius * dot(r.point.vec(), fr.e2), fill,
                  vis ? "1" : "0.25");
    out += buf;
  }
  out += "</svg>\n";
  return out;
}

}  // namespace vortexsphere::tools
