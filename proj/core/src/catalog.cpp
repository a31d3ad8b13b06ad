#include "vortexsphere/catalog.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdint>

#include "json.hpp"
#include "vortexsphere/errors.hpp"

namespace vortexsphere {

namespace {

constexpr double kPi = 3.14159265358979323846;

double height_from_lambda(double lambda) {
  return std::sqrt(lambda * lambda - 1.0) / lambda;
}

// Chart convention: dihedral records use the cylindrical chart (poles have no
// chart), tetrahedral records use the gnomonic chart on the open upper
// hemisphere and fall back to cylindrical below it.
void set_cylindrical_chart(EquilibriumRecord& rec) {
  if (std::abs(rec.point.z()) < 1.0 - 1e-12) rec.chart_point = to_cylindrical(rec.point);
}

void set_tetrahedral_chart(EquilibriumRecord& rec) {
  if (rec.point.z() > 1e-14) {
    rec.chart_point = to_gnomonic(rec.point);
  } else if (std::abs(rec.point.z()) < 1.0 - 1e-12) {
    rec.chart_point = to_cylindrical(rec.point);
  }
}

void push_dihedral(std::vector<EquilibriumRecord>& out, const Vec3& v,
                   EquilibriumKind kind, const std::string& name,
                   std::optional<double> root) {
  EquilibriumRecord rec;
  rec.point = UnitVector3(v);
  rec.kind = kind;
  rec.name = name;
  rec.defining_root = root;
  set_cylindrical_chart(rec);
  out.push_back(rec);
}

// One record per ring point and sign, ordered j = 1..2n with + before -.
void append_ring_pair(std::vector<EquilibriumRecord>& out, int n, double offset,
                      double z, EquilibriumKind kind, const std::string& name,
                      std::optional<double> root) {
  const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
  for (int j = 1; j <= 2 * n; ++j) {
    const double th = offset + (j - 1) * kPi / n;
    for (double s : {1.0, -1.0})
      push_dihedral(out, Vec3{r * std::cos(th), r * std::sin(th), s * z}, kind, name, root);
  }
}

void append_ring(std::vector<EquilibriumRecord>& out, int n, double offset,
                 EquilibriumKind kind, const std::string& name) {
  for (int j = 1; j <= 2 * n; ++j) {
    const double th = offset + (j - 1) * kPi / n;
    push_dihedral(out, Vec3{std::cos(th), std::sin(th), 0.0}, kind, name, std::nullopt);
  }
}

void push_tetrahedral(std::vector<EquilibriumRecord>& out, const Vec3& v,
                      EquilibriumKind kind, const std::string& name,
                      std::optional<double> root) {
  EquilibriumRecord rec;
  rec.point = UnitVector3(v);
  rec.kind = kind;
  rec.name = name;
  rec.defining_root = root;
  set_tetrahedral_chart(rec);
  out.push_back(rec);
}

// All images of (a, b, 0) under coordinate permutations and sign flips,
// 6 * 4 = 24 points when 0 < b < a.
void append_perm_sign(std::vector<EquilibriumRecord>& out, double a, double b,
                      EquilibriumKind kind, const std::string& name) {
  static const int perms[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2},
                                  {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
  for (const auto& p : perms)
    for (int sa : {1, -1})
      for (int sb : {1, -1}) {
        const double src[3] = {sa * a, sb * b, 0.0};
        push_tetrahedral(out, Vec3{src[p[0]], src[p[1]], src[p[2]]}, kind, name,
                         std::nullopt);
      }
}

// All images of (alpha, alpha, beta): 3 positions for beta times 8 sign
// patterns, 24 points.
void append_axis_sign(std::vector<EquilibriumRecord>& out, double alpha,
                      double beta, EquilibriumKind kind, const std::string& name,
                      double root) {
  for (int k = 0; k < 3; ++k)
    for (int s0 : {1, -1})
      for (int s1 : {1, -1})
        for (int s2 : {1, -1}) {
          double v[3] = {s0 * alpha, s1 * alpha, s2 * alpha};
          v[k] = (k == 0 ? s0 : k == 1 ? s1 : s2) * beta;
          push_tetrahedral(out, Vec3{v[0], v[1], v[2]}, kind, name, root);
        }
}

// All images of (a, a, 0): 3 positions for the zero times 4 sign patterns.
void append_zero_sign(std::vector<EquilibriumRecord>& out, double a,
                      EquilibriumKind kind, const std::string& name) {
  for (int k = 0; k < 3; ++k)
    for (int s0 : {1, -1})
      for (int s1 : {1, -1}) {
        double v[3] = {0.0, 0.0, 0.0};
        int si[2] = {s0, s1};
        int slot = 0;
        for (int i = 0; i < 3; ++i)
          if (i != k) v[i] = si[slot++] * a;
        push_tetrahedral(out, Vec3{v[0], v[1], v[2]}, kind, name, std::nullopt);
      }
}

nlohmann::json chart_json(const EquilibriumRecord& rec) {
  if (std::holds_alternative<CylindricalPoint>(rec.chart_point)) {
    const auto& c = std::get<CylindricalPoint>(rec.chart_point);
    return {{"type", "cylindrical"}, {"z", c.z}, {"theta", c.theta}};
  }
  if (std::holds_alternative<GnomonicPolarPoint>(rec.chart_point)) {
    const auto& g = std::get<GnomonicPolarPoint>(rec.chart_point);
    return {{"type", "gnomonic"}, {"R", g.R}, {"Theta", g.Theta}};
  }
  return nullptr;
}

}  // namespace

DefiningPolynomial build_polynomial(PolynomialLabel label, int n) {
  DefiningPolynomial p;
  p.label = label;
  if (label == PolynomialLabel::PT || label == PolynomialLabel::PTCube) {
    p.n = 0;
    p.coefficients = (label == PolynomialLabel::PT)
                         ? std::vector<double>{1.0, -13.0, -13.0, 33.0}
                         : std::vector<double>{1.0, -21.0, -29.0, 57.0};
    return p;
  }
  if (n < 2 || n > 16)
    throw UnsupportedDegree("dihedral defining polynomials require 2 <= n <= 16");
  p.n = n;
  const auto t = chebyshev_coefficients(ChebKind::T, 2 * n);
  const auto u = chebyshev_coefficients(ChebKind::U, 2 * n);
  const bool hat = (label == PolynomialLabel::PaHat || label == PolynomialLabel::PpHat);
  const bool anti = (label == PolynomialLabel::Pa || label == PolynomialLabel::PaHat);
  const std::int64_t ct = hat ? 3 * n + 1 : 3 * n - 1;
  const std::int64_t c0 = hat ? 2 * n + 1 : 2 * n - 1;
  p.coefficients.resize(2 * n + 1);
  for (int k = 0; k <= 2 * n; ++k)
    p.coefficients[k] = static_cast<double>(ct * t[k] - n * u[k]);
  p.coefficients[0] += static_cast<double>(anti ? c0 : -c0);
  return p;
}

double root_in_interval(const DefiningPolynomial& poly, double lo, double hi) {
  constexpr int kScan = 1000;
  const double step = (hi - lo) / kScan;
  int count = 0;
  double a = lo;
  double b = hi;
  double x_left = lo;
  double f_left = poly(x_left);
  for (int i = 1; i <= kScan; ++i) {
    const double x_right = lo + step * i;
    const double f_right = poly(x_right);
    if (f_left * f_right < 0.0 || (f_right == 0.0 && f_left != 0.0)) {
      ++count;
      a = x_left;
      b = x_right;
    }
    x_left = x_right;
    f_left = f_right;
  }
  if (count == 0) throw NoBracket("no sign change in the scan interval");
  if (count > 1) throw MultipleRoots("multiple sign changes in the scan interval");

  double fa = poly(a);
  while (b - a > 1e-13) {
    const double mid = 0.5 * (a + b);
    const double fm = poly(mid);
    if (fm == 0.0) return mid;
    if ((fa < 0.0) == (fm < 0.0)) {
      a = mid;
      fa = fm;
    } else {
      b = mid;
    }
  }
  double x = 0.5 * (a + b);
  const auto d = differentiate_polynomial(poly.coefficients);
  for (int it = 0; it < 3; ++it) {
    const double df = evaluate_polynomial(d, x);
    if (df == 0.0) break;
    x -= poly(x) / df;
  }
  return x;
}

std::string kind_name(EquilibriumKind k) {
  switch (k) {
    case EquilibriumKind::Min: return "min";
    case EquilibriumKind::Saddle: return "saddle";
    case EquilibriumKind::Max: return "max";
    case EquilibriumKind::Collision: return "collision";
  }
  return "unknown";
}

std::vector<EquilibriumRecord> dihedral_catalog(int n, bool with_poles) {
  if (n < 2) throw ConfigError("dihedral catalog requires n >= 2");
  std::vector<EquilibriumRecord> out;
  const std::string suffix = with_poles ? "-with-poles" : "";
  const double zeta = 2.0 * kPi / n;

  if (!(with_poles && n == 2)) {
    const auto pa = build_polynomial(
        with_poles ? PolynomialLabel::PaHat : PolynomialLabel::Pa, n);
    const double la = root_in_interval(pa, 1.0, 4.0);
    append_ring_pair(out, n, zeta / 4.0, height_from_lambda(la),
                     EquilibriumKind::Min, "anti-prism" + suffix, la);
  }

  const auto pp = build_polynomial(
      with_poles ? PolynomialLabel::PpHat : PolynomialLabel::Pp, n);
  const double lp = root_in_interval(pp, 1.0, 4.0);
  append_ring_pair(out, n, 0.0, height_from_lambda(lp), EquilibriumKind::Saddle,
                   "prism" + suffix, lp);

  const EquilibriumKind polygon_kind = (with_poles && n == 2)
                                           ? EquilibriumKind::Min
                                           : EquilibriumKind::Saddle;
  append_ring(out, n, zeta / 4.0, polygon_kind, "polygon" + suffix);

  for (double s : {1.0, -1.0}) {
    EquilibriumRecord rec;
    rec.point = UnitVector3(Vec3{0.0, 0.0, s});
    rec.kind = EquilibriumKind::Collision;
    rec.name = "polar-collision" + suffix;
    out.push_back(rec);
  }

  append_ring(out, n, 0.0, EquilibriumKind::Collision, "polygonal-collision" + suffix);
  return out;
}

std::vector<EquilibriumRecord> tetrahedral_catalog(bool with_cube) {
  std::vector<EquilibriumRecord> out;
  const std::string suffix = with_cube ? "-cube" : "";
  const double phi = (1.0 + std::sqrt(5.0)) / 2.0;

  if (with_cube) {
    const double s = 1.0 / std::sqrt(3.0);
    append_perm_sign(out, phi * s, s / phi, EquilibriumKind::Min, "dodecahedron");
  } else {
    const double s = 1.0 / std::sqrt(1.0 + phi * phi);
    append_perm_sign(out, phi * s, s, EquilibriumKind::Min, "icosahedron");
  }

  const auto pt = build_polynomial(with_cube ? PolynomialLabel::PTCube
                                             : PolynomialLabel::PT);
  const double alpha = std::sqrt(root_in_interval(pt, 0.0, 0.5));
  append_axis_sign(out, alpha, std::sqrt(1.0 - 2.0 * alpha * alpha),
                   EquilibriumKind::Saddle, "truncated-tetrahedron" + suffix, alpha);

  append_zero_sign(out, 1.0 / std::sqrt(2.0), EquilibriumKind::Saddle,
                   "cuboctahedron" + suffix);

  const double c = 1.0 / std::sqrt(3.0);
  const double tets[8][3] = {{c, c, c},   {-c, -c, c}, {-c, c, -c}, {c, -c, -c},
                             {-c, -c, -c}, {c, c, -c},  {c, -c, c},  {-c, c, c}};
  for (const auto& v : tets)
    push_tetrahedral(out, Vec3{v[0], v[1], v[2]}, EquilibriumKind::Collision,
                     "tetrahedral-collision" + suffix, std::nullopt);

  const double axes[6][3] = {{1, 0, 0}, {-1, 0, 0}, {0, 1, 0},
                             {0, -1, 0}, {0, 0, 1},  {0, 0, -1}};
  for (const auto& v : axes)
    push_tetrahedral(out, Vec3{v[0], v[1], v[2]}, EquilibriumKind::Collision,
                     "octahedral-collision" + suffix, std::nullopt);
  return out;
}

std::vector<EquilibriumRecord> catalog_for(const SymmetryScheme& s) {
  if (s.group.kind == GroupKind::Dihedral)
    return dihedral_catalog(s.group.n, s.fixed_choice == FixedChoice::Poles);
  if (s.group.kind == GroupKind::Tetrahedral)
    return tetrahedral_catalog(s.fixed_choice == FixedChoice::Cube);
  throw UnsupportedGroup("no catalog for this group");
}

EquilibriumKind classify_critical_point(const UnitVector3& u, const SymmetryScheme& s) {
  if (distance_to_collision_set(u, s) < 1e-9) return EquilibriumKind::Collision;
  const auto [e1, e2] = tangent_basis(u);
  const double tau = 1e-4;
  auto f = [&](double a, double b) {
    return reduced_hamiltonian(UnitVector3(u.vec() + a * e1 + b * e2), s);
  };
  const double f0 = f(0.0, 0.0);
  const double h11 = (f(tau, 0.0) - 2.0 * f0 + f(-tau, 0.0)) / (tau * tau);
  const double h22 = (f(0.0, tau) - 2.0 * f0 + f(0.0, -tau)) / (tau * tau);
  const double h12 =
      (f(tau, tau) - f(tau, -tau) - f(-tau, tau) + f(-tau, -tau)) / (4.0 * tau * tau);
  const double half_tr = 0.5 * (h11 + h22);
  const double det = h11 * h22 - h12 * h12;
  const double disc = std::sqrt(std::max(0.0, half_tr * half_tr - det));
  const double l1 = half_tr + disc;
  const double l2 = half_tr - disc;
  const double amax = std::max(std::abs(l1), std::abs(l2));
  const double amin = std::min(std::abs(l1), std::abs(l2));
  if (amax == 0.0 || amin < 1e-6 * amax)
    throw DegenerateHessian("Hessian eigenvalue below the relative threshold");
  if (l1 > 0.0 && l2 > 0.0) return EquilibriumKind::Min;
  if (l1 < 0.0 && l2 < 0.0) return EquilibriumKind::Max;
  return EquilibriumKind::Saddle;
}

std::string catalog_to_json(const std::vector<EquilibriumRecord>& records) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& rec : records) {
    nlohmann::json item;
    item["name"] = rec.name;
    item["kind"] = kind_name(rec.kind);
    item["point"] = {rec.point.x(), rec.point.y(), rec.point.z()};
    item["chart"] = chart_json(rec);
    if (rec.defining_root)
      item["defining_root"] = *rec.defining_root;
    else
      item["defining_root"] = nullptr;
    arr.push_back(item);
  }
  return arr.dump(2);
}

std::string catalog_to_table(const std::vector<EquilibriumRecord>& records) {
  std::string out;
  char line[192];
  std::snprintf(line, sizeof line, "%-32s %-10s %14s %14s %14s %14s\n", "name",
                "kind", "x", "y", "z", "root");
  out += line;
  out += std::string(102, '-') + "\n";
  for (const auto& rec : records) {
    if (rec.defining_root) {
      std::snprintf(line, sizeof line, "%-32s %-10s %14.10f %14.10f %14.10f %14.10f\n",
                    rec.name.c_str(), kind_name(rec.kind).c_str(), rec.point.x(),
                    rec.point.y(), rec.point.z(), *rec.defining_root);
    } else {
      std::snprintf(line, sizeof line, "%-32s %-10s %14.10f %14.10f %14.10f %14s\n",
                    rec.name.c_str(), kind_name(rec.kind).c_str(), rec.point.x(),
                    rec.point.y(), rec.point.z(), "-");
    }
    out += line;
  }
  return out;
}

}  // namespace vortexsphere
