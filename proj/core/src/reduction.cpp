#include "vortexsphere/reduction.hpp"

#include <cmath>
#include <numbers>

#include "json.hpp"
#include "vortexsphere/chebyshev.hpp"
#include "vortexsphere/errors.hpp"

namespace vortexsphere {

namespace {

constexpr double kReducedCollisionTol = 1e-9;
// Squared pair distances below this are exact zeros of the regularized
// products; matches the full-system hard collision threshold squared.
constexpr double kSquaredZeroSnap = 1e-28;

double ipow(double x, int e) {
  double acc = 1.0;
  while (e > 0) {
    if (e & 1) acc *= x;
    x *= x;
    e >>= 1;
  }
  return acc;
}

std::vector<UnitVector3> poles_fixed_set() {
  return {UnitVector3(0.0, 0.0, 1.0), UnitVector3(0.0, 0.0, -1.0)};
}

std::vector<UnitVector3> cube_fixed_set() {
  const double c = 1.0 / std::sqrt(3.0);
  return {UnitVector3(c, c, c),    UnitVector3(-c, -c, c), UnitVector3(-c, c, -c),
          UnitVector3(c, -c, -c),  UnitVector3(-c, -c, -c), UnitVector3(c, c, -c),
          UnitVector3(c, -c, c),   UnitVector3(-c, c, c)};
}

// The squared factors of h: |u - g_j u|^2 for j >= 2, then |u - f_k|^2.
// Exponents in exp(-2h) are m/2 for orbit factors and m for fixed ones.
struct Factor {
  double value;
  int exponent;
  Vec3 gradient;  // Euclidean gradient of the squared distance
};

std::vector<Factor> squared_factors(const UnitVector3& u, const SymmetryScheme& s,
                                    bool snap_zeros) {
  std::vector<Factor> out;
  const int m = s.m();
  out.reserve(static_cast<size_t>(m - 1) + s.fixed_points.size());
  for (int j = 1; j < m; ++j) {
    const Vec3 bu = s.quad_forms[j].apply(u.vec());
    // Difference form keeps full relative accuracy near the zeros of the
    // factor; the quadratic form u.Bu bottoms out at absolute 1e-16 and
    // would never reach the snap threshold.
    double q = norm2(u.vec() - s.group.elements[j].apply(u.vec()));
    if (snap_zeros && q < kSquaredZeroSnap) q = 0.0;
    out.push_back({q, m / 2, 2.0 * bu});
  }
  for (const UnitVector3& f : s.fixed_points) {
    const Vec3 d = u - f;
    double r = norm2(d);
    if (snap_zeros && r < kSquaredZeroSnap) r = 0.0;
    out.push_back({r, m, 2.0 * d});
  }
  return out;
}

void require_off_collision_set(const UnitVector3& u, const SymmetryScheme& s) {
  if (distance_to_collision_set(u, s) < kReducedCollisionTol) {
    throw CollisionError("reduced state within 1e-9 of a collision point");
  }
}

Vec3 ambient_reduced_gradient(const UnitVector3& u, const SymmetryScheme& s) {
  const double m = static_cast<double>(s.m());
  Vec3 grad{};
  for (int j = 1; j < s.m(); ++j) {
    const Vec3 bu = s.quad_forms[j].apply(u.vec());
    grad = grad - (m / 2.0) * bu / norm2(u.vec() - s.group.elements[j].apply(u.vec()));
  }
  for (const UnitVector3& f : s.fixed_points) {
    const Vec3 d = u - f;
    grad = grad - m * d / norm2(d);
  }
  return grad;
}

}  // namespace

SymmetryScheme make_scheme(GroupKind kind, int n, FixedChoice fixed) {
  SymmetryScheme s;
  s.fixed_choice = fixed;
  switch (kind) {
    case GroupKind::Dihedral:
      if (n < 2) throw ConfigError("dihedral scheme requires n >= 2");
      if (fixed == FixedChoice::Cube) {
        throw ConfigError("fixed set 'cube' requires the tetrahedral group");
      }
      s.group = build_group(GroupKind::Dihedral, n);
      if (fixed == FixedChoice::Poles) s.fixed_points = poles_fixed_set();
      break;
    case GroupKind::Tetrahedral:
      if (fixed == FixedChoice::Poles) {
        throw ConfigError("fixed set 'poles' requires a dihedral group");
      }
      s.group = build_group(GroupKind::Tetrahedral);
      if (fixed == FixedChoice::Cube) s.fixed_points = cube_fixed_set();
      break;
    default:
      throw ConfigError("reductions are supported for dihedral and tetrahedral groups only");
  }
  s.twist = twist_morphism(s.group, s.fixed_points);
  s.collision_set = fixed_point_set(s.group);
  s.quad_forms.resize(s.group.order());
  for (int j = 0; j < s.group.order(); ++j) {
    const Mat3& g = s.group.elements[j];
    const Mat3 gt = g.transpose();
    Mat3 b;
    for (int i = 0; i < 9; ++i) b.m[i] = -g.m[i] - gt.m[i];
    b(0, 0) += 2.0;
    b(1, 1) += 2.0;
    b(2, 2) += 2.0;
    s.quad_forms[j] = b;
  }
  return s;
}

SymmetryScheme scheme_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("scheme: invalid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("scheme: expected a JSON object");
  for (const auto& [key, value] : j.items()) {
    (void)value;
    if (key != "group" && key != "n" && key != "fixed") {
      throw ConfigError("scheme: unknown key '" + key + "'");
    }
  }
  if (!j.contains("group") || !j["group"].is_string()) {
    throw ConfigError("scheme: missing string key 'group'");
  }
  const std::string group = j["group"].get<std::string>();
  std::string fixed = "none";
  if (j.contains("fixed")) {
    if (!j["fixed"].is_string()) throw ConfigError("scheme: 'fixed' must be a string");
    fixed = j["fixed"].get<std::string>();
  }
  FixedChoice fc;
  if (fixed == "none") {
    fc = FixedChoice::None;
  } else if (fixed == "poles") {
    fc = FixedChoice::Poles;
  } else if (fixed == "cube") {
    fc = FixedChoice::Cube;
  } else {
    throw ConfigError("scheme: 'fixed' must be one of none, poles, cube");
  }
  if (group == "Dn") {
    if (!j.contains("n") || !j["n"].is_number_integer()) {
      throw ConfigError("scheme: group Dn requires integer key 'n'");
    }
    return make_scheme(GroupKind::Dihedral, j["n"].get<int>(), fc);
  }
  if (group == "T") {
    if (j.contains("n")) throw ConfigError("scheme: key 'n' is only valid for group Dn");
    return make_scheme(GroupKind::Tetrahedral, 0, fc);
  }
  throw ConfigError("scheme: 'group' must be 'Dn' or 'T'");
}

std::string scheme_to_json(const SymmetryScheme& s) {
  nlohmann::json j;
  if (s.group.kind == GroupKind::Dihedral) {
    j["group"] = "Dn";
    j["n"] = s.group.n;
  } else {
    j["group"] = "T";
  }
  switch (s.fixed_choice) {
    case FixedChoice::None: j["fixed"] = "none"; break;
    case FixedChoice::Poles: j["fixed"] = "poles"; break;
    case FixedChoice::Cube: j["fixed"] = "cube"; break;
  }
  return j.dump();
}

std::string scheme_name(const SymmetryScheme& s) {
  std::string g = s.group.kind == GroupKind::Dihedral
                      ? "D" + std::to_string(s.group.n)
                      : std::string("T");
  switch (s.fixed_choice) {
    case FixedChoice::None: return "(" + g + ", none)";
    case FixedChoice::Poles: return "(" + g + ", poles)";
    case FixedChoice::Cube: return "(" + g + ", cube)";
  }
  return "(" + g + ", ?)";
}

Configuration embed(const UnitVector3& u, const SymmetryScheme& s) {
  Configuration v;
  v.positions.reserve(s.N());
  for (const Mat3& g : s.group.elements) v.positions.push_back(g.apply(u));
  for (const UnitVector3& f : s.fixed_points) v.positions.push_back(f);
  return v;
}

double distance_to_collision_set(const UnitVector3& u, const SymmetryScheme& s) {
  double best = 2.0;
  for (const UnitVector3& p : s.collision_set.points) {
    best = std::min(best, distance(u, p));
  }
  return best;
}

double reduced_hamiltonian(const UnitVector3& u, const SymmetryScheme& s) {
  require_off_collision_set(u, s);
  double h = 0.0;
  for (const Factor& f : squared_factors(u, s, false)) {
    h -= 0.5 * f.exponent * std::log(f.value);
  }
  return h;
}

TangentVector reduced_gradient(const UnitVector3& u, const SymmetryScheme& s) {
  require_off_collision_set(u, s);
  return {u, tangent_project(u, ambient_reduced_gradient(u, s))};
}

TangentVector reduced_field(const UnitVector3& u, const SymmetryScheme& s) {
  const TangentVector g = reduced_gradient(u, s);
  return {u, cross(u.vec(), g.vec) / (-static_cast<double>(s.m()))};
}

double regularized_reduced_hamiltonian(const UnitVector3& u, const SymmetryScheme& s) {
  double prod = 1.0;
  for (const Factor& f : squared_factors(u, s, true)) {
    prod *= ipow(f.value, f.exponent);
  }
  return prod;
}

TangentVector regularized_reduced_field(const UnitVector3& u, const SymmetryScheme& s) {
  const std::vector<Factor> fs = squared_factors(u, s, true);
  Vec3 grad{};
  for (size_t i = 0; i < fs.size(); ++i) {
    if (fs[i].value == 0.0) continue;  // exponent >= 2, so the term vanishes
    double coeff = static_cast<double>(fs[i].exponent) * ipow(fs[i].value, fs[i].exponent - 1);
    for (size_t l = 0; l < fs.size() && coeff != 0.0; ++l) {
      if (l != i) coeff *= ipow(fs[l].value, fs[l].exponent);
    }
    grad = grad + coeff * fs[i].gradient;
  }
  return {u, cross(u.vec(), grad) / (-static_cast<double>(s.m()))};
}

double time_rescale_factor(const UnitVector3& u0, const SymmetryScheme& s) {
  return -2.0 * std::exp(-2.0 * reduced_hamiltonian(u0, s));
}

double cylindrical_reduced_hamiltonian_dihedral(const CylindricalPoint& p, int n,
                                                bool with_poles, DihedralForm form) {
  if (n < 2) throw ConfigError("dihedral closed form requires n >= 2");
  const double zeta = 2.0 * std::numbers::pi / n;
  const double s2 = 1.0 - p.z * p.z;  // (1 - z^2)
  if (s2 < 1e-18) throw CollisionError("cylindrical form evaluated at a pole");
  const double r = std::sqrt(s2);
  for (int j = 0; j < 2 * n; ++j) {
    const double a = 0.5 * j * zeta;
    const double dx = r * std::cos(p.theta) - std::cos(a);
    const double dy = r * std::sin(p.theta) - std::sin(a);
    if (dx * dx + dy * dy + p.z * p.z < kReducedCollisionTol * kReducedCollisionTol) {
      throw CollisionError("cylindrical form evaluated at a polygonal collision point");
    }
  }
  double h = -0.5 * n * (n - 1.0) * std::log(s2);
  if (form == DihedralForm::Sum) {
    for (int j = 1; j <= 2 * n; ++j) {
      h -= 0.5 * n * std::log(1.0 - r * std::cos(p.theta + 0.5 * j * zeta));
    }
  } else {
    // q_{2n}(r) = r^{2n} T_{2n}(1/r) is a polynomial in r^2: the even-degree
    // coefficient t_{2i} of T_{2n} multiplies (r^2)^{n-i}.
    const std::vector<std::int64_t> t = chebyshev_coefficients(ChebKind::T, 2 * n);
    double q = 0.0;
    for (int i = 0; i <= n; ++i) {
      q += static_cast<double>(t[2 * i]) * ipow(s2, n - i);
    }
    h -= 0.5 * n * std::log(q - ipow(s2, n) * std::cos(2.0 * n * p.theta));
  }
  if (with_poles) h -= n * std::log(s2);
  return h;
}

std::pair<double, double> check_pullback(const UnitVector3& u, const SymmetryScheme& s,
                                         const TangentVector& a, const TangentVector& b) {
  double omega_sum = 0.0;
  for (const Mat3& g : s.group.elements) {
    const Vec3 gu = g.apply(u.vec());
    omega_sum += dot(gu, cross(g.apply(a.vec), g.apply(b.vec)));
  }
  // Fixed factors push forward to zero tangent vectors and contribute nothing.
  const double target = s.m() * dot(u.vec(), cross(a.vec, b.vec));
  return {omega_sum, target};
}

std::pair<double, double> trig_identity_check(int n) {
  if (n < 2) throw ConfigError("trig identity requires n >= 2");
  const double zeta = 2.0 * std::numbers::pi / n;
  double sum = 0.0;
  for (int j = 1; j <= 2 * n; ++j) {
    const double c = std::cos(0.25 * zeta + 0.5 * j * zeta);
    sum += c / (1.0 - c);
  }
  return {sum, 2.0 * n * (n - 1.0)};
}

}  // namespace vortexsphere
