#include "vortexsphere/checks.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <functional>
#include <optional>
#include <random>
#include <set>
#include <thread>

#include "json.hpp"
#include "vortexsphere/catalog.hpp"
#include "vortexsphere/chebyshev.hpp"
#include "vortexsphere/detail/rk.hpp"
#include "vortexsphere/dynamics.hpp"
#include "vortexsphere/errors.hpp"
#include "vortexsphere/groups.hpp"
#include "vortexsphere/orbits.hpp"
#include "vortexsphere/reduction.hpp"
#include "vortexsphere/sphere.hpp"

namespace vortexsphere::checks {

namespace {

constexpr double kPi = 3.14159265358979323846;

std::string fmt(const char* f, ...) {
  char buf[256];
  va_list ap;
  va_start(ap, f);
  std::vsnprintf(buf, sizeof buf, f, ap);
  va_end(ap);
  return buf;
}

struct SchemeSpec {
  GroupKind kind;
  int n;
  FixedChoice fixed;
};

// Scheme set exercised by the per-scheme checks: three dihedral orders per
// fixed-set choice plus both tetrahedral variants.
const std::vector<SchemeSpec>& scheme_specs() {
  static const std::vector<SchemeSpec> list = {
      {GroupKind::Dihedral, 2, FixedChoice::None},
      {GroupKind::Dihedral, 3, FixedChoice::None},
      {GroupKind::Dihedral, 4, FixedChoice::None},
      {GroupKind::Dihedral, 2, FixedChoice::Poles},
      {GroupKind::Dihedral, 3, FixedChoice::Poles},
      {GroupKind::Dihedral, 5, FixedChoice::Poles},
      {GroupKind::Tetrahedral, 0, FixedChoice::None},
      {GroupKind::Tetrahedral, 0, FixedChoice::Cube},
  };
  return list;
}

std::string scheme_slug(const SchemeSpec& sp) {
  if (sp.kind == GroupKind::Dihedral)
    return "D" + std::to_string(sp.n) +
           (sp.fixed == FixedChoice::Poles ? "poles" : "");
  return sp.fixed == FixedChoice::Cube ? "Tcube" : "T";
}

SymmetryScheme scheme_of(const SchemeSpec& sp) {
  return make_scheme(sp.kind, sp.n, sp.fixed);
}

UnitVector3 random_unit(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  for (;;) {
    const double z = d(rng);
    const double r2 = 1.0 - z * z;
    if (r2 <= 0.0) continue;
    const double th = kPi * (d(rng) + 1.0);
    const double r = std::sqrt(r2);
    return UnitVector3(Vec3{r * std::cos(th), r * std::sin(th), z});
  }
}

Vec3 random_vec(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  return Vec3{d(rng), d(rng), d(rng)};
}

void flat_state(const UnitVector3& u, std::vector<double>& y) {
  y = {u.x(), u.y(), u.z()};
}

void project_unit(std::vector<double>& y) {
  const double n = std::sqrt(y[0] * y[0] + y[1] * y[1] + y[2] * y[2]);
  y[0] /= n;
  y[1] /= n;
  y[2] /= n;
}

detail::DerivFn reduced_deriv(const SymmetryScheme& s) {
  return [&s](double, const std::vector<double>& y, std::vector<double>& dydt) {
    const TangentVector f = reduced_field(UnitVector3(Vec3{y[0], y[1], y[2]}), s);
    dydt[0] = f.vec.x;
    dydt[1] = f.vec.y;
    dydt[2] = f.vec.z;
  };
}

double max_field_component(const std::vector<TangentVector>& field) {
  double m = 0.0;
  for (const auto& f : field) {
    m = std::max({m, std::abs(f.vec.x), std::abs(f.vec.y), std::abs(f.vec.z)});
  }
  return m;
}

const EquilibriumRecord& record_named(const std::vector<EquilibriumRecord>& recs,
                                      const std::string& name) {
  for (const auto& r : recs)
    if (r.name == name) return r;
  throw ConfigError("no catalog record named " + name);
}

}  // namespace

const std::vector<std::string>& section_names() {
  static const std::vector<std::string> names = {
      "tables",   "roots",          "residuals", "lemmas",       "conjugacy",
      "momentum", "regularization", "families",  "completeness", "symmetry"};
  return names;
}

std::vector<CheckResult> check_tables() {
  std::vector<CheckResult> out;
  const double s58 = std::sqrt(58.0);
  const double s65 = std::sqrt(65.0);
  const double s6 = std::sqrt(6.0);
  const double s106 = std::sqrt(106.0);
  const double s57 = std::sqrt(57.0);
  const double s41 = std::sqrt(41.0);
  struct Entry {
    PolynomialLabel label;
    int n;
    double lambda;
    double z;
  };
  const std::vector<Entry> closed = {
      {PolynomialLabel::Pa, 2, std::sqrt(1.5), 1.0 / std::sqrt(3.0)},
      {PolynomialLabel::Pa, 3, std::sqrt(1.5), 1.0 / std::sqrt(3.0)},
      {PolynomialLabel::Pa, 4, 0.5 * std::sqrt((10.0 + s58) / 3.0),
       std::sqrt((2.0 * s58 - 13.0) / 7.0)},
      {PolynomialLabel::Pa, 5, 0.25 * std::sqrt(15.0 + s65),
       std::sqrt((s65 - 5.0) / 10.0)},
      {PolynomialLabel::Pp, 2, std::sqrt(2.0), 1.0 / std::sqrt(2.0)},
      {PolynomialLabel::Pp, 3, 0.5 * std::sqrt(4.0 + s6),
       std::sqrt((2.0 * s6 - 3.0) / 5.0)},
      {PolynomialLabel::Pp, 4, std::sqrt(1.5), 1.0 / std::sqrt(3.0)},
      {PolynomialLabel::PaHat, 3, 3.0 / (2.0 * std::sqrt(2.0)), 1.0 / 3.0},
      {PolynomialLabel::PaHat, 4, 0.5 * std::sqrt((14.0 + s106) / 5.0),
       std::sqrt(2.0 * s106 - 19.0) / 3.0},
      {PolynomialLabel::PaHat, 5, 0.5 * std::sqrt(5.0), 1.0 / std::sqrt(5.0)},
      {PolynomialLabel::PpHat, 2, 2.0 / std::sqrt(3.0), 0.5},
      {PolynomialLabel::PpHat, 3, 0.25 * std::sqrt(13.0 + s57),
       std::sqrt((s57 - 6.0) / 7.0)},
      {PolynomialLabel::PpHat, 4, 0.5 * std::sqrt((19.0 + s41) / 5.0),
       0.25 * std::sqrt(s41 - 3.0)},
  };
  double worst = 0.0;
  for (const auto& e : closed) {
    const double lambda = root_in_interval(build_polynomial(e.label, e.n), 1.0, 4.0);
    const double z = std::sqrt(1.0 - 1.0 / (lambda * lambda));
    worst = std::max({worst, std::abs(lambda - e.lambda), std::abs(z - e.z)});
  }
  out.push_back({"tables_closed_forms", "tables", worst <= 1e-10,
                 fmt("max |err| %.3g over 13 height pairs", worst)});

  const double lp5 = root_in_interval(build_polynomial(PolynomialLabel::Pp, 5), 1.0, 4.0);
  const double lph5 =
      root_in_interval(build_polynomial(PolynomialLabel::PpHat, 5), 1.0, 4.0);
  const double zp5 = std::sqrt(1.0 - 1.0 / (lp5 * lp5));
  const double zph5 = std::sqrt(1.0 - 1.0 / (lph5 * lph5));
  const double dec = std::max({std::abs(lp5 - 1.20467), std::abs(zp5 - 0.557613),
                               std::abs(lph5 - 1.12677), std::abs(zph5 - 0.460816)});
  out.push_back({"tables_decimals", "tables", dec <= 5e-5,
                 fmt("max |err| %.3g over 4 decimal entries", dec)});

  bool absent = false;
  try {
    root_in_interval(build_polynomial(PolynomialLabel::PaHat, 2), 1.0, 4.0);
  } catch (const NoBracket&) {
    absent = true;
  }
  out.push_back({"tables_no_antiprism_poles_n2", "tables", absent,
                 absent ? std::string("no root above 1, as tabulated")
                        : std::string("unexpected root found")});
  return out;
}

std::vector<CheckResult> check_tetrahedral_roots() {
  std::vector<CheckResult> out;
  const double alpha =
      std::sqrt(root_in_interval(build_polynomial(PolynomialLabel::PT), 0.0, 0.5));
  const double alpha_hat =
      std::sqrt(root_in_interval(build_polynomial(PolynomialLabel::PTCube), 0.0, 0.5));
  const double ea = std::abs(alpha - 0.269484);
  const double eh = std::abs(alpha_hat - 0.21228);
  out.push_back({"alpha", "roots", ea <= 1e-5, fmt("alpha %.10f, |err| %.3g", alpha, ea)});
  out.push_back(
      {"alpha_hat", "roots", eh <= 1e-4, fmt("alpha_hat %.10f, |err| %.3g", alpha_hat, eh)});

  const double d1 = 2.0 * std::sqrt(2.0) * alpha;
  const double d2 = std::sqrt(2.0) * (-alpha + std::sqrt(1.0 - 2.0 * alpha * alpha));
  const double d3 = 2.0 * std::sqrt(2.0) * alpha_hat;
  const double d4 =
      std::sqrt(2.0) * (-alpha_hat + std::sqrt(1.0 - 2.0 * alpha_hat * alpha_hat));
  const double ed = std::max({std::abs(d1 - 0.762215), std::abs(d2 - 0.926377),
                              std::abs(d3 - 0.600421), std::abs(d4 - 1.04877)});
  out.push_back(
      {"edge_distances", "roots", ed <= 1e-5, fmt("max |err| %.3g over 4 distances", ed)});
  return out;
}

namespace {

std::vector<Configuration> platonic_solids() {
  const double c = 1.0 / std::sqrt(3.0);
  const double phi = (1.0 + std::sqrt(5.0)) / 2.0;
  std::vector<Configuration> out;

  Configuration tet;
  for (const auto& v : {Vec3{c, c, c}, Vec3{-c, -c, c}, Vec3{-c, c, -c}, Vec3{c, -c, -c}})
    tet.positions.emplace_back(UnitVector3(v));
  out.push_back(tet);

  Configuration oct;
  for (const auto& v : {Vec3{1, 0, 0}, Vec3{-1, 0, 0}, Vec3{0, 1, 0}, Vec3{0, -1, 0},
                        Vec3{0, 0, 1}, Vec3{0, 0, -1}})
    oct.positions.emplace_back(UnitVector3(v));
  out.push_back(oct);

  Configuration cube;
  for (int sx : {1, -1})
    for (int sy : {1, -1})
      for (int sz : {1, -1})
        cube.positions.emplace_back(UnitVector3(Vec3{sx * c, sy * c, sz * c}));
  out.push_back(cube);

  Configuration ico;
  for (int sa : {1, -1})
    for (int sb : {1, -1}) {
      ico.positions.emplace_back(UnitVector3(Vec3{0.0, sa * 1.0, sb * phi}));
      ico.positions.emplace_back(UnitVector3(Vec3{sb * phi, 0.0, sa * 1.0}));
      ico.positions.emplace_back(UnitVector3(Vec3{sa * 1.0, sb * phi, 0.0}));
    }
  out.push_back(ico);

  Configuration dod = cube;
  for (int sa : {1, -1})
    for (int sb : {1, -1}) {
      dod.positions.emplace_back(UnitVector3(Vec3{0.0, sa / phi, sb * phi}));
      dod.positions.emplace_back(UnitVector3(Vec3{sb * phi, 0.0, sa / phi}));
      dod.positions.emplace_back(UnitVector3(Vec3{sa / phi, sb * phi, 0.0}));
    }
  out.push_back(dod);
  return out;
}

}  // namespace

std::vector<CheckResult> check_equilibrium_residuals() {
  std::vector<CheckResult> out;
  for (const auto& sp : scheme_specs()) {
    const SymmetryScheme s = scheme_of(sp);
    double worst = 0.0;
    int count = 0;
    for (const auto& rec : catalog_for(s)) {
      if (rec.kind == EquilibriumKind::Collision) continue;
      worst = std::max(worst, max_field_component(vector_field(embed(rec.point, s))));
      ++count;
    }
    out.push_back({"residuals_" + scheme_slug(sp), "residuals", worst <= 1e-9,
                   fmt("max |component| %.3g over %d records", worst, count)});
  }
  double worst = 0.0;
  for (const auto& solid : platonic_solids())
    worst = std::max(worst, max_field_component(vector_field(solid)));
  out.push_back({"platonic_solids", "residuals", worst <= 1e-9,
                 fmt("max |component| %.3g over 5 solids", worst)});
  return out;
}

std::vector<CheckResult> check_lemmas(std::uint64_t seed) {
  std::vector<CheckResult> out;

  double worst_sum = 0.0;
  for (int n = 2; n <= 10; ++n)
    worst_sum = std::max(worst_sum,
                         max_abs_entry(group_sum(build_group(GroupKind::Dihedral, n))));
  for (GroupKind k :
       {GroupKind::Tetrahedral, GroupKind::Octahedral, GroupKind::Icosahedral})
    worst_sum = std::max(worst_sum, max_abs_entry(group_sum(build_group(k))));
  out.push_back({"group_sum", "lemmas", worst_sum <= 1e-12,
                 fmt("max |entry| %.3g", worst_sum)});

  double worst_trig = 0.0;
  for (int n = 2; n <= 10; ++n) {
    const auto [lhs, rhs] = trig_identity_check(n);
    worst_trig = std::max(worst_trig, std::abs(lhs - rhs));
  }
  out.push_back({"trig_identity", "lemmas", worst_trig <= 1e-10,
                 fmt("max |residual| %.3g for n = 2..10", worst_trig)});

  std::mt19937_64 rng(seed);
  double worst_pull = 0.0;
  for (const auto& sp : scheme_specs()) {
    const SymmetryScheme s = scheme_of(sp);
    for (int k = 0; k < 100; ++k) {
      const UnitVector3 u = random_unit(rng);
      const TangentVector a{u, tangent_project(u, random_vec(rng))};
      const TangentVector b{u, tangent_project(u, random_vec(rng))};
      const auto [lhs, rhs] = check_pullback(u, s, a, b);
      worst_pull = std::max(worst_pull, std::abs(lhs - rhs));
    }
  }
  out.push_back({"pullback", "lemmas", worst_pull <= 1e-10,
                 fmt("max |defect| %.3g over 100 triples x %d schemes", worst_pull,
                     static_cast<int>(scheme_specs().size()))});
  return out;
}

std::vector<CheckResult> check_conjugacy(std::uint64_t seed) {
  std::vector<CheckResult> out;
  std::mt19937_64 rng(seed);
  for (const auto& sp : scheme_specs()) {
    const SymmetryScheme s = scheme_of(sp);
    const detail::DerivFn deriv = reduced_deriv(s);
    // Seeds above the highest saddle level lie on loops encircling a
    // collision point; energy conservation then pins the whole orbit inside
    // the basin, so the cap keeps every compared trajectory in the regular
    // region. The margin stays below half the well depth so the admissible
    // set is never empty.
    double h_sad = -1e300;
    double h_min = 1e300;
    for (const auto& rec : catalog_for(s)) {
      if (rec.kind == EquilibriumKind::Saddle)
        h_sad = std::max(h_sad, reduced_hamiltonian(rec.point, s));
      if (rec.kind == EquilibriumKind::Min)
        h_min = std::min(h_min, reduced_hamiltonian(rec.point, s));
    }
    const double h_cap = h_sad - std::min(0.25, 0.5 * (h_sad - h_min));
    const auto admissible = [&](const UnitVector3& u0) {
      return distance_to_collision_set(u0, s) >= 0.05 &&
             reduced_hamiltonian(u0, s) <= h_cap;
    };
    double worst = 0.0;
    for (int trial = 0; trial < 5; ++trial) {
      UnitVector3 u0 = random_unit(rng);
      for (int attempt = 0; !admissible(u0); ++attempt) {
        if (attempt > 100000) throw ToleranceError("no admissible conjugacy seed");
        u0 = random_unit(rng);
      }

      const Trajectory full = integrate(embed(u0, s), 5.0, 1e-10, 0.05);
      std::vector<double> y0;
      flat_state(u0, y0);
      detail::RkOptions opt;
      opt.tol = 1e-10;
      const detail::RkDense red =
          detail::rk_integrate(deriv, project_unit, y0, 0.0, full.times, opt);

      for (size_t k = 0; k < full.times.size(); ++k) {
        const Configuration lifted = embed(
            UnitVector3(Vec3{red.states[k][0], red.states[k][1], red.states[k][2]}), s);
        for (int j = 0; j < lifted.size(); ++j)
          worst = std::max(
              worst, distance(lifted.positions[j], full.states[k].positions[j]));
      }
    }
    out.push_back({"conjugacy_" + scheme_slug(sp), "conjugacy", worst <= 1e-6,
                   fmt("sup |embedded - full| %.3g over 5 seeds, t in [0,5]", worst)});
  }
  return out;
}

std::vector<CheckResult> check_momentum(std::uint64_t seed) {
  std::vector<CheckResult> out;
  std::mt19937_64 rng(seed);
  for (const auto& sp : scheme_specs()) {
    const SymmetryScheme s = scheme_of(sp);
    double worst = 0.0;
    for (int k = 0; k < 1000; ++k) {
      const Vec3 j = momentum(embed(random_unit(rng), s));
      worst = std::max({worst, std::abs(j.x), std::abs(j.y), std::abs(j.z)});
    }
    out.push_back({"momentum_" + scheme_slug(sp), "momentum", worst <= 1e-12,
                   fmt("max |J component| %.3g over 1000 points", worst)});
  }
  return out;
}

std::vector<CheckResult> check_regularization() {
  std::vector<CheckResult> out;

  {
    const SymmetryScheme s = scheme_of({GroupKind::Dihedral, 2, FixedChoice::None});
    const auto recs = catalog_for(s);
    const EquilibriumRecord& center = record_named(recs, "anti-prism");
    const auto [e1, e2] = tangent_basis(center.point);
    (void)e2;
    const UnitVector3 u0(center.point.vec() * std::cos(0.12) + e1 * std::sin(0.12));

    TraceOptions red_opt;
    const ReducedOrbit red = trace_periodic(u0, s, red_opt);
    TraceOptions reg_opt;
    reg_opt.use_regularized = true;
    const ReducedOrbit reg = trace_periodic(u0, s, reg_opt);

    double sup = 0.0;
    for (size_t i = 0; i < red.points.size() && i < reg.points.size(); ++i)
      sup = std::max(sup, distance(red.points[i], reg.points[i]));
    const double rel_period = std::abs(red.period - reg.period) / red.period;
    const bool pass = sup <= 1e-6 && rel_period <= 1e-6;
    out.push_back({"regularization_time_rescale", "regularization", pass,
                   fmt("sup discrepancy %.3g, relative period error %.3g", sup,
                       rel_period)});
  }

  double worst_rel = 0.0;
  for (const auto& sp : scheme_specs()) {
    const SymmetryScheme s = scheme_of(sp);
    for (int i = 0; i < 20; ++i) {
      const double z = -1.0 + 2.0 * (i + 0.5) / 20.0;
      for (int j = 0; j < 10; ++j) {
        const double th = 2.0 * kPi * (j + 0.5) / 10.0;
        const double r = std::sqrt(1.0 - z * z);
        const UnitVector3 u(Vec3{r * std::cos(th), r * std::sin(th), z});
        if (distance_to_collision_set(u, s) < 1e-6) continue;
        const double direct = regularized_reduced_hamiltonian(u, s);
        const double via_exp = std::exp(-2.0 * reduced_hamiltonian(u, s));
        worst_rel = std::max(worst_rel, std::abs(direct - via_exp) / direct);
      }
    }
  }
  out.push_back({"regularization_exp_consistency", "regularization",
                 worst_rel <= 1e-10, fmt("max relative error %.3g", worst_rel)});

  bool all_zero = true;
  int points = 0;
  for (const auto& sp : scheme_specs()) {
    const SymmetryScheme s = scheme_of(sp);
    for (const auto& p : s.collision_set.points) {
      ++points;
      if (regularized_reduced_hamiltonian(p, s) != 0.0) all_zero = false;
    }
  }
  out.push_back({"regularization_zero_on_collisions", "regularization", all_zero,
                 all_zero ? fmt("exact zero at all %d collision points", points)
                          : std::string("nonzero value on the collision set")});
  return out;
}

std::vector<CheckResult> check_families() {
  std::vector<CheckResult> out;

  struct StableCenter {
    SchemeSpec sp;
    const char* name;
  };
  const std::vector<StableCenter> stable = {
      {{GroupKind::Dihedral, 2, FixedChoice::None}, "anti-prism"},
      {{GroupKind::Dihedral, 3, FixedChoice::None}, "anti-prism"},
      {{GroupKind::Dihedral, 4, FixedChoice::None}, "anti-prism"},
      {{GroupKind::Dihedral, 3, FixedChoice::Poles}, "anti-prism-with-poles"},
      {{GroupKind::Dihedral, 5, FixedChoice::Poles}, "anti-prism-with-poles"},
      {{GroupKind::Dihedral, 2, FixedChoice::Poles}, "polygon-with-poles"},
      {{GroupKind::Tetrahedral, 0, FixedChoice::None}, "icosahedron"},
      {{GroupKind::Tetrahedral, 0, FixedChoice::Cube}, "dodecahedron"},
  };
  for (const auto& sc : stable) {
    const std::string label = "family_stable_" + scheme_slug(sc.sp) + "_" + sc.name;
    try {
      const SymmetryScheme s = scheme_of(sc.sp);
      const auto recs = catalog_for(s);
      const EquilibriumRecord& center = record_named(recs, sc.name);
      const double h0 = reduced_hamiltonian(center.point, s);
      const OrbitFamily fam =
          family_from_center(center, s, {h0 + 0.01, h0 + 0.05, h0 + 0.1});
      double max_closure = 0.0;
      double max_dH = 0.0;
      double max_J = 0.0;
      for (const auto& orbit : fam.orbits) {
        max_closure = std::max(max_closure, orbit.closure_error);
        const Trajectory lifted = lift_orbit(orbit, s);
        for (size_t k = 0; k < lifted.energies.size(); ++k) {
          max_dH = std::max(max_dH, std::abs(lifted.energies[k] - lifted.energy0));
          max_J = std::max({max_J, std::abs(lifted.momenta[k].x),
                            std::abs(lifted.momenta[k].y), std::abs(lifted.momenta[k].z)});
        }
      }
      const bool pass = max_closure <= 1e-6 && max_dH <= 1e-8 && max_J <= 1e-8;
      out.push_back({label, "families", pass,
                     fmt("max closure %.3g, |dH| %.3g, |J| %.3g", max_closure, max_dH,
                         max_J)});
    } catch (const Error& e) {
      out.push_back({label, "families", false, e.what()});
    }
  }

  for (const auto& sp : scheme_specs()) {
    SymmetryScheme s = scheme_of(sp);
    const auto recs = catalog_for(s);
    std::set<std::string> seen;
    for (const auto& rec : recs) {
      if (rec.kind != EquilibriumKind::Collision || !seen.insert(rec.name).second)
        continue;
      const std::string label = "family_collision_" + scheme_slug(sp) + "_" + rec.name;
      try {
        const auto [e1, e2] = tangent_basis(rec.point);
        (void)e2;
        std::vector<double> energies;
        for (double sigma : {0.12, 0.08, 0.05}) {
          const UnitVector3 p(rec.point.vec() * std::cos(sigma) + e1 * std::sin(sigma));
          energies.push_back(reduced_hamiltonian(p, s));
        }
        const OrbitFamily fam = family_from_center(rec, s, energies);
        const bool decreasing = fam.orbits.size() == 3 &&
                                fam.orbits[0].period > fam.orbits[1].period &&
                                fam.orbits[1].period > fam.orbits[2].period;
        out.push_back({label, "families", decreasing,
                       fmt("periods %.6g > %.6g > %.6g", fam.orbits[0].period,
                           fam.orbits[1].period, fam.orbits[2].period)});
      } catch (const Error& e) {
        out.push_back({label, "families", false, e.what()});
      }
    }
  }
  return out;
}

namespace {

std::optional<UnitVector3> refine_critical_point(UnitVector3 u, const SymmetryScheme& s) {
  constexpr double kTau = 1e-6;
  constexpr double kStepCap = 0.1;
  try {
    for (int it = 0; it < 40; ++it) {
      const Vec3 g = reduced_gradient(u, s).vec;
      if (norm(g) < 1e-11) return u;
      const auto [e1, e2] = tangent_basis(u);
      const double g1 = dot(g, e1);
      const double g2 = dot(g, e2);
      const auto grad_at = [&](const Vec3& offset) {
        return reduced_gradient(UnitVector3(u.vec() + offset), s).vec;
      };
      const Vec3 gp1 = grad_at(e1 * kTau);
      const Vec3 gm1 = grad_at(e1 * -kTau);
      const Vec3 gp2 = grad_at(e2 * kTau);
      const Vec3 gm2 = grad_at(e2 * -kTau);
      const double j11 = dot(gp1 - gm1, e1) / (2.0 * kTau);
      const double j21 = dot(gp1 - gm1, e2) / (2.0 * kTau);
      const double j12 = dot(gp2 - gm2, e1) / (2.0 * kTau);
      const double j22 = dot(gp2 - gm2, e2) / (2.0 * kTau);
      const double det = j11 * j22 - j12 * j21;
      if (std::abs(det) < 1e-12) return std::nullopt;
      double d1 = -(j22 * g1 - j12 * g2) / det;
      double d2 = -(-j21 * g1 + j11 * g2) / det;
      const double dn = std::sqrt(d1 * d1 + d2 * d2);
      if (dn > kStepCap) {
        d1 *= kStepCap / dn;
        d2 *= kStepCap / dn;
      }
      u = UnitVector3(u.vec() + e1 * d1 + e2 * d2);
    }
  } catch (const CollisionError&) {
    return std::nullopt;
  }
  return std::nullopt;
}

}  // namespace

std::vector<CheckResult> check_completeness() {
  std::vector<CheckResult> out;
  const std::vector<SchemeSpec> complete_schemes = {
      {GroupKind::Dihedral, 2, FixedChoice::None},
      {GroupKind::Dihedral, 3, FixedChoice::None},
      {GroupKind::Dihedral, 4, FixedChoice::None},
      {GroupKind::Tetrahedral, 0, FixedChoice::None},
  };
  for (const auto& sp : complete_schemes) {
    const SymmetryScheme s = scheme_of(sp);
    const auto recs = catalog_for(s);
    constexpr int kGrid = 200;
    int refined = 0;
    int stray = 0;
    double worst_match = 0.0;
    std::string example;
    for (int i = 0; i < kGrid; ++i) {
      const double z = -1.0 + 2.0 * (i + 0.5) / kGrid;
      const double r = std::sqrt(1.0 - z * z);
      for (int j = 0; j < kGrid; ++j) {
        const double th = 2.0 * kPi * (j + 0.5) / kGrid;
        const UnitVector3 seed(Vec3{r * std::cos(th), r * std::sin(th), z});
        if (distance_to_collision_set(seed, s) < 1e-3) continue;
        const auto found = refine_critical_point(seed, s);
        if (!found) continue;
        ++refined;
        double best = 1e300;
        for (const auto& rec : recs) best = std::min(best, distance(*found, rec.point));
        if (best > 1e-6) {
          ++stray;
          if (example.empty())
            example = fmt(" e.g. (%.6f, %.6f, %.6f)", found->x(), found->y(), found->z());
        } else {
          worst_match = std::max(worst_match, best);
        }
      }
    }
    out.push_back({"completeness_" + scheme_slug(sp), "completeness", stray == 0,
                   fmt("%d refined, %d stray, worst catalog match %.3g%s", refined,
                       stray, worst_match, example.c_str())});
  }
  return out;
}

std::vector<CheckResult> check_symmetry() {
  std::vector<CheckResult> out;
  struct Pair {
    SchemeSpec sp;
    GroupKind super_kind;
    int super_n;
    const char* super_name;
  };
  const std::vector<Pair> pairs = {
      {{GroupKind::Dihedral, 2, FixedChoice::None}, GroupKind::Octahedral, 0, "O"},
      {{GroupKind::Dihedral, 3, FixedChoice::None}, GroupKind::Dihedral, 6, "D6"},
      {{GroupKind::Dihedral, 4, FixedChoice::None}, GroupKind::Dihedral, 8, "D8"},
      {{GroupKind::Dihedral, 2, FixedChoice::Poles}, GroupKind::Dihedral, 4, "D4"},
      {{GroupKind::Tetrahedral, 0, FixedChoice::None}, GroupKind::Octahedral, 0, "O"},
      {{GroupKind::Tetrahedral, 0, FixedChoice::Cube}, GroupKind::Octahedral, 0, "O"},
  };
  const std::vector<CylindricalPoint> base_seeds = {{0.41, 0.37}, {-0.33, 1.27}};
  std::vector<double> times;
  for (int k = 0; k <= 100; ++k) times.push_back(0.1 * k);

  for (const auto& pr : pairs) {
    const SymmetryScheme s = scheme_of(pr.sp);
    const FiniteRotationGroup super = build_group(pr.super_kind, pr.super_n);
    const detail::DerivFn deriv = reduced_deriv(s);
    detail::RkOptions opt;
    opt.tol = 1e-10;
    double worst = 0.0;
    for (const auto& cp : base_seeds) {
      const UnitVector3 u0 = from_cylindrical(cp);
      std::vector<double> y0;
      flat_state(u0, y0);
      const detail::RkDense base =
          detail::rk_integrate(deriv, project_unit, y0, 0.0, times, opt);
      for (const auto& g : super.elements) {
        const UnitVector3 gu0 = g.apply(u0);
        std::vector<double> gy0;
        flat_state(gu0, gy0);
        const detail::RkDense image =
            detail::rk_integrate(deriv, project_unit, gy0, 0.0, times, opt);
        for (size_t k = 0; k < times.size(); ++k) {
          const UnitVector3 moved = g.apply(UnitVector3(
              Vec3{base.states[k][0], base.states[k][1], base.states[k][2]}));
          const UnitVector3 direct(
              Vec3{image.states[k][0], image.states[k][1], image.states[k][2]});
          worst = std::max(worst, distance(moved, direct));
        }
      }
    }
    out.push_back(
        {"symmetry_" + scheme_slug(pr.sp) + "_" + pr.super_name, "symmetry",
         worst <= 1e-6,
         fmt("index-matched sup %.3g over %d elements, t in [0,10]", worst,
             super.order())});
  }
  return out;
}

namespace {

std::vector<CheckResult> guarded(const std::string& section,
                                 const std::function<std::vector<CheckResult>()>& fn) {
  try {
    return fn();
  } catch (const std::exception& e) {
    return {{section + "_exception", section, false, e.what()}};
  }
}

}  // namespace

std::vector<CheckResult> run_section(const std::string& section, std::uint64_t seed) {
  if (section == "tables") return guarded(section, [] { return check_tables(); });
  if (section == "roots")
    return guarded(section, [] { return check_tetrahedral_roots(); });
  if (section == "residuals")
    return guarded(section, [] { return check_equilibrium_residuals(); });
  if (section == "lemmas")
    return guarded(section, [seed] { return check_lemmas(seed); });
  if (section == "conjugacy")
    return guarded(section, [seed] { return check_conjugacy(seed); });
  if (section == "momentum")
    return guarded(section, [seed] { return check_momentum(seed); });
  if (section == "regularization")
    return guarded(section, [] { return check_regularization(); });
  if (section == "families") return guarded(section, [] { return check_families(); });
  if (section == "completeness")
    return guarded(section, [] { return check_completeness(); });
  if (section == "symmetry") return guarded(section, [] { return check_symmetry(); });
  throw ConfigError("unknown section: " + section);
}

std::vector<CheckResult> run_all(std::uint64_t seed, int jobs) {
  const auto& names = section_names();
  std::vector<std::vector<CheckResult>> slots(names.size());
  std::atomic<size_t> next{0};
  const auto work = [&] {
    for (;;) {
      const size_t i = next.fetch_add(1);
      if (i >= names.size()) return;
      slots[i] = run_section(names[i], seed);
    }
  };
  const int workers = std::clamp(jobs, 1, static_cast<int>(names.size()));
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& th : pool) th.join();
  }
  std::vector<CheckResult> out;
  for (auto& s : slots) out.insert(out.end(), s.begin(), s.end());
  return out;
}

bool all_pass(const std::vector<CheckResult>& results) {
  return std::all_of(results.begin(), results.end(),
                     [](const CheckResult& r) { return r.pass; });
}

std::string report_text(const std::vector<CheckResult>& results) {
  std::string out;
  for (const auto& r : results) {
    out += r.name;
    out += r.pass ? ": PASS (" : ": FAIL (";
    out += r.detail;
    out += ")\n";
  }
  return out;
}

std::string report_json(const std::vector<CheckResult>& results) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& r : results) {
    arr.push_back({{"name", r.name},
                   {"section", r.section},
                   {"pass", r.pass},
                   {"detail", r.detail}});
  }
  return arr.dump(2);
}

}  // namespace vortexsphere::checks
