#include "vortexsphere/orbits.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <optional>
#include <thread>

#include "json.hpp"
#include "vortexsphere/detail/rk.hpp"
#include "vortexsphere/errors.hpp"

namespace vortexsphere {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kSectionTimeTol = 1e-10;
constexpr double kGradientFloor = 1e-7;
// A crossing search arms only after the section value has dipped this far
// negative, which rejects the spurious bracket at the departure point.
constexpr double kArmThreshold = -1e-9;

std::vector<double> to_state(const UnitVector3& u) { return {u.x(), u.y(), u.z()}; }

UnitVector3 from_state(const std::vector<double>& y) {
  return UnitVector3(Vec3{y[0], y[1], y[2]});
}

void project_unit(std::vector<double>& y) {
  const double n = std::sqrt(y[0] * y[0] + y[1] * y[1] + y[2] * y[2]);
  y[0] /= n;
  y[1] /= n;
  y[2] /= n;
}

detail::DerivFn make_deriv(const SymmetryScheme& s, bool regularized) {
  return [&s, regularized](double, const std::vector<double>& y,
                           std::vector<double>& dydt) {
    const UnitVector3 u = from_state(y);
    const TangentVector f =
        regularized ? regularized_reduced_field(u, s) : reduced_field(u, s);
    dydt[0] = f.vec.x;
    dydt[1] = f.vec.y;
    dydt[2] = f.vec.z;
  };
}

std::vector<double> advance(const detail::DerivFn& deriv, const std::vector<double>& y0,
                            double t0, double t1, const detail::RkOptions& opt) {
  detail::RkStepper st(deriv, project_unit, opt);
  st.init(y0, t0, t1 >= t0 ? 1.0 : -1.0);
  while (st.step(t1)) {
  }
  return st.y();
}

UnitVector3 ray_point(const UnitVector3& c, const Vec3& dir, double sigma) {
  return UnitVector3(c.vec() * std::cos(sigma) + dir * std::sin(sigma));
}

std::vector<UnitVector3> subsample(const std::vector<UnitVector3>& pts, int cap) {
  if (static_cast<int>(pts.size()) <= cap) return pts;
  std::vector<UnitVector3> out;
  const int stride = (static_cast<int>(pts.size()) + cap - 1) / cap;
  for (size_t i = 0; i < pts.size(); i += stride) out.push_back(pts[i]);
  if (distance(out.back(), pts.back()) > 0.0) out.push_back(pts.back());
  return out;
}

}  // namespace

ReducedOrbit trace_periodic(const UnitVector3& u0, const SymmetryScheme& s,
                            const TraceOptions& opt) {
  if (norm(reduced_gradient(u0, s).vec) < kGradientFloor)
    throw NotRegular("gradient norm below 1e-7 at the seed");
  const auto deriv = make_deriv(s, opt.use_regularized);
  const TangentVector f0 =
      opt.use_regularized ? regularized_reduced_field(u0, s) : reduced_field(u0, s);
  const double speed0 = norm(f0.vec);
  if (speed0 == 0.0) throw NotRegular("zero initial velocity at the seed");
  const Vec3 nhat = f0.vec * (1.0 / speed0);
  const auto section = [&](const std::vector<double>& y) {
    return nhat.x * y[0] + nhat.y * y[1] + nhat.z * y[2];
  };

  detail::RkOptions rko;
  rko.tol = opt.tol;
  detail::RkStepper st(deriv, project_unit, rko);
  st.init(to_state(u0), 0.0, 1.0);

  double span = opt.t_span;
  double period = -1.0;
  double prev_t = 0.0;
  std::vector<double> prev_y = st.y();
  double prev_c = section(prev_y);
  bool armed = prev_c < kArmThreshold;
  for (;;) {
    if (!st.step(span)) {
      if (span == opt.t_span) {
        span = 10.0 * opt.t_span;
        continue;
      }
      throw NoReturn("no section return within the retried time span");
    }
    const double c = section(st.y());
    if (armed && prev_c < 0.0 && c >= 0.0) {
      double ta = prev_t;
      double tb = st.t();
      std::vector<double> ya = prev_y;
      while (tb - ta > kSectionTimeTol) {
        const double tm = 0.5 * (ta + tb);
        const auto ym = advance(deriv, ya, ta, tm, rko);
        if (section(ym) < 0.0) {
          ta = tm;
          ya = ym;
        } else {
          tb = tm;
        }
      }
      const UnitVector3 uc = from_state(advance(deriv, ya, ta, tb, rko));
      if (distance(uc, u0) <= opt.return_tol) {
        period = tb;
        break;
      }
      armed = false;
    }
    if (c < kArmThreshold) armed = true;
    prev_t = st.t();
    prev_y = st.y();
    prev_c = c;
  }

  const int nseg = std::max(8, opt.samples_per_period);
  std::vector<double> ts(nseg + 1);
  for (int i = 0; i <= nseg; ++i) ts[i] = period * i / nseg;
  const auto dense = detail::rk_integrate(deriv, project_unit, to_state(u0), 0.0, ts, rko);
  std::vector<UnitVector3> pts(dense.states.size());
  for (size_t i = 0; i < dense.states.size(); ++i) pts[i] = from_state(dense.states[i]);

  ReducedOrbit orbit;
  orbit.regularized = opt.use_regularized;
  orbit.energy = reduced_hamiltonian(u0, s);
  orbit.closure_error = distance(pts.back(), pts.front());
  if (!opt.use_regularized) {
    orbit.period = period;
    orbit.times = ts;
    orbit.points = std::move(pts);
  } else {
    // u_reg(t) = u_red(a t) with a < 0: reversing the samples yields the
    // reduced-time traversal.
    const double a = std::abs(time_rescale_factor(u0, s));
    orbit.period = a * period;
    orbit.times.resize(pts.size());
    orbit.points.resize(pts.size());
    for (size_t i = 0; i < pts.size(); ++i) {
      orbit.times[i] = orbit.period * static_cast<double>(i) / nseg;
      orbit.points[i] = pts[pts.size() - 1 - i];
    }
  }
  return orbit;
}

namespace {

[[noreturn]] void throw_unreachable(double energy, const char* why) {
  char msg[128];
  std::snprintf(msg, sizeof msg, "energy %.17g unreachable: %s", energy, why);
  throw EnergyUnreachable(msg);
}

// Seed point on the level h = e along the great-circle ray from the center.
UnitVector3 level_on_ray(const EquilibriumRecord& center, const SymmetryScheme& s,
                         const Vec3& dir, double e) {
  const UnitVector3& c = center.point;
  constexpr int kScan = 400;
  const double smax = 0.5 * kPi;
  const bool toward_min = center.kind == EquilibriumKind::Min;
  double sa;
  double ha;
  if (toward_min) {
    sa = 0.0;
    ha = reduced_hamiltonian(c, s);
    if (!(e > ha)) throw_unreachable(e, "at or below the center value");
  } else {
    sa = 1e-8;
    ha = reduced_hamiltonian(ray_point(c, dir, sa), s);
    if (!(e < ha)) throw_unreachable(e, "above the level at the inner cutoff");
  }
  // h grows away from a minimum and falls away from a collision point; the
  // first grid point past the level closes the bracket.
  double sb = -1.0;
  for (int i = 1; i <= kScan; ++i) {
    const double sg = smax * i / kScan;
    if (sg <= sa) continue;
    double hg;
    try {
      hg = reduced_hamiltonian(ray_point(c, dir, sg), s);
    } catch (const CollisionError&) {
      break;
    }
    if (toward_min ? hg >= e : hg <= e) {
      sb = sg;
      break;
    }
    sa = sg;
  }
  if (sb < 0.0) throw_unreachable(e, "not attained along the chart ray");
  while (sb - sa > 1e-14) {
    const double sm = 0.5 * (sa + sb);
    const double hm = reduced_hamiltonian(ray_point(c, dir, sm), s);
    if (toward_min ? hm < e : hm > e)
      sa = sm;
    else
      sb = sm;
  }
  return ray_point(c, dir, 0.5 * (sa + sb));
}

}  // namespace

OrbitFamily family_from_center(const EquilibriumRecord& center, const SymmetryScheme& s,
                               const std::vector<double>& energies,
                               const TraceOptions& opt) {
  if (center.kind != EquilibriumKind::Min && center.kind != EquilibriumKind::Collision)
    throw ConfigError("families emanate from minima and collision points only");
  OrbitFamily fam;
  fam.center = center;
  const auto [e1, e2] = tangent_basis(center.point);
  (void)e2;
  std::vector<double> sorted = energies;
  std::sort(sorted.begin(), sorted.end());
  for (double e : sorted)
    fam.orbits.push_back(trace_periodic(level_on_ray(center, s, e1, e), s, opt));
  return fam;
}

Trajectory lift_orbit(const ReducedOrbit& orbit, const SymmetryScheme& s) {
  if (orbit.points.size() < 3 || orbit.points.size() != orbit.times.size())
    throw ConfigError("orbit must carry at least three matched samples");
  Trajectory tr;
  tr.times = orbit.times;
  tr.states.reserve(orbit.points.size());
  for (const auto& u : orbit.points) tr.states.push_back(embed(u, s));

  const int m = s.m();
  const int nfix = static_cast<int>(s.fixed_points.size());
  for (const auto& state : tr.states)
    for (int k = 0; k < nfix; ++k) {
      const Vec3 d = state.positions[m + k] - s.fixed_points[k];
      if (d.x != 0.0 || d.y != 0.0 || d.z != 0.0)
        throw ResidualTooLarge("fixed vortex moved under the lift");
    }

  // Uniform stride permits the fourth-order stencil; otherwise fall back to
  // the plain central difference.
  const double stride = tr.times.size() > 1 ? tr.times[1] - tr.times[0] : 0.0;
  bool uniform = tr.times.size() >= 5;
  for (size_t i = 1; uniform && i + 1 < tr.times.size(); ++i)
    if (std::abs(tr.times[i + 1] - tr.times[i] - stride) > 1e-9 * std::abs(stride))
      uniform = false;

  double max_resid = 0.0;
  if (uniform) {
    for (size_t i = 2; i + 2 < tr.states.size(); ++i) {
      const auto field = vector_field(tr.states[i]);
      for (int j = 0; j < tr.states[i].size(); ++j) {
        const Vec3 fd =
            (tr.states[i - 2].positions[j].vec() -
             8.0 * tr.states[i - 1].positions[j].vec() +
             8.0 * tr.states[i + 1].positions[j].vec() -
             tr.states[i + 2].positions[j].vec()) *
            (1.0 / (12.0 * stride));
        max_resid = std::max(max_resid, norm(fd - field[j].vec));
      }
    }
  } else {
    for (size_t i = 1; i + 1 < tr.states.size(); ++i) {
      const double denom = tr.times[i + 1] - tr.times[i - 1];
      const auto field = vector_field(tr.states[i]);
      for (int j = 0; j < tr.states[i].size(); ++j) {
        const Vec3 fd = (tr.states[i + 1].positions[j].vec() -
                         tr.states[i - 1].positions[j].vec()) *
                        (1.0 / denom);
        max_resid = std::max(max_resid, norm(fd - field[j].vec));
      }
    }
  }
  if (max_resid > 1e-5) {
    char msg[96];
    std::snprintf(msg, sizeof msg, "lift residual %.3e exceeds 1e-5", max_resid);
    throw ResidualTooLarge(msg);
  }

  for (const auto& state : tr.states) {
    tr.energies.push_back(hamiltonian(state));
    tr.momenta.push_back(momentum(state));
  }
  tr.energy0 = tr.energies.front();
  tr.momentum0 = tr.momenta.front();
  tr.min_distance = 2.0;
  for (const auto& state : tr.states)
    tr.min_distance = std::min(tr.min_distance, min_pairwise_distance(state));
  tr.near_collision = tr.min_distance < kNearCollisionThreshold;
  return tr;
}

std::string curve_class_name(CurveClass c) {
  switch (c) {
    case CurveClass::AroundMin: return "around-min";
    case CurveClass::Separatrix: return "separatrix";
    case CurveClass::CollisionLoop: return "collision-loop";
    case CurveClass::Unclassified: return "unclassified";
  }
  return "unclassified";
}

namespace {

PortraitCurve trace_curve(const UnitVector3& seed, const SymmetryScheme& s,
                          const std::vector<EquilibriumRecord>& records,
                          const detail::DerivFn& deriv, const detail::RkOptions& rko,
                          const PortraitSpec& spec) {
  detail::RkStepper st(deriv, project_unit, rko);
  st.init(to_state(seed), 0.0, 1.0);
  std::vector<UnitVector3> pts{seed};
  Vec3 sum = seed.vec();
  UnitVector3 prev = seed;
  double arc = 0.0;
  double min_saddle = 1e300;
  const EquilibriumRecord* saddle_rec = nullptr;
  constexpr int kMaxSteps = 200000;
  for (int step = 0; step < kMaxSteps; ++step) {
    if (!st.step(spec.t_span)) break;
    const UnitVector3 u = from_state(st.y());
    arc += distance(u, prev);
    prev = u;
    pts.push_back(u);
    sum = sum + u.vec();
    for (const auto& r : records) {
      if (r.kind != EquilibriumKind::Saddle) continue;
      const double d = distance(u, r.point);
      if (d < min_saddle) {
        min_saddle = d;
        saddle_rec = &r;
      }
    }
    if (arc >= 1e-2 && distance(u, seed) < 1e-3) break;
    if (arc >= 6.0 * kPi) break;
  }

  PortraitCurve curve;
  curve.points = subsample(pts, spec.max_points_per_curve);
  curve.energy = reduced_hamiltonian(seed, s);
  if (min_saddle < 1e-3 && saddle_rec != nullptr) {
    curve.label = CurveClass::Separatrix;
    curve.nearest = saddle_rec->name;
    return curve;
  }
  const double mean_norm = norm(sum) / static_cast<double>(pts.size());
  if (mean_norm < 0.2) return curve;
  const UnitVector3 centroid(sum);
  const EquilibriumRecord* nearest = nullptr;
  double bd = 1e300;
  for (const auto& r : records) {
    const double d = distance(centroid, r.point);
    if (d < bd) {
      bd = d;
      nearest = &r;
    }
  }
  curve.nearest = nearest->name;
  if (nearest->kind == EquilibriumKind::Min)
    curve.label = CurveClass::AroundMin;
  else if (nearest->kind == EquilibriumKind::Collision)
    curve.label = CurveClass::CollisionLoop;
  return curve;
}

}  // namespace

PhasePortrait sample_portrait(const SymmetryScheme& s, const PortraitSpec& spec) {
  PhasePortrait out;
  const auto records = catalog_for(s);
  const auto deriv = make_deriv(s, false);
  detail::RkOptions rko;
  rko.tol = spec.tol;
  std::vector<UnitVector3> seeds;
  for (int i = 0; i < spec.rows; ++i) {
    const double z = -1.0 + 2.0 * (i + 1) / (spec.rows + 1);
    for (int j = 0; j < spec.cols; ++j) {
      const double th = 2.0 * kPi * j / spec.cols;
      const UnitVector3 seed = from_cylindrical(CylindricalPoint{z, th});
      if (distance_to_collision_set(seed, s) < 1e-6) continue;
      seeds.push_back(seed);
    }
  }

  // Work-pool over seeds; slot order keeps the merge deterministic whatever
  // the thread interleaving.
  std::vector<std::optional<PortraitCurve>> slots(seeds.size());
  std::atomic<size_t> cursor{0};
  const auto work = [&] {
    for (;;) {
      const size_t i = cursor.fetch_add(1);
      if (i >= seeds.size()) return;
      try {
        slots[i] = trace_curve(seeds[i], s, records, deriv, rko, spec);
      } catch (const CollisionError&) {
      } catch (const ToleranceError&) {
      }
    }
  };
  const int workers = std::clamp(spec.jobs, 1, 64);
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& th : pool) th.join();
  }
  for (auto& c : slots)
    if (c) out.curves.push_back(std::move(*c));
  return out;
}

std::string orbit_to_csv(const ReducedOrbit& orbit) {
  std::string out = "t, ux, uy, uz\n";
  char buf[64];
  for (size_t i = 0; i < orbit.times.size(); ++i) {
    const auto app = [&](double v, bool first) {
      std::snprintf(buf, sizeof buf, first ? "%.17g" : ", %.17g", v);
      out += buf;
    };
    app(orbit.times[i], true);
    app(orbit.points[i].x(), false);
    app(orbit.points[i].y(), false);
    app(orbit.points[i].z(), false);
    out += "\n";
  }
  return out;
}

std::string portrait_to_json(const SymmetryScheme& s, const PortraitSpec& spec,
                             const PhasePortrait& p) {
  nlohmann::json j;
  j["scheme"] = nlohmann::json::parse(scheme_to_json(s));
  j["grid"] = {{"rows", spec.rows}, {"cols", spec.cols}};
  j["t_span"] = spec.t_span;
  j["tol"] = spec.tol;
  auto curves = nlohmann::json::array();
  for (const auto& c : p.curves) {
    nlohmann::json cj;
    cj["label"] = curve_class_name(c.label);
    cj["nearest"] = c.nearest;
    cj["energy"] = c.energy;
    auto pl = nlohmann::json::array();
    for (const auto& u : c.points) pl.push_back({u.x(), u.y(), u.z()});
    cj["points"] = std::move(pl);
    curves.push_back(std::move(cj));
  }
  j["curves"] = std::move(curves);
  return j.dump(2);
}

}  // namespace vortexsphere
