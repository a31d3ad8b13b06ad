#include "vortexsphere/dynamics.hpp"

#include <cmath>
#include <cstdio>

#include "vortexsphere/detail/rk.hpp"

namespace vortexsphere {

namespace {

double squared_distance(const UnitVector3& a, const UnitVector3& b) {
  return norm2(a - b);
}

void require_collision_free(const Configuration& v) {
  const int n = v.size();
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (distance(v.positions[i], v.positions[j]) < kCollisionThreshold) {
        throw CollisionError("two vortices coincide within 1e-14");
      }
    }
  }
}

}  // namespace

double hamiltonian(const Configuration& v) {
  require_collision_free(v);
  const int n = v.size();
  double h = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      h -= 0.5 * std::log(squared_distance(v.positions[i], v.positions[j]));
    }
  }
  return h;
}

double regularized_hamiltonian(const Configuration& v) {
  const int n = v.size();
  double p = 1.0;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const double d2 = squared_distance(v.positions[i], v.positions[j]);
      p *= d2 < kCollisionThreshold * kCollisionThreshold ? 0.0 : d2;
    }
  }
  return p;
}

Vec3 momentum(const Configuration& v) {
  Vec3 j;
  for (const UnitVector3& p : v.positions) j = j + p.vec();
  return j;
}

std::vector<TangentVector> vector_field(const Configuration& v) {
  require_collision_free(v);
  const int n = v.size();
  std::vector<TangentVector> field;
  field.reserve(n);
  for (int j = 0; j < n; ++j) {
    Vec3 dv;
    for (int i = 0; i < n; ++i) {
      if (i == j) continue;
      const double d2 = squared_distance(v.positions[i], v.positions[j]);
      dv = dv + cross(v.positions[i].vec(), v.positions[j].vec()) / d2;
    }
    field.push_back({v.positions[j], dv});
  }
  return field;
}

std::vector<TangentVector> regularized_vector_field(const Configuration& v) {
  const int n = v.size();
  // Pairwise squared distances with exact zeros below the hard threshold, so
  // the product formula vanishes exactly at collisions.
  std::vector<double> d2(static_cast<size_t>(n) * n, 0.0);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      double q = squared_distance(v.positions[i], v.positions[j]);
      if (q < kCollisionThreshold * kCollisionThreshold) q = 0.0;
      d2[i * n + j] = d2[j * n + i] = q;
    }
  }
  const auto product_excluding = [&](int a, int b) {
    double p = 1.0;
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        if ((i == a && j == b) || (i == b && j == a)) continue;
        p *= d2[i * n + j];
      }
    }
    return p;
  };
  std::vector<TangentVector> field;
  field.reserve(n);
  for (int j = 0; j < n; ++j) {
    // -v_j x grad_j(prod d2) = sum_i 2 * (prod excluding pair ij) * (v_j x v_i)
    Vec3 dv;
    for (int i = 0; i < n; ++i) {
      if (i == j) continue;
      const int a = i < j ? i : j;
      const int b = i < j ? j : i;
      dv = dv + 2.0 * product_excluding(a, b) * cross(v.positions[j].vec(), v.positions[i].vec());
    }
    field.push_back({v.positions[j], dv});
  }
  return field;
}

double min_pairwise_distance(const Configuration& v) {
  const int n = v.size();
  double best = 2.0;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      best = std::fmin(best, distance(v.positions[i], v.positions[j]));
    }
  }
  return best;
}

std::vector<std::vector<int>> collision_clusters(const Configuration& v, double tol) {
  const int n = v.size();
  std::vector<int> owner(n, -1);
  std::vector<std::vector<int>> clusters;
  for (int i = 0; i < n; ++i) {
    if (owner[i] >= 0) continue;
    const int id = static_cast<int>(clusters.size());
    clusters.push_back({i});
    owner[i] = id;
    for (int j = i + 1; j < n; ++j) {
      if (owner[j] < 0 && distance(v.positions[i], v.positions[j]) <= tol) {
        owner[j] = id;
        clusters[id].push_back(j);
      }
    }
  }
  return clusters;
}

bool is_twisted_fixed(const Configuration& v, const TwistMorphism& tm,
                      const FiniteRotationGroup& g, double tol) {
  if (v.size() != tm.N()) return false;
  for (int gi = 0; gi < g.order(); ++gi) {
    for (int j = 0; j < tm.N(); ++j) {
      const UnitVector3 moved = g.elements[gi].apply(v.positions[j]);
      if (distance(moved, v.positions[tm.apply(gi, j)]) > tol) return false;
    }
  }
  return true;
}

namespace {

Configuration configuration_from_flat(const std::vector<double>& y) {
  Configuration v;
  v.positions.reserve(y.size() / 3);
  for (size_t i = 0; i + 2 < y.size(); i += 3) {
    v.positions.emplace_back(y[i], y[i + 1], y[i + 2]);
  }
  return v;
}

}  // namespace

Trajectory integrate(const Configuration& v0, double t_end, double tol, double stride) {
  require_collision_free(v0);
  const int n = v0.size();
  if (stride <= 0.0) stride = std::abs(t_end) / 512.0;

  Trajectory traj;
  traj.energy0 = hamiltonian(v0);
  traj.momentum0 = momentum(v0);

  double min_d = min_pairwise_distance(v0);
  const auto deriv = [n, &min_d](double, const std::vector<double>& y,
                                 std::vector<double>& dydt) {
    double local_min = 4.0;
    for (int j = 0; j < n; ++j) {
      double ax = 0.0, ay = 0.0, az = 0.0;
      const double xj = y[3 * j], yj = y[3 * j + 1], zj = y[3 * j + 2];
      for (int i = 0; i < n; ++i) {
        if (i == j) continue;
        const double xi = y[3 * i], yi = y[3 * i + 1], zi = y[3 * i + 2];
        const double dx = xj - xi, dy = yj - yi, dz = zj - zi;
        const double d2 = dx * dx + dy * dy + dz * dz;
        if (d2 < kCollisionThreshold * kCollisionThreshold) {
          throw CollisionError("integration reached a collision");
        }
        local_min = std::fmin(local_min, d2);
        // v_i x v_j / |v_j - v_i|^2
        ax += (yi * zj - zi * yj) / d2;
        ay += (zi * xj - xi * zj) / d2;
        az += (xi * yj - yi * xj) / d2;
      }
      dydt[3 * j] = ax;
      dydt[3 * j + 1] = ay;
      dydt[3 * j + 2] = az;
    }
    min_d = std::fmin(min_d, std::sqrt(local_min));
  };
  const auto project = [n](std::vector<double>& y) {
    for (int j = 0; j < n; ++j) {
      const double r = std::sqrt(y[3 * j] * y[3 * j] + y[3 * j + 1] * y[3 * j + 1] +
                                 y[3 * j + 2] * y[3 * j + 2]);
      y[3 * j] /= r;
      y[3 * j + 1] /= r;
      y[3 * j + 2] /= r;
    }
  };

  std::vector<double> y0;
  y0.reserve(3 * n);
  for (const UnitVector3& p : v0.positions) {
    y0.push_back(p.x());
    y0.push_back(p.y());
    y0.push_back(p.z());
  }

  std::vector<double> samples{0.0};
  const double dir = t_end >= 0.0 ? 1.0 : -1.0;
  for (double t = stride; (t_end - t * dir) * dir > 1e-15; t += stride) {
    samples.push_back(t * dir);
  }
  samples.push_back(t_end);

  detail::RkOptions opt;
  opt.tol = tol;
  opt.h_init = std::fmin(1e-3, std::abs(t_end));
  const detail::RkDense dense = detail::rk_integrate(deriv, project, y0, 0.0, samples, opt);

  for (size_t k = 0; k < dense.times.size(); ++k) {
    traj.times.push_back(dense.times[k]);
    traj.states.push_back(configuration_from_flat(dense.states[k]));
    traj.energies.push_back(hamiltonian(traj.states.back()));
    traj.momenta.push_back(momentum(traj.states.back()));
  }
  traj.min_distance = min_d;
  traj.near_collision = min_d < kNearCollisionThreshold;
  return traj;
}

std::string trajectory_to_csv(const Trajectory& t) {
  std::string out = "t";
  const int n = t.states.empty() ? 0 : t.states.front().size();
  char buf[64];
  for (int j = 1; j <= n; ++j) {
    std::snprintf(buf, sizeof buf, ", v%dx, v%dy, v%dz", j, j, j);
    out += buf;
  }
  out += ", H, Jx, Jy, Jz\n";
  const auto app = [&](double v, bool first = false) {
    std::snprintf(buf, sizeof buf, first ? "%.17g" : ", %.17g", v);
    out += buf;
  };
  for (size_t k = 0; k < t.times.size(); ++k) {
    app(t.times[k], true);
    for (const UnitVector3& p : t.states[k].positions) {
      app(p.x());
      app(p.y());
      app(p.z());
    }
    app(t.energies[k]);
    app(t.momenta[k].x);
    app(t.momenta[k].y);
    app(t.momenta[k].z);
    out += '\n';
  }
  return out;
}

}  // namespace vortexsphere
