#include "vortexsphere/groups.hpp"

#include <algorithm>
#include <cmath>

#include "json.hpp"

namespace vortexsphere {

Mat3 Mat3::operator*(const Mat3& o) const {
  Mat3 r;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      double s = 0.0;
      for (int k = 0; k < 3; ++k) s += (*this)(i, k) * o(k, j);
      r(i, j) = s;
    }
  }
  return r;
}

Mat3 Mat3::operator+(const Mat3& o) const {
  Mat3 r;
  for (int i = 0; i < 9; ++i) r.m[i] = m[i] + o.m[i];
  return r;
}

Mat3 Mat3::transpose() const {
  Mat3 r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) r(i, j) = (*this)(j, i);
  return r;
}

double max_abs_entry(const Mat3& a) {
  double r = 0.0;
  for (double v : a.m) r = std::max(r, std::abs(v));
  return r;
}

double matrix_distance(const Mat3& a, const Mat3& b) {
  double r = 0.0;
  for (int i = 0; i < 9; ++i) r = std::max(r, std::abs(a.m[i] - b.m[i]));
  return r;
}

bool is_rotation(const Mat3& a, double tol) {
  const Mat3 gram = a.transpose() * a;
  if (matrix_distance(gram, Mat3::identity()) > tol) return false;
  const double det = a(0, 0) * (a(1, 1) * a(2, 2) - a(1, 2) * a(2, 1)) -
                     a(0, 1) * (a(1, 0) * a(2, 2) - a(1, 2) * a(2, 0)) +
                     a(0, 2) * (a(1, 0) * a(2, 1) - a(1, 1) * a(2, 0));
  return std::abs(det - 1.0) <= tol;
}

Mat3 rotation_about_z(double angle) {
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  Mat3 r;
  r.m = {c, -s, 0.0, s, c, 0.0, 0.0, 0.0, 1.0};
  return r;
}

Mat3 rotation_about_axis(const Vec3& axis, double angle) {
  const Vec3 k = axis / norm(axis);
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  const double t = 1.0 - c;
  Mat3 r;
  r.m = {c + k.x * k.x * t,       k.x * k.y * t - k.z * s, k.x * k.z * t + k.y * s,
         k.y * k.x * t + k.z * s, c + k.y * k.y * t,       k.y * k.z * t - k.x * s,
         k.z * k.x * t - k.y * s, k.z * k.y * t + k.x * s, c + k.z * k.z * t};
  return r;
}

int FiniteRotationGroup::index_of(const Mat3& a, double tol) const {
  for (size_t i = 0; i < elements.size(); ++i) {
    if (matrix_distance(elements[i], a) <= tol) return static_cast<int>(i);
  }
  return -1;
}

namespace {

bool lex_less(const Mat3& a, const Mat3& b) {
  for (int i = 0; i < 9; ++i) {
    if (a.m[i] != b.m[i]) return a.m[i] < b.m[i];
  }
  return false;
}

// Breadth-first closure from generators: identity first, then by word length,
// ties broken lexicographically by entries.
std::vector<Mat3> bfs_closure(const std::vector<Mat3>& generators, size_t max_order) {
  std::vector<Mat3> elements{Mat3::identity()};
  std::vector<Mat3> frontier{Mat3::identity()};
  const auto known = [&](const Mat3& a) {
    for (const Mat3& e : elements) {
      if (matrix_distance(e, a) <= 1e-9) return true;
    }
    return false;
  };
  while (!frontier.empty() && elements.size() <= max_order) {
    std::vector<Mat3> next;
    for (const Mat3& w : frontier) {
      for (const Mat3& g : generators) {
        const Mat3 c = w * g;
        if (known(c)) continue;
        bool fresh = true;
        for (const Mat3& other : next) {
          if (matrix_distance(other, c) <= 1e-9) {
            fresh = false;
            break;
          }
        }
        if (fresh) next.push_back(c);
      }
    }
    std::sort(next.begin(), next.end(), lex_less);
    for (const Mat3& c : next) elements.push_back(c);
    frontier = std::move(next);
  }
  return elements;
}

void finalize_group(FiniteRotationGroup& g) {
  const int order = g.order();
  g.table.assign(order, std::vector<int>(order, -1));
  g.inverse.assign(order, -1);
  for (int i = 0; i < order; ++i) {
    for (int j = 0; j < order; ++j) {
      const int k = g.index_of(g.elements[i] * g.elements[j]);
      if (k < 0) throw UnsupportedGroup("finalize_group: product escaped the element list");
      g.table[i][j] = k;
      if (k == 0) g.inverse[i] = j;
    }
  }
}

}  // namespace

FiniteRotationGroup build_group(GroupKind kind, int n) {
  FiniteRotationGroup g;
  g.kind = kind;
  switch (kind) {
    case GroupKind::Dihedral: {
      if (n < 2) throw UnsupportedGroup("build_group: Dihedral requires n >= 2");
      g.n = n;
      const double zeta = 2.0 * M_PI / n;
      Mat3 b;
      b.m = {1, 0, 0, 0, -1, 0, 0, 0, -1};
      // Powers of A are built from the angle directly, not by repeated
      // products, so the pole column stays exact.
      for (int j = 0; j < n; ++j) g.elements.push_back(rotation_about_z(j * zeta));
      for (int j = 0; j < n; ++j) g.elements.push_back(b * rotation_about_z(j * zeta));
      break;
    }
    case GroupKind::Tetrahedral: {
      Mat3 cyc;  // (x,y,z) -> (z,x,y)
      cyc.m = {0, 0, 1, 1, 0, 0, 0, 1, 0};
      Mat3 flip;
      flip.m = {1, 0, 0, 0, -1, 0, 0, 0, -1};
      g.elements = bfs_closure({cyc, flip}, 12);
      if (g.order() != 12) throw UnsupportedGroup("build_group: tetrahedral closure failed");
      break;
    }
    case GroupKind::Octahedral: {
      Mat3 cyc;
      cyc.m = {0, 0, 1, 1, 0, 0, 0, 1, 0};
      Mat3 quarter = rotation_about_z(M_PI / 2.0);
      // Clean the sin(pi/2) rounding so products stay exact signed permutations.
      for (double& v : quarter.m) v = std::round(v);
      g.elements = bfs_closure({cyc, quarter}, 24);
      if (g.order() != 24) throw UnsupportedGroup("build_group: octahedral closure failed");
      break;
    }
    case GroupKind::Icosahedral: {
      const double phi = 0.5 * (1.0 + std::sqrt(5.0));
      const Mat3 five = rotation_about_axis({0.0, 1.0, phi}, 2.0 * M_PI / 5.0);
      Mat3 two;
      two.m = {-1, 0, 0, 0, -1, 0, 0, 0, 1};
      g.elements = bfs_closure({five, two}, 60);
      if (g.order() != 60) throw UnsupportedGroup("build_group: icosahedral closure failed");
      break;
    }
  }
  finalize_group(g);
  return g;
}

Mat3 group_sum(const FiniteRotationGroup& g) {
  Mat3 s;
  s.m.fill(0.0);
  for (const Mat3& e : g.elements) s = s + e;
  return s;
}

int isotropy_order(const FiniteRotationGroup& g, const UnitVector3& u, double tol) {
  int count = 0;
  for (const Mat3& e : g.elements) {
    if (distance(e.apply(u), u) <= tol) ++count;
  }
  return count;
}

namespace {

// Rotation axis of a non-identity rotation; the antisymmetric part fails for
// half-turns, where the dominant column of R + I spans the axis.
Vec3 rotation_axis(const Mat3& r) {
  const Vec3 w{r(2, 1) - r(1, 2), r(0, 2) - r(2, 0), r(1, 0) - r(0, 1)};
  if (norm(w) > 1e-6) return w / norm(w);
  const Mat3 s = r + Mat3::identity();
  Vec3 best{0, 0, 0};
  for (int c = 0; c < 3; ++c) {
    const Vec3 col{s(0, c), s(1, c), s(2, c)};
    if (norm(col) > norm(best)) best = col;
  }
  return best / norm(best);
}

}  // namespace

FixedSet fixed_point_set(const FiniteRotationGroup& g) {
  FixedSet f;
  for (int i = 1; i < g.order(); ++i) {
    const Vec3 axis = rotation_axis(g.elements[i]);
    for (const Vec3& cand : {axis, -axis}) {
      const UnitVector3 p(cand);
      bool fresh = true;
      for (const UnitVector3& q : f.points) {
        if (distance(p, q) <= 1e-9) {
          fresh = false;
          break;
        }
      }
      if (fresh) f.points.push_back(p);
    }
  }
  for (const UnitVector3& p : f.points) {
    f.isotropy_orders.push_back(isotropy_order(g, p));
  }
  return f;
}

std::vector<UnitVector3> orbit(const FiniteRotationGroup& g, const UnitVector3& u, double tol) {
  std::vector<UnitVector3> points;
  for (const Mat3& e : g.elements) {
    const UnitVector3 p = e.apply(u);
    bool fresh = true;
    for (const UnitVector3& q : points) {
      if (distance(p, q) <= tol) {
        fresh = false;
        break;
      }
    }
    if (fresh) points.push_back(p);
  }
  return points;
}

TwistMorphism twist_morphism(const FiniteRotationGroup& k,
                             const std::vector<UnitVector3>& fixed_points) {
  const int m = k.order();
  const int nf = static_cast<int>(fixed_points.size());
  for (const UnitVector3& f : fixed_points) {
    if (isotropy_order(k, f) < 2) {
      throw NotInFixedSet("twist_morphism: fixed point has trivial isotropy");
    }
  }
  TwistMorphism tm;
  tm.m = m;
  tm.perms.assign(m, std::vector<int>(m + nf, -1));
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) tm.perms[i][j] = k.table[i][j];
    for (int j = 0; j < nf; ++j) {
      const UnitVector3 image = k.elements[i].apply(fixed_points[j]);
      int target = -1;
      for (int t = 0; t < nf; ++t) {
        if (distance(image, fixed_points[t]) <= 1e-9) {
          target = t;
          break;
        }
      }
      if (target < 0) {
        throw NotInvariant("twist_morphism: fixed set is not invariant under the group");
      }
      tm.perms[i][m + j] = m + target;
    }
  }
  return tm;
}

std::string group_to_json(const FiniteRotationGroup& g) {
  nlohmann::json j;
  switch (g.kind) {
    case GroupKind::Dihedral: j["kind"] = "Dn"; j["n"] = g.n; break;
    case GroupKind::Tetrahedral: j["kind"] = "T"; break;
    case GroupKind::Octahedral: j["kind"] = "O"; break;
    case GroupKind::Icosahedral: j["kind"] = "I"; break;
  }
  j["order"] = g.order();
  nlohmann::json elems = nlohmann::json::array();
  for (const Mat3& e : g.elements) elems.push_back(e.m);
  j["elements"] = std::move(elems);
  j["table"] = g.table;
  return j.dump(2);
}

std::string fixed_set_to_json(const FixedSet& f) {
  nlohmann::json j;
  nlohmann::json pts = nlohmann::json::array();
  for (const UnitVector3& p : f.points) pts.push_back({p.x(), p.y(), p.z()});
  j["points"] = std::move(pts);
  j["isotropy_orders"] = f.isotropy_orders;
  return j.dump(2);
}

}  // namespace vortexsphere
