#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "vortexsphere/sphere.hpp"

namespace vortexsphere {

// Row-major 3x3 matrix.  Group elements satisfy R^T R = I, det R = +1 to 1e-12;
// group_sum returns plain (non-rotation) matrices through the same type.
struct Mat3 {
  std::array<double, 9> m{1, 0, 0, 0, 1, 0, 0, 0, 1};

  static Mat3 identity() { return Mat3{}; }
  double operator()(int r, int c) const { return m[3 * r + c]; }
  double& operator()(int r, int c) { return m[3 * r + c]; }

  Vec3 apply(const Vec3& v) const {
    return {m[0] * v.x + m[1] * v.y + m[2] * v.z,
            m[3] * v.x + m[4] * v.y + m[5] * v.z,
            m[6] * v.x + m[7] * v.y + m[8] * v.z};
  }
  UnitVector3 apply(const UnitVector3& u) const { return UnitVector3(apply(u.vec())); }

  Mat3 operator*(const Mat3& o) const;
  Mat3 operator+(const Mat3& o) const;
  Mat3 transpose() const;
};

double max_abs_entry(const Mat3& a);
double matrix_distance(const Mat3& a, const Mat3& b);
bool is_rotation(const Mat3& a, double tol = 1e-12);

Mat3 rotation_about_z(double angle);
// Rodrigues rotation about a unit axis.
Mat3 rotation_about_axis(const Vec3& axis, double angle);

enum class GroupKind { Dihedral, Tetrahedral, Octahedral, Icosahedral };

using RotationMatrix = Mat3;

// Ordered finite rotation subgroup of SO(3).  elements[0] is the identity;
// after construction all group arithmetic is exact index arithmetic via the
// multiplication table (real products are matched at 1e-9 and snapped).
struct FiniteRotationGroup {
  GroupKind kind = GroupKind::Dihedral;
  int n = 0;  // meaningful for Dihedral only
  std::vector<RotationMatrix> elements;
  std::vector<std::vector<int>> table;  // table[i][j] = index of elements[i]*elements[j]
  std::vector<int> inverse;

  int order() const { return static_cast<int>(elements.size()); }
  int mul(int i, int j) const { return table[i][j]; }
  int inv(int i) const { return inverse[i]; }
  // Index of the element matching a within tol, or -1.
  int index_of(const Mat3& a, double tol = 1e-9) const;
};

// Dihedral groups use the ordering g_j = A^(j-1) (j = 1..n), g_(n+j) = B A^(j-1)
// with A the 2*pi/n rotation about e_z and B = diag(1,-1,-1); the polyhedral
// groups are enumerated breadth-first from fixed generators, identity first,
// ties broken lexicographically by matrix entries.
FiniteRotationGroup build_group(GroupKind kind, int n = 0);

Mat3 group_sum(const FiniteRotationGroup& g);

// Points with nontrivial isotropy (rotation-axis endpoints) and their
// isotropy orders.
struct FixedSet {
  std::vector<UnitVector3> points;
  std::vector<int> isotropy_orders;
};

FixedSet fixed_point_set(const FiniteRotationGroup& g);

int isotropy_order(const FiniteRotationGroup& g, const UnitVector3& u, double tol = 1e-9);

std::vector<UnitVector3> orbit(const FiniteRotationGroup& g, const UnitVector3& u,
                               double tol = 1e-9);

// Permutation representation of the group on vortex labels {0,...,N-1}:
// perms[i][j] is the image of label j under tau(g_i).  Composition follows
// sigma1*sigma2 = sigma1 o sigma2, so tau(g*h) = tau(g) o tau(h).
struct TwistMorphism {
  int m = 0;  // group order; labels 0..m-1 are orbit slots, the rest fixed points
  std::vector<std::vector<int>> perms;

  int N() const { return perms.empty() ? 0 : static_cast<int>(perms.front().size()); }
  int apply(int g_index, int label) const { return perms[g_index][label]; }
};

TwistMorphism twist_morphism(const FiniteRotationGroup& k,
                             const std::vector<UnitVector3>& fixed_points);

std::string group_to_json(const FiniteRotationGroup& g);
std::string fixed_set_to_json(const FixedSet& f);

}  // namespace vortexsphere
