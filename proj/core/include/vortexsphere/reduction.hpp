#pragma once

#include <string>
#include <utility>
#include <vector>

#include "vortexsphere/dynamics.hpp"
#include "vortexsphere/groups.hpp"
#include "vortexsphere/sphere.hpp"

namespace vortexsphere {

enum class FixedChoice { None, Poles, Cube };

// Ordered pair (K_o, F_o): the group orbit of a generating point u followed by
// the fixed vortices.  Supported schemes: any dihedral group with fixed set
// none or the two poles, and the tetrahedral group with fixed set none or the
// eight cube vertices.
struct SymmetryScheme {
  FiniteRotationGroup group;
  std::vector<UnitVector3> fixed_points;
  TwistMorphism twist;
  FixedChoice fixed_choice = FixedChoice::None;

  // Points of nontrivial isotropy; the reduced system collides exactly there
  // (the fixed sets above are contained in it).
  FixedSet collision_set;
  // quad_forms[j] = 2I - g_j - g_j^T, so |u - g_j u|^2 = u . quad_forms[j] u
  // with Euclidean gradient 2 quad_forms[j] u.  Entry 0 (identity) is unused.
  std::vector<Mat3> quad_forms;

  int m() const { return group.order(); }
  int N() const { return m() + static_cast<int>(fixed_points.size()); }
};

// n is required for the dihedral kinds (>= 2) and ignored otherwise.  Raises
// ConfigError on unsupported combinations (octahedral or icosahedral kinds,
// poles with T, cube with Dn).
SymmetryScheme make_scheme(GroupKind kind, int n, FixedChoice fixed);

// {"group": "Dn"|"T", "n": int (Dn only), "fixed": "none"|"poles"|"cube"};
// unknown keys are rejected.
SymmetryScheme scheme_from_json(const std::string& text);
std::string scheme_to_json(const SymmetryScheme& s);
// Short display name, e.g. "(D3, poles)".
std::string scheme_name(const SymmetryScheme& s);

// (g_1 u, ..., g_m u, f_1, ..., f_k) with g_1 the identity.
Configuration embed(const UnitVector3& u, const SymmetryScheme& s);

double distance_to_collision_set(const UnitVector3& u, const SymmetryScheme& s);

// h(u) = -(m/4) sum_{j>=2} ln|u - g_j u|^2 - (m/2) sum_k ln|u - f_k|^2,
// no additive normalization.  Raises CollisionError within 1e-9 of the
// collision set.
double reduced_hamiltonian(const UnitVector3& u, const SymmetryScheme& s);
// Analytic Euclidean gradient of h projected to the tangent plane at u.
TangentVector reduced_gradient(const UnitVector3& u, const SymmetryScheme& s);
// u' = -(1/m) u x grad h.
TangentVector reduced_field(const UnitVector3& u, const SymmetryScheme& s);

// exp(-2h) evaluated as the distance product itself, so it extends smoothly
// by 0 across the collision set; squared factors below 1e-28 count as exact
// zeros.
double regularized_reduced_hamiltonian(const UnitVector3& u, const SymmetryScheme& s);
// u' = -(1/m) u x grad exp(-2h); smooth everywhere, zero on the collision set.
TangentVector regularized_reduced_field(const UnitVector3& u, const SymmetryScheme& s);

// a = -2 exp(-2 h(u0)): the regularized solution w satisfies w(t) = u(a t)
// where u solves the plain reduced system.
double time_rescale_factor(const UnitVector3& u0, const SymmetryScheme& s);

enum class DihedralForm { Sum, Chebyshev };

// Closed forms of the dihedral reduced Hamiltonian in the cylindrical chart.
// Sum:       -(n(n-1)/2) ln(1-z^2) - (n/2) sum_{j=1}^{2n} ln(1 - sqrt(1-z^2) cos(theta + j zeta/2))
// Chebyshev: -(n(n-1)/2) ln(1-z^2) - (n/2) ln(q_{2n}(sqrt(1-z^2)) - (1-z^2)^n cos(2 n theta))
// with q_{2n}(r) = r^{2n} T_{2n}(1/r) and zeta = 2 pi / n.  The two agree up
// to the constant n(2n-1) ln(2)/2, and both match reduced_hamiltonian up to a
// further constant.  with_poles subtracts n ln(1-z^2) on top of either form.
double cylindrical_reduced_hamiltonian_dihedral(const CylindricalPoint& p, int n,
                                                bool with_poles,
                                                DihedralForm form = DihedralForm::Sum);

/// Evaluates both sides of the symplectic pullback identity at u: first the sum
// of per-vortex area forms at the embedded configuration applied to the pushed
// tangent pair, then m * u . (a x b).
std::pair<double, double> check_pullback(const UnitVector3& u, const SymmetryScheme& s,
                                         const TangentVector& a, const TangentVector& b);

// (numeric value of sum_{j=1}^{2n} cos(zeta/4 + j zeta/2)/(1 - cos(zeta/4 + j zeta/2)),
//  2n(n-1)) with zeta = 2 pi / n.
std::pair<double, double> trig_identity_check(int n);

}  // namespace vortexsphere
