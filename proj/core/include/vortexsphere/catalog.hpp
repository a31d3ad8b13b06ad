#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "vortexsphere/chebyshev.hpp"
#include "vortexsphere/reduction.hpp"
#include "vortexsphere/sphere.hpp"

namespace vortexsphere {

// Pa(n)    = (3n-1) T_2n - n U_2n + (2n-1)   anti-prism heights
// Pp(n)    = (3n-1) T_2n - n U_2n - (2n-1)   prism heights
// PaHat(n) = (3n+1) T_2n - n U_2n + (2n+1)   anti-prism with poles (root exists for n >= 3)
// PpHat(n) = (3n+1) T_2n - n U_2n - (2n+1)   prism with poles
// PT       = 1 - 13 x - 13 x^2 + 33 x^3      truncated tetrahedron (root is alpha^2)
// PTCube   = 1 - 21 x - 29 x^2 + 57 x^3      truncated tetrahedron with cube
enum class PolynomialLabel { Pa, Pp, PaHat, PpHat, PT, PTCube };

struct DefiningPolynomial {
  PolynomialLabel label = PolynomialLabel::Pa;
  int n = 0;                         // dihedral parameter; 0 for PT, PTCube
  std::vector<double> coefficients;  // ascending degree, integer-valued

  double operator()(double x) const { return evaluate_polynomial(coefficients, x); }
};

// n required for the dihedral labels, 2 <= n <= 16 (Chebyshev degree cap).
DefiningPolynomial build_polynomial(PolynomialLabel label, int n = 0);

// Unique root in (lo, hi): a 1000-point sign scan establishes the bracket and
// uniqueness (NoBracket / MultipleRoots otherwise), then bisection refined by
// Newton steps converges to 1e-13.
double root_in_interval(const DefiningPolynomial& poly, double lo, double hi);

// Max never appears in catalogs; the classifier can still return it so that
// every sign pattern of the Hessian has an honest outcome.
enum class EquilibriumKind { Min, Saddle, Max, Collision };

std::string kind_name(EquilibriumKind k);

struct EquilibriumRecord {
  UnitVector3 point;
  std::variant<std::monostate, CylindricalPoint, GnomonicPolarPoint> chart_point;
  EquilibriumKind kind = EquilibriumKind::Saddle;
  // anti-prism, prism, polygon, polar-collision, polygonal-collision (plus
  // -with-poles), icosahedron, dodecahedron, truncated-tetrahedron,
  // cuboctahedron, tetrahedral-collision, octahedral-collision (plus -cube).
  std::string name;
  // Root of the defining polynomial: lambda for dihedral records, alpha for
  // truncated tetrahedra; absent where no solve is involved.
  std::optional<double> defining_root;
};

// Every equilibrium and collision point of the reduced system for the scheme,
// kinds referring to h (min of h = stable).  Height records carry
// z = sqrt(1 - 1/lambda^2) from the defining root.  Special cases: the
// anti-prism family is absent for poles with n = 2, and the polygon-with-poles
// records are min for n = 2 and saddle for n >= 3.
std::vector<EquilibriumRecord> dihedral_catalog(int n, bool with_poles);
std::vector<EquilibriumRecord> tetrahedral_catalog(bool with_cube);
std::vector<EquilibriumRecord> catalog_for(const SymmetryScheme& s);

// Collision when u lies on the scheme's collision set (within 1e-9); otherwise
// classifies by the eigenvalue signs of the second-difference Hessian of the
// reduced Hamiltonian in an orthonormal tangent chart (step 1e-4).  Raises
// DegenerateHessian when the smaller |eigenvalue| is below 1e-6 of the larger.
EquilibriumKind classify_critical_point(const UnitVector3& u, const SymmetryScheme& s);

// JSON array of {name, kind, point, chart, defining_root}.
std::string catalog_to_json(const std::vector<EquilibriumRecord>& records);
// Fixed-width text table; roots and z-values printed with 10 decimals.
std::string catalog_to_table(const std::vector<EquilibriumRecord>& records);

}  // namespace vortexsphere
