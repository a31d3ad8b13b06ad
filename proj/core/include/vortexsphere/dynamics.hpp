#pragma once

#include <string>
#include <vector>

#include "vortexsphere/groups.hpp"
#include "vortexsphere/sphere.hpp"

namespace vortexsphere {

// Full state of the N-vortex system; all strengths are 1.
struct Configuration {
  std::vector<UnitVector3> positions;

  Configuration() = default;
  explicit Configuration(std::vector<UnitVector3> p) : positions(std::move(p)) {}
  int size() const { return static_cast<int>(positions.size()); }
};

struct Trajectory {
  std::vector<double> times;
  std::vector<Configuration> states;
  std::vector<double> energies;
  std::vector<Vec3> momenta;
  double energy0 = 0.0;
  Vec3 momentum0;
  double min_distance = 2.0;
  bool near_collision = false;  // advisory: some pair came closer than 1e-6
};

// Hard collision threshold: pair distances below this raise CollisionError
// and count as exact coincidences in regularized products.
inline constexpr double kCollisionThreshold = 1e-14;
// Advisory threshold for the near-collision flag.
inline constexpr double kNearCollisionThreshold = 1e-6;

double hamiltonian(const Configuration& v);
// exp(-2H) = product of all squared pairwise distances; smooth on collisions.
double regularized_hamiltonian(const Configuration& v);
Vec3 momentum(const Configuration& v);
std::vector<TangentVector> vector_field(const Configuration& v);
// -v_j x grad_j of exp(-2H); equals -2 exp(-2H) * vector_field off collisions.
std::vector<TangentVector> regularized_vector_field(const Configuration& v);
double min_pairwise_distance(const Configuration& v);

// Index groups of mutually coincident vortices (distance <= tol), singletons
// included; used for collision-multiplicity diagnostics.
std::vector<std::vector<int>> collision_clusters(const Configuration& v, double tol = 1e-9);

// True iff v is fixed by the twisted action: g * v_j = v_{tau(g)(j)} for every
// group element and every label, within tol.
bool is_twisted_fixed(const Configuration& v, const TwistMorphism& tm,
                      const FiniteRotationGroup& g, double tol);

// Adaptive embedded Runge-Kutta 5(4) with per-step renormalization of every
// vortex.  stride <= 0 picks t_end/512.  Raises ToleranceError when the step
// size underflows 1e-13 and CollisionError when a pair distance crosses the
// hard threshold.
Trajectory integrate(const Configuration& v0, double t_end, double tol = 1e-10,
                     double stride = 0.0);

// Header: t, v1x, v1y, v1z, ..., vNx, vNy, vNz, H, Jx, Jy, Jz; 17 significant
// digits per value.
std::string trajectory_to_csv(const Trajectory& t);

}  // namespace vortexsphere
