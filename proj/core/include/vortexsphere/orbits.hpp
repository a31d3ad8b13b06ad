#pragma once

#include <string>
#include <vector>

#include "vortexsphere/catalog.hpp"
#include "vortexsphere/dynamics.hpp"
#include "vortexsphere/reduction.hpp"
#include "vortexsphere/sphere.hpp"

namespace vortexsphere {

struct ReducedOrbit {
  std::vector<double> times;       // ascending, reduced time
  std::vector<UnitVector3> points; // one per time, points.front() == seed orbit point
  double period = 0.0;             // reduced-time period
  double energy = 0.0;             // value of the reduced Hamiltonian on the orbit
  double closure_error = 0.0;      // |u(T) - u(0)| of the re-integrated loop
  bool regularized = false;        // traced with the regularized field
};

struct TraceOptions {
  bool use_regularized = false;
  double tol = 1e-10;     // integrator tolerance
  double t_span = 1e3;    // integration-time budget, retried once at 10x
  double return_tol = 1e-6;
  int samples_per_period = 2048;
};

// Closes the periodic orbit of the reduced (or regularized reduced) system
// through u0.  The section is the great circle normal to the initial
// velocity; upward crossings are refined by time bisection to 1e-10 and
// accepted when they land within return_tol of u0.  Raises NotRegular when
// |grad h| < 1e-7 at u0 and NoReturn when no crossing returns within the
// retried span.  Period and sample times are reported in reduced time for
// both field choices; regularized samples are reordered so the points
// traverse the curve in reduced-time direction.
ReducedOrbit trace_periodic(const UnitVector3& u0, const SymmetryScheme& s,
                            const TraceOptions& opt = {});

struct OrbitFamily {
  EquilibriumRecord center;
  std::vector<ReducedOrbit> orbits;  // ordered by ascending energy
};

// One closed orbit per requested energy around a minimum or a collision
// point (ConfigError otherwise).  Each energy is matched along the
// great-circle ray from the center by bisection on h (h grows toward a
// collision center and away from a minimum), then closed with
// trace_periodic; energies are traced in ascending order.  Raises
// EnergyUnreachable, naming the failing energy, when a level is not attained
// along the ray.
OrbitFamily family_from_center(const EquilibriumRecord& center, const SymmetryScheme& s,
                               const std::vector<double>& energies,
                               const TraceOptions& opt = {});

// Embeds a reduced orbit into the full phase space.  The lifted samples must
// solve the full equations: centered differences of consecutive samples match
// the full vector field within 1e-5 (ResidualTooLarge otherwise) and fixed
// vortices are exactly constant.
Trajectory lift_orbit(const ReducedOrbit& orbit, const SymmetryScheme& s);

enum class CurveClass { AroundMin, Separatrix, CollisionLoop, Unclassified };

std::string curve_class_name(CurveClass c);

struct PortraitCurve {
  CurveClass label = CurveClass::Unclassified;
  std::string nearest;  // catalog name of the labeling record, empty if none
  double energy = 0.0;
  std::vector<UnitVector3> points;
};

struct PortraitSpec {
  int rows = 24;
  int cols = 24;
  double tol = 1e-10;
  double t_span = 200.0;  // per-seed integration budget
  int max_points_per_curve = 512;
  int jobs = 1;  // worker threads for the seed pool
};

struct PhasePortrait {
  std::vector<PortraitCurve> curves;
};

// Integrates the reduced field from a rows x cols cylindrical grid of seeds.
// Each curve stops at closure (back within 1e-3 of its seed after arc length
// 1e-2), at arc length 6 pi, or at t_span.  A curve passing within 1e-3 of a
// saddle record is a separatrix; otherwise the record nearest the normalized
// curve centroid labels it (min: around-min, collision: collision-loop), and
// curves with a degenerate centroid stay unclassified.  Seeds within 1e-6 of
// the collision set, or whose integration degenerates, are skipped.  Curve
// order is the row-major seed order.
PhasePortrait sample_portrait(const SymmetryScheme& s, const PortraitSpec& spec = {});

// Header: t, ux, uy, uz; 17 significant digits.
std::string orbit_to_csv(const ReducedOrbit& orbit);

// Scheme, grid, and one entry per curve: label, nearest record, energy,
// polyline.
std::string portrait_to_json(const SymmetryScheme& s, const PortraitSpec& spec,
                             const PhasePortrait& p);

}  // namespace vortexsphere
