#include "vortexsphere/sphere.hpp"

#include <cmath>

namespace vortexsphere {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;
}

double normalize_angle(double theta) {
  double t = std::fmod(theta, kTwoPi);
  if (t < 0.0) t += kTwoPi;
  if (t >= kTwoPi) t = 0.0;
  return t;
}

CylindricalPoint to_cylindrical(const UnitVector3& u) {
  if (std::abs(u.z()) >= 1.0 - 1e-14) {
    throw PoleError("to_cylindrical: point is at or numerically on a pole");
  }
  return {u.z(), normalize_angle(std::atan2(u.y(), u.x()))};
}

UnitVector3 from_cylindrical(const CylindricalPoint& p) {
  const double r = std::sqrt(1.0 - p.z * p.z);
  return UnitVector3(r * std::cos(p.theta), r * std::sin(p.theta), p.z);
}

UnitVector3 from_gnomonic(const GnomonicPolarPoint& p) {
  const double X = p.R * std::cos(p.Theta);
  const double Y = p.R * std::sin(p.Theta);
  return UnitVector3(X, Y, 1.0);
}

GnomonicPolarPoint to_gnomonic(const UnitVector3& u) {
  if (u.z() <= 1e-14) {
    throw ChartError("to_gnomonic: point is not in the open northern hemisphere");
  }
  const double X = u.x() / u.z();
  const double Y = u.y() / u.z();
  return {std::hypot(X, Y), std::atan2(Y, X)};
}

std::pair<Vec3, Vec3> tangent_basis(const UnitVector3& u) {
  // Pick the coordinate axis least aligned with u; stable and deterministic.
  const Vec3 n = u.vec();
  Vec3 seed{1.0, 0.0, 0.0};
  double best = std::abs(n.x);
  if (std::abs(n.y) < best) {
    seed = {0.0, 1.0, 0.0};
    best = std::abs(n.y);
  }
  if (std::abs(n.z) < best) {
    seed = {0.0, 0.0, 1.0};
  }
  Vec3 e1 = seed - dot(seed, n) * n;
  e1 = e1 / norm(e1);
  const Vec3 e2 = cross(n, e1);
  return {e1, e2};
}

TangentVector spherical_gradient(const std::function<double(const UnitVector3&)>& f,
                                 const UnitVector3& u, double h) {
  const auto [e1, e2] = tangent_basis(u);
  const auto sample = [&](const Vec3& d) {
    const double value = f(UnitVector3(u.vec() + d));
    if (!std::isfinite(value)) {
      throw NonFiniteError("spherical_gradient: field evaluated non-finite near base point");
    }
    return value;
  };
  const double d1 = (sample(h * e1) - sample(-h * e1)) / (2.0 * h);
  const double d2 = (sample(h * e2) - sample(-h * e2)) / (2.0 * h);
  return {u, d1 * e1 + d2 * e2};
}

}  // namespace vortexsphere
