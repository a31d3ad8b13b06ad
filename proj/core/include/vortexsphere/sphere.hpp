#pragma once

#include <cmath>
#include <functional>
#include <utility>

#include "vortexsphere/errors.hpp"

namespace vortexsphere {

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  constexpr Vec3() = default;
  constexpr Vec3(double x_, double y_, double z_) : x(x_), y(y_), z(z_) {}

  constexpr Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
  constexpr Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
  constexpr Vec3 operator-() const { return {-x, -y, -z}; }
  constexpr Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
  constexpr Vec3 operator/(double s) const { return {x / s, y / s, z / s}; }
  friend constexpr Vec3 operator*(double s, const Vec3& v) { return v * s; }
};

constexpr double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
constexpr Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}
inline double norm(const Vec3& v) { return std::sqrt(dot(v, v)); }
inline double norm2(const Vec3& v) { return dot(v, v); }

// A point on the unit sphere.  Renormalized on construction; the unit-norm
// invariant holds to 1e-12 after every operation that produces one.
class UnitVector3 {
 public:
  UnitVector3() : v_(0.0, 0.0, 1.0) {}
  UnitVector3(double x, double y, double z) : UnitVector3(Vec3{x, y, z}) {}
  explicit UnitVector3(const Vec3& v) : v_(v) {
    const double n = norm(v_);
    if (!(n > 0.0) || !std::isfinite(n)) {
      throw NonFiniteError("UnitVector3: cannot normalize zero or non-finite vector");
    }
    v_ = v_ / n;
  }

  double x() const { return v_.x; }
  double y() const { return v_.y; }
  double z() const { return v_.z; }
  const Vec3& vec() const { return v_; }

 private:
  Vec3 v_;
};

inline Vec3 operator-(const UnitVector3& a, const UnitVector3& b) { return a.vec() - b.vec(); }
inline double distance(const UnitVector3& a, const UnitVector3& b) { return norm(a - b); }

// Velocity (or gradient) attached to a base point.  The tangency defect
// |vec . base| is the producer's responsibility; constructors do not project.
struct TangentVector {
  UnitVector3 base;
  Vec3 vec;
};

// Normalizes an angle into [0, 2*pi).
double normalize_angle(double theta);

// Cylindrical chart (z, theta) with x = sqrt(1-z^2) cos(theta),
// y = sqrt(1-z^2) sin(theta); valid away from the poles.
struct CylindricalPoint {
  double z = 0.0;
  double theta = 0.0;  // stored in [0, 2*pi)
};

// Polar gnomonic chart of the open northern hemisphere: X = R cos(Theta),
// Y = R sin(Theta), u = (X, Y, 1)/sqrt(X^2+Y^2+1).  R = 0 is the north pole.
struct GnomonicPolarPoint {
  double R = 0.0;
  double Theta = 0.0;
};

CylindricalPoint to_cylindrical(const UnitVector3& u);
UnitVector3 from_cylindrical(const CylindricalPoint& p);
UnitVector3 from_gnomonic(const GnomonicPolarPoint& p);
GnomonicPolarPoint to_gnomonic(const UnitVector3& u);

// Deterministic orthonormal tangent frame (e1, e2) at u with e1 x e2 = u.
std::pair<Vec3, Vec3> tangent_basis(const UnitVector3& u);

// Projects w onto the tangent plane at u.
inline Vec3 tangent_project(const UnitVector3& u, const Vec3& w) {
  return w - dot(w, u.vec()) * u.vec();
}

// Central-difference gradient of a scalar field restricted to the sphere,
// evaluated in an orthonormal tangent frame and returned as a tangent vector.
TangentVector spherical_gradient(const std::function<double(const UnitVector3&)>& f,
                                 const UnitVector3& u, double h = 1e-5);

}  // namespace vortexsphere
