#include <cmath>
#include <random>

#include "doctest.h"
#include "vortexsphere/dynamics.hpp"
#include "vortexsphere/errors.hpp"
#include "vortexsphere/reduction.hpp"

using namespace vortexsphere;

namespace {

constexpr double kPi = 3.14159265358979323846;

std::vector<SymmetryScheme> all_schemes() {
  std::vector<SymmetryScheme> out;
  out.push_back(make_scheme(GroupKind::Dihedral, 2, FixedChoice::None));
  out.push_back(make_scheme(GroupKind::Dihedral, 3, FixedChoice::None));
  out.push_back(make_scheme(GroupKind::Dihedral, 4, FixedChoice::None));
  out.push_back(make_scheme(GroupKind::Dihedral, 2, FixedChoice::Poles));
  out.push_back(make_scheme(GroupKind::Dihedral, 3, FixedChoice::Poles));
  out.push_back(make_scheme(GroupKind::Dihedral, 5, FixedChoice::Poles));
  out.push_back(make_scheme(GroupKind::Tetrahedral, 0, FixedChoice::None));
  out.push_back(make_scheme(GroupKind::Tetrahedral, 0, FixedChoice::Cube));
  return out;
}

UnitVector3 clear_point(const SymmetryScheme& s, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> z(-1.0, 1.0), th(0.0, 2.0 * kPi);
  for (;;) {
    const double zz = z(rng), t = th(rng), r = std::sqrt(1.0 - zz * zz);
    const UnitVector3 u(Vec3{r * std::cos(t), r * std::sin(t), zz});
    if (distance_to_collision_set(u, s) > 0.05) return u;
  }
}

// Direct evaluation from the group elements, bypassing the cached quadratic
// forms.
double direct_h(const UnitVector3& u, const SymmetryScheme& s) {
  const double m = s.m();
  double h = 0.0;
  for (size_t j = 1; j < s.group.elements.size(); ++j) {
    h += -(m / 4.0) * std::log(norm2(u.vec() - s.group.elements[j].apply(u.vec())));
  }
  for (const auto& f : s.fixed_points) {
    h += -(m / 2.0) * std::log(norm2(u.vec() - f.vec()));
  }
  return h;
}

double direct_htilde(const UnitVector3& u, const SymmetryScheme& s) {
  const double m = s.m();
  double p = 1.0;
  for (size_t j = 1; j < s.group.elements.size(); ++j) {
    p *= std::pow(norm2(u.vec() - s.group.elements[j].apply(u.vec())), m / 2.0);
  }
  for (const auto& f : s.fixed_points) {
    p *= std::pow(norm2(u.vec() - f.vec()), m);
  }
  return p;
}

}  // namespace

TEST_SUITE("reduction") {

TEST_CASE("scheme construction rejects unsupported combinations") {
  CHECK_THROWS_AS(make_scheme(GroupKind::Octahedral, 0, FixedChoice::None), ConfigError);
  CHECK_THROWS_AS(make_scheme(GroupKind::Icosahedral, 0, FixedChoice::None), ConfigError);
  CHECK_THROWS_AS(make_scheme(GroupKind::Tetrahedral, 0, FixedChoice::Poles), ConfigError);
  CHECK_THROWS_AS(make_scheme(GroupKind::Dihedral, 3, FixedChoice::Cube), ConfigError);
  CHECK_THROWS_AS(make_scheme(GroupKind::Dihedral, 1, FixedChoice::None), ConfigError);
}

TEST_CASE("scheme json round trip") {
  for (const auto& s : all_schemes()) {
    const SymmetryScheme back = scheme_from_json(scheme_to_json(s));
    CHECK(back.group.kind == s.group.kind);
    CHECK(back.group.n == s.group.n);
    CHECK(back.fixed_choice == s.fixed_choice);
    CHECK(scheme_name(back) == scheme_name(s));
  }
  CHECK(scheme_name(all_schemes()[4]) == "(D3, poles)");
}

TEST_CASE("scheme json rejects malformed input") {
  CHECK_THROWS_AS(scheme_from_json(R"({"group":"T","fixed":"none","extra":1})"),
                  ConfigError);
  CHECK_THROWS_AS(scheme_from_json(R"({"group":"Dn","fixed":"none"})"), ConfigError);
  CHECK_THROWS_AS(scheme_from_json(R"({"group":"T","n":3,"fixed":"none"})"), ConfigError);
  CHECK_THROWS_AS(scheme_from_json(R"({"group":"X","fixed":"none"})"), ConfigError);
  CHECK_THROWS_AS(scheme_from_json("not json"), ConfigError);
}

TEST_CASE("embedded configurations") {
  std::mt19937_64 rng(51);
  for (const auto& s : all_schemes()) {
    const UnitVector3 u = clear_point(s, rng);
    const Configuration v = embed(u, s);
    CHECK(v.size() == s.N());
    CHECK(distance(v.positions[0], u) == 0.0);
    CHECK(is_twisted_fixed(v, s.twist, s.group, 1e-12));
    CHECK(norm(momentum(v)) < 1e-12);
  }
}

TEST_CASE("reduced energy agrees with the direct group sum") {
  std::mt19937_64 rng(52);
  for (const auto& s : all_schemes()) {
    for (int trial = 0; trial < 20; ++trial) {
      const UnitVector3 u = clear_point(s, rng);
      const double h = reduced_hamiltonian(u, s);
      CHECK(h == doctest::Approx(direct_h(u, s)).epsilon(1e-12));
    }
  }
}

TEST_CASE("full energy differences descend to the slice") {
  // H(embed(u)) - h(u) is a scheme constant (the pair sum over the orbit
  // collapses onto the per-element factors), so differences match exactly
  std::mt19937_64 rng(53);
  for (const auto& s : all_schemes()) {
    const UnitVector3 u1 = clear_point(s, rng), u2 = clear_point(s, rng);
    const double lhs = hamiltonian(embed(u1, s)) - hamiltonian(embed(u2, s));
    const double rhs = reduced_hamiltonian(u1, s) - reduced_hamiltonian(u2, s);
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-10));
  }
}

TEST_CASE("analytic gradient matches finite differences") {
  std::mt19937_64 rng(54);
  for (const auto& s : all_schemes()) {
    for (int trial = 0; trial < 5; ++trial) {
      const UnitVector3 u = clear_point(s, rng);
      const TangentVector g = reduced_gradient(u, s);
      const TangentVector fd = spherical_gradient(
          [&](const UnitVector3& w) { return reduced_hamiltonian(w, s); }, u);
      CHECK(norm(g.vec - fd.vec) < 1e-6 * std::max(1.0, norm(g.vec)));
      CHECK(std::abs(dot(g.vec, u.vec())) < 1e-12);
    }
  }
}

TEST_CASE("reduced velocity geometry") {
  std::mt19937_64 rng(55);
  for (const auto& s : all_schemes()) {
    const UnitVector3 u = clear_point(s, rng);
    const TangentVector g = reduced_gradient(u, s);
    const TangentVector f = reduced_field(u, s);
    CHECK(std::abs(dot(f.vec, u.vec())) < 1e-12);          // tangent
    CHECK(std::abs(dot(f.vec, g.vec)) < 1e-10);            // energy is conserved
    CHECK(norm(f.vec) == doctest::Approx(norm(g.vec) / s.m()).epsilon(1e-12));
    CHECK(norm(f.vec - cross(g.vec, u.vec()) / s.m()) < 1e-12 * std::max(1.0, norm(f.vec)));
  }
}

TEST_CASE("collision guard") {
  const SymmetryScheme s = make_scheme(GroupKind::Dihedral, 3, FixedChoice::None);
  CHECK_THROWS_AS(reduced_hamiltonian(UnitVector3(0.0, 0.0, 1.0), s), CollisionError);
  CHECK_THROWS_AS(reduced_gradient(UnitVector3(0.0, 0.0, 1.0), s), CollisionError);
}

TEST_CASE("regularized energy is the exponential of the plain one") {
  std::mt19937_64 rng(56);
  for (const auto& s : all_schemes()) {
    for (int trial = 0; trial < 10; ++trial) {
      const UnitVector3 u = clear_point(s, rng);
      const double ht = regularized_reduced_hamiltonian(u, s);
      CHECK(ht == doctest::Approx(std::exp(-2.0 * reduced_hamiltonian(u, s)))
                      .epsilon(1e-12));
      CHECK(ht == doctest::Approx(direct_htilde(u, s)).epsilon(1e-12));
    }
  }
}

TEST_CASE("regularized energy vanishes exactly on the collision set") {
  for (const auto& s : all_schemes()) {
    for (const auto& p : s.collision_set.points) {
      CHECK(regularized_reduced_hamiltonian(p, s) == 0.0);
      const TangentVector f = regularized_reduced_field(p, s);
      CHECK(norm(f.vec) < 1e-10);
    }
  }
}

TEST_CASE("regularized velocity is the rescaled plain velocity") {
  std::mt19937_64 rng(57);
  for (const auto& s : all_schemes()) {
    const UnitVector3 u = clear_point(s, rng);
    const double scale = -2.0 * regularized_reduced_hamiltonian(u, s);
    const TangentVector plain = reduced_field(u, s);
    const TangentVector reg = regularized_reduced_field(u, s);
    CHECK(norm(reg.vec - scale * plain.vec) < 1e-10 * std::max(1.0, norm(reg.vec)));
    CHECK(time_rescale_factor(u, s) == doctest::Approx(scale).epsilon(1e-14));
    CHECK(time_rescale_factor(u, s) < 0.0);
  }
}

TEST_CASE("cylindrical closed forms agree with the generic evaluation") {
  std::mt19937_64 rng(58);
  std::uniform_real_distribution<double> zd(-0.85, 0.85), td(0.0, 2.0 * kPi);
  for (const int n : {2, 3, 5}) {
    for (const bool poles : {false, true}) {
      const SymmetryScheme s =
          make_scheme(GroupKind::Dihedral, n, poles ? FixedChoice::Poles : FixedChoice::None);
      // reference offsets at one base point
      const CylindricalPoint base{0.312, 0.731};
      const double off_sum =
          cylindrical_reduced_hamiltonian_dihedral(base, n, poles, DihedralForm::Sum) -
          reduced_hamiltonian(from_cylindrical(base), s);
      const double off_cheb =
          cylindrical_reduced_hamiltonian_dihedral(base, n, poles, DihedralForm::Chebyshev) -
          reduced_hamiltonian(from_cylindrical(base), s);
      // the two closed forms differ by n(2n-1) ln(2) / 2
      CHECK(off_sum - off_cheb ==
            doctest::Approx(n * (2.0 * n - 1.0) * std::log(2.0) / 2.0).epsilon(1e-10));
      for (int trial = 0; trial < 25; ++trial) {
        const CylindricalPoint p{zd(rng), td(rng)};
        const UnitVector3 u = from_cylindrical(p);
        if (distance_to_collision_set(u, s) < 0.05) continue;
        const double h = reduced_hamiltonian(u, s);
        const double fs =
            cylindrical_reduced_hamiltonian_dihedral(p, n, poles, DihedralForm::Sum);
        const double fc =
            cylindrical_reduced_hamiltonian_dihedral(p, n, poles, DihedralForm::Chebyshev);
        CHECK(fs - h == doctest::Approx(off_sum).epsilon(1e-9));
        CHECK(fc - h == doctest::Approx(off_cheb).epsilon(1e-9));
      }
    }
  }
}

TEST_CASE("pole factors shift the cylindrical forms") {
  for (const int n : {2, 4}) {
    for (const double z : {-0.6, 0.1, 0.7}) {
      const CylindricalPoint p{z, 1.234};
      const double with = cylindrical_reduced_hamiltonian_dihedral(p, n, true);
      const double without = cylindrical_reduced_hamiltonian_dihedral(p, n, false);
      CHECK(with - without ==
            doctest::Approx(-n * std::log(1.0 - z * z)).epsilon(1e-12));
    }
  }
}

TEST_CASE("prism angle identity") {
  for (int n = 2; n <= 10; ++n) {
    const auto [value, target] = trig_identity_check(n);
    CHECK(value == doctest::Approx(target).epsilon(1e-10));
    CHECK(target == 2.0 * n * (n - 1.0));
  }
}

TEST_CASE("area pullback carries the orbit factor") {
  std::mt19937_64 rng(59);
  std::uniform_real_distribution<double> c(-1.0, 1.0);
  for (const auto& s : all_schemes()) {
    for (int trial = 0; trial < 20; ++trial) {
      const UnitVector3 u = clear_point(s, rng);
      const Vec3 w1{c(rng), c(rng), c(rng)}, w2{c(rng), c(rng), c(rng)};
      const TangentVector a{u, tangent_project(u, w1)};
      const TangentVector b{u, tangent_project(u, w2)};
      const auto [lhs, rhs] = check_pullback(u, s, a, b);
      CHECK(lhs == doctest::Approx(rhs).epsilon(1e-10));
    }
  }
}

TEST_CASE("large dihedral orders stay finite") {
  const SymmetryScheme s = make_scheme(GroupKind::Dihedral, 16, FixedChoice::None);
  const UnitVector3 u = from_cylindrical({0.4, 0.3});
  const double h = reduced_hamiltonian(u, s);
  CHECK(std::isfinite(h));
  // 32 vortices crowd the sphere, so the interaction energy is large
  CHECK(std::abs(h) > 50.0);
  const double ht = regularized_reduced_hamiltonian(u, s);
  CHECK(std::isfinite(ht));
  CHECK(ht == doctest::Approx(std::exp(-2.0 * h)).epsilon(1e-10));
}

}  // TEST_SUITE
