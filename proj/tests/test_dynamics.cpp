#include <cmath>
#include <random>
#include <sstream>

#include "doctest.h"
#include "vortexsphere/dynamics.hpp"
#include "vortexsphere/errors.hpp"
#include "vortexsphere/reduction.hpp"

using namespace vortexsphere;

namespace {

Configuration tetrahedron() {
  const double c = 1.0 / std::sqrt(3.0);
  return Configuration({UnitVector3(c, c, c), UnitVector3(c, -c, -c),
                        UnitVector3(-c, c, -c), UnitVector3(-c, -c, c)});
}

Configuration random_config(int n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> z(-1.0, 1.0), th(0.0, 6.28);
  Configuration v;
  for (int i = 0; i < n; ++i) {
    const double zz = z(rng), t = th(rng), r = std::sqrt(1.0 - zz * zz);
    v.positions.emplace_back(Vec3{r * std::cos(t), r * std::sin(t), zz});
  }
  return v;
}

}  // namespace

TEST_SUITE("dynamics") {

TEST_CASE("energy of the regular tetrahedron") {
  // all six squared chords equal 8/3
  CHECK(hamiltonian(tetrahedron()) ==
        doctest::Approx(-3.0 * std::log(8.0 / 3.0)).epsilon(1e-14));
  CHECK(regularized_hamiltonian(tetrahedron()) ==
        doctest::Approx(std::pow(8.0 / 3.0, 6.0)).epsilon(1e-13));
}

TEST_CASE("momentum sums the positions") {
  CHECK(norm(momentum(tetrahedron())) < 1e-15);
  Configuration v({UnitVector3(1.0, 0.0, 0.0), UnitVector3(0.0, 1.0, 0.0)});
  const Vec3 j = momentum(v);
  CHECK(j.x == 1.0);
  CHECK(j.y == 1.0);
  CHECK(j.z == 0.0);
}

TEST_CASE("two-vortex velocity") {
  Configuration v({UnitVector3(1.0, 0.0, 0.0), UnitVector3(0.0, 1.0, 0.0)});
  const auto f = vector_field(v);
  // v_i x v_j / |d|^2 with |d|^2 = 2
  CHECK(norm(f[0].vec - Vec3{0.0, 0.0, -0.5}) < 1e-15);
  CHECK(norm(f[1].vec - Vec3{0.0, 0.0, 0.5}) < 1e-15);
}

TEST_CASE("platonic rest configuration") {
  const auto f = vector_field(tetrahedron());
  for (const auto& tv : f) CHECK(norm(tv.vec) < 1e-15);
}

TEST_CASE("velocities are tangent and keep the momentum") {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 20; ++trial) {
    const Configuration v = random_config(5, rng);
    const auto f = vector_field(v);
    Vec3 jdot{0.0, 0.0, 0.0};
    for (int i = 0; i < v.size(); ++i) {
      CHECK(std::abs(dot(f[i].vec, v.positions[i].vec())) < 1e-12);
      jdot = jdot + f[i].vec;
    }
    CHECK(norm(jdot) < 1e-11);
  }
}

TEST_CASE("regularized field is the scaled plain field") {
  std::mt19937_64 rng(42);
  const Configuration v = random_config(4, rng);
  const double scale = -2.0 * regularized_hamiltonian(v);
  const auto plain = vector_field(v);
  const auto reg = regularized_vector_field(v);
  for (int i = 0; i < v.size(); ++i) {
    CHECK(norm(reg[i].vec - scale * plain[i].vec) <
          1e-12 * std::max(1.0, norm(reg[i].vec)));
  }
}

TEST_CASE("collision clusters group coincident vortices") {
  Configuration v({UnitVector3(1.0, 0.0, 0.0), UnitVector3(1.0, 1e-12, 0.0),
                   UnitVector3(0.0, 0.0, 1.0)});
  const auto clusters = collision_clusters(v);
  REQUIRE(clusters.size() == 2);
  CHECK(clusters[0].size() + clusters[1].size() == 3);
  CHECK(std::max(clusters[0].size(), clusters[1].size()) == 2);
  CHECK(min_pairwise_distance(v) < 1e-11);
}

TEST_CASE("integration conserves energy and momentum") {
  std::mt19937_64 rng(43);
  const Configuration v0 = random_config(5, rng);
  const Trajectory tr = integrate(v0, 10.0, 1e-12);
  REQUIRE(tr.times.size() == 513);
  CHECK(tr.times.front() == 0.0);
  CHECK(tr.times.back() == doctest::Approx(10.0).epsilon(1e-12));
  for (size_t k = 0; k < tr.times.size(); ++k) {
    CHECK(std::abs(tr.energies[k] - tr.energy0) < 1e-8 * std::max(1.0, std::abs(tr.energy0)));
    CHECK(norm(tr.momenta[k] - tr.momentum0) < 1e-9);
    for (const auto& p : tr.states[k].positions) {
      CHECK(std::abs(norm(p.vec()) - 1.0) < 1e-12);
    }
  }
}

TEST_CASE("two antipodal vortices rest, two generic ones precess") {
  Configuration rest({UnitVector3(0.0, 0.0, 1.0), UnitVector3(0.0, 0.0, -1.0)});
  const Trajectory tr = integrate(rest, 1.0);
  CHECK(distance(tr.states.back().positions[0], rest.positions[0]) < 1e-12);

  // a vortex pair rotates rigidly about its momentum axis
  Configuration pair({UnitVector3(0.6, 0.0, 0.8), UnitVector3(-0.6, 0.0, 0.8)});
  const Trajectory tp = integrate(pair, 5.0);
  const Vec3 axis = tp.momentum0 / norm(tp.momentum0);
  for (size_t k = 0; k < tp.states.size(); ++k) {
    CHECK(std::abs(dot(tp.states[k].positions[0].vec(), axis) -
                   dot(pair.positions[0].vec(), axis)) < 1e-10);
    CHECK(std::abs(distance(tp.states[k].positions[0], tp.states[k].positions[1]) -
                   distance(pair.positions[0], pair.positions[1])) < 1e-10);
  }
}

TEST_CASE("tolerance controls the endpoint error") {
  std::mt19937_64 rng(44);
  const Configuration v0 = random_config(4, rng);
  const Trajectory fine = integrate(v0, 5.0, 1e-12);
  const Trajectory coarse = integrate(v0, 5.0, 1e-6);
  double err = 0.0;
  for (int i = 0; i < v0.size(); ++i) {
    err = std::max(err,
                   distance(fine.states.back().positions[i],
                            coarse.states.back().positions[i]));
  }
  CHECK(err < 1e-4);
  CHECK(err > 0.0);
}

TEST_CASE("hard collisions abort the integration") {
  Configuration v({UnitVector3(1.0, 0.0, 0.0), UnitVector3(1.0, 1e-15, 0.0),
                   UnitVector3(0.0, 0.0, 1.0)});
  CHECK_THROWS_AS(integrate(v, 1.0), CollisionError);
}

TEST_CASE("csv export shape") {
  Configuration v({UnitVector3(0.6, 0.0, 0.8), UnitVector3(-0.6, 0.0, 0.8)});
  const Trajectory tr = integrate(v, 1.0, 1e-10, 0.5);
  const std::string csv = trajectory_to_csv(tr);
  std::istringstream in(csv);
  std::string header;
  std::getline(in, header);
  CHECK(header == "t, v1x, v1y, v1z, v2x, v2y, v2z, H, Jx, Jy, Jz");
  int rows = 0;
  for (std::string line; std::getline(in, line);) ++rows;
  CHECK(rows == 3);
}

TEST_CASE("twisted fixed configurations") {
  const SymmetryScheme s = make_scheme(GroupKind::Dihedral, 3, FixedChoice::Poles);
  const UnitVector3 u(0.5, 0.2, 0.6);
  Configuration v = embed(u, s);
  CHECK(is_twisted_fixed(v, s.twist, s.group, 1e-12));
  v.positions[2] = UnitVector3(v.positions[2].vec() + Vec3{0.01, 0.0, 0.0});
  CHECK(!is_twisted_fixed(v, s.twist, s.group, 1e-9));
}

}  // TEST_SUITE
