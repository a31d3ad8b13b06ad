#include <cmath>
#include <random>
#include <set>

#include "doctest.h"
#include "json.hpp"
#include "vortexsphere/errors.hpp"
#include "vortexsphere/groups.hpp"

using namespace vortexsphere;

namespace {

constexpr double kPi = 3.14159265358979323846;

UnitVector3 generic_point() { return UnitVector3(Vec3{0.31, 0.47, 0.82}); }

}  // namespace

TEST_SUITE("groups") {

TEST_CASE("rotation constructors agree") {
  const Mat3 a = rotation_about_z(0.7);
  const Mat3 b = rotation_about_axis(Vec3{0.0, 0.0, 1.0}, 0.7);
  CHECK(matrix_distance(a, b) < 1e-15);
  CHECK(is_rotation(a));
  const Mat3 r = rotation_about_axis(Vec3{1.0, 2.0, 2.0} / 3.0, 1.234);
  CHECK(is_rotation(r));
  CHECK(matrix_distance(r * r.transpose(), Mat3::identity()) < 1e-15);
}

TEST_CASE("group orders") {
  CHECK(build_group(GroupKind::Dihedral, 2).order() == 4);
  CHECK(build_group(GroupKind::Dihedral, 5).order() == 10);
  CHECK(build_group(GroupKind::Tetrahedral).order() == 12);
  CHECK(build_group(GroupKind::Octahedral).order() == 24);
  CHECK(build_group(GroupKind::Icosahedral).order() == 60);
}

TEST_CASE("multiplication table matches matrix products") {
  for (const auto& g : {build_group(GroupKind::Dihedral, 3),
                        build_group(GroupKind::Tetrahedral),
                        build_group(GroupKind::Octahedral)}) {
    CHECK(matrix_distance(g.elements[0], Mat3::identity()) < 1e-15);
    CHECK(g.index_of(Mat3::identity()) == 0);
    for (int i = 0; i < g.order(); ++i) {
      CHECK(is_rotation(g.elements[i]));
      CHECK(g.mul(i, g.inv(i)) == 0);
      CHECK(g.mul(g.inv(i), i) == 0);
      for (int j = 0; j < g.order(); ++j) {
        const Mat3 prod = g.elements[i] * g.elements[j];
        CHECK(matrix_distance(prod, g.elements[g.mul(i, j)]) < 1e-12);
      }
    }
  }
}

TEST_CASE("dihedral element ordering") {
  const auto g = build_group(GroupKind::Dihedral, 4);
  const Mat3 a = rotation_about_z(kPi / 2.0);
  CHECK(matrix_distance(g.elements[1], a) < 1e-12);
  Mat3 b;
  b(1, 1) = -1.0;
  b(2, 2) = -1.0;
  CHECK(matrix_distance(g.elements[4], b) < 1e-12);
}

TEST_CASE("element sums vanish for the reducing groups") {
  for (int n = 2; n <= 10; ++n) {
    CHECK(max_abs_entry(group_sum(build_group(GroupKind::Dihedral, n))) < 1e-12);
  }
  CHECK(max_abs_entry(group_sum(build_group(GroupKind::Tetrahedral))) < 1e-12);
  CHECK(max_abs_entry(group_sum(build_group(GroupKind::Octahedral))) < 1e-12);
  CHECK(max_abs_entry(group_sum(build_group(GroupKind::Icosahedral))) < 1e-12);
}

TEST_CASE("fixed point sets") {
  const auto d2 = fixed_point_set(build_group(GroupKind::Dihedral, 2));
  CHECK(d2.points.size() == 6);
  const auto d3 = fixed_point_set(build_group(GroupKind::Dihedral, 3));
  CHECK(d3.points.size() == 8);
  const auto t = fixed_point_set(build_group(GroupKind::Tetrahedral));
  CHECK(t.points.size() == 14);

  int threes = 0, twos = 0;
  for (size_t i = 0; i < t.points.size(); ++i) {
    if (t.isotropy_orders[i] == 3) ++threes;
    if (t.isotropy_orders[i] == 2) ++twos;
  }
  CHECK(threes == 8);
  CHECK(twos == 6);

  const auto g3 = build_group(GroupKind::Dihedral, 3);
  for (size_t i = 0; i < d3.points.size(); ++i) {
    CHECK(isotropy_order(g3, d3.points[i]) == d3.isotropy_orders[i]);
  }
  CHECK(isotropy_order(g3, generic_point()) == 1);
}

TEST_CASE("orbits have full size at generic points") {
  const auto g = build_group(GroupKind::Tetrahedral);
  CHECK(orbit(g, generic_point()).size() == 12);
  CHECK(orbit(g, UnitVector3(1.0, 1.0, 1.0)).size() == 4);
}

TEST_CASE("twist morphism is a homomorphism of permutations") {
  const auto g = build_group(GroupKind::Dihedral, 3);
  const auto fixed = fixed_point_set(g);
  std::vector<UnitVector3> poles = {UnitVector3(0.0, 0.0, 1.0),
                                    UnitVector3(0.0, 0.0, -1.0)};
  const TwistMorphism tm = twist_morphism(g, poles);
  CHECK(tm.m == g.order());
  CHECK(tm.N() == g.order() + 2);

  std::mt19937_64 rng(21);
  std::uniform_int_distribution<int> pick(0, g.order() - 1);
  for (int trial = 0; trial < 50; ++trial) {
    const int i = pick(rng), j = pick(rng);
    for (int label = 0; label < tm.N(); ++label) {
      CHECK(tm.apply(g.mul(i, j), label) == tm.apply(i, tm.apply(j, label)));
    }
  }
  for (int i = 0; i < g.order(); ++i) {
    std::set<int> image(tm.perms[i].begin(), tm.perms[i].end());
    CHECK(static_cast<int>(image.size()) == tm.N());
  }
}

TEST_CASE("json exports parse") {
  const auto g = build_group(GroupKind::Dihedral, 2);
  const auto parsed = nlohmann::json::parse(group_to_json(g));
  CHECK(parsed.at("order").get<int>() == 4);
  const auto f = nlohmann::json::parse(fixed_set_to_json(fixed_point_set(g)));
  CHECK(f.at("points").size() == 6);
}

}  // TEST_SUITE
