#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "vortexsphere/catalog.hpp"
#include "vortexsphere/chebyshev.hpp"
#include "vortexsphere/errors.hpp"

using namespace vortexsphere;

namespace {

// Independent route to the height polynomials: combine the exact T/U
// coefficient lists term by term.
std::vector<double> combined(int n, bool hat, int sign) {
  const auto t = chebyshev_coefficients(ChebKind::T, 2 * n);
  const auto u = chebyshev_coefficients(ChebKind::U, 2 * n);
  const double ct = hat ? 3.0 * n + 1.0 : 3.0 * n - 1.0;
  const double cc = hat ? 2.0 * n + 1.0 : 2.0 * n - 1.0;
  std::vector<double> out(2 * n + 1, 0.0);
  for (size_t i = 0; i < out.size(); ++i) {
    out[i] = ct * static_cast<double>(t[i]) - n * static_cast<double>(u[i]);
  }
  out[0] += sign * cc;
  return out;
}

void check_coeffs(const DefiningPolynomial& p, const std::vector<double>& want) {
  REQUIRE(p.coefficients.size() == want.size());
  for (size_t i = 0; i < want.size(); ++i) {
    CHECK(p.coefficients[i] == want[i]);
  }
}

}  // namespace

TEST_SUITE("chebyshev") {

TEST_CASE("recurrence values match the trigonometric definition") {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> th(0.05, 3.0);
  for (int k = 0; k <= 10; ++k) {
    for (int trial = 0; trial < 20; ++trial) {
      const double a = th(rng), x = std::cos(a);
      CHECK(chebyshev(ChebKind::T, k, x) == doctest::Approx(std::cos(k * a)).epsilon(1e-12));
      CHECK(chebyshev(ChebKind::U, k, x) ==
            doctest::Approx(std::sin((k + 1) * a) / std::sin(a)).epsilon(1e-12));
    }
  }
}

TEST_CASE("coefficient lists evaluate to the recurrence values") {
  for (int k = 0; k <= 32; ++k) {
    for (const ChebKind kind : {ChebKind::T, ChebKind::U}) {
      const auto c = chebyshev_coefficients(kind, k);
      std::vector<double> cd(c.begin(), c.end());
      // outside [-1, 1] the expanded form is well conditioned at any degree
      CHECK(evaluate_polynomial(cd, 1.5) ==
            doctest::Approx(chebyshev(kind, k, 1.5)).epsilon(1e-12));
      // inside, the alternating coefficients cancel; compare only while the
      // coefficient size keeps the cancellation below the tolerance
      if (k <= 12) {
        for (const double x : {0.3, -0.7}) {
          CHECK(evaluate_polynomial(cd, x) ==
                doctest::Approx(chebyshev(kind, k, x)).epsilon(1e-10));
        }
      }
    }
  }
  const auto t4 = chebyshev_coefficients(ChebKind::T, 4);
  CHECK(t4 == std::vector<std::int64_t>{1, 0, -8, 0, 8});
  const auto u4 = chebyshev_coefficients(ChebKind::U, 4);
  CHECK(u4 == std::vector<std::int64_t>{1, 0, -12, 0, 16});
  CHECK_THROWS_AS(chebyshev_coefficients(ChebKind::T, -1), UnsupportedDegree);
  CHECK_THROWS_AS(build_polynomial(PolynomialLabel::Pa, 17), UnsupportedDegree);
  CHECK_THROWS_AS(build_polynomial(PolynomialLabel::Pp, 1), UnsupportedDegree);
}

TEST_CASE("polynomial differentiation") {
  const std::vector<double> p{3.0, -2.0, 0.0, 5.0};
  const auto d = differentiate_polynomial(p);
  REQUIRE(d.size() == 3);
  CHECK(d[0] == -2.0);
  CHECK(d[1] == 0.0);
  CHECK(d[2] == 15.0);
}

TEST_CASE("height polynomials expand to the tabulated integer coefficients") {
  // anti-prism heights
  check_coeffs(build_polynomial(PolynomialLabel::Pa, 2), {6, 0, -16, 0, 8});
  check_coeffs(build_polynomial(PolynomialLabel::Pa, 3), {0, 0, 72, 0, -144, 0, 64});
  check_coeffs(build_polynomial(PolynomialLabel::Pa, 4),
               {14, 0, -192, 0, 800, 0, -1024, 0, 384});
  check_coeffs(build_polynomial(PolynomialLabel::Pa, 5),
               {0, 0, 400, 0, -2800, 0, 6720, 0, -6400, 0, 2048});
  // prism heights
  check_coeffs(build_polynomial(PolynomialLabel::Pp, 2), {0, 0, -16, 0, 8});
  check_coeffs(build_polynomial(PolynomialLabel::Pp, 3), {-10, 0, 72, 0, -144, 0, 64});
  check_coeffs(build_polynomial(PolynomialLabel::Pp, 4),
               {0, 0, -192, 0, 800, 0, -1024, 0, 384});
  check_coeffs(build_polynomial(PolynomialLabel::Pp, 5),
               {-18, 0, 400, 0, -2800, 0, 6720, 0, -6400, 0, 2048});
  // poles variants
  check_coeffs(build_polynomial(PolynomialLabel::PaHat, 2), {10, 0, -32, 0, 24});
  check_coeffs(build_polynomial(PolynomialLabel::PaHat, 3), {0, 0, 108, 0, -240, 0, 128});
  check_coeffs(build_polynomial(PolynomialLabel::PaHat, 4),
               {18, 0, -256, 0, 1120, 0, -1536, 0, 640});
  check_coeffs(build_polynomial(PolynomialLabel::PaHat, 5),
               {0, 0, 500, 0, -3600, 0, 8960, 0, -8960, 0, 3072});
  check_coeffs(build_polynomial(PolynomialLabel::PpHat, 2), {0, 0, -32, 0, 24});
  check_coeffs(build_polynomial(PolynomialLabel::PpHat, 3), {-14, 0, 108, 0, -240, 0, 128});
  check_coeffs(build_polynomial(PolynomialLabel::PpHat, 4),
               {0, 0, -256, 0, 1120, 0, -1536, 0, 640});
  check_coeffs(build_polynomial(PolynomialLabel::PpHat, 5),
               {-22, 0, 500, 0, -3600, 0, 8960, 0, -8960, 0, 3072});
  // truncated tetrahedra, plain and cube
  check_coeffs(build_polynomial(PolynomialLabel::PT), {1, -13, -13, 33});
  check_coeffs(build_polynomial(PolynomialLabel::PTCube), {1, -21, -29, 57});
}

TEST_CASE("height polynomials match the Chebyshev combination route") {
  for (int n = 2; n <= 8; ++n) {
    check_coeffs(build_polynomial(PolynomialLabel::Pa, n), combined(n, false, +1));
    check_coeffs(build_polynomial(PolynomialLabel::Pp, n), combined(n, false, -1));
    check_coeffs(build_polynomial(PolynomialLabel::PaHat, n), combined(n, true, +1));
    check_coeffs(build_polynomial(PolynomialLabel::PpHat, n), combined(n, true, -1));
  }
}

TEST_CASE("height roots hit the closed forms") {
  const auto root = [](PolynomialLabel label, int n) {
    return root_in_interval(build_polynomial(label, n), 1.0, 4.0);
  };
  CHECK(root(PolynomialLabel::Pa, 2) ==
        doctest::Approx(std::sqrt(1.5)).epsilon(1e-12));
  CHECK(root(PolynomialLabel::Pa, 3) ==
        doctest::Approx(std::sqrt(1.5)).epsilon(1e-12));
  CHECK(root(PolynomialLabel::Pa, 4) ==
        doctest::Approx(0.5 * std::sqrt((10.0 + std::sqrt(58.0)) / 3.0)).epsilon(1e-12));
  CHECK(root(PolynomialLabel::Pa, 5) ==
        doctest::Approx(0.25 * std::sqrt(15.0 + std::sqrt(65.0))).epsilon(1e-12));
  CHECK(root(PolynomialLabel::Pp, 2) ==
        doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
  CHECK(root(PolynomialLabel::Pp, 3) ==
        doctest::Approx(0.5 * std::sqrt(4.0 + std::sqrt(6.0))).epsilon(1e-12));
  CHECK(root(PolynomialLabel::Pp, 4) ==
        doctest::Approx(std::sqrt(1.5)).epsilon(1e-12));
  CHECK(root(PolynomialLabel::Pp, 5) == doctest::Approx(1.204672382361271).epsilon(1e-12));
  CHECK(root(PolynomialLabel::PaHat, 3) ==
        doctest::Approx(3.0 / (2.0 * std::sqrt(2.0))).epsilon(1e-12));
  CHECK(root(PolynomialLabel::PaHat, 4) ==
        doctest::Approx(0.5 * std::sqrt((14.0 + std::sqrt(106.0)) / 5.0)).epsilon(1e-12));
  CHECK(root(PolynomialLabel::PaHat, 5) ==
        doctest::Approx(std::sqrt(5.0) / 2.0).epsilon(1e-12));
  CHECK(root(PolynomialLabel::PpHat, 2) ==
        doctest::Approx(2.0 / std::sqrt(3.0)).epsilon(1e-12));
  CHECK(root(PolynomialLabel::PpHat, 3) ==
        doctest::Approx(0.25 * std::sqrt(13.0 + std::sqrt(57.0))).epsilon(1e-12));
  CHECK(root(PolynomialLabel::PpHat, 4) ==
        doctest::Approx(0.5 * std::sqrt((19.0 + std::sqrt(41.0)) / 5.0)).epsilon(1e-12));
  CHECK(root(PolynomialLabel::PpHat, 5) == doctest::Approx(1.126765978001598).epsilon(1e-12));
}

TEST_CASE("anti-prism with poles has no height for the smallest group") {
  CHECK_THROWS_AS(root_in_interval(build_polynomial(PolynomialLabel::PaHat, 2), 1.0, 4.0),
                  NoBracket);
}

TEST_CASE("tetrahedral roots") {
  const double a2 = root_in_interval(build_polynomial(PolynomialLabel::PT), 0.0, 0.5);
  CHECK(a2 == doctest::Approx(0.0726214261824710).epsilon(1e-12));
  CHECK(std::sqrt(a2) == doctest::Approx(0.2694836287837742).epsilon(1e-12));
  const double ah2 = root_in_interval(build_polynomial(PolynomialLabel::PTCube), 0.0, 0.5);
  CHECK(ah2 == doctest::Approx(0.0450631472414279).epsilon(1e-12));
  CHECK(std::sqrt(ah2) == doctest::Approx(0.2122808216524231).epsilon(1e-12));
}

TEST_CASE("root finder rejects multiple roots in the bracket") {
  DefiningPolynomial p;
  p.coefficients = {6.0, -5.0, 1.0};  // (x-2)(x-3)
  CHECK_THROWS_AS(root_in_interval(p, 1.0, 4.0), MultipleRoots);
}

}  // TEST_SUITE
