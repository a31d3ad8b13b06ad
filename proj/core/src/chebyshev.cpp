#include "vortexsphere/chebyshev.hpp"

#include "vortexsphere/errors.hpp"

namespace vortexsphere {

double chebyshev(ChebKind kind, int k, double x) {
  if (k < 0) throw UnsupportedDegree("chebyshev: negative degree");
  double prev = 1.0;
  double cur = (kind == ChebKind::T) ? x : 2.0 * x;
  if (k == 0) return prev;
  for (int i = 1; i < k; ++i) {
    const double next = 2.0 * x * cur - prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

std::vector<std::int64_t> chebyshev_coefficients(ChebKind kind, int k) {
  if (k < 0) throw UnsupportedDegree("chebyshev_coefficients: negative degree");
  std::vector<std::int64_t> prev{1};
  std::vector<std::int64_t> cur = (kind == ChebKind::T)
                                      ? std::vector<std::int64_t>{0, 1}
                                      : std::vector<std::int64_t>{0, 2};
  if (k == 0) return prev;
  for (int i = 1; i < k; ++i) {
    std::vector<std::int64_t> next(cur.size() + 1, 0);
    for (size_t j = 0; j < cur.size(); ++j) next[j + 1] += 2 * cur[j];
    for (size_t j = 0; j < prev.size(); ++j) next[j] -= prev[j];
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

double evaluate_polynomial(const std::vector<double>& ascending, double x) {
  double acc = 0.0;
  for (size_t i = ascending.size(); i-- > 0;) acc = acc * x + ascending[i];
  return acc;
}

std::vector<double> differentiate_polynomial(const std::vector<double>& ascending) {
  if (ascending.size() <= 1) return {0.0};
  std::vector<double> d(ascending.size() - 1);
  for (size_t i = 1; i < ascending.size(); ++i) {
    d[i - 1] = static_cast<double>(i) * ascending[i];
  }
  return d;
}

}  // namespace vortexsphere
