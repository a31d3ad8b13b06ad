#pragma once

#include <cstdint>
#include <vector>

namespace vortexsphere {

enum class ChebKind { T, U };

// T_k or U_k at x by forward recurrence.  Stable for |x| >= 1 at the degrees
// used here (k <= 32).
double chebyshev(ChebKind kind, int k, double x);

// Exact integer coefficients of T_k or U_k, ascending degree.  Every entry of
// T_32/U_32 fits comfortably in 64 bits.
std::vector<std::int64_t> chebyshev_coefficients(ChebKind kind, int k);

// Horner evaluation of an ascending-degree coefficient list.
double evaluate_polynomial(const std::vector<double>& ascending, double x);
std::vector<double> differentiate_polynomial(const std::vector<double>& ascending);

}  // namespace vortexsphere
