#pragma once

// Bessel and Hankel functions of the first kind, integer orders 0..3, real
// positive argument, together with the logarithmic decomposition used by the
// kernel splittings.

#include <array>

#include "elastic/types.hpp"

namespace elastic::special {

inline constexpr int kMaxOrder = 3;

/// Below this argument the kernels switch from Hankel differences to the
/// series form with analytically cancelled poles.
inline constexpr double kSmallArgument = 1.0;

double bessel_j(int n, double z);
double bessel_y(int n, double z);
Complex hankel1(int n, double z);

/// H_0 .. H_3 at one argument. J_0, J_1, Y_0, Y_1 are evaluated directly and
/// the higher orders by the three-term recurrence; used on hot paths where
/// z >= ~0.5.
std::array<Complex, 4> hankel1_all(double z);
std::array<double, 4> bessel_j_all(double z);

/// H_n(z) = i * log_coefficient * ln(z) * paired_j + analytic_part with
/// log_coefficient = 2/pi and paired_j = J_n(z). analytic_part carries the
/// poles of Y_n together with its entire remainder and J_n itself.
struct HankelSplit {
  Complex analytic_part;
  double log_coefficient;
  double paired_j;
};

/// Series region only: 0 < z <= kSeriesRadius.
inline constexpr double kSeriesRadius = 4.0;
HankelSplit hankel_smooth_parts(int n, double z);

}  // namespace elastic::special
