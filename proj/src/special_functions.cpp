#include "elastic/special_functions.hpp"

#include <cmath>
#include <stdexcept>

#include <boost/math/special_functions/bessel.hpp>

namespace elastic::special {

namespace {

void check_args(int n, double z) {
  if (n < 0 || n > kMaxOrder) throw std::domain_error("Bessel order must be in 0..3");
  if (!(z > 0.0) || !std::isfinite(z)) throw std::domain_error("Bessel argument must be positive");
}

double digamma_int(int m) {  // psi(m) for integer m >= 1
  double s = -kEulerGamma;
  for (int k = 1; k < m; ++k) s += 1.0 / k;
  return s;
}

double factorial(int m) {
  double f = 1.0;
  for (int k = 2; k <= m; ++k) f *= k;
  return f;
}

}  // namespace

double bessel_j(int n, double z) {
  check_args(n, z);
  return boost::math::cyl_bessel_j(n, z);
}

double bessel_y(int n, double z) {
  check_args(n, z);
  return boost::math::cyl_neumann(n, z);
}

Complex hankel1(int n, double z) { return {bessel_j(n, z), bessel_y(n, z)}; }

std::array<double, 4> bessel_j_all(double z) {
  std::array<double, 4> j{};
  j[0] = boost::math::cyl_bessel_j(0, z);
  j[1] = boost::math::cyl_bessel_j(1, z);
  j[2] = 2.0 / z * j[1] - j[0];
  j[3] = 4.0 / z * j[2] - j[1];
  return j;
}

std::array<Complex, 4> hankel1_all(double z) {
  const auto j = bessel_j_all(z);
  std::array<double, 4> y{};
  y[0] = boost::math::cyl_neumann(0, z);
  y[1] = boost::math::cyl_neumann(1, z);
  y[2] = 2.0 / z * y[1] - y[0];
  y[3] = 4.0 / z * y[2] - y[1];
  return {Complex{j[0], y[0]}, Complex{j[1], y[1]}, Complex{j[2], y[2]}, Complex{j[3], y[3]}};
}

HankelSplit hankel_smooth_parts(int n, double z) {
  check_args(n, z);
  if (z > kSeriesRadius) throw std::domain_error("hankel_smooth_parts: argument outside series radius");

  const double half = 0.5 * z;
  const double q = -half * half;
  // Ascending series for J_n and for the digamma-weighted remainder of Y_n.
  double jn = 0.0;
  double rem = 0.0;
  double term = std::pow(half, n) / factorial(n);  // k = 0 term of J_n
  for (int k = 0; k < 40; ++k) {
    if (k > 0) term *= q / (k * double(n + k));
    jn += term;
    rem += (digamma_int(k + 1) + digamma_int(n + k + 1)) * term;
    if (std::abs(term) < 1e-18 * std::abs(jn) && k > 2) break;
  }
  double poles = 0.0;
  for (int k = 0; k < n; ++k)
    poles += factorial(n - k - 1) / factorial(k) * std::pow(half, 2 * k - n);

  // Y_n = -(1/pi) poles + (2/pi) ln(z/2) J_n - (1/pi) rem
  const double y_regular = -poles / kPi - 2.0 / kPi * std::log(2.0) * jn - rem / kPi;
  return {Complex{jn, y_regular}, 2.0 / kPi, jn};
}

}  // namespace elastic::special
