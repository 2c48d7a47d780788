#pragma once

// Time-harmonic elastodynamic Green's tensor in the plane and the kernels of
// the single, double and adjoint double layer operators, each also available
// in a form split into logarithmic, Cauchy and smooth parts.

#include <array>
#include <string>

#include "elastic/geometry.hpp"
#include "elastic/types.hpp"

namespace elastic {

struct ElasticParams {
  double lambda = 1.0;
  double mu = 2.0;
  double rho = 1.0;
  double omega = 3.0;

  double ks() const;  ///< shear wavenumber
  double kp() const;  ///< pressure wavenumber
  /// Throws std::invalid_argument unless mu > 0, lambda + mu > 0, rho > 0, omega > 0.
  void validate() const;
};

/// S: Green's tensor G(x, y).
/// D: transposed traction of G taken at the source with n(y).
/// Adjoint: traction of G taken at the target with n(x).
/// Combined: D - i S.
enum class KernelKind { Single, Double, Adjoint, Combined };
std::string to_string(KernelKind kind);

/// Coefficients of r^p and r^p ln r for p in [kMinPower, kMaxPower].
class LogSeries {
 public:
  static constexpr int kMinPower = -4;
  static constexpr int kMaxPower = 40;

  Complex& plain(int p) { return plain_[p - kMinPower]; }
  Complex& logc(int p) { return logc_[p - kMinPower]; }
  Complex plain(int p) const { return plain_[p - kMinPower]; }
  Complex logc(int p) const { return logc_[p - kMinPower]; }

  LogSeries& operator+=(const LogSeries& o);
  LogSeries& operator-=(const LogSeries& o);
  LogSeries& operator*=(Complex s);
  /// Multiply by r^m.
  LogSeries shifted(int m) const;
  LogSeries derivative() const;

  /// Sum of the logarithmic coefficients (times r^p) and of the plain part.
  /// With drop_constant the r^0 plain coefficient is skipped.
  void evaluate(double r, Complex& log_part, Complex& plain_part, bool drop_constant = false) const;

 private:
  std::array<Complex, kMaxPower - kMinPower + 1> plain_{};
  std::array<Complex, kMaxPower - kMinPower + 1> logc_{};
};

/// k^n H^(1)_n(k r) as a series in r.
LogSeries scaled_hankel_series(int n, double k, int terms = 14);

/// The six radial functions, all already multiplied by i/(4 mu):
///   G = a I + b rr^T/r^2
///   P1 = c(r a' + b), P2 = c(r b' - 2b), P3 = c b, Pg = c(r a' + r b' + b).
enum Radial { kA = 0, kB, kP1, kP2, kP3, kPg, kRadialCount };

struct RadialParts {
  /// f(r) = log[i] ln r + smooth[i] + static_value[i]
  std::array<double, kRadialCount> log{};
  std::array<Complex, kRadialCount> smooth{};
};

class KernelEvaluator {
 public:
  explicit KernelEvaluator(const ElasticParams& params);

  const ElasticParams& params() const { return params_; }

  /// Limits at r = 0 of the P functions; zero for a and b.
  const std::array<double, kRadialCount>& static_values() const { return static_; }

  /// Log/smooth decomposition of all radial functions at distance r > 0.
  RadialParts radial(double r) const;
  /// Full values (log * ln r + smooth + static).
  std::array<Complex, kRadialCount> radial_values(double r) const;

  /// Kernel value at r = x - y, r != 0. nx, ny are unit normals at x and y.
  Mat2c kernel(KernelKind kind, const Vec2& r, const Vec2& nx, const Vec2& ny) const;
  Mat2c kernel(KernelKind kind, const Node& x, const Node& y) const {
    return kernel(kind, separation(x, y), x.normal, y.normal);
  }

  /// K = ln|d| log + cauchy / d + smooth, where d = u - t is the local
  /// parameter difference (source minus target) on a source panel of half
  /// width h. For x == y pass diagonal = true.
  struct Split {
    Mat2c log;
    Mat2c cauchy;  ///< d times the Cauchy part
    Mat2c smooth;
  };
  Split split(KernelKind kind, const Node& x, const Node& y, double d, double h, bool diagonal) const;

  /// Traction of the displacement field whose gradient is grad (grad(i,j) = du_i/dx_j).
  Vec2c traction(const Mat2c& grad, const Vec2& normal) const;

 private:
  void dynamic_parts(KernelKind kind, const Vec2& r, const Vec2& n, const RadialParts& rp,
                     Mat2c& log_part, Mat2c& rest) const;
  Split split_single(const Node& x, const Node& y, double d, double h, bool diagonal) const;
  Split split_layer(bool adjoint, const Node& x, const Node& y, double d, double h, bool diagonal) const;

  ElasticParams params_;
  double ks_ = 0.0, kp_ = 0.0, alpha_ = 0.0;
  std::array<LogSeries, kRadialCount> series_;
  std::array<double, kRadialCount> static_{};
};

/// Static double layer kernel (transposed source traction of the Kelvin
/// solution) at r = x - y with source normal ny.
Mat2 static_double_layer(const ElasticParams& params, const Vec2& r, const Vec2& ny);

/// Direct (non-split) Green's tensor from Hankel functions, for testing.
Mat2c green_direct(const ElasticParams& params, const Vec2& r);

}  // namespace elastic
