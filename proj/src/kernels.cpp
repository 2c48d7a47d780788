#include "elastic/kernels.hpp"

#include <cmath>
#include <stdexcept>

#include "elastic/special_functions.hpp"

namespace elastic {

namespace {

double factorial(int m) {
  double f = 1.0;
  for (int k = 2; k <= m; ++k) f *= k;
  return f;
}

double digamma_int(int m) {
  double s = -kEulerGamma;
  for (int k = 1; k < m; ++k) s += 1.0 / k;
  return s;
}

const Mat2 kRot = (Mat2() << 0.0, 1.0, -1.0, 0.0).finished();

Mat2 outer(const Vec2& u, const Vec2& v) { return u * v.transpose(); }

}  // namespace

double ElasticParams::ks() const { return omega * std::sqrt(rho / mu); }
double ElasticParams::kp() const { return omega * std::sqrt(rho / (lambda + 2.0 * mu)); }

void ElasticParams::validate() const {
  auto finite = [](double v) { return std::isfinite(v); };
  if (!finite(lambda) || !finite(mu) || !finite(rho) || !finite(omega))
    throw std::invalid_argument("material parameters must be finite");
  if (!(mu > 0.0)) throw std::invalid_argument("mu must be positive");
  if (!(lambda + mu > 0.0)) throw std::invalid_argument("lambda + mu must be positive");
  if (!(rho > 0.0)) throw std::invalid_argument("rho must be positive");
  if (!(omega > 0.0)) throw std::invalid_argument("omega must be positive");
}

std::string to_string(KernelKind kind) {
  switch (kind) {
    case KernelKind::Single: return "single";
    case KernelKind::Double: return "double";
    case KernelKind::Adjoint: return "adjoint";
    case KernelKind::Combined: return "combined";
  }
  return "?";
}

LogSeries& LogSeries::operator+=(const LogSeries& o) {
  for (size_t i = 0; i < plain_.size(); ++i) {
    plain_[i] += o.plain_[i];
    logc_[i] += o.logc_[i];
  }
  return *this;
}

LogSeries& LogSeries::operator-=(const LogSeries& o) {
  for (size_t i = 0; i < plain_.size(); ++i) {
    plain_[i] -= o.plain_[i];
    logc_[i] -= o.logc_[i];
  }
  return *this;
}

LogSeries& LogSeries::operator*=(Complex s) {
  for (size_t i = 0; i < plain_.size(); ++i) {
    plain_[i] *= s;
    logc_[i] *= s;
  }
  return *this;
}

LogSeries LogSeries::shifted(int m) const {
  LogSeries out;
  for (int p = kMinPower; p <= kMaxPower; ++p) {
    if (plain(p) == 0.0 && logc(p) == 0.0) continue;
    const int q = p + m;
    if (q < kMinPower || q > kMaxPower) throw std::logic_error("LogSeries power out of range");
    out.plain(q) = plain(p);
    out.logc(q) = logc(p);
  }
  return out;
}

LogSeries LogSeries::derivative() const {
  LogSeries out;
  for (int p = kMinPower; p <= kMaxPower; ++p) {
    if (plain(p) == 0.0 && logc(p) == 0.0) continue;
    if (p - 1 < kMinPower) throw std::logic_error("LogSeries power out of range");
    out.plain(p - 1) += double(p) * plain(p) + logc(p);
    out.logc(p - 1) += double(p) * logc(p);
  }
  return out;
}

void LogSeries::evaluate(double r, Complex& log_part, Complex& plain_part, bool drop_constant) const {
  log_part = 0.0;
  plain_part = 0.0;
  // Horner over non-negative powers, explicit terms for negative ones.
  Complex hl = 0.0, hp = 0.0;
  for (int p = kMaxPower; p >= 0; --p) {
    hl = hl * r + logc(p);
    hp = hp * r + ((drop_constant && p == 0) ? Complex(0.0) : plain(p));
  }
  log_part = hl;
  plain_part = hp;
  for (int p = -1; p >= kMinPower; --p) {
    if (logc(p) != 0.0) log_part += logc(p) * std::pow(r, p);
    if (plain(p) != 0.0) plain_part += plain(p) * std::pow(r, p);
  }
}

LogSeries scaled_hankel_series(int n, double k, int terms) {
  LogSeries s;
  const double lk = std::log(0.5 * k);
  for (int j = 0; j < terms; ++j) {
    const double jc = ((j % 2) ? -1.0 : 1.0) * std::pow(k, 2 * n + 2 * j) / std::ldexp(1.0, n + 2 * j) /
                      (factorial(j) * factorial(n + j));
    const double psi = digamma_int(j + 1) + digamma_int(n + j + 1);
    const int p = n + 2 * j;
    s.plain(p) += Complex(jc, 2.0 / kPi * lk * jc - psi * jc / kPi);
    s.logc(p) += Complex(0.0, 2.0 / kPi * jc);
  }
  // Poles; the leading coefficient 2^n (n-1)! does not depend on k.
  for (int j = 0; j < n; ++j) {
    const double coef = factorial(n - j - 1) / factorial(j) * std::ldexp(1.0, n - 2 * j) * std::pow(k, 2 * j);
    s.plain(2 * j - n) += Complex(0.0, -coef / kPi);
  }
  return s;
}

KernelEvaluator::KernelEvaluator(const ElasticParams& params) : params_(params) {
  params_.validate();
  ks_ = params_.ks();
  kp_ = params_.kp();
  const double lam = params_.lambda, mu = params_.mu;
  alpha_ = 1.0 / (2.0 * kPi * (lam + 2.0 * mu));

  const double inv_ks2 = 1.0 / (ks_ * ks_);
  LogSeries a = scaled_hankel_series(0, ks_);
  LogSeries t = scaled_hankel_series(1, kp_);
  t -= scaled_hankel_series(1, ks_);
  t *= inv_ks2;
  a += t.shifted(-1);
  LogSeries b = scaled_hankel_series(2, ks_);
  b -= scaled_hankel_series(2, kp_);
  b *= inv_ks2;
  const LogSeries ra = a.derivative().shifted(1);
  const LogSeries rb = b.derivative().shifted(1);

  const Complex c(0.0, 1.0 / (4.0 * mu));
  series_[kA] = a;
  series_[kB] = b;
  series_[kP1] = ra;
  series_[kP1] += b;
  series_[kP2] = rb;
  LogSeries b2 = b;
  b2 *= 2.0;
  series_[kP2] -= b2;
  series_[kP3] = b;
  series_[kPg] = ra;
  series_[kPg] += rb;
  series_[kPg] += b;
  for (auto& s : series_) s *= c;

  static_[kP1] = -alpha_;
  static_[kPg] = -alpha_;
  static_[kP2] = -(lam + mu) / (2.0 * kPi * mu * (lam + 2.0 * mu));
  static_[kP3] = (lam + mu) / (4.0 * kPi * mu * (lam + 2.0 * mu));
}

std::array<Complex, kRadialCount> KernelEvaluator::radial_values(double r) const {
  const RadialParts rp = radial(r);
  std::array<Complex, kRadialCount> v;
  const double lr = std::log(r);
  for (int i = 0; i < kRadialCount; ++i) v[i] = rp.log[i] * lr + rp.smooth[i] + static_[i];
  return v;
}

RadialParts KernelEvaluator::radial(double r) const {
  if (!(r > 0.0)) throw std::domain_error("radial functions need r > 0");
  RadialParts out;
  if (ks_ * r < special::kSmallArgument) {
    for (int i = 0; i < kRadialCount; ++i) {
      Complex lp, pp;
      series_[i].evaluate(r, lp, pp, i >= kP1);
      out.log[i] = lp.real();
      out.smooth[i] = pp;
    }
    return out;
  }
  const auto hs = special::hankel1_all(ks_ * r);
  const auto hp = special::hankel1_all(kp_ * r);
  const double ks = ks_, kp = kp_, ks2 = ks * ks, kp2 = kp * kp, r2 = r * r;
  const Complex a = hs[0] + (-ks * hs[1] + kp * hp[1]) / (ks2 * r);
  const Complex b = (ks2 * hs[2] - kp2 * hp[2]) / ks2;
  const Complex da = -ks * hs[1] + (-ks2 * hs[0] / r + 2.0 * ks * hs[1] / r2 + kp2 * hp[0] / r -
                                    2.0 * kp * hp[1] / r2) / ks2;
  const Complex db = (ks2 * ks * hs[1] - 2.0 * ks2 * hs[2] / r - kp2 * kp * hp[1] + 2.0 * kp2 * hp[2] / r) / ks2;
  const Complex c(0.0, 1.0 / (4.0 * params_.mu));
  std::array<Complex, kRadialCount> v;
  v[kA] = c * a;
  v[kB] = c * b;
  v[kP1] = c * (r * da + b);
  v[kP2] = c * (r * db - 2.0 * b);
  v[kP3] = c * b;
  v[kPg] = c * (r * da + r * db + b);
  const double lr = std::log(r);
  for (int i = 0; i < kRadialCount; ++i) {
    out.log[i] = -2.0 / kPi * v[i].imag();
    out.smooth[i] = v[i] - out.log[i] * lr - static_[i];
  }
  return out;
}

namespace {

// Layer-type kernel built from radial values P (indexed like Radial);
// sign -1 with X = rh n^T for the double layer, +1 with X = n rh^T for the adjoint.
template <class Values>
Mat2c layer_combo(double sign, bool adjoint, const Vec2& rh, const Vec2& n, double rr, double lam, double mu,
                  const Values& P) {
  const Mat2 X = adjoint ? outer(n, rh) : outer(rh, n);
  const double nr = n.dot(rh);
  Mat2c m = (lam * P[kPg] + 2.0 * mu * P[kP3]) * X.cast<Complex>() + mu * P[kP1] * X.transpose().cast<Complex>() +
            mu * P[kP1] * nr * Mat2::Identity().cast<Complex>() +
            2.0 * mu * P[kP2] * nr * outer(rh, rh).cast<Complex>();
  return (sign / rr) * m;
}

}  // namespace

Mat2c KernelEvaluator::kernel(KernelKind kind, const Vec2& r, const Vec2& nx, const Vec2& ny) const {
  const double rr = r.norm();
  const Vec2 rh = r / rr;
  const auto v = radial_values(rr);
  const double lam = params_.lambda, mu = params_.mu;
  switch (kind) {
    case KernelKind::Single:
      return v[kA] * Mat2c::Identity() + v[kB] * outer(rh, rh).cast<Complex>();
    case KernelKind::Double:
      return layer_combo(-1.0, false, rh, ny, rr, lam, mu, v);
    case KernelKind::Adjoint:
      return layer_combo(1.0, true, rh, nx, rr, lam, mu, v);
    case KernelKind::Combined: {
      const Mat2c s = v[kA] * Mat2c::Identity() + v[kB] * outer(rh, rh).cast<Complex>();
      return layer_combo(-1.0, false, rh, ny, rr, lam, mu, v) - kI * s;
    }
  }
  return Mat2c::Zero();
}

KernelEvaluator::Split KernelEvaluator::split_single(const Node& x, const Node& y, double d, double h,
                                                     bool diagonal) const {
  Split s;
  s.cauchy.setZero();
  if (diagonal) {
    const Mat2 tt = outer(y.tangent, y.tangent);
    s.log = series_[kA].logc(0).real() * Mat2c::Identity();
    s.smooth = series_[kA].plain(0) * Mat2c::Identity() + series_[kB].plain(0) * tt.cast<Complex>() +
               std::log(h * y.speed) * s.log;
    return s;
  }
  const Vec2 r = separation(x, y);
  const double rr = r.norm();
  const Vec2 rh = r / rr;
  const RadialParts rp = radial(rr);
  const Mat2 R = outer(rh, rh);
  s.log = (rp.log[kA] * Mat2::Identity() + rp.log[kB] * R).cast<Complex>();
  s.smooth = rp.smooth[kA] * Mat2c::Identity() + rp.smooth[kB] * R.cast<Complex>() +
             std::log(rr / std::abs(d)) * s.log;
  return s;
}

KernelEvaluator::Split KernelEvaluator::split_layer(bool adjoint, const Node& x, const Node& y, double d,
                                                    double h, bool diagonal) const {
  const double lam = params_.lambda, mu = params_.mu;
  Split s;
  if (diagonal) {
    const Mat2 tt = outer(y.tangent, y.tangent);
    s.log.setZero();
    s.cauchy = (-mu * alpha_ / (y.speed * h)) * kRot.cast<Complex>();
    s.smooth = (alpha_ * 0.5 * y.curvature * (mu * Mat2::Identity() + 2.0 * (lam + mu) * tt)).cast<Complex>();
    return s;
  }
  const Vec2 r = separation(x, y);
  const double rr = r.norm();
  const Vec2 rh = r / rr;
  const Vec2& n = adjoint ? x.normal : y.normal;
  const Vec2 tau(-n.y(), n.x());
  const double sign = adjoint ? 1.0 : -1.0;
  const RadialParts rp = radial(rr);
  std::array<Complex, kRadialCount> lg, sm;
  for (int i = 0; i < kRadialCount; ++i) {
    lg[i] = rp.log[i];
    sm[i] = rp.smooth[i];
  }
  s.log = layer_combo(sign, adjoint, rh, n, rr, lam, mu, lg);
  s.cauchy = (d * mu * alpha_ * tau.dot(rh) / rr) * kRot.cast<Complex>();
  const double nr = n.dot(rh) / rr;
  const Mat2 stat = sign * (mu * static_[kP1] * nr * Mat2::Identity() + 2.0 * mu * static_[kP2] * nr * outer(rh, rh));
  s.smooth = layer_combo(sign, adjoint, rh, n, rr, lam, mu, sm) + stat.cast<Complex>() +
             std::log(rr / std::abs(d)) * s.log;
  return s;
}

KernelEvaluator::Split KernelEvaluator::split(KernelKind kind, const Node& x, const Node& y, double d, double h,
                                              bool diagonal) const {
  switch (kind) {
    case KernelKind::Single: return split_single(x, y, d, h, diagonal);
    case KernelKind::Double: return split_layer(false, x, y, d, h, diagonal);
    case KernelKind::Adjoint: return split_layer(true, x, y, d, h, diagonal);
    case KernelKind::Combined: {
      Split a = split_layer(false, x, y, d, h, diagonal);
      const Split b = split_single(x, y, d, h, diagonal);
      a.log -= kI * b.log;
      a.cauchy -= kI * b.cauchy;
      a.smooth -= kI * b.smooth;
      return a;
    }
  }
  return {};
}

Vec2c KernelEvaluator::traction(const Mat2c& grad, const Vec2& normal) const {
  const double lam = params_.lambda, mu = params_.mu;
  const Vec2 tau(-normal.y(), normal.x());
  const Complex curl = grad(1, 0) - grad(0, 1);
  return 2.0 * mu * grad * normal.cast<Complex>() + lam * grad.trace() * normal.cast<Complex>() -
         mu * curl * tau.cast<Complex>();
}

Mat2 static_double_layer(const ElasticParams& params, const Vec2& r, const Vec2& ny) {
  const double lam = params.lambda, mu = params.mu;
  const double alpha = 1.0 / (2.0 * kPi * (lam + 2.0 * mu));
  const double rr = r.norm();
  const Vec2 rh = r / rr;
  const Vec2 tau(-ny.y(), ny.x());
  const double nr = ny.dot(rh);
  return (alpha / rr) * (mu * nr * Mat2::Identity() + 2.0 * (lam + mu) * nr * outer(rh, rh) + mu * tau.dot(rh) * kRot);
}

Mat2c green_direct(const ElasticParams& params, const Vec2& r) {
  const double ks = params.ks(), kp = params.kp();
  const double rr = r.norm();
  const Complex c(0.0, 1.0 / (4.0 * params.mu));
  const Complex a = special::hankel1(0, ks * rr) +
                    (-ks * special::hankel1(1, ks * rr) + kp * special::hankel1(1, kp * rr)) / (ks * ks * rr);
  const Complex b = (ks * ks * special::hankel1(2, ks * rr) - kp * kp * special::hankel1(2, kp * rr)) / (ks * ks);
  const Vec2 rh = r / rr;
  return c * (a * Mat2c::Identity() + b * outer(rh, rh).cast<Complex>());
}

}  // namespace elastic
