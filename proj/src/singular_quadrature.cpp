#include "elastic/singular_quadrature.hpp"

#include <cmath>
#include <stdexcept>

namespace elastic {

std::vector<double> legendre_values(int n, double t) {
  std::vector<double> p(n);
  if (n > 0) p[0] = 1.0;
  if (n > 1) p[1] = t;
  for (int j = 1; j + 1 < n; ++j) p[j + 1] = ((2.0 * j + 1.0) * t * p[j] - j * p[j - 1]) / (j + 1.0);
  return p;
}

std::vector<double> cauchy_table(int n, double t) {
  if (n < 1) throw std::invalid_argument("cauchy_table: n must be positive");
  if (std::abs(t) == 1.0 || !std::isfinite(t)) throw std::domain_error("cauchy_table: t at panel endpoint");
  std::vector<double> c(n);
  const double c0 = -std::log(std::abs((t - 1.0) / (t + 1.0)));
  if (std::abs(t) < 1.0) {
    c[0] = c0;
    if (n > 1) c[1] = t * c0 - 2.0;
    for (int j = 1; j + 1 < n; ++j) c[j + 1] = ((2.0 * j + 1.0) * t * c[j] - j * c[j - 1]) / (j + 1.0);
    return c;
  }
  // Minimal solution of the three-term recurrence: start well past n at a
  // depth set by the decay rate |t| + sqrt(t^2 - 1).
  const double at = std::abs(t);
  const double rate = std::log(at + std::sqrt((at - 1.0) * (at + 1.0)));
  const int extra = static_cast<int>(std::min(20000.0, std::ceil(40.0 / rate)));
  const int m = n + extra;
  double next = 0.0, cur = 1e-300;
  std::vector<double> tail(n);
  for (int j = m; j >= 1; --j) {
    const double prev = ((2.0 * j + 1.0) * t * cur - (j + 1.0) * next) / j;
    next = cur;
    cur = prev;
    if (j - 1 < n) tail[j - 1] = cur;
    if (std::abs(cur) > 1e250) {  // rescale
      next *= 1e-250;
      cur *= 1e-250;
      for (auto& v : tail) v *= 1e-250;
    }
  }
  const double scale = c0 / tail[0];
  for (int j = 0; j < n; ++j) c[j] = tail[j] * scale;
  return c;
}

std::vector<double> log_table(int n, double t) {
  if (n < 1) throw std::invalid_argument("log_table: n must be positive");
  const std::vector<double> c = cauchy_table(n + 1, t);
  std::vector<double> l(n);
  auto xlogx = [](double v) { return v == 0.0 ? 0.0 : v * std::log(std::abs(v)); };
  l[0] = xlogx(1.0 - t) + xlogx(1.0 + t) - 2.0;
  // Integrate by parts against (P_{j+1} - P_{j-1}) / (2j+1), which vanishes at +-1.
  for (int j = 1; j < n; ++j) l[j] = (c[j + 1] - c[j - 1]) / (2.0 * j + 1.0);
  return l;
}

ModifiedWeights modified_weights(const GaussRule& rule, double t) {
  const int n = static_cast<int>(rule.nodes.size());
  const std::vector<double> cj = cauchy_table(n, t);
  const std::vector<double> lj = log_table(n, t);
  ModifiedWeights mw;
  mw.log.assign(n, 0.0);
  mw.cauchy.assign(n, 0.0);
  for (int k = 0; k < n; ++k) {
    const std::vector<double> p = legendre_values(n, rule.nodes[k]);
    double sl = 0.0, sc = 0.0;
    for (int j = 0; j < n; ++j) {
      const double u = 0.5 * (2.0 * j + 1.0) * rule.weights[k] * p[j];
      sl += lj[j] * u;
      sc += cj[j] * u;
    }
    mw.log[k] = sl;
    mw.cauchy[k] = -sc;
  }
  return mw;
}

RMatrix interp_matrix(const GaussRule& rule, const std::vector<double>& targets) {
  const int n = static_cast<int>(rule.nodes.size());
  RMatrix m(targets.size(), n);
  // Via the discrete Legendre transform, which is exact for degree < n.
  for (size_t i = 0; i < targets.size(); ++i) {
    const std::vector<double> pt = legendre_values(n, targets[i]);
    for (int k = 0; k < n; ++k) {
      const std::vector<double> pk = legendre_values(n, rule.nodes[k]);
      double s = 0.0;
      for (int j = 0; j < n; ++j) s += 0.5 * (2.0 * j + 1.0) * rule.weights[k] * pk[j] * pt[j];
      m(i, k) = s;
    }
  }
  return m;
}

}  // namespace elastic
