#include <doctest.h>

#include <cmath>
#include <random>

#include "elastic/singular_quadrature.hpp"

using namespace elastic;

namespace {

// Composite Gauss on dyadic pieces of [a, b] shrinking toward a. f takes the
// offset from a, so that nothing cancels near the endpoint.
template <class F>
double graded(F f, double a, double b) {
  static const GaussRule g = gauss_legendre(20);
  double s = 0.0;
  const double len = b - a;
  for (int k = 0; k < 45; ++k) {
    const double x0 = k == 44 ? 0.0 : len * std::ldexp(1.0, -(k + 1));
    const double x1 = len * std::ldexp(1.0, -k);
    for (size_t i = 0; i < g.nodes.size(); ++i)
      s += 0.5 * (x1 - x0) * g.weights[i] * f(0.5 * (x0 + x1) + 0.5 * (x1 - x0) * g.nodes[i]);
  }
  return s;
}

double legendre(int j, double s) { return legendre_values(j + 1, s)[j]; }

// p.v. int P_j(s) / (t - s) ds and int P_j(s) ln|s - t| ds by singularity subtraction.
void oracle(int j, double t, double& c, double& l) {
  if (std::abs(t) < 1.0) {
    const double pt = legendre(j, t);
    const auto g = [&](double u) { return legendre(j, t + u) * std::log(std::abs(u)); };
    const auto f = [&](double u) { return (legendre(j, t + u) - pt) / u; };
    // int f over [-1, 1] plus P_j(t) p.v. int 1/(s - t) = P_j(t) ln((1-t)/(1+t)); C has the opposite sign
    c = -(graded(f, t, 1.0) - graded(f, t, -1.0) + pt * std::log((1.0 - t) / (1.0 + t)));
    l = graded(g, t, 1.0) - graded(g, t, -1.0);
  } else {
    const double e = t > 0 ? 1.0 : -1.0;
    const auto g = [&](double u) { return legendre(j, e + u) * std::log(std::abs(e + u - t)); };
    const auto f = [&](double u) { return legendre(j, e + u) / (t - e - u); };
    c = e * -graded(f, e, -e);
    l = e * -graded(g, e, -e);
  }
}

}  // namespace

TEST_SUITE("singular_quadrature") {

TEST_CASE("closed form values") {
  const auto c0 = cauchy_table(4, 0.0);
  CHECK(std::abs(c0[0]) < 1e-16);
  CHECK(c0[1] == doctest::Approx(-2.0).epsilon(1e-15));
  CHECK(cauchy_table(2, 3.0)[0] == doctest::Approx(std::log(2.0)).epsilon(1e-15));
  const auto l0 = log_table(4, 0.0);
  CHECK(l0[0] == doctest::Approx(-2.0).epsilon(1e-15));
  CHECK(std::abs(l0[1]) < 1e-16);
  CHECK_THROWS_AS(cauchy_table(4, 1.0), std::domain_error);
  CHECK_THROWS_AS(cauchy_table(4, -1.0), std::domain_error);
}

TEST_CASE("tables against quadrature oracles") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> pick(-1.0, 3.0);
  std::vector<double> ts = {0.3, 0.7, -0.97, 1.005, 1.3, 2.9};
  while (ts.size() < 50) {
    const double t = pick(rng);
    if (std::abs(std::abs(t) - 1.0) > 1e-3) ts.push_back(t);
  }
  double worst_c = 0.0, worst_l = 0.0;
  for (double t : ts) {
    const auto c = cauchy_table(16, t);
    const auto l = log_table(16, t);
    for (int j = 0; j < 16; ++j) {
      double cr, lr;
      oracle(j, t, cr, lr);
      worst_c = std::max(worst_c, std::abs(c[j] - cr));
      worst_l = std::max(worst_l, std::abs(l[j] - lr));
    }
  }
  CHECK(worst_c < 1e-11);
  CHECK(worst_l < 1e-11);
}

TEST_CASE("recursion stays bounded inside the interval") {
  for (double t = -0.999; t < 1.0; t += 0.0173) {
    const auto c = cauchy_table(32, t);
    double m = 0.0;
    for (double v : c) m = std::max(m, std::abs(v));
    CHECK(m <= 2.0 + std::abs(c[0]));
  }
  // far targets: C_j decays like the minimal solution
  const auto far = cauchy_table(40, 5.0);
  for (int j = 1; j < 40; ++j) CHECK(std::abs(far[j]) < std::abs(far[j - 1]));
}

TEST_CASE("modified weights are exact on polynomials") {
  const GaussRule rule = gauss_legendre(16);
  for (double t : {-0.93, -0.2, 0.0, 0.55, 1.02, -1.7, 2.5}) {
    const ModifiedWeights mw = modified_weights(rule, t);
    const auto c = cauchy_table(16, t);
    const auto l = log_table(16, t);
    for (int j = 0; j < 16; ++j) {
      double sl = 0.0, sc = 0.0;
      for (int k = 0; k < 16; ++k) {
        sl += mw.log[k] * legendre(j, rule.nodes[k]);
        sc += mw.cauchy[k] * legendre(j, rule.nodes[k]);
      }
      CHECK(std::abs(sl - l[j]) < 1e-12);
      CHECK(std::abs(sc + c[j]) < 1e-12);
    }
  }
}

TEST_CASE("interpolation matrix") {
  const GaussRule rule = gauss_legendre(16);
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> coef(16);
  for (double& a : coef) a = u(rng);
  const auto poly = [&](double s) {
    const auto p = legendre_values(16, s);
    double v = 0.0;
    for (int j = 0; j < 16; ++j) v += coef[j] * p[j];
    return v;
  };
  std::vector<double> targets;
  for (int i = 0; i < 40; ++i) targets.push_back(u(rng));
  targets.push_back(-1.0);
  targets.push_back(1.0);
  const RMatrix I = interp_matrix(rule, targets);
  RVector samples(16);
  for (int k = 0; k < 16; ++k) samples(k) = poly(rule.nodes[k]);
  const RVector vals = I * samples;
  for (size_t i = 0; i < targets.size(); ++i) CHECK(std::abs(vals(i) - poly(targets[i])) < 1e-12);
  // constants and the top Legendre polynomial through the discrete transform
  for (int j : {0, 15}) {
    double norm = 0.0;
    for (int k = 0; k < 16; ++k) norm += (2 * j + 1) / 2.0 * rule.weights[k] * legendre(j, rule.nodes[k]) * legendre(j, rule.nodes[k]);
    CHECK(norm == doctest::Approx(1.0).epsilon(1e-12));
  }
}

}
