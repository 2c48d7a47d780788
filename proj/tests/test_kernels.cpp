#include <doctest.h>

#include <cmath>
#include <random>

#include "elastic/kernels.hpp"

using namespace elastic;

namespace {

const KernelKind kAllKinds[] = {KernelKind::Single, KernelKind::Double, KernelKind::Adjoint, KernelKind::Combined};

// Kelvin (static) solution with the sign convention of the dynamic tensor.
Mat2 lame(const ElasticParams& p, const Vec2& r) {
  const double c = (p.lambda + 3 * p.mu) / (4 * kPi * p.mu * (p.lambda + 2 * p.mu));
  const double rn = r.norm();
  return c * (-std::log(rn) * Mat2::Identity() + (p.lambda + p.mu) / (p.lambda + 3 * p.mu) * r * r.transpose() / (rn * rn));
}

// Traction-based kernels from central differences of the Green's tensor.
void fd_layers(const KernelEvaluator& ev, const Vec2& x, const Vec2& y, const Vec2& nx, const Vec2& ny, Mat2c& D,
               Mat2c& Sigma) {
  const double h = 1e-5 * (x - y).norm();
  for (int j = 0; j < 2; ++j) {
    Mat2c gy, gx;
    for (int l = 0; l < 2; ++l) {
      Vec2 e = Vec2::Zero();
      e(l) = h;
      gy.col(l) = (ev.kernel(KernelKind::Single, x - y - e, nx, ny).col(j) -
                   ev.kernel(KernelKind::Single, x - y + e, nx, ny).col(j)) / (2 * h);
      gx.col(l) = (ev.kernel(KernelKind::Single, x + e - y, nx, ny).col(j) -
                   ev.kernel(KernelKind::Single, x - e - y, nx, ny).col(j)) / (2 * h);
    }
    D.row(j) = ev.traction(gy, ny).transpose();
    Sigma.col(j) = ev.traction(gx, nx);
  }
}

}  // namespace

TEST_SUITE("kernels") {

TEST_CASE("material parameters") {
  ElasticParams p;
  CHECK(p.ks() == doctest::Approx(3.0 / std::sqrt(2.0)));
  CHECK(p.kp() == doctest::Approx(3.0 / std::sqrt(5.0)));
  CHECK(p.kp() < p.ks());
  p.mu = 0.0;
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
  p.mu = 2.0;
  p.lambda = -3.0;
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
}

TEST_CASE("series and Hankel branches agree") {
  const ElasticParams p;
  const KernelEvaluator ev(p);
  double worst = 0.0;
  for (double z = 1e-2; z < 10.0; z *= 1.05) {
    const Vec2 r = z / p.ks() * Vec2(0.6, 0.8);
    const Mat2c a = ev.kernel(KernelKind::Single, r, Vec2::Zero(), Vec2::Zero());
    const Mat2c b = green_direct(p, r);
    worst = std::max(worst, (a - b).norm() / b.norm());
  }
  CHECK(worst < 1e-12);
}

TEST_CASE("reciprocity and the Lame limit") {
  const ElasticParams p;
  const KernelEvaluator ev(p);
  const Vec2 r(0.31, -0.17);
  const Mat2c g1 = ev.kernel(KernelKind::Single, r, Vec2::Zero(), Vec2::Zero());
  const Mat2c g2 = ev.kernel(KernelKind::Single, -r, Vec2::Zero(), Vec2::Zero());
  CHECK((g1 - g2.transpose()).cwiseAbs().maxCoeff() < 1e-14);
  CHECK(std::abs(g1(0, 1) - g1(1, 0)) < 1e-14);

  // r along the x axis: rr^T / r^2 = diag(1, 0)
  const Mat2 e = lame(p, Vec2(1.0, 0.0));
  CHECK(e(0, 0) == doctest::Approx(3.0 / (40.0 * kPi)).epsilon(1e-14));
  CHECK(e(1, 1) == doctest::Approx(0.0));
  CHECK(e(0, 1) == 0.0);

  // G - E bounded as r -> 0, and flat in r for omega -> 0
  ElasticParams q = p;
  q.omega = 1e-6;
  const KernelEvaluator ev0(q);
  double lo = 1e300, hi = -1e300;
  for (double rn = 1e-3; rn <= 1.0; rn *= 1.2) {
    const Vec2 x = rn * Vec2(0.8, -0.6);
    const Mat2c d = ev0.kernel(KernelKind::Single, x, Vec2::Zero(), Vec2::Zero()) - lame(q, x).cast<Complex>();
    lo = std::min(lo, d(0, 0).real());
    hi = std::max(hi, d(0, 0).real());
  }
  CHECK(hi - lo < 1e-3);
  const Vec2 dir(0.6, 0.8);
  const Mat2c a = ev.kernel(KernelKind::Single, 1e-6 * dir, Vec2::Zero(), Vec2::Zero()) - lame(p, 1e-6 * dir).cast<Complex>();
  const Mat2c b = ev.kernel(KernelKind::Single, 1e-8 * dir, Vec2::Zero(), Vec2::Zero()) - lame(p, 1e-8 * dir).cast<Complex>();
  CHECK((a - b).norm() < 1e-9);
}

TEST_CASE("layer kernels are tractions of the Green's tensor") {
  const ElasticParams p;
  const KernelEvaluator ev(p);
  const Vec2 nx(0.28, 0.96), ny(0.8, 0.6);
  for (double scale : {0.05, 0.4, 1.3, 6.0}) {
    const Vec2 x(0.3, 0.2), y = x + scale * Vec2(0.6, -0.8);
    Mat2c D, Sigma;
    fd_layers(ev, x, y, nx, ny, D, Sigma);
    const Mat2c Dk = ev.kernel(KernelKind::Double, x - y, nx, ny);
    const Mat2c Sk = ev.kernel(KernelKind::Adjoint, x - y, nx, ny);
    CHECK((D - Dk).norm() / Dk.norm() < 1e-7);
    CHECK((Sigma - Sk).norm() / Sk.norm() < 1e-7);
    const Mat2c Ck = ev.kernel(KernelKind::Combined, x - y, nx, ny);
    CHECK((Ck - (Dk - kI * ev.kernel(KernelKind::Single, x - y, nx, ny))).norm() < 1e-14 * Ck.norm());
  }
}

TEST_CASE("static double layer") {
  const ElasticParams p;
  // normal orthogonal to r: only the antisymmetric part survives
  const double rn = 0.37;
  const Mat2 d = static_double_layer(p, Vec2(rn, 0.0), Vec2(0.0, -1.0));
  CHECK(std::abs(d(0, 0)) < 1e-15);
  CHECK(std::abs(d(1, 1)) < 1e-15);
  CHECK(std::abs(d(0, 1) + d(1, 0)) < 1e-15);
  CHECK(std::abs(d(0, 1)) == doctest::Approx(p.mu / ((p.lambda + 2 * p.mu) * 2 * kPi * rn)));
  // the dynamic kernel approaches it as r -> 0
  const KernelEvaluator ev(p);
  const Vec2 r(1e-6, 2e-6), n(0.6, 0.8);
  const Mat2 s = static_double_layer(p, r, n);
  CHECK((ev.kernel(KernelKind::Double, r, n, n).real() - s).norm() < 1e-8 * s.norm());
}

TEST_CASE("traction of simple fields") {
  const ElasticParams p;
  const KernelEvaluator ev(p);
  const Vec2 n(0.6, 0.8);
  CHECK(ev.traction(Mat2c::Zero(), n).norm() == 0.0);
  Mat2c grad = Mat2c::Zero();
  grad(0, 0) = 1.0;
  grad(1, 1) = -1.0;
  const Vec2c t = ev.traction(grad, n);
  CHECK(std::abs(t(0) - 2.0 * p.mu * n(0)) < 1e-15);
  CHECK(std::abs(t(1) + 2.0 * p.mu * n(1)) < 1e-15);
}

TEST_CASE("split reconstruction on panels") {
  const ElasticParams p;
  const KernelEvaluator ev(p);
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  std::uniform_real_distribution<double> logd(std::log(1e-6), std::log(2.0));
  int count = 0;
  double worst = 0.0;
  for (ShapeKind kind : {ShapeKind::Circle, ShapeKind::Ellipse, ShapeKind::Droplet, ShapeKind::Sector}) {
    const auto g = BoundaryGeometry::make(kind, kind == ShapeKind::Ellipse ? 2.0 : 1.0);
    const Mesh m = build_coarse_mesh(g, {8});
    std::uniform_int_distribution<int> pick(0, m.panel_count() - 1);
    for (int s = 0; s < 125; ++s) {
      const Panel& P = m.panels()[pick(rng)];
      const double h = P.half_width();
      const double t = unit(rng);
      double u = t + (unit(rng) < 0 ? -1 : 1) * std::exp(logd(rng));
      if (std::abs(u) > 1.0) u = t - (u - t);
      if (std::abs(u) > 1.0 || u == t) continue;
      const Node x = make_node(g, P.base, P.mid() + h * t, 1.0);
      const Node y = make_node(g, P.base, P.mid() + h * u, 1.0);
      for (KernelKind k : kAllKinds) {
        const auto sp = ev.split(k, x, y, u - t, h, false);
        const Mat2c rebuilt = std::log(std::abs(u - t)) * sp.log + sp.cauchy / (u - t) + sp.smooth;
        const Mat2c direct = ev.kernel(k, x, y);
        worst = std::max(worst, (rebuilt - direct).norm() / direct.norm());
        if (k == KernelKind::Single) CHECK(sp.cauchy.norm() == 0.0);
      }
      ++count;
    }
  }
  CHECK(count > 400);
  CHECK(worst < 1e-11);
}

TEST_CASE("split parts are continuous onto the diagonal") {
  const ElasticParams p;
  const KernelEvaluator ev(p);
  const auto g = BoundaryGeometry::make(ShapeKind::Ellipse, 2.0);
  const Mesh m = build_coarse_mesh(g, {12});
  const Panel& P = m.panels()[3];
  const double h = P.half_width();
  const double t = 0.21;
  const Node x = make_node(g, P.base, P.mid() + h * t, 1.0);
  for (KernelKind k : kAllKinds) {
    const auto diag = ev.split(k, x, x, 0.0, h, true);
    CHECK(diag.log.allFinite());
    CHECK(diag.cauchy.allFinite());
    CHECK(diag.smooth.allFinite());
    for (double d : {1e-4, 1e-6}) {
      const Node y = make_node(g, P.base, P.mid() + h * (t + d), 1.0);
      const auto off = ev.split(k, x, y, d, h, false);
      const double scale = diag.smooth.norm() + diag.log.norm() + diag.cauchy.norm();
      CHECK((off.log - diag.log).norm() < 1e-3 * scale * d / 1e-4);
      CHECK((off.cauchy - diag.cauchy).norm() < 1e-3 * scale * d / 1e-4);
      CHECK((off.smooth - diag.smooth).norm() < 1e-2 * scale * std::sqrt(d / 1e-4));
    }
  }
}

}
