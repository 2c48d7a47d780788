#include "elastic/assembly.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <functional>
#include <stdexcept>

#include "elastic/singular_quadrature.hpp"

namespace elastic {

Formulation formulation_from_name(const std::string& name) {
  std::string key = name;
  std::transform(key.begin(), key.end(), key.begin(), [](unsigned char c) { return std::toupper(c); });
  Formulation f;
  f.name = key;
  if (key == "DND_EXT") {
    f.kind = f.field_kind = KernelKind::Double;
    f.sigma = 0.5;
  } else if (key == "DND_INT") {
    f.kind = f.field_kind = KernelKind::Double;
    f.sigma = -0.5;
    f.exterior = false;
  } else if (key == "SNN_EXT") {
    f.kind = KernelKind::Adjoint;
    f.field_kind = KernelKind::Single;
    f.sigma = -0.5;
    f.data = BoundaryKind::Neumann;
  } else if (key == "SNN_INT") {
    f.kind = KernelKind::Adjoint;
    f.field_kind = KernelKind::Single;
    f.sigma = 0.5;
    f.data = BoundaryKind::Neumann;
    f.exterior = false;
  } else if (key == "CDL_EXT") {
    f.kind = f.field_kind = KernelKind::Combined;
    f.sigma = 0.5;
  } else {
    throw std::invalid_argument("unknown formulation: " + name);
  }
  return f;
}

double local_coordinate(const Mesh& mesh, const Node& node, const Panel& panel) {
  const double L = mesh.geometry().length();
  double d = node.base == panel.base
                 ? node.offset - panel.mid()
                 : mesh.absolute_param(node.base, node.offset) - mesh.absolute_param(panel.base, panel.mid());
  if (d > 0.5 * L) d -= L;
  if (d < -0.5 * L) d += L;
  return d / panel.half_width();
}

namespace {

// Panels T and Q are distinct and share an endpoint that is a corner.
bool meet_at_corner(const Mesh& mesh, const Panel& T, const Panel& Q) {
  if (&T == &Q || T.base != Q.base) return false;
  if (!((T.b == 0.0 && Q.a == 0.0) || (T.a == 0.0 && Q.b == 0.0))) return false;
  for (const Corner& c : mesh.geometry().corners())
    if (c.param == T.base) return true;
  return false;
}

// Product integration of the full kernel against the Lagrange basis of Q for
// a target on the neighboring piece. Across a corner the kernel is nearly
// singular at complex points off the source panel, so the log/Cauchy split
// does not apply; dyadic subintervals graded toward the corner resolve it.
void corner_block(const Mesh& mesh, KernelKind kind, const KernelEvaluator& ev, const GaussRule& rule,
                  const Panel& Q, const Node& x, CMatrix& A, int row) {
  const int p = mesh.order();
  const double h = Q.half_width();
  const bool at_start = Q.a == 0.0;
  // target distance from the corner in local units of Q
  const double reach = x.displacement.norm() / (h * make_node(mesh.geometry(), Q.base, Q.mid(), 1.0).speed);
  std::vector<std::pair<double, double>> pieces;  // distance-from-corner intervals in [0, 2]
  double lo = 1.0, hi = 2.0;
  while (true) {
    pieces.emplace_back(lo, hi);
    if (lo < 0.25 * reach || pieces.size() > 60) break;
    hi = lo;
    lo *= 0.5;
  }
  pieces.emplace_back(0.0, lo);
  std::vector<double> ts;
  std::vector<double> ws;
  for (const auto& [d0, d1] : pieces)
    for (int j = 0; j < p; ++j) {
      const double d = 0.5 * (d0 + d1) + 0.5 * (d1 - d0) * rule.nodes[j];
      ts.push_back(at_start ? d - 1.0 : 1.0 - d);
      ws.push_back(0.5 * (d1 - d0) * rule.weights[j]);
    }
  const RMatrix I = interp_matrix(rule, ts);
  Mat2c acc[64];
  for (int k = 0; k < p; ++k) acc[k].setZero();
  for (size_t j = 0; j < ts.size(); ++j) {
    const Node y = make_node(mesh.geometry(), Q.base, Q.mid() + h * ts[j], h * ws[j]);
    const Mat2c K = ev.kernel(kind, x, y) * (y.speed * y.weight);
    for (int k = 0; k < p; ++k) acc[k] += I(j, k) * K;
  }
  for (int k = 0; k < p; ++k) A.block<2, 2>(row, 2 * (Q.first_node + k)) = acc[k];
}

}  // namespace

CMatrix assemble_operator(const Mesh& mesh, KernelKind kind, const KernelEvaluator& ev,
                          const AssemblyOptions& opts) {
  const int n = mesh.node_count();
  const int p = mesh.order();
  const auto& nodes = mesh.nodes();
  const auto& panels = mesh.panels();
  const GaussRule rule = gauss_legendre(p);
  CMatrix A = CMatrix::Zero(2 * n, 2 * n);
  auto skipped = [&](int i) { return i >= opts.skip_begin && i < opts.skip_end; };
  for (int qi = 0; qi < mesh.panel_count(); ++qi) {
    const Panel& Q = panels[qi];
    const double h = Q.half_width();
    for (int ti = 0; ti < mesh.panel_count(); ++ti) {
      const Panel& T = panels[ti];
      if (skipped(ti) && skipped(qi)) continue;
      if (!mesh.adjacent(ti, qi)) {
        for (int i = T.first_node; i < T.first_node + p; ++i)
          for (int k = Q.first_node; k < Q.first_node + p; ++k)
            A.block<2, 2>(2 * i, 2 * k) = ev.kernel(kind, nodes[i], nodes[k]) * (nodes[k].speed * nodes[k].weight);
        continue;
      }
      if (opts.corner_quadrature && meet_at_corner(mesh, T, Q)) {
        for (int i = T.first_node; i < T.first_node + p; ++i) corner_block(mesh, kind, ev, rule, Q, nodes[i], A, 2 * i);
        continue;
      }
      for (int i = T.first_node; i < T.first_node + p; ++i) {
        const double t = ti == qi ? rule.nodes[i - T.first_node] : local_coordinate(mesh, nodes[i], Q);
        const ModifiedWeights mw = modified_weights(rule, t);
        for (int k = Q.first_node; k < Q.first_node + p; ++k) {
          const int kk = k - Q.first_node;
          const auto s = ev.split(kind, nodes[i], nodes[k], rule.nodes[kk] - t, h, i == k);
          A.block<2, 2>(2 * i, 2 * k) =
              (mw.log[kk] * s.log + mw.cauchy[kk] * s.cauchy + rule.weights[kk] * s.smooth) * (nodes[k].speed * h);
        }
      }
    }
  }
  return A;
}

Vec2c point_source_field(const KernelEvaluator& ev, const Vec2& x, const Vec2& y0, const Vec2& q) {
  return ev.kernel(KernelKind::Single, x - y0, Vec2::Zero(), Vec2::Zero()) * q.cast<Complex>();
}

CVector point_source_data(const Mesh& mesh, const Formulation& f, const KernelEvaluator& ev, const Vec2& y0,
                          const Vec2& q) {
  CVector g(mesh.unknowns());
  for (int i = 0; i < mesh.node_count(); ++i) {
    const Node& x = mesh.nodes()[i];
    const KernelKind k = f.data == BoundaryKind::Dirichlet ? KernelKind::Single : KernelKind::Adjoint;
    g.segment<2>(2 * i) = ev.kernel(k, x.position - y0, x.normal, Vec2::Zero()) * q.cast<Complex>();
  }
  return g;
}

Vec2c evaluate_potential(const Mesh& mesh, KernelKind kind, const KernelEvaluator& ev, const CVector& density,
                         const Vec2& z) {
  Vec2c u = Vec2c::Zero();
  for (int k = 0; k < mesh.node_count(); ++k) {
    const Node& y = mesh.nodes()[k];
    u += ev.kernel(kind, z - y.position, Vec2::Zero(), y.normal) * density.segment<2>(2 * k) * (y.speed * y.weight);
  }
  return u;
}

Vec2c evaluate_potential_near(const Mesh& mesh, KernelKind kind, const KernelEvaluator& ev,
                              const CVector& density, const Vec2& z) {
  const int p = mesh.order();
  const GaussRule rule = gauss_legendre(p);
  const BoundaryGeometry& geom = mesh.geometry();
  Vec2c u = Vec2c::Zero();
  for (const Panel& P : mesh.panels()) {
    const Vec2 a = geom.sample(P.base, P.a).position;
    const Vec2 b = geom.sample(P.base, P.b).position;
    const Vec2 c = geom.sample(P.base, P.mid()).position;
    const double len = (a - c).norm() + (c - b).norm();
    auto dist = [&](const Vec2& x0, const Vec2& x1, const Vec2& xm) {
      return std::min({(z - x0).norm(), (z - x1).norm(), (z - xm).norm()});
    };
    if (dist(a, b, c) > 2.0 * len) {
      for (int k = P.first_node; k < P.first_node + p; ++k) {
        const Node& y = mesh.nodes()[k];
        u += ev.kernel(kind, z - y.position, Vec2::Zero(), y.normal) * density.segment<2>(2 * k) *
             (y.speed * y.weight);
      }
      continue;
    }
    const CMatrix local = density.segment(2 * P.first_node, 2 * p);
    const double h = P.half_width();
    // Bisect [lo, hi] (panel-local) until z is well separated from the piece.
    std::function<void(double, double, int)> rec = [&](double lo, double hi, int depth) {
      const Vec2 x0 = geom.sample(P.base, P.mid() + h * lo).position;
      const Vec2 x1 = geom.sample(P.base, P.mid() + h * hi).position;
      const Vec2 xm = geom.sample(P.base, P.mid() + h * 0.5 * (lo + hi)).position;
      const double l = (x0 - xm).norm() + (xm - x1).norm();
      if (dist(x0, x1, xm) < 2.0 * l && depth < 48) {
        const double mid = 0.5 * (lo + hi);
        rec(lo, mid, depth + 1);
        rec(mid, hi, depth + 1);
        return;
      }
      std::vector<double> ts(p);
      for (int j = 0; j < p; ++j) ts[j] = 0.5 * (lo + hi) + 0.5 * (hi - lo) * rule.nodes[j];
      const RMatrix I = interp_matrix(rule, ts);
      for (int j = 0; j < p; ++j) {
        const Node y = make_node(geom, P.base, P.mid() + h * ts[j], 0.5 * (hi - lo) * h * rule.weights[j]);
        Vec2c phi = Vec2c::Zero();
        for (int k = 0; k < p; ++k) phi += I(j, k) * local.block<2, 1>(2 * k, 0);
        u += ev.kernel(kind, z - y.position, Vec2::Zero(), y.normal) * phi * (y.speed * y.weight);
      }
    };
    rec(-1.0, 1.0, 0);
  }
  return u;
}

}  // namespace elastic
