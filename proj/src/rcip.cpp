#include "elastic/rcip.hpp"

#include <cmath>
#include <stdexcept>

#include "elastic/singular_quadrature.hpp"

namespace elastic {

namespace {

// Duplicate a scalar node operator onto interleaved 2-vectors.
template <class M>
M kron2(const M& a) {
  M out = M::Zero(2 * a.rows(), 2 * a.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) {
      out(2 * i, 2 * j) = a(i, j);
      out(2 * i + 1, 2 * j + 1) = a(i, j);
    }
  return out;
}

CMatrix invert(const CMatrix& a) {
  Eigen::PartialPivLU<CMatrix> lu(a);
  const double rc = lu.rcond();
  if (!(rc > 1e-15)) throw NumericalError("singular corner block (rcond " + std::to_string(rc) + ")");
  return lu.inverse();
}

struct CornerWidths {
  double base, left, right;
  int left_component, right_component;
};

CornerWidths corner_widths(const Mesh& coarse, int corner) {
  const auto& list = coarse.corner_panels().at(corner);
  if (list.size() != 4) throw std::logic_error("corner neighborhood must hold four coarse panels");
  const Panel& l1 = coarse.panels()[list[1]];
  const Panel& r1 = coarse.panels()[list[2]];
  return {l1.base, -l1.a, r1.b, l1.component, r1.component};
}

Mesh local_mesh(const Mesh& coarse, int corner, const std::vector<double>& left, const std::vector<double>& right,
                int level) {
  const CornerWidths w = corner_widths(coarse, corner);
  std::vector<Panel> panels;
  auto add = [&](double a, double b, int comp) {
    Panel p;
    p.base = w.base;
    p.a = a;
    p.b = b;
    p.component = comp;
    p.corner = corner;
    p.level = level;
    panels.push_back(p);
  };
  for (size_t i = 0; i + 1 < left.size(); ++i)
    add(-std::ldexp(w.left * left[i], -level), -std::ldexp(w.left * left[i + 1], -level), w.left_component);
  for (size_t i = 0; i + 1 < right.size(); ++i)
    add(std::ldexp(w.right * right[i], -level), std::ldexp(w.right * right[i + 1], -level), w.right_component);
  Mesh m(coarse.geometry(), std::move(panels), coarse.order(), false);
  m.set_corner_panels({});
  return m;
}

}  // namespace

RMatrix corner_prolongation(int order) {
  const GaussRule rule = gauss_legendre(order);
  std::vector<double> lo(order), hi(order);
  for (int k = 0; k < order; ++k) {
    lo[k] = 0.5 * (rule.nodes[k] - 1.0);
    hi[k] = 0.5 * (rule.nodes[k] + 1.0);
  }
  const RMatrix a = interp_matrix(rule, lo), b = interp_matrix(rule, hi);
  RMatrix P = RMatrix::Zero(6 * order, 4 * order);
  P.block(0, 0, order, order).setIdentity();
  P.block(order, order, order, order) = a;
  P.block(2 * order, order, order, order) = b;
  P.block(3 * order, 2 * order, order, order) = a;
  P.block(4 * order, 2 * order, order, order) = b;
  P.block(5 * order, 3 * order, order, order).setIdentity();
  return P;
}

RMatrix corner_prolongation_weighted(int order) {
  const GaussRule rule = gauss_legendre(order);
  RMatrix P = corner_prolongation(order);
  // Row weights of the split panels are half those of the parent panel.
  for (int i = 0; i < 6 * order; ++i)
    for (int j = 0; j < 4 * order; ++j) {
      const bool split = i >= order && i < 5 * order;
      const double wb = rule.weights[i % order] * (split ? 0.5 : 1.0);
      P(i, j) *= wb / rule.weights[j % order];
    }
  return P;
}

Mesh corner_mesh_c(const Mesh& coarse, int corner, int level) {
  return local_mesh(coarse, corner, {2.0, 1.0, 0.0}, {0.0, 1.0, 2.0}, level);
}

Mesh corner_mesh_b(const Mesh& coarse, int corner, int level) {
  return local_mesh(coarse, corner, {2.0, 1.0, 0.5, 0.0}, {0.0, 0.5, 1.0, 2.0}, level);
}

CMatrix RcipSolver::corner_R(const Mesh& coarse, int corner, KernelKind kind, const KernelEvaluator& ev,
                             CornerData& data) {
  const int p = coarse.order();
  const int nb = 12 * p;        // unknowns on a b-mesh
  const int inner0 = 2 * p;     // first inner unknown
  const int ninner = 8 * p;
  const CMatrix P = kron2(corner_prolongation(p)).cast<Complex>();
  const CMatrix PWt = kron2(corner_prolongation_weighted(p)).transpose().cast<Complex>();

  const Mesh mc = corner_mesh_c(coarse, corner, n_sub_);
  CMatrix Kc = assemble_operator(mc, kind, ev) / sigma_;
  Kc.diagonal().array() += 1.0;
  CMatrix R = invert(Kc);
  if (keep_) {
    data.finest = R;
    data.mesh_c_finest = mc;
    data.level_inv.assign(n_sub_, CMatrix());
    data.coupling.assign(n_sub_, CMatrix());
    data.meshes_b.assign(n_sub_, Mesh());
  }
  for (int m = n_sub_ - 1; m >= 0; --m) {
    const Mesh mb = corner_mesh_b(coarse, corner, m);
    AssemblyOptions inner_free;
    inner_free.skip_begin = 1;
    inner_free.skip_end = 5;
    CMatrix Kb = assemble_operator(mb, kind, ev, inner_free) / sigma_;
    CMatrix S = Kb;
    S.diagonal().array() += 1.0;
    S.block(inner0, inner0, ninner, ninner) = invert(R);
    const CMatrix M = invert(S);
    R = PWt * M * P;
    if (keep_) {
      data.level_inv[m] = M;
      data.coupling[m] = Kb.block(inner0, 0, ninner, nb).eval();
      data.meshes_b[m] = mb;
    }
  }
  return R;
}

RcipSolver::RcipSolver(const Mesh& coarse, KernelKind kind, double sigma, const KernelEvaluator& ev, int n_sub,
                       bool keep_levels)
    : coarse_(coarse), sigma_(sigma), n_sub_(n_sub), keep_(keep_levels) {
  if (n_sub < 0) throw std::invalid_argument("n_sub must be non-negative");
  if (sigma == 0.0) throw std::invalid_argument("sigma must be nonzero");
  const int p = coarse.order();
  CMatrix K = assemble_operator(coarse, kind, ev) / sigma;
  const auto& lists = coarse.corner_panels();
  corners_.resize(lists.size());
  for (size_t c = 0; c < lists.size(); ++c) {
    CornerData& d = corners_[c];
    for (int pi : lists[c])
      for (int k = 0; k < 2 * p; ++k) d.unknowns.push_back(2 * coarse.panels()[pi].first_node + k);
    // The neighborhood is contiguous, so its block is a square sub-block.
    const int first = d.unknowns.front(), size = static_cast<int>(d.unknowns.size());
    if (d.unknowns.back() != first + size - 1) throw std::logic_error("corner neighborhood not contiguous");
    K.block(first, first, size, size).setZero();
    d.R = corner_R(coarse, static_cast<int>(c), kind, ev, d);
  }
  // I + K^o R
  system_ = K;
  for (const CornerData& d : corners_) {
    const int first = d.unknowns.front(), size = static_cast<int>(d.unknowns.size());
    system_.middleCols(first, size) = (K.middleCols(first, size) * d.R).eval();
  }
  system_.diagonal().array() += 1.0;
}

CVector RcipSolver::solve(const CVector& rhs) {
  Eigen::PartialPivLU<CMatrix> lu(system_);
  if (!(lu.rcond() > 1e-15)) throw NumericalError("compressed system is singular");
  transformed_ = lu.solve(rhs / sigma_);
  CVector hat = transformed_;
  for (const CornerData& d : corners_) {
    const int first = d.unknowns.front(), size = static_cast<int>(d.unknowns.size());
    hat.segment(first, size) = d.R * transformed_.segment(first, size);
  }
  return hat;
}

CornerDensity RcipSolver::reconstruct(int corner) const {
  if (!keep_) throw std::logic_error("reconstruct() needs keep_levels");
  if (transformed_.size() == 0) throw std::logic_error("reconstruct() before solve()");
  const CornerData& d = corners_.at(corner);
  const int p = coarse_.order();
  const int blk = 2 * p;  // unknowns per panel
  const CMatrix P = kron2(corner_prolongation(p)).cast<Complex>();

  CVector t = transformed_.segment(d.unknowns.front(), d.unknowns.size());
  CornerDensity out;
  std::vector<std::pair<Panel, CVector>> lpan, rpan;
  std::vector<std::vector<Node>> lnodes, rnodes;
  for (int m = 0; m < n_sub_; ++m) {
    const CVector pt = P * t;
    const CVector z = d.level_inv[m] * pt;
    const Mesh& mb = d.meshes_b[m];
    const int last = 5 * blk;
    lpan.push_back({mb.panels()[0], z.segment(0, blk)});
    lnodes.emplace_back(mb.nodes().begin(), mb.nodes().begin() + p);
    rpan.push_back({mb.panels()[5], z.segment(last, blk)});
    rnodes.emplace_back(mb.nodes().begin() + 5 * p, mb.nodes().end());
    CVector outer(2 * blk);
    outer << z.segment(0, blk), z.segment(last, blk);
    const CMatrix& C = d.coupling[m];
    t = pt.segment(blk, 4 * blk) - C.leftCols(blk) * outer.head(blk) - C.rightCols(blk) * outer.tail(blk);
  }
  const CVector inner = d.finest * t;
  const Mesh& mc = n_sub_ > 0 ? d.mesh_c_finest : coarse_;

  auto append = [&](const Panel& pn, const std::vector<Node>& nds, const CVector& v) {
    out.panels.push_back(pn);
    out.nodes.insert(out.nodes.end(), nds.begin(), nds.end());
    const auto old = out.density.size();
    out.density.conservativeResize(old + v.size());
    out.density.tail(v.size()) = v;
  };
  for (size_t i = 0; i < lpan.size(); ++i) append(lpan[i].first, lnodes[i], lpan[i].second);
  if (n_sub_ > 0) {
    for (int k = 0; k < 4; ++k)
      append(mc.panels()[k], std::vector<Node>(mc.nodes().begin() + k * p, mc.nodes().begin() + (k + 1) * p),
             inner.segment(k * blk, blk));
  } else {
    const auto& list = coarse_.corner_panels()[corner];
    for (int k = 0; k < 4; ++k) {
      const Panel& pn = coarse_.panels()[list[k]];
      append(pn, std::vector<Node>(coarse_.nodes().begin() + pn.first_node, coarse_.nodes().begin() + pn.first_node + p),
             inner.segment(k * blk, blk));
    }
  }
  for (size_t i = rpan.size(); i-- > 0;) append(rpan[i].first, rnodes[i], rpan[i].second);
  return out;
}

CVector solve_direct(const Mesh& mesh, KernelKind kind, double sigma, const KernelEvaluator& ev, const CVector& rhs) {
  CMatrix A = assemble_operator(mesh, kind, ev);
  A.diagonal().array() += sigma;
  Eigen::PartialPivLU<CMatrix> lu(A);
  if (!(lu.rcond() > 1e-15)) throw NumericalError("system matrix is singular");
  return lu.solve(rhs);
}

}  // namespace elastic
