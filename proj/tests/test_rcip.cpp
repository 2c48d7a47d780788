#include <doctest.h>

#include <cmath>
#include <random>

#include "elastic/rcip.hpp"
#include "elastic/singular_quadrature.hpp"

using namespace elastic;

namespace {

struct Problem {
  BoundaryGeometry geom;
  Mesh coarse;
  Formulation f;
  KernelEvaluator ev{ElasticParams{}};
};

Problem make(ShapeKind shape, int N, const std::string& form) {
  Problem p;
  p.geom = BoundaryGeometry::make(shape, 1.0);
  p.coarse = build_coarse_mesh(p.geom, {N});
  p.f = formulation_from_name(form);
  return p;
}

Vec2 source_for(const Formulation& f) { return f.exterior ? Vec2(0.5, 0.0) : Vec2(3.0, 3.0); }
Vec2 target_for(const Formulation& f) { return f.exterior ? Vec2(12.1, 5.2) : Vec2(0.5, 0.1); }

// Unknown indices of the corner neighborhoods of a mesh.
std::vector<bool> in_corner(const Mesh& m) {
  std::vector<bool> out(m.unknowns(), false);
  for (const auto& list : m.corner_panels())
    for (int pi : list)
      for (int k = 0; k < 2 * m.order(); ++k) out[2 * m.panels()[pi].first_node + k] = true;
  return out;
}

// Interpolation from the coarse corner neighborhood to the refined one, with
// parameter weights: returns P and P_W^T = W_coa^-1 P^T W_fin.
void composite_prolongation(const Mesh& coarse, const Mesh& fine, int corner, CMatrix& P, CMatrix& PWt) {
  const auto& cl = coarse.corner_panels()[corner];
  const auto& fl = fine.corner_panels()[corner];
  const int p = coarse.order();
  const GaussRule rule = gauss_legendre(p);
  const int nc = 4 * p, nf = static_cast<int>(fl.size()) * p;
  RMatrix S = RMatrix::Zero(nf, nc);
  RVector wc(nc), wf(nf);
  for (int a = 0; a < 4; ++a)
    for (int k = 0; k < p; ++k) wc(a * p + k) = coarse.nodes()[coarse.panels()[cl[a]].first_node + k].weight;
  for (size_t b = 0; b < fl.size(); ++b) {
    const Panel& F = fine.panels()[fl[b]];
    int a = 0;
    for (; a < 4; ++a) {
      const Panel& C = coarse.panels()[cl[a]];
      if (F.a >= C.a && F.b <= C.b) break;
    }
    REQUIRE(a < 4);
    const Panel& C = coarse.panels()[cl[a]];
    std::vector<double> ts;
    for (int k = 0; k < p; ++k) {
      const Node& x = fine.nodes()[F.first_node + k];
      ts.push_back((x.offset - C.mid()) / C.half_width());
      wf(b * p + k) = x.weight;
    }
    S.block(b * p, a * p, p, p) = interp_matrix(rule, ts);
  }
  RMatrix SW = wc.cwiseInverse().asDiagonal() * S.transpose() * wf.asDiagonal();
  P = CMatrix::Zero(2 * nf, 2 * nc);
  PWt = CMatrix::Zero(2 * nc, 2 * nf);
  for (int i = 0; i < nf; ++i)
    for (int j = 0; j < nc; ++j)
      for (int c = 0; c < 2; ++c) {
        P(2 * i + c, 2 * j + c) = S(i, j);
        PWt(2 * j + c, 2 * i + c) = SW(j, i);
      }
}

}  // namespace

TEST_SUITE("rcip") {

TEST_CASE("prolongation operators") {
  const int p = 16;
  const RMatrix P = corner_prolongation(p);
  const RMatrix PW = corner_prolongation_weighted(p);
  CHECK(P.rows() == 6 * p);
  CHECK(P.cols() == 4 * p);
  CHECK((PW.transpose() * P - RMatrix::Identity(4 * p, 4 * p)).cwiseAbs().maxCoeff() < 1e-12);
  // exact on polynomials of degree < p in the corner coordinate
  const GaussRule rule = gauss_legendre(p);
  const auto nodes = [&](const std::vector<double>& edges) {
    std::vector<double> x;
    for (size_t i = 0; i + 1 < edges.size(); ++i)
      for (int k = 0; k < p; ++k) x.push_back(0.5 * (edges[i] + edges[i + 1]) + 0.5 * (edges[i + 1] - edges[i]) * rule.nodes[k]);
    return x;
  };
  const auto xc = nodes({-2, -1, 0, 1, 2});
  const auto xf = nodes({-2, -1, -0.5, 0, 0.5, 1, 2});
  const auto poly = [](double x) { return 0.3 - x + 0.25 * std::pow(x, 7) - 0.001 * std::pow(x, 15); };
  RVector vc(4 * p);
  for (int i = 0; i < 4 * p; ++i) vc(i) = poly(xc[i]);
  const RVector vf = P * vc;
  for (int i = 0; i < 6 * p; ++i) CHECK(std::abs(vf(i) - poly(xf[i])) < 1e-12);
}

TEST_CASE("without refinement R is the inverse of the corner block") {
  Problem pr = make(ShapeKind::Droplet, 8, "DND_ext");
  RcipSolver s(pr.coarse, pr.f.kind, pr.f.sigma, pr.ev, 0);
  CMatrix K = assemble_operator(pr.coarse, pr.f.kind, pr.ev) / pr.f.sigma;
  const int first = 2 * pr.coarse.panels()[pr.coarse.corner_panels()[0].front()].first_node;
  const int size = 8 * 16;
  CMatrix block = K.block(first, first, size, size);
  block.diagonal().array() += 1.0;
  const CMatrix R = block.inverse();
  CHECK((s.compressed(0) - R).cwiseAbs().maxCoeff() < 1e-12 * R.cwiseAbs().maxCoeff());
}

TEST_CASE("recursion matches the explicitly refined corner block") {
  Problem pr = make(ShapeKind::Droplet, 8, "SNN_ext");
  const int n_sub = 3;
  RcipSolver s(pr.coarse, pr.f.kind, pr.f.sigma, pr.ev, n_sub);
  const Mesh fine = refine_dyadic(pr.coarse, n_sub);
  const CMatrix K = assemble_operator(fine, pr.f.kind, pr.ev) / pr.f.sigma;
  const auto& fl = fine.corner_panels()[0];
  const int first = 2 * fine.panels()[fl.front()].first_node;
  const int size = static_cast<int>(fl.size()) * 2 * 16;
  CMatrix block = K.block(first, first, size, size);
  block.diagonal().array() += 1.0;
  CMatrix P, PWt;
  composite_prolongation(pr.coarse, fine, 0, P, PWt);
  const CMatrix R = PWt * block.inverse() * P;
  CHECK((s.compressed(0) - R).cwiseAbs().maxCoeff() < 1e-10 * R.cwiseAbs().maxCoeff());
}

TEST_CASE("compressed solve agrees with the fine mesh solve") {
  for (const auto& [shape, form] : {std::pair{ShapeKind::Droplet, "DND_ext"}, std::pair{ShapeKind::Droplet, "SNN_int"},
                                    std::pair{ShapeKind::Sector, "CDL_ext"}}) {
    Problem pr = make(shape, 8, form);
    for (int n_sub : {1, 3, 6}) {
      CAPTURE(form);
      CAPTURE(n_sub);
      const Vec2 y0 = source_for(pr.f), z = target_for(pr.f);
      RcipSolver s(pr.coarse, pr.f.kind, pr.f.sigma, pr.ev, n_sub, true);
      const CVector hat = s.solve(point_source_data(pr.coarse, pr.f, pr.ev, y0, Vec2(1.0, 0.0)));
      const Mesh fine = refine_dyadic(pr.coarse, n_sub);
      const CVector phi =
          solve_direct(fine, pr.f.kind, pr.f.sigma, pr.ev, point_source_data(fine, pr.f, pr.ev, y0, Vec2(1.0, 0.0)));

      const Vec2c uc = evaluate_potential(pr.coarse, pr.f.field_kind, pr.ev, hat, z);
      const Vec2c uf = evaluate_potential(fine, pr.f.field_kind, pr.ev, phi, z);
      CHECK((uc - uf).norm() < 1e-9 * uf.norm());

      // coarse nodes away from the corners coincide with fine nodes
      const auto cmask = in_corner(pr.coarse);
      const auto fmask = in_corner(fine);
      std::vector<int> cfree, ffree;
      for (int i = 0; i < pr.coarse.unknowns(); ++i)
        if (!cmask[i]) cfree.push_back(i);
      for (int i = 0; i < fine.unknowns(); ++i)
        if (!fmask[i]) ffree.push_back(i);
      REQUIRE(cfree.size() == ffree.size());
      double diff = 0.0, scale = 0.0;
      for (size_t i = 0; i < cfree.size(); ++i) {
        diff = std::max(diff, std::abs(hat(cfree[i]) - phi(ffree[i])));
        scale = std::max(scale, std::abs(phi(ffree[i])));
      }
      CHECK(diff < 1e-9 * scale);

      // reconstructed corner densities
      for (int c = 0; c < static_cast<int>(fine.corner_panels().size()); ++c) {
        const CornerDensity cd = s.reconstruct(c);
        const auto& fl = fine.corner_panels()[c];
        REQUIRE(cd.panels.size() == fl.size());
        const CVector ref = phi.segment(2 * fine.panels()[fl.front()].first_node, cd.density.size());
        CHECK((cd.density - ref).cwiseAbs().maxCoeff() < 1e-9 * ref.cwiseAbs().maxCoeff());
      }
    }
  }
}

TEST_CASE("R reaches a fixed point and the compressed system stays well conditioned") {
  Problem pr = make(ShapeKind::Droplet, 8, "DND_ext");
  const RcipSolver a(pr.coarse, pr.f.kind, pr.f.sigma, pr.ev, 59);
  const RcipSolver b(pr.coarse, pr.f.kind, pr.f.sigma, pr.ev, 60);
  CHECK((a.compressed(0) - b.compressed(0)).norm() < 1e-10 * b.compressed(0).norm());
  const auto cond = [&](int n_sub) {
    const RcipSolver s(pr.coarse, pr.f.kind, pr.f.sigma, pr.ev, n_sub);
    Eigen::JacobiSVD<CMatrix> svd(s.system());
    const auto& sv = svd.singularValues();
    return sv(0) / sv(sv.size() - 1);
  };
  const double c10 = cond(10), c80 = cond(80);
  CHECK(c80 < 2.0 * c10);
  CHECK(c10 < 2.0 * c80);
}

TEST_CASE("argument checks") {
  Problem pr = make(ShapeKind::Droplet, 8, "DND_ext");
  CHECK_THROWS_AS(RcipSolver(pr.coarse, pr.f.kind, pr.f.sigma, pr.ev, -1), std::invalid_argument);
  RcipSolver s(pr.coarse, pr.f.kind, pr.f.sigma, pr.ev, 2);
  CHECK_THROWS(s.reconstruct(0));
}

}
