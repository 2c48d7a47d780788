#include "elastic/driver.hpp"

#include <chrono>
#include <cmath>
#include <stdexcept>

#include <boost/math/tools/roots.hpp>

namespace elastic {

IncidentKind parse_incident(const std::string& name) {
  if (name == "compressional_plane") return IncidentKind::CompressionalPlane;
  if (name == "shear_plane") return IncidentKind::ShearPlane;
  if (name == "point_source") return IncidentKind::PointSource;
  throw std::invalid_argument("unknown incident field: " + name);
}

std::string to_string(IncidentKind kind) {
  switch (kind) {
    case IncidentKind::CompressionalPlane: return "compressional_plane";
    case IncidentKind::ShearPlane: return "shear_plane";
    case IncidentKind::PointSource: return "point_source";
  }
  return "?";
}

IncidentField IncidentField::compressional(const ElasticParams& p, double angle) {
  p.validate();
  IncidentField f;
  f.kind_ = IncidentKind::CompressionalPlane;
  f.params_ = p;
  f.dir_ = Vec2(std::cos(angle), std::sin(angle));
  f.pol_ = f.dir_;
  f.k_ = p.kp();
  return f;
}

IncidentField IncidentField::shear(const ElasticParams& p, double angle) {
  p.validate();
  IncidentField f;
  f.kind_ = IncidentKind::ShearPlane;
  f.params_ = p;
  f.dir_ = Vec2(std::cos(angle), std::sin(angle));
  f.pol_ = Vec2(-f.dir_.y(), f.dir_.x());
  f.k_ = p.ks();
  return f;
}

IncidentField IncidentField::point_source(const ElasticParams& p, const Vec2& y0, const Vec2& q) {
  IncidentField f;
  f.kind_ = IncidentKind::PointSource;
  f.params_ = p;
  f.ev_ = std::make_shared<KernelEvaluator>(p);
  f.y0_ = y0;
  f.q_ = q;
  return f;
}

Vec2c IncidentField::displacement(const Vec2& x) const {
  if (kind_ == IncidentKind::PointSource) return point_source_field(*ev_, x, y0_, q_);
  return pol_.cast<Complex>() * std::exp(kI * (k_ * dir_.dot(x)));
}

Mat2c IncidentField::gradient(const Vec2& x) const {
  if (kind_ != IncidentKind::PointSource)
    return (kI * k_ * std::exp(kI * (k_ * dir_.dot(x)))) * (pol_ * dir_.transpose()).cast<Complex>();
  const Vec2 r = x - y0_;
  const double rr = r.norm();
  const Vec2 rh = r / rr;
  const auto v = ev_->radial_values(rr);
  // c a' and c b' recovered from the traction radial functions.
  const Complex da = (v[kP1] - v[kP3]) / rr;
  const Complex db = (v[kP2] + 2.0 * v[kP3]) / rr;
  const Complex b = v[kB];
  const double rq = rh.dot(q_);
  Mat2c g;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      const double dij = i == j ? 1.0 : 0.0;
      g(i, j) = da * rh(j) * q_(i) + db * rq * rh(i) * rh(j) +
                b / rr * (dij * rq + rh(i) * q_(j) - 2.0 * rh(i) * rh(j) * rq);
    }
  return g;
}

Vec2c IncidentField::traction(const Vec2& x, const Vec2& normal) const {
  if (kind_ == IncidentKind::PointSource)
    return ev_->kernel(KernelKind::Adjoint, x - y0_, normal, Vec2::Zero()) * q_.cast<Complex>();
  const double lam = params_.lambda, mu = params_.mu;
  const Mat2c g = gradient(x);
  const Vec2 tau(-normal.y(), normal.x());
  const Complex curl = g(1, 0) - g(0, 1);
  return 2.0 * mu * g * normal.cast<Complex>() + lam * g.trace() * normal.cast<Complex>() -
         mu * curl * tau.cast<Complex>();
}

CVector boundary_data(const Mesh& mesh, const Formulation& f, const IncidentField& field, double sign) {
  CVector g(mesh.unknowns());
  for (int i = 0; i < mesh.node_count(); ++i) {
    const Node& x = mesh.nodes()[i];
    g.segment<2>(2 * i) =
        sign * (f.data == BoundaryKind::Dirichlet ? field.displacement(x.position) : field.traction(x.position, x.normal));
  }
  return g;
}

Vec2 default_source(bool exterior) { return exterior ? Vec2(0.5, 0.0) : Vec2(3.0, 3.0); }
Vec2 default_test_point(bool exterior) { return exterior ? Vec2(12.1, 5.2) : Vec2(0.5, 0.1); }

namespace {

// Winding number of the curve around z, from a dense polygon.
bool inside_curve(const BoundaryGeometry& geom, const Vec2& z) {
  double turn = 0.0;
  const auto& bp = geom.breakpoints();
  const int per = 4000;
  Vec2 prev = geom.point(0.0) - z;
  for (int c = 0; c < geom.component_count(); ++c)
    for (int i = 1; i <= per; ++i) {
      const double off = (bp[c + 1] - bp[c]) * i / per;
      const Vec2 cur = geom.sample(bp[c], off).position - z;
      turn += std::atan2(prev.x() * cur.y() - prev.y() * cur.x(), prev.dot(cur));
      prev = cur;
    }
  return std::abs(turn) > kPi;
}

struct Setup {
  BoundaryGeometry geom;
  Mesh coarse;
  Formulation f;
  Vec2 source, test;
};

Setup make_setup(const ProblemConfig& cfg) {
  cfg.params.validate();
  if (cfg.panels < 1) throw std::invalid_argument("panel count must be positive");
  if (cfg.n_sub < 0) throw std::invalid_argument("n_sub must be non-negative");
  Setup s{BoundaryGeometry::make(cfg.shape, cfg.shape_param), Mesh(), formulation_from_name(cfg.formulation), {}, {}};
  s.coarse = build_coarse_mesh(s.geom, {cfg.panels}, cfg.order);
  s.source = cfg.source.value_or(default_source(s.f.exterior));
  s.test = cfg.test_point.value_or(default_test_point(s.f.exterior));
  if (inside_curve(s.geom, s.source) != s.f.exterior)
    throw std::invalid_argument("point source must lie on the side opposite to the solution domain");
  if (inside_curve(s.geom, s.test) == s.f.exterior)
    throw std::invalid_argument("test point must lie in the solution domain");
  return s;
}

// Solves for each right-hand side and returns potentials at the points.
std::vector<std::vector<Vec2c>> solve_and_evaluate(const ProblemConfig& cfg, const Setup& s,
                                                   const KernelEvaluator& ev,
                                                   const std::vector<const IncidentField*>& fields, double sign,
                                                   const std::vector<Vec2>& points) {
  std::vector<std::vector<Vec2c>> out;
  const bool corners = !s.geom.corners().empty();
  if (corners && cfg.use_rcip) {
    RcipSolver solver(s.coarse, s.f.kind, s.f.sigma, ev, cfg.n_sub);
    for (const IncidentField* fld : fields) {
      const CVector hat = solver.solve(boundary_data(s.coarse, s.f, *fld, sign));
      std::vector<Vec2c> u;
      for (const Vec2& z : points) u.push_back(evaluate_potential(s.coarse, s.f.field_kind, ev, hat, z));
      out.push_back(std::move(u));
    }
    return out;
  }
  // Without RCIP the corners get no special treatment at all.
  const Mesh mesh = corners ? refine_dyadic(s.coarse, cfg.n_sub) : s.coarse;
  AssemblyOptions opts;
  opts.corner_quadrature = false;
  CMatrix A = assemble_operator(mesh, s.f.kind, ev, opts);
  A.diagonal().array() += s.f.sigma;
  Eigen::PartialPivLU<CMatrix> lu(A);
  if (!(lu.rcond() > 1e-15)) throw NumericalError("system matrix is singular");
  for (const IncidentField* fld : fields) {
    const CVector phi = lu.solve(boundary_data(mesh, s.f, *fld, sign));
    std::vector<Vec2c> u;
    for (const Vec2& z : points) u.push_back(evaluate_potential(mesh, s.f.field_kind, ev, phi, z));
    out.push_back(std::move(u));
  }
  return out;
}

}  // namespace

SolveReport solve(const ProblemConfig& cfg) {
  const auto t0 = std::chrono::steady_clock::now();
  const Setup s = make_setup(cfg);
  const KernelEvaluator ev(cfg.params);
  const IncidentField f1 = IncidentField::point_source(cfg.params, s.source, Vec2(1.0, 0.0));
  const IncidentField f2 = IncidentField::point_source(cfg.params, s.source, Vec2(0.0, 1.0));
  const auto u = solve_and_evaluate(cfg, s, ev, {&f1, &f2}, 1.0, {s.test});
  SolveReport rep;
  rep.formulation = s.f.name;
  rep.geometry = to_string(cfg.shape);
  rep.panels = cfg.panels;
  rep.n_sub = s.geom.corners().empty() ? 0 : cfg.n_sub;
  rep.omega = cfg.params.omega;
  rep.error[0] = (u[0][0] - f1.displacement(s.test)).norm();
  rep.error[1] = (u[1][0] - f2.displacement(s.test)).norm();
  rep.unknowns = s.coarse.unknowns();
  rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

std::vector<Vec2c> scattered_field(const ProblemConfig& cfg, const IncidentField& field,
                                   const std::vector<Vec2>& points) {
  const Setup s = make_setup(cfg);
  const KernelEvaluator ev(cfg.params);
  return solve_and_evaluate(cfg, s, ev, {&field}, -1.0, points)[0];
}

double fit_power_law(const std::vector<double>& r, const std::vector<double>& magnitude,
                     const std::vector<int>& side) {
  if (r.size() != magnitude.size() || r.size() != side.size()) throw std::invalid_argument("fit: size mismatch");
  // Columns: ln r, indicator(side 0), indicator(side 1).
  const int n = static_cast<int>(r.size());
  RMatrix X = RMatrix::Zero(n, 3);
  RVector y(n);
  for (int i = 0; i < n; ++i) {
    if (!(r[i] > 0.0) || !(magnitude[i] > 0.0)) throw std::invalid_argument("fit: needs positive data");
    X(i, 0) = std::log(r[i]);
    X(i, 1 + (side[i] ? 1 : 0)) = 1.0;
    y(i) = std::log(magnitude[i]);
  }
  // Drop an unused side column.
  std::vector<int> cols{0};
  for (int c = 1; c < 3; ++c)
    if (X.col(c).sum() > 0) cols.push_back(c);
  RMatrix Xs(n, cols.size());
  for (size_t c = 0; c < cols.size(); ++c) Xs.col(c) = X.col(cols[c]);
  if (n < static_cast<int>(cols.size()) + 1) throw std::invalid_argument("fit: not enough points");
  const RVector beta = Xs.colPivHouseholderQr().solve(y);
  return beta(0);
}

std::vector<CornerExponent> corner_exponents(const ProblemConfig& cfg, int first_level, int skip_inner) {
  const Setup s = make_setup(cfg);
  if (s.geom.corners().empty()) throw std::invalid_argument("geometry has no corners");
  const int last_level = cfg.n_sub - skip_inner;
  if (last_level - first_level < 2) throw std::invalid_argument("fit window needs at least three dyadic levels");
  const KernelEvaluator ev(cfg.params);
  RcipSolver solver(s.coarse, s.f.kind, s.f.sigma, ev, cfg.n_sub, true);
  const IncidentField fld = IncidentField::point_source(cfg.params, s.source, Vec2(1.0, 0.0));
  solver.solve(boundary_data(s.coarse, s.f, fld, 1.0));
  std::vector<CornerExponent> out;
  for (int c = 0; c < static_cast<int>(s.geom.corners().size()); ++c) {
    const CornerDensity d = solver.reconstruct(c);
    std::vector<double> r, mag;
    std::vector<int> side;
    const int p = cfg.order;
    for (size_t pi = 0; pi < d.panels.size(); ++pi) {
      const int lvl = d.panels[pi].level;
      if (lvl < first_level || lvl > last_level) continue;
      for (int k = 0; k < p; ++k) {
        const Node& nd = d.nodes[pi * p + k];
        r.push_back(std::abs(arclength(s.geom, nd.base, nd.offset)));
        mag.push_back(d.density.segment<2>(2 * (pi * p + k)).norm());
        side.push_back(nd.offset < 0.0 ? 0 : 1);
      }
    }
    CornerExponent ce;
    ce.corner = c;
    ce.angle = s.geom.corners()[c].angle;
    ce.alpha = fit_power_law(r, mag, side);
    ce.points = static_cast<int>(r.size());
    out.push_back(ce);
  }
  return out;
}

double wedge_root(WedgeCase which, double theta, double xi) {
  if (!(theta > 0.0 && theta < 2.0 * kPi) || std::abs(theta - kPi) < 1e-14)
    throw std::invalid_argument("wedge angle must lie in (0, 2 pi) and differ from pi");
  const double c = which == WedgeCase::Rigid ? 1.0 / ((3.0 - 4.0 * xi) * (3.0 - 4.0 * xi)) : 1.0;
  const double a = std::sqrt(c) * std::abs(std::sin(theta));
  // Simple roots of nu^2 c sin^2 - sin^2 are sign changes of this factor.
  auto g = [&](double nu) { return a * nu - std::abs(std::sin(nu * theta)); };
  const int steps = 20000;
  double lo = 1e-9, glo = g(lo);
  for (int i = 1; i <= steps; ++i) {
    const double hi = std::min(1.0, 1e-9 + (1.0 - 1e-9) * i / steps);
    const double ghi = g(hi);
    if (glo == 0.0) return lo;
    if ((glo < 0.0) != (ghi < 0.0)) {
      boost::uintmax_t iters = 200;
      const auto tol = [](double x, double y) { return std::abs(x - y) < 1e-15; };
      const auto br = boost::math::tools::toms748_solve(g, lo, hi, glo, ghi, tol, iters);
      return 0.5 * (br.first + br.second);
    }
    lo = hi;
    glo = ghi;
  }
  throw std::domain_error("no root in (0, 1) for this wedge");
}

}  // namespace elastic
