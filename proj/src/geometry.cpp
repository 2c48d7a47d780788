#include "elastic/geometry.hpp"

#include <cctype>
#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace elastic {

namespace {

struct PieceEval {
  Vec2 base_point;
  Vec2 displacement;
  Vec2 d1;
  Vec2 d2;
};

// sin(pi*b) with exact zeros at integers.
double sin_pi(double b) {
  if (b == std::floor(b)) return 0.0;
  return std::sin(kPi * b);
}

PieceEval eval_ellipse(double alpha, double b, double ds) {
  const double s = b + ds;
  const double sh = std::sin(0.5 * ds);
  const double mid = b + 0.5 * ds;
  PieceEval e;
  e.base_point = {2.0 * alpha * std::cos(b), 2.0 * std::sin(b)};
  e.displacement = {-4.0 * alpha * std::sin(mid) * sh, 4.0 * std::cos(mid) * sh};
  e.d1 = {-2.0 * alpha * std::sin(s), 2.0 * std::cos(s)};
  e.d2 = {-2.0 * alpha * std::cos(s), -2.0 * std::sin(s)};
  return e;
}

// Droplet in complex form f(s) = sin(pi s) exp(i pi (s - 1/2) / 2), s in [0, 1].
PieceEval eval_droplet(double b, double ds) {
  const double s = b + ds;
  auto E = [](double t) { return std::exp(kI * (0.5 * kPi * (t - 0.5))); };
  const Complex eb = E(b);
  const Complex es = eb * std::exp(kI * (0.5 * kPi * ds));
  const double sb = sin_pi(b);
  const double dsin = 2.0 * std::cos(kPi * (b + 0.5 * ds)) * std::sin(0.5 * kPi * ds);
  const Complex dE = eb * (2.0 * kI * std::sin(0.25 * kPi * ds)) * std::exp(kI * (0.25 * kPi * ds));
  const Complex disp = dsin * es + sb * dE;
  const double sn = std::sin(kPi * s);
  const double cs = std::cos(kPi * s);
  const Complex w = kI * (0.5 * kPi);
  const Complex f1 = (kPi * cs + sn * w) * es;
  const Complex f2 = (-kPi * kPi * sn + 2.0 * kPi * cs * w + sn * w * w) * es;
  const Complex fb = sb * eb;
  PieceEval e;
  e.base_point = {fb.real(), fb.imag()};
  e.displacement = {disp.real(), disp.imag()};
  e.d1 = {f1.real(), f1.imag()};
  e.d2 = {f2.real(), f2.imag()};
  return e;
}

PieceEval eval_sector(double k, int piece, double b, double ds) {
  const double beta = 1.0 / std::sqrt(1.0 + k * k);
  const double theta = std::atan(k);
  PieceEval e;
  switch (piece) {
    case 0:
      e.base_point = beta * b * Vec2(1.0, -k);
      e.displacement = beta * ds * Vec2(1.0, -k);
      e.d1 = beta * Vec2(1.0, -k);
      e.d2 = Vec2::Zero();
      break;
    case 1: {
      const double phi0 = 2.0 * theta * (b - 1.0) - theta;
      const double delta = 2.0 * theta * ds;
      const double mid = phi0 + 0.5 * delta;
      const double sh = std::sin(0.5 * delta);
      const double phi = phi0 + delta;
      e.base_point = {std::cos(phi0), std::sin(phi0)};
      e.displacement = {-2.0 * std::sin(mid) * sh, 2.0 * std::cos(mid) * sh};
      e.d1 = 2.0 * theta * Vec2(-std::sin(phi), std::cos(phi));
      e.d2 = -4.0 * theta * theta * Vec2(std::cos(phi), std::sin(phi));
      break;
    }
    default:
      e.base_point = beta * (3.0 - b) * Vec2(1.0, k);
      e.displacement = -beta * ds * Vec2(1.0, k);
      e.d1 = -beta * Vec2(1.0, k);
      e.d2 = Vec2::Zero();
      break;
  }
  return e;
}

}  // namespace

ShapeKind parse_shape(const std::string& raw) {
  std::string name = raw;
  for (char& c : name) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (name == "circle") return ShapeKind::Circle;
  if (name == "ellipse") return ShapeKind::Ellipse;
  if (name == "droplet") return ShapeKind::Droplet;
  if (name == "sector") return ShapeKind::Sector;
  throw std::invalid_argument("unknown geometry kind: " + name);
}

std::string to_string(ShapeKind kind) {
  switch (kind) {
    case ShapeKind::Circle: return "circle";
    case ShapeKind::Ellipse: return "ellipse";
    case ShapeKind::Droplet: return "droplet";
    case ShapeKind::Sector: return "sector";
  }
  return "?";
}

BoundaryGeometry BoundaryGeometry::make(ShapeKind kind, double shape_param) {
  if (!(shape_param > 0.0) || !std::isfinite(shape_param))
    throw std::invalid_argument("shape parameter must be positive");
  BoundaryGeometry g;
  g.kind_ = kind;
  g.shape_param_ = shape_param;
  switch (kind) {
    case ShapeKind::Circle:
    case ShapeKind::Ellipse: g.breakpoints_ = {0.0, 2.0 * kPi}; break;
    case ShapeKind::Droplet: g.breakpoints_ = {0.0, 1.0}; break;
    case ShapeKind::Sector: g.breakpoints_ = {0.0, 1.0, 2.0, 3.0}; break;
  }
  std::vector<int> corner_breaks;
  if (kind == ShapeKind::Droplet) corner_breaks = {0};
  if (kind == ShapeKind::Sector) corner_breaks = {0, 1, 2};
  for (int bi : corner_breaks) {
    const double s = g.breakpoints_[bi];
    const Vec2 out = g.sample(s, 0.0).d1.normalized();
    const Vec2 in = g.sample(s, -0.0 - 1e-300).d1.normalized();
    const double turn = std::atan2(in.x() * out.y() - in.y() * out.x(), in.dot(out));
    g.corners_.push_back({bi, s, kPi - turn});
  }
  return g;
}

CurveSample BoundaryGeometry::sample(double base, double offset) const {
  const double L = length();
  const int pieces = component_count();
  int piece = -1;
  double b = base;
  const auto it = std::find(breakpoints_.begin(), breakpoints_.end(), base);
  if (it != breakpoints_.end()) {
    int bi = static_cast<int>(it - breakpoints_.begin());
    if (offset < 0.0 || std::signbit(offset)) {
      if (bi == 0) { bi = pieces; b = L; }
      piece = bi - 1;
    } else {
      if (bi == pieces) { bi = 0; b = 0.0; }
      piece = bi;
    }
  } else {
    for (int p = 0; p < pieces; ++p)
      if (base >= breakpoints_[p] && base <= breakpoints_[p + 1]) piece = p;
    if (piece < 0) throw std::domain_error("curve parameter outside [0, L]");
  }

  PieceEval e;
  switch (kind_) {
    case ShapeKind::Circle:
    case ShapeKind::Ellipse: e = eval_ellipse(kind_ == ShapeKind::Circle ? 1.0 : shape_param_, b, offset); break;
    case ShapeKind::Droplet: e = eval_droplet(b, offset); break;
    case ShapeKind::Sector: e = eval_sector(shape_param_, piece, b, offset); break;
  }
  // A wrapped base still reports displacement relative to the shared point.
  return {e.base_point + e.displacement, e.displacement, e.d1, e.d2};
}

Vec2 BoundaryGeometry::point(double s) const {
  int p = 0;
  while (p + 1 < component_count() && s >= breakpoints_[p + 1]) ++p;
  return sample(breakpoints_[p], s - breakpoints_[p]).position;
}

GaussRule gauss_legendre(int n) {
  if (n < 1 || n > 64) throw std::invalid_argument("gauss_legendre: n must be in 1..64");
  GaussRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (int i = 0; i < n; ++i) {
    // Chebyshev-type initial guess, refined by Newton on P_n.
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      double pn = n == 1 ? x : p1;
      double pm1 = n == 1 ? 1.0 : p0;
      dp = n * (x * pn - pm1) / (x * x - 1.0);
      const double dx = pn / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    // Recompute the derivative at the converged root for the weight.
    double p0 = 1.0, p1 = x;
    for (int k = 2; k <= n; ++k) {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    const double pn = n == 1 ? x : p1;
    const double pm1 = n == 1 ? 1.0 : p0;
    dp = n * (x * pn - pm1) / (x * x - 1.0);
    rule.nodes[n - 1 - i] = x;
    rule.weights[n - 1 - i] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
  return rule;
}

Node make_node(const BoundaryGeometry& geom, double base, double offset, double weight) {
  const CurveSample cs = geom.sample(base, offset);
  Node nd;
  nd.base = base;
  nd.offset = offset;
  nd.position = cs.position;
  nd.displacement = cs.displacement;
  nd.speed = cs.d1.norm();
  nd.tangent = cs.d1 / nd.speed;
  nd.normal = Vec2(nd.tangent.y(), -nd.tangent.x());
  nd.curvature = nd.normal.dot(cs.d2) / (nd.speed * nd.speed);
  nd.weight = weight;
  return nd;
}

Mesh::Mesh(const BoundaryGeometry& geom, std::vector<Panel> panels, int order, bool closed)
    : geom_(geom), panels_(std::move(panels)), order_(order), closed_(closed) {
  const GaussRule rule = gauss_legendre(order);
  nodes_.reserve(panels_.size() * order);
  for (auto& p : panels_) {
    p.first_node = static_cast<int>(nodes_.size());
    const double h = p.half_width();
    for (int k = 0; k < order; ++k)
      nodes_.push_back(make_node(geom_, p.base, p.mid() + h * rule.nodes[k], h * rule.weights[k]));
  }
}

bool Mesh::adjacent(int i, int j) const {
  const int n = panel_count();
  const int d = std::abs(i - j);
  if (d <= 1) return true;
  return closed_ && d == n - 1;
}

double Mesh::absolute_param(double base, double offset) const {
  const double L = geom_.length();
  double s = base + offset;
  if (s < 0.0) s += L;
  if (s >= L) s -= L;
  return s;
}

Mesh build_coarse_mesh(const BoundaryGeometry& geom, const std::vector<int>& panels_per_component,
                       int order) {
  const int ncomp = geom.component_count();
  if (panels_per_component.empty()) throw std::invalid_argument("panel counts must not be empty");
  std::vector<int> counts(ncomp);
  for (int c = 0; c < ncomp; ++c)
    counts[c] = panels_per_component.size() == 1 ? panels_per_component[0] : panels_per_component.at(c);
  if (static_cast<int>(panels_per_component.size()) != 1 && static_cast<int>(panels_per_component.size()) != ncomp)
    throw std::invalid_argument("need one panel count or one per smooth component");

  const auto& bp = geom.breakpoints();
  const auto& corners = geom.corners();
  auto is_corner = [&](int bi) {
    for (const auto& c : corners)
      if (c.breakpoint == bi || (c.breakpoint == 0 && bi == ncomp)) return true;
    return false;
  };
  for (int c = 0; c < ncomp; ++c) {
    if (counts[c] < 1) throw std::invalid_argument("panel count must be positive");
    if ((is_corner(c) || is_corner(c + 1)) && counts[c] < 4)
      throw std::invalid_argument("corner neighborhood needs at least 4 panels on every touching component");
  }

  // Panels in parameter order; those within two panels of a corner are
  // re-based on the corner.
  std::vector<Panel> panels;
  for (int c = 0; c < ncomp; ++c) {
    const double H = (bp[c + 1] - bp[c]) / counts[c];
    for (int i = 0; i < counts[c]; ++i) {
      Panel p;
      p.component = c;
      p.base = bp[c];
      p.a = i * H;
      p.b = (i + 1 == counts[c]) ? bp[c + 1] - bp[c] : (i + 1) * H;
      if (is_corner(c) && i < 2) {
        for (int k = 0; k < static_cast<int>(corners.size()); ++k)
          if (corners[k].breakpoint == c) p.corner = k;
      }
      if (is_corner(c + 1) && i >= counts[c] - 2) {
        const int bi = (c + 1 == ncomp) ? 0 : c + 1;
        for (int k = 0; k < static_cast<int>(corners.size()); ++k)
          if (corners[k].breakpoint == bi) p.corner = k;
        p.base = bp[bi];
        p.a = -(counts[c] - i) * H;
        p.b = -(counts[c] - i - 1) * H;
      }
      panels.push_back(p);
    }
  }
  // Rotate so the neighborhood of corner 0 is contiguous at the front.
  if (!corners.empty() && corners[0].breakpoint == 0) {
    std::rotate(panels.begin(), panels.end() - 2, panels.end());
  }
  Mesh mesh(geom, std::move(panels), order, true);
  std::vector<std::vector<int>> lists(corners.size());
  for (int i = 0; i < mesh.panel_count(); ++i)
    if (mesh.panels()[i].corner >= 0) lists[mesh.panels()[i].corner].push_back(i);
  mesh.corner_panels_ = std::move(lists);
  return mesh;
}

Mesh refine_dyadic(const Mesh& coarse, int n_sub) {
  if (n_sub < 0) throw std::invalid_argument("n_sub must be non-negative");
  if (n_sub == 0) return coarse;
  std::vector<Panel> panels;
  for (const Panel& p : coarse.panels()) {
    const bool touches = p.corner >= 0 && (p.a == 0.0 || p.b == 0.0);
    if (!touches) {
      panels.push_back(p);
      continue;
    }
    if (p.a == 0.0) {  // corner at the start: [0, H] -> [0, H/2^n], ..., [H/2, H]
      const double H = p.b;
      for (int l = n_sub; l >= 0; --l) {
        Panel q = p;
        q.a = l == n_sub ? 0.0 : std::ldexp(H, -(l + 1));
        q.b = std::ldexp(H, -l);
        q.level = l == n_sub ? n_sub : l + 1;
        panels.push_back(q);
      }
    } else {  // corner at the end: [-H, 0] mirrored
      const double H = -p.a;
      for (int l = 0; l <= n_sub; ++l) {
        Panel q = p;
        q.a = -std::ldexp(H, -l);
        q.b = l == n_sub ? 0.0 : -std::ldexp(H, -(l + 1));
        q.level = l == n_sub ? n_sub : l + 1;
        panels.push_back(q);
      }
    }
  }
  Mesh mesh(coarse.geometry(), std::move(panels), coarse.order(), coarse.closed());
  std::vector<std::vector<int>> lists(coarse.corner_panels().size());
  for (int i = 0; i < mesh.panel_count(); ++i)
    if (mesh.panels()[i].corner >= 0) lists[mesh.panels()[i].corner].push_back(i);
  mesh.set_corner_panels(std::move(lists));
  return mesh;
}

double arclength(const BoundaryGeometry& geom, double base, double offset) {
  static const GaussRule rule = gauss_legendre(32);
  constexpr int pieces = 16;
  const double h = 0.5 * offset / pieces;
  double s = 0.0;
  for (int j = 0; j < pieces; ++j)
    for (size_t k = 0; k < rule.nodes.size(); ++k)
      s += rule.weights[k] * geom.sample(base, h * (2 * j + rule.nodes[k] + 1.0)).d1.norm();
  return std::abs(h) * s;
}

}  // namespace elastic
