#pragma once

// Piecewise smooth closed curves, coarse panel meshes and dyadic refinement
// toward corners.
//
// Every point on the curve is addressed as (base, offset): base is a
// breakpoint of the parametrization and offset a signed parameter distance
// from it. Positions are stored both absolutely and as a displacement from
// the base point, so two points sharing a base can be differenced without
// cancellation even when they sit 2^-60 away from a corner.

#include <string>
#include <vector>

#include "elastic/types.hpp"

namespace elastic {

enum class ShapeKind { Circle, Ellipse, Droplet, Sector };

ShapeKind parse_shape(const std::string& name);
std::string to_string(ShapeKind kind);

struct Corner {
  int breakpoint = 0;   ///< index into BoundaryGeometry::breakpoints()
  double param = 0.0;   ///< parameter of the corner point
  double angle = 0.0;   ///< interior opening angle
};

/// Local differential data at a curve point.
struct CurveSample {
  Vec2 position;      ///< absolute position
  Vec2 displacement;  ///< position minus the base point
  Vec2 d1;            ///< dx/ds
  Vec2 d2;            ///< d^2x/ds^2
};

class BoundaryGeometry {
 public:
  static BoundaryGeometry make(ShapeKind kind, double shape_param);

  ShapeKind kind() const { return kind_; }
  double shape_param() const { return shape_param_; }
  /// Parameter interval is [0, length()].
  double length() const { return breakpoints_.back(); }
  /// Smooth-component boundaries, starting at 0 and ending at length().
  const std::vector<double>& breakpoints() const { return breakpoints_; }
  const std::vector<Corner>& corners() const { return corners_; }
  int component_count() const { return static_cast<int>(breakpoints_.size()) - 1; }

  /// Evaluate at base + offset. When base is a breakpoint the sign of offset
  /// selects the smooth piece (offset < 0 reaches back across base, wrapping
  /// around s = 0). A zero offset evaluates the forward piece.
  CurveSample sample(double base, double offset) const;
  Vec2 point(double s) const;

 private:
  ShapeKind kind_ = ShapeKind::Circle;
  double shape_param_ = 1.0;
  std::vector<double> breakpoints_;
  std::vector<Corner> corners_;
};

/// Gauss-Legendre nodes and weights on [-1, 1], 1 <= n <= 64.
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};
GaussRule gauss_legendre(int n);

struct Node {
  double base = 0.0;
  double offset = 0.0;
  Vec2 position;
  Vec2 displacement;
  Vec2 normal;   ///< unit normal toward the unbounded side
  Vec2 tangent;  ///< (-n2, n1)
  double speed = 0.0;      ///< |x'(s)|
  double curvature = 0.0;  ///< n . x'' / |x'|^2  (equals -kappa on convex arcs)
  double weight = 0.0;     ///< parameter-space quadrature weight
};

struct Panel {
  double base = 0.0;
  double a = 0.0;  ///< start offset from base
  double b = 0.0;  ///< end offset from base
  int component = 0;
  int corner = -1;      ///< corner whose neighborhood contains the panel, or -1
  int level = 0;        ///< dyadic refinement depth (0 = coarse)
  int first_node = 0;   ///< index of the panel's first node in Mesh::nodes
  double half_width() const { return 0.5 * (b - a); }
  double mid() const { return 0.5 * (a + b); }
};

class Mesh {
 public:
  Mesh() = default;

  /// Build panels from explicit (base, a, b) intervals listed in curve order.
  Mesh(const BoundaryGeometry& geom, std::vector<Panel> panels, int order, bool closed);

  const BoundaryGeometry& geometry() const { return geom_; }
  const std::vector<Panel>& panels() const { return panels_; }
  const std::vector<Node>& nodes() const { return nodes_; }
  int order() const { return order_; }
  bool closed() const { return closed_; }
  int panel_count() const { return static_cast<int>(panels_.size()); }
  int node_count() const { return static_cast<int>(nodes_.size()); }
  int unknowns() const { return 2 * node_count(); }

  /// Panels i and j are equal or consecutive along the curve.
  bool adjacent(int i, int j) const;

  /// Panel indices of the neighborhood of each corner (four panels on a
  /// coarse mesh, 4 + 2*n_sub after refinement), contiguous and in curve order.
  const std::vector<std::vector<int>>& corner_panels() const { return corner_panels_; }
  void set_corner_panels(std::vector<std::vector<int>> lists) { corner_panels_ = std::move(lists); }

  /// Absolute parameter of base + offset, wrapped into [0, L).
  double absolute_param(double base, double offset) const;

 private:
  friend Mesh build_coarse_mesh(const BoundaryGeometry&, const std::vector<int>&, int);
  friend Mesh refine_dyadic(const Mesh&, int);

  BoundaryGeometry geom_;
  std::vector<Panel> panels_;
  std::vector<Node> nodes_;
  std::vector<std::vector<int>> corner_panels_;
  int order_ = 16;
  bool closed_ = true;
};

/// Fill node data for a panel list.
Node make_node(const BoundaryGeometry& geom, double base, double offset, double weight);

/// Uniform panels per smooth component. A single count is applied to every
/// component. Components touching a corner need at least four panels.
Mesh build_coarse_mesh(const BoundaryGeometry& geom, const std::vector<int>& panels_per_component,
                       int order = 16);

/// Dyadically subdivide the two panels meeting each corner n_sub times.
Mesh refine_dyadic(const Mesh& coarse, int n_sub);

/// Difference x - y between two nodes, exact to the scale of their separation
/// whenever they share a base point.
inline Vec2 separation(const Node& x, const Node& y) {
  if (x.base == y.base) return x.displacement - y.displacement;
  return x.position - y.position;
}

/// Arclength between base and base + offset along the curve.
double arclength(const BoundaryGeometry& geom, double base, double offset);

}  // namespace elastic
