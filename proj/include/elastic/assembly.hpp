#pragma once

// Nystrom discretization of the boundary operators on a panel mesh,
// boundary data for point-source test fields and potential evaluation.

#include <string>

#include "elastic/geometry.hpp"
#include "elastic/kernels.hpp"

namespace elastic {

enum class BoundaryKind { Dirichlet, Neumann };

struct Formulation {
  std::string name;
  KernelKind kind = KernelKind::Double;        ///< operator kernel
  KernelKind field_kind = KernelKind::Double;  ///< kernel of the representation
  double sigma = 0.5;                          ///< identity coefficient
  BoundaryKind data = BoundaryKind::Dirichlet;
  bool exterior = true;
};

/// One of DND_ext, DND_int, SNN_ext, SNN_int, CDL_ext (case-insensitive).
Formulation formulation_from_name(const std::string& name);

struct AssemblyOptions {
  /// Integrate across corners with graded product rules. Off gives the plain
  /// smooth-curve discretization applied blindly to a cornered curve.
  bool corner_quadrature = true;
  /// Panels [skip_begin, skip_end) do not interact with each other; their
  /// mutual blocks are left zero.
  int skip_begin = 0;
  int skip_end = 0;
};

/// Operator matrix K (without the identity term). Unknowns are interleaved:
/// node i carries components 2i and 2i+1. Blocks for self and neighboring
/// panels use product integration.
CMatrix assemble_operator(const Mesh& mesh, KernelKind kind, const KernelEvaluator& ev,
                          const AssemblyOptions& opts = {});

/// Local coordinate of a node with respect to a panel (in [-1, 1] inside it).
double local_coordinate(const Mesh& mesh, const Node& node, const Panel& panel);

/// Boundary data (trace or traction) of u = G(., y0) q.
CVector point_source_data(const Mesh& mesh, const Formulation& f, const KernelEvaluator& ev, const Vec2& y0,
                          const Vec2& q);
Vec2c point_source_field(const KernelEvaluator& ev, const Vec2& x, const Vec2& y0, const Vec2& q);

/// Potential with kernel kind and node density at z, plain panel quadrature.
Vec2c evaluate_potential(const Mesh& mesh, KernelKind kind, const KernelEvaluator& ev, const CVector& density,
                         const Vec2& z);

/// Same, with source panels adaptively bisected (density interpolated) when
/// z is close to them.
Vec2c evaluate_potential_near(const Mesh& mesh, KernelKind kind, const KernelEvaluator& ev,
                              const CVector& density, const Vec2& z);

}  // namespace elastic
