#pragma once

// Recursive compression of the corner neighborhoods: the dense system on a
// mesh dyadically refined toward each corner is replaced by a system on the
// coarse mesh in which the corner blocks are multiplied by a compressed
// inverse built level by level from the finest scale out.

#include <vector>

#include "elastic/assembly.hpp"

namespace elastic {

/// Scalar prolongation from a four-panel corner mesh to the six-panel mesh
/// that splits its two inner panels (rows: 6 * order, cols: 4 * order).
RMatrix corner_prolongation(int order);
/// Same with parameter-space quadrature weights folded in, so that
/// weighted^T * plain == identity.
RMatrix corner_prolongation_weighted(int order);

/// Four-panel (scale m) and six-panel (scale m) meshes around a corner of
/// the coarse mesh. Panel widths shrink as 2^-m.
Mesh corner_mesh_c(const Mesh& coarse, int corner, int level);
Mesh corner_mesh_b(const Mesh& coarse, int corner, int level);

/// Density on the refined corner neighborhood, in curve order.
struct CornerDensity {
  std::vector<Node> nodes;
  std::vector<Panel> panels;
  CVector density;  ///< interleaved components
};

class RcipSolver {
 public:
  /// Operator sigma I + K on the coarse mesh with n_sub levels of refinement
  /// toward every corner. keep_levels retains the data needed for
  /// reconstruct().
  RcipSolver(const Mesh& coarse, KernelKind kind, double sigma, const KernelEvaluator& ev, int n_sub,
             bool keep_levels = false);

  /// Returns the weight-corrected coarse density, usable with the coarse
  /// quadrature for potentials. The transformed density is kept for
  /// reconstruction.
  CVector solve(const CVector& rhs);
  const CVector& transformed_density() const { return transformed_; }

  /// Fine-mesh density on one corner neighborhood from the last solve().
  CornerDensity reconstruct(int corner) const;

  /// The compressed inverse of a corner block (size 8 * order).
  const CMatrix& compressed(int corner) const { return corners_.at(corner).R; }
  int n_sub() const { return n_sub_; }
  /// Compressed coarse system I + K^o R (scaled by 1/sigma).
  const CMatrix& system() const { return system_; }

 private:
  struct CornerData {
    std::vector<int> unknowns;  ///< coarse unknown indices of the neighborhood
    CMatrix R;
    CMatrix finest;                   ///< R at the deepest level
    std::vector<CMatrix> level_inv;   ///< per level: (F{R^-1} + I + K_b^o)^-1
    std::vector<CMatrix> coupling;    ///< per level: K_b^o[inner, outer]
    std::vector<Mesh> meshes_b;
    Mesh mesh_c_finest;
  };

  CMatrix corner_R(const Mesh& coarse, int corner, KernelKind kind, const KernelEvaluator& ev, CornerData& data);

  Mesh coarse_;
  double sigma_;
  int n_sub_;
  bool keep_;
  std::vector<CornerData> corners_;
  CMatrix system_;
  CVector transformed_;
};

/// Reference solution of (sigma I + K) phi = rhs on a given mesh.
CVector solve_direct(const Mesh& mesh, KernelKind kind, double sigma, const KernelEvaluator& ev, const CVector& rhs);

}  // namespace elastic
