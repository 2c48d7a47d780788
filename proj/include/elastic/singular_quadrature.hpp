#pragma once

// Product integration on a Gauss-Legendre panel for integrands with a
// logarithmic or Cauchy singularity at a target t (inside or near [-1, 1]).

#include <vector>

#include "elastic/geometry.hpp"

namespace elastic {

/// P_0(t) .. P_{n-1}(t).
std::vector<double> legendre_values(int n, double t);

/// C_j(t) = p.v. int_{-1}^{1} P_j(s) / (t - s) ds, j = 0..n-1.
/// Forward recursion for |t| <= 1, normalized backward (Miller) recursion
/// otherwise.
std::vector<double> cauchy_table(int n, double t);

/// L_j(t) = int_{-1}^{1} P_j(s) ln|s - t| ds, j = 0..n-1.
std::vector<double> log_table(int n, double t);

/// Weights on the n Gauss nodes reproducing int f(s) ln|s - t| ds and
/// p.v. int f(s) / (s - t) ds (sign opposite to C_j) exactly for
/// polynomials f of degree < n.
struct ModifiedWeights {
  std::vector<double> log;
  std::vector<double> cauchy;
};
ModifiedWeights modified_weights(const GaussRule& rule, double t);

/// Lagrange interpolation matrix from the n Gauss nodes to arbitrary points
/// in [-1, 1] (rows: targets).
RMatrix interp_matrix(const GaussRule& rule, const std::vector<double>& targets);

}  // namespace elastic
