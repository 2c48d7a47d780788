#pragma once

// Problem setup, solve orchestration, error measurement and corner
// asymptotics.

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "elastic/assembly.hpp"
#include "elastic/rcip.hpp"

namespace elastic {

enum class IncidentKind { CompressionalPlane, ShearPlane, PointSource };
IncidentKind parse_incident(const std::string& name);
std::string to_string(IncidentKind kind);

class IncidentField {
 public:
  static IncidentField compressional(const ElasticParams& p, double angle);
  static IncidentField shear(const ElasticParams& p, double angle);
  static IncidentField point_source(const ElasticParams& p, const Vec2& y0, const Vec2& q);

  IncidentKind kind() const { return kind_; }
  Vec2c displacement(const Vec2& x) const;
  /// grad(i, j) = d u_i / d x_j
  Mat2c gradient(const Vec2& x) const;
  Vec2c traction(const Vec2& x, const Vec2& normal) const;

 private:
  IncidentKind kind_ = IncidentKind::PointSource;
  ElasticParams params_;
  std::shared_ptr<const KernelEvaluator> ev_;
  Vec2 dir_ = Vec2(1.0, 0.0);
  Vec2 pol_ = Vec2(1.0, 0.0);
  double k_ = 0.0;
  Vec2 y0_ = Vec2::Zero();
  Vec2 q_ = Vec2::Zero();
};

/// Boundary data (trace or traction of the given field, times sign) at the mesh nodes.
CVector boundary_data(const Mesh& mesh, const Formulation& f, const IncidentField& field, double sign);

struct ProblemConfig {
  ShapeKind shape = ShapeKind::Circle;
  double shape_param = 1.0;
  std::string formulation = "DND_ext";
  ElasticParams params;
  int panels = 12;  ///< per smooth component
  int order = 16;
  int n_sub = 0;
  bool use_rcip = true;  ///< ignored on cornerless curves
  std::optional<Vec2> source;      ///< defaults depend on the side
  std::optional<Vec2> test_point;
};

Vec2 default_source(bool exterior);
Vec2 default_test_point(bool exterior);

struct SolveReport {
  std::string formulation;
  std::string geometry;
  int panels = 0;
  int n_sub = 0;
  double omega = 0.0;
  /// |u - u_exact| at the test point for q = (1,0) and q = (0,1).
  double error[2] = {0.0, 0.0};
  double seconds = 0.0;
  int unknowns = 0;
};

/// Manufactured point-source problem: exact field G(., y0) q with y0 on the
/// side opposite to the solution domain.
SolveReport solve(const ProblemConfig& cfg);

/// Scattered field at points for a plane or point incident field.
std::vector<Vec2c> scattered_field(const ProblemConfig& cfg, const IncidentField& field,
                                   const std::vector<Vec2>& points);

/// Slope of ln|phi| against ln r, fitted by least squares with one intercept
/// per side of the corner. side[i] is 0 or 1.
double fit_power_law(const std::vector<double>& r, const std::vector<double>& magnitude,
                     const std::vector<int>& side);

struct CornerExponent {
  int corner = 0;
  double angle = 0.0;
  double alpha = 0.0;
  int points = 0;
};

/// Reconstructs the fine density at every corner and fits the exponent over
/// dyadic levels [first_level, n_sub - skip_inner].
std::vector<CornerExponent> corner_exponents(const ProblemConfig& cfg, int first_level = 10, int skip_inner = 5);

enum class WedgeCase { Rigid, TractionFree };
/// Smallest root in (0, 1) of nu^2 c sin^2(theta) - sin^2(nu theta) = 0 with
/// c = 1 / (3 - 4 xi)^2 (rigid) or 1 (traction free).
double wedge_root(WedgeCase which, double theta, double xi);

}  // namespace elastic
