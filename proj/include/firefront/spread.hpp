#pragma once

#include <array>
#include <span>

#include "firefront/grid.hpp"

namespace firefront {

// Spread-model parameters for two fuels. Fuel A and fuel B share the wind
// exponent n and the flank fraction alpha; epsilon (base rate), a (wind
// coefficient) and beta (packing ratio) are per fuel.
struct ParamVector {
  double n = 3.0;
  double eps_a = 0.4;
  double eps_b = 0.4;
  double a_a = 0.5;
  double a_b = 0.5;
  double alpha = 0.5;
  double beta_a = 0.02;
  double beta_b = 0.02;

  static constexpr int kDim = 8;

  std::array<double, kDim> to_array() const;
  static ParamVector from_array(std::span<const double> p);

  // Throws ValidationError unless n >= 0, eps >= 0, a >= 0,
  // alpha in [0, 1], beta > 0.
  void validate() const;

  bool operator==(const ParamVector&) const = default;
};

// Parameters seen by a single cell once its fuel label is resolved.
struct LocalParams {
  double n;
  double eps;
  double a;
  double alpha;
  double beta;
};

// Local front geometry. theta is the angle between the outward front
// normal and the wind (radians, [0, pi]); gamma the angle between the
// terrain gradient and the outward normal; tan_chi the slope magnitude
// |grad z| along the normal direction.
struct SpreadGeometry {
  double theta = 0.0;
  double gamma = 0.0;
  double tan_chi = 0.0;
};

// Slope correction 5.275 * beta^-0.3 * tan(chi)^2. Requires beta > 0.
double slope_factor(double beta, double tan_chi);

// Empirical normal spread rate. Head side (theta <= pi/2):
//   eps + a*sqrt(U*cos(theta)^n) + eps*psi*cos(gamma)
// rear side: eps*(alpha + (1-alpha)*|sin(theta)|) + eps*psi*cos(gamma),
// with psi = slope_factor(beta, tan_chi). Clamped below at zero.
double rate_of_spread(const LocalParams& local, double wind_speed,
                      const SpreadGeometry& geom);

// Full-field speed F(phi): for each cell, the outward normal comes from
// -grad(phi), theta from the wind, gamma and tan_chi from grad(z).
// Gradients below 1e-9 fall back to theta = 0 resp. a zero slope term.
ScalarField speed_field(const ScalarField& phi, const ScalarField& elevation,
                        const FuelMap& fuel, const Wind& wind, const ParamVector& p);

// Precomputed terrain and fuel factors so repeated speed evaluations only
// touch phi. evaluate() fills `out` (same grid), returns max |F|.
class SpeedContext {
 public:
  SpeedContext(const ScalarField& elevation, const FuelMap& fuel, const Wind& wind,
               const ParamVector& p);

  const GridSpec& grid() const { return grid_; }
  double evaluate(const ScalarField& phi, ScalarField& out) const;

 private:
  GridSpec grid_;
  Wind wind_;
  double wind_speed_;
  double n_;
  double alpha_;
  std::vector<double> dzdx_;
  std::vector<double> dzdy_;
  std::vector<double> grad_z_mag_;
  std::vector<double> eps_;
  std::vector<double> a_;
  std::vector<double> slope_term_;  // eps * psi(chi), awaiting cos(gamma)
};

}  // namespace firefront
