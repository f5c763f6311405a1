#pragma once

#include <optional>
#include <vector>

#include "firefront/grid.hpp"
#include "firefront/spread.hpp"

namespace firefront {

struct SolverConfig {
  double cfl = 0.5;
  int eno_order = 3;  // only 3 is implemented
  std::vector<double> snapshot_times;
  // Re-distance phi after every `reinit_period` recorded snapshots;
  // 0 disables reinitialization.
  int reinit_period = 0;

  // Throws ValidationError unless cfl in (0, 1], eno_order == 3, and the
  // snapshot times are strictly increasing within [t0, tf].
  void validate(double t0, double tf) const;
};

// Ordered snapshots (time, field) of a propagating front. Measured data
// uses the same container with sign rasters (+1 burnt / -1 unburnt).
class FrontSeries {
 public:
  FrontSeries() = default;

  void push(double time, ScalarField field);
  int size() const { return static_cast<int>(times_.size()); }
  bool empty() const { return times_.empty(); }
  double time(int k) const { return times_.at(static_cast<std::size_t>(k)); }
  const ScalarField& field(int k) const { return fields_.at(static_cast<std::size_t>(k)); }
  const std::vector<double>& times() const { return times_; }
  const GridSpec& grid() const;

 private:
  std::vector<double> times_;
  std::vector<ScalarField> fields_;
};

// One-sided third-order ENO derivatives of phi along each axis, cell by
// cell. Boundaries use three ghost cells per side filled by linear
// extrapolation; requires at least 7 cells per axis.
struct EnoDerivatives {
  ScalarField dx_minus;
  ScalarField dx_plus;
  ScalarField dy_minus;
  ScalarField dy_plus;
};
EnoDerivatives eno3_derivatives(const ScalarField& phi);

// Godunov upwind value of F * |grad phi| for outward motion of the
// phi > 0 region: where F >= 0 the scheme selects the derivatives that
// expand the burnt set, where F < 0 the roles flip.
ScalarField godunov_normal_speed_term(const ScalarField& speed, const EnoDerivatives& d);

// One Heun (SSP-RK2) step of phi_t = F |grad phi| with F recomputed at each
// stage. Throws NumericalError when dt exceeds cfl * min(dx, dy) / max|F|.
ScalarField step(const ScalarField& phi, const ScalarField& elevation, const FuelMap& fuel,
                 const Wind& wind, const ParamVector& p, double dt, double cfl = 0.5);

struct Scenario;  // defined in scenario.hpp

// Advances the scenario's initial front to each requested snapshot time,
// choosing dt from the CFL bound and truncating steps to land exactly on
// snapshots. The returned series always starts with (t0, phi0).
FrontSeries simulate(const Scenario& scenario, const ParamVector& p,
                     const SolverConfig& config);

}  // namespace firefront
