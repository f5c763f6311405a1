#pragma once

#include <optional>
#include <vector>

#include "firefront/grid.hpp"
#include "firefront/spread.hpp"

namespace firefront {

// A fully materialized simulation setup: terrain, fuel, wind, initial
// front and the time axis. `truth` carries the generating parameters for
// synthetic cases so estimation runs can report parameter error.
struct Scenario {
  GridSpec grid;
  ScalarField elevation;
  FuelMap fuel;
  Wind wind;
  ScalarField initial_phi;
  double t0 = 0.0;
  double tf = 0.0;
  double dt = 0.0;  // snapshot interval
  std::optional<ParamVector> truth;

  // t0, t0 + dt, ..., tf.
  std::vector<double> default_snapshot_times() const;

  // Throws ValidationError unless all fields share the grid, t0 < tf,
  // dt > 0 divides tf - t0, and phi0 changes sign somewhere.
  void validate() const;
};

}  // namespace firefront
