#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <utility>
#include <vector>

#include "firefront/grid.hpp"
#include "firefront/scenario.hpp"

namespace testutil {

using firefront::FrontPolyline;
using firefront::FuelMap;
using firefront::GridSpec;
using firefront::Point;
using firefront::ScalarField;
using firefront::Scenario;
using firefront::Wind;

// n x n cells whose centers run from lo to hi inclusive.
inline GridSpec centered_grid(int n, double lo, double hi) {
  const double dx = (hi - lo) / (n - 1);
  return GridSpec{n, n, lo - 0.5 * dx, lo - 0.5 * dx, dx, dx};
}

// The 101x101 grid over [-1,1]^2 used by the bundled scenarios.
inline GridSpec unit_grid101() { return GridSpec{101, 101, -1.01, -1.01, 0.02, 0.02}; }

template <class F>
ScalarField field_of(const GridSpec& g, F f) {
  ScalarField out(g);
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i) out(i, j) = f(g.cell_x(i), g.cell_y(j));
  return out;
}

inline std::vector<std::uint8_t> random_mask(const GridSpec& g, std::mt19937& rng) {
  std::bernoulli_distribution coin(0.5);
  std::vector<std::uint8_t> mask(static_cast<std::size_t>(g.cells()));
  bool any_in = false, any_out = false;
  do {
    any_in = any_out = false;
    for (auto& m : mask) {
      m = coin(rng) ? 1 : 0;
      (m ? any_in : any_out) = true;
    }
  } while (!any_in || !any_out);
  return mask;
}

// All-pairs reference for the mask distance: boundary sites are the
// midpoints between 4-neighbors whose mask values differ.
inline std::vector<double> brute_force_signed_distance(
    const GridSpec& g, const std::vector<std::uint8_t>& mask) {
  std::vector<std::pair<double, double>> sites;
  for (int j = 0; j < g.ny; ++j) {
    for (int i = 0; i < g.nx; ++i) {
      const bool in = mask[g.index(i, j)] != 0;
      if (i + 1 < g.nx && in != (mask[g.index(i + 1, j)] != 0))
        sites.emplace_back(g.cell_x(i) + 0.5 * g.dx, g.cell_y(j));
      if (j + 1 < g.ny && in != (mask[g.index(i, j + 1)] != 0))
        sites.emplace_back(g.cell_x(i), g.cell_y(j) + 0.5 * g.dy);
    }
  }
  std::vector<double> out(static_cast<std::size_t>(g.cells()));
  for (int j = 0; j < g.ny; ++j) {
    for (int i = 0; i < g.nx; ++i) {
      double best = std::numeric_limits<double>::infinity();
      for (const auto& [sx, sy] : sites)
        best = std::min(best, std::hypot(g.cell_x(i) - sx, g.cell_y(j) - sy));
      out[g.index(i, j)] = mask[g.index(i, j)] ? best : -best;
    }
  }
  return out;
}

inline bool point_in_polygon(double x, double y, const std::vector<Point>& poly) {
  bool in = false;
  const std::size_t n = poly.size();
  for (std::size_t k = 0, m = n - 1; k < n; m = k++) {
    const Point& p = poly[k];
    const Point& q = poly[m];
    if ((p.y > y) != (q.y > y)) {
      const double xc = p.x + (y - p.y) / (q.y - p.y) * (q.x - p.x);
      if (x < xc) in = !in;
    }
  }
  return in;
}

inline double max_radial_deviation(const FrontPolyline& line, double cx, double cy,
                                   double r) {
  double worst = 0.0;
  for (const Point& p : line.points)
    worst = std::max(worst, std::abs(std::hypot(p.x - cx, p.y - cy) - r));
  return worst;
}

inline Scenario flat_scenario(const GridSpec& g, const Wind& wind, double cx, double cy,
                              double r0, double t0, double tf, double dt) {
  Scenario s;
  s.grid = g;
  s.elevation = ScalarField(g, 0.0);
  s.fuel = FuelMap(g, 0);
  s.wind = wind;
  s.initial_phi = firefront::signed_distance_from_circle(g, cx, cy, r0);
  s.t0 = t0;
  s.tf = tf;
  s.dt = dt;
  return s;
}

}  // namespace testutil
