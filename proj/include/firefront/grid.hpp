#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace firefront {

struct Point {
  double x = 0.0;
  double y = 0.0;
};

// Uniform cell-centered grid. Cell (i, j) has center
// (x0 + (i + 1/2) dx, y0 + (j + 1/2) dy); (x0, y0) is the lower-left corner
// of the domain and j increases northward.
struct GridSpec {
  int nx = 0;
  int ny = 0;
  double x0 = 0.0;
  double y0 = 0.0;
  double dx = 0.0;
  double dy = 0.0;

  int cells() const { return nx * ny; }
  int index(int i, int j) const { return j * nx + i; }
  double cell_x(int i) const { return x0 + (i + 0.5) * dx; }
  double cell_y(int j) const { return y0 + (j + 0.5) * dy; }

  bool operator==(const GridSpec&) const = default;

  // Throws ValidationError unless nx, ny >= 3 and dx, dy > 0.
  void validate() const;
};

// Scalar values on the cells of a GridSpec, row-major with i fastest.
class ScalarField {
 public:
  ScalarField() = default;
  explicit ScalarField(const GridSpec& grid, double fill = 0.0);
  ScalarField(const GridSpec& grid, std::vector<double> values);

  const GridSpec& grid() const { return grid_; }
  int nx() const { return grid_.nx; }
  int ny() const { return grid_.ny; }
  int size() const { return static_cast<int>(values_.size()); }

  double& operator()(int i, int j) { return values_[grid_.index(i, j)]; }
  double operator()(int i, int j) const { return values_[grid_.index(i, j)]; }
  double& operator[](int k) { return values_[k]; }
  double operator[](int k) const { return values_[k]; }

  std::vector<double>& values() { return values_; }
  const std::vector<double>& values() const { return values_; }

  bool all_finite() const;

 private:
  GridSpec grid_;
  std::vector<double> values_;
};

// Per-cell fuel labels. The public contract fixes two fuel classes,
// 0 ("A") and 1 ("B"); storage would admit more.
class FuelMap {
 public:
  static constexpr int kNumFuels = 2;

  FuelMap() = default;
  FuelMap(const GridSpec& grid, std::uint8_t fill = 0);
  FuelMap(const GridSpec& grid, std::vector<std::uint8_t> labels);

  const GridSpec& grid() const { return grid_; }
  std::uint8_t operator()(int i, int j) const { return labels_[grid_.index(i, j)]; }
  std::uint8_t operator[](int k) const { return labels_[k]; }
  std::uint8_t& operator[](int k) { return labels_[k]; }
  const std::vector<std::uint8_t>& labels() const { return labels_; }

 private:
  GridSpec grid_;
  std::vector<std::uint8_t> labels_;
};

// Constant ambient wind (ux, uy) in m/s (or domain units per time unit).
struct Wind {
  double ux = 0.0;
  double uy = 0.0;
  double speed() const;
};

// Polyline along the zero level set. `closed` marks a loop; the first
// point is not repeated at the end.
struct FrontPolyline {
  std::vector<Point> points;
  bool closed = false;
};

struct GradientPair {
  ScalarField ddx;
  ScalarField ddy;
};

// Central differences inside, one-sided at the boundary. Exact for fields
// affine in x and y. Requires nx, ny >= 2.
GradientPair elevation_gradient(const ScalarField& z);

// phi > 0 inside the disc of radius `radius` about (cx, cy); exact signed
// Euclidean distance to the circle.
ScalarField signed_distance_from_circle(const GridSpec& grid, double cx, double cy,
                                        double radius);

// Exact Euclidean signed distance to the boundary implied by a binary
// mask (nonzero = inside). Boundary sites sit at midpoints between
// 4-neighbor cells whose mask values differ; distances are computed on a
// 2x refined lattice so they are exact for the site set. phi > 0 inside.
// Requires both mask values to occur (otherwise the distance is undefined);
// throws ValidationError if the mask is constant.
ScalarField signed_distance_from_mask(const GridSpec& grid,
                                      const std::vector<std::uint8_t>& inside);

// Marching squares on cell centers with linear interpolation along edges;
// segments are chained into polylines. Cells with phi >= 0 count as inside,
// matching the burnt-area convention. Returns an empty list when phi does
// not change sign.
std::vector<FrontPolyline> extract_zero_contour(const ScalarField& phi);

// Reinitializes phi to approximate signed distance: extracts the zero
// contour, then takes min distance to its segments with the sign of the
// current value. Returns phi unchanged when there is no contour.
ScalarField signed_distance_from_contour(const ScalarField& phi);

}  // namespace firefront
