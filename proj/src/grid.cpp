#include "firefront/grid.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>

#include "firefront/errors.hpp"

namespace firefront {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

void GridSpec::validate() const {
  if (nx < 3 || ny < 3) {
    throw ValidationError("grid must be at least 3x3, got " + std::to_string(nx) + "x" +
                          std::to_string(ny));
  }
  if (!(dx > 0.0) || !(dy > 0.0)) {
    throw ValidationError("grid spacing must be positive");
  }
}

ScalarField::ScalarField(const GridSpec& grid, double fill)
    : grid_(grid), values_(static_cast<std::size_t>(grid.cells()), fill) {}

ScalarField::ScalarField(const GridSpec& grid, std::vector<double> values)
    : grid_(grid), values_(std::move(values)) {
  if (static_cast<int>(values_.size()) != grid_.cells()) {
    throw ValidationError("field size does not match grid");
  }
}

bool ScalarField::all_finite() const {
  return std::all_of(values_.begin(), values_.end(),
                     [](double v) { return std::isfinite(v); });
}

FuelMap::FuelMap(const GridSpec& grid, std::uint8_t fill)
    : grid_(grid), labels_(static_cast<std::size_t>(grid.cells()), fill) {
  if (fill >= kNumFuels) throw ValidationError("fuel label out of range");
}

FuelMap::FuelMap(const GridSpec& grid, std::vector<std::uint8_t> labels)
    : grid_(grid), labels_(std::move(labels)) {
  if (static_cast<int>(labels_.size()) != grid_.cells()) {
    throw ValidationError("fuel map size does not match grid");
  }
  for (std::uint8_t v : labels_) {
    if (v >= kNumFuels) throw ValidationError("fuel label out of range");
  }
}

double Wind::speed() const { return std::hypot(ux, uy); }

GradientPair elevation_gradient(const ScalarField& z) {
  const GridSpec& g = z.grid();
  if (g.nx < 2 || g.ny < 2) throw ValidationError("gradient needs at least a 2x2 grid");
  GradientPair out{ScalarField(g), ScalarField(g)};
  for (int j = 0; j < g.ny; ++j) {
    for (int i = 0; i < g.nx; ++i) {
      double ddx;
      if (i == 0) {
        ddx = (z(1, j) - z(0, j)) / g.dx;
      } else if (i == g.nx - 1) {
        ddx = (z(i, j) - z(i - 1, j)) / g.dx;
      } else {
        ddx = (z(i + 1, j) - z(i - 1, j)) / (2.0 * g.dx);
      }
      double ddy;
      if (j == 0) {
        ddy = (z(i, 1) - z(i, 0)) / g.dy;
      } else if (j == g.ny - 1) {
        ddy = (z(i, j) - z(i, j - 1)) / g.dy;
      } else {
        ddy = (z(i, j + 1) - z(i, j - 1)) / (2.0 * g.dy);
      }
      out.ddx(i, j) = ddx;
      out.ddy(i, j) = ddy;
    }
  }
  return out;
}

ScalarField signed_distance_from_circle(const GridSpec& grid, double cx, double cy,
                                        double radius) {
  grid.validate();
  if (!(radius > 0.0)) throw ValidationError("circle radius must be positive");
  ScalarField phi(grid);
  for (int j = 0; j < grid.ny; ++j) {
    for (int i = 0; i < grid.nx; ++i) {
      phi(i, j) = radius - std::hypot(grid.cell_x(i) - cx, grid.cell_y(j) - cy);
    }
  }
  return phi;
}

namespace {

// 1-D squared distance transform (Felzenszwalb & Huttenlocher) with sample
// spacing h. f may contain +inf where no site contributes.
void dt1d(const std::vector<double>& f, std::vector<double>& out, double h,
          std::vector<int>& v, std::vector<double>& zb) {
  const int n = static_cast<int>(f.size());
  v.resize(static_cast<std::size_t>(n));
  zb.resize(static_cast<std::size_t>(n) + 1);
  int k = -1;
  for (int q = 0; q < n; ++q) {
    if (f[q] == kInf) continue;
    const double xq = q * h;
    if (k < 0) {
      k = 0;
      v[0] = q;
      zb[0] = -kInf;
      zb[1] = kInf;
      continue;
    }
    double s;
    for (;;) {
      const double xv = v[k] * h;
      s = ((f[q] + xq * xq) - (f[v[k]] + xv * xv)) / (2.0 * (xq - xv));
      if (s <= zb[k]) {
        --k;
        if (k < 0) break;
      } else {
        break;
      }
    }
    ++k;
    v[k] = q;
    zb[k] = s;
    zb[k + 1] = kInf;
  }
  if (k < 0) {
    std::fill(out.begin(), out.end(), kInf);
    return;
  }
  int j = 0;
  for (int q = 0; q < n; ++q) {
    const double xq = q * h;
    while (zb[j + 1] < xq) ++j;
    const double dxs = xq - v[j] * h;
    out[q] = dxs * dxs + f[v[j]];
  }
}

}  // namespace

ScalarField signed_distance_from_mask(const GridSpec& grid,
                                      const std::vector<std::uint8_t>& inside) {
  grid.validate();
  if (static_cast<int>(inside.size()) != grid.cells()) {
    throw ValidationError("mask size does not match grid");
  }
  const bool any_in = std::find_if(inside.begin(), inside.end(),
                                   [](std::uint8_t v) { return v != 0; }) != inside.end();
  const bool any_out = std::find(inside.begin(), inside.end(), std::uint8_t{0}) != inside.end();
  if (!any_in || !any_out) {
    throw ValidationError("mask must contain both inside and outside cells");
  }

  // Boundary sites live at midpoints between 4-neighbors with differing
  // mask values, which land exactly on a 2x refined lattice.
  const int W = 2 * grid.nx - 1;
  const int H = 2 * grid.ny - 1;
  const double hx = grid.dx * 0.5;
  const double hy = grid.dy * 0.5;
  std::vector<double> dist(static_cast<std::size_t>(W) * H, kInf);
  auto ridx = [W](int ri, int rj) { return static_cast<std::size_t>(rj) * W + ri; };
  auto in = [&](int i, int j) { return inside[grid.index(i, j)] != 0; };
  for (int j = 0; j < grid.ny; ++j) {
    for (int i = 0; i < grid.nx; ++i) {
      if (i + 1 < grid.nx && in(i, j) != in(i + 1, j)) dist[ridx(2 * i + 1, 2 * j)] = 0.0;
      if (j + 1 < grid.ny && in(i, j) != in(i, j + 1)) dist[ridx(2 * i, 2 * j + 1)] = 0.0;
    }
  }

  std::vector<double> line(static_cast<std::size_t>(std::max(W, H)));
  std::vector<double> lout(line.size());
  std::vector<int> v;
  std::vector<double> zb;
  for (int rj = 0; rj < H; ++rj) {
    line.resize(static_cast<std::size_t>(W));
    lout.resize(static_cast<std::size_t>(W));
    for (int ri = 0; ri < W; ++ri) line[ri] = dist[ridx(ri, rj)];
    dt1d(line, lout, hx, v, zb);
    for (int ri = 0; ri < W; ++ri) dist[ridx(ri, rj)] = lout[ri];
  }
  for (int ri = 0; ri < W; ++ri) {
    line.resize(static_cast<std::size_t>(H));
    lout.resize(static_cast<std::size_t>(H));
    for (int rj = 0; rj < H; ++rj) line[rj] = dist[ridx(ri, rj)];
    dt1d(line, lout, hy, v, zb);
    for (int rj = 0; rj < H; ++rj) dist[ridx(ri, rj)] = lout[rj];
  }

  ScalarField phi(grid);
  for (int j = 0; j < grid.ny; ++j) {
    for (int i = 0; i < grid.nx; ++i) {
      const double d = std::sqrt(dist[ridx(2 * i, 2 * j)]);
      phi(i, j) = in(i, j) ? d : -d;
    }
  }
  return phi;
}

namespace {

// Edge ids on the cell-center lattice: horizontal edge (i,j)-(i+1,j), then
// vertical edge (i,j)-(i,j+1) offset past all horizontal ids.
struct ContourBuilder {
  const ScalarField& phi;
  const GridSpec& g;
  int n_h;  // count of horizontal edges
  std::map<int, Point> vertex;          // edge id -> crossing point
  std::map<int, std::vector<int>> adj;  // edge id -> neighbor edge ids

  explicit ContourBuilder(const ScalarField& f) : phi(f), g(f.grid()) {
    n_h = (g.nx - 1) * g.ny;
  }

  int h_edge(int i, int j) const { return j * (g.nx - 1) + i; }
  int v_edge(int i, int j) const { return n_h + j * g.nx + i; }

  static double frac(double a, double b) {
    // Crossing parameter from the node with value a toward the node with
    // value b; a and b straddle zero by construction.
    const double denom = a - b;
    if (denom == 0.0) return 0.5;
    return std::clamp(a / denom, 0.0, 1.0);
  }

  Point point_on_h(int i, int j) {
    const double t = frac(phi(i, j), phi(i + 1, j));
    return {g.cell_x(i) + t * g.dx, g.cell_y(j)};
  }
  Point point_on_v(int i, int j) {
    const double t = frac(phi(i, j), phi(i, j + 1));
    return {g.cell_x(i), g.cell_y(j) + t * g.dy};
  }

  void add_segment(int ea, int eb, const Point& pa, const Point& pb) {
    vertex.emplace(ea, pa);
    vertex.emplace(eb, pb);
    adj[ea].push_back(eb);
    adj[eb].push_back(ea);
  }

  void build_cell(int i, int j) {
    const bool a = phi(i, j) >= 0.0;          // bottom-left
    const bool b = phi(i + 1, j) >= 0.0;      // bottom-right
    const bool c = phi(i + 1, j + 1) >= 0.0;  // top-right
    const bool d = phi(i, j + 1) >= 0.0;      // top-left
    const int code = (a ? 1 : 0) | (b ? 2 : 0) | (c ? 4 : 0) | (d ? 8 : 0);
    if (code == 0 || code == 15) return;

    const int bottom = h_edge(i, j);
    const int top = h_edge(i, j + 1);
    const int left = v_edge(i, j);
    const int right = v_edge(i + 1, j);
    auto pb_ = [&] { return point_on_h(i, j); };
    auto pt_ = [&] { return point_on_h(i, j + 1); };
    auto pl_ = [&] { return point_on_v(i, j); };
    auto pr_ = [&] { return point_on_v(i + 1, j); };

    switch (code) {
      case 1:
      case 14:
        add_segment(bottom, left, pb_(), pl_());
        break;
      case 2:
      case 13:
        add_segment(bottom, right, pb_(), pr_());
        break;
      case 3:
      case 12:
        add_segment(left, right, pl_(), pr_());
        break;
      case 4:
      case 11:
        add_segment(top, right, pt_(), pr_());
        break;
      case 6:
      case 9:
        add_segment(bottom, top, pb_(), pt_());
        break;
      case 7:
      case 8:
        add_segment(top, left, pt_(), pl_());
        break;
      case 5:
      case 10: {
        // Saddle: split by the sign of the cell-center average.
        const double mid = 0.25 * (phi(i, j) + phi(i + 1, j) + phi(i + 1, j + 1) +
                                   phi(i, j + 1));
        const bool mid_in = mid >= 0.0;
        if ((code == 5) == mid_in) {
          add_segment(bottom, right, pb_(), pr_());
          add_segment(top, left, pt_(), pl_());
        } else {
          add_segment(bottom, left, pb_(), pl_());
          add_segment(top, right, pt_(), pr_());
        }
        break;
      }
      default:
        break;
    }
  }
};

}  // namespace

std::vector<FrontPolyline> extract_zero_contour(const ScalarField& phi) {
  phi.grid().validate();
  ContourBuilder cb(phi);
  for (int j = 0; j + 1 < phi.ny(); ++j) {
    for (int i = 0; i + 1 < phi.nx(); ++i) cb.build_cell(i, j);
  }

  std::vector<FrontPolyline> out;
  std::map<int, bool> used;
  for (const auto& [id, nbrs] : cb.adj) used[id] = false;

  auto walk = [&](int start) {
    FrontPolyline line;
    int prev = -1;
    int cur = start;
    while (true) {
      used[cur] = true;
      line.points.push_back(cb.vertex.at(cur));
      int nxt = -1;
      for (int nb : cb.adj.at(cur)) {
        if (nb != prev && !used[nb]) {
          nxt = nb;
          break;
        }
      }
      if (nxt < 0) {
        // Either an open end or we are back adjacent to the start.
        const auto& nbrs = cb.adj.at(cur);
        line.closed = line.points.size() > 2 &&
                      std::find(nbrs.begin(), nbrs.end(), start) != nbrs.end() &&
                      cur != start;
        break;
      }
      prev = cur;
      cur = nxt;
    }
    return line;
  };

  // Open chains first so each is traced end to end, then remaining loops.
  for (const auto& [id, nbrs] : cb.adj) {
    if (!used[id] && nbrs.size() == 1) out.push_back(walk(id));
  }
  for (const auto& [id, nbrs] : cb.adj) {
    if (!used[id]) out.push_back(walk(id));
  }
  return out;
}

namespace {

double point_segment_distance(const Point& p, const Point& a, const Point& b) {
  const double vx = b.x - a.x;
  const double vy = b.y - a.y;
  const double wx = p.x - a.x;
  const double wy = p.y - a.y;
  const double vv = vx * vx + vy * vy;
  double t = vv > 0.0 ? (wx * vx + wy * vy) / vv : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  return std::hypot(wx - t * vx, wy - t * vy);
}

}  // namespace

ScalarField signed_distance_from_contour(const ScalarField& phi) {
  const auto lines = extract_zero_contour(phi);
  if (lines.empty()) return phi;
  const GridSpec& g = phi.grid();
  ScalarField out(g);
  for (int j = 0; j < g.ny; ++j) {
    for (int i = 0; i < g.nx; ++i) {
      const Point p{g.cell_x(i), g.cell_y(j)};
      double best = kInf;
      for (const auto& line : lines) {
        const auto& pts = line.points;
        const std::size_t n = pts.size();
        if (n == 1) {
          best = std::min(best, std::hypot(p.x - pts[0].x, p.y - pts[0].y));
          continue;
        }
        for (std::size_t k = 0; k + 1 < n; ++k) {
          best = std::min(best, point_segment_distance(p, pts[k], pts[k + 1]));
        }
        if (line.closed && n > 2) {
          best = std::min(best, point_segment_distance(p, pts[n - 1], pts[0]));
        }
      }
      out(i, j) = phi(i, j) >= 0.0 ? best : -best;
    }
  }
  return out;
}

}  // namespace firefront
