#include "firefront/solver.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "firefront/errors.hpp"
#include "firefront/scenario.hpp"

namespace firefront {

void SolverConfig::validate(double t0, double tf) const {
  if (!(cfl > 0.0) || cfl > 1.0) throw ValidationError("cfl must lie in (0, 1]");
  if (eno_order != 3) throw ValidationError("only eno_order = 3 is supported");
  if (reinit_period < 0) throw ValidationError("reinit_period must be >= 0");
  if (snapshot_times.empty()) throw ValidationError("snapshot_times must not be empty");
  double prev = t0 - 1.0;
  for (double t : snapshot_times) {
    if (t < t0 - 1e-12 || t > tf + 1e-12) {
      throw ValidationError("snapshot time outside [t0, tf]");
    }
    if (!(t > prev)) throw ValidationError("snapshot times must be strictly increasing");
    prev = t;
  }
}

void FrontSeries::push(double time, ScalarField field) {
  if (!times_.empty()) {
    if (!(time > times_.back())) {
      throw ValidationError("snapshot times must be strictly increasing");
    }
    if (!(field.grid() == fields_.front().grid())) {
      throw ValidationError("snapshot grid changed mid-series");
    }
  }
  times_.push_back(time);
  fields_.push_back(std::move(field));
}

const GridSpec& FrontSeries::grid() const {
  if (fields_.empty()) throw ValidationError("empty front series has no grid");
  return fields_.front().grid();
}

namespace {

// Third-order ENO one-sided derivatives along one line of values.
// Newton divided differences; ties between candidate stencils take the
// smaller-index (left) one. Three linearly extrapolated ghosts per side.
void eno3_line(const double* f, int n, double h, double* dminus, double* dplus,
               std::vector<double>& pad, std::vector<double>& d1, std::vector<double>& d2,
               std::vector<double>& d3) {
  const int np = n + 6;
  pad.resize(static_cast<std::size_t>(np));
  for (int i = 0; i < n; ++i) pad[i + 3] = f[i];
  for (int gk = 1; gk <= 3; ++gk) {
    pad[3 - gk] = f[0] + gk * (f[0] - f[1]);
    pad[n + 2 + gk] = f[n - 1] + gk * (f[n - 1] - f[n - 2]);
  }
  // d1[k]: first difference on interface (k, k+1); d2[k]: second difference
  // at node k; d3[k]: third difference on interface (k, k+1).
  d1.resize(static_cast<std::size_t>(np - 1));
  d2.resize(static_cast<std::size_t>(np));
  d3.resize(static_cast<std::size_t>(np - 1));
  for (int k = 0; k + 1 < np; ++k) d1[k] = (pad[k + 1] - pad[k]) / h;
  for (int k = 1; k + 1 < np; ++k) d2[k] = (d1[k] - d1[k - 1]) / (2.0 * h);
  for (int k = 1; k + 2 < np; ++k) d3[k] = (d2[k + 1] - d2[k]) / (3.0 * h);

  for (int i = 0; i < n; ++i) {
    const int m = i + 3;
    {  // minus: base stencil {m-1, m}
      const double q1 = d1[m - 1];
      int ks;
      double c;
      if (std::abs(d2[m - 1]) <= std::abs(d2[m])) {
        c = d2[m - 1];
        ks = m - 2;
      } else {
        c = d2[m];
        ks = m - 1;
      }
      const double q2 = c * h;  // 2*(m - (m-1)) - 1 = 1
      const double cs = std::abs(d3[ks]) <= std::abs(d3[ks + 1]) ? d3[ks] : d3[ks + 1];
      const int dd = m - ks;  // 1 or 2
      const double q3 = cs * (3.0 * dd * dd - 6.0 * dd + 2.0) * h * h;
      dminus[i] = q1 + q2 + q3;
    }
    {  // plus: base stencil {m, m+1}
      const double q1 = d1[m];
      int ks;
      double c;
      if (std::abs(d2[m]) <= std::abs(d2[m + 1])) {
        c = d2[m];
        ks = m - 1;
      } else {
        c = d2[m + 1];
        ks = m;
      }
      const double q2 = -c * h;  // 2*(m - m) - 1 = -1
      const double cs = std::abs(d3[ks]) <= std::abs(d3[ks + 1]) ? d3[ks] : d3[ks + 1];
      const int dd = m - ks;  // 0 or 1
      const double q3 = cs * (3.0 * dd * dd - 6.0 * dd + 2.0) * h * h;
      dplus[i] = q1 + q2 + q3;
    }
  }
}

}  // namespace

EnoDerivatives eno3_derivatives(const ScalarField& phi) {
  const GridSpec& g = phi.grid();
  if (g.nx < 7 || g.ny < 7) {
    throw ValidationError("eno3 requires at least 7 cells per axis");
  }
  EnoDerivatives out{ScalarField(g), ScalarField(g), ScalarField(g), ScalarField(g)};
  std::vector<double> pad, d1, d2, d3;
  std::vector<double> line(static_cast<std::size_t>(std::max(g.nx, g.ny)));
  std::vector<double> lminus(line.size()), lplus(line.size());
  for (int j = 0; j < g.ny; ++j) {
    const double* row = phi.values().data() + g.index(0, j);
    eno3_line(row, g.nx, g.dx, lminus.data(), lplus.data(), pad, d1, d2, d3);
    for (int i = 0; i < g.nx; ++i) {
      out.dx_minus(i, j) = lminus[i];
      out.dx_plus(i, j) = lplus[i];
    }
  }
  for (int i = 0; i < g.nx; ++i) {
    for (int j = 0; j < g.ny; ++j) line[j] = phi(i, j);
    eno3_line(line.data(), g.ny, g.dy, lminus.data(), lplus.data(), pad, d1, d2, d3);
    for (int j = 0; j < g.ny; ++j) {
      out.dy_minus(i, j) = lminus[j];
      out.dy_plus(i, j) = lplus[j];
    }
  }
  return out;
}

ScalarField godunov_normal_speed_term(const ScalarField& speed, const EnoDerivatives& d) {
  const GridSpec& g = speed.grid();
  if (!(d.dx_minus.grid() == g)) throw ValidationError("derivative grid mismatch");
  ScalarField out(g);
  const int n = g.cells();
  for (int k = 0; k < n; ++k) {
    const double f = speed[k];
    const double xm = d.dx_minus[k];
    const double xp = d.dx_plus[k];
    const double ym = d.dy_minus[k];
    const double yp = d.dy_plus[k];
    double gx2, gy2;
    if (f >= 0.0) {
      // phi grows: information flows outward from the phi > 0 region.
      gx2 = std::max(std::min(xm, 0.0) * std::min(xm, 0.0),
                     std::max(xp, 0.0) * std::max(xp, 0.0));
      gy2 = std::max(std::min(ym, 0.0) * std::min(ym, 0.0),
                     std::max(yp, 0.0) * std::max(yp, 0.0));
    } else {
      gx2 = std::max(std::max(xm, 0.0) * std::max(xm, 0.0),
                     std::min(xp, 0.0) * std::min(xp, 0.0));
      gy2 = std::max(std::max(ym, 0.0) * std::max(ym, 0.0),
                     std::min(yp, 0.0) * std::min(yp, 0.0));
    }
    out[k] = f * std::sqrt(gx2 + gy2);
  }
  return out;
}

namespace {

// phi + dt * F(phi) |grad phi|, one Euler stage.
void euler_stage(const ScalarField& phi, const ScalarField& speed, double dt,
                 ScalarField& out) {
  const ScalarField term = godunov_normal_speed_term(speed, eno3_derivatives(phi));
  out = phi;
  const int n = phi.size();
  for (int k = 0; k < n; ++k) out[k] += dt * term[k];
}

class Propagator {
 public:
  Propagator(const ScalarField& elevation, const FuelMap& fuel, const Wind& wind,
             const ParamVector& p)
      : ctx_(elevation, fuel, wind, p), speed_(elevation.grid()) {}

  // Largest admissible |F| over the current field; caches F for the next
  // heun() call on the same phi.
  double max_speed(const ScalarField& phi) {
    const double m = ctx_.evaluate(phi, speed_);
    if (!std::isfinite(m)) throw NumericalError("speed field became non-finite");
    return m;
  }

  // One SSP-RK2 step using the cached first-stage speed field.
  void heun(ScalarField& phi, double dt) {
    euler_stage(phi, speed_, dt, stage1_);
    ctx_.evaluate(stage1_, speed2_);
    euler_stage(stage1_, speed2_, dt, stage2_);
    const int n = phi.size();
    for (int k = 0; k < n; ++k) phi[k] = 0.5 * (phi[k] + stage2_[k]);
  }

 private:
  SpeedContext ctx_;
  ScalarField speed_;
  ScalarField speed2_;
  ScalarField stage1_;
  ScalarField stage2_;
};

}  // namespace

ScalarField step(const ScalarField& phi, const ScalarField& elevation, const FuelMap& fuel,
                 const Wind& wind, const ParamVector& p, double dt, double cfl) {
  if (!(dt > 0.0)) throw ValidationError("dt must be positive");
  if (!(cfl > 0.0) || cfl > 1.0) throw ValidationError("cfl must lie in (0, 1]");
  Propagator prop(elevation, fuel, wind, p);
  const double fmax = prop.max_speed(phi);
  const double h = std::min(phi.grid().dx, phi.grid().dy);
  if (fmax > 0.0 && dt > cfl * h / fmax * (1.0 + 1e-12)) {
    std::ostringstream msg;
    msg << "dt = " << dt << " violates the CFL bound " << cfl * h / fmax;
    throw NumericalError(msg.str());
  }
  ScalarField out = phi;
  prop.heun(out, dt);
  if (!out.all_finite()) throw NumericalError("phi became non-finite during step");
  return out;
}

FrontSeries simulate(const Scenario& scenario, const ParamVector& p,
                     const SolverConfig& config) {
  scenario.validate();
  p.validate();
  config.validate(scenario.t0, scenario.tf);

  const GridSpec& g = scenario.grid;
  const double h = std::min(g.dx, g.dy);
  Propagator prop(scenario.elevation, scenario.fuel, scenario.wind, p);

  FrontSeries series;
  ScalarField phi = scenario.initial_phi;
  double t = scenario.t0;
  series.push(t, phi);

  int recorded_since_reinit = 0;
  std::size_t next = 0;
  if (next < config.snapshot_times.size() &&
      std::abs(config.snapshot_times[next] - scenario.t0) <= 1e-12) {
    ++next;  // t0 already recorded
  }
  while (next < config.snapshot_times.size()) {
    const double target = config.snapshot_times[next];
    while (t < target) {
      const double fmax = prop.max_speed(phi);
      double dt = config.cfl * h / std::max(fmax, 1e-12);
      bool lands = false;
      if (t + dt >= target) {
        dt = target - t;
        lands = true;
      }
      prop.heun(phi, dt);
      t = lands ? target : t + dt;
      if (!phi.all_finite()) {
        std::ostringstream msg;
        msg << "phi became non-finite at t = " << t;
        throw NumericalError(msg.str());
      }
    }
    series.push(target, phi);
    ++next;
    ++recorded_since_reinit;
    if (config.reinit_period > 0 && recorded_since_reinit >= config.reinit_period &&
        next < config.snapshot_times.size()) {
      phi = signed_distance_from_contour(phi);
      recorded_since_reinit = 0;
    }
  }
  return series;
}

std::vector<double> Scenario::default_snapshot_times() const {
  std::vector<double> times;
  const int n_steps = static_cast<int>(std::llround((tf - t0) / dt));
  times.reserve(static_cast<std::size_t>(n_steps) + 1);
  for (int k = 0; k <= n_steps; ++k) {
    times.push_back(k == n_steps ? tf : t0 + k * dt);
  }
  return times;
}

void Scenario::validate() const {
  grid.validate();
  if (!(elevation.grid() == grid) || !(fuel.grid() == grid) ||
      !(initial_phi.grid() == grid)) {
    throw ValidationError("scenario fields must share one grid");
  }
  if (!(t0 < tf)) throw ValidationError("time: t0 must be < tf");
  if (!(dt > 0.0)) throw ValidationError("time: dt must be > 0");
  const double span = tf - t0;
  const double k = std::round(span / dt);
  if (k < 1.0 || std::abs(k * dt - span) > 1e-9 * std::max(1.0, span)) {
    throw ValidationError("time: dt must divide tf - t0");
  }
  if (!elevation.all_finite() || !initial_phi.all_finite()) {
    throw ValidationError("scenario fields must be finite");
  }
  bool has_pos = false;
  bool has_neg = false;
  for (double v : initial_phi.values()) {
    if (v >= 0.0) has_pos = true;
    else has_neg = true;
    if (has_pos && has_neg) break;
  }
  if (!has_pos || !has_neg) {
    throw ValidationError("initial phi must change sign (no front)");
  }
  if (truth) truth->validate();
}

}  // namespace firefront
