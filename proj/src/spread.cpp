#include "firefront/spread.hpp"

#include <algorithm>
#include <cmath>

#include "firefront/errors.hpp"

namespace firefront {

namespace {
constexpr double kGradEps = 1e-9;

// Core formula on cosines. cos_theta in [-1, 1] selects the branch;
// slope_term is eps*psi(chi) and still needs cos(gamma).
double spread_rate_cs(double n, double eps, double a, double alpha, double slope_term,
                      double wind_speed, double cos_theta, double cos_gamma) {
  double f;
  if (cos_theta >= 0.0) {
    const double c = std::min(cos_theta, 1.0);
    f = eps + a * std::sqrt(wind_speed * std::pow(c, n));
  } else {
    const double s = std::sqrt(std::max(0.0, 1.0 - cos_theta * cos_theta));
    f = eps * (alpha + (1.0 - alpha) * s);
  }
  f += slope_term * cos_gamma;
  return std::max(f, 0.0);
}
}  // namespace

std::array<double, ParamVector::kDim> ParamVector::to_array() const {
  return {n, eps_a, eps_b, a_a, a_b, alpha, beta_a, beta_b};
}

ParamVector ParamVector::from_array(std::span<const double> p) {
  if (p.size() != kDim) throw ValidationError("parameter vector must have 8 entries");
  return ParamVector{p[0], p[1], p[2], p[3], p[4], p[5], p[6], p[7]};
}

void ParamVector::validate() const {
  if (!(n >= 0.0)) throw ValidationError("wind exponent n must be >= 0");
  if (!(eps_a >= 0.0) || !(eps_b >= 0.0)) throw ValidationError("eps must be >= 0");
  if (!(a_a >= 0.0) || !(a_b >= 0.0)) throw ValidationError("wind coefficient a must be >= 0");
  if (!(alpha >= 0.0) || !(alpha <= 1.0)) throw ValidationError("alpha must lie in [0, 1]");
  if (!(beta_a > 0.0) || !(beta_b > 0.0)) throw ValidationError("beta must be > 0");
}

double slope_factor(double beta, double tan_chi) {
  if (!(beta > 0.0)) throw ValidationError("beta must be > 0");
  return 5.275 * std::pow(beta, -0.3) * tan_chi * tan_chi;
}

double rate_of_spread(const LocalParams& local, double wind_speed,
                      const SpreadGeometry& geom) {
  const double slope_term = local.eps * slope_factor(local.beta, geom.tan_chi);
  return spread_rate_cs(local.n, local.eps, local.a, local.alpha, slope_term, wind_speed,
                        std::cos(geom.theta), std::cos(geom.gamma));
}

SpeedContext::SpeedContext(const ScalarField& elevation, const FuelMap& fuel,
                           const Wind& wind, const ParamVector& p)
    : grid_(elevation.grid()), wind_(wind), wind_speed_(wind.speed()), n_(p.n),
      alpha_(p.alpha) {
  grid_.validate();
  p.validate();
  if (!(fuel.grid() == grid_)) throw ValidationError("fuel map grid does not match elevation");
  const int n_cells = grid_.cells();
  const auto grad = elevation_gradient(elevation);
  dzdx_ = grad.ddx.values();
  dzdy_ = grad.ddy.values();
  grad_z_mag_.resize(n_cells);
  eps_.resize(n_cells);
  a_.resize(n_cells);
  slope_term_.resize(n_cells);
  const double eps_by_fuel[2] = {p.eps_a, p.eps_b};
  const double a_by_fuel[2] = {p.a_a, p.a_b};
  const double beta_by_fuel[2] = {p.beta_a, p.beta_b};
  for (int k = 0; k < n_cells; ++k) {
    const int f = fuel[k];
    const double gz = std::hypot(dzdx_[k], dzdy_[k]);
    grad_z_mag_[k] = gz;
    eps_[k] = eps_by_fuel[f];
    a_[k] = a_by_fuel[f];
    slope_term_[k] = gz < kGradEps
                         ? 0.0
                         : eps_by_fuel[f] * slope_factor(beta_by_fuel[f], gz);
  }
}

double SpeedContext::evaluate(const ScalarField& phi, ScalarField& out) const {
  if (!(phi.grid() == grid_)) throw ValidationError("phi grid does not match context");
  if (!(out.grid() == grid_)) out = ScalarField(grid_);
  const int nx = grid_.nx;
  const int ny = grid_.ny;
  const double inv2dx = 1.0 / (2.0 * grid_.dx);
  const double inv2dy = 1.0 / (2.0 * grid_.dy);
  const auto& pv = phi.values();
  double max_abs = 0.0;
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      const int k = grid_.index(i, j);
      double px, py;
      if (i == 0) {
        px = (pv[k + 1] - pv[k]) / grid_.dx;
      } else if (i == nx - 1) {
        px = (pv[k] - pv[k - 1]) / grid_.dx;
      } else {
        px = (pv[k + 1] - pv[k - 1]) * inv2dx;
      }
      if (j == 0) {
        py = (pv[k + nx] - pv[k]) / grid_.dy;
      } else if (j == ny - 1) {
        py = (pv[k] - pv[k - nx]) / grid_.dy;
      } else {
        py = (pv[k + nx] - pv[k - nx]) * inv2dy;
      }
      const double gmag = std::hypot(px, py);
      // Outward normal is -grad(phi)/|grad(phi)| (phi > 0 inside).
      double cos_theta = 1.0;
      double cos_gamma = 1.0;
      if (gmag < kGradEps || wind_speed_ == 0.0) {
        cos_theta = 1.0;  // theta := 0
      } else {
        cos_theta = std::clamp((-px * wind_.ux - py * wind_.uy) / (gmag * wind_speed_),
                               -1.0, 1.0);
      }
      const double gz = grad_z_mag_[k];
      if (gmag < kGradEps || gz < kGradEps) {
        cos_gamma = 1.0;  // slope_term_ is zero when gz is negligible
      } else {
        cos_gamma = std::clamp((-px * dzdx_[k] - py * dzdy_[k]) / (gmag * gz), -1.0, 1.0);
      }
      const double f = spread_rate_cs(n_, eps_[k], a_[k], alpha_, slope_term_[k],
                                      wind_speed_, cos_theta, cos_gamma);
      out[k] = f;
      max_abs = std::max(max_abs, std::abs(f));
    }
  }
  return max_abs;
}

ScalarField speed_field(const ScalarField& phi, const ScalarField& elevation,
                        const FuelMap& fuel, const Wind& wind, const ParamVector& p) {
  if (!(phi.grid() == elevation.grid())) {
    throw ValidationError("phi grid does not match elevation");
  }
  SpeedContext ctx(elevation, fuel, wind, p);
  ScalarField out(phi.grid());
  ctx.evaluate(phi, out);
  return out;
}

}  // namespace firefront
