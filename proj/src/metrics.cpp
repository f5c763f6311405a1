#include "firefront/metrics.hpp"

#include <cmath>

#include "firefront/errors.hpp"

namespace firefront {

long long burnt_cell_count(const ScalarField& phi) {
  long long n = 0;
  for (double v : phi.values()) n += v >= 0.0 ? 1 : 0;
  return n;
}

long long mismatch_count(const ScalarField& a, const ScalarField& b) {
  if (!(a.grid() == b.grid())) throw ValidationError("fields must share a grid");
  long long n = 0;
  const int sz = a.size();
  for (int k = 0; k < sz; ++k) {
    n += (a[k] >= 0.0) != (b[k] >= 0.0) ? 1 : 0;
  }
  return n;
}

long long cost_J(const FrontSeries& sim, const FrontSeries& measured, bool include_t0) {
  if (sim.empty() || measured.empty()) throw ValidationError("empty front series");
  if (!(sim.grid() == measured.grid())) throw ValidationError("series must share a grid");
  if (sim.size() != measured.size()) {
    throw ValidationError("series must have the same number of snapshots");
  }
  for (int k = 0; k < sim.size(); ++k) {
    if (std::abs(sim.time(k) - measured.time(k)) > 1e-9) {
      throw ValidationError("series snapshot times differ");
    }
  }
  long long total = 0;
  for (int k = include_t0 ? 0 : 1; k < sim.size(); ++k) {
    total += mismatch_count(sim.field(k), measured.field(k));
  }
  return total;
}

SimilarityScores similarity_indexes(const ScalarField& a, const ScalarField& b) {
  if (!(a.grid() == b.grid())) throw ValidationError("fields must share a grid");
  const int n = a.size();
  long long both = 0, only_a = 0, only_b = 0, neither = 0;
  for (int k = 0; k < n; ++k) {
    const bool in_a = a[k] >= 0.0;
    const bool in_b = b[k] >= 0.0;
    if (in_a && in_b) ++both;
    else if (in_a) ++only_a;
    else if (in_b) ++only_b;
    else ++neither;
  }
  const long long size_a = both + only_a;
  const long long size_b = both + only_b;
  if (size_a + size_b == 0) {
    throw ValidationError("similarity undefined: both burnt sets are empty");
  }
  const double nn = static_cast<double>(n);
  const double ssi = 2.0 * both / static_cast<double>(size_a + size_b);
  const double jsc = static_cast<double>(both) / static_cast<double>(both + only_a + only_b);
  const double pa = (both + neither) / nn;
  const double pe = (static_cast<double>(size_a) * size_b +
                     static_cast<double>(n - size_a) * (n - size_b)) /
                    (nn * nn);
  if (pe >= 1.0) {
    throw ValidationError("kappa undefined: chance agreement equals 1");
  }
  return {ssi, jsc, (pa - pe) / (1.0 - pe)};
}

double relative_error(std::span<const double> p_hat, std::span<const double> p_star) {
  if (p_hat.size() != p_star.size()) throw ValidationError("parameter sizes differ");
  double num = 0.0, den = 0.0;
  for (std::size_t k = 0; k < p_hat.size(); ++k) {
    const double d = p_hat[k] - p_star[k];
    num += d * d;
    den += p_star[k] * p_star[k];
  }
  if (den == 0.0) throw ValidationError("relative error undefined for zero reference");
  return std::sqrt(num) / std::sqrt(den);
}

}  // namespace firefront
