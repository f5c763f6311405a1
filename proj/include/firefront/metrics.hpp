#pragma once

#include <span>

#include "firefront/solver.hpp"

namespace firefront {

// Cells with phi >= 0 count as burnt throughout.
long long burnt_cell_count(const ScalarField& phi);

// Number of cells whose burnt/unburnt state differs between the fields.
long long mismatch_count(const ScalarField& a, const ScalarField& b);

// Total mismatch over paired snapshots (the symmetric-difference cost).
// Both series must share a grid and identical snapshot times; with
// include_t0 = false (the default) the first snapshot is skipped, since
// simulated and measured series both start at the known initial front.
long long cost_J(const FrontSeries& sim, const FrontSeries& measured,
                 bool include_t0 = false);

struct SimilarityScores {
  double ssi;  // Sorensen similarity, 2|A&B| / (|A|+|B|)
  double jsc;  // Jaccard, intersection over union
  double ks;   // Cohen kappa, (Pa - Pe) / (1 - Pe)
};

// Burnt-area overlap between two fields on one grid. Throws
// ValidationError when both burnt sets are empty or chance agreement
// Pe equals 1.
SimilarityScores similarity_indexes(const ScalarField& a, const ScalarField& b);

// ||p_hat - p_star||_2 / ||p_star||_2. Throws when p_star is all zeros.
double relative_error(std::span<const double> p_hat, std::span<const double> p_star);

}  // namespace firefront
