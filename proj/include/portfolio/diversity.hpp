#pragma once

#include <cstdint>
#include <string>

#include "portfolio/basemap.hpp"
#include "portfolio/ingest.hpp"

namespace portfolio {

struct DiversityReport {
    std::string unit_label;
    double delta = 0.0;            // Rao-Stirling diversity, in [0, 1)
    double true_diversity = 1.0;   // 1 / (1 - delta), in [1, inf)
    std::int64_t n_journals = 0;   // distinct matched journals
    std::int64_t matched_records = 0;
    double coverage = 0.0;
};

// Rao-Stirling diversity: delta = sum over ordered pairs (i, j), i != j, of
// p_i * p_j * d(i, j), computed as 2 * sum_{i<j}. Only journals with nonzero
// proportion contribute; the sum runs in ascending (i, j) journal-id order
// with Kahan compensation, so results are bit-reproducible across runs.
// Requires a non-empty distribution and a non-degenerate map: throws
// std::invalid_argument / std::domain_error otherwise. A single-journal
// portfolio has delta = 0.
double rao_stirling(const PortfolioDistribution& dist, const BaseMap& map);

// True diversity of order 2: 1 / (1 - delta). Monotone in delta, 1 at
// delta = 0. Throws std::domain_error unless delta lies in [0, 1).
double true_diversity(double delta);

// Bundles delta, true diversity, and the match statistics for one unit.
DiversityReport diversity_report(const PortfolioDistribution& dist, const BaseMap& map);

}  // namespace portfolio
