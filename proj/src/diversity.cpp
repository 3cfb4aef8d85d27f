#include "portfolio/diversity.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace portfolio {

double rao_stirling(const PortfolioDistribution& dist, const BaseMap& map) {
    if (dist.entries.empty())
        throw std::invalid_argument("rao_stirling: distribution has no matched journals");
    if (map.diameter() <= 0.0)
        throw std::domain_error("rao_stirling: degenerate map (diameter 0), diversity undefined");

    // Flatten in ascending journal-id order (the map key order) so the
    // summation order is fixed: proportions and coordinates side by side.
    const std::size_t n = dist.proportions.size();
    std::vector<double> p, xs, ys;
    p.reserve(n);
    xs.reserve(n);
    ys.reserve(n);
    for (const auto& [id, prop] : dist.proportions) {
        const JournalEntry& j = map.journal(id);
        p.push_back(prop);
        xs.push_back(j.x);
        ys.push_back(j.y);
    }

    // Kahan-compensated sum over the upper triangle, ascending (i, j); the
    // ordered-pair total is twice that. Fixed order + compensation keeps the
    // result bit-identical from run to run.
    const double diam = map.diameter();
    double sum = 0.0;
    double comp = 0.0;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double dx = xs[i] - xs[j];
            const double dy = ys[i] - ys[j];
            const double term = p[i] * p[j] * (std::sqrt(dx * dx + dy * dy) / diam);
            const double y = term - comp;
            const double t = sum + y;
            comp = (t - sum) - y;
            sum = t;
        }
    }
    return 2.0 * sum;
}

double true_diversity(double delta) {
    if (!(delta >= 0.0) || delta >= 1.0)
        throw std::domain_error("true_diversity: delta must lie in [0, 1)");
    return 1.0 / (1.0 - delta);
}

DiversityReport diversity_report(const PortfolioDistribution& dist, const BaseMap& map) {
    DiversityReport report;
    report.unit_label = dist.unit_label;
    report.delta = rao_stirling(dist, map);
    report.true_diversity = true_diversity(report.delta);
    report.n_journals = static_cast<std::int64_t>(dist.entries.size());
    report.matched_records = dist.matched_records;
    report.coverage = dist.coverage;
    return report;
}

}  // namespace portfolio
