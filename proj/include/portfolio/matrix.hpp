#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "portfolio/basemap.hpp"
#include "portfolio/ingest.hpp"

namespace portfolio {

enum class SimilarityKind { cosine, cooccurrence };

// Symmetric unit-by-unit matrix. values is row-major n*n and exactly
// symmetric by construction. cosine: entries in [0, 1], diagonal 1 for units
// with any matched records (all-zero units score 0 everywhere and add a
// warning). cooccurrence: M * M^T of the count matrix, integer-valued.
struct SimilarityMatrix {
    std::vector<std::string> unit_labels;
    std::vector<double> values;
    SimilarityKind kind = SimilarityKind::cosine;
    std::vector<std::string> warnings;

    std::size_t size() const { return unit_labels.size(); }
    double at(std::size_t a, std::size_t b) const { return values[a * unit_labels.size() + b]; }
};

// Journals-by-units count matrix over the full base-map journal axis, in
// base-map row order. Zero rows are kept so columns stay comparable across
// units; each column sums to that unit's matched_records.
class PortfolioMatrix {
public:
    // Empty matrix (no units) over the map's journal axis.
    explicit PortfolioMatrix(const BaseMap& map);

    // Pre-populated matrix; every column must have one count per map journal.
    // Throws DataError on a dimension mismatch or duplicate/invalid labels.
    PortfolioMatrix(const BaseMap& map, std::vector<std::string> unit_labels,
                    std::vector<std::vector<std::int64_t>> columns);

    const std::vector<int>& journal_ids() const { return journal_ids_; }
    const std::vector<std::string>& unit_labels() const { return unit_labels_; }
    std::size_t journal_count() const { return journal_ids_.size(); }
    std::size_t unit_count() const { return unit_labels_.size(); }

    const std::vector<std::int64_t>& column(std::size_t unit) const { return columns_[unit]; }
    std::optional<std::size_t> unit_index(std::string_view label) const;
    std::int64_t column_sum(std::size_t unit) const;

    // Inserts the unit's column, or replaces it when the label already
    // exists; idempotent for identical input. Journals absent from the
    // distribution get 0. Throws DataError if the distribution refers to a
    // journal outside this matrix's axis or carries an unusable label.
    void upsert(const PortfolioDistribution& dist);

private:
    std::vector<int> journal_ids_;
    std::unordered_map<int, std::size_t> row_of_;
    std::vector<std::string> unit_labels_;
    std::vector<std::vector<std::int64_t>> columns_;  // columns_[unit][row]
};

// Cosine similarity between unit columns; requires >= 2 units (DataError).
SimilarityMatrix cosine_matrix(const PortfolioMatrix& matrix);

// Co-occurrence (affiliation projection) M * M^T, accumulated in 64-bit
// integers; diagonal = sum of squared counts. Requires >= 2 units.
SimilarityMatrix cooccurrence_matrix(const PortfolioMatrix& matrix);

// Ledger format: header "journal_id" + one column per unit, tab-separated,
// then one row per base-map journal in map order. Byte-deterministic.
void write_matrix_ledger(const PortfolioMatrix& matrix, std::ostream& out);

// Parses a ledger and validates it against the configured map: the journal
// axis must match the map's ids in order (DataError otherwise); malformed
// rows raise ParseError with the line number.
PortfolioMatrix read_matrix_ledger(std::istream& in, const BaseMap& map);

}  // namespace portfolio
