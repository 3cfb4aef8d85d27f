#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "portfolio/basemap.hpp"

namespace portfolio {

struct RawRow {
    std::string source_title;        // as it appeared in the export
    std::int64_t record_count = 0;   // >= 1
};

// One "Analyze Results" export, before matching: rows in file order.
struct RawPortfolio {
    std::string unit_label;
    std::vector<RawRow> rows;
    std::int64_t total_records = 0;  // sum of row counts
};

// A portfolio resolved against a base map. entries/proportions are keyed by
// journal_id in ascending order; proportions are taken over matched records
// only and sum to 1 (within 1e-12) whenever matched_records > 0.
struct PortfolioDistribution {
    std::string unit_label;
    std::map<int, std::int64_t> entries;
    std::map<int, double> proportions;
    std::int64_t matched_records = 0;
    std::vector<RawRow> unmatched;   // file order, original titles
    double coverage = 0.0;           // matched_records / total_records
    std::vector<std::string> warnings;
};

// Parses a tab-delimited "Analyze Results" export: one row per source title,
// title in column 1, record count in column 2 (thousands separators allowed),
// any further columns ignored. Header/footer lines are detected structurally:
// a second column that does not start with a digit is skipped. Accepts UTF-8
// (with or without BOM) and UTF-16LE with BOM; tolerates CRLF. Throws
// ParseError (with line number) on malformed counts, empty titles, broken
// encoding, or an export with no data rows at all.
RawPortfolio parse_analyze_export(std::istream& in, std::string unit_label);

// Resolves every row against the map via normalized-title lookup. Rows that
// resolve to the same journal are merged by summing counts. Never throws on
// unmatched titles: they are collected verbatim and coverage reflects the
// matched share; zero matches yields empty entries plus a warning.
PortfolioDistribution match_portfolio(const RawPortfolio& raw, const BaseMap& map);

}  // namespace portfolio
