#include "portfolio/matrix.hpp"

#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <istream>
#include <ostream>
#include <utility>

#include "portfolio/errors.hpp"

namespace portfolio {
namespace {

void check_label(const std::string& label) {
    if (label.empty()) throw DataError("unit label is empty");
    if (label.find_first_of("\t\n\r") != std::string::npos)
        throw DataError("unit label '" + label + "' contains tab or newline");
}

std::vector<std::string_view> split_tabs(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
        const std::size_t tab = line.find('\t', start);
        if (tab == std::string_view::npos) {
            fields.push_back(line.substr(start));
            return fields;
        }
        fields.push_back(line.substr(start, tab - start));
        start = tab + 1;
    }
}

std::int64_t parse_int64(std::string_view s, std::size_t line, const char* what) {
    if (s.empty()) throw ParseError(line, std::string("empty ") + what);
    std::string buf(s);
    errno = 0;
    char* end = nullptr;
    const long long v = std::strtoll(buf.c_str(), &end, 10);
    if (errno != 0 || end != buf.c_str() + buf.size())
        throw ParseError(line, std::string("malformed ") + what + " '" + buf + "'");
    return v;
}

}  // namespace

PortfolioMatrix::PortfolioMatrix(const BaseMap& map) {
    journal_ids_.reserve(map.size());
    for (const JournalEntry& j : map.journals()) {
        row_of_.emplace(j.journal_id, journal_ids_.size());
        journal_ids_.push_back(j.journal_id);
    }
}

PortfolioMatrix::PortfolioMatrix(const BaseMap& map, std::vector<std::string> unit_labels,
                                 std::vector<std::vector<std::int64_t>> columns)
    : PortfolioMatrix(map) {
    if (unit_labels.size() != columns.size())
        throw DataError("matrix has " + std::to_string(unit_labels.size()) + " labels but " +
                        std::to_string(columns.size()) + " columns");
    for (const auto& label : unit_labels) check_label(label);
    for (std::size_t u = 0; u < unit_labels.size(); ++u) {
        for (std::size_t v = u + 1; v < unit_labels.size(); ++v)
            if (unit_labels[u] == unit_labels[v])
                throw DataError("duplicate unit label '" + unit_labels[u] + "'");
        if (columns[u].size() != journal_ids_.size())
            throw DataError("column '" + unit_labels[u] + "' has " +
                            std::to_string(columns[u].size()) + " rows, map has " +
                            std::to_string(journal_ids_.size()));
    }
    unit_labels_ = std::move(unit_labels);
    columns_ = std::move(columns);
}

std::optional<std::size_t> PortfolioMatrix::unit_index(std::string_view label) const {
    for (std::size_t u = 0; u < unit_labels_.size(); ++u)
        if (unit_labels_[u] == label) return u;
    return std::nullopt;
}

std::int64_t PortfolioMatrix::column_sum(std::size_t unit) const {
    std::int64_t sum = 0;
    for (const std::int64_t v : columns_[unit]) sum += v;
    return sum;
}

void PortfolioMatrix::upsert(const PortfolioDistribution& dist) {
    check_label(dist.unit_label);
    std::vector<std::int64_t> column(journal_ids_.size(), 0);
    for (const auto& [id, count] : dist.entries) {
        const auto it = row_of_.find(id);
        if (it == row_of_.end())
            throw DataError("unit '" + dist.unit_label + "' refers to journal " +
                            std::to_string(id) + " outside the matrix base map");
        column[it->second] = count;
    }
    if (const auto existing = unit_index(dist.unit_label)) {
        columns_[*existing] = std::move(column);
    } else {
        unit_labels_.push_back(dist.unit_label);
        columns_.push_back(std::move(column));
    }
}

SimilarityMatrix cosine_matrix(const PortfolioMatrix& matrix) {
    const std::size_t n = matrix.unit_count();
    if (n < 2)
        throw DataError("cosine similarity needs at least 2 units, have " + std::to_string(n));

    std::vector<double> norm(n, 0.0);
    for (std::size_t u = 0; u < n; ++u) {
        std::int64_t dot = 0;
        for (const std::int64_t v : matrix.column(u)) dot += v * v;
        norm[u] = std::sqrt(static_cast<double>(dot));
    }

    SimilarityMatrix sim;
    sim.unit_labels = matrix.unit_labels();
    sim.kind = SimilarityKind::cosine;
    sim.values.assign(n * n, 0.0);
    for (std::size_t u = 0; u < n; ++u)
        if (norm[u] == 0.0)
            sim.warnings.push_back("unit '" + matrix.unit_labels()[u] +
                                   "' has no records; cosine undefined, scored 0");

    for (std::size_t a = 0; a < n; ++a) {
        if (norm[a] > 0.0) sim.values[a * n + a] = 1.0;
        for (std::size_t b = a + 1; b < n; ++b) {
            if (norm[a] == 0.0 || norm[b] == 0.0) continue;
            std::int64_t dot = 0;
            const auto& ca = matrix.column(a);
            const auto& cb = matrix.column(b);
            for (std::size_t r = 0; r < ca.size(); ++r) dot += ca[r] * cb[r];
            double v = static_cast<double>(dot) / (norm[a] * norm[b]);
            if (v < 0.0) v = 0.0;
            if (v > 1.0) v = 1.0;  // guard rounding above the exact bound
            sim.values[a * n + b] = v;
            sim.values[b * n + a] = v;
        }
    }
    return sim;
}

SimilarityMatrix cooccurrence_matrix(const PortfolioMatrix& matrix) {
    const std::size_t n = matrix.unit_count();
    if (n < 2)
        throw DataError("co-occurrence needs at least 2 units, have " + std::to_string(n));
    SimilarityMatrix sim;
    sim.unit_labels = matrix.unit_labels();
    sim.kind = SimilarityKind::cooccurrence;
    sim.values.assign(n * n, 0.0);
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = a; b < n; ++b) {
            std::int64_t dot = 0;
            const auto& ca = matrix.column(a);
            const auto& cb = matrix.column(b);
            for (std::size_t r = 0; r < ca.size(); ++r) dot += ca[r] * cb[r];
            const double v = static_cast<double>(dot);
            sim.values[a * n + b] = v;
            sim.values[b * n + a] = v;
        }
    }
    return sim;
}

void write_matrix_ledger(const PortfolioMatrix& matrix, std::ostream& out) {
    out << "journal_id";
    for (const std::string& label : matrix.unit_labels()) out << '\t' << label;
    out << '\n';
    for (std::size_t r = 0; r < matrix.journal_count(); ++r) {
        out << matrix.journal_ids()[r];
        for (std::size_t u = 0; u < matrix.unit_count(); ++u) out << '\t' << matrix.column(u)[r];
        out << '\n';
    }
    if (!out) throw std::runtime_error("failed writing matrix ledger");
}

PortfolioMatrix read_matrix_ledger(std::istream& in, const BaseMap& map) {
    std::string line;
    if (!std::getline(in, line)) throw ParseError(0, "matrix ledger is empty");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    auto header = split_tabs(line);
    if (header.empty() || header[0] != "journal_id")
        throw ParseError(1, "matrix ledger header must start with 'journal_id'");
    std::vector<std::string> labels;
    for (std::size_t i = 1; i < header.size(); ++i) {
        labels.emplace_back(header[i]);
        if (labels.back().empty()) throw ParseError(1, "empty unit label in header");
        for (std::size_t k = 0; k + 1 < labels.size(); ++k)
            if (labels[k] == labels.back())
                throw ParseError(1, "duplicate unit label '" + labels.back() + "'");
    }

    std::vector<std::vector<std::int64_t>> columns(labels.size());
    std::size_t line_no = 1;
    std::size_t row = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto fields = split_tabs(line);
        if (fields.size() != labels.size() + 1)
            throw ParseError(line_no, "expected " + std::to_string(labels.size() + 1) +
                                          " columns, got " + std::to_string(fields.size()));
        const std::int64_t id = parse_int64(fields[0], line_no, "journal id");
        if (row >= map.size() || id != map.journals()[row].journal_id)
            throw DataError("matrix ledger does not match the configured base map (row " +
                            std::to_string(line_no) + " has journal " + std::to_string(id) + ")");
        for (std::size_t u = 0; u < labels.size(); ++u) {
            const std::int64_t v = parse_int64(fields[u + 1], line_no, "count");
            if (v < 0) throw ParseError(line_no, "negative count");
            columns[u].push_back(v);
        }
        ++row;
    }
    if (row != map.size())
        throw DataError("matrix ledger has " + std::to_string(row) + " journal rows, map has " +
                        std::to_string(map.size()));
    return PortfolioMatrix(map, std::move(labels), std::move(columns));
}

}  // namespace portfolio
