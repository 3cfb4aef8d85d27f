#include "portfolio/export.hpp"

#include <cctype>
#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "portfolio/errors.hpp"

namespace portfolio {
namespace {

// snprintf-based: identical bytes for identical doubles, no locale, no
// exponent form. Exact zero is canonicalized so -0.0 cannot print a sign.
std::string fixed(double v, int places) {
    if (v == 0.0) v = 0.0;
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", places, v);
    return buf;
}

std::string similarity_cell(const SimilarityMatrix& sim, std::size_t a, std::size_t b) {
    if (sim.kind == SimilarityKind::cooccurrence) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%lld",
                      static_cast<long long>(std::llround(sim.at(a, b))));
        return buf;
    }
    return fixed(sim.at(a, b), 6);
}

void require_stream(const std::ostream& out, const char* what) {
    if (!out) throw std::runtime_error(std::string("failed writing ") + what);
}

std::string csv_escape(const std::string& field) {
    if (field.find_first_of(",\"\n\r") == std::string::npos) return field;
    std::string out = "\"";
    for (const char c : field) {
        if (c == '"') out += "\"\"";
        else out.push_back(c);
    }
    out += '"';
    return out;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r'))
        s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
        s.remove_suffix(1);
    return s;
}

bool iequals(std::string_view a, std::string_view b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (std::tolower(static_cast<unsigned char>(a[i])) !=
            std::tolower(static_cast<unsigned char>(b[i])))
            return false;
    return true;
}

}  // namespace

OverlayMap build_overlay(const BaseMap& map, const PortfolioDistribution& dist) {
    OverlayMap overlay;
    overlay.entries.reserve(map.size());
    for (const JournalEntry& j : map.journals()) {
        OverlayEntry e;
        e.id = j.journal_id;
        e.label = j.full_title;
        e.x = j.x;
        e.y = j.y;
        e.cluster = j.cluster;
        const auto it = dist.entries.find(j.journal_id);
        e.weight = it == dist.entries.end() ? 0 : it->second;
        overlay.entries.push_back(std::move(e));
    }
    return overlay;
}

OverlayMap unit_overlay(const std::vector<std::string>& labels,
                        const std::vector<std::int64_t>& weights) {
    if (labels.size() != weights.size())
        throw std::invalid_argument("unit_overlay: labels and weights differ in length");
    OverlayMap overlay;
    overlay.entries.reserve(labels.size());
    for (std::size_t i = 0; i < labels.size(); ++i)
        overlay.entries.push_back(
            {static_cast<int>(i) + 1, labels[i], 0.0, 0.0, 0, weights[i]});
    return overlay;
}

std::size_t write_vos_map(const OverlayMap& overlay, std::ostream& out) {
    out << "id\tlabel\tx\ty\tcluster\tweight\n";
    for (const OverlayEntry& e : overlay.entries) {
        if (e.label.find_first_of("\t\n\r") != std::string::npos)
            throw std::invalid_argument("label '" + e.label + "' cannot be written to a map file");
        out << e.id << '\t' << e.label << '\t' << fixed(e.x, 4) << '\t' << fixed(e.y, 4) << '\t'
            << e.cluster << '\t' << e.weight << '\n';
    }
    require_stream(out, "map file");
    return overlay.entries.size();
}

void write_vos_network(const SimilarityMatrix& sim, std::ostream& out) {
    const std::size_t n = sim.size();
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = a + 1; b < n; ++b)
            if (sim.at(a, b) > 0.0)
                out << (a + 1) << '\t' << (b + 1) << '\t' << fixed(sim.at(a, b), 6) << '\n';
    require_stream(out, "network file");
}

void write_pajek(const SimilarityMatrix& sim, std::ostream& out) {
    const std::size_t n = sim.size();
    out << "*Vertices " << n << '\n';
    for (std::size_t i = 0; i < n; ++i) {
        const std::string& label = sim.unit_labels[i];
        if (label.find('"') != std::string::npos)
            throw std::invalid_argument("pajek label '" + label + "' contains a quote");
        if (label.find_first_of("\n\r") != std::string::npos)
            throw std::invalid_argument("pajek label contains a line break");
        out << (i + 1) << " \"" << label << "\"\n";
    }
    out << "*Edges\n";
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = a + 1; b < n; ++b)
            if (sim.at(a, b) > 0.0)
                out << (a + 1) << ' ' << (b + 1) << ' ' << fixed(sim.at(a, b), 6) << '\n';
    require_stream(out, "pajek file");
}

SimilarityMatrix read_pajek(std::istream& in) {
    std::string raw_line;
    std::size_t line_no = 0;
    std::size_t n = 0;
    bool have_vertices = false;
    enum class Section { vertices, edges } section = Section::vertices;
    SimilarityMatrix sim;
    sim.kind = SimilarityKind::cosine;
    std::vector<std::string> labels;

    const auto parse_index = [&](std::string_view token) -> std::size_t {
        std::string buf{token};
        errno = 0;
        char* end = nullptr;
        const long long v = std::strtoll(buf.c_str(), &end, 10);
        if (errno != 0 || end != buf.c_str() + buf.size() || v < 1 ||
            static_cast<std::size_t>(v) > n)
            throw ParseError(line_no, "vertex index '" + buf + "' out of range 1.." +
                                          std::to_string(n));
        return static_cast<std::size_t>(v);
    };

    while (std::getline(in, raw_line)) {
        ++line_no;
        std::string_view line = trim(raw_line);
        if (line.empty()) continue;
        if (line[0] == '*') {
            const std::size_t space = line.find_first_of(" \t");
            const std::string_view word = line.substr(0, space);
            if (iequals(word, "*vertices")) {
                if (space == std::string_view::npos)
                    throw ParseError(line_no, "*Vertices without a count");
                const std::string count{trim(line.substr(space))};
                errno = 0;
                char* end = nullptr;
                const long long v = std::strtoll(count.c_str(), &end, 10);
                if (errno != 0 || end != count.c_str() + count.size() || v < 0)
                    throw ParseError(line_no, "malformed vertex count '" + count + "'");
                n = static_cast<std::size_t>(v);
                labels.assign(n, "");
                for (std::size_t i = 0; i < n; ++i) labels[i] = std::to_string(i + 1);
                sim.values.assign(n * n, 0.0);
                have_vertices = true;
                section = Section::vertices;
            } else if (iequals(word, "*edges") || iequals(word, "*arcs")) {
                if (!have_vertices) throw ParseError(line_no, "section before *Vertices");
                section = Section::edges;
            } else {
                throw ParseError(line_no, "unsupported section '" + std::string(word) + "'");
            }
            continue;
        }
        if (!have_vertices) throw ParseError(line_no, "data before *Vertices");

        std::istringstream fields{std::string(line)};
        if (section == Section::vertices) {
            std::string index_token;
            fields >> index_token;
            const std::size_t idx = parse_index(index_token);
            std::string rest;
            std::getline(fields, rest);
            std::string_view label = trim(rest);
            if (!label.empty() && label.front() == '"') {
                const std::size_t close = label.find('"', 1);
                if (close == std::string_view::npos)
                    throw ParseError(line_no, "unterminated quoted label");
                label = label.substr(1, close - 1);
            } else if (const std::size_t sp = label.find_first_of(" \t");
                       sp != std::string_view::npos) {
                label = label.substr(0, sp);  // ignore trailing coordinates
            }
            if (!label.empty()) labels[idx - 1] = std::string(label);
        } else {
            std::string ta, tb;
            fields >> ta >> tb;
            if (tb.empty()) throw ParseError(line_no, "edge needs two endpoints");
            const std::size_t a = parse_index(ta);
            const std::size_t b = parse_index(tb);
            double w = 1.0;
            std::string tw;
            if (fields >> tw) {
                errno = 0;
                char* end = nullptr;
                w = std::strtod(tw.c_str(), &end);
                if (errno != 0 || end != tw.c_str() + tw.size() || !std::isfinite(w))
                    throw ParseError(line_no, "malformed edge weight '" + tw + "'");
            }
            sim.values[(a - 1) * n + (b - 1)] = w;
            sim.values[(b - 1) * n + (a - 1)] = w;
        }
    }
    if (!have_vertices) throw ParseError(line_no == 0 ? 0 : 1, "missing *Vertices section");
    sim.unit_labels = std::move(labels);
    return sim;
}

void write_ucinet_dl(const SimilarityMatrix& sim, std::ostream& out) {
    const std::size_t n = sim.size();
    out << "dl n=" << n << " format=fullmatrix\n";
    out << "labels:\n";
    for (std::size_t i = 0; i < n; ++i) {
        const std::string& label = sim.unit_labels[i];
        if (label.find_first_of("\"\n\r") != std::string::npos)
            throw std::invalid_argument("ucinet label '" + label + "' contains a quote or break");
        if (i > 0) out << ',';
        if (label.find_first_of(" ,") != std::string::npos)
            out << '"' << label << '"';
        else
            out << label;
    }
    out << '\n';
    out << "data:\n";
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = 0; b < n; ++b) {
            if (b > 0) out << ' ';
            out << similarity_cell(sim, a, b);
        }
        out << '\n';
    }
    require_stream(out, "ucinet file");
}

void write_csv_matrix(const SimilarityMatrix& sim, std::ostream& out) {
    const std::size_t n = sim.size();
    out << "unit";
    for (const std::string& label : sim.unit_labels) out << ',' << csv_escape(label);
    out << '\n';
    for (std::size_t a = 0; a < n; ++a) {
        out << csv_escape(sim.unit_labels[a]);
        for (std::size_t b = 0; b < n; ++b) out << ',' << similarity_cell(sim, a, b);
        out << '\n';
    }
    require_stream(out, "csv file");
}

void write_csv_matrix(const PortfolioMatrix& matrix, std::ostream& out) {
    out << "journal_id";
    for (const std::string& label : matrix.unit_labels()) out << ',' << csv_escape(label);
    out << '\n';
    for (std::size_t r = 0; r < matrix.journal_count(); ++r) {
        out << matrix.journal_ids()[r];
        for (std::size_t u = 0; u < matrix.unit_count(); ++u)
            out << ',' << matrix.column(u)[r];
        out << '\n';
    }
    require_stream(out, "csv file");
}

}  // namespace portfolio
