#include "portfolio/basemap.hpp"

#include <algorithm>
#include <cerrno>
#include <climits>
#include <cmath>
#include <cstdlib>
#include <istream>
#include <stdexcept>
#include <utility>

#include "portfolio/errors.hpp"
#include "portfolio/normalize.hpp"

namespace portfolio {
namespace {

double sq_dist(const MapPoint& a, const MapPoint& b) {
    const double dx = a.x - b.x;
    const double dy = a.y - b.y;
    return dx * dx + dy * dy;
}

// z-component of (a - o) x (b - o): > 0 when o->a->b turns counter-clockwise.
double cross(const MapPoint& o, const MapPoint& a, const MapPoint& b) {
    return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
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

int parse_int_strict(std::string_view s, std::size_t line, const char* what) {
    if (s.empty()) throw ParseError(line, std::string("empty ") + what);
    std::string buf(s);
    errno = 0;
    char* end = nullptr;
    const long v = std::strtol(buf.c_str(), &end, 10);
    if (errno != 0 || end != buf.c_str() + buf.size())
        throw ParseError(line, std::string("malformed ") + what + " '" + buf + "'");
    if (v < INT_MIN || v > INT_MAX)
        throw ParseError(line, std::string(what) + " out of range");
    return static_cast<int>(v);
}

double parse_double_strict(std::string_view s, std::size_t line, const char* what) {
    if (s.empty()) throw ParseError(line, std::string("empty ") + what);
    std::string buf(s);
    errno = 0;
    char* end = nullptr;
    const double v = std::strtod(buf.c_str(), &end);
    if (errno != 0 || end != buf.c_str() + buf.size() || !std::isfinite(v))
        throw ParseError(line, std::string("malformed ") + what + " '" + buf + "'");
    return v;
}

}  // namespace

std::vector<MapPoint> convex_hull(std::vector<MapPoint> points) {
    std::sort(points.begin(), points.end(), [](const MapPoint& a, const MapPoint& b) {
        return a.x < b.x || (a.x == b.x && a.y < b.y);
    });
    points.erase(std::unique(points.begin(), points.end(),
                             [](const MapPoint& a, const MapPoint& b) {
                                 return a.x == b.x && a.y == b.y;
                             }),
                 points.end());
    const std::size_t n = points.size();
    if (n <= 2) return points;

    std::vector<MapPoint> hull(2 * n);
    std::size_t k = 0;
    for (std::size_t i = 0; i < n; ++i) {  // lower chain
        while (k >= 2 && cross(hull[k - 2], hull[k - 1], points[i]) <= 0.0) --k;
        hull[k++] = points[i];
    }
    const std::size_t lower = k + 1;
    for (std::size_t i = n - 1; i-- > 0;) {  // upper chain
        while (k >= lower && cross(hull[k - 2], hull[k - 1], points[i]) <= 0.0) --k;
        hull[k++] = points[i];
    }
    hull.resize(k - 1);  // last point repeats the first
    return hull;
}

double compute_diameter(std::span<const MapPoint> points) {
    if (points.size() < 2) return 0.0;
    const std::vector<MapPoint> hull = convex_hull({points.begin(), points.end()});
    const std::size_t n = hull.size();
    if (n == 1) return 0.0;
    if (n == 2) return std::sqrt(sq_dist(hull[0], hull[1]));

    // Antipodal scan: for each edge (i, i+1), j advances while the far side
    // keeps gaining distance from the edge; every diameter pair shows up as
    // (i, j) or (i+1, j). j sweeps the polygon at most once per full loop.
    double best = 0.0;
    std::size_t j = 1;
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t ni = (i + 1) % n;
        while (true) {
            const std::size_t nj = (j + 1) % n;
            if (cross(hull[i], hull[ni], hull[nj]) > cross(hull[i], hull[ni], hull[j]))
                j = nj;
            else
                break;
        }
        best = std::max({best, sq_dist(hull[i], hull[j]), sq_dist(hull[ni], hull[j])});
    }
    return std::sqrt(best);
}

BaseMap::BaseMap(std::vector<JournalEntry> journals) : journals_(std::move(journals)) {
    if (journals_.empty()) throw std::invalid_argument("base map has no journals");

    std::vector<MapPoint> points;
    points.reserve(journals_.size());
    for (std::size_t i = 0; i < journals_.size(); ++i) {
        const JournalEntry& j = journals_[i];
        if (!by_id_.emplace(j.journal_id, i).second)
            throw std::invalid_argument("duplicate journal id " + std::to_string(j.journal_id));
        points.push_back({j.x, j.y});
    }
    // full titles first so they always shadow abbreviations
    for (const JournalEntry& j : journals_) {
        const std::string key = normalize_title(j.full_title);
        if (key.empty()) continue;
        if (!full_index_.emplace(key, j.journal_id).second)
            warnings_.push_back("duplicate normalized title '" + key + "'; journal " +
                                std::to_string(j.journal_id) + " is shadowed");
    }
    for (const JournalEntry& j : journals_) {
        const std::string key = normalize_title(j.abbrev_title);
        if (key.empty()) continue;
        if (full_index_.count(key) != 0) continue;  // full titles win
        if (!abbrev_index_.emplace(key, j.journal_id).second)
            warnings_.push_back("duplicate normalized abbreviation '" + key + "'; journal " +
                                std::to_string(j.journal_id) + " is shadowed");
    }
    diameter_ = compute_diameter(points);
    if (diameter_ == 0.0)
        warnings_.push_back("degenerate map: all journals share one point, diameter is 0");
}

const JournalEntry& BaseMap::journal(int journal_id) const {
    const auto it = by_id_.find(journal_id);
    if (it == by_id_.end())
        throw std::invalid_argument("unknown journal id " + std::to_string(journal_id));
    return journals_[it->second];
}

std::optional<int> BaseMap::lookup_title(std::string_view raw_title) const {
    const std::string key = normalize_title(raw_title);
    if (key.empty()) return std::nullopt;
    if (const auto it = full_index_.find(key); it != full_index_.end()) return it->second;
    if (const auto it = abbrev_index_.find(key); it != abbrev_index_.end()) return it->second;
    return std::nullopt;
}

BaseMap load_basemap(std::istream& in) {
    std::string line;
    std::size_t line_no = 0;

    if (!std::getline(in, line)) throw ParseError(0, "empty base map file");
    ++line_no;
    if (line.size() >= 3 && line.compare(0, 3, "\xEF\xBB\xBF") == 0) line.erase(0, 3);
    if (!line.empty() && line.back() == '\r') line.pop_back();
    {
        const auto fields = split_tabs(line);
        static const char* expected[] = {"id", "full_title", "abbrev_title", "x", "y", "cluster"};
        if (fields.size() != 6)
            throw ParseError(1, "expected 6 header columns, got " + std::to_string(fields.size()));
        for (std::size_t i = 0; i < 6; ++i)
            if (fields[i] != expected[i])
                throw ParseError(1, "unexpected header column '" + std::string(fields[i]) + "'");
    }

    std::vector<JournalEntry> journals;
    std::unordered_map<int, std::size_t> seen;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto fields = split_tabs(line);
        if (fields.size() != 6)
            throw ParseError(line_no,
                             "expected 6 columns, got " + std::to_string(fields.size()));
        JournalEntry j;
        j.journal_id = parse_int_strict(fields[0], line_no, "journal id");
        if (j.journal_id <= 0) throw ParseError(line_no, "journal id must be positive");
        if (!seen.emplace(j.journal_id, line_no).second)
            throw ParseError(line_no, "duplicate journal id " + std::to_string(j.journal_id));
        j.full_title = std::string(fields[1]);
        j.abbrev_title = std::string(fields[2]);
        if (normalize_title(j.full_title).empty())
            throw ParseError(line_no, "full title normalizes to nothing: '" + j.full_title + "'");
        j.x = parse_double_strict(fields[3], line_no, "x coordinate");
        j.y = parse_double_strict(fields[4], line_no, "y coordinate");
        j.cluster = parse_int_strict(fields[5], line_no, "cluster");
        if (j.cluster < 0) throw ParseError(line_no, "cluster must be non-negative");
        journals.push_back(std::move(j));
    }
    if (journals.empty()) throw ParseError(0, "base map has no data rows");
    return BaseMap(std::move(journals));
}

double disparity(const BaseMap& map, int journal_i, int journal_j) {
    const JournalEntry& a = map.journal(journal_i);
    const JournalEntry& b = map.journal(journal_j);
    if (map.diameter() <= 0.0)
        throw std::domain_error("disparity undefined on a degenerate map (diameter 0)");
    return std::sqrt(sq_dist({a.x, a.y}, {b.x, b.y})) / map.diameter();
}

}  // namespace portfolio
