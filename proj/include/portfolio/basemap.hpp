#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace portfolio {

struct MapPoint {
    double x = 0.0;
    double y = 0.0;
};

struct JournalEntry {
    int journal_id = 0;        // positive, unique within a map
    std::string full_title;
    std::string abbrev_title;  // may be empty
    double x = 0.0;
    double y = 0.0;
    int cluster = 0;           // non-negative
};

// Monotone-chain convex hull, counter-clockwise, strictly convex (collinear
// and duplicate points dropped). Exposed for the diameter oracle tests.
std::vector<MapPoint> convex_hull(std::vector<MapPoint> points);

// Exact maximum pairwise Euclidean distance: hull + antipodal-pair scan.
// Equals the naive all-pairs maximum bit-for-bit (both take the max over
// squared distances and apply one final sqrt). 0 for < 2 distinct points.
double compute_diameter(std::span<const MapPoint> points);

// A journal map: fixed coordinates per journal plus title lookup indexes.
// The map diameter is computed once at construction and normalizes all
// pairwise distances into [0, 1].
class BaseMap {
public:
    // Builds indexes and the diameter. Throws std::invalid_argument on an
    // empty journal list or a duplicate journal_id. Duplicate normalized
    // titles are tolerated: first occurrence wins, a warning is recorded.
    explicit BaseMap(std::vector<JournalEntry> journals);

    const std::vector<JournalEntry>& journals() const { return journals_; }
    std::size_t size() const { return journals_.size(); }
    double diameter() const { return diameter_; }

    bool contains(int journal_id) const { return by_id_.count(journal_id) != 0; }

    // Throws std::invalid_argument for an unknown id.
    const JournalEntry& journal(int journal_id) const;

    // Normalizes raw_title and resolves it: full titles take precedence over
    // abbreviated ones. nullopt when unknown or when the title normalizes to "".
    std::optional<int> lookup_title(std::string_view raw_title) const;

    // Construction diagnostics: title collisions, degenerate (diameter 0) map.
    const std::vector<std::string>& warnings() const { return warnings_; }

private:
    std::vector<JournalEntry> journals_;
    std::unordered_map<int, std::size_t> by_id_;
    std::unordered_map<std::string, int> full_index_;    // normalized full title -> id
    std::unordered_map<std::string, int> abbrev_index_;  // normalized abbrev -> id
    double diameter_ = 0.0;
    std::vector<std::string> warnings_;
};

// Reads the tab-separated map format:
//   id \t full_title \t abbrev_title \t x \t y \t cluster
// One header line, one row per journal, UTF-8. Throws ParseError with the
// offending line number on any malformed content; empty input is an error.
BaseMap load_basemap(std::istream& in);

// Normalized distance d(i,j) = euclidean(i,j) / diameter, in [0, 1]; the
// diameter pair itself yields exactly 1. Throws std::invalid_argument for
// unknown ids and std::domain_error when the map is degenerate (diameter 0).
double disparity(const BaseMap& map, int journal_i, int journal_j);

}  // namespace portfolio
