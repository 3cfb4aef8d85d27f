#pragma once

#include <cstdint>
#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "portfolio/basemap.hpp"
#include "portfolio/ingest.hpp"
#include "portfolio/matrix.hpp"

namespace portfolio {

struct OverlayEntry {
    int id = 0;
    std::string label;
    double x = 0.0;
    double y = 0.0;
    int cluster = 0;
    std::int64_t weight = 0;
};

// A base map with one unit's record counts as node weights: one entry per
// map journal in map order, weight 0 where the unit has no records.
struct OverlayMap {
    std::vector<OverlayEntry> entries;
};

OverlayMap build_overlay(const BaseMap& map, const PortfolioDistribution& dist);

// Degenerate overlay used for unit-level maps: ids 1..n, origin coordinates,
// cluster 0, weight = the unit's matched record total.
OverlayMap unit_overlay(const std::vector<std::string>& labels,
                        const std::vector<std::int64_t>& weights);

// All writers emit UTF-8 with LF line endings, fixed decimal places, and no
// locale dependence: identical input yields identical bytes. They throw
// std::invalid_argument on labels the format cannot carry and
// std::runtime_error when the stream fails.

// Tab-separated map file, header id/label/x/y/cluster/weight, coordinates
// with 4 decimals. Returns the number of entries written.
std::size_t write_vos_map(const OverlayMap& overlay, std::ostream& out);

// Pair list "i j strength" (tab-separated, 1-based, i < j, 6 decimals);
// only pairs with strength > 0 appear.
void write_vos_network(const SimilarityMatrix& sim, std::ostream& out);

// Pajek .net: *Vertices with quoted labels, *Edges with 6-decimal weights,
// upper triangle only. Labels containing '"' are rejected.
void write_pajek(const SimilarityMatrix& sim, std::ostream& out);

// Reads a Pajek .net written by write_pajek or by hand: *Vertices, then
// *Edges/*Arcs sections ("*Arcs" is symmetrized). Missing pairs are 0;
// vertex indexes out of range raise ParseError with the line number. The
// format carries no kind marker, so the result is tagged cosine.
SimilarityMatrix read_pajek(std::istream& in);

// UCINET DL fullmatrix: "dl n=N format=fullmatrix", labels:, data: with
// space-separated rows. cosine values use 6 decimals, cooccurrence values
// are written as integers.
void write_ucinet_dl(const SimilarityMatrix& sim, std::ostream& out);

// RFC-4180 CSV, header row of labels, first column = row key. Similarity
// cells follow the ucinet precision rules; count cells are integers.
void write_csv_matrix(const SimilarityMatrix& sim, std::ostream& out);
void write_csv_matrix(const PortfolioMatrix& matrix, std::ostream& out);

}  // namespace portfolio
