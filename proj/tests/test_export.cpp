#include "doctest.h"

#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "portfolio/basemap.hpp"
#include "portfolio/errors.hpp"
#include "portfolio/export.hpp"
#include "portfolio/ingest.hpp"
#include "portfolio/matrix.hpp"

using portfolio::BaseMap;
using portfolio::OverlayMap;
using portfolio::SimilarityKind;
using portfolio::SimilarityMatrix;

namespace {

BaseMap tiny_map() {
    return BaseMap({
        {1, "NATURE", "", 0.0, 0.0, 1},
        {2, "SCIENCE", "", 1.0, 0.0, 1},
        {3, "CELL", "", 0.0, 1.0, 2},
    });
}

portfolio::PortfolioDistribution dist_of(std::string label,
                                         const std::vector<std::pair<int, std::int64_t>>& counts) {
    portfolio::PortfolioDistribution d;
    d.unit_label = std::move(label);
    for (const auto& [id, c] : counts) {
        d.entries[id] += c;
        d.matched_records += c;
    }
    for (const auto& [id, c] : d.entries)
        d.proportions[id] = static_cast<double>(c) / static_cast<double>(d.matched_records);
    d.coverage = 1.0;
    return d;
}

SimilarityMatrix two_unit(SimilarityKind kind, double off, double diag0, double diag1) {
    SimilarityMatrix s;
    s.unit_labels = {"UvA", "Pfizer"};
    s.kind = kind;
    s.values = {diag0, off, off, diag1};
    return s;
}

}  // namespace

TEST_CASE("build_overlay covers every map journal, weights from the unit") {
    BaseMap map = tiny_map();
    auto dist = dist_of("NL", {{1, 2}, {3, 1}});
    OverlayMap overlay = portfolio::build_overlay(map, dist);
    REQUIRE(overlay.entries.size() == 3);
    CHECK(overlay.entries[0].id == 1);
    CHECK(overlay.entries[0].label == "NATURE");
    CHECK(overlay.entries[0].weight == 2);
    CHECK(overlay.entries[1].weight == 0);
    CHECK(overlay.entries[2].weight == 1);
    CHECK(overlay.entries[2].cluster == 2);
}

TEST_CASE("write_vos_map golden bytes") {
    BaseMap map = tiny_map();
    OverlayMap overlay = portfolio::build_overlay(map, dist_of("NL", {{1, 2}, {3, 1}}));
    std::ostringstream out;
    CHECK(portfolio::write_vos_map(overlay, out) == 3);
    const std::string golden =
        "id\tlabel\tx\ty\tcluster\tweight\n"
        "1\tNATURE\t0.0000\t0.0000\t1\t2\n"
        "2\tSCIENCE\t1.0000\t0.0000\t1\t0\n"
        "3\tCELL\t0.0000\t1.0000\t2\t1\n";
    CHECK(out.str() == golden);

    std::ostringstream again;
    portfolio::write_vos_map(overlay, again);
    CHECK(again.str() == out.str());
}

TEST_CASE("unit_overlay places units at the origin with their totals") {
    auto overlay = portfolio::unit_overlay({"NL", "DE"}, {14, 3});
    std::ostringstream out;
    portfolio::write_vos_map(overlay, out);
    CHECK(out.str() ==
          "id\tlabel\tx\ty\tcluster\tweight\n"
          "1\tNL\t0.0000\t0.0000\t0\t14\n"
          "2\tDE\t0.0000\t0.0000\t0\t3\n");
}

TEST_CASE("write_vos_network: upper triangle, positive strengths only") {
    SimilarityMatrix s;
    s.unit_labels = {"A", "B", "C"};
    s.kind = SimilarityKind::cosine;
    s.values = {1.0, 0.8, 0.0,
                0.8, 1.0, 0.25,
                0.0, 0.25, 1.0};
    std::ostringstream out;
    portfolio::write_vos_network(s, out);
    CHECK(out.str() == "1\t2\t0.800000\n2\t3\t0.250000\n");
}

TEST_CASE("pajek writer golden bytes and round-trip") {
    auto s = two_unit(SimilarityKind::cosine, 0.8, 1.0, 1.0);
    std::ostringstream out;
    portfolio::write_pajek(s, out);
    const std::string golden =
        "*Vertices 2\n"
        "1 \"UvA\"\n"
        "2 \"Pfizer\"\n"
        "*Edges\n"
        "1 2 0.800000\n";
    CHECK(out.str() == golden);

    SUBCASE("write -> read is the identity on labels and values") {
        std::istringstream in(out.str());
        SimilarityMatrix back = portfolio::read_pajek(in);
        REQUIRE(back.size() == 2);
        CHECK(back.unit_labels == s.unit_labels);
        CHECK(std::abs(back.at(0, 1) - 0.8) <= 1e-6);
        CHECK(back.at(1, 0) == back.at(0, 1));
    }
    SUBCASE("random matrices survive the round-trip within 1e-6") {
        std::mt19937 rng(2024);
        std::uniform_real_distribution<double> val(0.0, 1.0);
        for (int rep = 0; rep < 20; ++rep) {
            std::uniform_int_distribution<int> n_of(2, 9);
            const std::size_t n = static_cast<std::size_t>(n_of(rng));
            SimilarityMatrix m;
            m.kind = SimilarityKind::cosine;
            for (std::size_t i = 0; i < n; ++i) m.unit_labels.push_back("U" + std::to_string(i));
            m.values.assign(n * n, 0.0);
            for (std::size_t a = 0; a < n; ++a) {
                m.values[a * n + a] = 1.0;
                for (std::size_t b = a + 1; b < n; ++b) {
                    double v = val(rng);
                    if (v < 0.2) v = 0.0;  // keep some holes
                    m.values[a * n + b] = m.values[b * n + a] = v;
                }
            }
            std::ostringstream o;
            portfolio::write_pajek(m, o);
            std::istringstream i2(o.str());
            SimilarityMatrix back = portfolio::read_pajek(i2);
            REQUIRE(back.size() == n);
            CHECK(back.unit_labels == m.unit_labels);
            for (std::size_t a = 0; a < n; ++a)
                for (std::size_t b = 0; b < n; ++b) {
                    if (a == b) continue;  // diagonal is not serialized
                    CHECK(std::abs(back.at(a, b) - m.at(a, b)) <= 1e-6);
                }
        }
    }
    SUBCASE("labels with embedded quotes are rejected") {
        SimilarityMatrix bad = two_unit(SimilarityKind::cosine, 0.5, 1.0, 1.0);
        bad.unit_labels[0] = "Uv\"A";
        std::ostringstream o;
        CHECK_THROWS_AS(portfolio::write_pajek(bad, o), std::invalid_argument);
    }
}

TEST_CASE("read_pajek accepts hand-written files") {
    SUBCASE("*Arcs are symmetrized") {
        std::istringstream in(
            "*Vertices 3\n1 \"A\"\n2 \"B\"\n3 \"C\"\n*Arcs\n2 1 0.5\n3 1 0.125\n");
        auto m = portfolio::read_pajek(in);
        CHECK(m.at(0, 1) == 0.5);
        CHECK(m.at(1, 0) == 0.5);
        CHECK(m.at(0, 2) == 0.125);
        CHECK(m.at(2, 0) == 0.125);
        CHECK(m.at(1, 2) == 0.0);
    }
    SUBCASE("unquoted labels and missing weights default to 1") {
        std::istringstream in("*Vertices 2\n1 Alpha\n2 Beta\n*Edges\n1 2\n");
        auto m = portfolio::read_pajek(in);
        CHECK(m.unit_labels[0] == "Alpha");
        CHECK(m.at(0, 1) == 1.0);
    }
    SUBCASE("vertex index out of range") {
        std::istringstream in("*Vertices 2\n1 \"A\"\n5 \"X\"\n");
        try {
            (void)portfolio::read_pajek(in);
            FAIL_CHECK("expected ParseError");
        } catch (const portfolio::ParseError& e) {
            CHECK(e.line() == 3);
        }
    }
    SUBCASE("edge endpoint out of range") {
        std::istringstream in("*Vertices 2\n1 \"A\"\n2 \"B\"\n*Edges\n1 7 0.5\n");
        CHECK_THROWS_AS((void)portfolio::read_pajek(in), portfolio::ParseError);
    }
    SUBCASE("missing *Vertices header") {
        std::istringstream in("*Edges\n1 2 0.5\n");
        CHECK_THROWS_AS((void)portfolio::read_pajek(in), portfolio::ParseError);
    }
}

TEST_CASE("ucinet dl fullmatrix golden bytes") {
    SUBCASE("cooccurrence integers") {
        auto s = two_unit(SimilarityKind::cooccurrence, 4.0, 5.0, 5.0);
        std::ostringstream out;
        portfolio::write_ucinet_dl(s, out);
        CHECK(out.str() ==
              "dl n=2 format=fullmatrix\n"
              "labels:\n"
              "UvA,Pfizer\n"
              "data:\n"
              "5 4\n"
              "4 5\n");
    }
    SUBCASE("cosine values keep 6 decimals") {
        auto s = two_unit(SimilarityKind::cosine, 0.8, 1.0, 1.0);
        std::ostringstream out;
        portfolio::write_ucinet_dl(s, out);
        CHECK(out.str() ==
              "dl n=2 format=fullmatrix\n"
              "labels:\n"
              "UvA,Pfizer\n"
              "data:\n"
              "1.000000 0.800000\n"
              "0.800000 1.000000\n");
    }
    SUBCASE("labels with spaces are quoted") {
        auto s = two_unit(SimilarityKind::cosine, 0.5, 1.0, 1.0);
        s.unit_labels[1] = "Leiden Univ";
        std::ostringstream out;
        portfolio::write_ucinet_dl(s, out);
        CHECK(out.str().find("UvA,\"Leiden Univ\"\n") != std::string::npos);
    }
}

TEST_CASE("csv writers follow the quoting rules") {
    SUBCASE("similarity matrix") {
        auto s = two_unit(SimilarityKind::cosine, 0.8, 1.0, 1.0);
        s.unit_labels[1] = "Pfizer, Inc";
        std::ostringstream out;
        portfolio::write_csv_matrix(s, out);
        CHECK(out.str() ==
              "unit,UvA,\"Pfizer, Inc\"\n"
              "UvA,1.000000,0.800000\n"
              "\"Pfizer, Inc\",0.800000,1.000000\n");
    }
    SUBCASE("embedded quotes are doubled") {
        auto s = two_unit(SimilarityKind::cooccurrence, 4.0, 5.0, 5.0);
        s.unit_labels[0] = "Say \"hi\"";
        std::ostringstream out;
        portfolio::write_csv_matrix(s, out);
        CHECK(out.str().find("\"Say \"\"hi\"\"\"") != std::string::npos);
    }
    SUBCASE("portfolio count matrix") {
        BaseMap map = tiny_map();
        portfolio::PortfolioMatrix m(map);
        m.upsert(dist_of("NL", {{1, 2}, {2, 1}, {3, 1}}));
        m.upsert(dist_of("DE", {{2, 7}}));
        std::ostringstream out;
        portfolio::write_csv_matrix(m, out);
        CHECK(out.str() ==
              "journal_id,NL,DE\n"
              "1,2,0\n"
              "2,1,7\n"
              "3,1,0\n");
    }
}

TEST_CASE("all writers are byte-deterministic") {
    auto s = two_unit(SimilarityKind::cosine, 0.337, 1.0, 1.0);
    auto run_twice_equal = [](auto&& writer) {
        std::ostringstream a, b;
        writer(a);
        writer(b);
        CHECK(a.str() == b.str());
        CHECK_FALSE(a.str().empty());
    };
    run_twice_equal([&](std::ostream& o) { portfolio::write_pajek(s, o); });
    run_twice_equal([&](std::ostream& o) { portfolio::write_ucinet_dl(s, o); });
    run_twice_equal([&](std::ostream& o) { portfolio::write_csv_matrix(s, o); });
    run_twice_equal([&](std::ostream& o) { portfolio::write_vos_network(s, o); });
}
