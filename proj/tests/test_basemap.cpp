#include "doctest.h"

#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "portfolio/basemap.hpp"
#include "portfolio/errors.hpp"
#include "oracles.hpp"

using portfolio::BaseMap;
using portfolio::JournalEntry;
using portfolio::MapPoint;

namespace {

BaseMap tiny_map() {
    // Right triangle with legs 1: diameter is the hypotenuse sqrt(2).
    return BaseMap({
        {1, "NATURE", "NATURE", 0.0, 0.0, 1},
        {2, "SCIENCE", "SCIENCE", 1.0, 0.0, 1},
        {3, "CELL", "CELL", 0.0, 1.0, 2},
    });
}

}  // namespace

TEST_CASE("convex_hull drops duplicates and collinear points, runs counter-clockwise") {
    std::vector<MapPoint> square = {
        {0, 0}, {1, 0}, {1, 1}, {0, 1}, {0.5, 0.5}, {0.5, 0.0}, {1, 0},
    };
    auto hull = portfolio::convex_hull(square);
    REQUIRE(hull.size() == 4);
    // counter-clockwise: the signed area is positive
    double area2 = 0.0;
    for (std::size_t i = 0; i < hull.size(); ++i) {
        const auto& a = hull[i];
        const auto& b = hull[(i + 1) % hull.size()];
        area2 += a.x * b.y - b.x * a.y;
    }
    CHECK(area2 > 0.0);

    SUBCASE("all points coincident") {
        auto h = portfolio::convex_hull({{2, 3}, {2, 3}, {2, 3}});
        CHECK(h.size() == 1);
    }
    SUBCASE("collinear set keeps only the endpoints") {
        auto h = portfolio::convex_hull({{0, 0}, {1, 1}, {2, 2}, {3, 3}});
        CHECK(h.size() == 2);
    }
}

TEST_CASE("compute_diameter matches the all-pairs oracle exactly") {
    SUBCASE("degenerate inputs") {
        CHECK(portfolio::compute_diameter({}) == 0.0);
        std::vector<MapPoint> one = {{4.2, -1.0}};
        CHECK(portfolio::compute_diameter(one) == 0.0);
        std::vector<MapPoint> same = {{1, 1}, {1, 1}, {1, 1}};
        CHECK(portfolio::compute_diameter(same) == 0.0);
    }
    SUBCASE("unit square corners") {
        std::vector<MapPoint> pts = {{0, 0}, {1, 0}, {1, 1}, {0, 1}};
        CHECK(portfolio::compute_diameter(pts) == std::sqrt(2.0));
    }
    SUBCASE("uniform random point sets") {
        std::mt19937 rng(20260817);
        std::uniform_real_distribution<double> coord(-5.0, 5.0);
        for (int rep = 0; rep < 40; ++rep) {
            std::uniform_int_distribution<int> size_of(2, 400);
            std::vector<MapPoint> pts(static_cast<std::size_t>(size_of(rng)));
            for (auto& p : pts) p = {coord(rng), coord(rng)};
            CHECK(portfolio::compute_diameter(pts) == oracles::naive_diameter(pts));
        }
    }
    SUBCASE("grid-valued sets with many collinear and duplicate points") {
        std::mt19937 rng(7);
        std::uniform_int_distribution<int> cell(0, 12);
        for (int rep = 0; rep < 40; ++rep) {
            std::uniform_int_distribution<int> size_of(2, 120);
            std::vector<MapPoint> pts(static_cast<std::size_t>(size_of(rng)));
            for (auto& p : pts) p = {cell(rng) / 4.0, cell(rng) / 4.0};
            CHECK(portfolio::compute_diameter(pts) == oracles::naive_diameter(pts));
        }
    }
}

TEST_CASE("BaseMap construction: diameter, lookup precedence, warnings") {
    BaseMap map = tiny_map();
    CHECK(map.size() == 3);
    CHECK(map.diameter() == std::sqrt(2.0));
    CHECK(map.contains(2));
    CHECK_FALSE(map.contains(99));
    CHECK(map.journal(3).full_title == "CELL");
    CHECK_THROWS_AS((void)map.journal(99), std::invalid_argument);

    SUBCASE("titles resolve through normalization") {
        CHECK(map.lookup_title("Nature") == 1);
        CHECK(map.lookup_title("  cell ") == 3);
        CHECK_FALSE(map.lookup_title("LANCET").has_value());
        CHECK_FALSE(map.lookup_title("...").has_value());  // normalizes to ""
    }
    SUBCASE("full titles shadow abbreviated ones") {
        BaseMap m({
            {1, "PHYSICAL REVIEW B", "PHYS REV B", 0.0, 0.0, 1},
            {2, "PHYS REV B", "PRB", 1.0, 0.0, 1},
        });
        // "PHYS REV B" is journal 2's full title, so the full index wins
        CHECK(m.lookup_title("Phys Rev B") == 2);
        CHECK(m.lookup_title("PRB") == 2);
    }
    SUBCASE("duplicate normalized full titles: first wins, warning recorded") {
        BaseMap m({
            {1, "J Phys", "", 0.0, 0.0, 1},
            {2, "J. PHYS", "", 1.0, 0.0, 1},
        });
        CHECK(m.lookup_title("J PHYS") == 1);
        REQUIRE(m.warnings().size() == 1);
        CHECK(m.warnings()[0].find("J PHYS") != std::string::npos);
    }
    SUBCASE("duplicate ids rejected") {
        CHECK_THROWS_AS(BaseMap({{1, "A", "", 0, 0, 0}, {1, "B", "", 1, 1, 0}}),
                        std::invalid_argument);
    }
    SUBCASE("single journal: diameter 0 plus degenerate warning") {
        BaseMap m({{1, "A", "", 2.0, 2.0, 0}});
        CHECK(m.diameter() == 0.0);
        REQUIRE_FALSE(m.warnings().empty());
        CHECK(m.warnings()[0].find("degenerate") != std::string::npos);
    }
}

TEST_CASE("load_basemap parses the tab-separated format") {
    const char* text =
        "id\tfull_title\tabbrev_title\tx\ty\tcluster\n"
        "1\tNATURE\tNATURE\t0.0\t0.0\t1\n"
        "12\tJOURNAL OF PHYSICAL CHEMISTRY B\tJ PHYS CHEM B\t0.5\t-0.3\t4\n";
    std::istringstream in(text);
    BaseMap map = portfolio::load_basemap(in);
    REQUIRE(map.size() == 2);
    const auto& j = map.journal(12);
    CHECK(j.full_title == "JOURNAL OF PHYSICAL CHEMISTRY B");
    CHECK(j.abbrev_title == "J PHYS CHEM B");
    CHECK(j.x == 0.5);
    CHECK(j.y == -0.3);
    CHECK(j.cluster == 4);

    auto expect_parse_error = [](const std::string& body, std::size_t line) {
        std::istringstream s(body);
        try {
            portfolio::load_basemap(s);
            FAIL_CHECK("expected ParseError");
        } catch (const portfolio::ParseError& e) {
            CHECK(e.line() == line);
        }
    };
    const std::string header = "id\tfull_title\tabbrev_title\tx\ty\tcluster\n";

    SUBCASE("empty input") { expect_parse_error("", 0); }
    SUBCASE("header only") { expect_parse_error(header, 0); }
    SUBCASE("wrong column count") { expect_parse_error(header + "1\tA\t\t0\t0\n", 2); }
    SUBCASE("bad id") { expect_parse_error(header + "0\tA\t\t0\t0\t1\n", 2); }
    SUBCASE("bad coordinate") { expect_parse_error(header + "1\tA\t\t0\tnope\t1\n", 2); }
    SUBCASE("non-finite coordinate") { expect_parse_error(header + "1\tA\t\tinf\t0\t1\n", 2); }
    SUBCASE("negative cluster") { expect_parse_error(header + "1\tA\t\t0\t0\t-1\n", 2); }
    SUBCASE("duplicate id") {
        expect_parse_error(header + "1\tA\t\t0\t0\t1\n1\tB\t\t1\t1\t1\n", 3);
    }
    SUBCASE("title that normalizes to nothing") {
        expect_parse_error(header + "1\t???\t\t0\t0\t1\n", 2);
    }
    SUBCASE("unexpected header") { expect_parse_error("id\tname\tx\ty\n1\tA\t0\t0\n", 1); }
    SUBCASE("CRLF and UTF-8 BOM tolerated") {
        std::istringstream s("\xEF\xBB\xBFid\tfull_title\tabbrev_title\tx\ty\tcluster\r\n"
                             "1\tNATURE\t\t0\t0\t1\r\n");
        BaseMap m = portfolio::load_basemap(s);
        CHECK(m.size() == 1);
        CHECK(m.lookup_title("nature") == 1);
    }
}

TEST_CASE("disparity: normalized distance with exact endpoints") {
    BaseMap map = tiny_map();
    CHECK(portfolio::disparity(map, 1, 1) == 0.0);
    CHECK(portfolio::disparity(map, 1, 2) == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-15));
    // (1,0)-(0,1) is the diameter pair: exactly 1 by shared arithmetic
    CHECK(portfolio::disparity(map, 2, 3) == 1.0);

    SUBCASE("symmetry and range on random maps") {
        std::mt19937 rng(99);
        std::uniform_real_distribution<double> coord(0.0, 3.0);
        std::vector<JournalEntry> js;
        for (int i = 1; i <= 60; ++i)
            js.push_back({i, "J" + std::to_string(i), "", coord(rng), coord(rng), 0});
        BaseMap m(std::move(js));
        for (int rep = 0; rep < 300; ++rep) {
            std::uniform_int_distribution<int> pick(1, 60);
            int a = pick(rng), b = pick(rng);
            double dab = portfolio::disparity(m, a, b);
            CHECK(dab == portfolio::disparity(m, b, a));
            CHECK(dab >= 0.0);
            CHECK(dab <= 1.0);
        }
    }
    SUBCASE("errors") {
        CHECK_THROWS_AS((void)portfolio::disparity(map, 1, 42), std::invalid_argument);
        BaseMap degenerate({{1, "A", "", 0, 0, 0}, {2, "B", "", 0, 0, 0}});
        CHECK_THROWS_AS((void)portfolio::disparity(degenerate, 1, 2), std::domain_error);
    }
}
