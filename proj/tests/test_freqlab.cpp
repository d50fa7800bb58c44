#include <filesystem>

#include "doctest.h"
#include "meander/freqlab.hpp"

using namespace meander;

namespace {
GeneralizedPartition P(const std::vector<int>& entries) {
    return GeneralizedPartition::from_entries(entries);
}
}  // namespace

TEST_CASE("symmetric counter matches the naive triple loop") {
    auto edge = PlaneTree::single_edge();
    auto tripod = PlaneTree::star(3);
    auto star4 = PlaneTree::star(4);
    auto h = enumerate_plane_trees(P({1, 1}))[0];

    std::vector<std::pair<PlaneTree, PlaneTree>> cases = {
        {edge, edge}, {tripod, edge}, {tripod, tripod},
        {star4, edge}, {star4, tripod}, {h, edge}, {h, tripod}, {h, h},
    };
    for (const auto& [top, bottom] : cases) {
        freq_detail::TreeFamily tf(top), bf(bottom);
        for (int n = std::max(top.edges(), bottom.edges());
             n <= std::max(top.edges(), bottom.edges()) + 4; ++n) {
            FrequencyRow fast = freq_detail::count_connected_row(tf, bf, n);
            FrequencyRow naive = freq_detail::count_connected_row_naive(top, bottom, n);
            CHECK(fast.total == naive.total);
            CHECK(fast.connected == naive.connected);
        }
    }
}

TEST_CASE("triple totals match the composition formula") {
    auto tripod = PlaneTree::star(3);
    freq_detail::TreeFamily tf(tripod), bf(tripod);
    for (int n = 3; n <= 9; ++n) {
        FrequencyRow row = freq_detail::count_connected_row(tf, bf, n);
        unsigned long long c =
            static_cast<unsigned long long>(BigInt::binomial(static_cast<unsigned>(n - 1), 2).to_i64());
        CHECK(row.total == c * c * static_cast<unsigned long long>(2 * n));
    }
}

TEST_CASE("edge-edge series: the rotation family") {
    // top and bottom nested diagrams glue to a rotation; connected twists are
    // exactly those with gcd(n, t) = 1, two per unit of phi(n)
    auto edge = PlaneTree::single_edge();
    freq_detail::TreeFamily tf(edge), bf(edge);
    for (int n = 1; n <= 40; ++n) {
        FrequencyRow row = freq_detail::count_connected_row(tf, bf, n);
        CHECK(row.total == static_cast<unsigned long long>(2 * n));
        long long phi = 0;
        for (int t = 1; t <= n; ++t)
            if (std::gcd(n, t) == 1) ++phi;
        CHECK(row.connected == static_cast<unsigned long long>(2 * phi));
    }
    // n = 1: both triples connected
    FrequencyRow first = freq_detail::count_connected_row(tf, bf, 1);
    CHECK(first.total == 2);
    CHECK(first.connected == 2);
}

TEST_CASE("worker count does not change a row") {
    auto tripod = PlaneTree::star(3);
    freq_detail::TreeFamily tf(tripod), bf(tripod);
    FrequencyRow a = freq_detail::count_connected_row(tf, bf, 8, 1);
    FrequencyRow b = freq_detail::count_connected_row(tf, bf, 8, 3);
    CHECK(a.connected == b.connected);
    CHECK(a.total == b.total);
}

TEST_CASE("series assembly, prediction, and csv shape") {
    auto tripod = PlaneTree::star(3);
    FrequencySeries series = p_connected_series(tripod, tripod, 8);
    CHECK(series.predicted == PiExpression::term(Rational(280), -6));
    CHECK(series.rows.front().n == 3);
    CHECK(series.rows.back().n == 8);
    std::string csv = series.to_csv();
    CHECK(csv.substr(0, csv.find('\n')) ==
          "n,total,connected,cum_fraction,predicted,predicted_exact");
    CHECK(csv.find("280 * pi^-6") != std::string::npos);
    CHECK(csv.find("\r") == std::string::npos);

    FrequencySeries p4 = p_connected_total(4, 20);
    CHECK(p4.predicted == PiExpression::term(Rational(6), -2));
    // only the edge-edge pair contributes at p = 4
    FrequencySeries direct = p_connected_series(PlaneTree::single_edge(),
                                                PlaneTree::single_edge(), 20);
    REQUIRE(p4.rows.size() == direct.rows.size());
    for (size_t i = 0; i < p4.rows.size(); ++i) {
        CHECK(p4.rows[i].total == direct.rows[i].total);
        CHECK(p4.rows[i].connected == direct.rows[i].connected);
    }

    FrequencySeries p5 = p_connected_total(5, 8);
    CHECK(p5.predicted == PiExpression::term(Rational(40), -4));
    // ordered pairs (edge, tripod) and (tripod, edge) both count
    freq_detail::TreeFamily tf(tripod), bf(PlaneTree::single_edge());
    for (const auto& row : p5.rows) {
        if (row.n < 3) continue;
        FrequencyRow half = freq_detail::count_connected_row(tf, bf, row.n);
        CHECK(row.total == 2 * half.total);
        CHECK(row.connected == 2 * half.connected);
    }
}

TEST_CASE("profile consistency: connected triples land in the glued stratum") {
    auto tripod = PlaneTree::star(3);
    auto edge = PlaneTree::single_edge();
    for (int n = 3; n <= 8; ++n) {
        std::vector<ChordDiagram> tops, bots;
        arc_systems_of_type(tripod, n, [&](const ChordDiagram& d) { tops.push_back(d); });
        arc_systems_of_type(edge, n, [&](const ChordDiagram& d) { bots.push_back(d); });
        for (const auto& T : tops)
            for (const auto& B : bots)
                for (int t = 0; t < 2 * n; ++t) {
                    GluedPair g(T, B, t);
                    if (!is_meander(g)) continue;
                    Stratum s = stratum_of(face_profile(g));
                    CHECK(s.nu == P({1}));
                }
    }
}

TEST_CASE("diagram series partitions the connected triples") {
    auto tripod = PlaneTree::star(3);
    auto edge = PlaneTree::single_edge();
    GeneralizedPartition nu = P({1});
    auto diagrams = enumerate_separatrix_diagrams(nu);
    REQUIRE(diagrams.size() == 1);  // {edge, tripod}

    for (int n = 3; n <= 8; ++n) {
        FrequencySeries refined = p_diagram_series(tripod, edge, diagrams[0], n);
        FrequencySeries plain = p_connected_series(tripod, edge, n);
        REQUIRE(!refined.rows.empty());
        const FrequencyRow& r = refined.rows.back();
        const FrequencyRow& p = plain.rows.back();
        CHECK(r.n == p.n);
        CHECK(r.total == p.total);
        CHECK(r.connected == p.connected);
        // a single diagram class covers everything here
        CHECK(r.classified == r.connected);
    }

    // nu = [1,1]: two diagram classes partition the meanders
    auto h = enumerate_plane_trees(P({1, 1}))[0];
    auto diagrams2 = enumerate_separatrix_diagrams(P({1, 1}));
    REQUIRE(diagrams2.size() == 2);
    for (int n = 5; n <= 8; ++n) {
        unsigned long long classified_sum = 0, connected = 0;
        for (const auto& dstar : diagrams2) {
            FrequencySeries s = p_diagram_series(h, edge, dstar, n);
            classified_sum += s.rows.back().classified;
            connected = s.rows.back().connected;
        }
        CHECK(classified_sum == connected);
    }
}

TEST_CASE("diagram series rejects a type mismatch") {
    auto tripod = PlaneTree::star(3);
    auto edge = PlaneTree::single_edge();
    auto wrong = enumerate_separatrix_diagrams(P({}))[0];
    CHECK_THROWS_AS(p_diagram_series(tripod, edge, wrong, 5), std::invalid_argument);
}

TEST_CASE("cache reuse returns identical rows") {
    std::filesystem::path dir =
        std::filesystem::temp_directory_path() / "meander-test-cache";
    std::filesystem::remove_all(dir);
    {
        ResultCache cache(dir.string());
        auto tripod = PlaneTree::star(3);
        FrequencySeries first = p_connected_series(tripod, tripod, 6, 1, &cache);
        FrequencySeries second = p_connected_series(tripod, tripod, 6, 1, &cache);
        CHECK(first.to_csv() == second.to_csv());
    }
    {
        // fresh process-level reload from disk
        ResultCache cache(dir.string());
        auto tripod = PlaneTree::star(3);
        FrequencySeries third = p_connected_series(tripod, tripod, 6, 1, &cache);
        FrequencySeries fresh = p_connected_series(tripod, tripod, 6, 1, nullptr);
        CHECK(third.to_csv() == fresh.to_csv());
    }
    std::filesystem::remove_all(dir);
}
