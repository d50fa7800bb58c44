#include <filesystem>

#include "doctest.h"
#include "meander/cli_support.hpp"

using namespace meander;

TEST_CASE("stratum grammar") {
    StratumSpec s = parse_stratum("1^2,-1^6");
    CHECK(s.nu == GeneralizedPartition::from_entries({1, 1}));
    CHECK(s.poles == 6);

    StratumSpec principal = parse_stratum("2,-1^6");
    CHECK(principal.nu == GeneralizedPartition::from_entries({2}));
    CHECK(principal.poles == 6);

    StratumSpec marked = parse_stratum("1,0^2,-1^5");
    CHECK(marked.nu.multiplicity(0) == 2);
    CHECK(marked.nu.multiplicity(1) == 1);
    CHECK(marked.poles == 5);

    StratumSpec bare = parse_stratum("-1^4");
    CHECK(bare.nu == GeneralizedPartition{});
    CHECK(bare.poles == 4);

    CHECK_THROWS_AS(parse_stratum("1^2,-1^5"), std::invalid_argument);  // balance
    CHECK_THROWS_AS(parse_stratum("x^2"), std::invalid_argument);
    CHECK_THROWS_AS(parse_stratum("1^0"), std::invalid_argument);
    CHECK_THROWS_AS(parse_stratum(""), std::invalid_argument);
    CHECK_THROWS_AS(parse_stratum("-2^4"), std::invalid_argument);
}

TEST_CASE("tree and meander specs") {
    CHECK(parse_tree("(()())") == PlaneTree::star(3));
    CHECK(parse_tree("()") == PlaneTree::single_edge());
    // non-canonical rotations canonicalize on input
    CHECK(parse_tree("()()()") == PlaneTree::star(3));
    CHECK_THROWS_AS(parse_tree("(()"), std::invalid_argument);

    auto [top, bottom] = parse_meander_spec("0-3,1-2/0-1,2-3");
    CHECK(top == make_chord_diagram({{0, 3}, {1, 2}}));
    CHECK(bottom == make_chord_diagram({{0, 1}, {2, 3}}));
    CHECK_THROWS_AS(parse_meander_spec("0-3,1-2"), std::invalid_argument);
    CHECK_THROWS_AS(parse_meander_spec("0-0,1-2/0-1,2-3"), DiagramError);
}

TEST_CASE("census table rendering") {
    std::vector<CensusRow> rows;
    for (int n = 1; n <= 3; ++n) rows.push_back(census(n));
    std::string csv = census_table_csv(rows);
    CHECK(csv.find("n,p4,p5,p6") == 0);
    CHECK(csv.find("\n1,1,") != std::string::npos);
    CHECK(csv.find("\r") == std::string::npos);
    std::string json = census_table_json(rows);
    auto parsed = nlohmann::json::parse(json);
    CHECK(parsed.size() == 3);
    CHECK(parsed[2]["total"] == 8);
}

TEST_CASE("census rows roundtrip through cache serialization") {
    CensusRow row = census(4);
    auto back = census_row_from_json(census_row_to_json(row));
    REQUIRE(back.has_value());
    CHECK(back->n == row.n);
    CHECK(back->total == row.total);
    CHECK(back->cells == row.cells);
}

TEST_CASE("cache round trip is byte identical and survives corruption") {
    namespace fs = std::filesystem;
    fs::path dir = fs::temp_directory_path() / "meander-cli-cache";
    fs::remove_all(dir);
    {
        ResultCache cache(dir.string());
        CensusRow a = census_cached(4, 1, 11, &cache);
        CensusRow b = census_cached(4, 1, 11, &cache);
        CHECK(census_row_to_json(a) == census_row_to_json(b));
    }
    // corrupt the payload: loader must skip the record and recompute
    {
        std::ofstream out(dir / "results.ndjson", std::ios::app);
        out << "{\"key\":\"census|n=5|v=x|order=y\",\"hash\":\"0\",\"payload\":\"{}\"}\n";
        out << "not json at all\n";
    }
    {
        ResultCache cache(dir.string());
        CensusRow a = census_cached(4, 1, 11, &cache);
        CHECK(a.total == census(4).total);
    }
    fs::remove_all(dir);
}
