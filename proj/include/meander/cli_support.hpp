#pragma once

#include <cstdlib>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "meander/cache.hpp"
#include "meander/census.hpp"
#include "meander/chord.hpp"
#include "meander/partition.hpp"
#include "meander/planetree.hpp"

namespace meander {

// Stratum grammar mirroring the Q(1^2, -1^6) notation: comma-separated
// "order^multiplicity" tokens (multiplicity 1 may be omitted), with orders
// -1 (poles), 0 (marked points) and positive integers.  The pole count must
// satisfy the genus-0 balance p = |nu| + 4.
struct StratumSpec {
    GeneralizedPartition nu;
    int poles = 0;
};

inline StratumSpec parse_stratum(const std::string& text) {
    StratumSpec spec;
    std::vector<int> mult;
    int poles = 0;
    std::stringstream in(text);
    std::string token;
    bool saw_pole_token = false;
    bool saw_any = false;
    while (std::getline(in, token, ',')) {
        saw_any = true;
        if (token.empty()) throw std::invalid_argument("stratum: empty token");
        size_t caret = token.find('^');
        std::string order_str = token.substr(0, caret);
        int mult_val = 1;
        if (caret != std::string::npos) {
            std::string mult_str = token.substr(caret + 1);
            char* end = nullptr;
            long v = std::strtol(mult_str.c_str(), &end, 10);
            if (end == mult_str.c_str() || *end != '\0' || v < 1)
                throw std::invalid_argument("stratum: bad multiplicity in '" + token + "'");
            mult_val = static_cast<int>(v);
        }
        char* end = nullptr;
        long order = std::strtol(order_str.c_str(), &end, 10);
        if (end == order_str.c_str() || *end != '\0' || order < -1)
            throw std::invalid_argument("stratum: bad order in '" + token + "'");
        if (order == -1) {
            poles += mult_val;
            saw_pole_token = true;
        } else {
            if (static_cast<size_t>(order) >= mult.size())
                mult.resize(static_cast<size_t>(order) + 1, 0);
            mult[static_cast<size_t>(order)] += mult_val;
        }
    }
    if (!saw_any) throw std::invalid_argument("stratum: empty specification");
    spec.nu = GeneralizedPartition(std::move(mult));
    spec.poles = saw_pole_token ? poles : spec.nu.poles();
    if (spec.poles != spec.nu.poles())
        throw std::invalid_argument(
            "stratum: genus-0 balance violated, need " + std::to_string(spec.nu.poles()) +
            " poles for " + spec.nu.to_string());
    return spec;
}

inline PlaneTree parse_tree(const std::string& word) {
    return PlaneTree::from_word(word);
}

// "0-9,1-8,.../0-7,..." -> (top, bottom)
inline std::pair<ChordDiagram, ChordDiagram> parse_meander_spec(const std::string& text) {
    size_t slash = text.find('/');
    if (slash == std::string::npos)
        throw std::invalid_argument("meander spec needs 'top-pairs/bottom-pairs'");
    auto parse_side = [](const std::string& side) {
        std::vector<std::pair<int, int>> pairs;
        std::stringstream in(side);
        std::string token;
        while (std::getline(in, token, ',')) {
            size_t dash = token.find('-');
            if (dash == std::string::npos || dash == 0 || dash + 1 == token.size())
                throw std::invalid_argument("meander spec: bad pair '" + token + "'");
            pairs.emplace_back(std::stoi(token.substr(0, dash)),
                               std::stoi(token.substr(dash + 1)));
        }
        return make_chord_diagram(pairs);
    };
    return {parse_side(text.substr(0, slash)), parse_side(text.substr(slash + 1))};
}

// --- census serialization and table rendering ---------------------------------

inline std::string census_row_to_json(const CensusRow& row) {
    nlohmann::json j;
    j["n"] = row.n;
    j["total"] = row.total;
    nlohmann::json cells = nlohmann::json::array();
    for (const auto& [key, count] : row.cells) {
        nlohmann::json cell;
        cell["nu"] = key.first.raw();
        cell["rainbow"] = key.second;
        cell["count"] = count;
        cells.push_back(cell);
    }
    j["cells"] = cells;
    return j.dump();
}

inline std::optional<CensusRow> census_row_from_json(const std::string& payload) {
    nlohmann::json j = nlohmann::json::parse(payload, nullptr, false);
    if (j.is_discarded() || !j.contains("n") || !j.contains("cells")) return std::nullopt;
    CensusRow row;
    row.n = j["n"].get<int>();
    row.total = j["total"].get<unsigned long long>();
    for (const auto& cell : j["cells"]) {
        GeneralizedPartition nu(cell["nu"].get<std::vector<int>>());
        row.cells[{nu, cell["rainbow"].get<bool>()}] =
            cell["count"].get<unsigned long long>();
    }
    return row;
}

// census with read-through caching; payloads are byte-identical on reuse
inline CensusRow census_cached(int n, int jobs, int cap, ResultCache* cache) {
    std::string key = ResultCache::make_key("census", "n=" + std::to_string(n));
    if (cache && cache->enabled()) {
        if (auto payload = cache->get(key)) {
            if (auto row = census_row_from_json(*payload)) return *row;
        }
    }
    CensusRow row = census(n, jobs, cap);
    if (cache && cache->enabled()) cache->put(key, census_row_to_json(row));
    return row;
}

// CSV table: one row per n, columns p = 4..p_max plus the total.
inline std::string census_table_csv(const std::vector<CensusRow>& rows) {
    int p_max = 4;
    for (const auto& row : rows)
        for (const auto& [key, count] : row.cells)
            p_max = std::max(p_max, key.first.poles());
    std::ostringstream out;
    out << "n";
    for (int p = 4; p <= p_max; ++p) out << ",p" << p;
    out << ",total\n";
    for (const auto& row : rows) {
        out << row.n;
        auto by_poles = row.by_poles();
        for (int p = 4; p <= p_max; ++p) {
            auto it = by_poles.find(p);
            out << "," << (it == by_poles.end() ? 0ULL : it->second);
        }
        out << "," << row.total << "\n";
    }
    return out.str();
}

inline std::string census_table_json(const std::vector<CensusRow>& rows) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& row : rows) {
        nlohmann::json j;
        j["n"] = row.n;
        j["total"] = row.total;
        nlohmann::json poles = nlohmann::json::object();
        for (const auto& [p, c] : row.by_poles()) poles[std::to_string(p)] = c;
        j["by_poles"] = poles;
        nlohmann::json strata = nlohmann::json::array();
        for (const auto& [nu, c] : row.by_stratum()) {
            nlohmann::json cell;
            cell["nu"] = nu.raw();
            cell["count"] = c;
            strata.push_back(cell);
        }
        j["by_stratum"] = strata;
        arr.push_back(j);
    }
    return arr.dump(2) + "\n";
}

inline std::string default_cache_dir() {
    const char* env = std::getenv("MEANDER_CACHE_DIR");
    return env ? env : "";
}

}  // namespace meander
