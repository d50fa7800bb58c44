#include <set>
#include <vector>

#include "doctest.h"
#include "meander/chord.hpp"

using namespace meander;

namespace {

// independent oracle: all fixed-point-free involutions of 0..2n-1, filtered
// for the noncrossing condition by direct quadruple inspection
long long count_noncrossing_bruteforce(int n) {
    int m = 2 * n;
    std::vector<int> partner(static_cast<size_t>(m), -1);
    long long count = 0;
    std::function<void()> rec = [&]() {
        int i = 0;
        while (i < m && partner[static_cast<size_t>(i)] >= 0) ++i;
        if (i == m) {
            for (int a = 0; a < m; ++a)
                for (int b = a + 1; b < m; ++b)
                    if (b < partner[static_cast<size_t>(a)] &&
                        partner[static_cast<size_t>(a)] < partner[static_cast<size_t>(b)] &&
                        a < b)
                        return;  // crossing
            ++count;
            return;
        }
        for (int j = i + 1; j < m; ++j) {
            if (partner[static_cast<size_t>(j)] >= 0) continue;
            partner[static_cast<size_t>(i)] = j;
            partner[static_cast<size_t>(j)] = i;
            rec();
            partner[static_cast<size_t>(i)] = -1;
            partner[static_cast<size_t>(j)] = -1;
        }
    };
    rec();
    return count;
}

}  // namespace

TEST_CASE("make_chord_diagram validates") {
    CHECK(make_chord_diagram({{0, 1}}).n() == 1);
    CHECK(make_chord_diagram({{0, 3}, {1, 2}}).n() == 2);

    CHECK_THROWS_AS(make_chord_diagram({{0, 2}, {1, 3}}), DiagramError);
    try {
        make_chord_diagram({{0, 2}, {1, 3}});
    } catch (const DiagramError& e) {
        CHECK(e.kind() == DiagramErrorKind::kCrossing);
    }
    try {
        make_chord_diagram({{0, 0}, {1, 2}});
    } catch (const DiagramError& e) {
        CHECK(e.kind() == DiagramErrorKind::kFixedPoint);
    }
    try {
        make_chord_diagram({{0, 1}, {1, 2}});
    } catch (const DiagramError& e) {
        CHECK(e.kind() == DiagramErrorKind::kDoubleCover);
    }
    try {
        make_chord_diagram({{0, 5}, {1, 2}});
    } catch (const DiagramError& e) {
        CHECK(e.kind() == DiagramErrorKind::kBadIndex);
    }
}

TEST_CASE("enumeration matches the Catalan numbers and the brute-force oracle") {
    const long long catalan[] = {1, 1, 2, 5, 14, 42, 132, 429, 1430};
    for (int n = 1; n <= 8; ++n) {
        long long count = 0;
        std::set<std::vector<uint16_t>> distinct;
        enumerate_chord_diagrams(n, [&](const ChordDiagram& d) {
            ++count;
            distinct.insert(d.pairing());
        });
        CHECK(count == catalan[n]);
        CHECK(static_cast<long long>(distinct.size()) == count);
        if (n <= 5) CHECK(count == count_noncrossing_bruteforce(n));
    }
}

TEST_CASE("enumeration order is deterministic") {
    std::vector<std::string> first;
    enumerate_chord_diagrams(3, [&](const ChordDiagram& d) { first.push_back(d.to_string()); });
    std::vector<std::string> second;
    enumerate_chord_diagrams(3, [&](const ChordDiagram& d) { second.push_back(d.to_string()); });
    CHECK(first == second);
    CHECK(first.front() == "0-5,1-4,2-3");  // fully nested comes first in dyck-lex order
    CHECK(first.back() == "0-1,2-3,4-5");
}

TEST_CASE("rotation and reflection stay noncrossing") {
    enumerate_chord_diagrams(4, [&](const ChordDiagram& d) {
        for (int s = 0; s < 8; ++s) CHECK(d.rotated(s).rotated(8 - s) == d);
        CHECK(d.reflected().reflected() == d);
    });
}
