#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace meander {

enum class DiagramErrorKind {
    kBadIndex,      // index outside 0..2n-1
    kDoubleCover,   // some index covered twice or not at all
    kFixedPoint,    // i paired with itself
    kCrossing,      // i < j < partner(i) < partner(j)
};

class DiagramError : public std::invalid_argument {
public:
    DiagramError(DiagramErrorKind kind, const std::string& msg)
        : std::invalid_argument(msg), kind_(kind) {}
    DiagramErrorKind kind() const { return kind_; }

private:
    DiagramErrorKind kind_;
};

// Noncrossing perfect matching (arc system) on points 0..2n-1.  Points are
// read left to right along the line for plane meanders and counterclockwise
// along the equator for glued pairs; the two conventions agree via the cut
// between 2n-1 and 0.
class ChordDiagram {
public:
    explicit ChordDiagram(std::vector<uint16_t> pairing)
        : pairing_(std::move(pairing)) {
        validate();
    }

    int n() const { return static_cast<int>(pairing_.size() / 2); }
    int points() const { return static_cast<int>(pairing_.size()); }
    uint16_t partner(int i) const { return pairing_[static_cast<size_t>(i)]; }
    const std::vector<uint16_t>& pairing() const { return pairing_; }

    bool operator==(const ChordDiagram& o) const { return pairing_ == o.pairing_; }
    bool operator!=(const ChordDiagram& o) const { return !(*this == o); }
    bool operator<(const ChordDiagram& o) const { return pairing_ < o.pairing_; }

    // Relabels every point by +s mod 2n.
    ChordDiagram rotated(int s) const {
        int m = points();
        s = ((s % m) + m) % m;
        std::vector<uint16_t> p(static_cast<size_t>(m));
        for (int i = 0; i < m; ++i)
            p[static_cast<size_t>((i + s) % m)] =
                static_cast<uint16_t>((pairing_[static_cast<size_t>(i)] + s) % m);
        return ChordDiagram(std::move(p));
    }

    // Mirror image: point x goes to 2n-1-x.
    ChordDiagram reflected() const {
        int m = points();
        std::vector<uint16_t> p(static_cast<size_t>(m));
        for (int i = 0; i < m; ++i)
            p[static_cast<size_t>(m - 1 - i)] =
                static_cast<uint16_t>(m - 1 - pairing_[static_cast<size_t>(i)]);
        return ChordDiagram(std::move(p));
    }

    // "0-3,1-2"
    std::string to_string() const {
        std::string s;
        for (int i = 0; i < points(); ++i) {
            if (partner(i) < i) continue;
            if (!s.empty()) s += ",";
            s += std::to_string(i) + "-" + std::to_string(partner(i));
        }
        return s;
    }

private:
    std::vector<uint16_t> pairing_;

    void validate() const {
        size_t m = pairing_.size();
        if (m == 0 || m % 2 != 0)
            throw DiagramError(DiagramErrorKind::kBadIndex,
                               "diagram needs a positive even number of points");
        for (size_t i = 0; i < m; ++i) {
            uint16_t j = pairing_[i];
            if (j >= m)
                throw DiagramError(DiagramErrorKind::kBadIndex,
                                   "pairing index out of range");
            if (j == i)
                throw DiagramError(DiagramErrorKind::kFixedPoint,
                                   "point " + std::to_string(i) + " paired with itself");
            if (pairing_[j] != i)
                throw DiagramError(DiagramErrorKind::kDoubleCover,
                                   "pairing is not an involution");
        }
        // noncrossing <=> the word (open when i < partner, close otherwise)
        // is balanced with matching via a stack
        std::vector<uint16_t> stack;
        for (size_t i = 0; i < m; ++i) {
            if (pairing_[i] > i) {
                stack.push_back(static_cast<uint16_t>(i));
            } else {
                if (stack.empty() || stack.back() != pairing_[i])
                    throw DiagramError(DiagramErrorKind::kCrossing,
                                       "arcs cross near point " + std::to_string(i));
                stack.pop_back();
            }
        }
    }
};

inline ChordDiagram make_chord_diagram(const std::vector<std::pair<int, int>>& pairs) {
    size_t m = pairs.size() * 2;
    std::vector<uint16_t> pairing(m, UINT16_MAX);
    for (auto [a, b] : pairs) {
        if (a < 0 || b < 0 || static_cast<size_t>(a) >= m || static_cast<size_t>(b) >= m)
            throw DiagramError(DiagramErrorKind::kBadIndex, "pair index out of range");
        if (a == b)
            throw DiagramError(DiagramErrorKind::kFixedPoint,
                               "point " + std::to_string(a) + " paired with itself");
        if (pairing[static_cast<size_t>(a)] != UINT16_MAX ||
            pairing[static_cast<size_t>(b)] != UINT16_MAX)
            throw DiagramError(DiagramErrorKind::kDoubleCover,
                               "an index is covered twice");
        pairing[static_cast<size_t>(a)] = static_cast<uint16_t>(b);
        pairing[static_cast<size_t>(b)] = static_cast<uint16_t>(a);
    }
    return ChordDiagram(std::move(pairing));
}

// Builds the pairing of a balanced parenthesis word ('(' opens an arc).
inline std::vector<uint16_t> pairing_from_dyck(const std::vector<uint8_t>& open) {
    std::vector<uint16_t> pairing(open.size());
    std::vector<uint16_t> stack;
    for (size_t i = 0; i < open.size(); ++i) {
        if (open[i]) {
            stack.push_back(static_cast<uint16_t>(i));
        } else {
            pairing[i] = stack.back();
            pairing[stack.back()] = static_cast<uint16_t>(i);
            stack.pop_back();
        }
    }
    return pairing;
}

// Emits every noncrossing diagram of size n exactly once, as raw pairing
// arrays, in lexicographically increasing order of the parenthesis word
// (with '(' sorting before ')').  This order is the documented enumeration
// order; the cache tags results with it.
inline void for_each_noncrossing_pairing(
    int n, const std::function<void(const std::vector<uint16_t>&)>& visit) {
    if (n < 1) throw std::invalid_argument("enumeration needs n >= 1");
    int m = 2 * n;
    std::vector<uint8_t> open(static_cast<size_t>(m));
    std::vector<uint16_t> pairing(static_cast<size_t>(m));
    std::vector<uint16_t> stack;
    // backtracking over prefixes: depth = open - closed so far
    std::function<void(int, int)> rec = [&](int pos, int depth) {
        if (pos == m) {
            visit(pairing);
            return;
        }
        if (depth < m - pos) {  // room to open
            open[static_cast<size_t>(pos)] = 1;
            stack.push_back(static_cast<uint16_t>(pos));
            rec(pos + 1, depth + 1);
            stack.pop_back();
        }
        if (depth > 0) {
            open[static_cast<size_t>(pos)] = 0;
            uint16_t top = stack.back();
            stack.pop_back();
            pairing[static_cast<size_t>(pos)] = top;
            pairing[top] = static_cast<uint16_t>(pos);
            rec(pos + 1, depth - 1);
            stack.push_back(top);
        }
    };
    rec(0, 0);
}

inline void enumerate_chord_diagrams(
    int n, const std::function<void(const ChordDiagram&)>& visit) {
    for_each_noncrossing_pairing(
        n, [&](const std::vector<uint16_t>& p) { visit(ChordDiagram(p)); });
}

inline std::vector<ChordDiagram> all_chord_diagrams(int n) {
    std::vector<ChordDiagram> out;
    enumerate_chord_diagrams(n, [&](const ChordDiagram& d) { out.push_back(d); });
    return out;
}

}  // namespace meander
