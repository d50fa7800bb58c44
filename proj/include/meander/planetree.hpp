#pragma once

#include <algorithm>
#include <cassert>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "meander/chord.hpp"
#include "meander/gluing.hpp"
#include "meander/partition.hpp"
#include "meander/rational.hpp"

namespace meander {

// --- contour words ----------------------------------------------------------
//
// A plane tree with E edges is encoded by its contour: walking around the
// tree visits every edge twice, giving a cyclic sequence of 2E edge slots.
// Reading the cyclic sequence from a fixed corner and writing '(' at an
// edge's first visit and ')' at its second yields a balanced word; the tree's
// canonical form is the lexicographically smallest word over all 2E corners.
// Automorphisms of the ribbon tree act freely on corners, so the number of
// corners achieving the canonical word equals |Aut|.

namespace treewords {

// edge id (by first-'(' order) for each position of a balanced word
inline std::vector<int> contour_of_word(const std::string& word) {
    std::vector<int> seq(word.size());
    std::vector<int> stack;
    int next_edge = 0;
    for (size_t i = 0; i < word.size(); ++i) {
        if (word[i] == '(') {
            stack.push_back(next_edge);
            seq[i] = next_edge++;
        } else if (word[i] == ')') {
            if (stack.empty()) throw std::invalid_argument("unbalanced tree word");
            seq[i] = stack.back();
            stack.pop_back();
        } else {
            throw std::invalid_argument("tree word must consist of '(' and ')'");
        }
    }
    if (!stack.empty()) throw std::invalid_argument("unbalanced tree word");
    return seq;
}

inline std::string word_of_rotation(const std::vector<int>& seq, size_t r) {
    size_t len = seq.size();
    std::string w(len, '?');
    std::vector<uint8_t> seen(len / 2 + 1, 0);
    for (size_t i = 0; i < len; ++i) {
        int e = seq[(r + i) % len];
        w[i] = seen[static_cast<size_t>(e)] ? ')' : '(';
        seen[static_cast<size_t>(e)] = 1;
    }
    return w;
}

struct Canonical {
    std::string word;
    int aut_order = 0;
    std::vector<size_t> canonical_rotations;  // rotations achieving the minimum
};

inline Canonical canonicalize(const std::vector<int>& seq) {
    Canonical c;
    for (size_t r = 0; r < seq.size(); ++r) {
        std::string w = word_of_rotation(seq, r);
        if (c.word.empty() || w < c.word) {
            c.word = w;
            c.canonical_rotations = {r};
        } else if (w == c.word) {
            c.canonical_rotations.push_back(r);
        }
    }
    c.aut_order = static_cast<int>(c.canonical_rotations.size());
    return c;
}

// iota_d = number of vertices of valence d+2 (valence-2 vertices included
// as marked points, d = 0); leaves are not recorded.
inline GeneralizedPartition profile_of_word(const std::string& word) {
    std::vector<int> child_count = {0};  // virtual stack of open vertices, [0] = root
    std::vector<int> degrees;
    for (char ch : word) {
        if (ch == '(') {
            child_count.back()++;
            child_count.push_back(0);
        } else {
            int deg = child_count.back() + 1;  // +1 for the parent edge
            degrees.push_back(deg);
            child_count.pop_back();
        }
    }
    degrees.push_back(child_count.back());  // root: valence = child count
    std::vector<int> mult;
    for (int deg : degrees) {
        if (deg < 2) continue;
        int d = deg - 2;
        if (static_cast<size_t>(d) >= mult.size()) mult.resize(static_cast<size_t>(d) + 1, 0);
        mult[static_cast<size_t>(d)]++;
    }
    return GeneralizedPartition(std::move(mult));
}

}  // namespace treewords

// Plane (ribbon) tree, compared and hashed by its canonical contour word.
class PlaneTree {
public:
    static PlaneTree from_word(const std::string& word) {
        auto seq = treewords::contour_of_word(word);
        auto canon = treewords::canonicalize(seq);
        PlaneTree t;
        t.word_ = canon.word;
        t.aut_order_ = canon.aut_order;
        t.profile_ = treewords::profile_of_word(canon.word);
        return t;
    }

    static PlaneTree single_edge() { return from_word("()"); }

    // star with k legs, k >= 1 (k = 1 and k = 2 degenerate to paths)
    static PlaneTree star(int k) {
        std::string w;
        for (int i = 0; i < k; ++i) w += "()";
        return from_word(w);
    }

    const std::string& word() const { return word_; }
    const GeneralizedPartition& profile() const { return profile_; }
    int aut_order() const { return aut_order_; }
    int edges() const { return static_cast<int>(word_.size() / 2); }
    int leaves() const { return profile_.weight() + 2; }

    bool operator==(const PlaneTree& o) const { return word_ == o.word_; }
    bool operator!=(const PlaneTree& o) const { return !(*this == o); }
    bool operator<(const PlaneTree& o) const { return word_ < o.word_; }

private:
    std::string word_;
    GeneralizedPartition profile_;
    int aut_order_ = 0;

    PlaneTree() = default;
};

// All plane trees with internal-vertex profile iota, canonical forms sorted.
// The empty profile yields the single-edge tree.
inline std::vector<PlaneTree> enumerate_plane_trees(const GeneralizedPartition& iota) {
    int edges = iota.weight() + iota.length() + 1;
    std::set<std::string> seen;
    std::vector<PlaneTree> out;
    // enumerate rooted trees as Dyck words, filter by profile, dedupe by
    // canonical form
    std::string word(static_cast<size_t>(2 * edges), '?');
    std::function<void(int, int)> rec = [&](int pos, int depth) {
        if (pos == 2 * edges) {
            if (treewords::profile_of_word(word) != iota) return;
            PlaneTree t = PlaneTree::from_word(word);
            if (seen.insert(t.word()).second) out.push_back(t);
            return;
        }
        if (depth < 2 * edges - pos) {
            word[static_cast<size_t>(pos)] = '(';
            rec(pos + 1, depth + 1);
        }
        if (depth > 0) {
            word[static_cast<size_t>(pos)] = ')';
            rec(pos + 1, depth - 1);
        }
    };
    rec(0, 0);
    std::sort(out.begin(), out.end());
    return out;
}

// Sum of 1/|Aut(T)| over all plane trees of profile iota.  Equals
// (|iota| + ell(iota))! / ((|iota| + 2)! * prod_d iota_d!).
inline Rational weighted_tree_count(const GeneralizedPartition& iota) {
    Rational sum(0);
    for (const auto& t : enumerate_plane_trees(iota))
        sum += Rational(BigInt(1), BigInt(t.aut_order()));
    return sum;
}

inline Rational weighted_tree_count_formula(const GeneralizedPartition& iota) {
    BigInt num = BigInt::factorial(static_cast<unsigned>(iota.weight() + iota.length()));
    BigInt den = BigInt::factorial(static_cast<unsigned>(iota.weight() + 2));
    for (int d = 0; d <= iota.max_entry(); ++d)
        den *= BigInt::factorial(static_cast<unsigned>(iota.multiplicity(d)));
    return Rational(num, den);
}

// --- dual trees of arc systems ----------------------------------------------

namespace detail {

// Contour edge sequence of the reduced tree of a ribbon tree: suppress
// valence-2 vertices by splicing their two incident half-edge chains.
inline std::vector<int> reduced_contour(const RibbonTree& tree) {
    int nv = static_cast<int>(tree.adj.size());
    if (nv == 2 && tree.edge_count == 1) return {0, 0};

    // darts: (v, k) = k-th incident half-edge at v; find its mate at the
    // neighbor by matching edge ids (parallel edges cannot occur in a tree)
    auto mate_slot = [&](int v, int k) {
        auto [w, e] = tree.adj[static_cast<size_t>(v)][static_cast<size_t>(k)];
        const auto& a = tree.adj[static_cast<size_t>(w)];
        for (size_t j = 0; j < a.size(); ++j)
            if (a[j].second == e) return std::make_pair(w, static_cast<int>(j));
        throw std::logic_error("ribbon tree adjacency is inconsistent");
    };

    auto degree = [&](int v) { return static_cast<int>(tree.adj[static_cast<size_t>(v)].size()); };

    // chase from a dart at a branch vertex through valence-2 chains
    auto chase = [&](int v, int k) {
        auto [w, j] = mate_slot(v, k);
        while (degree(w) == 2) {
            int out = 1 - j;  // the other slot of a valence-2 vertex
            std::tie(w, j) = mate_slot(w, out);
        }
        return std::make_pair(w, j);
    };

    // collect branch vertices (degree != 2); leaves count as branch vertices
    std::vector<int> branch_id(static_cast<size_t>(nv), -1);
    int nb = 0;
    for (int v = 0; v < nv; ++v)
        if (degree(v) != 2) branch_id[static_cast<size_t>(v)] = nb++;
    if (nb == 0) throw std::logic_error("tree without branch vertices");

    // reduced edges: one per chain; id by first discovery
    std::map<std::pair<int, int>, int> edge_of_dart;  // (v, slot) -> reduced edge id
    int ne = 0;
    std::vector<std::vector<std::pair<int, int>>> radj(static_cast<size_t>(nb));
    for (int v = 0; v < nv; ++v) {
        if (degree(v) == 2) continue;
        for (int k = 0; k < degree(v); ++k) {
            if (edge_of_dart.count({v, k})) continue;
            auto [w, j] = chase(v, k);
            edge_of_dart[{v, k}] = ne;
            edge_of_dart[{w, j}] = ne;
            ++ne;
        }
    }
    for (int v = 0; v < nv; ++v) {
        if (degree(v) == 2) continue;
        for (int k = 0; k < degree(v); ++k) {
            auto [w, j] = chase(v, k);
            radj[static_cast<size_t>(branch_id[static_cast<size_t>(v)])].emplace_back(
                branch_id[static_cast<size_t>(w)], edge_of_dart[{v, k}]);
        }
    }
    assert(ne == nb - 1);

    // contour walk of the reduced ribbon tree: after arriving at w along a
    // dart, leave along the next dart counterclockwise
    std::vector<int> seq;
    seq.reserve(static_cast<size_t>(2 * ne));
    int v0 = 0, k0 = 0;
    int v = v0, k = k0;
    do {
        int e = radj[static_cast<size_t>(v)][static_cast<size_t>(k)].second;
        seq.push_back(e);
        int w = radj[static_cast<size_t>(v)][static_cast<size_t>(k)].first;
        // find the mate slot at w
        int j = -1;
        for (size_t s = 0; s < radj[static_cast<size_t>(w)].size(); ++s)
            if (radj[static_cast<size_t>(w)][s].second == e) { j = static_cast<int>(s); break; }
        v = w;
        k = (j + 1) % static_cast<int>(radj[static_cast<size_t>(w)].size());
    } while (!(v == v0 && k == k0));
    assert(static_cast<int>(seq.size()) == 2 * ne);
    return seq;
}

// Unreduced dual tree of an arc system in the disc, as a ribbon tree.
// Vertices are the complementary faces (one per chord plus the outer face),
// edges cross the chords; the parse structure of the noncrossing matching
// gives the embedding directly.
inline RibbonTree disc_dual_tree(const ChordDiagram& d) {
    int n = d.n();
    RibbonTree tree;
    tree.adj.assign(static_cast<size_t>(n + 1), {});
    tree.edge_count = n;
    // node 0 = outer face; node 1 + c = face just inside chord c (chords in
    // order of their opening point)
    std::vector<int> stack = {0};
    int next_chord = 0;
    for (int i = 0; i < d.points(); ++i) {
        if (d.partner(i) > i) {
            int c = next_chord++;
            int parent = stack.back();
            tree.adj[static_cast<size_t>(parent)].emplace_back(1 + c, c);
            tree.adj[static_cast<size_t>(1 + c)].emplace_back(parent, c);
            stack.push_back(1 + c);
        } else {
            stack.pop_back();
        }
    }
    return tree;
}

}  // namespace detail

// Reduced dual tree of an arc system: dual tree of the complementary faces
// with valence-2 vertices suppressed.  Any family of parallel arcs collapses
// to a single edge; n nested arcs give the single-edge tree.
inline PlaneTree reduced_dual_tree(const ChordDiagram& d) {
    auto seq = detail::reduced_contour(detail::disc_dual_tree(d));
    auto canon = treewords::canonicalize(seq);
    return PlaneTree::from_word(canon.word);
}

inline PlaneTree reduced_tree_of_ribbon(const RibbonTree& tree) {
    auto seq = detail::reduced_contour(tree);
    auto canon = treewords::canonicalize(seq);
    return PlaneTree::from_word(canon.word);
}

// Arc system realizing tree T with one band of `comp[k]` parallel arcs per
// edge (edge slots in first-visit order of the canonical word).
inline ChordDiagram realize_arc_system(const PlaneTree& T, const std::vector<int>& comp) {
    const std::string& w = T.word();
    auto seq = treewords::contour_of_word(w);
    std::vector<uint8_t> open;
    for (size_t i = 0; i < w.size(); ++i) {
        int width = comp[static_cast<size_t>(seq[i])];
        for (int c = 0; c < width; ++c) open.push_back(w[i] == '(');
    }
    return ChordDiagram(pairing_from_dyck(open));
}

// All arc systems with n arcs whose reduced dual tree equals T: one per
// composition of n into edges(T) positive parts, C(n-1, e-1) in total.
// Empty when n < edges(T).
inline void arc_systems_of_type(const PlaneTree& T, int n,
                                const std::function<void(const ChordDiagram&)>& visit) {
    int e = T.edges();
    if (n < e) return;
    std::vector<int> comp(static_cast<size_t>(e), 1);
    int extra = n - e;
    std::function<void(int, int)> rec = [&](int slot, int left) {
        if (slot == e - 1) {
            comp[static_cast<size_t>(slot)] = 1 + left;
            visit(realize_arc_system(T, comp));
            return;
        }
        for (int add = 0; add <= left; ++add) {
            comp[static_cast<size_t>(slot)] = 1 + add;
            rec(slot + 1, left - add);
        }
    };
    rec(0, extra);
}

// --- separatrix diagrams ------------------------------------------------------

// Unordered pair of plane trees; |Aut| doubles when the two components are
// isomorphic.
struct SeparatrixDiagram {
    PlaneTree first;
    PlaneTree second;

    SeparatrixDiagram(PlaneTree a, PlaneTree b)
        : first(std::move(a)), second(std::move(b)) {
        if (second < first) std::swap(first, second);
    }

    int aut_order() const {
        return first.aut_order() * second.aut_order() * (first == second ? 2 : 1);
    }
    GeneralizedPartition type() const { return first.profile() + second.profile(); }

    bool operator==(const SeparatrixDiagram& o) const {
        return first == o.first && second == o.second;
    }
    bool operator<(const SeparatrixDiagram& o) const {
        if (first != o.first) return first < o.first;
        return second < o.second;
    }
};

// All one-cylinder separatrix diagrams of a stratum: unordered pairs
// {T(iota), T(nu - iota)} over subpartitions iota of nu.
inline std::vector<SeparatrixDiagram> enumerate_separatrix_diagrams(
    const GeneralizedPartition& nu) {
    std::set<SeparatrixDiagram> seen;
    for (const auto& iota : nu.subpartitions()) {
        auto left = enumerate_plane_trees(iota);
        auto right = enumerate_plane_trees(nu - iota);
        for (const auto& a : left)
            for (const auto& b : right) seen.insert(SeparatrixDiagram(a, b));
    }
    return std::vector<SeparatrixDiagram>(seen.begin(), seen.end());
}

// --- equator-dual diagram of a meander ---------------------------------------

inline SeparatrixDiagram equator_dual_diagram(const GluedPair& g) {
    auto sides = equator_side_trees(g);
    return SeparatrixDiagram(reduced_tree_of_ribbon(sides[0]),
                             reduced_tree_of_ribbon(sides[1]));
}

// --- slot permutations for composition symmetry -------------------------------
//
// Re-rooting the contour at another corner that reproduces the canonical word
// realizes an automorphism; the induced permutation of edge slots tells how a
// band-multiplicity vector transforms.  realize_arc_system(T, comp o pi) is a
// rotation of realize_arc_system(T, comp), so connectivity counts over all
// twists are invariant under these permutations.

inline std::vector<std::vector<int>> rotation_slot_perms(const PlaneTree& T) {
    auto seq = treewords::contour_of_word(T.word());
    auto canon = treewords::canonicalize(seq);
    std::vector<std::vector<int>> perms;
    size_t len = seq.size();
    for (size_t r : canon.canonical_rotations) {
        std::vector<int> perm;                      // slot j -> original edge id
        std::vector<uint8_t> seen(len / 2 + 1, 0);
        for (size_t i = 0; i < len; ++i) {
            int e = seq[(r + i) % len];
            if (!seen[static_cast<size_t>(e)]) {
                seen[static_cast<size_t>(e)] = 1;
                perm.push_back(e);
            }
        }
        perms.push_back(std::move(perm));
    }
    return perms;
}

// Slot permutations realizing the mirror image, when T is isomorphic to its
// mirror; empty otherwise.  Conjugating a glued pair by the reflection
// x -> 2n-1-x sends realize(T, comp) to a rotation of realize(T, pi(comp)).
inline std::vector<std::vector<int>> mirror_slot_perms(const PlaneTree& T) {
    auto seq = treewords::contour_of_word(T.word());
    std::vector<int> rev(seq.rbegin(), seq.rend());
    std::vector<std::vector<int>> perms;
    size_t len = seq.size();
    for (size_t r = 0; r < len; ++r) {
        if (treewords::word_of_rotation(rev, r) != T.word()) continue;
        std::vector<int> perm;
        std::vector<uint8_t> seen(len / 2 + 1, 0);
        for (size_t i = 0; i < len; ++i) {
            int e = rev[(r + i) % len];
            if (!seen[static_cast<size_t>(e)]) {
                seen[static_cast<size_t>(e)] = 1;
                perm.push_back(e);
            }
        }
        perms.push_back(std::move(perm));
    }
    return perms;
}

}  // namespace meander
