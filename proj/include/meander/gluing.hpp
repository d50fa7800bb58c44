#pragma once

#include <array>
#include <cassert>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <vector>

#include "meander/chord.hpp"
#include "meander/partition.hpp"

namespace meander {

// Two arc systems of the same size glued along the equator.  Point i of the
// bottom hemisphere is matched with point (i + twist) mod 2n of the top one;
// equivalently the bottom pairing is conjugated by the rotation +twist:
//   beta_t(i) = (bottom((i - t) mod 2n) + t) mod 2n.
// Plane meanders are the twist = 0 case, with the outer region handled by
// one-point compactification (the wrap equator edge from 2n-1 to 0).
struct GluedPair {
    ChordDiagram top;
    ChordDiagram bottom;
    int twist = 0;

    GluedPair(ChordDiagram t, ChordDiagram b, int tw)
        : top(std::move(t)), bottom(std::move(b)), twist(tw) {
        if (top.n() != bottom.n())
            throw std::invalid_argument("glued pair needs equal sizes");
        int m = top.points();
        twist = ((twist % m) + m) % m;
    }
};

inline std::vector<uint16_t> twisted_pairing(const ChordDiagram& bottom, int t) {
    int m = bottom.points();
    t = ((t % m) + m) % m;
    std::vector<uint16_t> beta(static_cast<size_t>(m));
    for (int i = 0; i < m; ++i) {
        int j = i - t;
        if (j < 0) j += m;
        int v = bottom.partner(j) + t;
        if (v >= m) v -= m;
        beta[static_cast<size_t>(i)] = static_cast<uint16_t>(v);
    }
    return beta;
}

// Number of cycles of the permutation top o beta_twist.  The glued multicurve
// has half that many connected components: each closed curve is traced once in
// each direction.
inline int gluing_cycles(const std::vector<uint16_t>& top,
                         const std::vector<uint16_t>& beta) {
    size_t m = top.size();
    std::vector<uint8_t> seen(m, 0);
    int cycles = 0;
    for (size_t s = 0; s < m; ++s) {
        if (seen[s]) continue;
        ++cycles;
        size_t x = s;
        do {
            seen[x] = 1;
            x = top[beta[x]];
        } while (x != s);
    }
    return cycles;
}

inline int component_count(const GluedPair& g) {
    auto beta = twisted_pairing(g.bottom, g.twist);
    int cycles = gluing_cycles(g.top.pairing(), beta);
    assert(cycles % 2 == 0);
    return cycles / 2;
}

inline bool is_meander(const GluedPair& g) { return component_count(g) == 1; }

// Multiset of face sizes of the 4-valent graph cut out on the sphere by the
// union of the equator and the two arc systems: counts[k] = number of faces
// with 2k sides.
struct FaceProfile {
    std::map<int, long long> counts;
    int n = 0;            // number of arcs per hemisphere
    bool connected = false;

    long long faces() const {
        long long f = 0;
        for (auto& [k, c] : counts) f += c;
        return f;
    }
    long long sides() const {
        long long s = 0;
        for (auto& [k, c] : counts) s += static_cast<long long>(k) * c;
        return s;
    }
    long long bigons() const {
        auto it = counts.find(1);
        return it == counts.end() ? 0 : it->second;
    }
};

// Face traversal of the glued 4-valent graph.  Darts are indexed 4*v + dir
// with dir 0=E (equator toward v+1), 1=N (top arc), 2=W (equator toward v-1),
// 3=S (bottom arc); the counterclockwise rotation at every vertex is
// E, N, W, S.  Faces are orbits of  d -> rotation(reverse(d)).
inline FaceProfile face_profile(const GluedPair& g) {
    int m = g.top.points();
    auto beta = twisted_pairing(g.bottom, g.twist);
    const auto& top = g.top.pairing();

    auto reverse_dart = [&](int d) {
        int v = d >> 2, dir = d & 3;
        switch (dir) {
            case 0: return (((v + 1) % m) << 2) | 2;          // E -> W at v+1
            case 2: return (((v + m - 1) % m) << 2) | 0;      // W -> E at v-1
            case 1: return (static_cast<int>(top[static_cast<size_t>(v)]) << 2) | 1;
            default: return (static_cast<int>(beta[static_cast<size_t>(v)]) << 2) | 3;
        }
    };

    FaceProfile profile;
    profile.n = g.top.n();
    int cycles = gluing_cycles(top, beta);
    profile.connected = (cycles == 2);

    std::vector<uint8_t> seen(static_cast<size_t>(4 * m), 0);
    for (int start = 0; start < 4 * m; ++start) {
        if (seen[static_cast<size_t>(start)]) continue;
        int len = 0;
        int d = start;
        do {
            seen[static_cast<size_t>(d)] = 1;
            ++len;
            int r = reverse_dart(d);
            d = (r & ~3) | ((r + 1) & 3);  // next counterclockwise at the head vertex
        } while (d != start);
        assert(len % 2 == 0);
        profile.counts[len / 2] += 1;
    }
    return profile;
}

// The stratum datum of a connected pair: nu_d = number of (2d+4)-gons,
// p = number of bigons.  Checks the genus-0 balance p = |nu| + 4.
struct Stratum {
    GeneralizedPartition nu;
    int poles = 0;
};

inline Stratum stratum_of(const FaceProfile& profile) {
    Stratum s;
    std::vector<int> mult;
    long long p = 0;
    for (auto& [k, c] : profile.counts) {
        if (k == 1) {
            p = c;
        } else if (k >= 3) {
            int d = k - 2;
            if (static_cast<size_t>(d) >= mult.size()) mult.resize(static_cast<size_t>(d) + 1, 0);
            mult[static_cast<size_t>(d)] = static_cast<int>(c);
        }
    }
    s.nu = GeneralizedPartition(std::move(mult));
    s.poles = static_cast<int>(p);
    if (s.poles != s.nu.poles())
        throw std::logic_error("face profile violates the pole/zero balance p = |nu|+4");
    return s;
}

// Minimal arcs ("pimples") and the maximal arc ("rainbow") of a plane
// meander: candidate = glued pair with twist 0.  pimples counts arcs joining
// adjacent crossings i, i+1 on the line; rainbow is the arc joining the
// leftmost and rightmost crossings.  For every meander with n >= 2 the bigon
// count of the face profile equals pimples + rainbow (the n = 1 circle is
// degenerate: each of its two arcs bounds a bigon on both sides).
struct MinimalArcs {
    int pimples = 0;
    bool rainbow = false;
};

inline MinimalArcs minimal_arcs(const ChordDiagram& top, const ChordDiagram& bottom) {
    if (top.n() != bottom.n())
        throw std::invalid_argument("candidate needs equal sizes");
    MinimalArcs r;
    int m = top.points();
    for (int i = 0; i + 1 < m; ++i) {
        if (top.partner(i) == i + 1) r.pimples++;
        if (bottom.partner(i) == i + 1) r.pimples++;
    }
    r.rainbow = (top.partner(0) == m - 1) || (bottom.partner(0) == m - 1);
    return r;
}

// --- equator-dual diagram -------------------------------------------------
//
// For a meander on the sphere the vertical curve (the glued arcs) separates
// the sphere into two regions.  Restricting the horizontal curve (equator) to
// either region gives an arc system; its reduced dual tree is one component
// of the equator-dual diagram.  Faces are 2-colored (flip across arc edges,
// keep across equator edges); the region-r dual graph has the region's faces
// as vertices and its equator edges as edges, with the ribbon structure read
// off the face boundary walks.

struct RibbonTree {
    // adj[v] = cyclically ordered list of (neighbor, edge id)
    std::vector<std::vector<std::pair<int, int>>> adj;
    int edge_count = 0;
};

namespace detail {

// Face ids per dart plus the boundary walks, for one glued pair.
struct FaceData {
    std::vector<int> face_of_dart;           // 4*m darts
    std::vector<std::vector<int>> walks;     // dart sequence per face
};

inline FaceData face_data(const std::vector<uint16_t>& top,
                          const std::vector<uint16_t>& beta) {
    int m = static_cast<int>(top.size());
    auto reverse_dart = [&](int d) {
        int v = d >> 2, dir = d & 3;
        switch (dir) {
            case 0: return (((v + 1) % m) << 2) | 2;
            case 2: return (((v + m - 1) % m) << 2) | 0;
            case 1: return (static_cast<int>(top[static_cast<size_t>(v)]) << 2) | 1;
            default: return (static_cast<int>(beta[static_cast<size_t>(v)]) << 2) | 3;
        }
    };
    FaceData fd;
    fd.face_of_dart.assign(static_cast<size_t>(4 * m), -1);
    for (int start = 0; start < 4 * m; ++start) {
        if (fd.face_of_dart[static_cast<size_t>(start)] >= 0) continue;
        int id = static_cast<int>(fd.walks.size());
        fd.walks.emplace_back();
        int d = start;
        do {
            fd.face_of_dart[static_cast<size_t>(d)] = id;
            fd.walks.back().push_back(d);
            int r = reverse_dart(d);
            d = (r & ~3) | ((r + 1) & 3);
        } while (d != start);
    }
    return fd;
}

}  // namespace detail

// Returns the two region trees (unreduced: vertices = faces of the region,
// edges = equator edges of the region, ribbon order from face walks).
// Requires a connected gluing.
inline std::array<RibbonTree, 2> equator_side_trees(const GluedPair& g) {
    if (!is_meander(g))
        throw std::invalid_argument("equator-dual diagram needs a connected gluing");
    int m = g.top.points();
    auto beta = twisted_pairing(g.bottom, g.twist);
    auto fd = detail::face_data(g.top.pairing(), beta);
    int nfaces = static_cast<int>(fd.walks.size());

    // 2-color faces: same color across E/W darts, flip across N/S darts.
    std::vector<int> color(static_cast<size_t>(nfaces), -1);
    std::vector<int> stack = {0};
    color[0] = 0;
    auto other_face = [&](int dart) {
        int v = dart >> 2, dir = dart & 3;
        int rev;
        switch (dir) {
            case 0: rev = (((v + 1) % m) << 2) | 2; break;
            case 2: rev = (((v + m - 1) % m) << 2) | 0; break;
            case 1: rev = (static_cast<int>(g.top.partner(v)) << 2) | 1; break;
            default: rev = (static_cast<int>(beta[static_cast<size_t>(v)]) << 2) | 3; break;
        }
        return fd.face_of_dart[static_cast<size_t>(rev)];
    };
    while (!stack.empty()) {
        int f = stack.back();
        stack.pop_back();
        for (int d : fd.walks[static_cast<size_t>(f)]) {
            int dir = d & 3;
            int nf = other_face(d);
            int want = (dir == 0 || dir == 2) ? color[static_cast<size_t>(f)]
                                              : 1 - color[static_cast<size_t>(f)];
            if (color[static_cast<size_t>(nf)] < 0) {
                color[static_cast<size_t>(nf)] = want;
                stack.push_back(nf);
            } else if (color[static_cast<size_t>(nf)] != want) {
                throw std::logic_error("region 2-coloring failed on a meander");
            }
        }
    }

    // Equator edge id: the E-dart's vertex (edge v -> v+1 has id v).
    std::array<RibbonTree, 2> trees;
    std::array<std::vector<int>, 2> local_id;
    local_id[0].assign(static_cast<size_t>(nfaces), -1);
    local_id[1].assign(static_cast<size_t>(nfaces), -1);
    for (int f = 0; f < nfaces; ++f) {
        int r = color[static_cast<size_t>(f)];
        local_id[static_cast<size_t>(r)][static_cast<size_t>(f)] =
            static_cast<int>(trees[static_cast<size_t>(r)].adj.size());
        trees[static_cast<size_t>(r)].adj.emplace_back();
    }
    for (int f = 0; f < nfaces; ++f) {
        int r = color[static_cast<size_t>(f)];
        auto& tr = trees[static_cast<size_t>(r)];
        for (int d : fd.walks[static_cast<size_t>(f)]) {
            int dir = d & 3;
            if (dir != 0 && dir != 2) continue;  // arcs separate regions
            int v = d >> 2;
            int edge = (dir == 0) ? v : (v + m - 1) % m;
            int nf = other_face(d);
            tr.adj[static_cast<size_t>(local_id[static_cast<size_t>(r)][static_cast<size_t>(f)])]
                .emplace_back(local_id[static_cast<size_t>(r)][static_cast<size_t>(nf)], edge);
        }
    }
    for (auto& tr : trees) {
        int darts = 0;
        for (auto& a : tr.adj) darts += static_cast<int>(a.size());
        tr.edge_count = darts / 2;
        // a region with V faces and E equator edges must satisfy E = V - 1
        if (tr.edge_count != static_cast<int>(tr.adj.size()) - 1)
            throw std::logic_error("region dual graph is not a tree");
    }
    return trees;
}

}  // namespace meander
