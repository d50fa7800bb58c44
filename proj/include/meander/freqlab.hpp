#pragma once

#include <algorithm>
#include <cassert>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "json.hpp"
#include "meander/cache.hpp"
#include "meander/chord.hpp"
#include "meander/gluing.hpp"
#include "meander/mvconst.hpp"
#include "meander/planetree.hpp"

namespace meander {

// One row of a frequency experiment: all triples
// (n-arc system of type T_top, n-arc system of type T_bottom, twist)
// at a fixed n, and how many of them glue to a single closed curve.
struct FrequencyRow {
    int n = 0;
    unsigned long long total = 0;
    unsigned long long connected = 0;
    unsigned long long classified = 0;  // used by diagram-refined series
};

struct FrequencySeries {
    std::string label;
    PiExpression predicted;
    bool diagram_refined = false;
    std::vector<FrequencyRow> rows;

    // cumulative fraction connected (or classified) over all n <= N
    double cumulative_fraction() const {
        long double num = 0, den = 0;
        for (const auto& r : rows) {
            num += diagram_refined ? r.classified : r.connected;
            den += r.total;
        }
        return den == 0 ? 0.0 : static_cast<double>(num / den);
    }

    std::string to_csv(int precision = 12) const {
        std::ostringstream out;
        out.precision(precision);
        out << "n,total," << (diagram_refined ? "classified" : "connected")
            << ",cum_fraction,predicted,predicted_exact\n";
        long double num = 0, den = 0;
        std::string exact = predicted.to_exact_string();
        double pred = static_cast<double>(predicted.evaluate());
        for (const auto& r : rows) {
            num += diagram_refined ? r.classified : r.connected;
            den += r.total;
            out << r.n << "," << r.total << ","
                << (diagram_refined ? r.classified : r.connected) << ","
                << static_cast<double>(den == 0 ? 0.0L : num / den) << "," << pred << ","
                << exact << "\n";
        }
        return out.str();
    }
};

namespace freq_detail {

using Comp = std::vector<int>;

inline Comp apply_perm(const Comp& comp, const std::vector<int>& perm) {
    Comp out(comp.size());
    for (size_t j = 0; j < comp.size(); ++j)
        out[j] = comp[static_cast<size_t>(perm[j])];
    return out;
}

// Rotation-canonical representative and orbit size of a composition under
// the tree's corner symmetries.
struct CompClass {
    Comp comp;
    unsigned long long weight = 1;
};

inline std::pair<Comp, unsigned long long> rotation_canonical(
    const Comp& comp, const std::vector<std::vector<int>>& perms) {
    Comp best = comp;
    std::set<Comp> images;
    for (const auto& perm : perms) {
        Comp img = apply_perm(comp, perm);
        if (img < best) best = img;
        images.insert(std::move(img));
    }
    return {best, images.size()};
}

// All rotation-canonical compositions of n into e positive parts.
inline std::vector<CompClass> canonical_compositions(
    int n, int e, const std::vector<std::vector<int>>& perms) {
    std::vector<CompClass> out;
    Comp comp(static_cast<size_t>(e), 1);
    std::function<void(int, int)> rec = [&](int slot, int left) {
        if (slot == e - 1) {
            comp[static_cast<size_t>(slot)] = 1 + left;
            auto [canon, weight] = rotation_canonical(comp, perms);
            if (canon == comp) out.push_back({comp, weight});
            return;
        }
        for (int add = 0; add <= left; ++add) {
            comp[static_cast<size_t>(slot)] = 1 + add;
            rec(slot + 1, left - add);
        }
    };
    rec(0, n - e);
    return out;
}

// Expanded pairing of realize_arc_system(T, comp) written into `pairing`,
// without constructing a ChordDiagram.
inline void realize_pairing(const std::string& word, const std::vector<int>& seq,
                            const Comp& comp, std::vector<uint16_t>& pairing) {
    size_t m = 0;
    for (int c : comp) m += 2 * static_cast<size_t>(c);
    pairing.assign(m, 0);
    static thread_local std::vector<uint16_t> stack;
    stack.clear();
    size_t pos = 0;
    for (size_t i = 0; i < word.size(); ++i) {
        int width = comp[static_cast<size_t>(seq[i])];
        if (word[i] == '(') {
            for (int c = 0; c < width; ++c) stack.push_back(static_cast<uint16_t>(pos++));
        } else {
            for (int c = 0; c < width; ++c) {
                uint16_t open = stack.back();
                stack.pop_back();
                pairing[pos] = open;
                pairing[open] = static_cast<uint16_t>(pos);
                ++pos;
            }
        }
    }
}

// Number of twists t in 0..2n-1 whose gluing is a single closed curve.
// The gluing is connected iff the curve through point 0 visits n points, so
// each walk stops at first closure.  `top2` and `bot2` hold the pairings
// duplicated to length 4n, which makes the walk step
//   x -> top[(bot[(x - t) mod 2n] + t) mod 2n]
// two adds and two table loads.  The walks for distinct twists are
// independent dependency chains, so several are interleaved to hide the
// serial load latency.
inline int connected_twist_count(const uint16_t* top2, const uint16_t* bot2, int n) {
    const int m = 2 * n;
    constexpr int kLanes = 6;
    unsigned x[kLanes], fwd[kLanes], back[kLanes];
    int steps[kLanes];
    bool live[kLanes];
    int hits = 0;
    int next_t = 0;
    int alive = 0;

    auto refill = [&](int lane) {
        if (next_t >= m) {
            live[lane] = false;
            return false;
        }
        unsigned t = static_cast<unsigned>(next_t++);
        fwd[lane] = t;
        back[lane] = static_cast<unsigned>(m) - t;
        x[lane] = top2[bot2[back[lane]] + t];  // first step from point 0
        steps[lane] = 1;
        live[lane] = true;
        return true;
    };

    for (int l = 0; l < kLanes; ++l)
        if (refill(l)) ++alive;

    while (alive > 0) {
        for (int l = 0; l < kLanes; ++l) {
            if (!live[l]) continue;
            if (x[l] == 0) {  // walk closed: count and start the next twist
                hits += (steps[l] == n);
                if (!refill(l)) --alive;
                continue;
            }
            x[l] = top2[bot2[x[l] + back[l]] + fwd[l]];
            ++steps[l];
        }
    }
    return hits;
}

inline void duplicate_pairing(const std::vector<uint16_t>& pairing,
                              std::vector<uint16_t>& doubled) {
    doubled.resize(pairing.size() * 2);
    std::copy(pairing.begin(), pairing.end(), doubled.begin());
    std::copy(pairing.begin(), pairing.end(), doubled.begin() + static_cast<long>(pairing.size()));
}

struct TreeFamily {
    PlaneTree tree;
    std::vector<int> seq;                         // contour of the canonical word
    std::vector<std::vector<int>> rotation_perms;  // slot action of Aut
    std::vector<std::vector<int>> mirror_perms;    // empty unless self-mirror

    explicit TreeFamily(const PlaneTree& t)
        : tree(t),
          seq(treewords::contour_of_word(t.word())),
          rotation_perms(rotation_slot_perms(t)),
          mirror_perms(mirror_slot_perms(t)) {}
};

// Exact count of connected triples at size n for the ordered tree pair,
// using the gluing symmetries:
//  - composition rotations (re-rooting the contour) conjugate the realized
//    diagram by a circle rotation, which permutes twists bijectively;
//  - cycles(top o beta) = cycles(beta o top) makes the ordered pair (P, Q)
//    interchangeable with (Q, P) when the trees coincide;
//  - conjugating by the reflection x -> 2n-1-x maps the family to itself when
//    both trees are self-mirror.
// Each orbit is evaluated once and weighted by its exact size; the weights
// are cross-checked against the total composition-pair count.
inline FrequencyRow count_connected_row(const TreeFamily& top_family,
                                        const TreeFamily& bottom_family, int n,
                                        int jobs = 1) {
    FrequencyRow row;
    row.n = n;
    int e_top = top_family.tree.edges();
    int e_bot = bottom_family.tree.edges();
    if (n < e_top || n < e_bot) return row;

    BigInt pt = BigInt::binomial(static_cast<unsigned>(n - 1), e_top - 1);
    BigInt pb = BigInt::binomial(static_cast<unsigned>(n - 1), e_bot - 1);
    BigInt total = pt * pb * BigInt(2 * n);
    if (!total.fits_i64())
        throw std::overflow_error("triple count exceeds 64 bits; reduce N");
    unsigned long long pairs_top = static_cast<unsigned long long>(pt.to_i64());
    unsigned long long pairs_bot = static_cast<unsigned long long>(pb.to_i64());
    row.total = static_cast<unsigned long long>(total.to_i64());

    bool same_tree = top_family.tree == bottom_family.tree;
    bool mirror_ok =
        !top_family.mirror_perms.empty() && !bottom_family.mirror_perms.empty();

    auto tops = canonical_compositions(n, e_top, top_family.rotation_perms);
    auto bots = same_tree ? tops
                          : canonical_compositions(n, e_bot, bottom_family.rotation_perms);

    auto mirror_canonical = [](const Comp& comp, const TreeFamily& fam) {
        Comp img = apply_perm(comp, fam.mirror_perms.front());
        return rotation_canonical(img, fam.rotation_perms);
    };

    struct Task {
        const Comp* top;
        const Comp* bot;
        unsigned long long weight;
    };
    std::vector<Task> tasks;
    unsigned long long weight_sum = 0;

    // index canonical compositions for orbit lookups
    std::map<Comp, unsigned long long> top_weight, bot_weight;
    for (const auto& c : tops) top_weight[c.comp] = c.weight;
    for (const auto& c : bots) bot_weight[c.comp] = c.weight;

    for (const auto& P : tops) {
        for (const auto& Q : bots) {
            // orbit of (P, Q) under {id, swap, mirror, swap o mirror}
            std::vector<std::pair<Comp, Comp>> images = {{P.comp, Q.comp}};
            if (same_tree) images.push_back({Q.comp, P.comp});
            if (mirror_ok) {
                auto mp = mirror_canonical(P.comp, top_family).first;
                auto mq = mirror_canonical(Q.comp, bottom_family).first;
                images.push_back({mp, mq});
                if (same_tree) images.push_back({mq, mp});
            }
            std::sort(images.begin(), images.end());
            images.erase(std::unique(images.begin(), images.end()), images.end());
            if (images.front() != std::make_pair(P.comp, Q.comp)) continue;
            unsigned long long w = 0;
            for (const auto& [ip, iq] : images) w += top_weight.at(ip) * bot_weight.at(iq);
            weight_sum += w;
            tasks.push_back({&P.comp, &Q.comp, w});
        }
    }
    if (weight_sum != pairs_top * pairs_bot)
        throw std::logic_error("composition orbit weights do not cover the pair count");

    int workers = jobs < 1 ? 1 : jobs;
    if (static_cast<size_t>(workers) > tasks.size() && !tasks.empty())
        workers = static_cast<int>(tasks.size());
    std::vector<unsigned long long> partial(static_cast<size_t>(workers), 0);

    auto run_block = [&](int w) {
        std::vector<uint16_t> top_pairing, bot_pairing, top2, bot2;
        unsigned long long acc = 0;
        for (size_t i = static_cast<size_t>(w); i < tasks.size();
             i += static_cast<size_t>(workers)) {
            realize_pairing(top_family.tree.word(), top_family.seq, *tasks[i].top,
                            top_pairing);
            realize_pairing(bottom_family.tree.word(), bottom_family.seq, *tasks[i].bot,
                            bot_pairing);
            duplicate_pairing(top_pairing, top2);
            duplicate_pairing(bot_pairing, bot2);
            int hits = connected_twist_count(top2.data(), bot2.data(), n);
            acc += tasks[i].weight * static_cast<unsigned long long>(hits);
        }
        partial[static_cast<size_t>(w)] = acc;
    };

    if (workers <= 1) {
        run_block(0);
    } else {
        std::vector<std::thread> threads;
        for (int w = 0; w < workers; ++w) threads.emplace_back(run_block, w);
        for (auto& t : threads) t.join();
    }
    for (auto v : partial) row.connected += v;
    return row;
}

// Reference implementation: plain loops over every composition pair and
// twist, used as the oracle for the symmetric counter.
inline FrequencyRow count_connected_row_naive(const PlaneTree& top_tree,
                                              const PlaneTree& bottom_tree, int n) {
    FrequencyRow row;
    row.n = n;
    std::vector<ChordDiagram> tops, bots;
    arc_systems_of_type(top_tree, n, [&](const ChordDiagram& d) { tops.push_back(d); });
    arc_systems_of_type(bottom_tree, n, [&](const ChordDiagram& d) { bots.push_back(d); });
    for (const auto& T : tops) {
        for (const auto& B : bots) {
            for (int t = 0; t < 2 * n; ++t) {
                row.total++;
                if (is_meander(GluedPair(T, B, t))) row.connected++;
            }
        }
    }
    return row;
}

}  // namespace freq_detail

// --- series -------------------------------------------------------------------

namespace freq_detail {

inline std::optional<FrequencyRow> cached_row(ResultCache* cache, const std::string& key,
                                              int n) {
    if (!cache || !cache->enabled()) return std::nullopt;
    auto payload = cache->get(key);
    if (!payload) return std::nullopt;
    nlohmann::json j = nlohmann::json::parse(*payload, nullptr, false);
    if (j.is_discarded()) return std::nullopt;
    FrequencyRow row;
    row.n = n;
    row.total = j.value("total", 0ULL);
    row.connected = j.value("connected", 0ULL);
    row.classified = j.value("classified", 0ULL);
    return row;
}

inline void store_row(ResultCache* cache, const std::string& key, const FrequencyRow& row,
                      bool diagram_refined) {
    if (!cache || !cache->enabled()) return;
    nlohmann::json j;
    j["total"] = row.total;
    j["connected"] = row.connected;
    if (diagram_refined) j["classified"] = row.classified;
    cache->put(key, j.dump());
}

}  // namespace freq_detail

// P_connected(T_top, T_bottom; N): for every n <= N, the fraction of triples
// (top system, bottom system, twist) forming a meander; the predicted limit
// is P_1 of the stratum with nu = nu(T_top) + nu(T_bottom).
inline FrequencySeries p_connected_series(const PlaneTree& top_tree,
                                          const PlaneTree& bottom_tree, int N,
                                          int jobs = 1, ResultCache* cache = nullptr) {
    FrequencySeries series;
    series.label = "pconn " + top_tree.word() + " " + bottom_tree.word();
    series.predicted = p1((top_tree.profile() + bottom_tree.profile()).without_zeros());

    freq_detail::TreeFamily top_family(top_tree), bottom_family(bottom_tree);
    for (int n = std::max(top_tree.edges(), bottom_tree.edges()); n <= N; ++n) {
        std::string key = ResultCache::make_key(
            "pconn", top_tree.word() + "|" + bottom_tree.word() + "|n=" + std::to_string(n));
        auto cached = freq_detail::cached_row(cache, key, n);
        FrequencyRow row;
        if (cached) {
            row = *cached;
        } else {
            row = freq_detail::count_connected_row(top_family, bottom_family, n, jobs);
            freq_detail::store_row(cache, key, row, false);
        }
        series.rows.push_back(row);
    }
    return series;
}

// P_connected(p; N): numerators and denominators summed over all ordered
// pairs of reduced plane trees with p leaves in total.
inline FrequencySeries p_connected_total(int p, int N, int jobs = 1,
                                         ResultCache* cache = nullptr) {
    if (p < 4) throw std::invalid_argument("total-leaf series needs p >= 4");
    FrequencySeries series;
    series.label = "pconn total p=" + std::to_string(p);
    series.predicted = p1(GeneralizedPartition::principal(p - 4));

    // reduced trees with a given number of leaves: profiles without zero
    // entries of weight leaves-2
    auto trees_with_leaves = [](int leaves) {
        std::vector<PlaneTree> out;
        if (leaves < 2) return out;
        int w = leaves - 2;
        // partitions of w into parts >= 1, as multiplicity vectors
        std::vector<int> mult(static_cast<size_t>(w + 1), 0);
        std::function<void(int, int)> rec = [&](int remaining, int max_part) {
            if (remaining == 0) {
                auto trees = enumerate_plane_trees(GeneralizedPartition(mult));
                out.insert(out.end(), trees.begin(), trees.end());
                return;
            }
            for (int part = std::min(remaining, max_part); part >= 1; --part) {
                mult[static_cast<size_t>(part)]++;
                rec(remaining - part, part);
                mult[static_cast<size_t>(part)]--;
            }
        };
        rec(w, w == 0 ? 1 : w);
        std::sort(out.begin(), out.end());
        return out;
    };

    struct PairEntry {
        freq_detail::TreeFamily top, bottom;
        int multiplicity;  // 2 when the ordered pair (bottom, top) is distinct
        std::string key_stem;
    };
    std::vector<PairEntry> pairs;
    for (int l_top = 2; l_top <= p - 2; ++l_top) {
        for (const auto& top_tree : trees_with_leaves(l_top)) {
            for (const auto& bottom_tree : trees_with_leaves(p - l_top)) {
                // connected counts agree for (T,T') and (T',T); keep one
                if (bottom_tree.word() < top_tree.word()) continue;
                pairs.push_back({freq_detail::TreeFamily(top_tree),
                                 freq_detail::TreeFamily(bottom_tree),
                                 top_tree == bottom_tree ? 1 : 2,
                                 top_tree.word() + "|" + bottom_tree.word()});
            }
        }
    }

    for (int n = 1; n <= N; ++n) {
        FrequencyRow row;
        row.n = n;
        bool any = false;
        for (auto& entry : pairs) {
            if (n < entry.top.tree.edges() || n < entry.bottom.tree.edges()) continue;
            any = true;
            std::string key = ResultCache::make_key(
                "pconn", entry.key_stem + "|n=" + std::to_string(n));
            auto cached = freq_detail::cached_row(cache, key, n);
            FrequencyRow sub;
            if (cached) {
                sub = *cached;
            } else {
                sub = freq_detail::count_connected_row(entry.top, entry.bottom, n, jobs);
                freq_detail::store_row(cache, key, sub, false);
            }
            row.total += static_cast<unsigned long long>(entry.multiplicity) * sub.total;
            row.connected +=
                static_cast<unsigned long long>(entry.multiplicity) * sub.connected;
        }
        if (any) series.rows.push_back(row);
    }
    return series;
}

// p(T_top, T_bottom; D*; N): triples that glue to a meander whose
// equator-dual diagram equals D*.  The predicted limit is P_1(D*).
inline FrequencySeries p_diagram_series(const PlaneTree& top_tree,
                                        const PlaneTree& bottom_tree,
                                        const SeparatrixDiagram& dstar, int N,
                                        int jobs = 1, ResultCache* cache = nullptr) {
    GeneralizedPartition nu =
        (top_tree.profile() + bottom_tree.profile()).without_zeros();
    if (!(dstar.type() == nu))
        throw std::invalid_argument(
            "diagram type mismatch: D* has type " + dstar.type().to_string() +
            " but the tree pair glues to type " + nu.to_string());

    FrequencySeries series;
    series.diagram_refined = true;
    series.label = "pdiag " + top_tree.word() + " " + bottom_tree.word() + " | " +
                   dstar.first.word() + " " + dstar.second.word();
    series.predicted = p1_diagram(dstar);

    freq_detail::TreeFamily top_family(top_tree), bottom_family(bottom_tree);
    auto tops_all = [&](int n) {
        return freq_detail::canonical_compositions(n, top_tree.edges(),
                                                   top_family.rotation_perms);
    };
    auto bots_all = [&](int n) {
        return freq_detail::canonical_compositions(n, bottom_tree.edges(),
                                                   bottom_family.rotation_perms);
    };

    for (int n = std::max(top_tree.edges(), bottom_tree.edges()); n <= N; ++n) {
        std::string key = ResultCache::make_key(
            "pdiag", top_tree.word() + "|" + bottom_tree.word() + "|" +
                         dstar.first.word() + "|" + dstar.second.word() + "|n=" +
                         std::to_string(n));
        auto cached = freq_detail::cached_row(cache, key, n);
        if (cached) {
            series.rows.push_back(*cached);
            continue;
        }
        FrequencyRow row;
        row.n = n;
        unsigned long long pt =
            static_cast<unsigned long long>(
                BigInt::binomial(static_cast<unsigned>(n - 1), top_tree.edges() - 1)
                    .to_i64());
        unsigned long long pb =
            static_cast<unsigned long long>(
                BigInt::binomial(static_cast<unsigned>(n - 1), bottom_tree.edges() - 1)
                    .to_i64());
        row.total = pt * pb * static_cast<unsigned long long>(2 * n);

        // rotation symmetry only: the equator-dual diagram is invariant under
        // conjugating the gluing by a circle rotation
        std::vector<uint16_t> tp, bp;
        for (const auto& P : tops_all(n)) {
            freq_detail::realize_pairing(top_tree.word(), top_family.seq, P.comp, tp);
            ChordDiagram topd{tp};
            for (const auto& Q : bots_all(n)) {
                freq_detail::realize_pairing(bottom_tree.word(), bottom_family.seq, Q.comp,
                                             bp);
                ChordDiagram botd{bp};
                for (int t = 0; t < 2 * n; ++t) {
                    GluedPair g(topd, botd, t);
                    if (!is_meander(g)) continue;
                    row.connected += P.weight * Q.weight;
                    if (equator_dual_diagram(g) == dstar)
                        row.classified += P.weight * Q.weight;
                }
            }
        }
        freq_detail::store_row(cache, key, row, true);
        series.rows.push_back(row);
    }
    return series;
}

}  // namespace meander
