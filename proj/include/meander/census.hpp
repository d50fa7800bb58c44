#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "meander/chord.hpp"
#include "meander/gluing.hpp"
#include "meander/partition.hpp"

namespace meander {

inline constexpr int kDefaultCensusCap = 11;

class CapExceededError : public std::runtime_error {
public:
    explicit CapExceededError(const std::string& msg) : std::runtime_error(msg) {}
};

inline long long totient(long long n) {
    if (n < 1) throw std::invalid_argument("totient needs n >= 1");
    long long result = n, m = n;
    for (long long p = 2; p * p <= m; ++p) {
        if (m % p) continue;
        while (m % p == 0) m /= p;
        result -= result / p;
    }
    if (m > 1) result -= result / m;
    return result;
}

// Classification of all meanders with n arcs.  A meander is an ordered pair
// (top, bottom) of size-n arc systems glued with twist 0 whose union is a
// single closed curve.  Every meander is classified by the stratum datum nu
// of its face profile (p = |nu|+4 bigons) and by whether it has a maximal
// arc (rainbow).
struct CensusRow {
    int n = 0;
    unsigned long long total = 0;
    // (nu, rainbow) -> count
    std::map<std::pair<GeneralizedPartition, bool>, unsigned long long> cells;

    std::map<GeneralizedPartition, unsigned long long> by_stratum() const {
        std::map<GeneralizedPartition, unsigned long long> out;
        for (const auto& [key, c] : cells) out[key.first] += c;
        return out;
    }

    std::map<int, unsigned long long> by_poles() const {
        std::map<int, unsigned long long> out;
        for (const auto& [key, c] : cells) out[key.first.poles()] += c;
        return out;
    }

    unsigned long long poles_count(int p) const {
        unsigned long long s = 0;
        for (const auto& [key, c] : cells)
            if (key.first.poles() == p) s += c;
        return s;
    }

    // rainbow-refined counts at fixed pole number
    unsigned long long rainbow_count(int p, bool rainbow) const {
        unsigned long long s = 0;
        for (const auto& [key, c] : cells)
            if (key.first.poles() == p && key.second == rainbow) s += c;
        return s;
    }

    unsigned long long stratum_rainbow_count(const GeneralizedPartition& nu,
                                             bool rainbow) const {
        auto it = cells.find({nu, rainbow});
        return it == cells.end() ? 0 : it->second;
    }
};

namespace detail {

struct CensusAccumulator {
    unsigned long long total = 0;
    std::map<std::pair<std::vector<int>, bool>, unsigned long long> cells;
};

// Face-size histogram of a twist-0 gluing, reusing scratch buffers.
// Returns the stratum key (nu as multiplicity vector) through `nu_key`.
class Classifier {
public:
    explicit Classifier(int m) : m_(m), face_seen_(static_cast<size_t>(4 * m), 0) {}

    // requires a connected gluing
    void classify(const uint16_t* top, const uint16_t* bottom, std::vector<int>& nu_key) {
        ++stamp_;
        nu_key.clear();
        int m = m_;
        for (int start = 0; start < 4 * m; ++start) {
            if (face_seen_[static_cast<size_t>(start)] == stamp_) continue;
            int len = 0;
            int d = start;
            do {
                face_seen_[static_cast<size_t>(d)] = stamp_;
                ++len;
                int v = d >> 2, dir = d & 3, r;
                switch (dir) {
                    case 0: r = (((v + 1) == m ? 0 : v + 1) << 2) | 2; break;
                    case 2: r = ((v == 0 ? m - 1 : v - 1) << 2) | 0; break;
                    case 1: r = (static_cast<int>(top[v]) << 2) | 1; break;
                    default: r = (static_cast<int>(bottom[v]) << 2) | 3; break;
                }
                d = (r & ~3) | ((r + 1) & 3);
            } while (d != start);
            int k = len / 2;  // face with 2k sides
            if (k >= 3) {
                size_t idx = static_cast<size_t>(k - 2 - 1);
                if (idx >= nu_key.size()) nu_key.resize(idx + 1, 0);
                nu_key[idx]++;
            }
        }
    }

private:
    int m_;
    std::vector<uint32_t> face_seen_;
    uint32_t stamp_ = 0;
};

inline void census_block(int n, const std::vector<std::vector<uint16_t>>& diagrams,
                         size_t top_begin, size_t top_end, CensusAccumulator& acc) {
    int m = 2 * n;
    Classifier classifier(m);
    std::vector<int> nu_key;
    for (size_t ti = top_begin; ti < top_end; ++ti) {
        const uint16_t* top = diagrams[ti].data();
        bool top_rainbow = top[0] == m - 1;
        for (const auto& bot_vec : diagrams) {
            const uint16_t* bot = bot_vec.data();
            // connected iff the curve through point 0 visits n of the 2n
            // points before closing
            unsigned x = top[bot[0]];
            int steps = 1;
            while (x != 0) {
                x = top[bot[x]];
                ++steps;
            }
            if (steps != n) continue;
            classifier.classify(top, bot, nu_key);
            bool rainbow = top_rainbow || bot[0] == m - 1;
            // nu_key is indexed from d = 1; prepend nu_0 = 0
            std::vector<int> key(nu_key.size() + 1, 0);
            for (size_t i = 0; i < nu_key.size(); ++i) key[i + 1] = nu_key[i];
            while (!key.empty() && key.back() == 0) key.pop_back();
            acc.cells[{std::move(key), rainbow}]++;
            acc.total++;
        }
    }
}

}  // namespace detail

// Exhaustive census of meanders with n arcs.  Deterministic for any worker
// count: the search space is partitioned by top-diagram index and the
// per-worker classification maps are merged by addition.
inline CensusRow census(int n, int jobs = 1, int cap = kDefaultCensusCap) {
    if (n < 1) throw std::invalid_argument("census needs n >= 1");
    if (n > cap)
        throw CapExceededError(
            "census(" + std::to_string(n) + ") exceeds the configured cap " +
            std::to_string(cap) +
            "; raise --cap if you accept the runtime (the pair count grows "
            "like the squared Catalan number)");
    std::vector<std::vector<uint16_t>> diagrams;
    for_each_noncrossing_pairing(
        n, [&](const std::vector<uint16_t>& p) { diagrams.push_back(p); });

    size_t count = diagrams.size();
    int workers = jobs < 1 ? 1 : jobs;
    if (static_cast<size_t>(workers) > count) workers = static_cast<int>(count);

    std::vector<detail::CensusAccumulator> accs(static_cast<size_t>(workers));
    if (workers == 1) {
        detail::census_block(n, diagrams, 0, count, accs[0]);
    } else {
        std::vector<std::thread> threads;
        for (int w = 0; w < workers; ++w) {
            size_t begin = count * static_cast<size_t>(w) / static_cast<size_t>(workers);
            size_t end = count * static_cast<size_t>(w + 1) / static_cast<size_t>(workers);
            threads.emplace_back(detail::census_block, n, std::cref(diagrams), begin, end,
                                 std::ref(accs[static_cast<size_t>(w)]));
        }
        for (auto& t : threads) t.join();
    }

    CensusRow row;
    row.n = n;
    for (const auto& acc : accs) {
        row.total += acc.total;
        for (const auto& [key, c] : acc.cells)
            row.cells[{GeneralizedPartition(key.first), key.second}] += c;
    }
    return row;
}

// ---- cumulative counts over census rows -------------------------------------

// sum_{n <= N} M_{n,p}
inline unsigned long long cumulative_by_poles(const std::vector<CensusRow>& rows, int p,
                                              int N) {
    unsigned long long s = 0;
    for (const auto& row : rows)
        if (row.n <= N) s += row.poles_count(p);
    return s;
}

// Meanders with at most 2N crossings, exactly p pimples, with a rainbow.
// A meander with a rainbow and p pimples has p+1 bigons (the rainbow bounds
// the bigon through the point at infinity), so this reads the (p+1, rainbow)
// cell.  The n = 1 circle counts here with p = 3: its bigon count is 4 and
// both of its arcs are simultaneously minimal and maximal.
inline unsigned long long m_plus(const std::vector<CensusRow>& rows, int p, int N) {
    if (p < 3) return 0;
    unsigned long long s = 0;
    for (const auto& row : rows)
        if (row.n <= N) s += row.rainbow_count(p + 1, true);
    return s;
}

inline unsigned long long m_minus(const std::vector<CensusRow>& rows, int p, int N) {
    if (p < 4) return 0;
    unsigned long long s = 0;
    for (const auto& row : rows)
        if (row.n <= N) s += row.rainbow_count(p, false);
    return s;
}

inline unsigned long long m_plus_nu(const std::vector<CensusRow>& rows,
                                    const GeneralizedPartition& nu, int N) {
    unsigned long long s = 0;
    for (const auto& row : rows)
        if (row.n <= N) s += row.stratum_rainbow_count(nu, true);
    return s;
}

inline unsigned long long m_minus_nu(const std::vector<CensusRow>& rows,
                                     const GeneralizedPartition& nu, int N) {
    unsigned long long s = 0;
    for (const auto& row : rows)
        if (row.n <= N) s += row.stratum_rainbow_count(nu, false);
    return s;
}

}  // namespace meander
