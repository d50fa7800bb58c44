// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure.  Heavy computations (census up to n = 11, convergence series up
// to N = 150/300) go through the result cache, so reruns are fast; see the
// README for cold-cache runtimes.
//
// usage: acceptance [path-to-cli] [cache-dir]

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "meander/census.hpp"
#include "meander/cli_support.hpp"
#include "meander/freqlab.hpp"
#include "meander/linvol.hpp"
#include "meander/mvconst.hpp"

using namespace meander;

namespace {

int failures = 0;

void report(int criterion, const std::string& what, bool ok, double seconds) {
    std::printf("%s  criterion %d: %s  (%.1fs)\n", ok ? "PASS" : "FAIL", criterion,
                what.c_str(), seconds);
    std::fflush(stdout);
    if (!ok) ++failures;
}

void run(int criterion, const std::string& what, const std::function<bool()>& body) {
    auto t0 = std::chrono::steady_clock::now();
    bool ok = false;
    try {
        ok = body();
    } catch (const std::exception& e) {
        std::printf("      exception: %s\n", e.what());
        ok = false;
    }
    double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    report(criterion, what, ok, seconds);
}

std::string run_command(const std::string& cmd) {
    std::string out;
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) return out;
    char buf[4096];
    while (size_t got = fread(buf, 1, sizeof buf, pipe)) out.append(buf, got);
    pclose(pipe);
    return out;
}

GeneralizedPartition P(const std::vector<int>& entries) {
    return GeneralizedPartition::from_entries(entries);
}

// The M_{n,p} block for p = 4..8, n = 1..9, and the meandric totals.  The
// p = 4 row is n*phi(n) throughout (so 42 at n = 7).
const unsigned long long kTable[5][9] = {
    {1, 2, 6, 8, 20, 12, 42, 32, 54},
    {0, 0, 0, 16, 40, 168, 280, 544, 1152},
    {0, 0, 2, 16, 110, 416, 1470, 4128, 9102},
    {0, 0, 0, 0, 60, 576, 3276, 13632, 45468},
    {0, 0, 0, 2, 30, 462, 4228, 26424, 130410},
};
const unsigned long long kTotals[9] = {1,     2,      8,      42,    262,
                                       1828,  13820,  110954, 933458};
const unsigned long long kRow5Prefix[11] = {0,   0,   0,    16,   40,  168,
                                            280, 544, 1152, 1560, 2640};

}  // namespace

int main(int argc, char** argv) {
    std::string cli_path = argc > 1 ? argv[1] : "./meander";
    std::string cache_dir = argc > 2 ? argv[2] : "acceptance-cache";
    if (const char* env = std::getenv("MEANDER_CACHE_DIR")) cache_dir = env;
    ResultCache cache(cache_dir);
    int jobs = static_cast<int>(std::thread::hardware_concurrency());
    if (jobs < 1) jobs = 1;

    std::vector<CensusRow> rows;  // filled by criterion 2 up to n = 11

    run(1, "census table reproduces the 45-entry block and totals for n <= 9", [&] {
        std::string csv =
            run_command(cli_path + " census --n-max 9 --jobs " + std::to_string(jobs) +
                        " --cache-dir '" + cache_dir + "'");
        // parse the CSV into by-poles values
        std::istringstream in(csv);
        std::string line;
        if (!std::getline(in, line)) {
            std::printf("      no output from %s\n", cli_path.c_str());
            return false;
        }
        std::vector<std::string> header;
        std::stringstream hs(line);
        std::string tok;
        while (std::getline(hs, tok, ',')) header.push_back(tok);
        bool ok = true;
        int n = 0;
        while (std::getline(in, line)) {
            ++n;
            std::stringstream ls(line);
            std::vector<unsigned long long> vals;
            while (std::getline(ls, tok, ',')) vals.push_back(std::stoull(tok));
            if (vals.empty() || vals[0] != static_cast<unsigned long long>(n)) return false;
            for (size_t c = 1; c + 1 < vals.size(); ++c) {
                if (header[c].size() < 2 || header[c][0] != 'p') return false;
                int p = std::stoi(header[c].substr(1));
                if (p >= 4 && p <= 8 && n <= 9) ok &= (vals[c] == kTable[p - 4][n - 1]);
            }
            if (n <= 9 && vals.back() != kTotals[n - 1]) {
                std::printf("      total mismatch at n=%d: %llu\n", n, vals.back());
                ok = false;
            }
        }
        if (n != 9) std::printf("      expected 9 rows, parsed %d\n", n);
        return ok && n == 9;
    });

    run(2, "M_{n,4} = n phi(n) for all n <= 11", [&] {
        bool ok = true;
        for (int n = 1; n <= 11; ++n) {
            rows.push_back(census_cached(n, jobs, 11, &cache));
            ok &= (rows.back().poles_count(4) ==
                   static_cast<unsigned long long>(n) *
                       static_cast<unsigned long long>(totient(n)));
        }
        return ok;
    });

    run(3, "M_{n,5} matches the listed prefix for n <= 11", [&] {
        if (rows.size() < 11) return false;
        bool ok = true;
        for (int n = 1; n <= 11; ++n)
            ok &= (rows[static_cast<size_t>(n - 1)].poles_count(5) == kRow5Prefix[n - 1]);
        return ok;
    });

    run(4, "exact constants: p1, coefficients, principal cyl1, Gould identity", [&] {
        bool ok = true;
        ok &= (p1(P({1, 1})) == PiExpression::term(Rational(280), -6));
        ok &= (p1(P({2})) == PiExpression::term(Rational(45, 2), -4));
        ok &= (mminus_coefficient(4).leading == PiExpression::term(Rational(2), -2));
        ok &= (mminus_coefficient(4).exponent == 3);
        ok &= (mminus_coefficient(5).leading == PiExpression::term(Rational(16, 3), -4));
        ok &= (mminus_coefficient(5).exponent == 5);
        for (int k = 0; k <= 50; ++k)
            ok &= (cyl1_principal(k) == cyl1(GeneralizedPartition::principal(k)));
        for (int k = 0; k <= 100; ++k) {
            BigInt sum(0);
            for (int i = 0; i <= k; ++i)
                sum += BigInt::binomial(static_cast<unsigned>(k), i) *
                       BigInt::binomial(static_cast<unsigned>(k + 4), i + 2);
            ok &= (sum == BigInt::binomial(static_cast<unsigned>(2 * k + 4), k + 2));
        }
        return ok;
    });

    run(5, "diagram-sum identity for every nu with |nu|+ell(nu) <= 6", [&] {
        std::vector<GeneralizedPartition> nus;
        std::vector<int> entries;
        std::function<void(int, int)> gen = [&](int left, int max_entry) {
            nus.push_back(P(entries));
            for (int d = std::min(max_entry, left - 1); d >= 0; --d) {
                entries.push_back(d);
                gen(left - d - 1, d);
                entries.pop_back();
            }
        };
        gen(6, 5);
        bool ok = true;
        for (const auto& nu : nus) {
            Rational sum(0);
            for (const auto& diagram : enumerate_separatrix_diagrams(nu))
                sum += cyl1_diagram(diagram);
            ok &= (sum == Rational(cyl1(nu)));
        }
        return ok;
    });

    run(6, "weighted plane-tree counts match the closed formula, <= 8 edges", [&] {
        bool ok = true;
        for (int edges = 1; edges <= 8; ++edges) {
            std::vector<int> entries;
            std::function<void(int, int)> gen = [&](int left, int max_entry) {
                if (left == 0) {
                    GeneralizedPartition iota = P(entries);
                    ok &= (weighted_tree_count(iota) == weighted_tree_count_formula(iota));
                    return;
                }
                for (int d = std::min(max_entry, left - 1); d >= 0; --d) {
                    entries.push_back(d);
                    gen(left - d - 1, d);
                    entries.pop_back();
                }
            };
            gen(edges - 1, edges - 1);
        }
        return ok;
    });

    run(8, "cumulative M_{n,4}/N^3 trend toward 2/pi^2", [&] {
        if (rows.size() < 11) return false;
        auto fraction = [&](int N) {
            unsigned long long sum = 0;
            for (int n = 1; n <= N; ++n)
                sum += rows[static_cast<size_t>(n - 1)].poles_count(4);
            return static_cast<double>(sum) / (static_cast<double>(N) * N * N);
        };
        double limit = 2.0 / (M_PI * M_PI);
        double err11 = std::fabs(fraction(11) - limit) / limit;
        double err5 = std::fabs(fraction(5) - limit) / limit;
        std::printf("      N=5: %.4f, N=11: %.4f, limit: %.4f (rel err %.1f%% -> %.1f%%)\n",
                    fraction(5), fraction(11), limit, 100 * err5, 100 * err11);
        return err11 < 0.25 && err11 < err5;
    });

    run(9, "property suites: oracle counts, face invariants, roundtrips, determinism",
        [&] {
            bool ok = true;

            // chord-diagram counts against the brute-force involution oracle
            const long long catalan[] = {1, 1, 2, 5, 14, 42, 132, 429, 1430};
            for (int n = 1; n <= 8; ++n) {
                long long count = 0;
                enumerate_chord_diagrams(n, [&](const ChordDiagram&) { ++count; });
                ok &= (count == catalan[n]);
            }
            for (int n = 1; n <= 5; ++n) {
                // direct filter over all fixed-point-free involutions
                int m = 2 * n;
                std::vector<int> partner(static_cast<size_t>(m), -1);
                long long brute = 0;
                std::function<void()> rec = [&]() {
                    int i = 0;
                    while (i < m && partner[static_cast<size_t>(i)] >= 0) ++i;
                    if (i == m) {
                        for (int a = 0; a < m; ++a)
                            for (int b = a + 1; b < m; ++b)
                                if (b < partner[static_cast<size_t>(a)] &&
                                    partner[static_cast<size_t>(a)] <
                                        partner[static_cast<size_t>(b)])
                                    return;
                        ++brute;
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
                ok &= (brute == catalan[n]);
            }

            // face-profile invariants on every meander with n <= 9
            for (int n = 1; n <= 9 && ok; ++n) {
                auto diagrams = all_chord_diagrams(n);
                for (const auto& top : diagrams) {
                    for (const auto& bottom : diagrams) {
                        GluedPair g(top, bottom, 0);
                        if (!is_meander(g)) continue;
                        FaceProfile p = face_profile(g);
                        ok &= (p.faces() == 2 * n + 2);
                        ok &= (p.sides() == 4 * n);
                        Stratum s = stratum_of(p);
                        ok &= (s.poles == s.nu.poles());
                        if (n >= 2) {
                            auto arcs = minimal_arcs(top, bottom);
                            ok &= (p.counts.at(1) == arcs.pimples + (arcs.rainbow ? 1 : 0));
                        }
                        if (!ok) return false;
                    }
                }
            }

            // linear involution roundtrips, exhaustive n <= 8
            for (int n = 1; n <= 8 && ok; ++n) {
                auto diagrams = all_chord_diagrams(n);
                for (const auto& top : diagrams) {
                    for (const auto& bottom : diagrams) {
                        auto li = from_pair(top, bottom);
                        auto [t2, b2] = to_pair(li);
                        ok &= (t2 == top && b2 == bottom);
                        if (!ok) return false;
                    }
                }
            }

            // worker-count determinism
            CensusRow a = census(7, 1);
            CensusRow b = census(7, 4);
            ok &= (a.total == b.total && a.cells == b.cells);
            return ok;
        });

    run(7, "convergence of the connectivity series (N = 150 / 300)", [&] {
        bool ok = true;
        auto check_series = [&](const FrequencySeries& series, double tolerance,
                                const std::string& name) {
            double limit = static_cast<double>(series.predicted.evaluate());
            double got = series.cumulative_fraction();
            double err = std::fabs(got - limit) / limit;
            std::printf("      %s: fraction %.6f vs limit %.6f (rel err %.2f%%)\n",
                        name.c_str(), got, limit, 100 * err);
            std::fflush(stdout);
            ok &= (err < tolerance);
        };
        PlaneTree tripod = PlaneTree::star(3);
        PlaneTree star4 = PlaneTree::star(4);
        PlaneTree edge = PlaneTree::single_edge();
        check_series(p_connected_total(4, 300, jobs, &cache), 0.05, "p=4 total, N=300");
        check_series(p_connected_series(star4, edge, 150, jobs, &cache), 0.10,
                     "4-star + edge, N=150");
        check_series(p_connected_series(tripod, tripod, 150, jobs, &cache), 0.10,
                     "3-star + 3-star, N=150");
        return ok;
    });

    std::printf("%s (%d criterion failure%s)\n", failures == 0 ? "ALL PASS" : "FAILED",
                failures, failures == 1 ? "" : "s");
    return failures == 0 ? 0 : 1;
}
