#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "meander/census.hpp"
#include "meander/cli_support.hpp"
#include "meander/freqlab.hpp"
#include "meander/linvol.hpp"
#include "meander/mvconst.hpp"

namespace {

void report_error(const std::string& kind, const std::string& message) {
    nlohmann::json j;
    j["error"]["kind"] = kind;
    j["error"]["message"] = message;
    std::cerr << j.dump() << "\n";
}

struct CommonOpts {
    int jobs = 1;
    std::string cache_dir = meander::default_cache_dir();
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
    cmd->add_option("--jobs", opts.jobs, "worker threads")->check(CLI::PositiveNumber);
    cmd->add_option("--cache-dir", opts.cache_dir,
                    "result cache directory (default $MEANDER_CACHE_DIR; empty disables)");
}

int run_census(int n_max, int cap, const std::string& format, const CommonOpts& opts) {
    if (n_max > cap)
        throw meander::CapExceededError(
            "census --n-max " + std::to_string(n_max) + " exceeds the configured cap " +
            std::to_string(cap) +
            "; raise --cap if you accept the runtime (the pair count grows like the "
            "squared Catalan number)");
    meander::ResultCache cache(opts.cache_dir);
    std::vector<meander::CensusRow> rows;
    for (int n = 1; n <= n_max; ++n)
        rows.push_back(meander::census_cached(n, opts.jobs, cap, &cache));
    if (format == "json")
        std::cout << meander::census_table_json(rows);
    else
        std::cout << meander::census_table_csv(rows);
    return 0;
}

int run_constants(const std::string& stratum, int poles_opt, const std::string& what,
                  int precision) {
    meander::StratumSpec spec;
    if (!stratum.empty()) {
        spec = meander::parse_stratum(stratum);
    } else if (poles_opt >= 4) {
        spec.nu = meander::GeneralizedPartition::principal(poles_opt - 4);
        spec.poles = poles_opt;
    } else {
        throw std::invalid_argument("constants need --stratum or --poles >= 4");
    }

    auto print_expr = [&](const meander::PiExpression& e) {
        std::cout << "exact: " << e.to_exact_string() << "\n";
        std::cout << "decimal: " << e.to_decimal_string(precision) << "\n";
    };

    if (what == "vol") {
        print_expr(meander::volume(spec.nu));
    } else if (what == "cyl1") {
        meander::BigInt c = meander::cyl1(spec.nu);
        std::cout << "exact: " << c.to_string() << "\n";
        std::cout << "decimal: " << c.to_string() << "\n";
    } else if (what == "cyl11") {
        print_expr(meander::cyl11(spec.nu));
    } else if (what == "p1") {
        print_expr(meander::p1(spec.nu));
    } else if (what == "coeff+" || what == "coeff-") {
        meander::AsymptoticCoefficient coeff =
            (what == "coeff+") ? meander::mplus_nu_coefficient(spec.nu.without_zeros())
                               : meander::mminus_nu_coefficient(spec.nu.without_zeros());
        print_expr(coeff.leading);
        std::cout << "N-exponent: " << coeff.exponent << "\n";
    } else {
        throw std::invalid_argument("unknown --what '" + what + "'");
    }
    return 0;
}

int run_converge(const std::string& trees, int leaves, const std::string& diagram, int N,
                 const std::string& out_path, int precision, const CommonOpts& opts) {
    meander::ResultCache cache(opts.cache_dir);
    meander::FrequencySeries series;
    if (!trees.empty()) {
        size_t comma = trees.find(',');
        if (comma == std::string::npos)
            throw std::invalid_argument("--trees needs 'word,word'");
        meander::PlaneTree top = meander::parse_tree(trees.substr(0, comma));
        meander::PlaneTree bottom = meander::parse_tree(trees.substr(comma + 1));
        if (N < std::max(top.edges(), bottom.edges()))
            std::cerr << "meander: N is smaller than the tree edge count; series is empty\n";
        if (!diagram.empty()) {
            size_t c2 = diagram.find(',');
            if (c2 == std::string::npos)
                throw std::invalid_argument("--diagram needs 'word,word'");
            meander::SeparatrixDiagram dstar(
                meander::parse_tree(diagram.substr(0, c2)),
                meander::parse_tree(diagram.substr(c2 + 1)));
            series = meander::p_diagram_series(top, bottom, dstar, N, opts.jobs, &cache);
        } else {
            series = meander::p_connected_series(top, bottom, N, opts.jobs, &cache);
        }
    } else if (leaves >= 4) {
        series = meander::p_connected_total(leaves, N, opts.jobs, &cache);
    } else {
        throw std::invalid_argument("converge needs --trees or --leaves >= 4");
    }

    std::string csv = series.to_csv(precision);
    if (out_path.empty() || out_path == "-") {
        std::cout << csv;
    } else {
        std::ofstream out(out_path, std::ios::binary);  // LF endings everywhere
        out << csv;
    }
    return 0;
}

int run_involution(const std::string& spec) {
    auto [top, bottom] = meander::parse_meander_spec(spec);
    meander::LinearInvolution li = meander::from_pair(top, bottom);
    std::cout << li.render();
    auto [top2, bottom2] = meander::to_pair(li);
    std::cout << "roundtrip: " << ((top2 == top && bottom2 == bottom) ? "ok" : "FAILED")
              << "\n";
    if (!(top2 == top && bottom2 == bottom))
        throw std::logic_error("linear involution roundtrip failed");
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"meander census, exact Masur-Veech constants and convergence series"};
    app.require_subcommand(1);

    // census
    auto* census_cmd = app.add_subcommand("census", "meander counts M_{n,p} by poles");
    int n_max = 9, cap = meander::kDefaultCensusCap;
    std::string format = "csv";
    CommonOpts census_opts;
    census_cmd->add_option("--n-max", n_max, "largest arc count")->required();
    census_cmd->add_option("--cap", cap, "configured enumeration cap");
    census_cmd->add_option("--format", format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    add_common(census_cmd, census_opts);

    // constants
    auto* const_cmd = app.add_subcommand("constants", "exact volumes and coefficients");
    std::string stratum, what = "p1";
    int poles_opt = 0, precision = 12;
    const_cmd->add_option("--stratum", stratum, "e.g. \"1^2,-1^6\"");
    const_cmd->add_option("--poles", poles_opt, "principal stratum with p poles");
    const_cmd->add_option("--what", what, "vol|cyl1|cyl11|p1|coeff+|coeff-")
        ->check(CLI::IsMember({"vol", "cyl1", "cyl11", "p1", "coeff+", "coeff-"}));
    const_cmd->add_option("--precision", precision, "significant digits");

    // converge
    auto* conv_cmd = app.add_subcommand("converge", "empirical connectivity series");
    std::string trees, diagram, out_path;
    int leaves = 0, N = 0;
    int conv_precision = 12;
    CommonOpts conv_opts;
    conv_cmd->add_option("--trees", trees, "pair of tree words, e.g. \"(()()),(()())\"");
    conv_cmd->add_option("--leaves", leaves, "total leaf count (sums over tree pairs)");
    conv_cmd->add_option("--diagram", diagram, "equator-dual diagram 'word,word'");
    conv_cmd->add_option("--N", N, "largest arc count")->required();
    conv_cmd->add_option("--out", out_path, "CSV output path (default stdout)");
    conv_cmd->add_option("--precision", conv_precision, "significant digits");
    add_common(conv_cmd, conv_opts);

    // involution
    auto* inv_cmd = app.add_subcommand("involution", "linear involution of an arc pair");
    std::string meander_spec;
    inv_cmd->add_option("--meander", meander_spec, "pair spec 'a-b,.../c-d,...'")
        ->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (census_cmd->parsed()) return run_census(n_max, cap, format, census_opts);
        if (const_cmd->parsed())
            return run_constants(stratum, poles_opt, what, precision);
        if (conv_cmd->parsed())
            return run_converge(trees, leaves, diagram, N, out_path, conv_precision,
                                conv_opts);
        if (inv_cmd->parsed()) return run_involution(meander_spec);
    } catch (const meander::CapExceededError& e) {
        report_error("cap_exceeded", e.what());
        return 2;
    } catch (const std::invalid_argument& e) {
        report_error("invalid_argument", e.what());
        return 1;
    } catch (const std::logic_error& e) {
        report_error("internal_inconsistency", e.what());
        return 3;
    } catch (const std::exception& e) {
        report_error("error", e.what());
        return 1;
    }
    return 0;
}
