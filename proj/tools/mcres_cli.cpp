// mcres: resistance distance of finite ergodic Markov chains.
//
//   mcres analyze chain.csv [--format json] [--tolerance kirchhoff=1e-7]
//   mcres sumrule chain.json --trials 200 --seed 7
//   mcres forest-verify chain.csv --forest-cap 8
//   mcres simulate chain.csv --pairs 1-3,2-1 --replicas 100000
//   mcres counterexample
//   mcres generate --n 5 --kind reversible --seed 3 -o chain.json
//
// Exit status: 0 all checks pass, 1 input or usage error, 2 a check failed.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "mcres/chain_io.hpp"
#include "mcres/error.hpp"
#include "mcres/generate.hpp"
#include "mcres/report.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 1;
constexpr int kExitCheckFailed = 2;

struct CommonOptions {
    std::string format = "human";
    std::vector<std::string> tolerance_overrides;
};

void add_common(CLI::App* cmd, CommonOptions& common) {
    cmd->add_option("--format", common.format, "Report format")->check(CLI::IsMember({"human", "json"}));
    cmd->add_option("--tolerance", common.tolerance_overrides,
                    "Override a tolerance as name=value (repeatable)");
}

mcres::Tolerances build_tolerances(const CommonOptions& common) {
    mcres::Tolerances tol;
    for (const auto& spec : common.tolerance_overrides) {
        const auto eq = spec.find('=');
        if (eq == std::string::npos) {
            throw mcres::Error(mcres::ErrorKind::InvalidArgument, "tolerance override '" + spec + "' is not name=value");
        }
        const std::string name = spec.substr(0, eq);
        double value = 0.0;
        try {
            value = std::stod(spec.substr(eq + 1));
        } catch (const std::exception&) {
            throw mcres::Error(mcres::ErrorKind::InvalidArgument, "tolerance value in '" + spec + "' is not a number");
        }
        if (!mcres::apply_tolerance_override(tol, name, value)) {
            throw mcres::Error(mcres::ErrorKind::InvalidArgument, "unknown tolerance '" + name + "'");
        }
    }
    return tol;
}

std::uint64_t default_seed() {
    if (const char* env = std::getenv("MR_SEED")) {
        try {
            return std::stoull(env);
        } catch (const std::exception&) {
            throw mcres::Error(mcres::ErrorKind::InvalidArgument, std::string("MR_SEED='") + env + "' is not an integer");
        }
    }
    return 0;
}

// "all" or a comma list of 1-based pairs such as "1-3,2-1".
std::vector<std::pair<std::size_t, std::size_t>> parse_pairs(const std::string& text) {
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    if (text == "all") return pairs;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto comma = text.find(',', pos);
        const std::string item = text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
        const auto dash = item.find('-');
        std::size_t i = 0, j = 0;
        try {
            if (dash == std::string::npos) throw std::invalid_argument(item);
            i = std::stoul(item.substr(0, dash));
            j = std::stoul(item.substr(dash + 1));
        } catch (const std::exception&) {
            throw mcres::Error(mcres::ErrorKind::InvalidArgument, "pair '" + item + "' is not of the form i-j");
        }
        if (i == 0 || j == 0) throw mcres::Error(mcres::ErrorKind::InvalidArgument, "states are numbered from 1");
        pairs.emplace_back(i - 1, j - 1);
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return pairs;
}

int emit(const mcres::Json& doc, const std::string& format) {
    if (format == "json") {
        std::cout << doc.dump(2) << "\n";
    } else {
        std::cout << mcres::render_human(doc);
    }
    return doc.value("all_pass", false) ? kExitOk : kExitCheckFailed;
}

int emit_error(const mcres::Error& e, const std::string& format) {
    std::cerr << "error: " << e.what() << "\n";
    if (format == "json") {
        mcres::Json doc;
        doc["error"] = std::string(mcres::to_string(e.kind()));
        doc["message"] = e.what();
        std::cout << doc.dump(2) << "\n";
    }
    return kExitInput;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Resistance distance of finite ergodic Markov chains"};
    app.require_subcommand(1);

    CommonOptions common;
    std::string input;
    std::optional<std::uint64_t> seed;
    std::size_t replicas = 100'000;
    std::uint64_t max_steps = 10'000'000;
    unsigned workers = 0;
    std::size_t forest_cap = mcres::kDefaultForestCap;

    auto* analyze = app.add_subcommand("analyze", "Compute every representation of Omega and verify all identities");
    analyze->add_option("input", input, "Chain file (.csv or .json)")->required();
    add_common(analyze, common);
    std::string eigentime = "on";
    bool with_simulation = false;
    analyze->add_option("--forest-cap", forest_cap, "Largest chain for the forest oracle");
    analyze->add_option("--eigentime", eigentime, "Eigenvalue cross-checks")->check(CLI::IsMember({"on", "off"}));
    analyze->add_flag("--simulate", with_simulation, "Add Monte Carlo estimates of Omega");
    analyze->add_option("--seed", seed, "Simulation seed (default: $MR_SEED or 0)");
    analyze->add_option("--replicas", replicas, "Simulation replicas per leg");

    auto* sumrule = app.add_subcommand("sumrule", "Check the general sum rule on random and canonical (M, K) pairs");
    sumrule->add_option("input", input, "Chain file")->required();
    add_common(sumrule, common);
    std::size_t trials = 200;
    sumrule->add_option("--trials", trials, "Random pairs to draw");
    sumrule->add_option("--seed", seed, "Pair seed (default: $MR_SEED or 0)");

    auto* forest = app.add_subcommand("forest-verify", "Compare in-forest enumeration with the linear-algebra route");
    forest->add_option("input", input, "Chain file")->required();
    add_common(forest, common);
    forest->add_option("--forest-cap,--cap", forest_cap, "Refuse chains with more states than this");

    auto* simulate = app.add_subcommand("simulate", "Monte Carlo estimates of Omega against the closed form");
    simulate->add_option("input", input, "Chain file")->required();
    add_common(simulate, common);
    std::string pairs_text = "all";
    simulate->add_option("--pairs", pairs_text, "'all' or 1-based pairs such as 1-3,2-1");
    simulate->add_option("--seed", seed, "Seed (default: $MR_SEED or 0)");
    simulate->add_option("--replicas", replicas, "Replicas per leg")->check(CLI::Range(std::size_t{2}, std::size_t{1} << 40));
    simulate->add_option("--max-steps", max_steps, "Step cap per replica");
    simulate->add_option("--workers", workers, "Threads (0 = all cores); results do not depend on it");

    auto* counter = app.add_subcommand("counterexample", "Triangle-inequality counterexample for a reversible chain");
    add_common(counter, common);

    auto* generate = app.add_subcommand("generate", "Write a random chain file");
    std::size_t gen_n = 0;
    std::string kind_name;
    std::string output;
    std::string gen_format;
    generate->add_option("--n", gen_n, "Number of states (2..64)")->required();
    generate->add_option("--kind", kind_name, "ergodic | reversible | doubly_stochastic | symmetric_doubly_stochastic | birth_death")
        ->required();
    generate->add_option("--seed", seed, "Seed (default: $MR_SEED or 0)");
    generate->add_option("-o,--output", output, "Output path; format from extension unless --format given")->required();
    generate->add_option("--format", gen_format, "csv | json")->check(CLI::IsMember({"csv", "json"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitInput;
    }

    try {
        const mcres::Tolerances tol = build_tolerances(common);
        const std::uint64_t the_seed = seed ? *seed : default_seed();
        mcres::SimConfig sim{the_seed, replicas, max_steps, workers};

        if (*analyze) {
            mcres::AnalyzeOptions opts;
            opts.tol = tol;
            opts.forest_cap = forest_cap;
            opts.eigentime = eigentime == "on";
            if (with_simulation) opts.simulation = sim;
            return emit(mcres::analyze_report(mcres::load_chain(input, tol), opts), common.format);
        }
        if (*sumrule) {
            return emit(mcres::sumrule_report(mcres::load_chain(input, tol), trials, the_seed, tol), common.format);
        }
        if (*forest) {
            return emit(mcres::forest_report(mcres::load_chain(input, tol), forest_cap, tol), common.format);
        }
        if (*simulate) {
            return emit(mcres::simulate_report(mcres::load_chain(input, tol), parse_pairs(pairs_text), sim, tol),
                        common.format);
        }
        if (*counter) {
            return emit(mcres::counterexample_report(tol), common.format);
        }
        if (*generate) {
            const auto kind = mcres::parse_chain_kind(kind_name);
            if (!kind) throw mcres::Error(mcres::ErrorKind::InvalidArgument, "unknown chain kind '" + kind_name + "'");
            const auto chain = mcres::generate_random_chain(gen_n, *kind, the_seed, tol);
            const bool json = gen_format.empty() ? mcres::format_from_extension(output) == mcres::ChainFormat::json
                                                 : gen_format == "json";
            std::ofstream out(output, std::ios::binary);
            if (!out) throw mcres::Error(mcres::ErrorKind::InvalidArgument, "cannot write " + output);
            out << (json ? mcres::format_chain_json(chain) : mcres::format_chain_csv(chain));
            return kExitOk;
        }
    } catch (const mcres::Error& e) {
        return emit_error(e, common.format);
    }
    return kExitInput;
}
