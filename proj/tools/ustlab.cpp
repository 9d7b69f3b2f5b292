// ustlab: exact and simulated distributions of the number of common edges
// between independent uniform random spanning trees.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "ustlab/distribution.hpp"
#include "ustlab/exact_count.hpp"
#include "ustlab/montecarlo.hpp"
#include "ustlab/verify.hpp"

using namespace ustlab;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitInfeasible = 2;
constexpr int kExitVerifyFailed = 3;

struct GraphSource {
    int complete = 0;
    std::vector<int> multipartite;
    int path = 0;
    int cycle = 0;
    std::vector<int> double_clique;  // n, bridges
    std::string file;

    bool chosen() const {
        return complete || !multipartite.empty() || path || cycle || !double_clique.empty() ||
               !file.empty();
    }

    std::pair<Graph, std::string> build() const {
        if (complete) return {Graph::complete(complete), "K_" + std::to_string(complete)};
        if (!multipartite.empty()) {
            std::string label = "K_{";
            for (std::size_t i = 0; i < multipartite.size(); ++i)
                label += (i ? "," : "") + std::to_string(multipartite[i]);
            label += "}";
            return {Graph::multipartite(Partition(multipartite)), label};
        }
        if (path) return {Graph::path(path), "path_" + std::to_string(path)};
        if (cycle) return {Graph::cycle(cycle), "cycle_" + std::to_string(cycle)};
        if (!double_clique.empty()) {
            if (double_clique.size() != 2)
                throw CLI::ValidationError("--double-clique needs N K");
            return {Graph::double_clique(double_clique[0], double_clique[1]),
                    "double_clique(" + std::to_string(double_clique[0]) + "," +
                        std::to_string(double_clique[1]) + ")"};
        }
        if (!file.empty()) return {read_edge_list_file(file), "file:" + file};
        throw CLI::ValidationError("no graph source given");
    }
};

void add_graph_flags(CLI::App* cmd, GraphSource& src) {
    auto* group = cmd->add_option_group("graph", "exactly one graph source");
    group->add_option("--complete", src.complete, "complete graph K_N")->check(CLI::PositiveNumber);
    group->add_option("--multipartite", src.multipartite,
                      "complete multipartite graph K_{n1,...,nd} (comma separated)")
        ->delimiter(',');
    group->add_option("--path", src.path, "path on N vertices")->check(CLI::PositiveNumber);
    group->add_option("--cycle", src.cycle, "cycle on N vertices")->check(CLI::PositiveNumber);
    group->add_option("--double-clique", src.double_clique,
                      "two cliques on N vertices total joined by K disjoint edges")
        ->expected(2)
        ->delimiter(',');
    group->add_option("--file", src.file, "edge-list file (header 'n m', then 'u v' lines)");
    group->require_option(0, 1);
}

std::uint64_t default_seed() {
    if (const char* env = std::getenv("USTLAB_SEED")) {
        try {
            return std::stoull(env);
        } catch (const std::exception&) {
            std::cerr << "warning: ignoring malformed USTLAB_SEED='" << env << "'\n";
        }
    }
    return 0;
}

void write_output(const std::string& path, const std::string& text) {
    if (path.empty()) {
        std::cout << text << '\n';
        return;
    }
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open output file: " + path);
    out << text << '\n';
}

void print_pmf_summary(const Pmf& pmf, std::ostream& out) {
    const double mean = pmf.mean();
    const double variance = pmf.variance();
    const double tv_poisson = tv_distance(pmf, poisson_pmf(mean));
    out << "mean " << mean;
    if (pmf.exact()) out << " (= " << to_string(pmf.exact_mean()) << ")";
    out << ", variance " << variance;
    if (pmf.exact()) out << " (= " << to_string(pmf.exact_variance()) << ")";
    out << ", TV to fitted Poisson(" << mean << ") " << tv_poisson << '\n';
}

// ---- subcommands ----------------------------------------------------------

int run_exact_pmf(const GraphSource& src, const std::string& out_path, const std::string& format,
                  long forest_cap) {
    Pmf law;
    std::string label;
    if (src.complete) {
        if (src.complete < 2) throw CLI::ValidationError("--complete needs N >= 2 for the exact law");
        label = "K_" + std::to_string(src.complete);
        law = exact_pmf_complete(src.complete);
    } else {
        auto [graph, name] = src.build();
        label = name;
        law = exact_pmf_general(graph, forest_cap);
    }

    std::cout << "# exact common-edge law for " << label << '\n';
    for (int m = 0; m <= law.support_max(); ++m) {
        if (law.exact_mass(m) == 0) continue;
        std::cout << m << "  " << to_string(law.exact_mass(m)) << "  " << law.mass(m) << '\n';
    }
    print_pmf_summary(law, std::cout);
    if (!out_path.empty())
        write_output(out_path, format == "csv" ? pmf_to_csv(law) : pmf_to_json(law));
    return kExitOk;
}

struct SimulateArgs {
    GraphSource src;
    std::string preset;
    std::vector<double> gnp;  // n, p
    std::uint64_t trials = 100000;
    bool trials_given = false;
    std::uint64_t seed = 0;
    int workers = 0;
    int k = 2;
    std::string out_path;
    std::string format = "json";
};

int run_simulate(const SimulateArgs& args) {
    SampleReport report;
    if (!args.preset.empty()) {
        const ScenarioPreset* preset = find_preset(args.preset);
        if (preset == nullptr) {
            std::cerr << "unknown preset '" << args.preset << "'; available:\n";
            for (const auto& p : scenario_presets())
                std::cerr << "  " << p.name << " - " << p.description << '\n';
            return kExitUsage;
        }
        const std::uint64_t trials = args.trials_given ? args.trials : preset->default_trials;
        if (preset->family == "gnp") {
            report = simulate_gnp({preset->params.at(0), preset->p}, trials, {args.seed},
                                  args.workers);
        } else {
            report = simulate_common_edges(build_preset_graph(*preset), trials, {args.seed},
                                           args.workers, preset->name);
        }
    } else if (!args.gnp.empty()) {
        if (args.gnp.size() != 2) throw CLI::ValidationError("--gnp needs N P");
        report = simulate_gnp({static_cast<int>(args.gnp[0]), args.gnp[1]}, args.trials,
                              {args.seed}, args.workers);
    } else if (args.k != 2) {
        if (!args.src.complete)
            throw CLI::ValidationError("--k is only meaningful with --complete N");
        report = simulate_k_trees(args.src.complete, args.k, args.trials, {args.seed}, args.workers);
    } else {
        auto [graph, label] = args.src.build();
        report = simulate_common_edges(graph, args.trials, {args.seed}, args.workers, label);
    }

    std::cout << "graph " << report.graph << ", trials " << report.trials << ", seed "
              << report.seed << '\n';
    print_pmf_summary(report.empirical, std::cout);
    for (const auto& [key, value] : report.extra) std::cout << key << " " << value << '\n';
    write_output(args.out_path,
                 args.format == "csv" ? report_to_csv(report) : report_to_json(report));
    return kExitOk;
}

int run_verify(const std::vector<std::string>& checks, std::optional<int> n, std::uint64_t seed,
               std::uint64_t trials, const std::string& out_path, const std::string& format) {
    VerifyOptions options;
    options.seed = seed;
    options.sampler_trials = trials;
    if (n) {
        options.moon_n = *n;
        options.lemma1_n = *n;
        options.chen_stein_n = *n;
    }
    const auto results = run_verification(checks, options);

    bool all_pass = true;
    nlohmann::json j;
    j["checks"] = nlohmann::json::array();
    for (const auto& r : results) {
        all_pass = all_pass && r.pass;
        std::cout << (r.pass ? "[PASS] " : "[FAIL] ") << r.name << ": " << r.detail << '\n';
        j["checks"].push_back({{"name", r.name}, {"pass", r.pass}, {"detail", r.detail}});
    }
    j["pass"] = all_pass;
    if (!out_path.empty() || format == "json") write_output(out_path, j.dump(2));
    return all_pass ? kExitOk : kExitVerifyFailed;
}

int run_bounds(int k, std::optional<int> n_single, int n_min, int n_max, int n_step,
               const std::string& out_path, const std::string& format) {
    std::vector<int> ns;
    if (n_single)
        ns.push_back(*n_single);
    else
        for (int n = n_min; n <= n_max; n += n_step) ns.push_back(n);

    std::ostringstream csv;
    csv << "n,k,lower,upper\n";
    nlohmann::json rows = nlohmann::json::array();
    std::cout << "n\tk\tlower\tupper\n";
    for (int n : ns) {
        const auto b = k_tree_bounds(n, k);
        std::cout << n << '\t' << k << '\t' << b.lower << '\t' << b.upper << '\n';
        csv << n << ',' << k << ',' << b.lower << ',' << b.upper << '\n';
        rows.push_back({{"n", n}, {"k", k}, {"lower", b.lower}, {"upper", b.upper}});
    }
    if (!out_path.empty()) write_output(out_path, format == "csv" ? csv.str() : rows.dump(2));
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"common edges of independent uniform random spanning trees"};
    app.require_subcommand(1);

    // exact-pmf
    GraphSource exact_src;
    std::string exact_out, exact_format = "json";
    long forest_cap = kForestEnumerationCap;
    auto* exact_cmd =
        app.add_subcommand("exact-pmf", "exact distribution of the common-edge count");
    add_graph_flags(exact_cmd, exact_src);
    exact_cmd->add_option("--out", exact_out, "write the pmf to this file");
    exact_cmd->add_option("--format", exact_format, "json|csv")
        ->check(CLI::IsMember({"json", "csv"}));
    exact_cmd->add_option("--forest-cap", forest_cap, "forest enumeration cap");

    // simulate
    SimulateArgs sim;
    auto* sim_cmd = app.add_subcommand("simulate", "seeded Monte Carlo experiments");
    add_graph_flags(sim_cmd, sim.src);
    sim_cmd->add_option("--gnp", sim.gnp, "fresh G(N,P) per trial")->expected(2);
    sim_cmd->add_option("--preset", sim.preset, "named scenario (see --list-presets)");
    auto* trials_opt =
        sim_cmd->add_option("--trials", sim.trials, "number of trials")->check(CLI::PositiveNumber);
    sim_cmd->add_option("--seed", sim.seed, "rng seed (default: $USTLAB_SEED or 0)");
    sim_cmd->add_option("--workers", sim.workers, "worker threads, 0 = all cores");
    sim_cmd->add_option("--k", sim.k, "number of independent trees (complete graphs only)")
        ->check(CLI::Range(2, 64));
    sim_cmd->add_option("--out", sim.out_path, "write the report to this file");
    sim_cmd->add_option("--format", sim.format, "json|csv")->check(CLI::IsMember({"json", "csv"}));
    bool list_presets = false;
    sim_cmd->add_flag("--list-presets", list_presets, "list scenario presets and exit");

    // verify
    std::vector<std::string> checks;
    std::optional<int> verify_n;
    std::uint64_t verify_seed = 0;
    std::uint64_t verify_trials = 50000;
    std::string verify_out, verify_format = "text";
    auto* verify_cmd =
        app.add_subcommand("verify", "oracle-agreement checks (exit 3 on failure)");
    verify_cmd->add_option("--check", checks, "subset of checks to run (default: all)")
        ->check(CLI::IsMember(verify_check_names()));
    verify_cmd->add_option("--n", verify_n, "override the n used by size-parameterized checks");
    verify_cmd->add_option("--seed", verify_seed, "rng seed for stochastic checks");
    verify_cmd->add_option("--trials", verify_trials, "trials for the sampler check");
    verify_cmd->add_option("--out", verify_out, "write the machine-readable report here");
    verify_cmd->add_option("--format", verify_format, "text|json")
        ->check(CLI::IsMember({"text", "json"}));

    // bounds
    int bounds_k = 3, n_min = 10, n_max = 100, n_step = 10;
    std::optional<int> bounds_n;
    std::string bounds_out, bounds_format = "csv";
    auto* bounds_cmd =
        app.add_subcommand("bounds", "union / Bonferroni bounds for k-tree intersections");
    bounds_cmd->add_option("--k", bounds_k, "number of trees (k >= 3)")->required();
    bounds_cmd->add_option("--n", bounds_n, "single n instead of a sweep");
    bounds_cmd->add_option("--n-min", n_min, "sweep start");
    bounds_cmd->add_option("--n-max", n_max, "sweep end");
    bounds_cmd->add_option("--n-step", n_step, "sweep step")->check(CLI::PositiveNumber);
    bounds_cmd->add_option("--out", bounds_out, "write the table to this file");
    bounds_cmd->add_option("--format", bounds_format, "json|csv")
        ->check(CLI::IsMember({"json", "csv"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (exact_cmd->parsed()) return run_exact_pmf(exact_src, exact_out, exact_format, forest_cap);
        if (sim_cmd->parsed()) {
            if (list_presets) {
                for (const auto& p : scenario_presets())
                    std::cout << p.name << "\t" << p.description << "\t(default trials "
                              << p.default_trials << ")\n";
                return kExitOk;
            }
            sim.trials_given = trials_opt->count() > 0;
            if (sim_cmd->count("--seed") == 0) sim.seed = default_seed();
            const int sources = (sim.src.chosen() ? 1 : 0) + (sim.gnp.empty() ? 0 : 1) +
                                (sim.preset.empty() ? 0 : 1);
            if (sources != 1)
                throw CLI::ValidationError("pick exactly one of a graph source, --gnp, or --preset");
            return run_simulate(sim);
        }
        if (verify_cmd->parsed())
            return run_verify(checks, verify_n, verify_seed, verify_trials, verify_out,
                              verify_format);
        if (bounds_cmd->parsed())
            return run_bounds(bounds_k, bounds_n, n_min, n_max, n_step, bounds_out, bounds_format);
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const InfeasibleError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInfeasible;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInfeasible;
    }
    return kExitUsage;
}
