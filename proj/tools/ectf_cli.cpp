// Command-line front end: every library operation as a subcommand with
// stable exit codes (0 = holds/done, 1 = violation found, 2 = usage or
// input error, 3 = inconclusive). Graphs travel between subcommands as
// graph6 lines on the standard streams.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ectf/extension.hpp"
#include "ectf/graph.hpp"
#include "ectf/graph6.hpp"
#include "ectf/refutation.hpp"
#include "ectf/search.hpp"
#include "ectf/separating.hpp"
#include "ectf/version.hpp"

using namespace ectf;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitViolation = 1;
constexpr int kExitUsage = 2;
constexpr int kExitInconclusive = 3;

Graph family_graph(const std::string& name) {
    if (name == "c5") return make_cycle(5);
    if (name == "k2") return build_graph(2, {{0, 1}});
    if (name == "petersen") return make_petersen();
    if (name.rfind("path:", 0) == 0) return make_path(std::stoi(name.substr(5)));
    if (name.rfind("cycle:", 0) == 0) return make_cycle(std::stoi(name.substr(6)));
    throw std::runtime_error("unknown family: " + name +
                             " (expected c5|k2|petersen|path:<n>|cycle:<n>)");
}

Graph load_graph(const std::string& family, const std::string& input) {
    if (!family.empty()) return family_graph(family);
    if (!input.empty() && input != "-") {
        std::ifstream in(input);
        if (!in) throw std::runtime_error("cannot open " + input);
        std::string line;
        while (std::getline(in, line)) {
            if (!line.empty() && line.back() == '\r') line.pop_back();
            if (!line.empty()) return parse_graph6(line);
        }
        throw std::runtime_error("no graph6 line in " + input);
    }
    std::string line;
    while (std::getline(std::cin, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (!line.empty()) return parse_graph6(line);
    }
    throw std::runtime_error("no graph6 line on standard input");
}

BitRow parse_vertex_set(int n, const std::string& text) {
    BitRow out(n);
    std::string token;
    std::istringstream in(text);
    while (std::getline(in, token, ',')) {
        if (token.empty()) continue;
        out.set(std::stoi(token));
    }
    return out;
}

std::string set_to_json(const BitRow& row) {
    std::string s = "[";
    bool first = true;
    for (int v = row.first(); v >= 0; v = row.next(v + 1)) {
        if (!first) s += ",";
        s += std::to_string(v);
        first = false;
    }
    return s + "]";
}

void write_text(const std::string& out_path, const std::string& text) {
    if (out_path.empty() || out_path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path);
    if (!out) throw std::runtime_error("cannot open " + out_path);
    out << text;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact verification, search and refutation for the triangle-free "
                 "extension property"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);

    std::string family, input, out_path;
    auto add_graph_source = [&](CLI::App* cmd) {
        cmd->add_option("--family", family, "c5|k2|petersen|path:<n>|cycle:<n>");
        cmd->add_option("--input", input, "graph6 file, or - for stdin (default)");
    };

    // verify
    auto* verify = app.add_subcommand("verify", "check the extension property at level k");
    int verify_k = 1;
    bool verify_tf = false;
    add_graph_source(verify);
    verify->add_option("--k", verify_k, "level to verify")->required();
    verify->add_flag("--tf", verify_tf, "triangle-free mode (independent X only)");

    // level
    auto* level = app.add_subcommand("level", "largest k with the triangle-free property");
    add_graph_source(level);

    // refute
    auto* refute_cmd = app.add_subcommand("refute", "run the refutation procedure");
    int refute_level = 3, refute_m = 1;
    std::string refute_theta, refute_eps, refute_mode = "parametric", refute_log = "steps";
    double refute_alpha = 0.0;
    bool refute_distinct = false;
    uint64_t refute_budget = 1u << 20;
    add_graph_source(refute_cmd);
    refute_cmd->add_option("--level", refute_level, "claimed completeness level")->required();
    refute_cmd->add_option("--m", refute_m, "tuple length");
    refute_cmd->add_option("--theta", refute_theta, "heaviness threshold (exact, e.g. 0.25 or 1/4)");
    refute_cmd->add_option("--eps", refute_eps, "heaviness root; theta defaults to eps^2");
    auto* alpha_opt = refute_cmd->add_option("--alpha", refute_alpha, "covered-fraction bound");
    refute_cmd->add_option("--mode", refute_mode, "strict|parametric")
        ->check(CLI::IsMember({"strict", "parametric"}));
    int refute_pivot = -1;
    auto* pivot_opt =
        refute_cmd->add_option("--pivot", refute_pivot, "pivot vertex (lowest index otherwise)");
    refute_cmd->add_flag("--distinct", refute_distinct, "require distinct y-tuple entries");
    refute_cmd->add_option("--budget", refute_budget, "pair-search budget for branch (d)");
    refute_cmd->add_option("--log", refute_log, "trace verbosity: none|steps")
        ->check(CLI::IsMember({"none", "steps"}));

    // measure
    auto* measure = app.add_subcommand("measure", "covering measure on a bipartite view");
    std::string a_text, b_text, bprime_text;
    int measure_s = 1;
    uint64_t measure_samples = 0, measure_seed = 0;
    add_graph_source(measure);
    measure->add_option("--a-set", a_text, "comma-separated A vertices")->required();
    measure->add_option("--b-set", b_text, "comma-separated B vertices")->required();
    measure->add_option("--s", measure_s, "tuple length")->required();
    auto* samples_opt =
        measure->add_option("--samples", measure_samples, "Monte Carlo samples (exact if absent)");
    auto* seed_opt = measure->add_option("--seed", measure_seed, "PRNG seed");
    samples_opt->needs(seed_opt);
    auto* bprime_opt =
        measure->add_option("--bprime", bprime_text, "subset of B for the domination check");

    // separating
    auto* separating_cmd = app.add_subcommand("separating", "(s,t)-separating check");
    int sep_s = 0, sep_t = 0;
    add_graph_source(separating_cmd);
    separating_cmd->add_option("--a-set", a_text, "comma-separated A vertices")->required();
    separating_cmd->add_option("--b-set", b_text, "comma-separated B vertices")->required();
    separating_cmd->add_option("--s", sep_s, "max |S|")->required();
    separating_cmd->add_option("--t", sep_t, "max |T|")->required();

    // search
    auto* search_cmd = app.add_subcommand("search", "filter a graph stream to graph6 lines");
    int search_n = 0;
    bool search_dedup = false;
    std::vector<std::string> search_filters;
    search_cmd->add_option("--n", search_n, "enumerate graphs on n vertices");
    search_cmd->add_flag("--dedup", search_dedup, "one representative per isomorphism class");
    search_cmd->add_option("--input", input, "graph6 corpus file");
    search_cmd->add_option("--filter", search_filters,
                           "triangle-free|maximal-triangle-free|twin-free|k-ectf:<k>|level>=:<k>");

    // table
    auto* table = app.add_subcommand("table", "max level per vertex count, as CSV");
    int table_max_n = 5;
    table->add_option("--max-n", table_max_n, "largest n (<= 7)")->required();
    table->add_option("--out", out_path, "output path, - for stdout");

    // gnp
    auto* gnp_cmd = app.add_subcommand("gnp", "completeness-level experiment on G(n,p)");
    std::vector<int> gnp_ns;
    int gnp_trials = 1;
    uint64_t gnp_seed = 0;
    double gnp_p = 0.5;
    gnp_cmd->add_option("--n", gnp_ns, "vertex counts (repeatable)")->required();
    gnp_cmd->add_option("--trials", gnp_trials, "trials per n")->required();
    gnp_cmd->add_option("--seed", gnp_seed, "PRNG seed")->required();
    gnp_cmd->add_option("--p", gnp_p, "edge probability");
    gnp_cmd->add_option("--out", out_path, "output path, - for stdout");

    // gen
    auto* gen = app.add_subcommand("gen", "emit a named family as graph6");
    std::string gen_family;
    gen->add_option("--family", gen_family, "c5|k2|petersen|path:<n>|cycle:<n>")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << std::endl;
        return kExitUsage;
    }

    try {
        if (*verify) {
            Graph g = load_graph(family, input);
            QueryMode mode = verify_tf ? QueryMode::TriangleFree : QueryMode::General;
            auto cert = find_violation(g, verify_k, mode);
            if (cert) {
                std::cout << certificate_to_json(*cert) << "\n";
                return kExitViolation;
            }
            std::cout << "ok\n";
            return kExitOk;
        }

        if (*level) {
            std::cout << ectf_level(load_graph(family, input)) << "\n";
            return kExitOk;
        }

        if (*refute_cmd) {
            Graph g = load_graph(family, input);
            RefutationParams params;
            params.m = refute_m;
            params.mode = refute_mode == "strict" ? RefutationMode::StrictPaper
                                                  : RefutationMode::Parametric;
            if (!refute_theta.empty()) params.theta = parse_rational(refute_theta);
            if (!refute_eps.empty()) params.eps = parse_rational(refute_eps);
            if (alpha_opt->count()) params.alpha = refute_alpha;
            if (pivot_opt->count()) params.pivot = refute_pivot;
            params.distinct_entries = refute_distinct;
            params.pair_search_budget = refute_budget;

            RefutationTrace trace = refute(g, refute_level, params);
            if (refute_log == "steps") {
                std::cout << trace_to_log(trace);
            } else if (trace.outcome.kind == RefutationOutcomeKind::Certificate) {
                std::cout << certificate_to_json(*trace.outcome.certificate) << "\n";
            }
            switch (trace.outcome.kind) {
                case RefutationOutcomeKind::Certificate:
                    return kExitViolation;
                case RefutationOutcomeKind::Inconclusive:
                    return kExitInconclusive;
                case RefutationOutcomeKind::VertexOverflow:
                    std::cerr << "error: vertex overflow (implementation fault)" << std::endl;
                    return kExitUsage;
            }
        }

        if (*measure) {
            Graph g = load_graph(family, input);
            BipartiteView view = induced_bipartite(g, parse_vertex_set(g.vertex_count(), a_text),
                                                   parse_vertex_set(g.vertex_count(), b_text));
            CoveringMeasure mu =
                samples_opt->count()
                    ? covering_measure_sample(view, measure_s, measure_samples, measure_seed)
                    : covering_measure_exact(view, measure_s);
            std::cout << measure_to_text(mu);
            if (bprime_opt->count()) {
                DominationCheck check = measure_domination_check(
                    view, measure_s, parse_vertex_set(g.vertex_count(), bprime_text));
                std::cout << "lhs=" << rational_to_string(check.lhs)
                          << " rhs=" << rational_to_string(check.rhs)
                          << " ok=" << (check.ok ? "true" : "false") << "\n";
            }
            return kExitOk;
        }

        if (*separating_cmd) {
            Graph g = load_graph(family, input);
            BipartiteView view = induced_bipartite(g, parse_vertex_set(g.vertex_count(), a_text),
                                                   parse_vertex_set(g.vertex_count(), b_text));
            auto witness = find_unseparated(view, sep_s, sep_t);
            if (!witness) {
                std::cout << "separating\n";
                return kExitOk;
            }
            std::cout << "{\"S\":" << set_to_json(witness->s_set)
                      << ",\"T\":" << set_to_json(witness->t_set) << "}\n";
            return kExitViolation;
        }

        if (*search_cmd) {
            GraphStream stream = input.empty() ? enumerate_graphs(search_n, search_dedup)
                                               : GraphStream::from_graph6_file(input);
            stream = filter_stream(std::move(stream), search_filters);
            while (auto g = stream.next()) std::cout << write_graph6(*g) << "\n";
            return kExitOk;
        }

        if (*table) {
            write_text(out_path, f_table_csv(f_table(table_max_n)));
            return kExitOk;
        }

        if (*gnp_cmd) {
            std::vector<GnpTrialRow> rows;
            for (int n : gnp_ns) {
                GnpExperiment e = gnp_completeness_experiment(n, gnp_trials, gnp_seed, gnp_p);
                rows.insert(rows.end(), e.trials.begin(), e.trials.end());
            }
            write_text(out_path, gnp_experiment_csv(rows, gnp_seed));
            return kExitOk;
        }

        if (*gen) {
            std::cout << write_graph6(family_graph(gen_family)) << "\n";
            return kExitOk;
        }
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << std::endl;
        return kExitUsage;
    }
    return kExitUsage;
}
