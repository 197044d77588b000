// Command line front end. Graph files use the "p/e/w" text format with
// 1-based ids; every JSON document and every vertex argument uses 0-based ids.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "stf/decompose.hpp"
#include "stf/errors.hpp"
#include "stf/harness.hpp"
#include "stf/patterns.hpp"
#include "stf/solvers.hpp"
#include "stf/three_in_a_tree.hpp"

using namespace stf;
using nlohmann::json;

namespace {

enum Exit { kOk = 0, kValidatorFailed = 1, kBadInput = 2, kPatternFound = 3, kCapExceeded = 4, kInternal = 5 };

void write_json(const json& j, const std::string& path) {
    if (path.empty() || path == "-") {
        std::cout << j.dump(2) << "\n";
        return;
    }
    std::ofstream out(path);
    if (!out) throw InputError("cannot write " + path);
    out << j.dump(2) << "\n";
}

json claw_to_json(const SubdividedClaw& c) {
    json legs = json::array();
    for (const auto& leg : c.legs) legs.push_back(leg);
    return {{"center", c.center}, {"legs", legs}};
}

json histogram(const Esd& esd) {
    std::map<int, int> h;
    for (const auto& p : nonempty_particles(esd)) ++h[p.members.count()];
    json out = json::object();
    for (auto [size, count] : h) out[std::to_string(size)] = count;
    return out;
}

struct GenOptions {
    std::string generator = "random_filtered", shape = "path", weights = "unit";
    InstanceSpec spec;
};

void add_generator_options(CLI::App* app, GenOptions& o) {
    app->add_option("--generator", o.generator, "line_graph, random_filtered or shape")->capture_default_str();
    app->add_option("-n,--n", o.spec.n, "vertices; base vertices for line graphs; leg length for spiders")
        ->capture_default_str();
    app->add_option("-p,--p", o.spec.p, "edge probability")->capture_default_str();
    app->add_flag("--tree-base", o.spec.tree_base, "line graphs of random trees");
    app->add_option("-t,--t", o.spec.t, "leg length of the excluded pattern")->capture_default_str();
    app->add_option("-s,--s", o.spec.s, "number of disjoint excluded patterns")->capture_default_str();
    app->add_option("--shape", o.shape, "claw, spider, cycle or path")->capture_default_str();
    app->add_option("--weights", o.weights, "unit or uniform")->capture_default_str();
    app->add_option("--max-weight", o.spec.max_weight, "largest uniform weight")->capture_default_str();
    app->add_option("--rejection-limit", o.spec.rejection_limit, "attempts of the filtered generator")
        ->capture_default_str();
}

InstanceSpec resolve(GenOptions& o) {
    InstanceSpec s = o.spec;
    s.generator = parse_generator(o.generator);
    s.shape = parse_shape(o.shape);
    s.weights = parse_weight_model(o.weights);
    return s;
}

struct SolverOptions {
    std::string epsilon = "1/2", family_cap = "100000";
    SolverConfig cfg;
};

void add_solver_options(CLI::App* app, SolverOptions& o) {
    app->add_option("--epsilon", o.epsilon, "accuracy of the approximation scheme, e.g. 0.2 or 1/5")
        ->capture_default_str();
    app->add_option("--n0", o.cfg.n0, "instances below this size are solved by brute force")->capture_default_str();
    app->add_option("--budget", o.cfg.budget, "limit on recursive calls, 0 for none")->capture_default_str();
    app->add_option("--family-cap", o.family_cap, "cap on guessed sets per call, or 'none'")->capture_default_str();
    app->add_flag("--memo", o.cfg.memoize, "memoize subproblems");
}

SolverConfig resolve(SolverOptions& o) {
    SolverConfig c = o.cfg;
    c.epsilon = parse_rational(o.epsilon);
    if (o.family_cap == "none")
        c.family_cap = std::nullopt;
    else
        try {
            c.family_cap = std::stol(o.family_cap);
        } catch (const std::exception&) {
            throw InputError("family cap must be a number or 'none'");
        }
    return c;
}

int cmd_generate(GenOptions& go, std::uint64_t seed, const std::string& out_path) {
    Instance inst = generate(resolve(go), seed);
    std::ostringstream text;
    text << "c generated seed " << seed << "\n";
    write_graph(text, inst.g, inst.w);
    if (out_path.empty() || out_path == "-") {
        std::cout << text.str();
    } else {
        std::ofstream out(out_path);
        if (!out) throw InputError("cannot write " + out_path);
        out << text.str();
    }
    return kOk;
}

int cmd_decompose(const std::string& path, int s, int t, bool paranoid, const std::string& json_path) {
    WeightedGraph wg = read_graph_file(path);
    const Graph& g = wg.g;
    try {
        SFreeDecomposition d = decompose_s_sttt_free(g, s, t, DecomposeOptions{paranoid});
        auto issues = check_s_free(g, g.all(), d, s, t);
        json peeled = json::array();
        for (const auto& c : d.peeled) peeled.push_back(claw_to_json(c));
        json j{{"pattern_paths", d.paths},
               {"peeled", peeled},
               {"X", set_to_json(d.x)},
               {"esd", esd_to_json(d.esd)},
               {"particle_size_histogram", histogram(d.esd)},
               {"checks", issues}};
        write_json(j, json_path);
        std::cerr << "paths " << d.paths.size() << " (budget " << main_path_budget(g.size()) << "), X "
                  << d.x.count() << " (budget " << peel_budget(s, t, g.size()) << "), largest particle "
                  << max_particle_size(d.esd) << "\n";
        for (const auto& m : issues) std::cerr << "check failed: " << m << "\n";
        return issues.empty() ? kOk : kValidatorFailed;
    } catch (const SIllegalInput& e) {
        auto c = find_sttt(g, t);
        json j{{"error", e.what()}};
        if (c) j["pattern"] = claw_to_json(*c);
        write_json(j, json_path);
        return kPatternFound;
    }
}

int cmd_three_in_a_tree(const std::string& path, const std::vector<int>& terminals, const std::string& json_path) {
    WeightedGraph wg = read_graph_file(path);
    const Graph& g = wg.g;
    VertexSet z(g.size());
    for (int v : terminals) {
        if (v < 0 || v >= g.size()) throw InputError("terminal " + std::to_string(v) + " out of range");
        z.set(v);
    }
    ThreeInATreeOutcome out = three_in_a_tree(g, z);
    std::vector<std::string> issues;
    json j;
    if (out.is_tree()) {
        issues = check_tree_certificate(g, z, *out.tree);
        j = {{"outcome", "tree"},
             {"tree", set_to_json(out.tree->tree)},
             {"terminals", out.tree->terminals}};
    } else {
        issues = check_terminal_decomposition(g, g.all(), z, out.esd);
        j = {{"outcome", "esd"}, {"esd", esd_to_json(out.esd)}};
    }
    j["checks"] = issues;
    write_json(j, json_path);
    return issues.empty() ? kOk : kValidatorFailed;
}

int cmd_solve(const std::string& path, const std::string& mode, int s, int t, bool paranoid, SolverOptions& so,
              const std::string& json_path) {
    WeightedGraph wg = read_graph_file(path);
    SolverConfig cfg = resolve(so);
    cfg.s = s;
    cfg.t = t;
    cfg.paranoid = paranoid;
    SolveResult r;
    if (mode == "exact")
        r = solve_exact_subexp(wg.g, wg.w, cfg);
    else if (mode == "qptas")
        r = solve_qptas(wg.g, wg.w, cfg);
    else
        throw InputError("mode must be exact or qptas");
    const bool independent = is_independent(wg.g, r.set);
    json j{{"schema_version", kReportSchemaVersion},
           {"weight", r.weight},
           {"vertices", set_to_json(r.set)},
           {"mode", mode},
           {"certified_independent", independent},
           {"stats",
            {{"calls", r.stats.calls},
             {"depth", r.stats.depth},
             {"particles", r.stats.particles},
             {"matchings", r.stats.matchings},
             {"brute_force", r.stats.brute_force},
             {"branchings", r.stats.branchings},
             {"decompositions", r.stats.decompositions},
             {"guesses", r.stats.guesses},
             {"pruned_guesses", r.stats.pruned_guesses},
             {"memo_hits", r.stats.memo_hits},
             {"family_truncated", r.stats.family_truncated}}}};
    if (!json_path.empty()) write_json(j, json_path);
    std::cout << "weight " << r.weight << "\nvertices";
    for (int v : r.set) std::cout << ' ' << v;
    std::cout << "\n";
    if (r.stats.family_truncated) std::cerr << "note: guess family truncated, no approximation guarantee\n";
    return independent ? kOk : kValidatorFailed;
}

int cmd_validate(const std::string& esd_path, const std::string& graph_path) {
    std::ifstream in(esd_path);
    if (!in) throw InputError("cannot open " + esd_path);
    json j;
    try {
        j = json::parse(in);
    } catch (const json::exception& e) {
        throw InputError(std::string("bad JSON: ") + e.what());
    }
    if (j.contains("esd")) j = j["esd"];
    Esd esd = esd_from_json(j);
    WeightedGraph wg = read_graph_file(graph_path);
    if (esd.host_n() != wg.g.size()) throw InputError("decomposition and graph disagree on the vertex count");
    bool ok = true;
    for (const auto& v : validate(wg.g, esd)) {
        std::cout << "violation: " << v.str() << "\n";
        ok = false;
    }
    const bool rigid = is_rigid(esd);
    try {
        BoundsReport b = structural_bounds(esd, wg.g.size());
        std::cout << "H has " << b.h_vertices << " vertices and " << b.h_edges << " edges, " << b.nonempty_particles
                  << " nonempty particles\n";
    } catch (const BoundViolation& e) {
        std::cout << "bound: " << e.what() << "\n";
        if (rigid) ok = false;
    }
    std::cout << "covers " << esd.domain().count() << " of " << wg.g.size() << " vertices, "
              << (rigid ? "rigid" : "not rigid") << ", largest particle " << max_particle_size(esd) << "\n";
    std::cout << (ok ? "valid" : "invalid") << "\n";
    return ok ? kOk : kValidatorFailed;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Decompositions and independent sets in graphs without long subdivided claws"};
    app.require_subcommand(1);

    GenOptions gen;
    std::uint64_t seed = 1;
    std::string out_path;
    auto* generate_cmd = app.add_subcommand("generate", "write a random instance in the text format");
    add_generator_options(generate_cmd, gen);
    generate_cmd->add_option("--seed", seed)->capture_default_str();
    generate_cmd->add_option("-o,--out", out_path, "output file, stdout by default");

    std::string graph_path, json_path;
    int s = 1, t = 1;
    bool paranoid = false;
    auto* decompose_cmd = app.add_subcommand("decompose", "separator paths, X and a strip decomposition");
    decompose_cmd->add_option("graph", graph_path)->required();
    decompose_cmd->add_option("-t", t)->capture_default_str();
    decompose_cmd->add_option("-s", s)->capture_default_str();
    decompose_cmd->add_flag("--paranoid", paranoid);
    decompose_cmd->add_option("--json", json_path, "output file, stdout by default");

    std::vector<int> terminals;
    auto* tree_cmd = app.add_subcommand("three-in-a-tree", "induced tree through three terminals or a decomposition");
    tree_cmd->add_option("graph", graph_path)->required();
    tree_cmd->add_option("--terminals", terminals)->required()->delimiter(',');
    tree_cmd->add_option("--json", json_path, "output file, stdout by default");

    std::string mode = "exact";
    SolverOptions so;
    auto* solve_cmd = app.add_subcommand("solve", "maximum weight independent set");
    solve_cmd->add_option("graph", graph_path)->required();
    solve_cmd->add_option("--mode", mode, "exact or qptas")->capture_default_str();
    solve_cmd->add_option("-t", t)->capture_default_str();
    solve_cmd->add_option("-s", s)->capture_default_str();
    solve_cmd->add_flag("--paranoid", paranoid);
    solve_cmd->add_option("--json", json_path, "result file");
    add_solver_options(solve_cmd, so);

    std::string esd_path;
    auto* validate_cmd = app.add_subcommand("validate", "check a decomposition against a graph");
    validate_cmd->add_option("esd", esd_path)->required();
    validate_cmd->add_option("graph", graph_path)->required();

    GenOptions bench_gen;
    SolverOptions bench_so;
    CampaignConfig bench;
    bench.repetitions = 5;
    bench.threads = 1;
    std::string task = "decompose", format = "text";
    bool no_oracle = false, no_paranoid = false;
    auto* bench_cmd = app.add_subcommand("bench", "campaign over generated instances with validators and timings");
    add_generator_options(bench_cmd, bench_gen);
    add_solver_options(bench_cmd, bench_so);
    bench_cmd->add_option("--task", task, "decompose, three-in-a-tree, exact or qptas")->capture_default_str();
    bench_cmd->add_option("--count", bench.count)->capture_default_str();
    bench_cmd->add_option("--seed", bench.seed)->capture_default_str();
    bench_cmd->add_option("--reps", bench.repetitions, "timed runs per instance")->capture_default_str();
    bench_cmd->add_option("--threads", bench.threads, "0 reads STF_THREADS")->capture_default_str();
    bench_cmd->add_option("--format", format, "json, csv or text")->capture_default_str();
    bench_cmd->add_option("-o,--out", out_path, "report file, stdout by default");
    bench_cmd->add_flag("--no-oracle", no_oracle);
    bench_cmd->add_flag("--no-paranoid", no_paranoid);

    CLI11_PARSE(app, argc, argv);

    try {
        if (*generate_cmd) return cmd_generate(gen, seed, out_path);
        if (*decompose_cmd) return cmd_decompose(graph_path, s, t, paranoid, json_path);
        if (*tree_cmd) return cmd_three_in_a_tree(graph_path, terminals, json_path);
        if (*solve_cmd) return cmd_solve(graph_path, mode, s, t, paranoid, so, json_path);
        if (*validate_cmd) return cmd_validate(esd_path, graph_path);
        if (*bench_cmd) {
            bench.task = parse_task(task);
            bench.spec = resolve(bench_gen);
            bench.solver = resolve(bench_so);
            bench.oracle = !no_oracle;
            bench.paranoid = !no_paranoid;
            const ReportFormat fmt = parse_report_format(format);
            CampaignReport report = run_campaign(bench);
            if (out_path.empty() || out_path == "-") {
                emit_report(std::cout, report, fmt);
            } else {
                std::ofstream out(out_path);
                if (!out) throw InputError("cannot write " + out_path);
                emit_report(out, report, fmt);
            }
            return report.all_passed() ? kOk : kValidatorFailed;
        }
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kBadInput;
    } catch (const DomainError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kBadInput;
    } catch (const SIllegalInput& e) {
        std::cerr << "input contains the excluded pattern: " << e.what() << "\n";
        return kPatternFound;
    } catch (const CapExceeded& e) {
        std::cerr << "limit reached: " << e.what() << "\n";
        return kCapExceeded;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kInternal;
    }
    return kOk;
}
