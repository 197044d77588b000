#include "stf/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdlib>
#include <iomanip>
#include <ostream>
#include <random>
#include <sstream>
#include <thread>

#include "stf/decompose.hpp"
#include "stf/errors.hpp"
#include "stf/patterns.hpp"
#include "stf/random.hpp"
#include "stf/three_in_a_tree.hpp"

namespace stf {

namespace {

Graph random_graph(Rng& rng, int n, double p) {
    std::vector<std::pair<int, int>> es;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (rng.chance(p)) es.emplace_back(u, v);
    return Graph::from_edges(n, es);
}

// Each vertex after the first hangs off a uniformly chosen earlier one.
Graph random_tree(Rng& rng, int n) {
    std::vector<std::pair<int, int>> es;
    for (int v = 1; v < n; ++v) es.emplace_back(static_cast<int>(rng.uniform(0, v - 1)), v);
    return Graph::from_edges(n, es);
}

Graph spider(int len) {
    std::vector<std::pair<int, int>> es;
    int next = 1;
    for (int leg = 0; leg < 3; ++leg) {
        int prev = 0;
        for (int k = 0; k < len; ++k) {
            es.emplace_back(prev, next);
            prev = next++;
        }
    }
    return Graph::from_edges(next, es);
}

Graph cycle_or_path(int n, bool closed) {
    std::vector<std::pair<int, int>> es;
    for (int i = 0; i + 1 < n; ++i) es.emplace_back(i, i + 1);
    if (closed && n >= 3) es.emplace_back(n - 1, 0);
    return Graph::from_edges(n, es);
}

Graph shape_graph(const InstanceSpec& spec) {
    switch (spec.shape) {
        case Shape::claw: return spider(1);
        case Shape::spider: return spider(spec.n);
        case Shape::cycle:
            if (spec.n < 3) throw InputError("a cycle needs at least 3 vertices");
            return cycle_or_path(spec.n, true);
        case Shape::path: return cycle_or_path(spec.n, false);
    }
    throw InputError("unknown shape");
}

void check_spec(const InstanceSpec& spec) {
    if (spec.n < 1) throw InputError("n must be positive");
    if (!(spec.p >= 0 && spec.p <= 1)) throw InputError("p must lie in [0,1]");
    if (spec.t < 1 || spec.s < 1) throw InputError("s and t must be at least 1");
    if (spec.max_weight < 1 || spec.max_weight > kMaxWeight) throw InputError("max weight out of range");
    if (spec.rejection_limit < 1) throw InputError("rejection limit must be positive");
}

template <class E>
E parse_enum(const std::string& s, std::initializer_list<std::pair<const char*, E>> names, const char* what) {
    for (const auto& [name, value] : names)
        if (s == name) return value;
    throw InputError(std::string("unknown ") + what + " '" + s + "'");
}

}  // namespace

std::uint64_t instance_seed(std::uint64_t campaign_seed, int i) {
    std::seed_seq seq{static_cast<std::uint32_t>(campaign_seed), static_cast<std::uint32_t>(campaign_seed >> 32),
                      static_cast<std::uint32_t>(i)};
    std::uint32_t out[2];
    seq.generate(out, out + 2);
    return std::uint64_t{out[0]} << 32 | out[1];
}

Instance generate(const InstanceSpec& spec, std::uint64_t seed) {
    check_spec(spec);
    Rng rng(seed);
    Instance inst;
    inst.seed = seed;
    std::vector<std::pair<int, int>> root_edges;
    switch (spec.generator) {
        case GeneratorKind::line_graph: {
            Graph base = spec.tree_base ? random_tree(rng, spec.n) : random_graph(rng, spec.n, spec.p);
            inst.g = line_graph(base, &root_edges);
            // Claw-free, hence free of every S_{t,t,t}.
            if (!find_sttt(inst.g, 1)) inst.certified_free_t = spec.t;
            inst.root = MatchingInstance{spec.n, {}};
            break;
        }
        case GeneratorKind::random_filtered: {
            long attempt = 0;
            while (true) {
                if (attempt++ >= spec.rejection_limit)
                    throw CapExceeded("no S_{t,t,t}-free graph after " + std::to_string(spec.rejection_limit) +
                                      " attempts");
                Graph g = random_graph(rng, spec.n, spec.p);
                if (!find_sttt(g, spec.t)) {
                    inst.g = std::move(g);
                    inst.certified_free_t = spec.t;
                    break;
                }
            }
            break;
        }
        case GeneratorKind::shape:
            inst.g = shape_graph(spec);
            if (!find_sttt(inst.g, spec.t)) inst.certified_free_t = spec.t;
            break;
    }
    inst.w.assign(inst.g.size(), 1);
    if (spec.weights == WeightModel::uniform)
        for (auto& x : inst.w) x = rng.uniform(1, spec.max_weight);
    if (inst.root)
        for (std::size_t i = 0; i < root_edges.size(); ++i)
            inst.root->edges.push_back({root_edges[i].first, root_edges[i].second, inst.w[i]});
    return inst;
}

GeneratorKind parse_generator(const std::string& s) {
    return parse_enum<GeneratorKind>(s,
                                     {{"line_graph", GeneratorKind::line_graph},
                                      {"random_filtered", GeneratorKind::random_filtered},
                                      {"shape", GeneratorKind::shape}},
                                     "generator");
}

Shape parse_shape(const std::string& s) {
    return parse_enum<Shape>(
        s, {{"claw", Shape::claw}, {"spider", Shape::spider}, {"cycle", Shape::cycle}, {"path", Shape::path}}, "shape");
}

WeightModel parse_weight_model(const std::string& s) {
    return parse_enum<WeightModel>(s, {{"unit", WeightModel::unit}, {"uniform", WeightModel::uniform}},
                                   "weight model");
}

Task parse_task(const std::string& s) {
    return parse_enum<Task>(s,
                            {{"decompose", Task::decompose},
                             {"three-in-a-tree", Task::three_in_a_tree},
                             {"exact", Task::exact},
                             {"qptas", Task::qptas}},
                            "task");
}

ReportFormat parse_report_format(const std::string& s) {
    return parse_enum<ReportFormat>(s, {{"json", ReportFormat::json}, {"csv", ReportFormat::csv}, {"text", ReportFormat::text}},
                                    "report format");
}

const char* to_string(GeneratorKind k) {
    switch (k) {
        case GeneratorKind::line_graph: return "line_graph";
        case GeneratorKind::random_filtered: return "random_filtered";
        case GeneratorKind::shape: return "shape";
    }
    return "?";
}

const char* to_string(Shape s) {
    switch (s) {
        case Shape::claw: return "claw";
        case Shape::spider: return "spider";
        case Shape::cycle: return "cycle";
        case Shape::path: return "path";
    }
    return "?";
}

const char* to_string(WeightModel m) { return m == WeightModel::unit ? "unit" : "uniform"; }

const char* to_string(Task t) {
    switch (t) {
        case Task::decompose: return "decompose";
        case Task::three_in_a_tree: return "three-in-a-tree";
        case Task::exact: return "exact";
        case Task::qptas: return "qptas";
    }
    return "?";
}

nlohmann::json spec_to_json(const InstanceSpec& spec) {
    nlohmann::json j{{"generator", to_string(spec.generator)},
                     {"n", spec.n},
                     {"p", spec.p},
                     {"tree_base", spec.tree_base},
                     {"t", spec.t},
                     {"s", spec.s},
                     {"weights", to_string(spec.weights)},
                     {"max_weight", spec.max_weight}};
    if (spec.generator == GeneratorKind::shape) j["shape"] = to_string(spec.shape);
    return j;
}

bool CampaignRecord::passed() const {
    if (!error.empty()) return false;
    return std::all_of(verdicts.begin(), verdicts.end(), [](const Verdict& v) { return v.ok; });
}

int CampaignReport::failures() const {
    return static_cast<int>(std::count_if(records.begin(), records.end(), [](const auto& r) { return !r.passed(); }));
}

int default_threads() {
    if (const char* env = std::getenv("STF_THREADS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v >= 1 && v <= 1024) return static_cast<int>(v);
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

double median_ms(const std::function<void()>& f, int reps) {
    std::vector<double> times;
    for (int i = 0; i < std::max(1, reps); ++i) {
        auto t0 = std::chrono::steady_clock::now();
        f();
        times.push_back(std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count());
    }
    std::sort(times.begin(), times.end());
    const std::size_t k = times.size();
    return k % 2 ? times[k / 2] : (times[k / 2 - 1] + times[k / 2]) / 2;
}

namespace {

void add(CampaignRecord& rec, std::string check, bool ok, std::string detail = {}) {
    rec.verdicts.push_back({std::move(check), ok, std::move(detail)});
}

void add_issues(CampaignRecord& rec, const std::string& check, const std::vector<std::string>& issues) {
    add(rec, check, issues.empty(), issues.empty() ? std::string() : issues.front());
}

// Counting bounds and the neighbourhood identity on every edge of a produced ESD.
void check_esd(CampaignRecord& rec, const Graph& g, const Esd& esd, const std::string& where) {
    try {
        structural_bounds(esd, g.size());
        add(rec, where + " counts", true);
    } catch (const BoundViolation& e) {
        add(rec, where + " counts", false, e.what());
    }
    std::string bad;
    for (int e = 0; e < esd.edge_count(); ++e) {
        const auto& ed = esd.edges()[e];
        if (ed.side_x.empty() || ed.side_y.empty()) continue;
        ++rec.identity_edges;
        auto v = particle_neighborhood_check(g, esd, e);
        if (!v.empty() && bad.empty()) bad = v.front().str();
    }
    add(rec, where + " neighbourhood identity", bad.empty(), bad);
}

void run_decompose(const CampaignConfig& cfg, const Instance& inst, CampaignRecord& rec) {
    const Graph& g = inst.g;
    const int n = g.size();
    const int t = cfg.spec.t, s = cfg.spec.s;
    DecomposeOptions opt{cfg.paranoid};
    DecomposeOutcome main;
    SFreeDecomposition sfree;
    bool illegal = false;
    rec.wall_ms = median_ms(
        [&] {
            main = main_decomposition(g, t, opt);
            try {
                sfree = decompose_s_sttt_free(g, s, t, opt);
                illegal = false;
            } catch (const SIllegalInput&) {
                illegal = true;
            }
        },
        cfg.repetitions);
    const bool certified = inst.certified_free_t && *inst.certified_free_t <= t;
    if (main.is_claw()) {
        rec.outcome = "claw";
        add(rec, "pattern certificate", is_induced_sttt(g, *main.claw, t));
        add(rec, "certified input has no pattern", !certified);
    } else {
        rec.outcome = "esd";
        const auto& sep = main.sep;
        rec.paths = static_cast<int>(sep.paths.size());
        rec.path_budget = main_path_budget(n);
        rec.max_particle = max_particle_size(sep.esd);
        rec.h_vertices = sep.esd.h_size();
        rec.h_edges = sep.esd.edge_count();
        add_issues(rec, "separator", check_separator(g, g.all(), sep, n, t, true));
        add(rec, "path count", within_main_path_bound(*rec.paths, n));
        check_esd(rec, g, sep.esd, "separator esd");
    }
    if (illegal) {
        add(rec, "certified input has no pattern", !certified);
        return;
    }
    rec.x_size = sfree.x.count();
    rec.x_budget = peel_budget(s, t, n);
    add(rec, "peel bound", within_peel_bound(*rec.x_size, s, t, n));
    add_issues(rec, "s-free decomposition", check_s_free(g, g.all(), sfree, s, t));
    check_esd(rec, g, sfree.esd, "s-free esd");
}

void run_three_in_a_tree(const CampaignConfig& cfg, const Instance& inst, CampaignRecord& rec) {
    const Graph& g = inst.g;
    const int n = g.size();
    Rng rng(inst.seed ^ 0x9e3779b97f4a7c15ULL);
    const int lo = std::min(cfg.min_terminals, n), hi = std::min(cfg.max_terminals, n);
    const int k = static_cast<int>(rng.uniform(lo, std::max(lo, hi)));
    std::vector<int> vs(n);
    for (int i = 0; i < n; ++i) vs[i] = i;
    rng.shuffle(vs);
    vs.resize(k);
    const VertexSet z = VertexSet::of(n, vs);
    ThreeInATreeOutcome out;
    rec.wall_ms = median_ms([&] { out = three_in_a_tree(g, z); }, cfg.repetitions);
    if (out.is_tree()) {
        rec.outcome = "tree";
        add_issues(rec, "tree certificate", check_tree_certificate(g, z, *out.tree));
    } else {
        rec.outcome = "esd";
        add_issues(rec, "terminal decomposition", check_terminal_decomposition(g, g.all(), z, out.esd));
        rec.h_vertices = out.esd.h_size();
        rec.h_edges = out.esd.edge_count();
        check_esd(rec, g, out.esd, "terminal esd");
    }
    if (cfg.oracle && n <= 14) {
        const bool oracle_tree = brute_tree_oracle(g, z).has_value();
        add(rec, "oracle agreement", oracle_tree == out.is_tree(),
            oracle_tree ? "oracle found a tree" : "oracle found no tree");
    }
}

void run_solver(const CampaignConfig& cfg, const Instance& inst, CampaignRecord& rec) {
    const Graph& g = inst.g;
    SolverConfig sc = cfg.solver;
    sc.s = cfg.spec.s;
    sc.t = cfg.spec.t;
    sc.paranoid = cfg.paranoid;
    SolveResult r;
    const bool exact = cfg.task == Task::exact;
    rec.wall_ms = median_ms([&] { r = exact ? solve_exact_subexp(g, inst.w, sc) : solve_qptas(g, inst.w, sc); },
                            cfg.repetitions);
    rec.outcome = "solution";
    rec.weight = r.weight;
    rec.calls = r.stats.calls;
    rec.depth = r.stats.depth;
    add(rec, "independent", is_independent(g, r.set) && total_weight(inst.w, r.set) == r.weight);
    int worst = 0;
    bool halves = true;
    for (const auto& lv : r.stats.decompose_levels) {
        worst = std::max(worst, lv.max_particle);
        if (2 * lv.max_particle > lv.n) halves = false;
    }
    rec.max_particle = worst;
    add(rec, "particles at most half", halves);
    if (!cfg.oracle) return;
    if (inst.root)
        rec.oracle_weight = max_weight_matching(*inst.root).weight;
    else if (g.size() <= kBranchAndBoundCap)
        rec.oracle_weight = total_weight(inst.w, brute_force_mwis(g, inst.w));
    if (!rec.oracle_weight) return;
    if (exact)
        add(rec, "oracle equality", r.weight == *rec.oracle_weight);
    else
        add(rec, "approximation", Rational(r.weight) >= (1 - sc.epsilon) * *rec.oracle_weight,
            r.stats.family_truncated ? "family truncated" : "");
}

}  // namespace

CampaignRecord run_instance(const CampaignConfig& cfg, int id) {
    CampaignRecord rec;
    rec.id = id;
    rec.seed = instance_seed(cfg.seed, id);
    try {
        Instance inst = generate(cfg.spec, rec.seed);
        rec.n = inst.g.size();
        rec.m = inst.g.edge_count();
        switch (cfg.task) {
            case Task::decompose: run_decompose(cfg, inst, rec); break;
            case Task::three_in_a_tree: run_three_in_a_tree(cfg, inst, rec); break;
            case Task::exact:
            case Task::qptas: run_solver(cfg, inst, rec); break;
        }
    } catch (const std::exception& e) {
        rec.outcome = "error";
        rec.error = e.what();
    }
    return rec;
}

CampaignReport run_campaign(const CampaignConfig& cfg) {
    if (cfg.count < 0) throw InputError("count must be non-negative");
    if (cfg.repetitions < 1) throw InputError("repetitions must be positive");
    CampaignReport report;
    report.config = cfg;
    report.records.resize(cfg.count);
    const int threads = std::max(1, std::min(cfg.threads > 0 ? cfg.threads : default_threads(), cfg.count));
    std::atomic<int> next{0};
    auto worker = [&] {
        for (int i = next++; i < cfg.count; i = next++) report.records[i] = run_instance(cfg, i);
    };
    std::vector<std::thread> pool;
    for (int i = 1; i < threads; ++i) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();
    return report;
}

namespace {

nlohmann::json opt_json(const auto& o) { return o ? nlohmann::json(*o) : nlohmann::json(nullptr); }

nlohmann::json config_to_json(const CampaignConfig& c) {
    nlohmann::json solver{{"epsilon", to_string(c.solver.epsilon)},
                          {"n0", c.solver.n0},
                          {"heavy_factor", to_string(c.solver.heavy_factor)},
                          {"family_cap", opt_json(c.solver.family_cap)},
                          {"budget", c.solver.budget},
                          {"memoize", c.solver.memoize}};
    return {{"task", to_string(c.task)}, {"spec", spec_to_json(c.spec)}, {"count", c.count},
            {"seed", c.seed},            {"paranoid", c.paranoid},       {"oracle", c.oracle},
            {"repetitions", c.repetitions}, {"solver", solver}};
}

std::string failed_checks(const CampaignRecord& r) {
    std::string out;
    for (const auto& v : r.verdicts)
        if (!v.ok) out += (out.empty() ? "" : ";") + v.check;
    if (!r.error.empty()) out += (out.empty() ? "" : ";") + std::string("error");
    return out;
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
    return q + "\"";
}

template <class T>
std::string opt_str(const std::optional<T>& o) {
    return o ? std::to_string(*o) : std::string();
}

std::string ms_str(double ms) {
    std::ostringstream os;
    os << std::fixed << std::setprecision(3) << ms;
    return os.str();
}

}  // namespace

nlohmann::json report_to_json(const CampaignReport& report) {
    nlohmann::json recs = nlohmann::json::array();
    for (const auto& r : report.records) {
        nlohmann::json verdicts = nlohmann::json::array();
        for (const auto& v : r.verdicts) verdicts.push_back({{"check", v.check}, {"ok", v.ok}, {"detail", v.detail}});
        recs.push_back({{"id", r.id},
                        {"seed", r.seed},
                        {"n", r.n},
                        {"m", r.m},
                        {"outcome", r.outcome},
                        {"weight", opt_json(r.weight)},
                        {"oracle_weight", opt_json(r.oracle_weight)},
                        {"wall_ms", r.wall_ms},
                        {"paths", opt_json(r.paths)},
                        {"path_budget", opt_json(r.path_budget)},
                        {"x_size", opt_json(r.x_size)},
                        {"x_budget", opt_json(r.x_budget)},
                        {"max_particle", opt_json(r.max_particle)},
                        {"h_vertices", opt_json(r.h_vertices)},
                        {"h_edges", opt_json(r.h_edges)},
                        {"calls", opt_json(r.calls)},
                        {"depth", opt_json(r.depth)},
                        {"identity_edges", r.identity_edges},
                        {"verdicts", verdicts},
                        {"error", r.error},
                        {"passed", r.passed()}});
    }
    return {{"schema_version", kReportSchemaVersion},
            {"config", config_to_json(report.config)},
            {"records", recs},
            {"summary",
             {{"instances", report.records.size()}, {"failures", report.failures()}, {"passed", report.all_passed()}}}};
}

void emit_report(std::ostream& out, const CampaignReport& report, ReportFormat format) {
    switch (format) {
        case ReportFormat::json: out << report_to_json(report).dump(2) << "\n"; return;
        case ReportFormat::csv:
            out << "schema_version,id,seed,n,m,outcome,weight,oracle_weight,wall_ms,paths,path_budget,x_size,x_budget,"
                   "max_particle,h_vertices,h_edges,calls,depth,identity_edges,passed,failed_checks\n";
            for (const auto& r : report.records)
                out << kReportSchemaVersion << ',' << r.id << ',' << r.seed << ',' << r.n << ',' << r.m << ','
                    << r.outcome << ',' << opt_str(r.weight) << ',' << opt_str(r.oracle_weight) << ','
                    << ms_str(r.wall_ms) << ',' << opt_str(r.paths) << ',' << opt_str(r.path_budget) << ','
                    << opt_str(r.x_size) << ',' << opt_str(r.x_budget) << ',' << opt_str(r.max_particle) << ','
                    << opt_str(r.h_vertices) << ',' << opt_str(r.h_edges) << ',' << opt_str(r.calls) << ','
                    << opt_str(r.depth) << ',' << r.identity_edges << ',' << (r.passed() ? 1 : 0) << ','
                    << csv_field(failed_checks(r)) << "\n";
            return;
        case ReportFormat::text: {
            out << std::left << std::setw(6) << "id" << std::setw(6) << "n" << std::setw(7) << "m" << std::setw(10)
                << "outcome" << std::setw(10) << "weight" << std::setw(10) << "oracle" << std::setw(12) << "ms"
                << std::setw(10) << "paths" << std::setw(10) << "X" << std::setw(9) << "maxpart"
                << "result\n";
            auto frac = [](const auto& a, const auto& b) { return a ? opt_str(a) + "/" + opt_str(b) : std::string("-"); };
            for (const auto& r : report.records) {
                out << std::setw(6) << r.id << std::setw(6) << r.n << std::setw(7) << r.m << std::setw(10) << r.outcome
                    << std::setw(10) << (r.weight ? opt_str(r.weight) : "-") << std::setw(10)
                    << (r.oracle_weight ? opt_str(r.oracle_weight) : "-") << std::setw(12) << ms_str(r.wall_ms)
                    << std::setw(10) << frac(r.paths, r.path_budget) << std::setw(10) << frac(r.x_size, r.x_budget)
                    << std::setw(9) << (r.max_particle ? opt_str(r.max_particle) : "-")
                    << (r.passed() ? "ok" : "FAIL " + failed_checks(r)) << "\n";
                if (!r.error.empty()) out << "      error: " << r.error << "\n";
            }
            out << report.records.size() << " instances, " << report.failures() << " failures\n";
            return;
        }
    }
}

}  // namespace stf
