#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "stf/combine.hpp"
#include "stf/graph.hpp"
#include "stf/solvers.hpp"

namespace stf {

enum class GeneratorKind { line_graph, random_filtered, shape };
enum class Shape { claw, spider, cycle, path };
enum class WeightModel { unit, uniform };

struct InstanceSpec {
    GeneratorKind generator = GeneratorKind::random_filtered;
    int n = 12;       // vertices; base vertices for line graphs; leg length for spiders
    double p = 0.2;   // edge probability of the random graph
    bool tree_base = false;  // line graphs of random trees instead
    int t = 1, s = 1;
    Shape shape = Shape::path;
    WeightModel weights = WeightModel::unit;
    Weight max_weight = 100;
    long rejection_limit = 10000;
};

struct Instance {
    Graph g;
    Weights w;
    std::uint64_t seed = 0;
    // t for which g was certified S_{t,t,t}-free by search, if any.
    std::optional<int> certified_free_t;
    // Weighted root graph when g is a line graph; vertex i of g is edge i.
    std::optional<MatchingInstance> root;
};

// Deterministic in (spec, seed). Throws CapExceeded when the filtered
// generator runs out of attempts and InputError on a bad spec.
Instance generate(const InstanceSpec& spec, std::uint64_t seed);

// Seed of the i-th instance of a campaign.
std::uint64_t instance_seed(std::uint64_t campaign_seed, int i);

GeneratorKind parse_generator(const std::string& s);
Shape parse_shape(const std::string& s);
WeightModel parse_weight_model(const std::string& s);
const char* to_string(GeneratorKind k);
const char* to_string(Shape s);
const char* to_string(WeightModel m);
nlohmann::json spec_to_json(const InstanceSpec& spec);

enum class Task { decompose, three_in_a_tree, exact, qptas };
Task parse_task(const std::string& s);
const char* to_string(Task t);

struct CampaignConfig {
    Task task = Task::decompose;
    InstanceSpec spec;
    int count = 100;
    std::uint64_t seed = 1;
    SolverConfig solver;
    bool paranoid = true;
    bool oracle = true;
    int min_terminals = 2, max_terminals = 5;
    int threads = 0;      // 0 means default_threads()
    int repetitions = 1;  // timed runs per instance; the median is reported
};

struct Verdict {
    std::string check;
    bool ok = true;
    std::string detail;
};

struct CampaignRecord {
    int id = 0;
    std::uint64_t seed = 0;
    int n = 0, m = 0;
    std::string outcome;  // "esd", "claw", "tree", "solution" or "error"
    std::optional<Weight> weight, oracle_weight;
    double wall_ms = 0;   // median over the repetitions
    std::vector<Verdict> verdicts;
    std::optional<int> paths, path_budget, x_size, x_budget, max_particle, h_vertices, h_edges;
    std::optional<long> calls;  // solver calls
    std::optional<int> depth;   // solver recursion depth
    int identity_edges = 0;     // ESD edges on which the neighbourhood identity was checked
    std::string error;
    bool passed() const;
};

inline constexpr int kReportSchemaVersion = 1;

struct CampaignReport {
    CampaignConfig config;
    std::vector<CampaignRecord> records;  // ordered by id
    int failures() const;
    bool all_passed() const { return failures() == 0; }
};

// Thread count from STF_THREADS, else the hardware concurrency.
int default_threads();

CampaignRecord run_instance(const CampaignConfig& cfg, int id);
CampaignReport run_campaign(const CampaignConfig& cfg);

enum class ReportFormat { json, csv, text };
ReportFormat parse_report_format(const std::string& s);
void emit_report(std::ostream& out, const CampaignReport& report, ReportFormat format);
nlohmann::json report_to_json(const CampaignReport& report);

// Runs f reps times and returns the median wall time in milliseconds.
double median_ms(const std::function<void()>& f, int reps);

}  // namespace stf
