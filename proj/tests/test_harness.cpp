#include <doctest.h>

#include <algorithm>
#include <cstdlib>
#include <sstream>

#include "stf/errors.hpp"
#include "stf/harness.hpp"
#include "stf/patterns.hpp"

using namespace stf;

TEST_CASE("generators") {
    SUBCASE("line graph of a random tree is claw-free") {
        InstanceSpec spec;
        spec.generator = GeneratorKind::line_graph;
        spec.tree_base = true;
        spec.n = 8;
        Instance inst = generate(spec, 5);
        CHECK(inst.g.size() == 7);
        REQUIRE(inst.certified_free_t);
        CHECK_FALSE(find_sttt(inst.g, 1));
        REQUIRE(inst.root);
        CHECK(inst.root->edges.size() == 7);
    }
    SUBCASE("filtered graphs carry a certificate") {
        InstanceSpec spec;
        spec.n = 14;
        spec.p = 0.2;
        spec.t = 2;
        for (std::uint64_t seed = 0; seed < 20; ++seed) {
            Instance inst = generate(spec, seed);
            CHECK(inst.certified_free_t == 2);
            CHECK_FALSE(find_sttt(inst.g, 2));
        }
    }
    SUBCASE("same seed, same bytes") {
        InstanceSpec spec;
        spec.n = 16;
        spec.p = 0.15;
        spec.t = 2;
        spec.weights = WeightModel::uniform;
        Instance a = generate(spec, 42), b = generate(spec, 42), c = generate(spec, 43);
        CHECK(write_graph_string(a.g, a.w) == write_graph_string(b.g, b.w));
        CHECK(write_graph_string(a.g, a.w) != write_graph_string(c.g, c.w));
        for (Weight x : a.w) CHECK((x >= 1 && x <= spec.max_weight));
    }
    SUBCASE("shapes") {
        InstanceSpec spec;
        spec.generator = GeneratorKind::shape;
        spec.shape = Shape::spider;
        spec.n = 2;
        spec.t = 2;
        Instance inst = generate(spec, 0);
        CHECK(inst.g.size() == 7);
        CHECK_FALSE(inst.certified_free_t);
        spec.shape = Shape::cycle;
        spec.n = 9;
        CHECK(generate(spec, 0).certified_free_t == 2);
        spec.shape = Shape::claw;
        CHECK(generate(spec, 0).g.size() == 4);
    }
    SUBCASE("rejection limit") {
        InstanceSpec spec;
        spec.n = 16;
        spec.p = 0.5;
        spec.rejection_limit = 3;
        CHECK_THROWS_AS(generate(spec, 1), CapExceeded);
    }
    SUBCASE("names") {
        CHECK(parse_generator("line_graph") == GeneratorKind::line_graph);
        CHECK(parse_task("three-in-a-tree") == Task::three_in_a_tree);
        CHECK_THROWS_AS(parse_shape("star"), InputError);
    }
}

TEST_CASE("campaigns are deterministic across thread counts") {
    CampaignConfig cfg;
    cfg.task = Task::exact;
    cfg.spec.n = 12;
    cfg.spec.p = 0.2;
    cfg.spec.t = 2;
    cfg.spec.weights = WeightModel::uniform;
    cfg.solver.n0 = 4;
    cfg.count = 12;
    cfg.threads = 1;
    CampaignReport one = run_campaign(cfg);
    cfg.threads = 4;
    CampaignReport four = run_campaign(cfg);
    CHECK(one.all_passed());
    REQUIRE(one.records.size() == four.records.size());
    for (std::size_t i = 0; i < one.records.size(); ++i) {
        CHECK(one.records[i].id == static_cast<int>(i));
        CHECK(one.records[i].seed == four.records[i].seed);
        CHECK(one.records[i].weight == four.records[i].weight);
        CHECK(one.records[i].oracle_weight == one.records[i].weight);
    }
}

TEST_CASE("campaign tasks record their checks") {
    CampaignConfig cfg;
    cfg.count = 6;
    cfg.threads = 2;
    SUBCASE("decompose") {
        cfg.task = Task::decompose;
        cfg.spec.generator = GeneratorKind::line_graph;
        cfg.spec.n = 12;
        cfg.spec.p = 0.3;
        auto rep = run_campaign(cfg);
        CHECK(rep.all_passed());
        for (const auto& r : rep.records) {
            CHECK(r.paths);
            CHECK(r.x_size);
            CHECK(*r.paths <= *r.path_budget);
        }
    }
    SUBCASE("three-in-a-tree") {
        cfg.task = Task::three_in_a_tree;
        cfg.spec.n = 10;
        cfg.spec.p = 0.3;
        cfg.spec.t = 3;
        auto rep = run_campaign(cfg);
        CHECK(rep.all_passed());
        for (const auto& r : rep.records) {
            bool has_oracle = false;
            for (const auto& v : r.verdicts) has_oracle |= v.check == "oracle agreement";
            CHECK(has_oracle);
        }
    }
    SUBCASE("qptas") {
        cfg.task = Task::qptas;
        cfg.spec.n = 14;
        cfg.spec.p = 0.2;
        cfg.spec.t = 2;
        cfg.solver.n0 = 5;
        cfg.solver.family_cap = std::nullopt;
        CHECK(run_campaign(cfg).all_passed());
    }
    SUBCASE("errors are recorded, not dropped") {
        cfg.task = Task::exact;
        cfg.spec.p = 0.6;
        cfg.spec.n = 16;
        cfg.spec.rejection_limit = 1;
        auto rep = run_campaign(cfg);
        CHECK(rep.records.size() == 6);
        CHECK(rep.failures() > 0);
    }
}

TEST_CASE("report formats") {
    CampaignConfig cfg;
    cfg.task = Task::exact;
    cfg.spec.n = 10;
    cfg.spec.p = 0.2;
    cfg.spec.t = 2;
    cfg.count = 3;
    cfg.threads = 1;
    CampaignReport rep = run_campaign(cfg);
    std::ostringstream js, csv, text;
    emit_report(js, rep, ReportFormat::json);
    auto j = nlohmann::json::parse(js.str());
    CHECK(j["schema_version"] == kReportSchemaVersion);
    CHECK(j["records"].size() == 3);
    CHECK(j["summary"]["failures"] == 0);
    emit_report(csv, rep, ReportFormat::csv);
    const std::string rows = csv.str();
    CHECK(std::count(rows.begin(), rows.end(), '\n') == 4);
    emit_report(text, rep, ReportFormat::text);
    CHECK(text.str().find("3 instances, 0 failures") != std::string::npos);
}

TEST_CASE("thread count from the environment") {
    setenv("STF_THREADS", "3", 1);
    CHECK(default_threads() == 3);
    setenv("STF_THREADS", "zero", 1);
    CHECK(default_threads() >= 1);
    unsetenv("STF_THREADS");
}

TEST_CASE("median timing") {
    int calls = 0;
    double ms = median_ms([&] { ++calls; }, 5);
    CHECK(calls == 5);
    CHECK(ms >= 0);
}
