#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <random>

#include "mtsched/error.hpp"
#include "mtsched/io.hpp"
#include "oracles.hpp"

namespace fs = std::filesystem;
namespace io = mtsched::io;

namespace {

fs::path workspace() {
    const fs::path dir = fs::temp_directory_path() / "mtsched_io_tests";
    fs::create_directories(dir);
    return dir;
}

void write_text(const fs::path& path, const std::string& text) {
    std::ofstream stream(path, std::ios::binary);
    stream << text;
}

} // namespace

TEST_CASE("profiles round-trip") {
    std::mt19937_64 rng(11);
    io::ProfilesDoc doc;
    doc.num_branch_points = 2;
    doc.num_samples = 4;
    doc.tasks.push_back(oracle::random_profile(rng, "alpha", 2, 4, 3));
    doc.tasks.push_back(oracle::random_profile(rng, "beta", 2, 4, 3));

    const fs::path path = workspace() / "profiles.json";
    io::write_profiles(path, doc);
    const io::ProfilesDoc back = io::read_profiles(path);
    REQUIRE(back.tasks.size() == 2);
    CHECK(back.num_branch_points == 2);
    CHECK(back.num_samples == 4);
    CHECK(back.tasks[0].task_id == "alpha");
    CHECK(back.tasks[1].branch_outputs == doc.tasks[1].branch_outputs);
}

TEST_CASE("affinity round-trip") {
    std::mt19937_64 rng(12);
    io::AffinityDoc doc;
    doc.task_ids = {"a", "b", "c"};
    doc.tensor = oracle::random_affinity(rng, 2, 3);

    const fs::path path = workspace() / "affinity.json";
    io::write_affinity(path, doc);
    const io::AffinityDoc back = io::read_affinity(path);
    CHECK(back.task_ids == doc.task_ids);
    CHECK(back.tensor.scores == doc.tensor.scores);
}

TEST_CASE("arch round-trip") {
    io::ArchDoc doc;
    doc.config.num_layers = 5;
    doc.config.branch_layers = {1, 2, 3};
    doc.costs.exec_cost = {1, 2, 3, 4, 5};
    doc.costs.load_cost = {5, 4, 3, 2, 1};
    doc.costs.param_size = {10, 20, 30, 40, 50};

    const fs::path path = workspace() / "arch.json";
    io::write_arch(path, doc);
    const io::ArchDoc back = io::read_arch(path);
    CHECK(back.config.branch_layers == doc.config.branch_layers);
    CHECK(back.costs.param_size == doc.costs.param_size);
}

TEST_CASE("task graph round-trip") {
    std::mt19937_64 rng(13);
    const mtsched::TaskGraph graph = oracle::random_task_graph(rng, 5, 2);
    const fs::path path = workspace() / "graph.json";
    io::write_task_graph(path, graph);
    const mtsched::TaskGraph back = io::read_task_graph(path);
    CHECK(back.canonical_key() == graph.canonical_key());
    CHECK(back.num_tasks == graph.num_tasks);
}

TEST_CASE("cost matrix round-trip with constraints") {
    std::mt19937_64 rng(14);
    io::CostMatrixDoc doc;
    doc.matrix = oracle::random_cost_matrix(rng, 4, 20.0);
    doc.matrix.unit = mtsched::CostUnit::Energy;
    doc.precedence = {{0, 2}, {1, 3}};
    doc.conditional = {{0, 2, 0.75}};

    const fs::path path = workspace() / "costs.json";
    io::write_cost_matrix(path, doc);
    const io::CostMatrixDoc back = io::read_cost_matrix(path);
    CHECK(back.matrix.entries == doc.matrix.entries);
    CHECK(back.matrix.unit == mtsched::CostUnit::Energy);
    CHECK(back.precedence == doc.precedence);
    REQUIRE(back.conditional.size() == 1);
    CHECK(back.conditional[0].prob == doctest::Approx(0.75));
}

TEST_CASE("score records round-trip as line-delimited documents") {
    std::mt19937_64 rng(15);
    std::vector<mtsched::GraphScoreRecord> records;
    for (int i = 0; i < 4; ++i) {
        mtsched::GraphScoreRecord record;
        record.graph = oracle::random_task_graph(rng, 4, 2);
        record.variety = 0.25 * i;
        record.model_size = 1000 + i;
        record.exec_cost = 3.5 * i;
        records.push_back(record);
    }
    const fs::path path = workspace() / "scores.jsonl";
    io::write_scores(path, records);
    const auto back = io::read_scores(path);
    REQUIRE(back.size() == records.size());
    for (std::size_t i = 0; i < records.size(); ++i) {
        CHECK(back[i].graph.canonical_key() == records[i].graph.canonical_key());
        CHECK(back[i].variety == doctest::Approx(records[i].variety));
        CHECK(back[i].model_size == records[i].model_size);
    }
}

TEST_CASE("solution round-trip") {
    mtsched::OrderingSolution solution;
    solution.order = {2, 0, 1};
    solution.fitness = 12.5;
    solution.solver = mtsched::SolverKind::Genetic;
    solution.seed = 99;
    solution.generations = 1234;

    const fs::path path = workspace() / "solution.json";
    io::write_solution(path, solution);
    const mtsched::OrderingSolution back = io::read_solution(path);
    CHECK(back.order == solution.order);
    CHECK(back.fitness == doctest::Approx(solution.fitness));
    CHECK(back.solver == mtsched::SolverKind::Genetic);
    CHECK(back.seed == 99);
    CHECK(back.generations == 1234);
}

TEST_CASE("tradeoff table round-trips") {
    std::mt19937_64 rng(16);
    std::vector<mtsched::GraphScoreRecord> records;
    for (int i = 0; i < 3; ++i) {
        mtsched::GraphScoreRecord record;
        record.graph = oracle::random_task_graph(rng, 3, 1);
        record.variety = 1.0 - 0.3 * i;
        record.model_size = 100 * (i + 1);
        record.exec_cost = 2.0 + i;
        records.push_back(record);
    }
    const std::vector<std::int64_t> budgets = {100, 200, 300};
    mtsched::TradeoffCurve curve = mtsched::sweep(records, budgets);
    mtsched::select_intersection(curve);

    const fs::path path = workspace() / "tradeoff.tsv";
    io::write_tradeoff_tsv(path, curve, records);
    std::vector<std::string> keys;
    const mtsched::TradeoffCurve back = io::read_tradeoff_tsv(path, &keys);
    REQUIRE(back.points.size() == curve.points.size());
    CHECK(back.selected_index == curve.selected_index);
    CHECK(keys.size() == curve.points.size());
    for (std::size_t p = 0; p < curve.points.size(); ++p) {
        CHECK(back.points[p].budget == curve.points[p].budget);
        CHECK(back.points[p].variety == doctest::Approx(curve.points[p].variety));
    }
}

TEST_CASE("schema violations are rejected") {
    const fs::path dir = workspace();

    write_text(dir / "wrong_schema.json", R"({"schema": "mtsched.profiles/999"})");
    CHECK_THROWS_WITH_AS(io::read_profiles(dir / "wrong_schema.json"),
                         doctest::Contains("schema"), mtsched::InputError);

    write_text(dir / "no_schema.json", R"({"d": 1})");
    CHECK_THROWS_AS(io::read_affinity(dir / "no_schema.json"), mtsched::InputError);

    write_text(dir / "not_json.json", "this is not json");
    CHECK_THROWS_AS(io::read_arch(dir / "not_json.json"), mtsched::InputError);

    write_text(dir / "missing_field.json",
               R"({"schema": "mtsched.taskgraph/1", "n": 2, "d": 1})");
    CHECK_THROWS_WITH_AS(io::read_task_graph(dir / "missing_field.json"),
                         doctest::Contains("partitions"), mtsched::InputError);

    write_text(dir / "ragged.json",
               R"({"schema": "mtsched.costmatrix/1", "n": 2, "unit": "time",
                   "rows": [[0, 1], [1]]})");
    CHECK_THROWS_AS(io::read_cost_matrix(dir / "ragged.json"), mtsched::InputError);

    CHECK_THROWS_AS(io::read_profiles(dir / "does_not_exist.json"), mtsched::InputError);
}

TEST_CASE("sidecar constraint files parse with comments") {
    const fs::path dir = workspace();
    write_text(dir / "precedence.txt", "# presence detector first\n0 1\n0 2\n\n");
    const auto pairs = io::read_precedence_file(dir / "precedence.txt");
    CHECK(pairs == std::vector<std::pair<int, int>>{{0, 1}, {0, 2}});

    write_text(dir / "conditional.txt", "0 1 0.8\n# rest always runs\n");
    const auto arcs = io::read_conditional_file(dir / "conditional.txt");
    REQUIRE(arcs.size() == 1);
    CHECK(arcs[0].before == 0);
    CHECK(arcs[0].after == 1);
    CHECK(arcs[0].prob == doctest::Approx(0.8));

    write_text(dir / "bad_precedence.txt", "0\n");
    CHECK_THROWS_AS(io::read_precedence_file(dir / "bad_precedence.txt"), mtsched::InputError);

    write_text(dir / "bad_conditional.txt", "0 1\n");
    CHECK_THROWS_AS(io::read_conditional_file(dir / "bad_conditional.txt"),
                    mtsched::InputError);
}
