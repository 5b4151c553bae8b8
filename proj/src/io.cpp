#include "mtsched/io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "mtsched/error.hpp"

namespace mtsched::io {

using nlohmann::json;

namespace {

json load_json(const std::filesystem::path& path) {
    std::ifstream stream(path);
    if (!stream) throw InputError("cannot open " + path.string());
    try {
        return json::parse(stream);
    } catch (const json::exception& e) {
        throw InputError(path.string() + ": " + e.what());
    }
}

void save_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream stream(path, std::ios::binary);
    if (!stream) throw InputError("cannot write " + path.string());
    stream << text;
    if (!stream) throw InputError("write failed for " + path.string());
}

void save_json(const std::filesystem::path& path, const json& doc) {
    save_text(path, doc.dump(2) + "\n");
}

void expect_schema(const json& doc, const std::string& schema,
                   const std::filesystem::path& path) {
    if (!doc.is_object() || !doc.contains("schema") || !doc["schema"].is_string())
        throw InputError(path.string() + ": missing schema field (expected \"" + schema + "\")");
    if (doc["schema"].get<std::string>() != schema)
        throw InputError(path.string() + ": schema is '" + doc["schema"].get<std::string>() +
                         "', expected '" + schema + "'");
}

template <typename T>
T get_field(const json& doc, const char* field, const std::filesystem::path& path) {
    if (!doc.contains(field))
        throw InputError(path.string() + ": missing field '" + field + "'");
    try {
        return doc[field].get<T>();
    } catch (const json::exception& e) {
        throw InputError(path.string() + ": bad field '" + field + "': " + e.what());
    }
}

} // namespace

ProfilesDoc read_profiles(const std::filesystem::path& path) {
    const json doc = load_json(path);
    expect_schema(doc, "mtsched.profiles/1", path);

    ProfilesDoc out;
    out.num_branch_points = get_field<std::size_t>(doc, "d", path);
    out.num_samples = get_field<std::size_t>(doc, "k", path);
    const json tasks = get_field<json>(doc, "tasks", path);
    if (!tasks.is_array() || tasks.empty())
        throw InputError(path.string() + ": 'tasks' must be a nonempty array");

    for (const json& entry : tasks) {
        RepresentationProfile profile;
        profile.task_id = get_field<std::string>(entry, "task_id", path);
        profile.branch_outputs =
            get_field<std::vector<std::vector<std::vector<double>>>>(entry, "branch_outputs",
                                                                     path);
        profile.validate();
        if (profile.num_branch_points() != out.num_branch_points)
            throw InputError(path.string() + ": task '" + profile.task_id + "' has " +
                             std::to_string(profile.num_branch_points()) +
                             " branch points, document says " +
                             std::to_string(out.num_branch_points));
        if (profile.num_samples() != out.num_samples)
            throw InputError(path.string() + ": task '" + profile.task_id + "' has " +
                             std::to_string(profile.num_samples()) + " samples, document says " +
                             std::to_string(out.num_samples));
        out.tasks.push_back(std::move(profile));
    }
    return out;
}

void write_profiles(const std::filesystem::path& path, const ProfilesDoc& doc) {
    json tasks = json::array();
    for (const RepresentationProfile& profile : doc.tasks)
        tasks.push_back({{"task_id", profile.task_id}, {"branch_outputs", profile.branch_outputs}});
    save_json(path, json{{"schema", "mtsched.profiles/1"},
                         {"d", doc.num_branch_points},
                         {"k", doc.num_samples},
                         {"tasks", tasks}});
}

AffinityDoc read_affinity(const std::filesystem::path& path) {
    const json doc = load_json(path);
    expect_schema(doc, "mtsched.affinity/1", path);

    AffinityDoc out;
    out.task_ids = get_field<std::vector<std::string>>(doc, "task_ids", path);
    const auto d = get_field<std::size_t>(doc, "d", path);
    const auto n = get_field<std::size_t>(doc, "n", path);
    const auto scores =
        get_field<std::vector<std::vector<std::vector<double>>>>(doc, "scores", path);
    if (out.task_ids.size() != n)
        throw InputError(path.string() + ": task_ids length disagrees with n");
    if (scores.size() != d)
        throw InputError(path.string() + ": scores has " + std::to_string(scores.size()) +
                         " branch points, document says " + std::to_string(d));

    out.tensor.num_branch_points = d;
    out.tensor.num_tasks = n;
    out.tensor.scores.reserve(d * n * n);
    for (const auto& slab : scores) {
        if (slab.size() != n)
            throw InputError(path.string() + ": scores slab is not n x n");
        for (const auto& row : slab) {
            if (row.size() != n)
                throw InputError(path.string() + ": scores slab is not n x n");
            for (double value : row) out.tensor.scores.push_back(value);
        }
    }
    return out;
}

void write_affinity(const std::filesystem::path& path, const AffinityDoc& doc) {
    const std::size_t d = doc.tensor.num_branch_points;
    const std::size_t n = doc.tensor.num_tasks;
    json scores = json::array();
    for (std::size_t branch = 0; branch < d; ++branch) {
        json slab = json::array();
        for (std::size_t i = 0; i < n; ++i) {
            json row = json::array();
            for (std::size_t j = 0; j < n; ++j) row.push_back(doc.tensor.at(branch, i, j));
            slab.push_back(std::move(row));
        }
        scores.push_back(std::move(slab));
    }
    save_json(path, json{{"schema", "mtsched.affinity/1"},
                         {"d", d},
                         {"n", n},
                         {"task_ids", doc.task_ids},
                         {"scores", scores}});
}

ArchDoc read_arch(const std::filesystem::path& path) {
    const json doc = load_json(path);
    expect_schema(doc, "mtsched.arch/1", path);

    ArchDoc out;
    out.config.num_layers = get_field<int>(doc, "num_layers", path);
    out.config.branch_layers = get_field<std::vector<int>>(doc, "branch_layers", path);
    out.costs.exec_cost = get_field<std::vector<double>>(doc, "exec_cost", path);
    out.costs.load_cost = get_field<std::vector<double>>(doc, "load_cost", path);
    out.costs.param_size = get_field<std::vector<std::int64_t>>(doc, "param_size", path);
    out.config.validate();
    out.costs.validate(out.config.num_layers);
    return out;
}

void write_arch(const std::filesystem::path& path, const ArchDoc& doc) {
    save_json(path, json{{"schema", "mtsched.arch/1"},
                         {"num_layers", doc.config.num_layers},
                         {"branch_layers", doc.config.branch_layers},
                         {"exec_cost", doc.costs.exec_cost},
                         {"load_cost", doc.costs.load_cost},
                         {"param_size", doc.costs.param_size}});
}

namespace {

TaskGraph task_graph_from_json(const json& doc, const std::filesystem::path& path) {
    TaskGraph graph;
    graph.num_tasks = get_field<int>(doc, "n", path);
    const auto d = get_field<int>(doc, "d", path);
    graph.partitions = get_field<std::vector<Partition>>(doc, "partitions", path);
    if (static_cast<int>(graph.partitions.size()) != d)
        throw InputError(path.string() + ": graph has " +
                         std::to_string(graph.partitions.size()) +
                         " partition levels, document says " + std::to_string(d));
    graph.validate();
    return graph;
}

json task_graph_to_json(const TaskGraph& graph) {
    return json{{"n", graph.num_tasks},
                {"d", graph.depth()},
                {"partitions", graph.partitions}};
}

} // namespace

TaskGraph read_task_graph(const std::filesystem::path& path) {
    const json doc = load_json(path);
    expect_schema(doc, "mtsched.taskgraph/1", path);
    return task_graph_from_json(doc, path);
}

void write_task_graph(const std::filesystem::path& path, const TaskGraph& graph) {
    json doc = task_graph_to_json(graph);
    doc["schema"] = "mtsched.taskgraph/1";
    save_json(path, doc);
}

CostMatrixDoc read_cost_matrix(const std::filesystem::path& path) {
    const json doc = load_json(path);
    expect_schema(doc, "mtsched.costmatrix/1", path);

    CostMatrixDoc out;
    out.matrix.num_tasks = get_field<int>(doc, "n", path);
    out.matrix.unit = cost_unit_from_string(get_field<std::string>(doc, "unit", path));
    const auto rows = get_field<std::vector<std::vector<double>>>(doc, "rows", path);
    if (rows.size() != static_cast<std::size_t>(out.matrix.num_tasks))
        throw InputError(path.string() + ": expected " + std::to_string(out.matrix.num_tasks) +
                         " rows, got " + std::to_string(rows.size()));
    for (const auto& row : rows) {
        if (row.size() != static_cast<std::size_t>(out.matrix.num_tasks))
            throw InputError(path.string() + ": ragged cost matrix rows");
        out.matrix.entries.insert(out.matrix.entries.end(), row.begin(), row.end());
    }
    out.matrix.validate();

    if (doc.contains("precedence"))
        out.precedence = get_field<std::vector<std::pair<int, int>>>(doc, "precedence", path);
    if (doc.contains("conditional")) {
        const auto triples =
            get_field<std::vector<std::tuple<int, int, double>>>(doc, "conditional", path);
        for (const auto& [before, after, prob] : triples)
            out.conditional.push_back({before, after, prob});
    }
    return out;
}

void write_cost_matrix(const std::filesystem::path& path, const CostMatrixDoc& doc) {
    json rows = json::array();
    for (int i = 0; i < doc.matrix.num_tasks; ++i) {
        json row = json::array();
        for (int j = 0; j < doc.matrix.num_tasks; ++j) row.push_back(doc.matrix.at(i, j));
        rows.push_back(std::move(row));
    }
    json conditional = json::array();
    for (const ConditionalArc& arc : doc.conditional)
        conditional.push_back({arc.before, arc.after, arc.prob});
    save_json(path, json{{"schema", "mtsched.costmatrix/1"},
                         {"n", doc.matrix.num_tasks},
                         {"unit", to_string(doc.matrix.unit)},
                         {"rows", rows},
                         {"precedence", doc.precedence},
                         {"conditional", conditional}});
}

std::vector<GraphScoreRecord> read_scores(const std::filesystem::path& path) {
    std::ifstream stream(path);
    if (!stream) throw InputError("cannot open " + path.string());

    std::vector<GraphScoreRecord> records;
    std::string line;
    int number = 0;
    while (std::getline(stream, line)) {
        ++number;
        if (line.empty()) continue;
        json doc;
        try {
            doc = json::parse(line);
        } catch (const json::exception& e) {
            throw InputError(path.string() + ":" + std::to_string(number) + ": " + e.what());
        }
        GraphScoreRecord record;
        record.graph = task_graph_from_json(get_field<json>(doc, "graph", path), path);
        record.variety = get_field<double>(doc, "variety", path);
        record.model_size = get_field<std::int64_t>(doc, "model_size", path);
        record.exec_cost = get_field<double>(doc, "exec_cost", path);
        records.push_back(std::move(record));
    }
    return records;
}

void write_scores(const std::filesystem::path& path, std::span<const GraphScoreRecord> records) {
    std::string text;
    for (const GraphScoreRecord& record : records) {
        const json doc = {{"graph", task_graph_to_json(record.graph)},
                          {"variety", record.variety},
                          {"model_size", record.model_size},
                          {"exec_cost", record.exec_cost}};
        text += doc.dump();
        text += '\n';
    }
    save_text(path, text);
}

OrderingSolution read_solution(const std::filesystem::path& path) {
    const json doc = load_json(path);
    expect_schema(doc, "mtsched.solution/1", path);

    OrderingSolution out;
    out.order = get_field<std::vector<int>>(doc, "order", path);
    out.fitness = get_field<double>(doc, "fitness", path);
    const auto solver = get_field<std::string>(doc, "solver", path);
    if (solver == "exact")
        out.solver = SolverKind::Exact;
    else if (solver == "ga")
        out.solver = SolverKind::Genetic;
    else
        throw InputError(path.string() + ": unknown solver '" + solver + "'");
    out.seed = get_field<std::uint64_t>(doc, "seed", path);
    out.generations = get_field<std::size_t>(doc, "generations", path);
    return out;
}

void write_solution(const std::filesystem::path& path, const OrderingSolution& solution) {
    save_json(path, json{{"schema", "mtsched.solution/1"},
                         {"order", solution.order},
                         {"fitness", solution.fitness},
                         {"solver", solution.solver == SolverKind::Exact ? "exact" : "ga"},
                         {"seed", solution.seed},
                         {"generations", solution.generations}});
}

void write_tradeoff_tsv(const std::filesystem::path& path, const TradeoffCurve& curve,
                        std::span<const GraphScoreRecord> scored) {
    std::ostringstream out;
    out.precision(12);
    out << "budget\tgraph\tvariety\tvariety_norm\texec_cost\tcost_norm\tselected\n";
    for (const TradeoffPoint& point : curve.points) {
        out << point.budget << '\t' << scored[point.graph_index].graph.canonical_key() << '\t'
            << point.variety << '\t' << point.variety_norm << '\t' << point.exec_cost << '\t'
            << point.cost_norm << '\t' << (point.selected ? 1 : 0) << '\n';
    }
    save_text(path, out.str());
}

TradeoffCurve read_tradeoff_tsv(const std::filesystem::path& path,
                                std::vector<std::string>* graph_keys) {
    std::ifstream stream(path);
    if (!stream) throw InputError("cannot open " + path.string());

    TradeoffCurve curve;
    std::string line;
    int number = 0;
    bool header = true;
    while (std::getline(stream, line)) {
        ++number;
        if (line.empty()) continue;
        if (header) {
            header = false;
            continue;
        }
        std::istringstream fields(line);
        TradeoffPoint point;
        std::string graph_key;
        int selected = 0;
        if (!(fields >> point.budget >> graph_key >> point.variety >> point.variety_norm >>
              point.exec_cost >> point.cost_norm >> selected))
            throw InputError(path.string() + ":" + std::to_string(number) +
                             ": malformed tradeoff row");
        point.selected = selected != 0;
        if (point.selected) curve.selected_index = curve.points.size();
        if (graph_keys) graph_keys->push_back(graph_key);
        curve.points.push_back(point);
    }
    return curve;
}

std::vector<std::pair<int, int>> read_precedence_file(const std::filesystem::path& path) {
    std::ifstream stream(path);
    if (!stream) throw InputError("cannot open " + path.string());

    std::vector<std::pair<int, int>> pairs;
    std::string line;
    int number = 0;
    while (std::getline(stream, line)) {
        ++number;
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        std::istringstream fields(line);
        int before = 0, after = 0;
        if (!(fields >> before)) continue;  // blank or comment
        if (!(fields >> after))
            throw InputError(path.string() + ":" + std::to_string(number) +
                             ": expected 'before after'");
        std::string extra;
        if (fields >> extra)
            throw InputError(path.string() + ":" + std::to_string(number) +
                             ": unexpected trailing token '" + extra + "'");
        pairs.emplace_back(before, after);
    }
    return pairs;
}

std::vector<ConditionalArc> read_conditional_file(const std::filesystem::path& path) {
    std::ifstream stream(path);
    if (!stream) throw InputError("cannot open " + path.string());

    std::vector<ConditionalArc> arcs;
    std::string line;
    int number = 0;
    while (std::getline(stream, line)) {
        ++number;
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        std::istringstream fields(line);
        ConditionalArc arc;
        if (!(fields >> arc.before)) continue;
        if (!(fields >> arc.after >> arc.prob))
            throw InputError(path.string() + ":" + std::to_string(number) +
                             ": expected 'before after probability'");
        arcs.push_back(arc);
    }
    return arcs;
}

} // namespace mtsched::io
