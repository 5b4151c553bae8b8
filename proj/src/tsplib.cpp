#include "mtsched/tsplib.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

#include "mtsched/error.hpp"

namespace mtsched {

std::string to_string(EdgeWeightFormat format) {
    switch (format) {
        case EdgeWeightFormat::FullMatrix: return "FULL_MATRIX";
        case EdgeWeightFormat::UpperRow: return "UPPER_ROW";
        case EdgeWeightFormat::LowerDiagRow: return "LOWER_DIAG_ROW";
        case EdgeWeightFormat::UpperDiagRow: return "UPPER_DIAG_ROW";
    }
    return "?";
}

int TsplibInstance::num_nontrivial_precedence() const {
    int count = 0;
    for (const auto& [before, after] : precedence) {
        const bool involves_dummy =
            before == 0 || after == 0 || before == dimension - 1 || after == dimension - 1;
        if (!involves_dummy) ++count;
    }
    return count;
}

namespace {

struct Line {
    std::string text;
    int number = 0;
};

std::string trimmed(const std::string& s) {
    std::size_t begin = 0, end = s.size();
    while (begin < end && std::isspace(static_cast<unsigned char>(s[begin]))) ++begin;
    while (end > begin && std::isspace(static_cast<unsigned char>(s[end - 1]))) --end;
    return s.substr(begin, end - begin);
}

[[noreturn]] void fail(int line, const std::string& message) {
    throw InputError("tsplib parse error at line " + std::to_string(line) + ": " + message);
}

// Expands a triangular layout into the full symmetric matrix.
std::vector<double> expand(EdgeWeightFormat format, int n, const std::vector<double>& values,
                           int section_line) {
    auto expected = [&]() -> std::size_t {
        const auto un = static_cast<std::size_t>(n);
        switch (format) {
            case EdgeWeightFormat::FullMatrix: return un * un;
            case EdgeWeightFormat::UpperRow: return un * (un - 1) / 2;
            case EdgeWeightFormat::LowerDiagRow:
            case EdgeWeightFormat::UpperDiagRow: return un * (un + 1) / 2;
        }
        return 0;
    }();
    if (values.size() != expected)
        fail(section_line, "EDGE_WEIGHT_SECTION holds " + std::to_string(values.size()) +
                               " entries but DIMENSION " + std::to_string(n) + " with format " +
                               to_string(format) + " needs " + std::to_string(expected));

    std::vector<double> matrix(static_cast<std::size_t>(n) * n, 0.0);
    auto at = [&](int i, int j) -> double& {
        return matrix[static_cast<std::size_t>(i) * n + j];
    };

    std::size_t next = 0;
    switch (format) {
        case EdgeWeightFormat::FullMatrix:
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) at(i, j) = values[next++];
            break;
        case EdgeWeightFormat::UpperRow:
            for (int i = 0; i < n; ++i)
                for (int j = i + 1; j < n; ++j) {
                    at(i, j) = values[next];
                    at(j, i) = values[next];
                    ++next;
                }
            break;
        case EdgeWeightFormat::LowerDiagRow:
            for (int i = 0; i < n; ++i)
                for (int j = 0; j <= i; ++j) {
                    at(i, j) = values[next];
                    at(j, i) = values[next];
                    ++next;
                }
            break;
        case EdgeWeightFormat::UpperDiagRow:
            for (int i = 0; i < n; ++i)
                for (int j = i; j < n; ++j) {
                    at(i, j) = values[next];
                    at(j, i) = values[next];
                    ++next;
                }
            break;
    }
    return matrix;
}

} // namespace

TsplibInstance parse_tsplib(std::string_view text) {
    std::vector<Line> lines;
    {
        std::string current;
        int number = 1;
        for (char c : text) {
            if (c == '\n') {
                lines.push_back({current, number++});
                current.clear();
            } else {
                current += c;
            }
        }
        if (!current.empty()) lines.push_back({current, number});
    }

    TsplibInstance instance;
    bool have_dimension = false, have_format = false, explicit_weights = false;
    std::vector<double> values;
    int section_line = 0;
    bool in_weights = false, done_weights = false;

    for (const Line& line : lines) {
        const std::string body = trimmed(line.text);
        if (body.empty()) continue;

        if (in_weights) {
            if (body == "EOF") {
                in_weights = false;
                done_weights = true;
                continue;
            }
            std::istringstream stream(body);
            std::string token;
            while (stream >> token) {
                double value = 0.0;
                const auto* begin = token.data();
                const auto* end = token.data() + token.size();
                const auto result = std::from_chars(begin, end, value);
                if (result.ec != std::errc() || result.ptr != end)
                    fail(line.number, "expected a number in EDGE_WEIGHT_SECTION, got '" + token +
                                          "'");
                values.push_back(value);
            }
            continue;
        }

        if (body == "EOF") break;

        const std::size_t colon = body.find(':');
        std::string key = trimmed(colon == std::string::npos ? body : body.substr(0, colon));
        std::string value = colon == std::string::npos ? "" : trimmed(body.substr(colon + 1));

        if (key == "NAME") {
            instance.name = value;
        } else if (key == "TYPE") {
            if (value == "TSP" || value == "ATSP")
                instance.kind = InstanceKind::Tsp;
            else if (value == "SOP")
                instance.kind = InstanceKind::Sop;
            else
                fail(line.number, "unsupported TYPE '" + value + "'");
        } else if (key == "DIMENSION") {
            try {
                instance.dimension = std::stoi(value);
            } catch (const std::exception&) {
                fail(line.number, "bad DIMENSION '" + value + "'");
            }
            if (instance.dimension < 1) fail(line.number, "DIMENSION must be positive");
            have_dimension = true;
        } else if (key == "EDGE_WEIGHT_TYPE") {
            if (value != "EXPLICIT")
                fail(line.number, "unsupported EDGE_WEIGHT_TYPE '" + value +
                                      "' (only EXPLICIT matrices are supported)");
            explicit_weights = true;
        } else if (key == "EDGE_WEIGHT_FORMAT") {
            if (value == "FULL_MATRIX")
                instance.format = EdgeWeightFormat::FullMatrix;
            else if (value == "UPPER_ROW")
                instance.format = EdgeWeightFormat::UpperRow;
            else if (value == "LOWER_DIAG_ROW")
                instance.format = EdgeWeightFormat::LowerDiagRow;
            else if (value == "UPPER_DIAG_ROW")
                instance.format = EdgeWeightFormat::UpperDiagRow;
            else
                fail(line.number, "unknown EDGE_WEIGHT_FORMAT '" + value + "'");
            have_format = true;
        } else if (key == "EDGE_WEIGHT_SECTION") {
            if (!have_dimension) fail(line.number, "EDGE_WEIGHT_SECTION before DIMENSION");
            if (!have_format) fail(line.number, "EDGE_WEIGHT_SECTION before EDGE_WEIGHT_FORMAT");
            in_weights = true;
            section_line = line.number;
        } else if (key == "COMMENT" || key == "DISPLAY_DATA_TYPE" || key == "NODE_COORD_TYPE") {
            // informational
        } else {
            fail(line.number, "unsupported keyword or section '" + key + "'");
        }
    }

    if (!have_dimension) throw InputError("tsplib parse error: missing DIMENSION");
    if (!explicit_weights)
        throw InputError("tsplib parse error: missing EDGE_WEIGHT_TYPE: EXPLICIT");
    if (!in_weights && !done_weights && values.empty())
        throw InputError("tsplib parse error: missing EDGE_WEIGHT_SECTION");

    const int n = instance.dimension;

    // SOP files repeat the dimension as the first token of the section.
    if (instance.kind == InstanceKind::Sop && !values.empty() &&
        values.front() == static_cast<double>(n) &&
        values.size() == static_cast<std::size_t>(n) * n + 1)
        values.erase(values.begin());

    instance.weights = expand(instance.format, n, values, section_line);

    if (instance.kind == InstanceKind::Sop) {
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                if (i != j && instance.weight(i, j) == -1.0) {
                    instance.precedence.emplace_back(j, i);  // j before i
                    instance.weights[static_cast<std::size_t>(i) * n + j] = 0.0;
                }
            }
        }
        for (int i = 0; i < n; ++i) instance.weights[static_cast<std::size_t>(i) * n + i] = 0.0;

        // reuse the ordering validation to reject cyclic precedence
        OrderingProblem probe;
        probe.costs = CostMatrix::zero(n);
        probe.precedence = instance.precedence;
        probe.validate();
    } else {
        for (double w : instance.weights)
            if (w < 0.0)
                throw InputError("tsplib parse error: negative edge weight in a TSP instance");
    }

    return instance;
}

TsplibInstance load_tsplib_file(const std::filesystem::path& path) {
    std::ifstream stream(path);
    if (!stream) throw InputError("cannot open TSPLIB file: " + path.string());
    std::ostringstream buffer;
    buffer << stream.rdbuf();
    TsplibInstance instance = parse_tsplib(buffer.str());
    if (instance.name.empty()) instance.name = path.stem().string();
    return instance;
}

std::string serialize_full_matrix(const TsplibInstance& instance) {
    std::ostringstream out;
    out << "NAME: " << instance.name << "\n";
    out << "TYPE: " << (instance.kind == InstanceKind::Sop ? "SOP" : "TSP") << "\n";
    out << "DIMENSION: " << instance.dimension << "\n";
    out << "EDGE_WEIGHT_TYPE: EXPLICIT\n";
    out << "EDGE_WEIGHT_FORMAT: FULL_MATRIX\n";
    out << "EDGE_WEIGHT_SECTION\n";

    const int n = instance.dimension;
    std::vector<double> matrix = instance.weights;
    if (instance.kind == InstanceKind::Sop) {
        out << n << "\n";
        for (const auto& [before, after] : instance.precedence)
            matrix[static_cast<std::size_t>(after) * n + before] = -1.0;
    }
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (j > 0) out << ' ';
            const double w = matrix[static_cast<std::size_t>(i) * n + j];
            if (w == static_cast<double>(static_cast<long long>(w)))
                out << static_cast<long long>(w);
            else
                out << w;
        }
        out << "\n";
    }
    out << "EOF\n";
    return out.str();
}

OrderingProblem to_problem(const TsplibInstance& instance,
                           std::span<const ConditionalArc> overlay,
                           std::vector<std::string>* warnings) {
    const int n = instance.dimension;
    OrderingProblem problem;
    problem.objective = Objective::ClosedTour;
    problem.costs = CostMatrix::zero(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j) problem.costs.at(i, j) = instance.weight(i, j);
    problem.precedence = instance.precedence;

    for (const ConditionalArc& arc : overlay) {
        if (arc.before < 0 || arc.before >= n || arc.after < 0 || arc.after >= n)
            throw InputError("conditional overlay pair (" + std::to_string(arc.before) + ", " +
                             std::to_string(arc.after) + ") out of range");
        const bool in_precedence =
            std::find(problem.precedence.begin(), problem.precedence.end(),
                      std::make_pair(arc.before, arc.after)) != problem.precedence.end();
        if (!in_precedence && warnings)
            warnings->push_back("conditional pair (" + std::to_string(arc.before) + ", " +
                                std::to_string(arc.after) +
                                ") has no matching precedence constraint");
        problem.conditional.push_back(arc);
    }

    problem.validate();
    return problem;
}

} // namespace mtsched
