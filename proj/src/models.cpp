#include "scanspectra/models.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace scanspectra {

namespace {

using nlohmann::json;

std::vector<int> binary_alphabets(int n) { return std::vector<int>(static_cast<std::size_t>(n), 2); }

}  // namespace

void validate_graph(const GraphSpec& graph) {
    if (graph.vertex_count < 1) throw std::invalid_argument("GraphSpec: need at least one vertex");
    std::set<std::pair<int, int>> seen;
    for (const auto& [a, b] : graph.edges) {
        if (a == b) throw std::invalid_argument("GraphSpec: self-loop at vertex " + std::to_string(a));
        if (a < 0 || b < 0 || a >= graph.vertex_count || b >= graph.vertex_count)
            throw std::invalid_argument("GraphSpec: edge endpoint out of range");
        const auto key = std::minmax(a, b);
        if (!seen.insert(key).second)
            throw std::invalid_argument("GraphSpec: duplicate edge (" + std::to_string(a) + "," +
                                        std::to_string(b) + ")");
    }
}

GraphSpec complete_graph(int n) {
    GraphSpec g{n, {}};
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) g.edges.emplace_back(i, j);
    validate_graph(g);
    return g;
}

GraphSpec path_graph(int n) {
    GraphSpec g{n, {}};
    for (int i = 0; i + 1 < n; ++i) g.edges.emplace_back(i, i + 1);
    validate_graph(g);
    return g;
}

GraphSpec cycle_graph(int n) {
    if (n < 3) throw std::invalid_argument("cycle_graph: need at least 3 vertices");
    GraphSpec g = path_graph(n);
    g.edges.emplace_back(n - 1, 0);
    validate_graph(g);
    return g;
}

Distribution build_hardcore(const GraphSpec& graph, double fugacity, Index state_cap) {
    validate_graph(graph);
    if (!(fugacity > 0.0) || !std::isfinite(fugacity))
        throw std::invalid_argument("build_hardcore: fugacity must be positive and finite");
    ProductSpace space(binary_alphabets(graph.vertex_count), state_cap);
    Eigen::VectorXd weights = Eigen::VectorXd::Zero(space.total_states());
    for (Index idx = 0; idx < space.total_states(); ++idx) {
        const StateVector state = decode_state(space, idx);
        bool independent = true;
        for (const auto& [a, b] : graph.edges) {
            if (state[static_cast<std::size_t>(a)] == 1 && state[static_cast<std::size_t>(b)] == 1) {
                independent = false;
                break;
            }
        }
        if (!independent) continue;
        int occupied = 0;
        for (int v : state) occupied += v;
        weights(idx) = std::pow(fugacity, occupied);
    }
    return normalize_weights(space, weights);
}

Distribution build_ising(const GraphSpec& graph, double beta, double field, Index state_cap) {
    validate_graph(graph);
    if (!std::isfinite(beta) || !std::isfinite(field))
        throw std::invalid_argument("build_ising: parameters must be finite");
    ProductSpace space(binary_alphabets(graph.vertex_count), state_cap);
    Eigen::VectorXd energy(space.total_states());
    for (Index idx = 0; idx < space.total_states(); ++idx) {
        const StateVector state = decode_state(space, idx);
        double e = 0.0;
        for (const auto& [a, b] : graph.edges) {
            const int sa = 2 * state[static_cast<std::size_t>(a)] - 1;
            const int sb = 2 * state[static_cast<std::size_t>(b)] - 1;
            e += beta * sa * sb;
        }
        for (int v : state) e += field * (2 * v - 1);
        energy(idx) = e;
    }
    // Shift by the max exponent so weights stay finite; normalization removes it.
    const double shift = energy.maxCoeff();
    Eigen::VectorXd weights = (energy.array() - shift).exp();
    return normalize_weights(space, weights);
}

Distribution load_weight_table(const std::string& path, Index state_cap) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open model file: " + path);
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& err) {
        throw ParseError("model file " + path + ": " + err.what());
    }
    if (!doc.is_object() || !doc.contains("alphabets") || !doc.contains("weights"))
        throw ParseError("model file " + path + ": expected object with 'alphabets' and 'weights'");
    std::vector<int> alphabets;
    try {
        alphabets = doc.at("alphabets").get<std::vector<int>>();
    } catch (const json::exception& err) {
        throw ParseError("model file " + path + ": bad 'alphabets': " + err.what());
    }
    ProductSpace space(alphabets, state_cap);
    Eigen::VectorXd weights = Eigen::VectorXd::Zero(space.total_states());
    std::vector<bool> listed(static_cast<std::size_t>(space.total_states()), false);
    const auto& entries = doc.at("weights");
    if (!entries.is_array()) throw ParseError("model file " + path + ": 'weights' must be an array");
    for (std::size_t i = 0; i < entries.size(); ++i) {
        const auto& entry = entries[i];
        if (!entry.is_object() || !entry.contains("state") || !entry.contains("w"))
            throw ParseError("model file " + path + ": weights[" + std::to_string(i) +
                             "] must be {\"state\": [...], \"w\": number}");
        StateVector state;
        double w = 0.0;
        try {
            state = entry.at("state").get<StateVector>();
            w = entry.at("w").get<double>();
        } catch (const json::exception& err) {
            throw ParseError("model file " + path + ": weights[" + std::to_string(i) + "]: " +
                             err.what());
        }
        Index idx = 0;
        try {
            idx = encode_state(space, state);
        } catch (const std::invalid_argument& err) {
            throw ParseError("model file " + path + ": weights[" + std::to_string(i) + "]: " +
                             err.what());
        }
        if (listed[static_cast<std::size_t>(idx)])
            throw ParseError("model file " + path + ": weights[" + std::to_string(i) +
                             "] duplicates an earlier state");
        listed[static_cast<std::size_t>(idx)] = true;
        if (!std::isfinite(w) || w < 0.0)
            throw ParseError("model file " + path + ": weights[" + std::to_string(i) +
                             "] has a negative or non-finite weight");
        weights(idx) = w;
    }
    return normalize_weights(space, weights);
}

void write_weight_table(const Distribution& dist, const std::string& path) {
    json doc;
    doc["alphabets"] = dist.space().alphabet_sizes();
    json entries = json::array();
    for (Index idx : dist.support()) {
        json entry;
        entry["state"] = decode_state(dist.space(), idx);
        entry["w"] = dist.probs()(idx);
        entries.push_back(std::move(entry));
    }
    doc["weights"] = std::move(entries);
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write model file: " + path);
    out << doc.dump(2) << '\n';
}

namespace {

std::map<std::string, std::string> parse_kv_list(const std::string& text, const std::string& where) {
    std::map<std::string, std::string> out;
    std::stringstream stream(text);
    std::string item;
    while (std::getline(stream, item, ',')) {
        const auto eq = item.find('=');
        if (eq == std::string::npos || eq == 0)
            throw ParseError(where + ": expected key=value, got '" + item + "'");
        out[item.substr(0, eq)] = item.substr(eq + 1);
    }
    return out;
}

GraphSpec graph_by_name(const std::string& name, int n, const std::string& where) {
    if (name == "complete") return complete_graph(n);
    if (name == "path") return path_graph(n);
    if (name == "cycle") return cycle_graph(n);
    throw ParseError(where + ": unknown graph '" + name + "' (complete|path|cycle)");
}

double parse_double(const std::map<std::string, std::string>& kv, const std::string& key,
                    const std::string& where) {
    const auto it = kv.find(key);
    if (it == kv.end()) throw ParseError(where + ": missing parameter '" + key + "'");
    try {
        return std::stod(it->second);
    } catch (const std::exception&) {
        throw ParseError(where + ": bad value for '" + key + "': " + it->second);
    }
}

int parse_int(const std::map<std::string, std::string>& kv, const std::string& key,
              const std::string& where) {
    const auto it = kv.find(key);
    if (it == kv.end()) throw ParseError(where + ": missing parameter '" + key + "'");
    try {
        return std::stoi(it->second);
    } catch (const std::exception&) {
        throw ParseError(where + ": bad value for '" + key + "': " + it->second);
    }
}

}  // namespace

ModelSpec parse_model_string(const std::string& text) {
    ModelSpec spec;
    const auto first = text.find(':');
    if (first == std::string::npos) {
        spec.family = ModelFamily::kExplicit;
        spec.weight_file_path = text;
        return spec;
    }
    const std::string family = text.substr(0, first);
    const auto second = text.find(':', first + 1);
    if (second == std::string::npos)
        throw ParseError("model '" + text + "': expected family:graph:params");
    const std::string graph_name = text.substr(first + 1, second - first - 1);
    const auto kv = parse_kv_list(text.substr(second + 1), "model '" + text + "'");
    const int n = parse_int(kv, "n", "model '" + text + "'");
    spec.graph = graph_by_name(graph_name, n, "model '" + text + "'");
    if (family == "hardcore") {
        spec.family = ModelFamily::kHardcore;
        spec.fugacity = parse_double(kv, "lambda", "model '" + text + "'");
    } else if (family == "ising") {
        spec.family = ModelFamily::kIsing;
        spec.beta = parse_double(kv, "beta", "model '" + text + "'");
        spec.field = parse_double(kv, "h", "model '" + text + "'");
    } else {
        throw ParseError("model '" + text + "': unknown family '" + family + "' (hardcore|ising)");
    }
    return spec;
}

Distribution build_model(const ModelSpec& spec, Index state_cap) {
    switch (spec.family) {
        case ModelFamily::kHardcore:
            return build_hardcore(spec.graph, spec.fugacity, state_cap);
        case ModelFamily::kIsing:
            return build_ising(spec.graph, spec.beta, spec.field, state_cap);
        case ModelFamily::kExplicit:
            return load_weight_table(spec.weight_file_path, state_cap);
    }
    throw std::logic_error("build_model: unreachable");
}

}  // namespace scanspectra
