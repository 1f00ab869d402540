#pragma once

#include "scanspectra/statespace.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace scanspectra {

// Raised for malformed model files and builtin model strings.
struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Simple undirected graph: no self-loops, no duplicate edges.
struct GraphSpec {
    int vertex_count = 0;
    std::vector<std::pair<int, int>> edges;
};

void validate_graph(const GraphSpec& graph);

GraphSpec complete_graph(int n);
GraphSpec path_graph(int n);
GraphSpec cycle_graph(int n);

enum class ModelFamily { kHardcore, kIsing, kExplicit };

struct ModelSpec {
    ModelFamily family = ModelFamily::kHardcore;
    GraphSpec graph;                 // hardcore / ising
    double fugacity = 1.0;           // hardcore
    double beta = 0.0;               // ising
    double field = 0.0;              // ising
    std::string weight_file_path;    // explicit
};

// Hardcore model: binary sites, weight fugacity^(#occupied) on independent
// sets of the graph and exactly zero elsewhere, normalized.
Distribution build_hardcore(const GraphSpec& graph, double fugacity,
                            Index state_cap = ProductSpace::kDefaultStateCap);

// Ising model on binary sites. Value v in {0,1} maps to spin s = 2v - 1;
// weight exp(beta * sum_{(i,j) in E} s_i s_j + field * sum_i s_i), normalized.
Distribution build_ising(const GraphSpec& graph, double beta, double field,
                         Index state_cap = ProductSpace::kDefaultStateCap);

// Reads the JSON model file format:
//   {"alphabets": [2,2], "weights": [{"state": [0,1], "w": 1.5}, ...]}
// Unlisted states weigh zero; duplicate states are an error.
Distribution load_weight_table(const std::string& path,
                               Index state_cap = ProductSpace::kDefaultStateCap);

// Writes a Distribution in the same format (support states only).
void write_weight_table(const Distribution& dist, const std::string& path);

// Parses builtin strings like "hardcore:complete:n=4,lambda=1" or
// "ising:cycle:n=6,beta=0.5,h=0". Anything without a ':' is treated as the
// path of a weight-table file.
ModelSpec parse_model_string(const std::string& text);

Distribution build_model(const ModelSpec& spec,
                         Index state_cap = ProductSpace::kDefaultStateCap);

}  // namespace scanspectra
