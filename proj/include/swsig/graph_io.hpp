#pragma once

#include <filesystem>
#include <string>

#include "swsig/graph.hpp"

namespace swsig {

/// Graph instance files are JSON documents:
///
///   {
///     "stable": [0, 1],
///     "unstable": [2],
///     "vertex_weights": {"0": -0.5, "1": -1.2, "2": 0.8},
///     "edges": [{"from": 0, "to": 1, "weight": 0.3}, ...],
///     "dwell_min": 2,
///     "dwell_max": 4
///   }
///
/// load_graph throws IoError with line:column for malformed JSON and
/// ConfigError naming the offending field/vertex for schema violations.
WeightedDigraph load_graph(const std::filesystem::path& path);
WeightedDigraph parse_graph(const std::string& text, const std::string& origin = "<string>");

void save_graph(const WeightedDigraph& g, const std::filesystem::path& path);
std::string graph_to_json(const WeightedDigraph& g);

} // namespace swsig
