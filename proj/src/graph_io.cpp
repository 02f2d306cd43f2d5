#include "swsig/graph_io.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace swsig {

using nlohmann::json;

namespace {

// Translate a byte offset from nlohmann's parse_error into line:column.
std::string line_col(const std::string& text, std::size_t byte) {
    std::size_t line = 1;
    std::size_t col = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return std::to_string(line) + ":" + std::to_string(col);
}

const json& require(const json& doc, const char* key, const std::string& origin) {
    auto it = doc.find(key);
    if (it == doc.end()) {
        throw ConfigError(origin + ": missing field '" + key + "'");
    }
    return *it;
}

} // namespace

WeightedDigraph parse_graph(const std::string& text, const std::string& origin) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw IoError(origin + ":" + line_col(text, e.byte) + ": " + e.what());
    }
    if (!doc.is_object()) {
        throw ConfigError(origin + ": top-level value must be an object");
    }

    const json& stable = require(doc, "stable", origin);
    const json& unstable = require(doc, "unstable", origin);
    const json& weights = require(doc, "vertex_weights", origin);
    const json& edges = require(doc, "edges", origin);
    const json& dwell_min = require(doc, "dwell_min", origin);
    const json& dwell_max = require(doc, "dwell_max", origin);

    if (!stable.is_array() || !unstable.is_array()) {
        throw ConfigError(origin + ": 'stable' and 'unstable' must be arrays of vertex ids");
    }
    if (!weights.is_object()) {
        throw ConfigError(origin + ": 'vertex_weights' must map vertex id to number");
    }
    if (!edges.is_array()) {
        throw ConfigError(origin + ": 'edges' must be an array");
    }
    if (!dwell_min.is_number_integer() || !dwell_max.is_number_integer()) {
        throw ConfigError(origin + ": 'dwell_min' and 'dwell_max' must be integers");
    }

    std::size_t n = 0;
    for (const json& arr : {std::cref(stable), std::cref(unstable)}) {
        for (const json& v : arr.get_ref<const json::array_t&>()) {
            if (!v.is_number_unsigned()) {
                throw ConfigError(origin + ": vertex ids must be nonnegative integers");
            }
            n = std::max(n, v.get<std::size_t>() + 1);
        }
    }
    if (n == 0) {
        throw ConfigError(origin + ": graph has no vertices");
    }

    DigraphBuilder builder(n);
    std::vector<bool> tagged(n, false);
    for (const json& v : stable) {
        const auto id = v.get<VertexId>();
        if (tagged[id]) {
            throw ConfigError(origin + ": vertex " + std::to_string(id) +
                              " listed in both stable and unstable sets");
        }
        tagged[id] = true;
        builder.mark_stable(id);
    }
    for (const json& v : unstable) {
        const auto id = v.get<VertexId>();
        if (tagged[id]) {
            throw ConfigError(origin + ": vertex " + std::to_string(id) +
                              " listed in both stable and unstable sets");
        }
        tagged[id] = true;
        builder.mark_unstable(id);
    }

    for (const auto& [key, value] : weights.items()) {
        std::size_t id = 0;
        try {
            id = std::stoull(key);
        } catch (const std::exception&) {
            throw ConfigError(origin + ": vertex_weights key '" + key + "' is not a vertex id");
        }
        if (id >= n) {
            throw ConfigError(origin + ": vertex_weights names unknown vertex " + key);
        }
        if (!value.is_number()) {
            throw ConfigError(origin + ": weight of vertex " + key + " must be a number");
        }
        builder.vertex_weight(static_cast<VertexId>(id), value.get<double>());
    }

    for (const json& e : edges) {
        if (!e.is_object() || !e.contains("from") || !e.contains("to") || !e.contains("weight")) {
            throw ConfigError(origin + ": each edge needs 'from', 'to' and 'weight'");
        }
        builder.add_edge(e["from"].get<VertexId>(), e["to"].get<VertexId>(),
                         e["weight"].get<double>());
    }

    builder.dwell_window(dwell_min.get<int>(), dwell_max.get<int>());
    try {
        return builder.build();
    } catch (const ConfigError& e) {
        throw ConfigError(origin + ": " + e.what());
    }
}

WeightedDigraph load_graph(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open " + path.string());
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_graph(buf.str(), path.string());
}

std::string graph_to_json(const WeightedDigraph& g) {
    json doc;
    doc["stable"] = g.stable_set();
    doc["unstable"] = g.unstable_set();
    json weights = json::object();
    for (VertexId v = 0; v < g.num_vertices(); ++v) {
        weights[std::to_string(v)] = g.vertex_weight(v);
    }
    doc["vertex_weights"] = std::move(weights);
    json edges = json::array();
    for (VertexId v = 0; v < g.num_vertices(); ++v) {
        for (const OutEdge& e : g.out_edges(v)) {
            edges.push_back({{"from", v}, {"to", e.to}, {"weight", e.weight}});
        }
    }
    doc["edges"] = std::move(edges);
    doc["dwell_min"] = g.dwell_window().min;
    doc["dwell_max"] = g.dwell_window().max;
    return doc.dump(2) + "\n";
}

void save_graph(const WeightedDigraph& g, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) {
        throw IoError("cannot open " + path.string() + " for writing");
    }
    out << graph_to_json(g);
    if (!out) {
        throw IoError("write failed: " + path.string());
    }
}

} // namespace swsig
