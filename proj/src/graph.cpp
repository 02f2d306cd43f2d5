#include "swsig/graph.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

namespace swsig {

void NiceWeightParams::validate() const {
    if (!(A > 0.0) || !std::isfinite(A)) {
        throw ConfigError("weight params: A must be positive and finite");
    }
    if (!(B > 0.0) || !std::isfinite(B)) {
        throw ConfigError("weight params: B must be positive and finite");
    }
    if (!(beta > 0.0) || !(beta < B)) {
        throw ConfigError("weight params: need 0 < beta < B");
    }
    if (!(alpha < beta)) {
        throw ConfigError("weight params: need alpha < beta");
    }
}

bool WeightedDigraph::has_edge(VertexId from, VertexId to) const {
    check_vertex(from);
    check_vertex(to);
    const auto& row = out_[from];
    auto it = std::lower_bound(row.begin(), row.end(), to,
                               [](const OutEdge& e, VertexId t) { return e.to < t; });
    return it != row.end() && it->to == to;
}

double WeightedDigraph::edge_weight(VertexId from, VertexId to) const {
    check_vertex(from);
    check_vertex(to);
    const auto& row = out_[from];
    auto it = std::lower_bound(row.begin(), row.end(), to,
                               [](const OutEdge& e, VertexId t) { return e.to < t; });
    if (it == row.end() || it->to != to) {
        throw ConfigError("no edge (" + std::to_string(from) + ", " + std::to_string(to) + ")");
    }
    return it->weight;
}

DigraphBuilder::DigraphBuilder(std::size_t num_vertices)
    : tags_(num_vertices, Tag::untagged),
      weights_(num_vertices, 0.0),
      has_weight_(num_vertices, false),
      out_(num_vertices) {
    if (num_vertices == 0) {
        throw ConfigError("graph must have at least one vertex");
    }
}

static std::size_t checked_id(VertexId v, std::size_t n) {
    if (v >= n) {
        throw ConfigError("unknown vertex " + std::to_string(v));
    }
    return v;
}

DigraphBuilder& DigraphBuilder::mark_stable(VertexId v) {
    tags_[checked_id(v, tags_.size())] = Tag::stable;
    return *this;
}

DigraphBuilder& DigraphBuilder::mark_unstable(VertexId v) {
    tags_[checked_id(v, tags_.size())] = Tag::unstable;
    return *this;
}

DigraphBuilder& DigraphBuilder::vertex_weight(VertexId v, double w) {
    checked_id(v, tags_.size());
    weights_[v] = w;
    has_weight_[v] = true;
    return *this;
}

DigraphBuilder& DigraphBuilder::add_edge(VertexId from, VertexId to, double weight) {
    checked_id(from, tags_.size());
    checked_id(to, tags_.size());
    if (from == to) {
        throw ConfigError("self-loop on vertex " + std::to_string(from));
    }
    if (!std::isfinite(weight)) {
        throw ConfigError("non-finite edge weight on (" + std::to_string(from) + ", " +
                          std::to_string(to) + ")");
    }
    auto& row = out_[from];
    auto it = std::lower_bound(row.begin(), row.end(), to,
                               [](const OutEdge& e, VertexId t) { return e.to < t; });
    if (it != row.end() && it->to == to) {
        throw ConfigError("duplicate edge (" + std::to_string(from) + ", " +
                          std::to_string(to) + ")");
    }
    row.insert(it, OutEdge{to, weight});
    ++num_edges_;
    return *this;
}

DigraphBuilder& DigraphBuilder::dwell_window(int min, int max) {
    dwell_ = DwellWindow{min, max};
    return *this;
}

WeightedDigraph DigraphBuilder::build() {
    return finish(true);
}

WeightedDigraph DigraphBuilder::build_unchecked() {
    return finish(false);
}

WeightedDigraph DigraphBuilder::finish(bool check_weight_signs) {
    const std::size_t n = tags_.size();
    if (dwell_.min < 1 || dwell_.min > dwell_.max) {
        throw ConfigError("dwell window: need 1 <= min <= max");
    }
    WeightedDigraph g;
    g.stable_.resize(n);
    g.vertex_weight_.resize(n);
    for (std::size_t v = 0; v < n; ++v) {
        if (tags_[v] == Tag::untagged) {
            throw ConfigError("vertex " + std::to_string(v) + " is neither stable nor unstable");
        }
        if (!has_weight_[v]) {
            throw ConfigError("vertex " + std::to_string(v) + " has no weight");
        }
        const double w = weights_[v];
        if (!std::isfinite(w)) {
            throw ConfigError("non-finite weight on vertex " + std::to_string(v));
        }
        const bool stable = tags_[v] == Tag::stable;
        if (check_weight_signs) {
            if (stable && !(w < 0.0)) {
                throw ConfigError("stable vertex " + std::to_string(v) +
                                  " must have negative weight, got " + std::to_string(w));
            }
            if (!stable && !(w > 0.0)) {
                throw ConfigError("unstable vertex " + std::to_string(v) +
                                  " must have positive weight, got " + std::to_string(w));
            }
        }
        g.stable_[v] = stable;
        g.vertex_weight_[v] = w;
        if (stable) {
            g.stable_ids_.push_back(static_cast<VertexId>(v));
        } else {
            g.unstable_ids_.push_back(static_cast<VertexId>(v));
        }
    }
    g.out_ = std::move(out_);
    g.num_edges_ = num_edges_;
    g.dwell_ = dwell_;
    return g;
}

long long phi_floor(const PhiFn& phi, std::size_t num_stable) {
    const double v = phi(num_stable);
    if (!std::isfinite(v)) {
        throw ConfigError("phi produced a non-finite value");
    }
    const auto f = static_cast<long long>(std::floor(v));
    return f < 0 ? 0 : f;
}

void validate_cycle(const WeightedDigraph& g, const Cycle& c, bool require_deltas) {
    const std::size_t n = c.vertices.size();
    if (n < 2) {
        throw InvalidCycleError("cycle must have at least 2 vertices");
    }
    std::unordered_set<VertexId> seen;
    for (VertexId v : c.vertices) {
        if (v >= g.num_vertices()) {
            throw InvalidCycleError("cycle vertex " + std::to_string(v) + " not in graph");
        }
        if (!seen.insert(v).second) {
            throw InvalidCycleError("duplicate vertex " + std::to_string(v) + " in cycle");
        }
    }
    for (std::size_t k = 0; k < n; ++k) {
        const VertexId from = c.vertices[k];
        const VertexId to = c.vertices[(k + 1) % n];
        if (!g.has_edge(from, to)) {
            throw InvalidCycleError("missing edge (" + std::to_string(from) + ", " +
                                    std::to_string(to) + ")");
        }
    }
    if (require_deltas) {
        if (c.delta_params.size() != n) {
            throw InvalidCycleError("cycle has no dwell parameters assigned");
        }
        const DwellWindow w = g.dwell_window();
        for (int d : c.delta_params) {
            if (d < w.min || d > w.max) {
                throw InvalidCycleError("dwell parameter " + std::to_string(d) +
                                        " outside window [" + std::to_string(w.min) + ", " +
                                        std::to_string(w.max) + "]");
            }
        }
    }
}

double gamma(const WeightedDigraph& g, const Cycle& c) {
    validate_cycle(g, c, true);
    const std::size_t n = c.vertices.size();
    double acc = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        acc += g.vertex_weight(c.vertices[k]) * static_cast<double>(c.delta_params[k]);
    }
    for (std::size_t k = 0; k < n; ++k) {
        acc += g.edge_weight(c.vertices[k], c.vertices[(k + 1) % n]);
    }
    return acc;
}

bool is_delta_contractive(const WeightedDigraph& g, const Cycle& c) {
    return gamma(g, c) < 0.0;
}

std::vector<VertexId> stable_outneighbors(const WeightedDigraph& g, VertexId v) {
    std::vector<VertexId> result;
    for (const OutEdge& e : g.out_edges(v)) {
        if (g.is_stable(e.to)) {
            result.push_back(e.to);
        }
    }
    return result; // out_edges sorted by target, so result is sorted
}

bool is_nicely_connected(const WeightedDigraph& g, const PhiFn& phi) {
    const std::size_t s = g.stable_set().size();
    // Spot-check monotonicity on a few arguments; full monotonicity is the
    // caller's responsibility.
    if (s >= 1) {
        const std::size_t samples[] = {1, (s + 1) / 2, s};
        double prev = phi(samples[0]);
        for (std::size_t i = 1; i < 3; ++i) {
            const double cur = phi(samples[i]);
            if (samples[i] >= samples[i - 1] && cur < prev) {
                throw ConfigError("phi is not monotone increasing on sampled arguments");
            }
            prev = cur;
        }
    }
    const long long threshold = phi_floor(phi, s);
    for (VertexId v = 0; v < g.num_vertices(); ++v) {
        long long stable_outdeg = 0;
        for (const OutEdge& e : g.out_edges(v)) {
            if (g.is_stable(e.to)) {
                ++stable_outdeg;
            }
        }
        if (stable_outdeg < threshold) {
            return false;
        }
    }
    return true;
}

static WeightBoundsReport check_bounds_impl(const WeightedDigraph& g, const NiceWeightParams& p,
                                            const std::vector<int>* dwell) {
    WeightBoundsReport report;
    const std::size_t n = g.num_vertices();
    for (VertexId v = 0; v < n; ++v) {
        const double delta = dwell ? static_cast<double>((*dwell)[v]) : static_cast<double>(p.delta);
        const double product = std::abs(g.vertex_weight(v)) * delta;
        if (!(product > 0.0) || product > p.B) {
            report.vertex_violations.push_back({v, product});
        }
        ++report.vertices_checked;
    }
    for (VertexId v = 0; v < n; ++v) {
        for (const OutEdge& e : g.out_edges(v)) {
            if (e.weight < -p.A || e.weight > p.A) {
                report.edge_violations.push_back({v, e.to, e.weight});
            }
            ++report.edges_checked;
        }
    }
    return report;
}

WeightBoundsReport check_nice_weight_bounds(const WeightedDigraph& g, const NiceWeightParams& p) {
    return check_bounds_impl(g, p, nullptr);
}

WeightBoundsReport check_nice_weight_bounds(const WeightedDigraph& g, const NiceWeightParams& p,
                                            const std::vector<int>& dwell) {
    if (dwell.size() != g.num_vertices()) {
        throw ConfigError("dwell assignment size does not match vertex count");
    }
    return check_bounds_impl(g, p, &dwell);
}

} // namespace swsig
