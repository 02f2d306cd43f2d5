#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "swsig/error.hpp"

namespace swsig {

/// Vertex index in [0, N).  Vertices of the underlying digraph correspond to
/// the subsystems of a switched system.
using VertexId = std::uint32_t;

/// Admissible dwell-time window [min, max], in time steps.
struct DwellWindow {
    int min = 1;
    int max = 1;
};

struct OutEdge {
    VertexId to;
    double weight;
};

/// A cycle v_0, ..., v_{n-1} (edges v_k -> v_{k+1}, plus v_{n-1} -> v_0) with
/// optional per-vertex dwell parameters.  delta_params is either empty
/// (unassigned, as produced by the detector) or has one entry per vertex.
struct Cycle {
    std::vector<VertexId> vertices;
    std::vector<int> delta_params;

    std::size_t length() const { return vertices.size(); }
    bool has_deltas() const { return !delta_params.empty(); }
};

/// Parameters of the weight model: vertex products |w(j)|*delta lie in (0, B]
/// with mean beta, edge weights lie in [-A, A] with mean at most alpha.
struct NiceWeightParams {
    int delta = 1;
    double alpha = 0.0;
    double beta = 0.0;
    double A = 0.0;
    double B = 0.0;

    /// Throws ConfigError unless 0 < beta < B, alpha < beta, A > 0.
    void validate() const;
};

/// Immutable weighted directed graph of a switched system.
///
/// Vertices are partitioned into a stable set and an unstable set.  Vertex
/// weights are signed: negative for stable vertices, positive for unstable
/// ones (magnitude |ln lambda|).  Edge weights are ln mu for the admissible
/// switch (i, j); the generator's statistical model also permits negative
/// edge weights, so no sign is enforced on edges.  Built via DigraphBuilder;
/// all member queries are pure reads, safe for concurrent use.
class WeightedDigraph {
public:
    std::size_t num_vertices() const { return vertex_weight_.size(); }
    std::size_t num_edges() const { return num_edges_; }

    bool is_stable(VertexId v) const { return stable_[check_vertex(v)]; }
    double vertex_weight(VertexId v) const { return vertex_weight_[check_vertex(v)]; }

    /// Sorted ascending.
    const std::vector<VertexId>& stable_set() const { return stable_ids_; }
    const std::vector<VertexId>& unstable_set() const { return unstable_ids_; }

    /// Out-edges of v, sorted by target id.
    std::span<const OutEdge> out_edges(VertexId v) const {
        check_vertex(v);
        return {out_[v].data(), out_[v].size()};
    }

    bool has_edge(VertexId from, VertexId to) const;
    /// Throws ConfigError if the edge does not exist.
    double edge_weight(VertexId from, VertexId to) const;

    DwellWindow dwell_window() const { return dwell_; }

private:
    friend class DigraphBuilder;
    WeightedDigraph() = default;

    std::size_t check_vertex(VertexId v) const {
        if (v >= vertex_weight_.size()) {
            throw ConfigError("unknown vertex " + std::to_string(v));
        }
        return v;
    }

    std::vector<bool> stable_;
    std::vector<double> vertex_weight_;
    std::vector<std::vector<OutEdge>> out_;
    std::vector<VertexId> stable_ids_;
    std::vector<VertexId> unstable_ids_;
    std::size_t num_edges_ = 0;
    DwellWindow dwell_;
};

/// Accumulates vertices, weights and edges, then validates and freezes them
/// into a WeightedDigraph.  Construction is single-threaded.
class DigraphBuilder {
public:
    explicit DigraphBuilder(std::size_t num_vertices);

    DigraphBuilder& mark_stable(VertexId v);
    DigraphBuilder& mark_unstable(VertexId v);
    DigraphBuilder& vertex_weight(VertexId v, double w);
    /// Self-loops and duplicate edges are rejected immediately.
    DigraphBuilder& add_edge(VertexId from, VertexId to, double weight);
    DigraphBuilder& dwell_window(int min, int max);

    /// Validates: every vertex tagged stable or unstable, stable weights
    /// strictly negative, unstable weights strictly positive, all weights
    /// finite, 1 <= dwell min <= dwell max.
    WeightedDigraph build();

    /// Structure checks only; weight signs are not validated.  Intended for
    /// constructing deliberately ill-weighted graphs in bound checks.
    WeightedDigraph build_unchecked();

private:
    WeightedDigraph finish(bool check_weight_signs);

    enum class Tag : std::uint8_t { untagged, stable, unstable };
    std::vector<Tag> tags_;
    std::vector<double> weights_;
    std::vector<bool> has_weight_;
    std::vector<std::vector<OutEdge>> out_;
    DwellWindow dwell_{1, 1};
    std::size_t num_edges_ = 0;
};

/// Monotone density function Phi: |P_S| -> R used by the connectivity bound.
using PhiFn = std::function<double(std::size_t)>;

/// floor(phi(num_stable)), clamped at zero.
long long phi_floor(const PhiFn& phi, std::size_t num_stable);

/// Throws InvalidCycleError unless c is a valid cycle of g: length >= 2,
/// pairwise-distinct vertices, every hop (including the closing one) an edge
/// of g.  With require_deltas, additionally one dwell parameter per vertex,
/// each inside the graph's dwell window.
void validate_cycle(const WeightedDigraph& g, const Cycle& c, bool require_deltas);

/// Contractivity value of a cycle: sum_k w(v_k)*delta_k + sum_k w(v_k, v_{k+1}),
/// accumulated in ascending k, vertex terms first, then edge terms.  The
/// summation order is fixed so results are bit-reproducible.
double gamma(const WeightedDigraph& g, const Cycle& c);

/// True iff gamma(g, c) < 0 strictly.
bool is_delta_contractive(const WeightedDigraph& g, const Cycle& c);

/// { u in stable set : (v, u) is an edge }, sorted ascending.
std::vector<VertexId> stable_outneighbors(const WeightedDigraph& g, VertexId v);

/// True iff every vertex (stable and unstable) has at least
/// floor(phi(|stable set|)) stable outneighbors.  phi must be monotone
/// increasing; this is spot-checked on a few sampled arguments.
bool is_nicely_connected(const WeightedDigraph& g, const PhiFn& phi);

/// Boundedness report for the weight model of NiceWeightParams.  The
/// conditional-mean conditions concern the distribution that produced the
/// graph and cannot be checked on one instance; only the interval bounds
/// are examined here.
struct WeightBoundsReport {
    struct VertexViolation {
        VertexId vertex;
        double product; // |w(v)| * delta used for the check
    };
    struct EdgeViolation {
        VertexId from;
        VertexId to;
        double weight;
    };

    std::vector<VertexViolation> vertex_violations;
    std::vector<EdgeViolation> edge_violations;
    std::size_t vertices_checked = 0;
    std::size_t edges_checked = 0;

    bool ok() const { return vertex_violations.empty() && edge_violations.empty(); }
};

/// Checks 0 < |w(j)|*delta <= B per vertex (p.delta for every vertex) and
/// w(i,j) in [-A, A] per edge.  Violations are reported, never thrown.
WeightBoundsReport check_nice_weight_bounds(const WeightedDigraph& g, const NiceWeightParams& p);

/// Same check with a per-vertex dwell assignment instead of the single
/// p.delta (one entry per vertex, as produced by the instance generator).
WeightBoundsReport check_nice_weight_bounds(const WeightedDigraph& g, const NiceWeightParams& p,
                                            const std::vector<int>& dwell);

} // namespace swsig
