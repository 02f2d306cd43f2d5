#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "swsig/graph.hpp"
#include "swsig/rng.hpp"

namespace swsig {

/// The supported density family: r -> coeff * sqrt(r), coeff > 0.
struct PhiSqrt {
    double coeff = 0.1;
    double operator()(std::size_t r) const { return coeff * std::sqrt(static_cast<double>(r)); }
};

/// Configuration for random instance generation.
struct GenConfig {
    std::size_t n_stable = 0;
    std::size_t n_unstable = 0;
    PhiSqrt phi{0.1};
    NiceWeightParams params;
    DwellWindow dwell{1, 1};
    RngSeed seed = 0;
    /// Restrict edge weights to [0, A] (log jump factors are nonnegative)
    /// instead of the statistical model's [-A, A].
    bool strict_edges = false;
    /// Extra random edges on top of the floor(phi(n_stable)) per-vertex
    /// stable outneighbors.
    std::size_t extra_edges = 0;
};

struct GeneratedInstance {
    WeightedDigraph graph;
    /// Per-vertex sampled dwell time, in [dwell.min, dwell.max].
    std::vector<int> dwell;
};

/// Generates a graph that is nicely connected and nicely weighted by
/// construction:
///   - every vertex receives exactly floor(phi(n_stable)) stable
///     outneighbors, drawn uniformly without replacement from the stable
///     set minus itself;
///   - per vertex, a dwell time uniform in [dwell.min, dwell.max] and a
///     product s = |w|*dwell uniform in (0, B]; the stored vertex weight is
///     -s/dwell for stable vertices and +s/dwell for unstable ones;
///   - per edge, a weight uniform in [-A, A] ([0, A] with strict_edges).
///
/// Draw order is fixed: outneighbor sets for vertices 0..N-1, then
/// (dwell, product) pairs for vertices 0..N-1, then extra-edge endpoints,
/// then edge weights in lexicographic (from, to) order.  One seed, one graph.
GeneratedInstance generate(const GenConfig& cfg);

/// A fresh draw of weights and dwell times along a fixed cycle, under the
/// same distributions generate() uses.  The graph itself is not modified.
struct CycleDraw {
    std::vector<double> products;       // s_k in (0, B]
    std::vector<int> dwells;            // in the graph's dwell window
    std::vector<double> vertex_weights; // signed, +-(s_k / dwell_k)
    std::vector<double> edge_weights;   // in [-A, A]

    /// Contractivity value of the draw, accumulated like gamma(): signed
    /// vertex products in ascending position, then edge weights.  Vertex
    /// terms use the sampled product directly (w * dwell == -+s exactly).
    double gamma() const;
};

/// Draw order: (dwell, product) per cycle position ascending, then edge
/// weights per cycle position ascending.  Signs follow the graph's
/// stable/unstable partition.  Throws InvalidCycleError if c is not a
/// valid cycle of g (dwell parameters on c, if any, are ignored).
CycleDraw resample_cycle_weights(const WeightedDigraph& g, const Cycle& c,
                                 const NiceWeightParams& p, RngSeed seed);

} // namespace swsig
