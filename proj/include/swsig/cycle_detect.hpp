#pragma once

#include "swsig/graph.hpp"
#include "swsig/rng.hpp"

namespace swsig {

/// Outcome of one randomized detection run.  The cycle's vertices all lie in
/// the stable set; its dwell parameters are left unassigned.  walk_trace holds
/// the prefix of the random walk that was discarded when the walk closed.
struct DetectionResult {
    Cycle cycle;
    std::vector<VertexId> walk_trace;
};

/// Randomized cycle detection on the stable part of the graph.
///
/// Starting from a uniformly random stable vertex, the walk repeatedly steps
/// to a uniformly random *unvisited* stable outneighbor of the current vertex.
/// When none is left, it closes back to the visited stable outneighbor that
/// appears earliest in the walk (the farthest back, so the cycle is longest)
/// and returns the closed part; the steps before it become walk_trace.
///
/// Uniform choices are made over candidate lists sorted by vertex id, so the
/// trace is a pure function of (g, seed) on every platform.
///
/// Throws DeadEndError if the current vertex has no stable outneighbor at
/// all (the graph then violates the connectivity premise), and ConfigError
/// if the stable set is empty.
DetectionResult detect_cycle(const WeightedDigraph& g, RngSeed seed);

/// Lower bound on the probability that a detected cycle is contractive on a
/// nicely connected, nicely weighted graph:
///
///   1 - exp(-1/2 * ((alpha - beta) / (A + B))^2 * phi_floor)
///
/// phi_floor is floor(phi(|stable set|)).  Throws ConfigError on parameters
/// violating the weight-model invariants.
double success_probability_bound(const NiceWeightParams& p, long long phi_floor);

} // namespace swsig
