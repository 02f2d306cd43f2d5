#include "swsig/cycle_detect.hpp"

#include <cmath>
#include <cstdint>

namespace swsig {

DetectionResult detect_cycle(const WeightedDigraph& g, RngSeed seed) {
    const std::vector<VertexId>& stable = g.stable_set();
    if (stable.empty()) {
        throw ConfigError("detect_cycle: stable set is empty");
    }

    Rng rng(seed);
    // visit_pos[v] = index of v in the walk, or -1 if unvisited.
    std::vector<std::int64_t> visit_pos(g.num_vertices(), -1);
    std::vector<VertexId> walk;
    std::vector<VertexId> candidates;

    VertexId current = stable[rng.uniform_index(stable.size())];
    visit_pos[current] = 0;
    walk.push_back(current);

    for (;;) {
        candidates.clear();
        bool any_stable_outneighbor = false;
        for (const OutEdge& e : g.out_edges(current)) {
            if (!g.is_stable(e.to)) {
                continue;
            }
            any_stable_outneighbor = true;
            if (visit_pos[e.to] < 0) {
                candidates.push_back(e.to); // sorted: out_edges is id-ordered
            }
        }

        if (!candidates.empty()) {
            current = candidates[rng.uniform_index(candidates.size())];
            visit_pos[current] = static_cast<std::int64_t>(walk.size());
            walk.push_back(current);
            continue;
        }

        if (!any_stable_outneighbor) {
            throw DeadEndError("vertex " + std::to_string(current) +
                               " has no stable outneighbor");
        }

        // Close to the earliest-visited stable outneighbor; the (k - i)
        // values are the distinct visit positions, so the choice is unique.
        std::int64_t best_pos = -1;
        for (const OutEdge& e : g.out_edges(current)) {
            if (!g.is_stable(e.to)) {
                continue;
            }
            const std::int64_t pos = visit_pos[e.to];
            if (pos >= 0 && (best_pos < 0 || pos < best_pos)) {
                best_pos = pos;
            }
        }

        DetectionResult result;
        const auto split = static_cast<std::size_t>(best_pos);
        result.walk_trace.assign(walk.begin(), walk.begin() + split);
        result.cycle.vertices.assign(walk.begin() + split, walk.end());
        return result;
    }
}

double success_probability_bound(const NiceWeightParams& p, long long phi_floor) {
    p.validate();
    if (phi_floor < 0) {
        throw ConfigError("phi_floor must be nonnegative");
    }
    const double ratio = (p.alpha - p.beta) / (p.A + p.B);
    return 1.0 - std::exp(-0.5 * ratio * ratio * static_cast<double>(phi_floor));
}

} // namespace swsig
