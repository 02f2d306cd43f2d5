#include "swsig/instance_gen.hpp"

#include <algorithm>
#include <set>
#include <utility>

namespace swsig {

namespace {

// Floyd's uniform k-subset of {0, ..., domain-1}, returned sorted.
std::vector<std::uint64_t> sample_subset(Rng& rng, std::uint64_t domain, std::uint64_t k) {
    std::set<std::uint64_t> chosen;
    for (std::uint64_t i = domain - k; i < domain; ++i) {
        const std::uint64_t t = rng.uniform_index(i + 1);
        if (!chosen.insert(t).second) {
            chosen.insert(i);
        }
    }
    return {chosen.begin(), chosen.end()};
}

} // namespace

GeneratedInstance generate(const GenConfig& cfg) {
    if (cfg.n_stable < 1) {
        throw ConfigError("generate: need at least one stable vertex");
    }
    cfg.params.validate();
    if (cfg.dwell.min < 1 || cfg.dwell.min > cfg.dwell.max) {
        throw ConfigError("generate: dwell window must satisfy 1 <= min <= max");
    }
    const long long out_deg = phi_floor(PhiFn(cfg.phi), cfg.n_stable);
    if (out_deg > static_cast<long long>(cfg.n_stable) - 1) {
        throw ConfigError("generate: floor(phi(n_stable)) exceeds n_stable - 1");
    }

    const std::size_t n = cfg.n_stable + cfg.n_unstable;
    Rng rng(cfg.seed);

    // 1. Stable outneighbor sets, vertex-id ascending.  Stable candidates for
    //    vertex j are the stable set minus j itself; the subset index is
    //    shifted past j to skip it.
    std::vector<std::vector<VertexId>> targets(n);
    for (std::size_t j = 0; j < n; ++j) {
        const bool self_in_domain = j < cfg.n_stable;
        const std::uint64_t domain = cfg.n_stable - (self_in_domain ? 1 : 0);
        if (out_deg == 0) {
            continue;
        }
        auto picks = sample_subset(rng, domain, static_cast<std::uint64_t>(out_deg));
        targets[j].reserve(picks.size());
        for (std::uint64_t idx : picks) {
            const std::uint64_t shifted = (self_in_domain && idx >= j) ? idx + 1 : idx;
            targets[j].push_back(static_cast<VertexId>(shifted));
        }
    }

    // 2. Vertex dwell times and weight products, vertex-id ascending.
    std::vector<int> dwell(n);
    std::vector<double> weight(n);
    for (std::size_t j = 0; j < n; ++j) {
        dwell[j] = static_cast<int>(rng.uniform_int(cfg.dwell.min, cfg.dwell.max));
        const double product = cfg.params.B * rng.uniform_unit_oc(); // (0, B]
        const double magnitude = product / static_cast<double>(dwell[j]);
        weight[j] = j < cfg.n_stable ? -magnitude : magnitude;
    }

    // 3. Extra edges: uniformly random absent (from, to) pairs.
    std::set<std::pair<VertexId, VertexId>> edge_set;
    for (std::size_t j = 0; j < n; ++j) {
        for (VertexId t : targets[j]) {
            edge_set.emplace(static_cast<VertexId>(j), t);
        }
    }
    std::size_t attempts = 0;
    const std::size_t attempt_budget = 100 * (cfg.extra_edges + 1) + 10 * n;
    for (std::size_t added = 0; added < cfg.extra_edges;) {
        if (++attempts > attempt_budget) {
            throw ConfigError("generate: could not place the requested extra edges");
        }
        const auto from = static_cast<VertexId>(rng.uniform_index(n));
        const auto to = static_cast<VertexId>(rng.uniform_index(n));
        if (from == to) {
            continue;
        }
        if (edge_set.emplace(from, to).second) {
            ++added;
        }
    }

    // 4. Edge weights in lexicographic (from, to) order.
    DigraphBuilder builder(n);
    for (std::size_t j = 0; j < n; ++j) {
        if (j < cfg.n_stable) {
            builder.mark_stable(static_cast<VertexId>(j));
        } else {
            builder.mark_unstable(static_cast<VertexId>(j));
        }
        builder.vertex_weight(static_cast<VertexId>(j), weight[j]);
    }
    for (const auto& [from, to] : edge_set) {
        const double w = cfg.strict_edges ? cfg.params.A * rng.uniform_unit()
                                          : rng.uniform_real(-cfg.params.A, cfg.params.A);
        builder.add_edge(from, to, w);
    }
    builder.dwell_window(cfg.dwell.min, cfg.dwell.max);

    return GeneratedInstance{builder.build(), std::move(dwell)};
}

double CycleDraw::gamma() const {
    double acc = 0.0;
    for (std::size_t k = 0; k < products.size(); ++k) {
        const double sign = vertex_weights[k] < 0.0 ? -1.0 : 1.0;
        acc += sign * products[k];
    }
    for (double e : edge_weights) {
        acc += e;
    }
    return acc;
}

CycleDraw resample_cycle_weights(const WeightedDigraph& g, const Cycle& c,
                                 const NiceWeightParams& p, RngSeed seed) {
    validate_cycle(g, c, false);
    p.validate();
    const DwellWindow window = g.dwell_window();
    const std::size_t n = c.vertices.size();

    CycleDraw draw;
    draw.products.resize(n);
    draw.dwells.resize(n);
    draw.vertex_weights.resize(n);
    draw.edge_weights.resize(n);

    Rng rng(seed);
    for (std::size_t k = 0; k < n; ++k) {
        draw.dwells[k] = static_cast<int>(rng.uniform_int(window.min, window.max));
        draw.products[k] = p.B * rng.uniform_unit_oc();
        const double magnitude = draw.products[k] / static_cast<double>(draw.dwells[k]);
        draw.vertex_weights[k] = g.is_stable(c.vertices[k]) ? -magnitude : magnitude;
    }
    for (std::size_t k = 0; k < n; ++k) {
        draw.edge_weights[k] = rng.uniform_real(-p.A, p.A);
    }
    return draw;
}

} // namespace swsig
