#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <set>

#include "swsig/cycle_detect.hpp"
#include "swsig/graph_io.hpp"
#include "swsig/instance_gen.hpp"
#include "support/cycle_oracle.hpp"

using namespace swsig;
using namespace swsig::testing;

namespace {

GenConfig reference_config() {
    GenConfig cfg;
    cfg.n_stable = 1000;
    cfg.n_unstable = 0;
    cfg.phi.coeff = 0.1;
    cfg.params = {2, 0.0, 2.5, 2.5, 5.0};
    cfg.dwell = {2, 4};
    cfg.seed = 12345;
    return cfg;
}

std::size_t stable_outdegree(const WeightedDigraph& g, VertexId v) {
    std::size_t d = 0;
    for (const OutEdge& e : g.out_edges(v)) {
        if (g.is_stable(e.to)) {
            ++d;
        }
    }
    return d;
}

} // namespace

TEST_CASE("reference configuration: outdegree exactly 3 into the stable set") {
    const auto cfg = reference_config();
    const auto inst = generate(cfg);
    const auto& g = inst.graph;
    REQUIRE(g.num_vertices() == 1000);
    for (VertexId v = 0; v < g.num_vertices(); ++v) {
        CHECK(stable_outdegree(g, v) == 3);
    }
    CHECK(g.num_edges() == 3000);
    CHECK(phi_floor(PhiFn(cfg.phi), 1000) == 3);
    CHECK(is_nicely_connected(g, PhiFn(cfg.phi)));
}

TEST_CASE("two stable vertices with floor 1: the only candidate is the other one") {
    GenConfig cfg;
    cfg.n_stable = 2;
    cfg.phi.coeff = 0.8; // floor(0.8 * sqrt(2)) = 1
    cfg.params = {1, 0.0, 2.5, 2.5, 5.0};
    cfg.dwell = {1, 2};
    cfg.seed = 3;
    const auto inst = generate(cfg);
    CHECK(inst.graph.has_edge(0, 1));
    CHECK(inst.graph.has_edge(1, 0));
    CHECK(inst.graph.num_edges() == 2);
}

TEST_CASE("generated instances satisfy connectivity and weight bounds by construction") {
    for (std::uint64_t round = 0; round < 8; ++round) {
        GenConfig cfg;
        cfg.n_stable = 25 + 40 * round;
        cfg.n_unstable = round % 4;
        cfg.phi.coeff = 0.3 + 0.05 * static_cast<double>(round);
        cfg.params = {2, 0.0, 2.5, 2.5, 5.0};
        cfg.dwell = {2, 4};
        cfg.seed = 777 + round;
        const auto inst = generate(cfg);

        CHECK(is_nicely_connected(inst.graph, PhiFn(cfg.phi)));
        CHECK(check_nice_weight_bounds(inst.graph, cfg.params, inst.dwell).ok());

        for (VertexId v = 0; v < inst.graph.num_vertices(); ++v) {
            CHECK(inst.dwell[v] >= cfg.dwell.min);
            CHECK(inst.dwell[v] <= cfg.dwell.max);
            const double w = inst.graph.vertex_weight(v);
            CHECK((inst.graph.is_stable(v) ? w < 0.0 : w > 0.0));
            for (const OutEdge& e : inst.graph.out_edges(v)) {
                CHECK(e.weight >= -cfg.params.A);
                CHECK(e.weight <= cfg.params.A);
            }
        }
    }
}

TEST_CASE("sampled products and edge weights have the configured means") {
    GenConfig cfg;
    cfg.n_stable = 100000;
    cfg.phi.coeff = 0.004; // floor(0.004 * sqrt(1e5)) = 1, keeps the edge count small
    cfg.params = {2, 0.0, 2.5, 2.5, 5.0};
    cfg.dwell = {2, 4};
    cfg.seed = 2718281828ull;
    const auto inst = generate(cfg);
    REQUIRE(inst.graph.num_edges() == 100000);

    double product_sum = 0.0;
    for (VertexId v = 0; v < inst.graph.num_vertices(); ++v) {
        product_sum += std::abs(inst.graph.vertex_weight(v)) * inst.dwell[v];
    }
    const double product_mean = product_sum / 1e5;
    CHECK(product_mean > 2.45); // uniform (0, B] has mean B/2 = 2.5
    CHECK(product_mean < 2.55);

    double edge_sum = 0.0;
    for (VertexId v = 0; v < inst.graph.num_vertices(); ++v) {
        for (const OutEdge& e : inst.graph.out_edges(v)) {
            edge_sum += e.weight;
        }
    }
    const double edge_mean = edge_sum / 1e5;
    // 3 standard errors of a 1e5-sample mean of uniform [-A, A].
    const double slack = 3.0 * (2.0 * cfg.params.A / std::sqrt(12.0)) / std::sqrt(1e5);
    CHECK(std::abs(edge_mean) < slack);
}

TEST_CASE("same seed, same instance; different seed, different instance") {
    GenConfig cfg = reference_config();
    cfg.n_stable = 120;
    cfg.phi.coeff = 0.4;
    const auto a = generate(cfg);
    const auto b = generate(cfg);
    CHECK(graph_to_json(a.graph) == graph_to_json(b.graph));
    CHECK(a.dwell == b.dwell);

    cfg.seed += 1;
    const auto c = generate(cfg);
    CHECK(graph_to_json(c.graph) != graph_to_json(a.graph));
}

TEST_CASE("strict edge mode keeps log jump factors nonnegative") {
    GenConfig cfg = reference_config();
    cfg.n_stable = 80;
    cfg.phi.coeff = 0.4;
    cfg.strict_edges = true;
    const auto inst = generate(cfg);
    for (VertexId v = 0; v < inst.graph.num_vertices(); ++v) {
        for (const OutEdge& e : inst.graph.out_edges(v)) {
            CHECK(e.weight >= 0.0);
            CHECK(e.weight <= cfg.params.A);
        }
    }
}

TEST_CASE("extra edges land on top of the regular outdegree") {
    GenConfig cfg = reference_config();
    cfg.n_stable = 50;
    cfg.phi.coeff = 0.3; // floor = 2
    cfg.extra_edges = 25;
    const auto inst = generate(cfg);
    CHECK(inst.graph.num_edges() == 50 * 2 + 25);
}

TEST_CASE("invalid configurations are rejected") {
    GenConfig cfg = reference_config();
    cfg.n_stable = 4;
    cfg.phi.coeff = 2.0; // floor(2 * 2) = 4 > n_stable - 1
    CHECK_THROWS_AS(generate(cfg), ConfigError);

    cfg = reference_config();
    cfg.n_stable = 0;
    CHECK_THROWS_AS(generate(cfg), ConfigError);

    cfg = reference_config();
    cfg.dwell = {0, 4};
    CHECK_THROWS_AS(generate(cfg), ConfigError);
}

TEST_CASE("cycle weight resampling") {
    const auto g = complete_stable_graph(6, -1.0, 0.0, {2, 4});
    const Cycle cycle{{0, 2, 4, 5, 1}, {}};
    const NiceWeightParams params{2, 0.0, 2.5, 2.5, 5.0};

    SUBCASE("fixed seed reproduces the draw") {
        const auto a = resample_cycle_weights(g, cycle, params, 99);
        const auto b = resample_cycle_weights(g, cycle, params, 99);
        CHECK(a.products == b.products);
        CHECK(a.dwells == b.dwells);
        CHECK(a.edge_weights == b.edge_weights);
    }

    SUBCASE("draws stay inside the declared intervals and vary across seeds") {
        std::set<std::vector<double>> seen;
        for (RngSeed seed = 0; seed < 1000; ++seed) {
            const auto draw = resample_cycle_weights(g, cycle, params, seed);
            REQUIRE(draw.products.size() == 5);
            for (std::size_t k = 0; k < 5; ++k) {
                CHECK(draw.products[k] > 0.0);
                CHECK(draw.products[k] <= params.B);
                CHECK(draw.dwells[k] >= 2);
                CHECK(draw.dwells[k] <= 4);
                CHECK(draw.edge_weights[k] >= -params.A);
                CHECK(draw.edge_weights[k] <= params.A);
                CHECK(draw.vertex_weights[k] < 0.0); // all cycle vertices stable
            }
            seen.insert(draw.products);
        }
        CHECK(seen.size() == 1000); // continuous draws collide with probability ~0
    }

    SUBCASE("draw gamma equals the signed product/edge accumulation") {
        const auto draw = resample_cycle_weights(g, cycle, params, 4242);
        double expected = 0.0;
        for (double s : draw.products) {
            expected -= s;
        }
        for (double e : draw.edge_weights) {
            expected += e;
        }
        CHECK(draw.gamma() == expected);
    }

    SUBCASE("invalid cycle is rejected") {
        CHECK_THROWS_AS(resample_cycle_weights(g, Cycle{{0, 0}, {}}, params, 1),
                        InvalidCycleError);
    }
}
