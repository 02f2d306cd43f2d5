#include "doctest.h"

#include <cmath>

#include "swsig/certificate.hpp"
#include "swsig/rng.hpp"

using namespace swsig;

namespace {

// Single subsystem x' = 0.5x + v with V(x) = x^2.  The decay inequality
// (0.5x + v)^2 <= 0.5 x^2 + 2 v^2 holds for all (x, v), with equality on
// the line x = 2v.
SwitchedSystem certified_system() {
    SwitchedSystem sys;
    sys.subsystems = {scalar_linear(0.5, 1.0, 0.0)};
    sys.state_dim = sys.input_dim = 1;
    return sys;
}

LyapunovCertificate certified_certificate() {
    LyapunovCertificate cert;
    cert.V = {power_norm(1.0, 2.0)};
    cert.lambda = {0.5};
    cert.gamma_input = {2.0, 2.0};
    cert.alpha_lower = {1.0, 2.0};
    cert.alpha_upper = {1.0, 2.0};
    return cert;
}

WeightedDigraph trivial_graph() {
    DigraphBuilder b(1);
    b.mark_stable(0).vertex_weight(0, std::log(0.5)).dwell_window(1, 4);
    return b.build();
}

// The two-rate pair used throughout: x' = 0.5x and x' = 0.6x with exact
// quadratic certificates lambda = (0.25, 0.36) and unit jump factors.
struct TwoRatePair {
    SwitchedSystem sys;
    LyapunovCertificate cert;
    WeightedDigraph graph;
};

TwoRatePair make_pair_for(double a0, double a1, DwellWindow window) {
    SwitchedSystem sys;
    sys.subsystems = {scalar_linear(a0, 1.0, 0.0), scalar_linear(a1, 1.0, 0.0)};
    sys.state_dim = sys.input_dim = 1;
    LyapunovCertificate cert;
    cert.V = {power_norm(1.0, 2.0), power_norm(1.0, 2.0)};
    cert.lambda = {a0 * a0, a1 * a1};
    cert.mu[{0, 1}] = 1.0;
    cert.mu[{1, 0}] = 1.0;
    auto graph = certificate_graph(sys, cert, window);
    return TwoRatePair{std::move(sys), std::move(cert), std::move(graph)};
}

TwoRatePair two_rate_pair(DwellWindow window = {1, 4}) {
    return make_pair_for(0.5, 0.6, window);
}

} // namespace

TEST_CASE("certified example passes a large sample sweep") {
    const auto report =
        check_certificate(certified_system(), certified_certificate(), trivial_graph(),
                          20000, 71, 1000.0);
    CHECK(report.ok());
    CHECK(report.samples == 20000);
    CHECK(report.worst_decay_margin >= 0.0);
    CHECK(report.worst_sandwich_margin == 0.0); // sandwich is tight by construction
}

TEST_CASE("falsified rate is caught within a few samples") {
    auto cert = certified_certificate();
    cert.lambda = {0.2};
    cert.gamma_input = {0.0, 1.0};
    const auto report =
        check_certificate(certified_system(), cert, trivial_graph(), 100, 71, 1000.0);
    CHECK_FALSE(report.ok());
    CHECK(report.decay_violations > 0);
    REQUIRE(report.first_violation.has_value());
    CHECK(report.first_violation->sample_index < 100);
    CHECK(report.first_violation->lhs > report.first_violation->rhs);
}

TEST_CASE("identical storage functions with unit jumps hold with equality") {
    const auto p = two_rate_pair();
    const auto report = check_certificate(p.sys, p.cert, p.graph, 5000, 13, 10.0);
    CHECK(report.jump_violations == 0);
    CHECK(report.worst_jump_margin == 0.0); // V_j == V_i and mu == 1
}

TEST_CASE("certificate validation rejects inconsistent data") {
    auto p = two_rate_pair();

    auto lam = p.cert;
    lam.lambda = {1.0, 0.36}; // stable subsystem needs lambda < 1
    CHECK_THROWS_AS(validate_certificate(p.sys, lam), ConfigError);

    auto mu = p.cert;
    mu.mu[{0, 1}] = 0.5; // jump factors are >= 1
    CHECK_THROWS_AS(validate_certificate(p.sys, mu), ConfigError);

    auto missing = p.cert;
    missing.mu.erase({1, 0});
    CHECK_THROWS_AS(validate_certificate(p.sys, missing, &p.graph), ConfigError);

    auto size = p.cert;
    size.V.pop_back();
    CHECK_THROWS_AS(validate_certificate(p.sys, size), ConfigError);
}

TEST_CASE("certificate graph carries log rates and log jumps") {
    const auto p = two_rate_pair({2, 4});
    CHECK(p.graph.vertex_weight(0) == doctest::Approx(std::log(0.25)).epsilon(1e-15));
    CHECK(p.graph.vertex_weight(1) == doctest::Approx(std::log(0.36)).epsilon(1e-15));
    CHECK(p.graph.edge_weight(0, 1) == 0.0);
    CHECK(p.graph.is_stable(0));
    CHECK(p.graph.dwell_window().max == 4);

    SwitchedSystem with_unstable;
    with_unstable.subsystems = {scalar_linear(0.5), scalar_linear(2.0, 1.0, 0.0, false)};
    with_unstable.state_dim = with_unstable.input_dim = 1;
    LyapunovCertificate cert;
    cert.V = {power_norm(1.0, 2.0), power_norm(1.0, 2.0)};
    cert.lambda = {0.25, 4.0};
    cert.mu[{0, 1}] = 2.0;
    const auto g = certificate_graph(with_unstable, cert, {1, 2});
    CHECK(g.vertex_weight(1) == doctest::Approx(std::log(4.0)).epsilon(1e-15));
    CHECK(g.vertex_weight(1) > 0.0);
    CHECK(g.edge_weight(0, 1) == doctest::Approx(std::log(2.0)).epsilon(1e-15));
}

TEST_CASE("one-period contraction matches the closed form") {
    const auto p = two_rate_pair();

    SUBCASE("unit dwell") {
        const Cycle c{{0, 1}, {1, 1}};
        const auto report = verify_period_contraction(p.sys, p.cert, p.graph, c, {1.0});
        CHECK_FALSE(report.degenerate);
        CHECK(report.ratio == doctest::Approx(0.09).epsilon(1e-9));
        CHECK(report.expected_exp_gamma == doctest::Approx(0.09).epsilon(1e-9));
        CHECK(report.ratio ==
              doctest::Approx(report.expected_exp_gamma).epsilon(1e-9));
    }
    SUBCASE("dwell 2 squares the factor") {
        const Cycle c{{0, 1}, {2, 2}};
        const auto report = verify_period_contraction(p.sys, p.cert, p.graph, c, {1.0});
        CHECK(report.ratio == doctest::Approx(0.0081).epsilon(1e-9));
        CHECK(report.ratio ==
              doctest::Approx(report.expected_exp_gamma).epsilon(1e-9));
    }
    SUBCASE("zero start is degenerate") {
        const Cycle c{{0, 1}, {1, 1}};
        const auto report = verify_period_contraction(p.sys, p.cert, p.graph, c, {0.0});
        CHECK(report.degenerate);
    }
}

TEST_CASE("contraction ratio equals exp(gamma) across random rate pairs") {
    Rng rng(555);
    for (int round = 0; round < 25; ++round) {
        const double a0 = rng.uniform_real(0.05, 0.95);
        const double a1 = rng.uniform_real(0.05, 0.95);
        const TwoRatePair p = make_pair_for(a0, a1, {1, 4});

        Cycle c{{0, 1}, {static_cast<int>(rng.uniform_int(1, 4)),
                         static_cast<int>(rng.uniform_int(1, 4))}};
        const auto report =
            verify_period_contraction(p.sys, p.cert, p.graph, c, {rng.uniform_real(0.5, 2.0)});
        CHECK(report.ratio == doctest::Approx(report.expected_exp_gamma).epsilon(1e-9));
        CHECK(report.ratio < 1.0); // both rates contract, so every cycle does
    }
}

TEST_CASE("decay check over ten periods") {
    const auto p = two_rate_pair();

    SUBCASE("contractive cycle decays below the threshold") {
        const auto sig = synthesize(Cycle{{0, 1}, {2, 2}}, p.graph.dwell_window());
        // Per period the state shrinks by 0.25 * 0.36 = 0.09; ten periods
        // reach 0.09^10 ~ 3.5e-11.
        CHECK(check_gas_decay(p.sys, sig, {1.0}, 10 * sig.period(), 1e-6));
    }
    SUBCASE("expansion beats contraction") {
        SwitchedSystem sys;
        sys.subsystems = {scalar_linear(1.5, 1.0, 0.0, false), scalar_linear(0.9)};
        sys.state_dim = sys.input_dim = 1;
        const SwitchingSignal sig(Cycle{{0, 1}, {1, 1}});
        // Period factor 1.5 * 0.9 = 1.35 > 1.
        CHECK_FALSE(check_gas_decay(sys, sig, {1.0}, 10 * sig.period(), 1e-6));
    }
    SUBCASE("the origin is already converged") {
        const auto sig = synthesize(Cycle{{0, 1}, {1, 1}}, p.graph.dwell_window());
        CHECK(check_gas_decay(p.sys, sig, {0.0}, 4, 1e-6));
    }
}

TEST_CASE("contractive cycles drive geometric state decay") {
    const auto p = two_rate_pair();
    const Cycle c{{0, 1}, {1, 1}};
    REQUIRE(gamma(p.graph, c) < 0.0);
    const auto sig = synthesize(c, p.graph.dwell_window());
    const auto traj = simulate(p.sys, sig, {1.0}, zero_input(1), 10 * sig.period());
    double prev = euclidean_norm(traj.states[0]);
    for (int k = 1; k <= 10; ++k) {
        const double cur =
            euclidean_norm(traj.states[static_cast<std::size_t>(k * sig.period())]);
        CHECK(cur < prev);
        CHECK(cur == doctest::Approx(prev * 0.3).epsilon(1e-9)); // |x| factor per period
        prev = cur;
    }
}

TEST_CASE("certified example also survives a very large radius") {
    const auto report =
        check_certificate(certified_system(), certified_certificate(), trivial_graph(),
                          20000, 3001, 1e6);
    CHECK(report.ok());
}

TEST_CASE("bounded inputs keep the state under the measured affine bound") {
    const auto p = two_rate_pair();
    const auto sig = synthesize(Cycle{{0, 1}, {1, 1}}, p.graph.dwell_window());

    SUBCASE("constant input converges to a bounded regime") {
        const auto report = input_boundedness(p.sys, sig, {4.0}, constant_input({1.0}), 200);
        CHECK(report.bounded);
        CHECK(report.input_sup_norm == 1.0);
        CHECK(report.state_sup_norm <= report.affine_bound * (1.0 + 1e-9) + 1e-12);
        CHECK(report.decay_coefficient == 1.0); // contractive free run peaks at t = 0
        CHECK(report.input_gain > 0.0);
        CHECK(report.input_gain < 10.0);
    }
    SUBCASE("zero everything is trivially bounded") {
        const auto report = input_boundedness(p.sys, sig, {0.0}, zero_input(1), 50);
        CHECK(report.bounded);
        CHECK(report.state_sup_norm == 0.0);
    }
}

TEST_CASE("certificate block parses from system JSON") {
    const char* text = R"({
        "state_dim": 1, "input_dim": 1,
        "subsystems": [{"type": "scalar_linear", "a": 0.5}],
        "certificate": {
            "V": [{"coeff": 1.0, "power": 2.0}],
            "lambda": [0.5],
            "gamma_input": {"coeff": 2.0, "power": 2.0},
            "alpha_lower": {"coeff": 1.0, "power": 2.0},
            "alpha_upper": {"coeff": 1.0, "power": 2.0}
        }
    })";
    const auto cert = parse_certificate(text);
    REQUIRE(cert.V.size() == 1);
    CHECK(cert.lambda[0] == 0.5);
    CHECK(cert.V[0]({3.0}) == 9.0);
    CHECK(cert.gamma_input(2.0) == 8.0);

    CHECK_THROWS_AS(parse_certificate(R"({"state_dim": 1})"), ConfigError);
}
