#pragma once

#include <map>
#include <optional>
#include <utility>

#include "swsig/rng.hpp"
#include "swsig/system.hpp"

namespace swsig {

/// Parametric scalar gain r -> coeff * r^power (class-K shape for coeff > 0,
/// power > 0; coeff == 0 encodes the identically-zero gain).
struct PowerLaw {
    double coeff = 0.0;
    double power = 1.0;
    double operator()(double r) const;
};

using StateFn = std::function<double(const Vec&)>;

/// V(x) = coeff * ||x||^power, the radial family used by the built-in
/// certificates.  User-supplied V's may be arbitrary StateFn's.
StateFn power_norm(double coeff, double power);

/// Certificate data for a switched system: per-subsystem storage function V_i
/// with decay/growth rate lambda_i, per-edge jump factor mu_ij >= 1, and the
/// gain and sandwich descriptors.  The functional forms of the gains are a
/// modelling choice; nothing in the checks depends on them beyond evaluation.
struct LyapunovCertificate {
    std::vector<StateFn> V;
    std::vector<double> lambda;
    std::map<std::pair<VertexId, VertexId>, double> mu;
    PowerLaw gamma_input;            // gain on ||v||
    PowerLaw gamma_output;           // gain on ||h(x)||
    PowerLaw alpha_lower{1.0, 2.0};  // lower sandwich on V
    PowerLaw alpha_upper{1.0, 2.0};  // upper sandwich on V
};

/// Size and range checks: one V/lambda per subsystem, 0 < lambda < 1 for
/// stable-tagged subsystems and lambda > 1 for unstable ones, mu >= 1, and
/// mu covering every edge of g when a graph is supplied.
void validate_certificate(const SwitchedSystem& sys, const LyapunovCertificate& cert,
                          const WeightedDigraph* g = nullptr);

/// The weighted digraph induced by a certificate: vertex weights
/// -|ln lambda_i| (stable) / +|ln lambda_i| (unstable), edge weights
/// ln mu_ij for every pair in cert.mu.
WeightedDigraph certificate_graph(const SwitchedSystem& sys, const LyapunovCertificate& cert,
                                  DwellWindow window);

double euclidean_norm(const Vec& x);

/// Sampling report for the three certificate inequalities:
///   sandwich:  alpha_lower(||xi||) <= V_i(xi) <= alpha_upper(||xi||)
///   decay:     V_i(f_i(xi, eta)) <= lambda_i V_i(xi) + gamma_in(||eta||)
///                                   + gamma_out(||h_i(xi)||)
///   jump:      V_j(xi) <= mu_ij V_i(xi)           for every edge (i, j)
///
/// Margins are rhs - lhs (negative means violated).  A violation is flagged
/// when lhs > rhs + 1e-9 * max(1, |rhs|), so exact-equality certificates do
/// not trip on rounding.
struct CertificateReport {
    struct Counterexample {
        std::size_t sample_index = 0;
        std::size_t subsystem = 0; // for jump violations, the edge source
        VertexId edge_to = 0;      // only meaningful for jump violations
        Vec xi;
        Vec eta;
        double lhs = 0.0;
        double rhs = 0.0;
    };

    std::size_t samples = 0;
    std::size_t sandwich_violations = 0;
    std::size_t decay_violations = 0;
    std::size_t jump_violations = 0;
    double worst_sandwich_margin = 0.0;
    double worst_decay_margin = 0.0;
    double worst_jump_margin = 0.0;
    std::optional<Counterexample> first_violation;

    bool ok() const {
        return sandwich_violations == 0 && decay_violations == 0 && jump_violations == 0;
    }
};

/// Draws n_samples pairs (xi, eta) uniformly from the balls of the given
/// radius and checks the three inequalities pointwise per subsystem and per
/// edge of g.  Reproducible from the seed.
CertificateReport check_certificate(const SwitchedSystem& sys, const LyapunovCertificate& cert,
                                    const WeightedDigraph& g, std::size_t n_samples, RngSeed seed,
                                    double radius);

/// One-period contraction factor of the storage function along a cycle.
struct PeriodContractionReport {
    bool degenerate = false; // x0 == 0, ratio undefined
    double v_initial = 0.0;
    double v_final = 0.0;
    double ratio = 0.0;            // V_{v0}(x(period)) / V_{v0}(x(0))
    double expected_exp_gamma = 0.0; // exp(gamma(g, c))
};

/// Simulates one period of the signal synthesized from c (zero input) and
/// reports the V-ratio at the cycle's first vertex.  For scalar linear
/// subsystems with exact certificates the ratio equals exp(gamma(g, c)).
PeriodContractionReport verify_period_contraction(const SwitchedSystem& sys,
                                                  const LyapunovCertificate& cert,
                                                  const WeightedDigraph& g, const Cycle& c,
                                                  const Vec& x0);

/// True iff, under zero input, ||x(T)|| <= eps * ||x0|| and the state norm
/// contracts over every complete signal period within [0, T].  x0 == 0 is a
/// fixed point and returns true.
bool check_gas_decay(const SwitchedSystem& sys, const SwitchingSignal& sig, const Vec& x0,
                     std::int64_t T, double eps);

/// Boundedness of the state under a bounded input, decomposed into a decay
/// coefficient (zero-input response) and an input gain (zero-state
/// response).  The coefficients are measured, not asserted: `bounded` only
/// records whether the full run stayed under the affine combination, which
/// is exact for the linear families by superposition.
struct BoundednessReport {
    double initial_norm = 0.0;
    double input_sup_norm = 0.0;
    double state_sup_norm = 0.0;   // full run: x0 and input together
    double decay_coefficient = 0.0; // sup ||x_free|| / ||x0||
    double input_gain = 0.0;        // sup ||x_forced|| / sup ||v||
    double affine_bound = 0.0;
    bool bounded = false;
};

BoundednessReport input_boundedness(const SwitchedSystem& sys, const SwitchingSignal& sig,
                                    const Vec& x0, const InputFn& input, std::int64_t T);

/// Reads the "certificate" block of a system JSON file:
///
///   "certificate": {
///     "V": [{"coeff": 1.0, "power": 2.0}, ...],
///     "lambda": [0.25, 0.36],
///     "mu": [{"from": 0, "to": 1, "value": 1.0}, ...],
///     "gamma_input": {"coeff": 2.0, "power": 2.0},
///     "gamma_output": {"coeff": 0.0, "power": 1.0},
///     "alpha_lower": {"coeff": 1.0, "power": 2.0},
///     "alpha_upper": {"coeff": 1.0, "power": 2.0}
///   }
LyapunovCertificate load_certificate(const std::filesystem::path& path);
LyapunovCertificate parse_certificate(const std::string& text,
                                      const std::string& origin = "<string>");

} // namespace swsig
