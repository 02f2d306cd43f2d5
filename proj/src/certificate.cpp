#include "swsig/certificate.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "json.hpp"

namespace swsig {

using nlohmann::json;

double PowerLaw::operator()(double r) const {
    if (coeff == 0.0) {
        return 0.0;
    }
    return coeff * std::pow(r, power);
}

StateFn power_norm(double coeff, double power) {
    return [coeff, power](const Vec& x) { return coeff * std::pow(euclidean_norm(x), power); };
}

double euclidean_norm(const Vec& x) {
    double acc = 0.0;
    for (double c : x) {
        acc += c * c;
    }
    return std::sqrt(acc);
}

void validate_certificate(const SwitchedSystem& sys, const LyapunovCertificate& cert,
                          const WeightedDigraph* g) {
    const std::size_t n = sys.subsystems.size();
    if (cert.V.size() != n || cert.lambda.size() != n) {
        throw ConfigError("certificate must provide one V and one lambda per subsystem");
    }
    for (std::size_t i = 0; i < n; ++i) {
        const double l = cert.lambda[i];
        if (sys.subsystems[i].stable) {
            if (!(l > 0.0 && l < 1.0)) {
                throw ConfigError("stable subsystem " + std::to_string(i) +
                                  " needs 0 < lambda < 1, got " + std::to_string(l));
            }
        } else if (!(l > 1.0)) {
            throw ConfigError("unstable subsystem " + std::to_string(i) +
                              " needs lambda > 1, got " + std::to_string(l));
        }
    }
    for (const auto& [edge, mu] : cert.mu) {
        if (!(mu >= 1.0)) {
            throw ConfigError("jump factor on (" + std::to_string(edge.first) + ", " +
                              std::to_string(edge.second) + ") must be >= 1");
        }
    }
    if (g != nullptr) {
        if (g->num_vertices() != n) {
            throw ConfigError("graph order does not match the number of subsystems");
        }
        for (VertexId v = 0; v < g->num_vertices(); ++v) {
            for (const OutEdge& e : g->out_edges(v)) {
                if (!cert.mu.contains({v, e.to})) {
                    throw ConfigError("certificate has no jump factor for edge (" +
                                      std::to_string(v) + ", " + std::to_string(e.to) + ")");
                }
            }
        }
    }
}

WeightedDigraph certificate_graph(const SwitchedSystem& sys, const LyapunovCertificate& cert,
                                  DwellWindow window) {
    validate_certificate(sys, cert);
    DigraphBuilder builder(sys.subsystems.size());
    for (std::size_t i = 0; i < sys.subsystems.size(); ++i) {
        const auto v = static_cast<VertexId>(i);
        const double magnitude = std::abs(std::log(cert.lambda[i]));
        if (sys.subsystems[i].stable) {
            builder.mark_stable(v).vertex_weight(v, -magnitude);
        } else {
            builder.mark_unstable(v).vertex_weight(v, magnitude);
        }
    }
    for (const auto& [edge, mu] : cert.mu) {
        builder.add_edge(edge.first, edge.second, std::log(mu));
    }
    builder.dwell_window(window.min, window.max);
    return builder.build();
}

namespace {

Vec sample_ball(Rng& rng, std::size_t dim, double radius) {
    Vec x(dim, 0.0);
    if (dim == 0) {
        return x;
    }
    double norm_sq = 0.0;
    for (std::size_t i = 0; i < dim; ++i) {
        x[i] = rng.gaussian();
        norm_sq += x[i] * x[i];
    }
    const double norm = std::sqrt(norm_sq);
    const double r = radius * std::pow(rng.uniform_unit(), 1.0 / static_cast<double>(dim));
    const double scale = norm > 0.0 ? r / norm : 0.0;
    for (double& c : x) {
        c *= scale;
    }
    return x;
}

bool violated(double lhs, double rhs) {
    return lhs > rhs + 1e-9 * std::max(1.0, std::abs(rhs));
}

} // namespace

CertificateReport check_certificate(const SwitchedSystem& sys, const LyapunovCertificate& cert,
                                    const WeightedDigraph& g, std::size_t n_samples, RngSeed seed,
                                    double radius) {
    validate_certificate(sys, cert, &g);
    if (n_samples == 0 || !(radius > 0.0)) {
        throw ConfigError("check_certificate: need n_samples >= 1 and radius > 0");
    }

    CertificateReport report;
    report.samples = n_samples;
    report.worst_sandwich_margin = std::numeric_limits<double>::infinity();
    report.worst_decay_margin = std::numeric_limits<double>::infinity();
    report.worst_jump_margin = std::numeric_limits<double>::infinity();

    Rng rng(seed);
    const std::size_t n = sys.subsystems.size();
    for (std::size_t s = 0; s < n_samples; ++s) {
        const Vec xi = sample_ball(rng, sys.state_dim, radius);
        const Vec eta = sample_ball(rng, sys.input_dim, radius);
        const double xi_norm = euclidean_norm(xi);

        for (std::size_t i = 0; i < n; ++i) {
            const double v_xi = cert.V[i](xi);

            const double lower = cert.alpha_lower(xi_norm);
            const double upper = cert.alpha_upper(xi_norm);
            report.worst_sandwich_margin =
                std::min({report.worst_sandwich_margin, v_xi - lower, upper - v_xi});
            if (violated(lower, v_xi) || violated(v_xi, upper)) {
                ++report.sandwich_violations;
                if (!report.first_violation) {
                    report.first_violation = {s, i, 0, xi, eta,
                                              violated(lower, v_xi) ? lower : v_xi,
                                              violated(lower, v_xi) ? v_xi : upper};
                }
            }

            const double v_next = cert.V[i](sys.subsystems[i].update(xi, eta));
            const double budget = cert.lambda[i] * v_xi +
                                  cert.gamma_input(euclidean_norm(eta)) +
                                  cert.gamma_output(euclidean_norm(sys.subsystems[i].output(xi)));
            report.worst_decay_margin = std::min(report.worst_decay_margin, budget - v_next);
            if (violated(v_next, budget)) {
                ++report.decay_violations;
                if (!report.first_violation) {
                    report.first_violation = {s, i, 0, xi, eta, v_next, budget};
                }
            }
        }

        for (const auto& [edge, mu] : cert.mu) {
            const double lhs = cert.V[edge.second](xi);
            const double rhs = mu * cert.V[edge.first](xi);
            report.worst_jump_margin = std::min(report.worst_jump_margin, rhs - lhs);
            if (violated(lhs, rhs)) {
                ++report.jump_violations;
                if (!report.first_violation) {
                    report.first_violation = {s, edge.first, edge.second, xi, eta, lhs, rhs};
                }
            }
        }
    }
    return report;
}

PeriodContractionReport verify_period_contraction(const SwitchedSystem& sys,
                                                  const LyapunovCertificate& cert,
                                                  const WeightedDigraph& g, const Cycle& c,
                                                  const Vec& x0) {
    validate_certificate(sys, cert, &g);
    PeriodContractionReport report;
    report.expected_exp_gamma = std::exp(gamma(g, c));

    bool zero = true;
    for (double v : x0) {
        if (v != 0.0) {
            zero = false;
            break;
        }
    }
    if (zero) {
        report.degenerate = true;
        return report;
    }

    const SwitchingSignal sig = synthesize(c, g.dwell_window());
    const Trajectory traj = simulate(sys, sig, x0, zero_input(sys.input_dim), sig.period());
    const StateFn& v0 = cert.V[c.vertices.front()];
    report.v_initial = v0(traj.states.front());
    report.v_final = v0(traj.states.back());
    report.ratio = report.v_final / report.v_initial;
    return report;
}

bool check_gas_decay(const SwitchedSystem& sys, const SwitchingSignal& sig, const Vec& x0,
                     std::int64_t T, double eps) {
    const double initial_norm = euclidean_norm(x0);
    if (initial_norm == 0.0) {
        return true; // equilibrium
    }
    const Trajectory traj = simulate(sys, sig, x0, zero_input(sys.input_dim), T);

    // Contraction across every complete period inside the horizon.  Once the
    // state hits exactly zero it stays there (the origin is a fixed point).
    const std::int64_t period = sig.period();
    for (std::int64_t start = 0; start + period <= T; start += period) {
        const double before = euclidean_norm(traj.states[static_cast<std::size_t>(start)]);
        const double after =
            euclidean_norm(traj.states[static_cast<std::size_t>(start + period)]);
        if (before == 0.0) {
            break;
        }
        if (!(after < before)) {
            return false;
        }
    }
    return euclidean_norm(traj.states.back()) <= eps * initial_norm;
}

BoundednessReport input_boundedness(const SwitchedSystem& sys, const SwitchingSignal& sig,
                                    const Vec& x0, const InputFn& input, std::int64_t T) {
    auto sup_norm = [](const std::vector<Vec>& states) {
        double sup = 0.0;
        for (const Vec& x : states) {
            sup = std::max(sup, euclidean_norm(x));
        }
        return sup;
    };

    BoundednessReport report;
    report.initial_norm = euclidean_norm(x0);

    const Trajectory full = simulate(sys, sig, x0, input, T);
    report.state_sup_norm = sup_norm(full.states);
    for (const Vec& v : full.inputs) {
        report.input_sup_norm = std::max(report.input_sup_norm, euclidean_norm(v));
    }

    if (report.initial_norm > 0.0) {
        const Trajectory free_run = simulate(sys, sig, x0, zero_input(sys.input_dim), T);
        report.decay_coefficient = sup_norm(free_run.states) / report.initial_norm;
    }
    if (report.input_sup_norm > 0.0) {
        const Trajectory forced = simulate(sys, sig, Vec(sys.state_dim, 0.0), input, T);
        report.input_gain = sup_norm(forced.states) / report.input_sup_norm;
    }

    report.affine_bound = report.decay_coefficient * report.initial_norm +
                          report.input_gain * report.input_sup_norm;
    report.bounded =
        report.state_sup_norm <= report.affine_bound * (1.0 + 1e-9) + 1e-12;
    return report;
}

namespace {

PowerLaw parse_power_law(const json& j, const std::string& origin, const char* key) {
    if (!j.is_object() || !j.contains("coeff") || !j.contains("power")) {
        throw ConfigError(origin + ": '" + key + "' needs 'coeff' and 'power'");
    }
    return PowerLaw{j["coeff"].get<double>(), j["power"].get<double>()};
}

} // namespace

LyapunovCertificate parse_certificate(const std::string& text, const std::string& origin) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw IoError(origin + ": " + e.what());
    }
    if (!doc.contains("certificate")) {
        throw ConfigError(origin + ": no 'certificate' block");
    }
    const json& c = doc["certificate"];

    LyapunovCertificate cert;
    if (!c.contains("V") || !c["V"].is_array() || !c.contains("lambda") ||
        !c["lambda"].is_array()) {
        throw ConfigError(origin + ": certificate needs 'V' and 'lambda' arrays");
    }
    for (const json& v : c["V"]) {
        const PowerLaw p = parse_power_law(v, origin, "V");
        cert.V.push_back(power_norm(p.coeff, p.power));
    }
    for (const json& l : c["lambda"]) {
        cert.lambda.push_back(l.get<double>());
    }
    if (c.contains("mu")) {
        for (const json& m : c["mu"]) {
            cert.mu[{m["from"].get<VertexId>(), m["to"].get<VertexId>()}] =
                m["value"].get<double>();
        }
    }
    if (c.contains("gamma_input")) {
        cert.gamma_input = parse_power_law(c["gamma_input"], origin, "gamma_input");
    }
    if (c.contains("gamma_output")) {
        cert.gamma_output = parse_power_law(c["gamma_output"], origin, "gamma_output");
    }
    if (c.contains("alpha_lower")) {
        cert.alpha_lower = parse_power_law(c["alpha_lower"], origin, "alpha_lower");
    }
    if (c.contains("alpha_upper")) {
        cert.alpha_upper = parse_power_law(c["alpha_upper"], origin, "alpha_upper");
    }
    return cert;
}

LyapunovCertificate load_certificate(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open " + path.string());
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_certificate(buf.str(), path.string());
}

} // namespace swsig
