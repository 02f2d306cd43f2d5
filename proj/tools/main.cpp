// swsig: construct stabilizing periodic switching signals for discrete-time
// switched systems by randomized detection of contractive cycles on the
// system's weighted digraph, and validate them by certificate checks,
// simulation and Monte Carlo experiments.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "swsig/certificate.hpp"
#include "swsig/experiment.hpp"
#include "swsig/graph_io.hpp"

namespace {

using namespace swsig;

Cycle parse_cycle_spec(const std::string& spec, int uniform_delta) {
    Cycle cycle;
    std::string vertex_part = spec;
    std::string delta_part;
    if (const auto colon = spec.find(':'); colon != std::string::npos) {
        vertex_part = spec.substr(0, colon);
        delta_part = spec.substr(colon + 1);
    }
    auto parse_ints = [](const std::string& text, auto push) {
        std::stringstream ss(text);
        std::string item;
        while (std::getline(ss, item, ',')) {
            if (!item.empty()) {
                push(std::stoll(item));
            }
        }
    };

    std::ifstream file(vertex_part);
    if (file.good() && spec.find(':') == std::string::npos) {
        // A file path: JSON with "vertices" and optional "deltas".
        nlohmann::json doc;
        try {
            file >> doc;
        } catch (const nlohmann::json::parse_error& e) {
            throw IoError(vertex_part + ": " + e.what());
        }
        if (!doc.contains("vertices") || !doc["vertices"].is_array()) {
            throw ConfigError(vertex_part + ": cycle file needs a 'vertices' array");
        }
        for (const auto& v : doc["vertices"]) {
            cycle.vertices.push_back(v.get<VertexId>());
        }
        if (doc.contains("deltas")) {
            for (const auto& d : doc["deltas"]) {
                cycle.delta_params.push_back(d.get<int>());
            }
        }
    } else {
        parse_ints(vertex_part,
                   [&](long long v) { cycle.vertices.push_back(static_cast<VertexId>(v)); });
        parse_ints(delta_part,
                   [&](long long d) { cycle.delta_params.push_back(static_cast<int>(d)); });
    }

    if (cycle.delta_params.empty() && uniform_delta > 0) {
        cycle.delta_params.assign(cycle.vertices.size(), uniform_delta);
    }
    return cycle;
}

InputFn parse_input_spec(const std::string& spec, std::size_t input_dim) {
    if (spec == "zero") {
        return zero_input(input_dim);
    }
    if (spec.rfind("const:", 0) == 0) {
        Vec v;
        std::stringstream ss(spec.substr(6));
        std::string item;
        while (std::getline(ss, item, ',')) {
            v.push_back(std::stod(item));
        }
        if (v.size() != input_dim) {
            throw ConfigError("constant input has dimension " + std::to_string(v.size()) +
                              ", system expects " + std::to_string(input_dim));
        }
        return constant_input(std::move(v));
    }
    // File: one CSV row of input components per time step.
    std::ifstream in(spec);
    if (!in) {
        throw IoError("cannot open input file " + spec);
    }
    auto rows = std::make_shared<std::vector<Vec>>();
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) {
            continue;
        }
        Vec row;
        std::stringstream ss(line);
        std::string item;
        while (std::getline(ss, item, ',')) {
            row.push_back(std::stod(item));
        }
        if (row.size() != input_dim) {
            throw ConfigError("input file row has dimension " + std::to_string(row.size()) +
                              ", system expects " + std::to_string(input_dim));
        }
        rows->push_back(std::move(row));
    }
    return [rows, input_dim](std::int64_t t) {
        if (t < 0 || static_cast<std::size_t>(t) >= rows->size()) {
            return Vec(input_dim, 0.0); // past the file's horizon: zero input
        }
        return (*rows)[static_cast<std::size_t>(t)];
    };
}

Vec parse_csv_doubles(const std::string& text) {
    Vec v;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        v.push_back(std::stod(item));
    }
    return v;
}

int run(int argc, char** argv) {
    CLI::App app{"stabilizing switching signals via randomized cycle detection"};
    app.require_subcommand(1);

    // --- generate ---------------------------------------------------------
    auto* gen_cmd = app.add_subcommand("generate", "generate a random graph instance");
    GenConfig gen;
    gen.params = NiceWeightParams{1, 0.0, 2.5, 2.5, 5.0};
    std::string gen_out;
    std::vector<int> gen_dwell{1, 1};
    double gen_alpha = 0.0;
    double gen_beta = -1.0; // defaulted to B/2 after parsing
    gen_cmd->add_option("--n-stable", gen.n_stable, "number of stable vertices")->required();
    gen_cmd->add_option("--n-unstable", gen.n_unstable, "number of unstable vertices");
    gen_cmd->add_option("--phi-coeff", gen.phi.coeff, "density function coefficient c in c*sqrt(r)");
    gen_cmd->add_option("--dwell", gen_dwell, "dwell window: min max")->expected(2);
    gen_cmd->add_option("--A", gen.params.A, "edge weight bound");
    gen_cmd->add_option("--B", gen.params.B, "vertex product bound");
    gen_cmd->add_option("--alpha", gen_alpha, "edge weight mean bound");
    gen_cmd->add_option("--beta", gen_beta, "vertex product mean (default B/2)");
    gen_cmd->add_option("--seed", gen.seed, "RNG seed")->required();
    gen_cmd->add_option("--extra-edges", gen.extra_edges, "additional random edges");
    gen_cmd->add_flag("--strict-edges", gen.strict_edges, "edge weights in [0, A] instead of [-A, A]");
    gen_cmd->add_option("--out", gen_out, "output graph JSON path")->required();

    // --- detect -----------------------------------------------------------
    auto* det_cmd = app.add_subcommand("detect", "run the randomized cycle detector");
    std::string det_graph;
    RngSeed det_seed = 0;
    bool det_json = false;
    det_cmd->add_option("--graph", det_graph, "graph JSON path")->required();
    det_cmd->add_option("--seed", det_seed, "RNG seed")->required();
    det_cmd->add_flag("--json", det_json, "emit JSON instead of plain text");

    // --- synthesize -------------------------------------------------------
    auto* syn_cmd = app.add_subcommand("synthesize", "build the periodic switching signal");
    std::string syn_graph;
    std::string syn_cycle;
    std::string syn_out;
    std::int64_t syn_horizon = 0;
    int syn_delta = 0;
    syn_cmd->add_option("--graph", syn_graph, "graph JSON path")->required();
    syn_cmd->add_option("--cycle", syn_cycle, "cycle file or inline v0,v1,..[:d0,d1,..]")->required();
    syn_cmd->add_option("--delta", syn_delta, "uniform dwell when the cycle carries none");
    syn_cmd->add_option("--horizon", syn_horizon, "last time step to emit")->required();
    syn_cmd->add_option("--out", syn_out, "output CSV path")->required();

    // --- simulate ---------------------------------------------------------
    auto* sim_cmd = app.add_subcommand("simulate", "simulate the switched system");
    std::string sim_system;
    std::string sim_graph;
    std::string sim_cycle;
    std::string sim_x0;
    std::string sim_input = "zero";
    std::string sim_out;
    std::int64_t sim_horizon = 0;
    int sim_delta = 0;
    sim_cmd->add_option("--system", sim_system, "system JSON path")->required();
    sim_cmd->add_option("--graph", sim_graph, "graph JSON path")->required();
    sim_cmd->add_option("--cycle", sim_cycle, "cycle file or inline spec")->required();
    sim_cmd->add_option("--delta", sim_delta, "uniform dwell when the cycle carries none");
    sim_cmd->add_option("--x0", sim_x0, "initial state, comma separated")->required();
    sim_cmd->add_option("--input", sim_input, "zero | const:v1,v2,.. | file path");
    sim_cmd->add_option("--horizon", sim_horizon, "number of steps")->required();
    sim_cmd->add_option("--out", sim_out, "output CSV path")->required();

    // --- certify ----------------------------------------------------------
    auto* cert_cmd = app.add_subcommand("certify", "sample-check the certificate inequalities");
    std::string cert_system;
    std::string cert_graph;
    std::size_t cert_samples = 10000;
    double cert_radius = 1.0;
    RngSeed cert_seed = 0;
    cert_cmd->add_option("--system", cert_system, "system JSON path with certificate block")
        ->required();
    cert_cmd->add_option("--graph", cert_graph, "graph JSON path")->required();
    cert_cmd->add_option("--samples", cert_samples, "number of sample points");
    cert_cmd->add_option("--radius", cert_radius, "sampling ball radius");
    cert_cmd->add_option("--seed", cert_seed, "RNG seed")->required();

    // --- experiment -------------------------------------------------------
    auto* exp_cmd = app.add_subcommand("experiment", "Monte Carlo contractivity experiment");
    ExperimentConfig exp;
    exp.gen.params = NiceWeightParams{1, 0.0, -1.0, 2.5, 5.0};
    std::vector<int> exp_dwell{1, 1};
    double exp_alpha = 0.0;
    double exp_beta = -1.0;
    std::string exp_out;
    bool exp_timing = false;
    exp_cmd->add_option("--n-stable", exp.gen.n_stable, "number of stable vertices")->required();
    exp_cmd->add_option("--n-unstable", exp.gen.n_unstable, "number of unstable vertices");
    exp_cmd->add_option("--phi-coeff", exp.gen.phi.coeff, "density coefficient");
    exp_cmd->add_option("--dwell", exp_dwell, "dwell window: min max")->expected(2);
    exp_cmd->add_option("--A", exp.gen.params.A, "edge weight bound");
    exp_cmd->add_option("--B", exp.gen.params.B, "vertex product bound");
    exp_cmd->add_option("--alpha", exp_alpha, "edge weight mean bound");
    exp_cmd->add_option("--beta", exp_beta, "vertex product mean (default B/2)");
    exp_cmd->add_option("--trials", exp.trials_per_length, "resampling trials per cycle length");
    exp_cmd->add_option("--lengths", exp.lengths, "target cycle lengths (default: sweep)");
    exp_cmd->add_option("--sweep", exp.sweep_detections, "detections in the initial sweep");
    exp_cmd->add_option("--seed", exp.master_seed, "master RNG seed")->required();
    exp_cmd->add_flag("--timing", exp_timing,
                      "write measured wall-clock seconds into the CSV (off by default so the "
                      "output is byte-reproducible)");
    exp_cmd->add_option("--out", exp_out, "output CSV path")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e); // prints help or the parse message
        return code == 0 ? 0 : 2;
    }

    if (gen_cmd->parsed()) {
        gen.dwell = DwellWindow{gen_dwell[0], gen_dwell[1]};
        gen.params.alpha = gen_alpha;
        gen.params.beta = gen_beta > 0.0 ? gen_beta : gen.params.B / 2.0;
        gen.params.delta = gen.dwell.min;
        const GeneratedInstance instance = generate(gen);
        save_graph(instance.graph, gen_out);
        std::cout << "wrote " << gen_out << ": " << instance.graph.num_vertices() << " vertices, "
                  << instance.graph.num_edges() << " edges\n";
        return 0;
    }

    if (det_cmd->parsed()) {
        const WeightedDigraph g = load_graph(det_graph);
        const DetectionResult det = detect_cycle(g, det_seed);
        if (det_json) {
            nlohmann::json doc;
            doc["vertices"] = det.cycle.vertices;
            doc["length"] = det.cycle.length();
            std::cout << doc.dump() << "\n";
        } else {
            std::cout << "cycle (length " << det.cycle.length() << "):";
            for (VertexId v : det.cycle.vertices) {
                std::cout << ' ' << v;
            }
            std::cout << "\n";
        }
        return 0;
    }

    if (syn_cmd->parsed()) {
        const WeightedDigraph g = load_graph(syn_graph);
        Cycle cycle = parse_cycle_spec(syn_cycle, syn_delta);
        validate_cycle(g, cycle, true);
        const SwitchingSignal sig = synthesize(cycle, g.dwell_window());
        std::ofstream out(syn_out, std::ios::binary);
        if (!out) {
            throw IoError("cannot open " + syn_out + " for writing");
        }
        out << "t,sigma\n";
        for (std::int64_t t = 0; t <= syn_horizon; ++t) {
            out << t << ',' << sig.at(t) << "\n";
        }
        std::cout << "wrote " << syn_out << " (period " << sig.period() << ")\n";
        return 0;
    }

    if (sim_cmd->parsed()) {
        const SwitchedSystem sys = load_system(sim_system);
        const WeightedDigraph g = load_graph(sim_graph);
        Cycle cycle = parse_cycle_spec(sim_cycle, sim_delta);
        validate_cycle(g, cycle, true);
        const SwitchingSignal sig = synthesize(cycle, g.dwell_window());
        const Vec x0 = parse_csv_doubles(sim_x0);
        const InputFn input = parse_input_spec(sim_input, sys.input_dim);
        const Trajectory traj = simulate(sys, sig, x0, input, sim_horizon);

        std::ofstream out(sim_out, std::ios::binary);
        if (!out) {
            throw IoError("cannot open " + sim_out + " for writing");
        }
        out << "t,sigma";
        for (std::size_t i = 1; i <= sys.state_dim; ++i) {
            out << ",x_" << i;
        }
        for (std::size_t i = 1; i <= sys.output_dim; ++i) {
            out << ",y_" << i;
        }
        out << "\n";
        char buf[32];
        for (std::size_t t = 0; t < traj.states.size(); ++t) {
            out << t << ',' << traj.active[t];
            for (double c : traj.states[t]) {
                std::snprintf(buf, sizeof(buf), "%.12g", c);
                out << ',' << buf;
            }
            for (std::size_t i = 0; i < sys.output_dim; ++i) {
                std::snprintf(buf, sizeof(buf), "%.12g", traj.outputs[t][i]);
                out << ',' << buf;
            }
            out << "\n";
        }
        std::cout << "wrote " << sim_out << " (" << traj.states.size() << " steps)\n";
        return 0;
    }

    if (cert_cmd->parsed()) {
        const SwitchedSystem sys = load_system(cert_system);
        const LyapunovCertificate cert = load_certificate(cert_system);
        const WeightedDigraph g = load_graph(cert_graph);
        const CertificateReport report =
            check_certificate(sys, cert, g, cert_samples, cert_seed, cert_radius);
        std::cout << "samples: " << report.samples << ", radius: " << cert_radius << "\n";
        std::cout << "sandwich violations: " << report.sandwich_violations
                  << " (worst margin " << report.worst_sandwich_margin << ")\n";
        std::cout << "decay violations:    " << report.decay_violations << " (worst margin "
                  << report.worst_decay_margin << ")\n";
        std::cout << "jump violations:     " << report.jump_violations << " (worst margin "
                  << report.worst_jump_margin << ")\n";
        if (report.first_violation) {
            const auto& ce = *report.first_violation;
            std::cout << "first counterexample at sample " << ce.sample_index << ", subsystem "
                      << ce.subsystem << ": lhs " << ce.lhs << " > rhs " << ce.rhs << "\n";
        }
        std::cout << (report.ok() ? "certificate holds on all samples\n"
                                  : "certificate VIOLATED\n");
        return 0;
    }

    if (exp_cmd->parsed()) {
        exp.gen.dwell = DwellWindow{exp_dwell[0], exp_dwell[1]};
        exp.gen.params.alpha = exp_alpha;
        exp.gen.params.beta = exp_beta > 0.0 ? exp_beta : exp.gen.params.B / 2.0;
        exp.gen.params.delta = exp.gen.dwell.min;
        exp.gen.seed = exp.master_seed;
        ExperimentResult result = run_experiment(exp);

        std::cout << "phi floor: " << result.phi_floor << ", bound: "
                  << success_probability_bound(exp.gen.params, result.phi_floor) << "\n";
        for (const LengthResult& row : result.rows) {
            if (row.unreachable) {
                std::cout << "length " << row.requested_n << ": unreachable\n";
            }
        }
        std::cout << "rows: " << result.rows.size() << ", total seconds: " << result.total_seconds
                  << "\n";

        if (!exp_timing) {
            for (LengthResult& row : result.rows) {
                row.seconds = 0.0;
            }
        }
        export_csv(result, exp_out);
        std::cout << "wrote " << exp_out << "\n";
        return 0;
    }

    return 0;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const swsig::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const swsig::InvalidCycleError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const CLI::Error& e) {
        std::cerr << "argument error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}
