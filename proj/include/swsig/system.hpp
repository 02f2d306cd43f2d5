#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <vector>

#include "swsig/signal.hpp"

namespace swsig {

using Vec = std::vector<double>;

/// One member of the family: state update f(x, v) and output map h(x).
/// f(0, 0) must be 0 (checked at construction of SwitchedSystem).
struct Subsystem {
    std::function<Vec(const Vec& x, const Vec& v)> update;
    std::function<Vec(const Vec& x)> output;
    bool stable = true;
};

/// x' = a*x + b*v, y = c*x (all scalar).
Subsystem scalar_linear(double a, double b = 1.0, double c = 0.0, bool stable = true);

/// Componentwise x'_i = a_i*x_i + b_i*v_i, y_i = c_i*x_i.
Subsystem diagonal_linear(Vec a, Vec b, Vec c, bool stable = true);

/// Componentwise rational saturation: x'_i = a_i * x_i / (1 + |x_i|) + b_i*v_i,
/// y_i = c_i*x_i.  Contractive near the origin for |a_i| < 1; the saturation
/// keeps the update bounded in x.
Subsystem rational_saturation(Vec a, Vec b, Vec c, bool stable = true);

/// Family of subsystems indexed by VertexId, with common dimensions.
struct SwitchedSystem {
    std::vector<Subsystem> subsystems;
    std::size_t state_dim = 1;
    std::size_t input_dim = 1;
    std::size_t output_dim = 0;

    /// Checks f_i(0, 0) == 0 componentwise for every subsystem.
    void validate() const;
};

struct Trajectory {
    std::vector<Vec> states;      // x(0..T)
    std::vector<Vec> outputs;     // y(0..T)
    std::vector<VertexId> active; // sigma(0..T)
    std::vector<Vec> inputs;      // v(0..T-1)
};

using InputFn = std::function<Vec(std::int64_t t)>;

/// Zero input of the given dimension.
InputFn zero_input(std::size_t input_dim);
/// Constant input.
InputFn constant_input(Vec v);

/// Iterates x(t+1) = f_{sigma(t)}(x(t), v(t)) for t = 0..T-1, recording
/// states, outputs and active indices.  Throws NumericError naming the first
/// offending step if a state stops being finite.
Trajectory simulate(const SwitchedSystem& sys, const SwitchingSignal& sig, const Vec& x0,
                    const InputFn& input, std::int64_t T);

/// Loads a system description (and optional certificate, see certificate.hpp)
/// from JSON:
///
///   {
///     "state_dim": 1, "input_dim": 1, "output_dim": 1,
///     "subsystems": [
///       {"type": "scalar_linear", "a": 0.5, "b": 1.0, "c": 0.0, "stable": true},
///       {"type": "diagonal_linear", "a": [..], "b": [..], "c": [..], "stable": true},
///       {"type": "rational_saturation", "a": [..], "b": [..], "c": [..], "stable": true}
///     ]
///   }
SwitchedSystem load_system(const std::filesystem::path& path);
SwitchedSystem parse_system(const std::string& text, const std::string& origin = "<string>");

} // namespace swsig
