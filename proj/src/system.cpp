#include "swsig/system.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace swsig {

using nlohmann::json;

Subsystem scalar_linear(double a, double b, double c, bool stable) {
    Subsystem s;
    s.update = [a, b](const Vec& x, const Vec& v) { return Vec{a * x[0] + b * v[0]}; };
    s.output = [c](const Vec& x) { return Vec{c * x[0]}; };
    s.stable = stable;
    return s;
}

Subsystem diagonal_linear(Vec a, Vec b, Vec c, bool stable) {
    Subsystem s;
    s.update = [a = std::move(a), b = std::move(b)](const Vec& x, const Vec& v) {
        Vec next(x.size());
        for (std::size_t i = 0; i < x.size(); ++i) {
            next[i] = a[i] * x[i] + b[i] * v[i];
        }
        return next;
    };
    s.output = [c = std::move(c)](const Vec& x) {
        Vec y(x.size());
        for (std::size_t i = 0; i < x.size(); ++i) {
            y[i] = c[i] * x[i];
        }
        return y;
    };
    s.stable = stable;
    return s;
}

Subsystem rational_saturation(Vec a, Vec b, Vec c, bool stable) {
    Subsystem s;
    s.update = [a = std::move(a), b = std::move(b)](const Vec& x, const Vec& v) {
        Vec next(x.size());
        for (std::size_t i = 0; i < x.size(); ++i) {
            next[i] = a[i] * x[i] / (1.0 + std::abs(x[i])) + b[i] * v[i];
        }
        return next;
    };
    s.output = [c = std::move(c)](const Vec& x) {
        Vec y(x.size());
        for (std::size_t i = 0; i < x.size(); ++i) {
            y[i] = c[i] * x[i];
        }
        return y;
    };
    s.stable = stable;
    return s;
}

void SwitchedSystem::validate() const {
    if (subsystems.empty()) {
        throw ConfigError("system has no subsystems");
    }
    const Vec zero_x(state_dim, 0.0);
    const Vec zero_v(input_dim, 0.0);
    for (std::size_t i = 0; i < subsystems.size(); ++i) {
        const Vec fx = subsystems[i].update(zero_x, zero_v);
        if (fx.size() != state_dim) {
            throw ConfigError("subsystem " + std::to_string(i) + " update has wrong dimension");
        }
        for (double c : fx) {
            if (c != 0.0) {
                throw ConfigError("subsystem " + std::to_string(i) +
                                  ": origin is not a fixed point of f(., 0)");
            }
        }
    }
}

InputFn zero_input(std::size_t input_dim) {
    return [input_dim](std::int64_t) { return Vec(input_dim, 0.0); };
}

InputFn constant_input(Vec v) {
    return [v = std::move(v)](std::int64_t) { return v; };
}

Trajectory simulate(const SwitchedSystem& sys, const SwitchingSignal& sig, const Vec& x0,
                    const InputFn& input, std::int64_t T) {
    if (T < 1) {
        throw ConfigError("simulate: horizon must be at least 1");
    }
    if (x0.size() != sys.state_dim) {
        throw ConfigError("simulate: x0 has dimension " + std::to_string(x0.size()) +
                          ", system expects " + std::to_string(sys.state_dim));
    }

    Trajectory traj;
    traj.states.reserve(static_cast<std::size_t>(T) + 1);
    traj.outputs.reserve(static_cast<std::size_t>(T) + 1);
    traj.active.reserve(static_cast<std::size_t>(T) + 1);
    traj.inputs.reserve(static_cast<std::size_t>(T));

    Vec x = x0;
    for (std::int64_t t = 0; t <= T; ++t) {
        const VertexId idx = sig.at(t);
        if (idx >= sys.subsystems.size()) {
            throw ConfigError("simulate: signal selects subsystem " + std::to_string(idx) +
                              " but the system has only " +
                              std::to_string(sys.subsystems.size()));
        }
        const Subsystem& sub = sys.subsystems[idx];
        traj.states.push_back(x);
        traj.active.push_back(idx);
        traj.outputs.push_back(sub.output(x));
        if (t == T) {
            break;
        }
        Vec v = input(t);
        if (v.size() != sys.input_dim) {
            throw ConfigError("simulate: input has wrong dimension at t=" + std::to_string(t));
        }
        x = sub.update(x, v);
        for (double c : x) {
            if (!std::isfinite(c)) {
                throw NumericError("simulate: non-finite state at t=" + std::to_string(t + 1));
            }
        }
        traj.inputs.push_back(std::move(v));
    }
    return traj;
}

namespace {

Vec read_vec(const json& j, const char* key, const std::string& origin) {
    if (!j.contains(key)) {
        throw ConfigError(origin + ": subsystem missing field '" + key + "'");
    }
    const json& v = j[key];
    if (v.is_number()) {
        return Vec{v.get<double>()};
    }
    if (!v.is_array()) {
        throw ConfigError(origin + ": field '" + key + "' must be a number or array");
    }
    Vec out;
    for (const json& c : v) {
        out.push_back(c.get<double>());
    }
    return out;
}

} // namespace

SwitchedSystem parse_system(const std::string& text, const std::string& origin) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw IoError(origin + ": " + e.what());
    }
    SwitchedSystem sys;
    sys.state_dim = doc.value("state_dim", 1u);
    sys.input_dim = doc.value("input_dim", 1u);
    sys.output_dim = doc.value("output_dim", 0u);
    if (!doc.contains("subsystems") || !doc["subsystems"].is_array()) {
        throw ConfigError(origin + ": missing 'subsystems' array");
    }
    for (const json& sub : doc["subsystems"]) {
        const std::string type = sub.value("type", "");
        const bool stable = sub.value("stable", true);
        if (type == "scalar_linear") {
            sys.subsystems.push_back(scalar_linear(sub.value("a", 0.0), sub.value("b", 1.0),
                                                   sub.value("c", 0.0), stable));
        } else if (type == "diagonal_linear") {
            sys.subsystems.push_back(diagonal_linear(read_vec(sub, "a", origin),
                                                     read_vec(sub, "b", origin),
                                                     read_vec(sub, "c", origin), stable));
        } else if (type == "rational_saturation") {
            sys.subsystems.push_back(rational_saturation(read_vec(sub, "a", origin),
                                                         read_vec(sub, "b", origin),
                                                         read_vec(sub, "c", origin), stable));
        } else {
            throw ConfigError(origin + ": unknown subsystem type '" + type + "'");
        }
    }
    sys.validate();
    return sys;
}

SwitchedSystem load_system(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open " + path.string());
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_system(buf.str(), path.string());
}

} // namespace swsig
