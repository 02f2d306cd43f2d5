#include "swsig/signal.hpp"

#include <algorithm>

namespace swsig {

SwitchingSignal::SwitchingSignal(Cycle cycle) : cycle_(std::move(cycle)) {
    const std::size_t n = cycle_.vertices.size();
    if (n < 2) {
        throw InvalidCycleError("signal needs a cycle of length >= 2");
    }
    if (cycle_.delta_params.size() != n) {
        throw InvalidCycleError("signal needs one dwell parameter per cycle vertex");
    }
    offsets_.resize(n + 1);
    offsets_[0] = 0;
    for (std::size_t k = 0; k < n; ++k) {
        if (cycle_.delta_params[k] < 1) {
            throw InvalidCycleError("dwell parameters must be positive");
        }
        offsets_[k + 1] = offsets_[k] + cycle_.delta_params[k];
    }
    period_ = offsets_[n];
}

VertexId SwitchingSignal::at(std::int64_t t) const {
    if (t < 0) {
        throw ConfigError("signal evaluated at negative time");
    }
    const std::int64_t phase = t % period_;
    // Last offset <= phase locates the active segment.
    const auto it = std::upper_bound(offsets_.begin(), offsets_.end(), phase);
    const auto segment = static_cast<std::size_t>(it - offsets_.begin()) - 1;
    return cycle_.vertices[segment];
}

SwitchingSignal synthesize(const Cycle& c, DwellWindow window) {
    if (!c.has_deltas()) {
        throw InvalidCycleError("synthesize: cycle has no dwell parameters");
    }
    for (int d : c.delta_params) {
        if (d < window.min || d > window.max) {
            throw InvalidCycleError("synthesize: dwell parameter " + std::to_string(d) +
                                    " outside window [" + std::to_string(window.min) + ", " +
                                    std::to_string(window.max) + "]");
        }
    }
    return SwitchingSignal(c);
}

bool is_admissible(const SwitchingSignal& s, const WeightedDigraph& g, std::int64_t horizon) {
    if (horizon < s.period()) {
        throw ConfigError("is_admissible: horizon shorter than one period");
    }
    const DwellWindow window = g.dwell_window();
    std::int64_t prev_tau = -1;
    for (std::int64_t tau : s.instants_upto(horizon)) {
        if (prev_tau >= 0) {
            const std::int64_t dwell = tau - prev_tau;
            if (dwell < window.min || dwell > window.max) {
                return false;
            }
            if (!g.has_edge(s.at(prev_tau), s.at(tau))) {
                return false;
            }
        }
        prev_tau = tau;
    }
    return true;
}

} // namespace swsig
