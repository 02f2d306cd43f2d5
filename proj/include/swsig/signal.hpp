#pragma once

#include <cstdint>
#include <vector>

#include "swsig/graph.hpp"

namespace swsig {

/// Eventually-periodic switching signal built from a cycle: the signal holds
/// subsystem v_k for delta_k steps, cycling v_0, v_1, ..., v_{n-1}, v_0, ...
/// forever.  Period = sum of the dwell parameters.  Evaluation is O(log n)
/// and the switching-instant iterator is O(1) memory, so unbounded horizons
/// cost nothing.
///
/// The constructor checks only structural consistency (deltas present,
/// positive); use synthesize() to also enforce the dwell window.  Immutable
/// and safe for concurrent evaluation.
class SwitchingSignal {
public:
    explicit SwitchingSignal(Cycle cycle);

    /// sigma(t), t >= 0.
    VertexId at(std::int64_t t) const;

    std::int64_t period() const { return period_; }
    const Cycle& cycle() const { return cycle_; }

    /// Forward range of switching instants tau_0 = 0 < tau_1 < ... <= horizon.
    class InstantRange {
    public:
        class iterator {
        public:
            std::int64_t operator*() const { return tau_; }
            iterator& operator++() {
                tau_ += sig_->cycle_.delta_params[index_];
                index_ = (index_ + 1) % sig_->cycle_.vertices.size();
                return *this;
            }
            bool operator!=(std::int64_t limit) const { return tau_ <= limit; }

        private:
            friend class InstantRange;
            iterator(const SwitchingSignal* sig, std::int64_t tau) : sig_(sig), tau_(tau) {}
            const SwitchingSignal* sig_;
            std::int64_t tau_;
            std::size_t index_ = 0;
        };

        iterator begin() const { return iterator(sig_, 0); }
        std::int64_t end() const { return horizon_; }

    private:
        friend class SwitchingSignal;
        InstantRange(const SwitchingSignal* sig, std::int64_t horizon)
            : sig_(sig), horizon_(horizon) {}
        const SwitchingSignal* sig_;
        std::int64_t horizon_;
    };

    InstantRange instants_upto(std::int64_t horizon) const { return {this, horizon}; }

private:
    Cycle cycle_;
    std::vector<std::int64_t> offsets_; // offsets_[k] = start of segment k, offsets_[n] = period
    std::int64_t period_ = 0;
};

/// Builds the periodic signal from a cycle with assigned dwell parameters.
/// Throws InvalidCycleError when parameters are missing or outside [window].
///
/// The probabilistic contractivity guarantee behind the cycle detector is
/// stated for a uniform dwell parameter; per-vertex parameters are fully
/// supported here but carry no such guarantee.
SwitchingSignal synthesize(const Cycle& c, DwellWindow window);

/// True iff over [0, horizon] every switch follows an edge of g and every
/// dwell time lies inside the graph's window.  horizon must cover at least
/// one period.
bool is_admissible(const SwitchingSignal& s, const WeightedDigraph& g, std::int64_t horizon);

} // namespace swsig
