#pragma once

#include <filesystem>

#include "swsig/cycle_detect.hpp"
#include "swsig/instance_gen.hpp"

namespace swsig {

/// Monte Carlo experiment: generate a graph, detect cycles of varying length,
/// then resample each fixed cycle's weights and dwell times many times and
/// tally how often the draw comes out contractive.
struct ExperimentConfig {
    GenConfig gen;
    /// Target cycle lengths.  Empty means: run an initial sweep of
    /// sweep_detections detections and use the achieved lengths,
    /// deduplicated and sorted.
    std::vector<std::size_t> lengths;
    std::size_t trials_per_length = 1000;
    RngSeed master_seed = 0;
    std::size_t sweep_detections = 100;
};

struct LengthResult {
    std::size_t requested_n = 0;
    std::size_t achieved_n = 0; // length of the cycle actually used
    std::size_t trials = 0;
    std::size_t contractive = 0; // draws with gamma < 0
    double empirical_prob = 0.0;
    double theoretical_bound = 0.0;
    double seconds = 0.0; // wall clock for this row's trials
    bool unreachable = false;
};

struct ExperimentResult {
    std::vector<LengthResult> rows;
    long long phi_floor = 0;
    double total_seconds = 0.0;
};

/// Deterministic given the config: detection attempt i uses
/// seed_mix(seed_mix(master, detect-stream), i); trial t of a length-n row
/// uses seed_mix(seed_mix(seed_mix(master, trial-stream), n), t), so trials
/// are order-independent and may be evaluated in any schedule.
///
/// A requested length with no detected cycle of that exact length (within a
/// budget of 10 * |stable set| detection attempts overall) falls back to the
/// nearest achieved length; if no cycle was detected at all the row is
/// marked unreachable, never fatal.
ExperimentResult run_experiment(const ExperimentConfig& cfg);

/// Writes `n,trials,contractive,empirical_prob,theoretical_bound,seconds`
/// with one row per completed length (probabilities and seconds with six
/// decimals).  Byte output is a pure function of the result.
void export_csv(const ExperimentResult& result, const std::filesystem::path& path);
std::string result_to_csv(const ExperimentResult& result);

} // namespace swsig
