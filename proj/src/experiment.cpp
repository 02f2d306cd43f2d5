#include "swsig/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <map>

namespace swsig {

namespace {

constexpr std::uint64_t kDetectStream = 0xD37EC7ull;
constexpr std::uint64_t kTrialStream = 0x7121A1ull;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

} // namespace

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
    if (cfg.trials_per_length < 1) {
        throw ConfigError("experiment: trials_per_length must be >= 1");
    }
    const auto t_total = Clock::now();

    const GeneratedInstance instance = generate(cfg.gen);
    const WeightedDigraph& g = instance.graph;

    ExperimentResult result;
    result.phi_floor = phi_floor(PhiFn(cfg.gen.phi), cfg.gen.n_stable);
    const double bound = success_probability_bound(cfg.gen.params, result.phi_floor);

    // Detection pool, keyed by achieved length (first cycle of each length
    // is kept).  The sweep fills it; on-demand detection extends it up to
    // the attempt budget when a requested length is missing.
    std::map<std::size_t, Cycle> by_length;
    std::size_t attempts = 0;
    const std::size_t attempt_budget = 10 * g.stable_set().size();
    auto detect_next = [&]() {
        const RngSeed s = seed_mix(seed_mix(cfg.master_seed, kDetectStream), attempts);
        ++attempts;
        DetectionResult det = detect_cycle(g, s);
        by_length.try_emplace(det.cycle.length(), std::move(det.cycle));
    };

    for (std::size_t i = 0; i < cfg.sweep_detections && attempts < attempt_budget; ++i) {
        detect_next();
    }

    std::vector<std::size_t> lengths = cfg.lengths;
    if (lengths.empty()) {
        for (const auto& [n, cycle] : by_length) {
            lengths.push_back(n);
        }
    }

    for (std::size_t requested : lengths) {
        LengthResult row;
        row.requested_n = requested;
        row.theoretical_bound = bound;

        while (!by_length.contains(requested) && attempts < attempt_budget) {
            detect_next();
        }
        const Cycle* cycle = nullptr;
        if (auto it = by_length.find(requested); it != by_length.end()) {
            cycle = &it->second;
        } else if (!by_length.empty()) {
            // Nearest achieved length; ties resolve to the shorter cycle.
            auto best = by_length.begin();
            for (auto it2 = by_length.begin(); it2 != by_length.end(); ++it2) {
                const auto dist = [&](std::size_t n) {
                    return n > requested ? n - requested : requested - n;
                };
                if (dist(it2->first) < dist(best->first)) {
                    best = it2;
                }
            }
            cycle = &best->second;
        }
        if (cycle == nullptr) {
            row.unreachable = true;
            result.rows.push_back(row);
            continue;
        }

        row.achieved_n = cycle->length();
        row.trials = cfg.trials_per_length;
        const auto t_row = Clock::now();
        for (std::size_t t = 0; t < cfg.trials_per_length; ++t) {
            const RngSeed s =
                seed_mix(seed_mix(seed_mix(cfg.master_seed, kTrialStream), row.achieved_n), t);
            const CycleDraw draw = resample_cycle_weights(g, *cycle, cfg.gen.params, s);
            if (draw.gamma() < 0.0) {
                ++row.contractive;
            }
        }
        row.seconds = seconds_since(t_row);
        row.empirical_prob =
            static_cast<double>(row.contractive) / static_cast<double>(row.trials);
        result.rows.push_back(row);
    }

    result.total_seconds = seconds_since(t_total);
    return result;
}

std::string result_to_csv(const ExperimentResult& result) {
    std::string out = "n,trials,contractive,empirical_prob,theoretical_bound,seconds\n";
    char line[160];
    for (const LengthResult& row : result.rows) {
        if (row.unreachable) {
            continue;
        }
        std::snprintf(line, sizeof(line), "%zu,%zu,%zu,%.6f,%.6f,%.6f\n", row.achieved_n,
                      row.trials, row.contractive, row.empirical_prob, row.theoretical_bound,
                      row.seconds);
        out += line;
    }
    return out;
}

void export_csv(const ExperimentResult& result, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw IoError("cannot open " + path.string() + " for writing");
    }
    out << result_to_csv(result);
    if (!out) {
        throw IoError("write failed: " + path.string());
    }
}

} // namespace swsig
