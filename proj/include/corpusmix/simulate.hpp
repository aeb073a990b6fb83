#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "corpusmix/bucketing.hpp"
#include "corpusmix/manifest.hpp"
#include "corpusmix/mux.hpp"
#include "corpusmix/weights.hpp"

namespace corpusmix {

struct SimulationOptions {
    Stratify stratify = Stratify::language;
    double alpha = 0.5;
    double alpha_dataset = 0.5;  // inner level of language_then_dataset
    BucketingConfig bucketing;
    std::size_t shuffle_buffer_size = 10000;
    std::uint64_t seed = 0;
    // Records to emit in infinite_repeat mode; ignored by single_pass, which
    // always drains the whole corpus.
    std::uint64_t draws = 0;
    MuxMode mode = MuxMode::infinite_repeat;
};

struct PaddingStats {
    double mean = 0.0;
    double p50 = 0.0;
    double p90 = 0.0;
    double p99 = 0.0;
    double max = 0.0;
};

struct SimulationReport {
    SimulationOptions options;
    std::size_t corpus_records = 0;
    double corpus_hours = 0.0;
    WeightMap target_weights;
    std::map<std::string, double> empirical_frequencies;  // of mux source draws
    std::uint64_t mux_draws = 0;
    std::uint64_t records_emitted = 0;
    std::uint64_t batches_emitted = 0;
    std::uint64_t oversize_singletons = 0;
    double mean_batch_size = 0.0;
    PaddingStats padding;
    double mean_batch_effective_duration = 0.0;
    double max_batch_effective_duration = 0.0;
    BucketSpec bucket_spec;
    double wall_time_seconds = 0.0;

    // wall_time_seconds is the last key so deterministic output can be
    // compared after dropping one line.
    nlohmann::ordered_json to_json() const;
};

// weights -> mux -> shuffle buffer -> bucket assembler, consumed to the stop
// condition. Deterministic given options.seed apart from wall_time_seconds.
// The sink, when set, receives every assembled batch before it is folded
// into the report.
SimulationReport run_simulation(std::vector<UtteranceRecord> records,
                                const SimulationOptions& options,
                                const std::function<void(const MiniBatch&)>& sink = {});

}  // namespace corpusmix
