#pragma once

#include <cstdint>
#include <deque>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "corpusmix/stream.hpp"
#include "corpusmix/weights.hpp"

namespace corpusmix {

enum class MuxMode { infinite_repeat, single_pass };

struct MuxConfig {
    WeightMap weights;
    std::uint64_t seed = 0;
    MuxMode mode = MuxMode::infinite_repeat;
    // Recorded here because it belongs to the sampling configuration; the
    // buffer itself is a separate stage (ShuffleBuffer) applied downstream.
    std::size_t shuffle_buffer_size = 10000;
};

// Stochastic weighted multiplexer: each emitted record's source stratum is
// drawn i.i.d. from the weight map, so the expected source mix of any window
// equals the weights at every point of the run.
//
// infinite_repeat: an exhausted stratum restarts with a fresh epoch seed
// derived as derive_seed(master, stratum, epoch). single_pass: an exhausted
// stratum drops out and the remaining weights renormalize; the stream ends
// when all strata are exhausted.
class StreamMux final : public RecordStream {
public:
    StreamMux(std::map<std::string, std::unique_ptr<StratumSource>> sources, MuxConfig config);

    std::optional<UtteranceRecord> next() override;

    // Source-selection counts, for empirical-frequency reports.
    const std::map<std::string, std::uint64_t>& draw_counts() const { return draw_counts_; }
    std::uint64_t total_draws() const { return total_draws_; }

private:
    struct Stratum {
        std::string name;
        double weight = 0.0;
        std::unique_ptr<StratumSource> source;
        std::uint64_t epoch = 0;
        bool active = true;
    };

    void rebuild_cumulative();
    std::size_t pick_stratum();

    MuxConfig config_;
    std::vector<Stratum> strata_;  // sorted by name
    std::vector<double> cumulative_;
    Rng rng_;
    std::map<std::string, std::uint64_t> draw_counts_;
    std::uint64_t total_draws_ = 0;
    bool finished_ = false;
};

// Streaming shuffle: fill a buffer of `capacity` records, then emit a
// uniformly chosen slot and refill it from the input; at end of input the
// buffer drains uniformly. Output is a permutation of the input. Capacity 0
// or 1 passes records through unchanged.
class ShuffleBuffer final : public RecordStream {
public:
    ShuffleBuffer(std::unique_ptr<RecordStream> input, std::size_t capacity, std::uint64_t seed)
        : input_(std::move(input)), capacity_(capacity), rng_(seed) {}

    std::optional<UtteranceRecord> next() override;

private:
    std::unique_ptr<RecordStream> input_;
    std::size_t capacity_;
    Rng rng_;
    std::vector<UtteranceRecord> buffer_;
    bool filled_ = false;
    bool input_done_ = false;
};

}  // namespace corpusmix
