#pragma once

#include <cstdint>
#include <deque>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "corpusmix/rng.hpp"
#include "corpusmix/stream.hpp"

namespace corpusmix {

struct BucketingConfig {
    enum class BinMetric { count, duration, effective };
    enum class BudgetMetric { raw, effective };

    int num_buckets = 31;
    double batch_budget = 360.0;  // seconds per batch
    // Quadratic duration penalty scale q; nullopt disables the penalty.
    std::optional<double> quadratic_duration = 20.0;
    std::size_t buffer_size = 20000;  // records queued across all buckets
    std::uint64_t seed = 0;
    // Which mass to equalize when estimating bins, and which cost the batch
    // budget constrains.
    BinMetric bin_metric = BinMetric::effective;
    BudgetMetric budget_metric = BudgetMetric::effective;

    void validate() const;  // throws ConfigError
};

// d + d^2/q models the superlinear cost of long utterances; with the penalty
// disabled the raw duration is returned. Strictly increasing in d.
inline double effective_duration(double d, std::optional<double> q) {
    return q ? d + d * d / *q : d;
}

// Duration-bucket boundaries. Bucket i covers [edges[i-1], edges[i]) with an
// implicit 0 below and +inf above, so every positive duration has a bucket.
struct BucketSpec {
    std::vector<double> edges;  // strictly ascending, all positive
    int requested_buckets = 1;

    int bucket_count() const { return static_cast<int>(edges.size()) + 1; }
};

// Places bucket edges so each bucket receives an equal share of the sample's
// mass (per config.bin_metric; effective duration by default): edge k sits
// just above the first sample where the cumulative mass reaches k/M of the
// total. Degenerate (equal or top-empty) edges collapse, so the achieved
// bucket count can be lower than requested.
BucketSpec estimate_bins(std::span<const double> durations, const BucketingConfig& config);

int assign_bucket(double d, const BucketSpec& spec);

struct MiniBatch {
    std::vector<UtteranceRecord> records;
    int bucket_index = 0;
    double max_duration = 0.0;
    double total_duration = 0.0;
    double total_effective_duration = 0.0;
    double padding_ratio = 0.0;
    // Single record whose cost alone exceeds the budget; emitted rather than
    // dropped so no data is lost silently.
    bool oversize = false;
    // Cost of the queued record that would have pushed the batch past the
    // budget, when the batch was closed by the budget rather than by an
    // empty queue.
    std::optional<double> next_record_cost;
};

// (n * max - total) / (n * max): the fraction of padded frames when every
// record is padded to the longest one in the batch.
double padding_ratio(const MiniBatch& batch);

// Routes records into per-bucket FIFO queues (at most config.buffer_size
// queued in total) and emits dynamic-size batches: a bucket is chosen
// uniformly among those whose queued cost reaches the budget (falling back
// to the fullest bucket), then popped FIFO until the next record would
// overflow the budget. Every input record is emitted in exactly one batch.
// Deterministic given config.seed.
class BatchAssembler {
public:
    BatchAssembler(std::unique_ptr<RecordStream> input, BucketSpec spec, BucketingConfig config);

    std::optional<MiniBatch> next_batch();

private:
    double cost(double duration) const;
    void fill();
    std::optional<std::size_t> choose_bucket();

    std::unique_ptr<RecordStream> input_;
    BucketSpec spec_;
    BucketingConfig config_;
    Rng rng_;
    std::vector<std::deque<UtteranceRecord>> queues_;
    std::vector<double> queued_cost_;
    std::size_t total_queued_ = 0;
    bool input_done_ = false;
};

std::vector<MiniBatch> assemble_batches(std::unique_ptr<RecordStream> input,
                                        const BucketSpec& spec, const BucketingConfig& config);

}  // namespace corpusmix
