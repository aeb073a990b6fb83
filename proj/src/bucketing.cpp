#include "corpusmix/bucketing.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "corpusmix/error.hpp"
#include "corpusmix/numeric.hpp"

namespace corpusmix {

void BucketingConfig::validate() const {
    if (num_buckets < 1)
        throw ConfigError("num_buckets must be >= 1");
    if (!(batch_budget > 0.0))
        throw ConfigError("batch_budget must be positive");
    if (quadratic_duration && !(*quadratic_duration > 0.0))
        throw ConfigError("quadratic_duration must be positive when enabled");
    if (buffer_size < static_cast<std::size_t>(num_buckets))
        throw ConfigError("buffer_size must be >= num_buckets");
}

namespace {

double bin_mass(double d, const BucketingConfig& config) {
    switch (config.bin_metric) {
    case BucketingConfig::BinMetric::count:
        return 1.0;
    case BucketingConfig::BinMetric::duration:
        return d;
    case BucketingConfig::BinMetric::effective:
        return effective_duration(d, config.quadratic_duration);
    }
    throw ConfigError("unknown bin metric");
}

}  // namespace

BucketSpec estimate_bins(std::span<const double> durations, const BucketingConfig& config) {
    config.validate();
    if (durations.empty())
        throw DataError("cannot estimate bins from an empty sample");

    BucketSpec spec;
    spec.requested_buckets = config.num_buckets;
    if (config.num_buckets == 1)
        return spec;

    std::vector<double> sorted(durations.begin(), durations.end());
    std::sort(sorted.begin(), sorted.end());

    std::vector<double> cumulative(sorted.size());
    KahanSum mass;
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        mass.add(bin_mass(sorted[i], config));
        cumulative[i] = mass.value();
    }
    const double total = mass.value();

    for (int k = 1; k < config.num_buckets; ++k) {
        const double threshold = static_cast<double>(k) * total / config.num_buckets;
        auto it = std::lower_bound(cumulative.begin(), cumulative.end(), threshold);
        const std::size_t idx =
            std::min(static_cast<std::size_t>(it - cumulative.begin()), sorted.size() - 1);
        if (sorted[idx] >= sorted.back())
            continue;  // the bucket above would hold no sample mass
        const double edge = std::nextafter(sorted[idx], std::numeric_limits<double>::infinity());
        if (spec.edges.empty() || edge > spec.edges.back())
            spec.edges.push_back(edge);
    }
    return spec;
}

int assign_bucket(double d, const BucketSpec& spec) {
    auto it = std::upper_bound(spec.edges.begin(), spec.edges.end(), d);
    return static_cast<int>(it - spec.edges.begin());
}

double padding_ratio(const MiniBatch& batch) {
    if (batch.records.empty())
        return 0.0;
    const double frames = static_cast<double>(batch.records.size()) * batch.max_duration;
    if (!(frames > 0.0))
        return 0.0;
    return (frames - batch.total_duration) / frames;
}

BatchAssembler::BatchAssembler(std::unique_ptr<RecordStream> input, BucketSpec spec,
                               BucketingConfig config)
    : input_(std::move(input)),
      spec_(std::move(spec)),
      config_(config),
      rng_(derive_seed(config.seed, "bucket-choice")),
      queues_(spec_.bucket_count()),
      queued_cost_(spec_.bucket_count(), 0.0) {
    config_.validate();
}

double BatchAssembler::cost(double duration) const {
    return config_.budget_metric == BucketingConfig::BudgetMetric::effective
               ? effective_duration(duration, config_.quadratic_duration)
               : duration;
}

void BatchAssembler::fill() {
    while (!input_done_ && total_queued_ < config_.buffer_size) {
        std::optional<UtteranceRecord> rec = input_->next();
        if (!rec) {
            input_done_ = true;
            return;
        }
        const int b = assign_bucket(rec->duration, spec_);
        queued_cost_[b] += cost(rec->duration);
        queues_[b].push_back(std::move(*rec));
        ++total_queued_;
    }
}

std::optional<std::size_t> BatchAssembler::choose_bucket() {
    std::vector<std::size_t> eligible;
    for (std::size_t b = 0; b < queues_.size(); ++b) {
        if (!queues_[b].empty() && queued_cost_[b] >= config_.batch_budget)
            eligible.push_back(b);
    }
    if (!eligible.empty())
        return eligible[rng_.bounded(eligible.size())];
    // Fallback: the bucket holding the greatest queued cost (lowest index on
    // ties, so the choice is deterministic).
    std::optional<std::size_t> best;
    for (std::size_t b = 0; b < queues_.size(); ++b) {
        if (queues_[b].empty())
            continue;
        if (!best || queued_cost_[b] > queued_cost_[*best])
            best = b;
    }
    return best;
}

std::optional<MiniBatch> BatchAssembler::next_batch() {
    fill();
    std::optional<std::size_t> chosen = choose_bucket();
    if (!chosen)
        return std::nullopt;

    const std::size_t b = *chosen;
    std::deque<UtteranceRecord>& queue = queues_[b];
    MiniBatch batch;
    batch.bucket_index = static_cast<int>(b);

    double acc = 0.0;
    while (!queue.empty()) {
        const double c = cost(queue.front().duration);
        if (batch.records.empty() && c > config_.batch_budget) {
            batch.oversize = true;
        } else if (acc + c > config_.batch_budget) {
            batch.next_record_cost = c;
            break;
        }
        UtteranceRecord rec = std::move(queue.front());
        queue.pop_front();
        queued_cost_[b] -= c;
        --total_queued_;
        acc += c;
        batch.max_duration = std::max(batch.max_duration, rec.duration);
        batch.total_duration += rec.duration;
        batch.total_effective_duration +=
            effective_duration(rec.duration, config_.quadratic_duration);
        batch.records.push_back(std::move(rec));
        if (batch.oversize)
            break;
    }
    if (queue.empty())
        queued_cost_[b] = 0.0;  // clear accumulated rounding
    batch.padding_ratio = padding_ratio(batch);
    return batch;
}

std::vector<MiniBatch> assemble_batches(std::unique_ptr<RecordStream> input,
                                        const BucketSpec& spec, const BucketingConfig& config) {
    BatchAssembler assembler(std::move(input), spec, config);
    std::vector<MiniBatch> batches;
    while (std::optional<MiniBatch> batch = assembler.next_batch())
        batches.push_back(std::move(*batch));
    return batches;
}

}  // namespace corpusmix
