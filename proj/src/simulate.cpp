#include "corpusmix/simulate.hpp"

#include <algorithm>
#include <chrono>
#include <utility>

#include "corpusmix/error.hpp"
#include "corpusmix/numeric.hpp"

namespace corpusmix {

namespace {

const char* stratify_name(Stratify s) {
    switch (s) {
    case Stratify::language: return "language";
    case Stratify::dataset: return "dataset";
    case Stratify::language_then_dataset: return "language_then_dataset";
    }
    return "?";
}

const char* metric_name(BucketingConfig::BinMetric m) {
    switch (m) {
    case BucketingConfig::BinMetric::count: return "count";
    case BucketingConfig::BinMetric::duration: return "duration";
    case BucketingConfig::BinMetric::effective: return "effective";
    }
    return "?";
}

// Caps an infinite stream at `limit` records so the downstream stages can
// drain normally and every drawn record ends up in a batch.
class TakeStream final : public RecordStream {
public:
    TakeStream(std::unique_ptr<RecordStream> input, std::uint64_t limit)
        : input_(std::move(input)), remaining_(limit) {}

    std::optional<UtteranceRecord> next() override {
        if (remaining_ == 0) return std::nullopt;
        auto rec = input_->next();
        if (rec) --remaining_;
        return rec;
    }

private:
    std::unique_ptr<RecordStream> input_;
    std::uint64_t remaining_;
};

}  // namespace

nlohmann::ordered_json SimulationReport::to_json() const {
    nlohmann::ordered_json j;
    auto& cfg = j["config"];
    cfg["stratify"] = stratify_name(options.stratify);
    cfg["alpha"] = options.alpha;
    if (options.stratify == Stratify::language_then_dataset)
        cfg["alpha_dataset"] = options.alpha_dataset;
    cfg["mode"] = options.mode == MuxMode::infinite_repeat ? "infinite_repeat" : "single_pass";
    cfg["draws"] = options.draws;
    cfg["num_buckets"] = options.bucketing.num_buckets;
    cfg["batch_duration"] = options.bucketing.batch_budget;
    if (options.bucketing.quadratic_duration)
        cfg["quadratic_duration"] = *options.bucketing.quadratic_duration;
    else
        cfg["quadratic_duration"] = nullptr;
    cfg["buffer_size"] = options.bucketing.buffer_size;
    cfg["shuffle_buffer_size"] = options.shuffle_buffer_size;
    cfg["bin_metric"] = metric_name(options.bucketing.bin_metric);
    cfg["budget_metric"] =
        options.bucketing.budget_metric == BucketingConfig::BudgetMetric::effective ? "effective"
                                                                                    : "raw";
    cfg["corpus_records"] = corpus_records;
    cfg["corpus_hours"] = corpus_hours;

    j["target_weights"] = target_weights.entries;
    j["empirical_frequencies"] = empirical_frequencies;
    j["mux_draws"] = mux_draws;
    j["records_emitted"] = records_emitted;
    j["batches_emitted"] = batches_emitted;
    j["oversize_singletons"] = oversize_singletons;
    j["mean_batch_size"] = mean_batch_size;
    j["padding_ratio"] = {{"mean", padding.mean},
                          {"p50", padding.p50},
                          {"p90", padding.p90},
                          {"p99", padding.p99},
                          {"max", padding.max}};
    j["batch_effective_duration"] = {{"mean", mean_batch_effective_duration},
                                     {"max", max_batch_effective_duration}};
    j["bucket_spec"] = {{"requested_buckets", bucket_spec.requested_buckets},
                        {"achieved_buckets", bucket_spec.bucket_count()},
                        {"edges", bucket_spec.edges}};
    j["seed"] = options.seed;
    j["wall_time_seconds"] = wall_time_seconds;
    return j;
}

SimulationReport run_simulation(std::vector<UtteranceRecord> records,
                                const SimulationOptions& options,
                                const std::function<void(const MiniBatch&)>& sink) {
    const auto t0 = std::chrono::steady_clock::now();
    if (records.empty()) throw DataError("empty corpus");
    if (options.mode == MuxMode::infinite_repeat && options.draws == 0)
        throw ConfigError("draws must be positive in infinite_repeat mode");
    options.bucketing.validate();

    SimulationReport report;
    report.options = options;
    report.corpus_records = records.size();

    const CorpusStats stats = corpus_stats(records, options.stratify);
    report.corpus_hours = stats.total_hours;
    report.target_weights =
        options.stratify == Stratify::language_then_dataset
            ? hierarchical_weights(stats, options.alpha, options.alpha_dataset)
            : temperature_weights(stats.hours_by_name(), options.alpha);

    std::vector<double> durations;
    durations.reserve(records.size());
    for (const auto& rec : records) durations.push_back(rec.duration);
    report.bucket_spec = estimate_bins(durations, options.bucketing);
    durations.clear();
    durations.shrink_to_fit();

    std::map<std::string, std::vector<UtteranceRecord>> grouped;
    for (auto& rec : records) {
        std::string name = stratum_of(rec, options.stratify).name();
        grouped[std::move(name)].push_back(std::move(rec));
    }
    records.clear();
    records.shrink_to_fit();

    std::map<std::string, std::unique_ptr<StratumSource>> sources;
    for (auto& [name, recs] : grouped)
        sources.emplace(name, std::make_unique<VectorSource>(std::move(recs)));

    MuxConfig mux_config;
    mux_config.weights = report.target_weights;
    mux_config.seed = options.seed;
    mux_config.mode = options.mode;
    mux_config.shuffle_buffer_size = options.shuffle_buffer_size;
    auto mux = std::make_unique<StreamMux>(std::move(sources), mux_config);
    StreamMux* mux_view = mux.get();

    std::unique_ptr<RecordStream> upstream = std::move(mux);
    if (options.mode == MuxMode::infinite_repeat)
        upstream = std::make_unique<TakeStream>(std::move(upstream), options.draws);
    auto shuffled = std::make_unique<ShuffleBuffer>(std::move(upstream),
                                                    options.shuffle_buffer_size,
                                                    derive_seed(options.seed, "shuffle"));
    BatchAssembler assembler(std::move(shuffled), report.bucket_spec, options.bucketing);

    std::vector<double> paddings;
    KahanSum padding_sum, effective_sum;
    while (auto batch = assembler.next_batch()) {
        if (sink) sink(*batch);
        ++report.batches_emitted;
        report.records_emitted += batch->records.size();
        if (batch->oversize) ++report.oversize_singletons;
        paddings.push_back(batch->padding_ratio);
        padding_sum.add(batch->padding_ratio);
        effective_sum.add(batch->total_effective_duration);
        report.max_batch_effective_duration =
            std::max(report.max_batch_effective_duration, batch->total_effective_duration);
    }

    report.mux_draws = mux_view->total_draws();
    for (const auto& [name, count] : mux_view->draw_counts())
        report.empirical_frequencies[name] =
            static_cast<double>(count) / static_cast<double>(report.mux_draws);

    if (report.batches_emitted > 0) {
        const auto n = static_cast<double>(report.batches_emitted);
        report.mean_batch_size = static_cast<double>(report.records_emitted) / n;
        report.padding.mean = padding_sum.value() / n;
        report.mean_batch_effective_duration = effective_sum.value() / n;
        std::sort(paddings.begin(), paddings.end());
        report.padding.p50 = quantile_sorted(paddings, 0.50);
        report.padding.p90 = quantile_sorted(paddings, 0.90);
        report.padding.p99 = quantile_sorted(paddings, 0.99);
        report.padding.max = paddings.back();
    }

    report.wall_time_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return report;
}

}  // namespace corpusmix
