#include "corpusmix/mux.hpp"

#include <algorithm>

#include "corpusmix/error.hpp"

namespace corpusmix {

StreamMux::StreamMux(std::map<std::string, std::unique_ptr<StratumSource>> sources,
                     MuxConfig config)
    : config_(std::move(config)), rng_(derive_seed(config_.seed, "mux-choice")) {
    config_.weights.validate();

    bool any_positive = false;
    for (const auto& [name, w] : config_.weights.entries) {
        if (w <= 0.0)
            continue;
        any_positive = true;
        auto it = sources.find(name);
        if (it == sources.end())
            throw ConfigError("stratum \"" + name + "\" has positive weight but no stream");
        Stratum s;
        s.name = name;
        s.weight = w;
        s.source = std::move(it->second);
        strata_.push_back(std::move(s));
        draw_counts_[name] = 0;
    }
    if (!any_positive)
        throw ConfigError("degenerate weights: no stratum has positive weight");
    rebuild_cumulative();
}

void StreamMux::rebuild_cumulative() {
    cumulative_.clear();
    double acc = 0.0;
    for (const Stratum& s : strata_) {
        if (s.active)
            acc += s.weight;
        cumulative_.push_back(acc);
    }
    if (acc <= 0.0)
        finished_ = true;
}

std::size_t StreamMux::pick_stratum() {
    const double u = rng_.uniform01() * cumulative_.back();
    auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
    // u can round up to exactly cumulative_.back(); clamp and step down to
    // the nearest active stratum (inactive ones have zero-width intervals).
    std::size_t idx =
        std::min(static_cast<std::size_t>(it - cumulative_.begin()), strata_.size() - 1);
    while (idx > 0 && !strata_[idx].active)
        --idx;
    return idx;
}

std::optional<UtteranceRecord> StreamMux::next() {
    if (finished_)
        return std::nullopt;
    for (;;) {
        Stratum& s = strata_[pick_stratum()];
        std::optional<UtteranceRecord> rec = s.source->next();
        if (!rec && config_.mode == MuxMode::infinite_repeat) {
            ++s.epoch;
            s.source->restart(derive_seed(config_.seed, s.name, s.epoch));
            rec = s.source->next();
            if (!rec)
                throw DataError("stratum \"" + s.name + "\" has no records");
        }
        if (rec) {
            ++draw_counts_[s.name];
            ++total_draws_;
            return rec;
        }
        // single_pass: drop the exhausted stratum and renormalize.
        s.active = false;
        rebuild_cumulative();
        if (finished_)
            return std::nullopt;
    }
}

std::optional<UtteranceRecord> ShuffleBuffer::next() {
    if (capacity_ <= 1)
        return input_->next();
    if (!filled_) {
        buffer_.reserve(capacity_);
        while (buffer_.size() < capacity_) {
            std::optional<UtteranceRecord> rec = input_->next();
            if (!rec) {
                input_done_ = true;
                break;
            }
            buffer_.push_back(std::move(*rec));
        }
        filled_ = true;
    }
    if (buffer_.empty())
        return std::nullopt;
    const std::size_t j = rng_.bounded(buffer_.size());
    UtteranceRecord out = std::move(buffer_[j]);
    if (!input_done_) {
        std::optional<UtteranceRecord> rec = input_->next();
        if (rec) {
            buffer_[j] = std::move(*rec);
            return out;
        }
        input_done_ = true;
    }
    buffer_[j] = std::move(buffer_.back());
    buffer_.pop_back();
    return out;
}

}  // namespace corpusmix
