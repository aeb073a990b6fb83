#pragma once

#include <cstdint>
#include <memory>
#include <numeric>
#include <optional>
#include <utility>
#include <vector>

#include "corpusmix/manifest.hpp"
#include "corpusmix/rng.hpp"

namespace corpusmix {

// Pull-based record stream. Single consumer; a stream object may be handed
// between threads between pulls but never pulled concurrently.
class RecordStream {
public:
    virtual ~RecordStream() = default;
    virtual std::optional<UtteranceRecord> next() = 0;
};

// A stream that can start a new epoch. restart() rewinds to the beginning;
// the seed picks the within-epoch order.
class StratumSource : public RecordStream {
public:
    virtual void restart(std::uint64_t seed) = 0;
    virtual std::size_t size() const = 0;
};

// In-memory source. The first epoch runs in insertion order; restart(seed)
// reshuffles (Fisher–Yates over an index permutation).
class VectorSource final : public StratumSource {
public:
    explicit VectorSource(std::vector<UtteranceRecord> records)
        : records_(std::move(records)), order_(records_.size()) {
        std::iota(order_.begin(), order_.end(), std::size_t{0});
    }

    std::optional<UtteranceRecord> next() override {
        if (pos_ >= order_.size())
            return std::nullopt;
        return records_[order_[pos_++]];
    }

    void restart(std::uint64_t seed) override {
        pos_ = 0;
        Rng rng(seed);
        for (std::size_t i = order_.size(); i > 1; --i)
            std::swap(order_[i - 1], order_[rng.bounded(i)]);
    }

    std::size_t size() const override { return records_.size(); }

private:
    std::vector<UtteranceRecord> records_;
    std::vector<std::size_t> order_;
    std::size_t pos_ = 0;
};

}  // namespace corpusmix
