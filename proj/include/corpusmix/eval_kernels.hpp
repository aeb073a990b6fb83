#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "corpusmix/eval.hpp"

namespace corpusmix::kernels {

// Data-parallel scoring over utterances. Each *_parallel kernel distributes
// the per-utterance map across OpenMP threads and reduces in index order, so
// its output is byte-identical to the serial reference at any thread count.
// Builds without OpenMP fall back to the serial path.

bool openmp_enabled();
int max_threads();

std::vector<std::string> normalize_texts_serial(std::span<const std::string> texts);
std::vector<std::string> normalize_texts_parallel(std::span<const std::string> texts);

std::vector<WerBreakdown> score_utterances_serial(std::span<const std::string> refs,
                                                  std::span<const std::string> hyps);
std::vector<WerBreakdown> score_utterances_parallel(std::span<const std::string> refs,
                                                    std::span<const std::string> hyps);

// Replicate r is seeded by (seed, r) alone, independent of which thread runs
// it; sorting the replicate scores afterwards erases scheduling order. Equals
// bootstrap_wer_ci bit for bit.
ConfidenceInterval bootstrap_wer_ci_parallel(std::span<const UttErrors> per_utt,
                                             int replications = 10000, double level = 0.95,
                                             std::uint64_t seed = 0);

struct CorpusWer {
    std::vector<WerBreakdown> per_utt;
    WerBreakdown pooled;
};

// Normalize both sides, score each pair, pool. refs and hyps must be equal
// length.
CorpusWer score_corpus(std::span<const std::string> refs, std::span<const std::string> hyps,
                       bool parallel);

}  // namespace corpusmix::kernels
