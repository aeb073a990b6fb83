#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace corpusmix {

// Lowercase, strip punctuation, collapse whitespace. Approximates the usual
// ASR text normalizer without number or abbreviation expansion; always apply
// it to both reference and hypothesis, never mix normalizers.
std::string normalize_eval_text(std::string_view text);

struct WerBreakdown {
    int substitutions = 0;
    int deletions = 0;
    int insertions = 0;
    int ref_words = 0;
    double wer = 0.0;
    // Reference had no words; wer falls back to insertions / max(1, ref_words).
    bool empty_reference = false;

    int errors() const { return substitutions + deletions + insertions; }
    bool operator==(const WerBreakdown&) const = default;
};

// Minimum word-level edit distance with unit costs; among minimum-cost
// alignments, ties resolve toward substitutions over insert+delete pairs.
// Inputs are split on whitespace and must already be normalized.
WerBreakdown word_error_rate(std::string_view ref, std::string_view hyp);

// Pooled corpus score: sums counts over utterances in index order.
WerBreakdown pool_wer(std::span<const WerBreakdown> per_utt);

struct ConfidenceInterval {
    double point = 0.0;
    double lower = 0.0;
    double upper = 0.0;
    double level = 0.95;
    int replications = 0;
};

struct UttErrors {
    int ref_words = 0;
    int errors = 0;
};

// Percentile bootstrap over utterance-level resampling: each replicate
// resamples per_utt with replacement and scores sum(errors)/sum(ref_words),
// the interval is the empirical ((1-level)/2, 1-(1-level)/2) quantile pair.
// Replicate r draws from a generator seeded by (seed, r) alone, so the
// parallel kernel reproduces this output bit for bit. A resample whose
// denominator is zero scores 0.
ConfidenceInterval bootstrap_wer_ci(std::span<const UttErrors> per_utt,
                                    int replications = 10000, double level = 0.95,
                                    std::uint64_t seed = 0);

// Splits on whitespace with each punctuation codepoint emitted as its own
// token: "Hello, world!" -> ["Hello", ",", "world", "!"].
std::vector<std::string> bleu_tokenize(std::string_view text);

struct BleuBreakdown {
    double score = 0.0;  // [0, 100]
    std::vector<double> precisions;
    double brevity_penalty = 1.0;
    long long ref_len = 0;
    long long hyp_len = 0;
};

// Corpus-level unsmoothed BLEU, single reference per hypothesis: geometric
// mean of modified n-gram precisions (n = 1..max_n) times the brevity
// penalty exp(min(0, 1 - ref_len/hyp_len)). Any zero precision zeroes the
// score.
BleuBreakdown corpus_bleu(std::span<const std::vector<std::string>> refs,
                          std::span<const std::vector<std::string>> hyps, int max_n = 4);

// Trim each segment, drop empty ones, join with single spaces.
std::string stitch_long_form(std::span<const std::string> segments);

struct Segment {
    double start = 0.0;
    double end = 0.0;

    bool operator==(const Segment&) const = default;
};

// Non-overlapping chunks covering [0, total_duration]; every chunk spans
// `chunk` seconds except a shorter final remainder.
std::vector<Segment> segment_plan(double total_duration, double chunk = 30.0);

// Codepoints of whitespace-trimmed transcripts per minute of audio; internal
// whitespace counts, leading and trailing does not.
double hallucination_rate(std::span<const std::string> transcripts, double total_minutes);

}  // namespace corpusmix
