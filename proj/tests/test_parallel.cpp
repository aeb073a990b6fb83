#include <doctest.h>

#ifdef _OPENMP
#include <omp.h>
#endif

#include <string>
#include <vector>

#include "corpusmix/error.hpp"
#include "corpusmix/eval_kernels.hpp"
#include "corpusmix/rng.hpp"

using namespace corpusmix;

namespace {

// A corpus large enough that a scheduling bug would actually reorder results.
struct Corpus {
    std::vector<std::string> refs;
    std::vector<std::string> hyps;
    std::vector<UttErrors> errors;
};

Corpus make_corpus(std::size_t n, std::uint64_t seed) {
    Corpus corpus;
    Rng rng(seed);
    const std::vector<std::string> words = {"One", "two", "THREE", "four,", "five!", "Ähm"};
    for (std::size_t i = 0; i < n; ++i) {
        std::string ref, hyp;
        const std::size_t len = 1 + rng.bounded(12);
        for (std::size_t k = 0; k < len; ++k) {
            const auto& w = words[rng.bounded(words.size())];
            ref += (k ? " " : "") + w;
            // Perturb roughly a fifth of the words.
            hyp += (k ? " " : "") + (rng.bounded(5) == 0 ? words[rng.bounded(words.size())] : w);
        }
        corpus.refs.push_back(std::move(ref));
        corpus.hyps.push_back(std::move(hyp));
        corpus.errors.push_back({1 + static_cast<int>(rng.bounded(25)),
                                 static_cast<int>(rng.bounded(6))});
    }
    return corpus;
}

}  // namespace

TEST_CASE("parallel normalization equals the serial reference") {
    const auto corpus = make_corpus(5000, 1);
    CHECK(kernels::normalize_texts_parallel(corpus.refs) ==
          kernels::normalize_texts_serial(corpus.refs));
}

TEST_CASE("parallel scoring equals the serial reference") {
    const auto corpus = make_corpus(5000, 2);
    const auto serial = kernels::score_utterances_serial(corpus.refs, corpus.hyps);
    const auto parallel = kernels::score_utterances_parallel(corpus.refs, corpus.hyps);
    REQUIRE(serial.size() == parallel.size());
    CHECK(serial == parallel);
}

TEST_CASE("parallel bootstrap is bit-identical to the serial one") {
    const auto corpus = make_corpus(400, 3);
    const auto serial = bootstrap_wer_ci(corpus.errors, 4000, 0.95, 17);
    const auto parallel = kernels::bootstrap_wer_ci_parallel(corpus.errors, 4000, 0.95, 17);
    CHECK(serial.point == parallel.point);
    CHECK(serial.lower == parallel.lower);
    CHECK(serial.upper == parallel.upper);
    CHECK(serial.level == parallel.level);
    CHECK(serial.replications == parallel.replications);
}

TEST_CASE("end-to-end corpus scoring matches across modes") {
    const auto corpus = make_corpus(3000, 4);
    const auto serial = kernels::score_corpus(corpus.refs, corpus.hyps, false);
    const auto parallel = kernels::score_corpus(corpus.refs, corpus.hyps, true);
    CHECK(serial.per_utt == parallel.per_utt);
    CHECK(serial.pooled == parallel.pooled);
    CHECK(serial.pooled.ref_words > 0);

    std::vector<std::string> short_hyps(corpus.hyps.begin(), corpus.hyps.begin() + 10);
    CHECK_THROWS_AS(static_cast<void>(kernels::score_corpus(corpus.refs, short_hyps, true)),
                    ConfigError);
}

#ifdef _OPENMP
TEST_CASE("results do not depend on the thread count") {
    const auto corpus = make_corpus(2000, 5);
    const int saved = omp_get_max_threads();
    std::vector<ConfidenceInterval> cis;
    std::vector<std::vector<WerBreakdown>> scores;
    for (int threads : {1, 2, 4}) {
        omp_set_num_threads(threads);
        cis.push_back(kernels::bootstrap_wer_ci_parallel(corpus.errors, 3000, 0.95, 9));
        scores.push_back(kernels::score_utterances_parallel(corpus.refs, corpus.hyps));
    }
    omp_set_num_threads(saved);
    for (std::size_t i = 1; i < cis.size(); ++i) {
        CHECK(cis[i].lower == cis[0].lower);
        CHECK(cis[i].upper == cis[0].upper);
        CHECK(cis[i].point == cis[0].point);
        CHECK(scores[i] == scores[0]);
    }
}
#endif

TEST_CASE("kernel introspection is coherent") {
    CHECK(kernels::max_threads() >= 1);
#ifdef _OPENMP
    CHECK(kernels::openmp_enabled());
#else
    CHECK_FALSE(kernels::openmp_enabled());
    CHECK(kernels::max_threads() == 1);
#endif
}
