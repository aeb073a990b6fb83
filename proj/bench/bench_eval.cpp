// Compares the serial and OpenMP scoring paths on a synthetic corpus and
// checks they produce identical results while timing both.

#include <chrono>
#include <cstdio>
#include <string>
#include <vector>

#include "corpusmix/eval.hpp"
#include "corpusmix/eval_kernels.hpp"
#include "corpusmix/rng.hpp"

using namespace corpusmix;

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// Reference/hypothesis pairs with word substitutions, drops, and stray
// punctuation so normalization and alignment both have work to do.
void make_corpus(std::size_t n, std::vector<std::string>& refs, std::vector<std::string>& hyps) {
    static const char* kWords[] = {"alpha", "bravo", "charlie", "delta",  "echo",
                                   "foxtrot", "golf", "hotel",  "india",  "juliet",
                                   "kilo",  "lima",  "mike",    "november", "oscar"};
    constexpr std::size_t kVocab = sizeof(kWords) / sizeof(kWords[0]);
    Rng rng(derive_seed(7, "bench-corpus"));
    refs.reserve(n);
    hyps.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t len = 4 + rng.bounded(14);
        std::string ref, hyp;
        for (std::size_t w = 0; w < len; ++w) {
            const char* word = kWords[rng.bounded(kVocab)];
            if (!ref.empty()) ref.push_back(' ');
            ref += word;
            const auto roll = rng.bounded(10);
            if (roll == 0) continue;  // deletion
            if (!hyp.empty()) hyp.push_back(' ');
            hyp += roll == 1 ? kWords[rng.bounded(kVocab)] : word;  // substitution or match
            if (roll == 2) hyp += ",";                              // punctuation noise
        }
        refs.push_back(std::move(ref));
        hyps.push_back(std::move(hyp));
    }
}

}  // namespace

int main(int argc, char** argv) {
    std::size_t n = 200000;
    int replications = 10000;
    if (argc > 1) n = static_cast<std::size_t>(std::stoull(argv[1]));
    if (argc > 2) replications = std::stoi(argv[2]);

    std::printf("openmp: %s, max threads: %d\n", kernels::openmp_enabled() ? "yes" : "no",
                kernels::max_threads());
    std::vector<std::string> refs, hyps;
    make_corpus(n, refs, hyps);
    std::printf("corpus: %zu utterance pairs\n\n", refs.size());

    auto t0 = std::chrono::steady_clock::now();
    const auto serial = kernels::score_corpus(refs, hyps, false);
    const double t_serial = seconds_since(t0);
    std::printf("score_corpus   serial    %8.3f s  (wer %.6f)\n", t_serial, serial.pooled.wer);

    t0 = std::chrono::steady_clock::now();
    const auto parallel = kernels::score_corpus(refs, hyps, true);
    const double t_parallel = seconds_since(t0);
    std::printf("score_corpus   parallel  %8.3f s  (wer %.6f)  speedup %.2fx\n", t_parallel,
                parallel.pooled.wer, t_serial / t_parallel);
    if (!(parallel.per_utt == serial.per_utt)) {
        std::printf("FAIL: parallel scoring differs from serial\n");
        return 1;
    }

    std::vector<UttErrors> per_utt;
    per_utt.reserve(serial.per_utt.size());
    for (const auto& u : serial.per_utt) per_utt.push_back({u.ref_words, u.errors()});

    t0 = std::chrono::steady_clock::now();
    const auto ci_serial = bootstrap_wer_ci(per_utt, replications, 0.95, 42);
    const double b_serial = seconds_since(t0);
    std::printf("bootstrap      serial    %8.3f s  [%.6f, %.6f]\n", b_serial, ci_serial.lower,
                ci_serial.upper);

    t0 = std::chrono::steady_clock::now();
    const auto ci_parallel = kernels::bootstrap_wer_ci_parallel(per_utt, replications, 0.95, 42);
    const double b_parallel = seconds_since(t0);
    std::printf("bootstrap      parallel  %8.3f s  [%.6f, %.6f]  speedup %.2fx\n", b_parallel,
                ci_parallel.lower, ci_parallel.upper, b_serial / b_parallel);
    if (ci_parallel.lower != ci_serial.lower || ci_parallel.upper != ci_serial.upper ||
        ci_parallel.point != ci_serial.point) {
        std::printf("FAIL: parallel bootstrap differs from serial\n");
        return 1;
    }

    std::printf("\nserial and parallel outputs identical\n");
    return 0;
}
