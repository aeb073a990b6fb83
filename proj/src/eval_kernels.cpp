#include "corpusmix/eval_kernels.hpp"

#include <algorithm>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "corpusmix/error.hpp"
#include "corpusmix/numeric.hpp"
#include "corpusmix/rng.hpp"

namespace corpusmix::kernels {

bool openmp_enabled() {
#ifdef _OPENMP
    return true;
#else
    return false;
#endif
}

int max_threads() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

std::vector<std::string> normalize_texts_serial(std::span<const std::string> texts) {
    std::vector<std::string> out(texts.size());
    for (std::size_t i = 0; i < texts.size(); ++i) out[i] = normalize_eval_text(texts[i]);
    return out;
}

std::vector<std::string> normalize_texts_parallel(std::span<const std::string> texts) {
    std::vector<std::string> out(texts.size());
    const auto n = static_cast<long long>(texts.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 64)
#endif
    for (long long i = 0; i < n; ++i)
        out[static_cast<std::size_t>(i)] = normalize_eval_text(texts[static_cast<std::size_t>(i)]);
    return out;
}

std::vector<WerBreakdown> score_utterances_serial(std::span<const std::string> refs,
                                                  std::span<const std::string> hyps) {
    if (refs.size() != hyps.size())
        throw ConfigError("reference and hypothesis corpora differ in size");
    std::vector<WerBreakdown> out(refs.size());
    for (std::size_t i = 0; i < refs.size(); ++i) out[i] = word_error_rate(refs[i], hyps[i]);
    return out;
}

std::vector<WerBreakdown> score_utterances_parallel(std::span<const std::string> refs,
                                                    std::span<const std::string> hyps) {
    if (refs.size() != hyps.size())
        throw ConfigError("reference and hypothesis corpora differ in size");
    std::vector<WerBreakdown> out(refs.size());
    const auto n = static_cast<long long>(refs.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 16)
#endif
    for (long long i = 0; i < n; ++i) {
        const auto k = static_cast<std::size_t>(i);
        out[k] = word_error_rate(refs[k], hyps[k]);
    }
    return out;
}

ConfidenceInterval bootstrap_wer_ci_parallel(std::span<const UttErrors> per_utt, int replications,
                                             double level, std::uint64_t seed) {
    if (per_utt.empty()) throw ConfigError("bootstrap needs at least one utterance");
    if (replications <= 0) throw ConfigError("replications must be positive");
    if (!(level > 0.0 && level < 1.0)) throw ConfigError("level must be in (0, 1)");

    long long total_words = 0, total_errors = 0;
    for (const auto& u : per_utt) {
        total_words += u.ref_words;
        total_errors += u.errors;
    }
    if (total_words == 0) throw DataError("bootstrap reference corpus has no words");

    const std::size_t n = per_utt.size();
    std::vector<double> reps(static_cast<std::size_t>(replications));
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
    for (int r = 0; r < replications; ++r) {
        Rng rng(derive_seed(seed, "bootstrap-rep", static_cast<std::uint64_t>(r)));
        long long words = 0, errors = 0;
        for (std::size_t k = 0; k < n; ++k) {
            const auto& u = per_utt[rng.bounded(n)];
            words += u.ref_words;
            errors += u.errors;
        }
        reps[static_cast<std::size_t>(r)] =
            words > 0 ? static_cast<double>(errors) / static_cast<double>(words) : 0.0;
    }
    std::sort(reps.begin(), reps.end());

    ConfidenceInterval ci;
    ci.point = static_cast<double>(total_errors) / static_cast<double>(total_words);
    ci.level = level;
    ci.replications = replications;
    const double tail = (1.0 - level) / 2.0;
    ci.lower = quantile_sorted(reps, tail);
    ci.upper = quantile_sorted(reps, 1.0 - tail);
    return ci;
}

CorpusWer score_corpus(std::span<const std::string> refs, std::span<const std::string> hyps,
                       bool parallel) {
    const auto norm_refs =
        parallel ? normalize_texts_parallel(refs) : normalize_texts_serial(refs);
    const auto norm_hyps =
        parallel ? normalize_texts_parallel(hyps) : normalize_texts_serial(hyps);
    CorpusWer out;
    out.per_utt = parallel ? score_utterances_parallel(norm_refs, norm_hyps)
                           : score_utterances_serial(norm_refs, norm_hyps);
    out.pooled = pool_wer(out.per_utt);
    return out;
}

}  // namespace corpusmix::kernels
