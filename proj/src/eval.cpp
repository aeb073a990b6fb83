#include "corpusmix/eval.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <utility>

#include "corpusmix/error.hpp"
#include "corpusmix/numeric.hpp"
#include "corpusmix/rng.hpp"
#include "corpusmix/text.hpp"

namespace corpusmix {

std::string normalize_eval_text(std::string_view text) {
    std::string out;
    out.reserve(text.size());
    bool pending_space = false;
    std::size_t i = 0;
    while (i < text.size()) {
        const char32_t cp = decode_utf8(text, i);
        if (is_whitespace(cp) || is_punctuation(cp)) {
            pending_space = !out.empty();
            continue;
        }
        if (pending_space) {
            out.push_back(' ');
            pending_space = false;
        }
        append_utf8(out, to_lower(cp));
    }
    return out;
}

namespace {

std::vector<std::string_view> split_words(std::string_view text) {
    std::vector<std::string_view> words;
    std::size_t i = 0;
    while (i < text.size()) {
        std::size_t at = i;
        char32_t cp = decode_utf8(text, i);
        if (is_whitespace(cp)) continue;
        const std::size_t begin = at;
        std::size_t end = i;
        while (i < text.size()) {
            at = i;
            cp = decode_utf8(text, i);
            if (is_whitespace(cp)) break;
            end = i;
        }
        words.push_back(text.substr(begin, end - begin));
    }
    return words;
}

// DP cell: minimal (edit cost, deletions + insertions), compared
// lexicographically so minimum-cost ties resolve toward substitutions.
struct Cell {
    int cost = 0;
    int di = 0;

    bool operator<(const Cell& o) const {
        return cost != o.cost ? cost < o.cost : di < o.di;
    }
};

}  // namespace

WerBreakdown word_error_rate(std::string_view ref, std::string_view hyp) {
    const auto r = split_words(ref);
    const auto h = split_words(hyp);
    const int n = static_cast<int>(r.size());
    const int m = static_cast<int>(h.size());

    std::vector<Cell> prev(m + 1), cur(m + 1);
    for (int j = 0; j <= m; ++j) prev[j] = {j, j};
    for (int i = 1; i <= n; ++i) {
        cur[0] = {i, i};
        for (int j = 1; j <= m; ++j) {
            const bool match = r[i - 1] == h[j - 1];
            Cell best{prev[j - 1].cost + (match ? 0 : 1), prev[j - 1].di};
            const Cell del{prev[j].cost + 1, prev[j].di + 1};
            const Cell ins{cur[j - 1].cost + 1, cur[j - 1].di + 1};
            if (del < best) best = del;
            if (ins < best) best = ins;
            cur[j] = best;
        }
        std::swap(prev, cur);
    }

    // Alignment counts follow from (cost, D+I) alone: every alignment
    // satisfies D - I = n - m, so D and I split the di total around it.
    const Cell best = prev[m];
    WerBreakdown out;
    out.ref_words = n;
    out.substitutions = best.cost - best.di;
    out.deletions = (best.di + (n - m)) / 2;
    out.insertions = (best.di - (n - m)) / 2;
    out.empty_reference = n == 0;
    out.wer = static_cast<double>(out.errors()) / std::max(1, n);
    return out;
}

WerBreakdown pool_wer(std::span<const WerBreakdown> per_utt) {
    WerBreakdown pooled;
    for (const auto& u : per_utt) {
        pooled.substitutions += u.substitutions;
        pooled.deletions += u.deletions;
        pooled.insertions += u.insertions;
        pooled.ref_words += u.ref_words;
    }
    pooled.empty_reference = pooled.ref_words == 0;
    pooled.wer = static_cast<double>(pooled.errors()) / std::max(1, pooled.ref_words);
    return pooled;
}

ConfidenceInterval bootstrap_wer_ci(std::span<const UttErrors> per_utt, int replications,
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

std::vector<std::string> bleu_tokenize(std::string_view text) {
    std::vector<std::string> tokens;
    std::string cur;
    std::size_t i = 0;
    while (i < text.size()) {
        const char32_t cp = decode_utf8(text, i);
        if (is_whitespace(cp)) {
            if (!cur.empty()) tokens.push_back(std::move(cur));
            cur.clear();
        } else if (is_punctuation(cp)) {
            if (!cur.empty()) tokens.push_back(std::move(cur));
            cur.clear();
            std::string p;
            append_utf8(p, cp);
            tokens.push_back(std::move(p));
        } else {
            append_utf8(cur, cp);
        }
    }
    if (!cur.empty()) tokens.push_back(std::move(cur));
    return tokens;
}

namespace {

// N-grams keyed by their tokens joined with an unlikely separator byte.
std::map<std::string, int> ngram_counts(const std::vector<std::string>& tokens, int n) {
    std::map<std::string, int> counts;
    if (static_cast<int>(tokens.size()) < n) return counts;
    for (std::size_t i = 0; i + n <= tokens.size(); ++i) {
        std::string key = tokens[i];
        for (int k = 1; k < n; ++k) {
            key.push_back('\x1f');
            key += tokens[i + k];
        }
        ++counts[key];
    }
    return counts;
}

}  // namespace

BleuBreakdown corpus_bleu(std::span<const std::vector<std::string>> refs,
                          std::span<const std::vector<std::string>> hyps, int max_n) {
    if (refs.size() != hyps.size())
        throw ConfigError("reference and hypothesis corpora differ in size");
    if (refs.empty()) throw ConfigError("BLEU needs a non-empty corpus");
    if (max_n < 1) throw ConfigError("max_n must be at least 1");

    BleuBreakdown out;
    out.precisions.assign(static_cast<std::size_t>(max_n), 0.0);
    std::vector<long long> numer(static_cast<std::size_t>(max_n), 0);
    std::vector<long long> denom(static_cast<std::size_t>(max_n), 0);
    for (std::size_t s = 0; s < refs.size(); ++s) {
        out.ref_len += static_cast<long long>(refs[s].size());
        out.hyp_len += static_cast<long long>(hyps[s].size());
        for (int n = 1; n <= max_n; ++n) {
            const auto ref_counts = ngram_counts(refs[s], n);
            long long clipped = 0, total = 0;
            for (const auto& [key, count] : ngram_counts(hyps[s], n)) {
                total += count;
                auto it = ref_counts.find(key);
                if (it != ref_counts.end()) clipped += std::min(count, it->second);
            }
            numer[static_cast<std::size_t>(n - 1)] += clipped;
            denom[static_cast<std::size_t>(n - 1)] += total;
        }
    }

    out.brevity_penalty =
        out.hyp_len == 0
            ? 0.0
            : std::exp(std::min(0.0, 1.0 - static_cast<double>(out.ref_len) /
                                               static_cast<double>(out.hyp_len)));
    double log_sum = 0.0;
    bool zero = false;
    for (int n = 0; n < max_n; ++n) {
        const double p = denom[n] > 0 ? static_cast<double>(numer[n]) / static_cast<double>(denom[n])
                                      : 0.0;
        out.precisions[static_cast<std::size_t>(n)] = p;
        if (p == 0.0)
            zero = true;
        else
            log_sum += std::log(p);
    }
    out.score = zero ? 0.0 : 100.0 * out.brevity_penalty * std::exp(log_sum / max_n);
    return out;
}

std::string stitch_long_form(std::span<const std::string> segments) {
    std::string out;
    for (const auto& seg : segments) {
        const auto trimmed = trim_whitespace(seg);
        if (trimmed.empty()) continue;
        if (!out.empty()) out.push_back(' ');
        out += trimmed;
    }
    return out;
}

std::vector<Segment> segment_plan(double total_duration, double chunk) {
    if (!(total_duration > 0.0)) throw ConfigError("total duration must be positive");
    if (!(chunk > 0.0)) throw ConfigError("chunk duration must be positive");
    std::vector<Segment> plan;
    for (int k = 0; k * chunk < total_duration; ++k)
        plan.push_back({k * chunk, std::min((k + 1) * chunk, total_duration)});
    return plan;
}

double hallucination_rate(std::span<const std::string> transcripts, double total_minutes) {
    if (!(total_minutes > 0.0)) throw ConfigError("total minutes must be positive");
    long long chars = 0;
    for (const auto& t : transcripts)
        chars += static_cast<long long>(count_codepoints(trim_whitespace(t)));
    return static_cast<double>(chars) / total_minutes;
}

}  // namespace corpusmix
