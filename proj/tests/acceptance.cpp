// End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
// exits with the number of failures. argv[1] is the CLI binary, used by the
// process-level determinism checks.

#include <unistd.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <fstream>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "corpusmix/bucketing.hpp"
#include "corpusmix/eval.hpp"
#include "corpusmix/manifest.hpp"
#include "corpusmix/mux.hpp"
#include "corpusmix/prompts.hpp"
#include "corpusmix/rng.hpp"
#include "corpusmix/simulate.hpp"
#include "corpusmix/stream.hpp"
#include "corpusmix/synthetic.hpp"
#include "corpusmix/weights.hpp"

using namespace corpusmix;

namespace {

std::string fmt(const char* pattern, ...) {
    char buf[1024];
    va_list args;
    va_start(args, pattern);
    std::vsnprintf(buf, sizeof(buf), pattern, args);
    va_end(args);
    return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// Published operating-point hours (thousands of hours scaled out) and the
// alpha = 0.5 sampling weights they induce, evaluated independently at
// 50-digit precision and frozen here.
const std::map<std::string, double> kHours = {
    {"en", 63.4e3}, {"de", 6.1e3}, {"es", 6.6e3}, {"fr", 5.1e3}, {"ns", 0.3e3}};
const std::map<std::string, double> kHalfWeights = {
    {"en", 0.503716850241423653592843646917},
    {"de", 0.156245229975117230052807019709},
    {"es", 0.162522621110915799954951924663},
    {"fr", 0.142865359427704612556715678355},
    {"ns", 0.0346499392448387038426817303567}};

// ---------------------------------------------------------------- criterion 1

bool padding_efficiency(std::string& detail) {
    const auto t0 = std::chrono::steady_clock::now();
    SyntheticSpec spec;
    spec.count = 1000000;
    spec.seed = 1;  // log-uniform [1, 40] s by default
    auto mean_padding = [&](int num_buckets) {
        SimulationOptions options;
        options.mode = MuxMode::single_pass;
        options.seed = 11;
        options.bucketing.num_buckets = num_buckets;
        return run_simulation(generate_synthetic(spec), options).padding.mean;
    };
    const double fine = mean_padding(31);
    const double coarse = mean_padding(1);
    const double elapsed = seconds_since(t0);
    detail = fmt("mean padding %.4f with 31 buckets (< 0.05), %.4f with 1 bucket (> 0.25), "
                 "%.1f s for 2x10^6 records (< 60 s)",
                 fine, coarse, elapsed);
    return fine < 0.05 && coarse > 0.25 && elapsed < 60.0;
}

// ---------------------------------------------------------------- criterion 2

std::vector<UtteranceRecord> records_for_hours(
    const std::vector<std::pair<std::string, std::pair<std::string, double>>>& tree) {
    std::vector<UtteranceRecord> records;
    for (const auto& [lang, rest] : tree) {
        UtteranceRecord rec;
        rec.id = lang + "/" + rest.first;
        rec.lang = lang;
        rec.dataset = rest.first;
        rec.duration = rest.second * 3600.0;
        records.push_back(std::move(rec));
    }
    return records;
}

bool weight_exactness(std::string& detail) {
    double worst_half = 0.0;
    const auto half = temperature_weights(kHours, 0.5);
    for (const auto& [name, want] : kHalfWeights)
        worst_half = std::max(worst_half, std::abs(half.entries.at(name) - want));

    std::vector<std::pair<std::string, std::pair<std::string, double>>> flat;
    for (const auto& [name, hours] : kHours) flat.push_back({name, {"d", hours}});
    const auto stats = corpus_stats(records_for_hours(flat), Stratify::language);
    const auto natural = natural_weights(stats);
    const auto alpha_one = temperature_weights(kHours, 1.0);
    double worst_one = 0.0;
    for (const auto& [name, want] : natural.entries)
        worst_one = std::max(worst_one, std::abs(alpha_one.entries.at(name) - want));

    const auto alpha_zero = temperature_weights(kHours, 0.0);
    double worst_zero = 0.0;
    for (const auto& [name, w] : alpha_zero.entries)
        worst_zero = std::max(worst_zero, std::abs(w - 0.2));

    // Hierarchical product weights over a two-level split of the same hours;
    // their language marginals must reproduce the flat language weights.
    const std::vector<std::pair<std::string, std::pair<std::string, double>>> tree = {
        {"en", {"mls", 30.0e3}}, {"en", {"fisher", 33.4e3}}, {"de", {"dall", 6.1e3}},
        {"es", {"eall", 6.6e3}}, {"fr", {"fall", 5.1e3}},    {"ns", {"noise", 0.3e3}}};
    const auto tree_stats = corpus_stats(records_for_hours(tree), Stratify::language_then_dataset);
    const auto product = hierarchical_weights(tree_stats, 0.5, 0.5);
    std::map<std::string, double> marginals;
    for (const auto& [key, w] : product.entries)
        marginals[key.substr(0, key.find('/'))] += w;
    double worst_marginal = 0.0;
    for (const auto& [name, want] : kHalfWeights)
        worst_marginal = std::max(worst_marginal, std::abs(marginals.at(name) - want));

    detail = fmt("alpha=0.5 vs 50-digit oracle %.2e (<= 1e-12), alpha=1 vs natural %.2e "
                 "(<= 1e-15), alpha=0 vs uniform %.2e (<= 1e-15), hierarchical marginals %.2e "
                 "(<= 1e-12)",
                 worst_half, worst_one, worst_zero, worst_marginal);
    return worst_half <= 1e-12 && worst_one <= 1e-15 && worst_zero <= 1e-15 &&
           worst_marginal <= 1e-12;
}

// ---------------------------------------------------------------- criterion 3

bool mux_stationarity(std::string& detail) {
    std::map<std::string, std::unique_ptr<StratumSource>> sources;
    for (const auto& [name, weight] : kHalfWeights) {
        (void)weight;
        std::vector<UtteranceRecord> records(1000);
        for (std::size_t i = 0; i < records.size(); ++i) {
            records[i].id = name + "-" + std::to_string(i);
            records[i].lang = name;
            records[i].dataset = "d";
            records[i].duration = 5.0;
        }
        sources.emplace(name, std::make_unique<VectorSource>(std::move(records)));
    }
    MuxConfig config;
    config.weights.entries = kHalfWeights;
    config.seed = 2026;
    config.mode = MuxMode::infinite_repeat;
    StreamMux mux(std::move(sources), config);

    constexpr int kDraws = 1000000, kWindow = 10000, kWindows = kDraws / kWindow;
    std::map<std::string, long long> window_counts;
    int good_windows = 0;
    for (int i = 0; i < kDraws; ++i) {
        const auto rec = mux.next();
        ++window_counts[rec->lang];
        if ((i + 1) % kWindow == 0) {
            bool window_ok = true;
            for (const auto& [name, p] : kHalfWeights) {
                const double freq =
                    static_cast<double>(window_counts[name]) / static_cast<double>(kWindow);
                const double sigma = std::sqrt(p * (1.0 - p) / kWindow);
                if (std::abs(freq - p) > 3.0 * sigma) window_ok = false;
            }
            good_windows += window_ok ? 1 : 0;
            window_counts.clear();
        }
    }

    double worst = 0.0;
    for (const auto& [name, count] : mux.draw_counts()) {
        const double freq = static_cast<double>(count) / static_cast<double>(kDraws);
        worst = std::max(worst, std::abs(freq - kHalfWeights.at(name)));
    }
    detail = fmt("max |frequency - target| %.5f over 10^6 draws (<= 0.005), %d/%d windows "
                 "inside the 3-sigma binomial bound (>= 95)",
                 worst, good_windows, kWindows);
    return worst <= 0.005 && good_windows >= 95;
}

// ---------------------------------------------------------------- criterion 4

bool conservation_invariants(std::string& detail) {
    long long violations = 0;
    constexpr int kSeeds = 100;
    for (int seed = 0; seed < kSeeds; ++seed) {
        SyntheticSpec spec;
        spec.count = 10000;
        spec.seed = 1000 + static_cast<std::uint64_t>(seed);
        spec.strata = {{"en", "a", 0.6}, {"de", "b", 0.3}, {"fr", "c", 0.1}};
        auto records = generate_synthetic(spec);

        std::multiset<std::string> want;
        for (const auto& rec : records) want.insert(rec.id);

        SimulationOptions options;
        options.mode = MuxMode::single_pass;
        options.seed = static_cast<std::uint64_t>(seed);
        options.bucketing.num_buckets = 1 + seed % 8;
        options.bucketing.buffer_size = 500 + static_cast<std::size_t>(seed % 5) * 100;
        options.shuffle_buffer_size = static_cast<std::size_t>(seed % 3) * 50;

        std::multiset<std::string> got;
        std::vector<MiniBatch> batches;
        const auto report = run_simulation(std::move(records), options,
                                           [&](const MiniBatch& batch) { batches.push_back(batch); });
        for (const auto& batch : batches) {
            if (!batch.oversize &&
                batch.total_effective_duration > options.bucketing.batch_budget)
                ++violations;
            for (const auto& rec : batch.records) {
                got.insert(rec.id);
                if (assign_bucket(rec.duration, report.bucket_spec) != batch.bucket_index)
                    ++violations;
            }
        }
        if (got != want) ++violations;
    }
    detail = fmt("%lld violations of id conservation, budget, and bucket homogeneity over "
                 "%d seeds x 10^4 records (= 0)",
                 violations, kSeeds);
    return violations == 0;
}

// ---------------------------------------------------------------- criterion 5

struct OracleCell {
    int cost = 0;
    int di = 0;
};

OracleCell oracle_align(const std::vector<std::string>& r, const std::vector<std::string>& h,
                        std::size_t i, std::size_t j,
                        std::vector<std::optional<OracleCell>>& memo) {
    const std::size_t m = h.size();
    auto& slot = memo[i * (m + 1) + j];
    if (slot) return *slot;
    OracleCell best;
    if (i == r.size()) {
        best = {static_cast<int>(m - j), static_cast<int>(m - j)};
    } else if (j == m) {
        best = {static_cast<int>(r.size() - i), static_cast<int>(r.size() - i)};
    } else {
        const auto diag = oracle_align(r, h, i + 1, j + 1, memo);
        best = {diag.cost + (r[i] == h[j] ? 0 : 1), diag.di};
        const auto down = oracle_align(r, h, i + 1, j, memo);
        const auto right = oracle_align(r, h, i, j + 1, memo);
        const OracleCell del{down.cost + 1, down.di + 1};
        const OracleCell ins{right.cost + 1, right.di + 1};
        auto better = [](const OracleCell& a, const OracleCell& b) {
            return a.cost != b.cost ? a.cost < b.cost : a.di < b.di;
        };
        if (better(del, best)) best = del;
        if (better(ins, best)) best = ins;
    }
    slot = best;
    return best;
}

std::string join_words(const std::vector<std::string>& words) {
    std::string out;
    for (const auto& w : words) {
        if (!out.empty()) out.push_back(' ');
        out += w;
    }
    return out;
}

bool wer_oracle(std::string& detail) {
    Rng rng(55);
    const std::vector<std::string> alphabet = {"a", "b", "c"};
    int mismatches = 0;
    for (int trial = 0; trial < 1000; ++trial) {
        std::vector<std::string> r, h;
        const std::size_t n = rng.bounded(9), m = rng.bounded(9);
        for (std::size_t i = 0; i < n; ++i) r.push_back(alphabet[rng.bounded(3)]);
        for (std::size_t j = 0; j < m; ++j) h.push_back(alphabet[rng.bounded(3)]);
        std::vector<std::optional<OracleCell>> memo((n + 1) * (m + 1));
        const auto want = oracle_align(r, h, 0, 0, memo);
        const auto got = word_error_rate(join_words(r), join_words(h));
        const bool match = got.errors() == want.cost &&
                           got.substitutions == want.cost - want.di &&
                           got.deletions + got.insertions == want.di &&
                           got.ref_words == static_cast<int>(n);
        mismatches += match ? 0 : 1;
    }

    int nonzero_self = 0;
    const std::vector<std::string> words = {"one", "two", "three", "vier", "fünf"};
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<std::string> x;
        const std::size_t len = rng.bounded(20);
        for (std::size_t i = 0; i < len; ++i) x.push_back(words[rng.bounded(words.size())]);
        const std::string text = normalize_eval_text(join_words(x));
        const auto self = word_error_rate(text, text);
        if (self.wer != 0.0 || self.errors() != 0) ++nonzero_self;
    }
    detail = fmt("%d/1000 oracle mismatches (= 0), %d/100 nonzero self-WERs (= 0)", mismatches,
                 nonzero_self);
    return mismatches == 0 && nonzero_self == 0;
}

// ---------------------------------------------------------------- criterion 6

double reference_bleu(const std::vector<std::vector<std::string>>& refs,
                      const std::vector<std::vector<std::string>>& hyps, int max_n) {
    long long ref_len = 0, hyp_len = 0;
    for (std::size_t s = 0; s < refs.size(); ++s) {
        ref_len += static_cast<long long>(refs[s].size());
        hyp_len += static_cast<long long>(hyps[s].size());
    }
    if (hyp_len == 0) return 0.0;
    double log_sum = 0.0;
    for (int n = 1; n <= max_n; ++n) {
        long long num = 0, den = 0;
        for (std::size_t s = 0; s < refs.size(); ++s) {
            std::map<std::vector<std::string>, int> rc, hc;
            for (std::size_t i = 0; i + n <= refs[s].size(); ++i)
                ++rc[{refs[s].begin() + i, refs[s].begin() + i + n}];
            for (std::size_t i = 0; i + n <= hyps[s].size(); ++i)
                ++hc[{hyps[s].begin() + i, hyps[s].begin() + i + n}];
            for (const auto& [key, count] : hc) {
                den += count;
                if (auto it = rc.find(key); it != rc.end()) num += std::min(count, it->second);
            }
        }
        if (num == 0) return 0.0;
        log_sum += std::log(static_cast<double>(num) / static_cast<double>(den));
    }
    const double bp = std::exp(
        std::min(0.0, 1.0 - static_cast<double>(ref_len) / static_cast<double>(hyp_len)));
    return 100.0 * bp * std::exp(log_sum / max_n);
}

bool bleu_oracle(std::string& detail) {
    auto toks = [](const std::vector<std::string>& sentences) {
        std::vector<std::vector<std::string>> out;
        for (const auto& s : sentences) out.push_back(bleu_tokenize(s));
        return out;
    };
    const auto refs = toks({"the cat sat on the mat", "guten morgen"});
    bool hand_ok = corpus_bleu(refs, refs).score == 100.0;
    hand_ok = hand_ok && corpus_bleu(refs, toks({"", ""})).score == 0.0;
    const auto partial = corpus_bleu(toks({"a b c d"}), toks({"a b x d"}));
    hand_ok = hand_ok && partial.score == 0.0 && partial.precisions[0] == 0.75 &&
              std::abs(partial.precisions[1] - 1.0 / 3.0) < 1e-15;
    const auto brevity = corpus_bleu(toks({"a b c d e"}), toks({"a b c d"}));
    hand_ok = hand_ok && std::abs(brevity.score - 100.0 * std::exp(-0.25)) < 1e-12;

    Rng rng(66);
    const std::vector<std::string> words = {"a", "b", "c", "d", "e", "f", "g"};
    double worst = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<std::vector<std::string>> refs2, hyps2;
        const std::size_t sentences = 1 + rng.bounded(12);
        for (std::size_t s = 0; s < sentences; ++s) {
            std::vector<std::string> r, h;
            const std::size_t rl = rng.bounded(12), hl = rng.bounded(12);
            for (std::size_t i = 0; i < rl; ++i) r.push_back(words[rng.bounded(words.size())]);
            for (std::size_t i = 0; i < hl; ++i) h.push_back(words[rng.bounded(words.size())]);
            refs2.push_back(std::move(r));
            hyps2.push_back(std::move(h));
        }
        const int max_n = 1 + static_cast<int>(rng.bounded(4));
        worst = std::max(worst, std::abs(corpus_bleu(refs2, hyps2, max_n).score -
                                         reference_bleu(refs2, hyps2, max_n)));
    }
    detail = fmt("hand-computed cases %s, max |score - independent scorer| %.2e over 100 random "
                 "corpora (<= 1e-9)",
                 hand_ok ? "exact" : "WRONG", worst);
    return hand_ok && worst <= 1e-9;
}

// ---------------------------------------------------------------- criterion 7

std::vector<UttErrors> binomial_corpus(std::size_t n, Rng& rng) {
    std::vector<UttErrors> utts(n);
    for (auto& u : utts) {
        u.ref_words = 10;
        u.errors = 0;
        for (int k = 0; k < 10; ++k) u.errors += rng.bounded(10) == 0 ? 1 : 0;
    }
    return utts;
}

bool bootstrap_behavior(std::string& detail) {
    Rng rng(77);
    const auto sample = binomial_corpus(200, rng);
    const auto a = bootstrap_wer_ci(sample, 10000, 0.95, 5);
    const auto b = bootstrap_wer_ci(sample, 10000, 0.95, 5);
    const bool deterministic = a.lower == b.lower && a.upper == b.upper && a.point == b.point;

    int covered = 0;
    constexpr int kTrials = 500;
    for (int trial = 0; trial < kTrials; ++trial) {
        const auto utts = binomial_corpus(300, rng);
        const auto ci =
            bootstrap_wer_ci(utts, 10000, 0.95, static_cast<std::uint64_t>(trial));
        if (ci.lower <= 0.1 && 0.1 <= ci.upper) ++covered;
    }

    double widths[3];
    const std::size_t sizes[3] = {100, 1000, 10000};
    for (int i = 0; i < 3; ++i) {
        const auto utts = binomial_corpus(sizes[i], rng);
        const auto ci = bootstrap_wer_ci(utts, 10000, 0.95, 9);
        widths[i] = ci.upper - ci.lower;
    }
    const bool monotone = widths[0] > widths[1] && widths[1] > widths[2];
    detail = fmt("deterministic %s, true WER covered in %d/%d trials (>= 465), interval widths "
                 "%.4f > %.4f > %.4f over n = 10^2, 10^3, 10^4",
                 deterministic ? "yes" : "NO", covered, kTrials, widths[0], widths[1], widths[2]);
    return deterministic && covered >= 465 && monotone;
}

// ---------------------------------------------------------------- criterion 8

bool token_bijection(std::string& detail) {
    const auto layout = TokenLayout::make({"en", "de", "es", "fr"});
    int failures = 0;
    for (int id = 0; id < layout.total_vocab(); ++id) {
        const auto tok = resolve_token(id, layout);
        const int back = tok.kind == TokenKind::special
                             ? global_token_id(tok.kind, 0, tok.local_id, layout)
                             : global_token_id(tok.kind, *tok.lang_index, tok.local_id, layout);
        if (back != id) ++failures;
    }

    PromptSpec translate;
    translate.task = Task::translate;
    translate.source_lang = "en";
    translate.target_lang = "de";
    translate.pnc = true;
    const auto ast = build_prompt(translate, layout).tokens;
    const bool ast_ok = ast == std::vector<std::string>{"<|startoftranscript|>", "<|en|>",
                                                        "<|translate|>", "<|de|>", "<|pnc|>"};

    PromptSpec transcribe;
    transcribe.task = Task::transcribe;
    transcribe.source_lang = "fr";
    transcribe.pnc = false;
    const auto asr = build_prompt(transcribe, layout).tokens;
    const bool asr_ok = asr == std::vector<std::string>{"<|startoftranscript|>", "<|fr|>",
                                                        "<|transcribe|>", "<|fr|>", "<|nopnc|>"};

    detail = fmt("%d/%d round-trip failures (= 0), source-before/target-after task-token order "
                 "%s",
                 failures, layout.total_vocab(), ast_ok && asr_ok ? "exact" : "WRONG");
    return failures == 0 && ast_ok && asr_ok;
}

// ---------------------------------------------------------------- criterion 9

std::string run_cmd(const std::string& cmd) {
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) return "<popen failed>";
    std::string out;
    char buf[4096];
    std::size_t got;
    while ((got = std::fread(buf, 1, sizeof(buf), pipe)) > 0) out.append(buf, got);
    const int status = pclose(pipe);
    if (status != 0) out += "\n<exit " + std::to_string(status) + ">";
    return out;
}

std::string drop_wall_time(const std::string& text) {
    std::string out;
    std::size_t pos = 0;
    while (pos < text.size()) {
        const auto end = text.find('\n', pos);
        const auto line = text.substr(pos, end == std::string::npos ? std::string::npos
                                                                    : end - pos + 1);
        if (line.find("wall_time_seconds") == std::string::npos) out += line;
        pos = end == std::string::npos ? text.size() : end + 1;
    }
    return out;
}

bool process_determinism(const std::string& cli, std::string& detail) {
    if (cli.empty()) {
        detail = "CLI binary path missing (pass it as argv[1])";
        return false;
    }
    const std::string quoted = "'" + cli + "'";
    const std::string sim = quoted +
                            " simulate --synthetic 20000 --dist loguniform:1:40"
                            " --mode single_pass --seed 7 2>/dev/null";
    const auto sim_a = drop_wall_time(run_cmd("OMP_NUM_THREADS=1 " + sim));
    const auto sim_b = drop_wall_time(run_cmd("OMP_NUM_THREADS=1 " + sim));
    const auto sim_c = drop_wall_time(run_cmd("OMP_NUM_THREADS=4 " + sim));
    const bool sim_ok = !sim_a.empty() && sim_a == sim_b && sim_a == sim_c;

    const std::string ref_path = "/tmp/corpusmix-acc-ref-" + std::to_string(getpid()) + ".txt";
    const std::string hyp_path = "/tmp/corpusmix-acc-hyp-" + std::to_string(getpid()) + ".txt";
    {
        std::ofstream ref(ref_path), hyp(hyp_path);
        Rng rng(88);
        const std::vector<std::string> words = {"alpha", "beta", "Gamma", "delta,", "epsilon!"};
        for (int line = 0; line < 500; ++line) {
            std::string r, h;
            const std::size_t len = 1 + rng.bounded(12);
            for (std::size_t k = 0; k < len; ++k) {
                const auto& w = words[rng.bounded(words.size())];
                r += (k ? " " : "") + w;
                h += (k ? " " : "") +
                     (rng.bounded(6) == 0 ? words[rng.bounded(words.size())] : w);
            }
            ref << r << '\n';
            hyp << h << '\n';
        }
    }
    const std::string wer = quoted + " eval wer --ref '" + ref_path + "' --hyp '" + hyp_path +
                            "' --parallel --bootstrap 2000 --seed 3 2>/dev/null";
    const auto wer_a = run_cmd("OMP_NUM_THREADS=1 " + wer);
    const auto wer_b = run_cmd("OMP_NUM_THREADS=4 " + wer);
    const auto wer_c = run_cmd("OMP_NUM_THREADS=4 " + wer);
    const bool wer_ok = !wer_a.empty() && wer_a == wer_b && wer_b == wer_c;
    std::remove(ref_path.c_str());
    std::remove(hyp_path.c_str());

    detail = fmt("simulate byte-identical across reruns and 1 vs 4 threads: %s; "
                 "eval wer --parallel --bootstrap byte-identical across 1 vs 4 threads: %s",
                 sim_ok ? "yes" : "NO", wer_ok ? "yes" : "NO");
    return sim_ok && wer_ok;
}

}  // namespace

int main(int argc, char** argv) {
    const std::string cli = argc > 1 ? argv[1] : "";
    int failures = 0;
    auto report = [&](int n, bool (*fn)(std::string&), const char* title) {
        std::string detail;
        bool ok = false;
        try {
            ok = fn(detail);
        } catch (const std::exception& e) {
            detail = std::string("exception: ") + e.what();
        }
        std::printf("%s criterion %d (%s): %s\n", ok ? "PASS" : "FAIL", n, title, detail.c_str());
        std::fflush(stdout);
        failures += ok ? 0 : 1;
    };

    report(1, padding_efficiency, "bucketing padding efficiency");
    report(2, weight_exactness, "sampling weight formulas");
    report(3, mux_stationarity, "multiplexer stationarity");
    report(4, conservation_invariants, "conservation and budget invariants");
    report(5, wer_oracle, "WER oracle equivalence");
    report(6, bleu_oracle, "BLEU oracle equivalence");
    report(7, bootstrap_behavior, "bootstrap confidence intervals");
    report(8, token_bijection, "token-id bijection and prompt layout");

    {
        std::string detail;
        bool ok = false;
        try {
            ok = process_determinism(cli, detail);
        } catch (const std::exception& e) {
            detail = std::string("exception: ") + e.what();
        }
        std::printf("%s criterion 9 (process-level determinism): %s\n", ok ? "PASS" : "FAIL",
                    detail.c_str());
        failures += ok ? 0 : 1;
    }

    return failures;
}
