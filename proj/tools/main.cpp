#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "corpusmix/error.hpp"
#include "corpusmix/eval.hpp"
#include "corpusmix/eval_kernels.hpp"
#include "corpusmix/manifest.hpp"
#include "corpusmix/simulate.hpp"
#include "corpusmix/synthetic.hpp"
#include "corpusmix/text.hpp"
#include "corpusmix/weights.hpp"

namespace {

using namespace corpusmix;

struct CorpusArgs {
    std::vector<std::string> manifests;
    std::size_t synthetic = 0;
    std::string dist = "loguniform:1:40";
    std::string strata;
    bool skip_bad_lines = false;
    double min_duration = 0.0;
    double max_duration = 0.0;
};

void add_corpus_options(CLI::App* cmd, CorpusArgs& args) {
    cmd->add_option("-m,--manifest", args.manifests, "JSONL manifest path (repeatable)");
    cmd->add_option("--synthetic", args.synthetic,
                    "generate a synthetic corpus of this many records instead of reading "
                    "manifests");
    cmd->add_option("--dist", args.dist,
                    "synthetic duration distribution: loguniform:LO:HI, uniform:LO:HI, "
                    "constant:D");
    cmd->add_option("--synthetic-strata", args.strata,
                    "synthetic strata as lang[/dataset][:share],... (default en/synth)");
    cmd->add_flag("--skip-bad-lines", args.skip_bad_lines,
                  "skip malformed manifest lines instead of aborting");
    cmd->add_option("--min-duration", args.min_duration, "drop records shorter than this")
        ->check(CLI::NonNegativeNumber);
    cmd->add_option("--max-duration", args.max_duration, "drop records longer than this")
        ->check(CLI::NonNegativeNumber);
}

std::vector<SyntheticStratum> parse_strata(const std::string& text) {
    std::vector<SyntheticStratum> out;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto comma = text.find(',', pos);
        std::string piece =
            text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
        if (!piece.empty()) {
            SyntheticStratum s;
            s.share = 1.0;
            if (const auto colon = piece.find(':'); colon != std::string::npos) {
                try {
                    s.share = std::stod(piece.substr(colon + 1));
                } catch (const std::exception&) {
                    throw ConfigError("bad share in --synthetic-strata: " + piece);
                }
                piece.resize(colon);
            }
            if (const auto slash = piece.find('/'); slash != std::string::npos) {
                s.lang = piece.substr(0, slash);
                s.dataset = piece.substr(slash + 1);
            } else {
                s.lang = piece;
                s.dataset = "synth";
            }
            out.push_back(std::move(s));
        }
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    if (out.empty()) throw ConfigError("--synthetic-strata is empty");
    return out;
}

std::vector<UtteranceRecord> load_corpus(const CorpusArgs& args, std::uint64_t seed) {
    if (args.synthetic > 0 && !args.manifests.empty())
        throw ConfigError("--synthetic and --manifest are mutually exclusive");
    if (args.synthetic > 0) {
        SyntheticSpec spec;
        spec.count = args.synthetic;
        spec.seed = seed;
        parse_dist(args.dist, spec);
        if (!args.strata.empty()) spec.strata = parse_strata(args.strata);
        auto records = generate_synthetic(spec);
        std::fprintf(stderr, "generated %zu synthetic records\n", records.size());
        return records;
    }
    if (args.manifests.empty())
        throw ConfigError("no input: pass --manifest or --synthetic");
    ParseOptions opts;
    opts.skip_bad_lines = args.skip_bad_lines;
    if (args.min_duration > 0.0) opts.min_duration = args.min_duration;
    if (args.max_duration > 0.0) opts.max_duration = args.max_duration;
    std::vector<UtteranceRecord> records;
    std::size_t skipped = 0, filtered = 0;
    for (const auto& path : args.manifests) {
        auto result = parse_manifest_file(path, opts);
        skipped += result.errors.size();
        filtered += result.filtered;
        std::move(result.records.begin(), result.records.end(), std::back_inserter(records));
    }
    std::fprintf(stderr, "loaded %zu records from %zu manifests (%zu skipped, %zu filtered)\n",
                 records.size(), args.manifests.size(), skipped, filtered);
    return records;
}

Stratify parse_stratify(const std::string& name) {
    if (name == "language") return Stratify::language;
    if (name == "dataset") return Stratify::dataset;
    if (name == "language_then_dataset") return Stratify::language_then_dataset;
    throw ConfigError("unknown --stratify value: " + name);
}

MuxMode parse_mode(const std::string& name) {
    if (name == "infinite" || name == "infinite_repeat") return MuxMode::infinite_repeat;
    if (name == "single_pass" || name == "single-pass") return MuxMode::single_pass;
    throw ConfigError("unknown --mode value: " + name);
}

BucketingConfig::BinMetric parse_bin_metric(const std::string& name) {
    if (name == "count") return BucketingConfig::BinMetric::count;
    if (name == "duration") return BucketingConfig::BinMetric::duration;
    if (name == "effective") return BucketingConfig::BinMetric::effective;
    throw ConfigError("unknown --bin-metric value: " + name);
}

std::vector<std::string> read_lines(const std::string& path) {
    std::ifstream file;
    std::istream* in = &std::cin;
    if (path != "-") {
        file.open(path);
        if (!file) throw DataError("cannot open " + path);
        in = &file;
    }
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(*in, line)) lines.push_back(line);
    return lines;
}

void print_json(const nlohmann::ordered_json& j) { std::cout << j.dump(2) << "\n"; }

struct PipelineArgs {
    CorpusArgs corpus;
    std::string stratify = "language";
    double alpha = 0.5;
    double alpha_dataset = 0.5;
    int num_buckets = 31;
    double batch_duration = 360.0;
    double quadratic_duration = 20.0;
    bool no_quadratic = false;
    std::size_t buffer_size = 20000;
    std::size_t shuffle_buffer_size = 10000;
    std::string bin_metric = "effective";
    std::string budget_metric = "effective";
    std::uint64_t seed = 0;
    std::uint64_t draws = 0;
    std::string mode = "infinite";
};

void add_pipeline_options(CLI::App* cmd, PipelineArgs& args) {
    add_corpus_options(cmd, args.corpus);
    cmd->add_option("--stratify", args.stratify, "language | dataset | language_then_dataset");
    cmd->add_option("--alpha", args.alpha, "sampling temperature exponent")
        ->capture_default_str();
    cmd->add_option("--alpha-dataset", args.alpha_dataset,
                    "dataset-level exponent for language_then_dataset")
        ->capture_default_str();
    cmd->add_option("--num-buckets", args.num_buckets, "requested duration buckets")
        ->capture_default_str();
    cmd->add_option("--batch-duration", args.batch_duration, "batch budget in seconds")
        ->capture_default_str();
    cmd->add_option("--quadratic-duration", args.quadratic_duration,
                    "quadratic penalty scale q in d + d^2/q")
        ->capture_default_str();
    cmd->add_flag("--no-quadratic", args.no_quadratic, "disable the quadratic duration penalty");
    cmd->add_option("--buffer-size", args.buffer_size, "records buffered across bucket queues")
        ->capture_default_str();
    cmd->add_option("--shuffle-buffer-size", args.shuffle_buffer_size,
                    "streaming shuffle buffer capacity")
        ->capture_default_str();
    cmd->add_option("--bin-metric", args.bin_metric,
                    "mass equalized across buckets: count | duration | effective");
    cmd->add_option("--budget-metric", args.budget_metric,
                    "cost the batch budget constrains: raw | effective");
    cmd->add_option("--seed", args.seed, "master seed")->capture_default_str();
    cmd->add_option("--draws", args.draws, "records to emit (infinite mode)");
    cmd->add_option("--mode", args.mode, "infinite | single_pass")->capture_default_str();
}

SimulationOptions to_options(const PipelineArgs& args) {
    SimulationOptions options;
    options.stratify = parse_stratify(args.stratify);
    options.alpha = args.alpha;
    options.alpha_dataset = args.alpha_dataset;
    options.bucketing.num_buckets = args.num_buckets;
    options.bucketing.batch_budget = args.batch_duration;
    options.bucketing.quadratic_duration =
        args.no_quadratic ? std::nullopt : std::optional<double>(args.quadratic_duration);
    options.bucketing.buffer_size = args.buffer_size;
    options.bucketing.seed = args.seed;
    options.bucketing.bin_metric = parse_bin_metric(args.bin_metric);
    if (args.budget_metric == "raw")
        options.bucketing.budget_metric = BucketingConfig::BudgetMetric::raw;
    else if (args.budget_metric == "effective")
        options.bucketing.budget_metric = BucketingConfig::BudgetMetric::effective;
    else
        throw ConfigError("unknown --budget-metric value: " + args.budget_metric);
    options.shuffle_buffer_size = args.shuffle_buffer_size;
    options.seed = args.seed;
    options.draws = args.draws;
    options.mode = parse_mode(args.mode);
    return options;
}

int run_weights(const CorpusArgs& corpus_args, const std::string& stratify_name, double alpha,
                double alpha_dataset, std::uint64_t seed) {
    const Stratify stratify = parse_stratify(stratify_name);
    const auto records = load_corpus(corpus_args, seed);
    if (records.empty()) throw DataError("empty corpus");
    const CorpusStats stats = corpus_stats(records, stratify);
    const WeightMap natural = natural_weights(stats);
    const WeightMap weights = stratify == Stratify::language_then_dataset
                                  ? hierarchical_weights(stats, alpha, alpha_dataset)
                                  : temperature_weights(stats.hours_by_name(), alpha);

    nlohmann::ordered_json j;
    j["stratify"] = stratify_name;
    j["alpha"] = alpha;
    if (stratify == Stratify::language_then_dataset) j["alpha_dataset"] = alpha_dataset;
    j["total_hours"] = stats.total_hours;
    j["total_records"] = stats.total_count;
    auto& strata = j["strata"];
    for (const auto& [id, s] : stats.strata) {
        const std::string name = id.name();
        nlohmann::ordered_json row;
        row["hours"] = s.hours;
        row["records"] = s.count;
        row["min_duration"] = s.min_dur;
        row["max_duration"] = s.max_dur;
        row["natural_weight"] = natural.entries.at(name);
        row["weight"] = weights.entries.at(name);
        strata[name] = std::move(row);
    }
    print_json(j);
    return 0;
}

int run_simulate(const PipelineArgs& args) {
    auto records = load_corpus(args.corpus, args.seed);
    const auto report = run_simulation(std::move(records), to_options(args));
    print_json(report.to_json());
    return 0;
}

nlohmann::ordered_json batch_to_json(const MiniBatch& batch) {
    nlohmann::ordered_json j;
    j["bucket"] = batch.bucket_index;
    j["size"] = batch.records.size();
    j["max_duration"] = batch.max_duration;
    j["total_duration"] = batch.total_duration;
    j["total_effective_duration"] = batch.total_effective_duration;
    j["padding_ratio"] = batch.padding_ratio;
    j["oversize"] = batch.oversize;
    auto& recs = j["records"];
    recs = nlohmann::ordered_json::array();
    for (const auto& rec : batch.records) recs.push_back(record_to_json(rec));
    return j;
}

int run_sample(const PipelineArgs& args) {
    auto records = load_corpus(args.corpus, args.seed);
    run_simulation(std::move(records), to_options(args),
                   [](const MiniBatch& batch) { std::cout << batch_to_json(batch).dump() << "\n"; });
    return 0;
}

struct EvalWerArgs {
    std::string ref_path;
    std::string hyp_path;
    bool no_normalize = false;
    bool parallel = false;
    int bootstrap = 0;
    double level = 0.95;
    std::uint64_t seed = 0;
};

int run_eval_wer(const EvalWerArgs& args) {
    const auto refs = read_lines(args.ref_path);
    const auto hyps = read_lines(args.hyp_path);
    if (refs.size() != hyps.size())
        throw DataError("reference and hypothesis files differ in line count: " +
                        std::to_string(refs.size()) + " vs " + std::to_string(hyps.size()));
    if (refs.empty()) throw DataError("empty evaluation input");

    kernels::CorpusWer scored;
    if (args.no_normalize) {
        scored.per_utt = args.parallel ? kernels::score_utterances_parallel(refs, hyps)
                                       : kernels::score_utterances_serial(refs, hyps);
        scored.pooled = pool_wer(scored.per_utt);
    } else {
        scored = kernels::score_corpus(refs, hyps, args.parallel);
    }

    nlohmann::ordered_json j;
    j["utterances"] = refs.size();
    j["ref_words"] = scored.pooled.ref_words;
    j["substitutions"] = scored.pooled.substitutions;
    j["deletions"] = scored.pooled.deletions;
    j["insertions"] = scored.pooled.insertions;
    j["wer"] = scored.pooled.wer;
    std::size_t empty_refs = 0;
    for (const auto& u : scored.per_utt) empty_refs += u.empty_reference ? 1 : 0;
    j["empty_references"] = empty_refs;
    if (args.bootstrap > 0) {
        std::vector<UttErrors> per_utt;
        per_utt.reserve(scored.per_utt.size());
        for (const auto& u : scored.per_utt) per_utt.push_back({u.ref_words, u.errors()});
        const auto ci = args.parallel
                            ? kernels::bootstrap_wer_ci_parallel(per_utt, args.bootstrap,
                                                                 args.level, args.seed)
                            : bootstrap_wer_ci(per_utt, args.bootstrap, args.level, args.seed);
        j["bootstrap"] = {{"replications", ci.replications},
                          {"level", ci.level},
                          {"point", ci.point},
                          {"lower", ci.lower},
                          {"upper", ci.upper}};
    }
    print_json(j);
    return 0;
}

int run_eval_bleu(const std::string& ref_path, const std::string& hyp_path) {
    const auto ref_lines = read_lines(ref_path);
    const auto hyp_lines = read_lines(hyp_path);
    if (ref_lines.size() != hyp_lines.size())
        throw DataError("reference and hypothesis files differ in line count: " +
                        std::to_string(ref_lines.size()) + " vs " +
                        std::to_string(hyp_lines.size()));
    if (ref_lines.empty()) throw DataError("empty evaluation input");

    std::vector<std::vector<std::string>> refs, hyps;
    refs.reserve(ref_lines.size());
    hyps.reserve(hyp_lines.size());
    for (const auto& line : ref_lines) refs.push_back(bleu_tokenize(line));
    for (const auto& line : hyp_lines) hyps.push_back(bleu_tokenize(line));
    const auto bleu = corpus_bleu(refs, hyps);

    nlohmann::ordered_json j;
    j["sentences"] = refs.size();
    j["score"] = bleu.score;
    j["precisions"] = bleu.precisions;
    j["brevity_penalty"] = bleu.brevity_penalty;
    j["ref_length"] = bleu.ref_len;
    j["hyp_length"] = bleu.hyp_len;
    print_json(j);
    return 0;
}

int run_eval_halluc(const std::string& transcripts_path, double minutes) {
    const auto transcripts = read_lines(transcripts_path);
    const double rate = hallucination_rate(transcripts, minutes);
    long long chars = 0;
    for (const auto& t : transcripts)
        chars += static_cast<long long>(count_codepoints(trim_whitespace(t)));

    nlohmann::ordered_json j;
    j["transcripts"] = transcripts.size();
    j["characters"] = chars;
    j["minutes"] = minutes;
    j["chars_per_minute"] = rate;
    print_json(j);
    return 0;
}

int run_eval_stitch(const std::string& segments_path, double total_duration, double chunk) {
    const auto segments = read_lines(segments_path);
    nlohmann::ordered_json j;
    j["segments_in"] = segments.size();
    j["transcript"] = stitch_long_form(segments);
    if (total_duration > 0.0) {
        auto& plan = j["plan"];
        plan = nlohmann::ordered_json::array();
        for (const auto& seg : segment_plan(total_duration, chunk))
            plan.push_back({seg.start, seg.end});
    }
    print_json(j);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"corpus sampling, batching, and speech evaluation toolkit"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "corpusmix 0.1.0");

    auto* weights_cmd =
        app.add_subcommand("weights", "compute stratum statistics and sampling weights");
    CorpusArgs weights_corpus;
    std::string weights_stratify = "language";
    double weights_alpha = 0.5;
    double weights_alpha_dataset = 0.5;
    std::uint64_t weights_seed = 0;
    add_corpus_options(weights_cmd, weights_corpus);
    weights_cmd->add_option("--stratify", weights_stratify,
                            "language | dataset | language_then_dataset");
    weights_cmd->add_option("--alpha", weights_alpha, "sampling temperature exponent")
        ->capture_default_str();
    weights_cmd->add_option("--alpha-dataset", weights_alpha_dataset,
                            "dataset-level exponent for language_then_dataset")
        ->capture_default_str();
    weights_cmd->add_option("--seed", weights_seed, "seed for synthetic corpora")
        ->capture_default_str();

    auto* simulate_cmd =
        app.add_subcommand("simulate", "run the sampling pipeline and report batch statistics");
    PipelineArgs simulate_args;
    add_pipeline_options(simulate_cmd, simulate_args);

    auto* sample_cmd = app.add_subcommand("sample", "emit assembled batches as JSONL");
    PipelineArgs sample_args;
    add_pipeline_options(sample_cmd, sample_args);

    auto* eval_cmd = app.add_subcommand("eval", "scoring utilities");
    eval_cmd->require_subcommand(1);

    auto* wer_cmd = eval_cmd->add_subcommand("wer", "word error rate with optional bootstrap CI");
    EvalWerArgs wer_args;
    wer_cmd->add_option("--ref", wer_args.ref_path, "reference transcripts, one per line")
        ->required();
    wer_cmd->add_option("--hyp", wer_args.hyp_path, "hypothesis transcripts, one per line")
        ->required();
    wer_cmd->add_flag("--no-normalize", wer_args.no_normalize,
                      "score without text normalization");
    wer_cmd->add_flag("--parallel", wer_args.parallel,
                      "score utterances in parallel (identical output)");
    wer_cmd->add_option("--bootstrap", wer_args.bootstrap,
                        "bootstrap replications for a confidence interval (0 = off)");
    wer_cmd->add_option("--level", wer_args.level, "confidence level")->capture_default_str();
    wer_cmd->add_option("--seed", wer_args.seed, "bootstrap seed")->capture_default_str();

    auto* bleu_cmd = eval_cmd->add_subcommand("bleu", "corpus BLEU");
    std::string bleu_ref, bleu_hyp;
    bleu_cmd->add_option("--ref", bleu_ref, "reference translations, one per line")->required();
    bleu_cmd->add_option("--hyp", bleu_hyp, "hypothesis translations, one per line")->required();

    auto* halluc_cmd =
        eval_cmd->add_subcommand("halluc", "hallucinated characters per minute");
    std::string halluc_path;
    double halluc_minutes = 0.0;
    halluc_cmd->add_option("--transcripts", halluc_path, "transcripts, one per line")->required();
    halluc_cmd->add_option("--minutes", halluc_minutes, "total audio minutes")->required();

    auto* stitch_cmd = eval_cmd->add_subcommand("stitch", "join segment transcripts");
    std::string stitch_path;
    double stitch_total = 0.0;
    double stitch_chunk = 30.0;
    stitch_cmd->add_option("--segments", stitch_path, "segment transcripts, one per line")
        ->required();
    stitch_cmd->add_option("--total-duration", stitch_total,
                           "if set, also print the segment plan for this duration");
    stitch_cmd->add_option("--chunk", stitch_chunk, "segment length in seconds")
        ->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (weights_cmd->parsed())
            return run_weights(weights_corpus, weights_stratify, weights_alpha,
                               weights_alpha_dataset, weights_seed);
        if (simulate_cmd->parsed()) return run_simulate(simulate_args);
        if (sample_cmd->parsed()) return run_sample(sample_args);
        if (eval_cmd->parsed()) {
            if (wer_cmd->parsed()) return run_eval_wer(wer_args);
            if (bleu_cmd->parsed()) return run_eval_bleu(bleu_ref, bleu_hyp);
            if (halluc_cmd->parsed()) return run_eval_halluc(halluc_path, halluc_minutes);
            if (stitch_cmd->parsed()) return run_eval_stitch(stitch_path, stitch_total, stitch_chunk);
        }
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const DataError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
