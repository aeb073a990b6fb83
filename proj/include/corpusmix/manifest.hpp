#pragma once

#include <cstdint>
#include <functional>
#include <istream>
#include <limits>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

namespace corpusmix {

enum class Task { transcribe, translate };

// One manifest row. Metadata only; `audio` is an opaque path that is never
// opened by this toolkit.
struct UtteranceRecord {
    std::string id;
    std::string audio;  // empty when absent
    double duration = 0.0;  // seconds
    std::string lang;
    std::string dataset;
    std::string text;
    bool pnc = false;
    Task task = Task::transcribe;
    std::string target_lang;  // translate only
    std::string target_text;  // translate only

    bool operator==(const UtteranceRecord&) const = default;
};

// Returns the violated invariant, or nullopt when the record is valid.
std::optional<std::string> validate_record(const UtteranceRecord& rec);

nlohmann::ordered_json record_to_json(const UtteranceRecord& rec);
UtteranceRecord record_from_json(const nlohmann::json& j);

struct ParseOptions {
    // Abort on the first bad line (default) or skip it and keep the error.
    bool skip_bad_lines = false;
    // Optional ingest-time duration window; records outside it are dropped.
    std::optional<double> min_duration;
    std::optional<double> max_duration;
};

struct ParseError {
    std::size_t line = 0;  // 1-based
    std::string message;
};

struct ParseResult {
    std::vector<UtteranceRecord> records;
    std::vector<ParseError> errors;   // populated in skip mode
    std::size_t filtered = 0;         // dropped by the duration window
};

// Streaming JSONL parse; sink is invoked per valid record in file order.
// In abort mode the first bad line raises DataError ("line K: ...").
void parse_manifest(std::istream& in, const ParseOptions& opts,
                    const std::function<void(UtteranceRecord&&)>& sink,
                    std::vector<ParseError>* errors = nullptr,
                    std::size_t* filtered = nullptr);

ParseResult parse_manifest(std::istream& in, const ParseOptions& opts = {});
ParseResult parse_manifest_file(const std::string& path, const ParseOptions& opts = {});

enum class Stratify { language, dataset, language_then_dataset };

struct StratumId {
    std::string lang;     // empty under dataset-only stratification
    std::string dataset;  // empty under language-only stratification

    // "en", "mls", or "en/mls" depending on stratification.
    std::string name() const;

    auto operator<=>(const StratumId&) const = default;
};

StratumId stratum_of(const UtteranceRecord& rec, Stratify stratify);

struct StratumStats {
    double hours = 0.0;
    std::uint64_t count = 0;
    double min_dur = std::numeric_limits<double>::infinity();
    double max_dur = 0.0;
};

struct CorpusStats {
    Stratify stratify = Stratify::language;
    std::map<StratumId, StratumStats> strata;
    double total_hours = 0.0;
    std::uint64_t total_count = 0;

    std::map<std::string, double> hours_by_name() const;
};

// Single-pass aggregation; usable against a record stream.
class StatsAccumulator {
public:
    explicit StatsAccumulator(Stratify stratify) : stratify_(stratify) {}

    void add(const UtteranceRecord& rec);
    CorpusStats finish() const;

private:
    struct Acc {
        double sum_seconds = 0.0, comp = 0.0;  // Kahan state
        std::uint64_t count = 0;
        double min_dur = std::numeric_limits<double>::infinity();
        double max_dur = 0.0;
    };

    Stratify stratify_;
    std::map<StratumId, Acc> acc_;
};

CorpusStats corpus_stats(std::span<const UtteranceRecord> records, Stratify stratify);

// Training-text punctuation policy: keep only ' , ? . ! ; every other
// punctuation mark becomes a space (U+2019 is folded to the ASCII apostrophe
// first, so contractions in typographic text survive); whitespace runs
// collapse to one space and the ends are trimmed. Case is preserved.
std::string process_pnc_text(std::string_view text);

}  // namespace corpusmix
