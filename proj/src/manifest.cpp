#include "corpusmix/manifest.hpp"

#include <fstream>

#include "corpusmix/error.hpp"
#include "corpusmix/numeric.hpp"
#include "corpusmix/text.hpp"

namespace corpusmix {

std::optional<std::string> validate_record(const UtteranceRecord& rec) {
    if (rec.id.empty())
        return "missing id";
    if (!(rec.duration > 0.0))
        return "nonpositive duration";
    if (rec.lang.empty())
        return "empty lang";
    if (rec.dataset.empty())
        return "empty dataset";
    if (rec.task == Task::translate) {
        if (rec.target_lang.empty())
            return "translate record without target_lang";
        if (rec.target_lang == rec.lang)
            return "translate record with target_lang equal to lang";
        if (rec.target_text.empty())
            return "translate record without target_text";
    }
    return std::nullopt;
}

nlohmann::ordered_json record_to_json(const UtteranceRecord& rec) {
    nlohmann::ordered_json j;
    j["id"] = rec.id;
    if (!rec.audio.empty())
        j["audio"] = rec.audio;
    j["duration"] = rec.duration;
    j["lang"] = rec.lang;
    j["dataset"] = rec.dataset;
    j["text"] = rec.text;
    j["pnc"] = rec.pnc;
    if (rec.task == Task::translate) {
        j["task"] = "translate";
        j["target_lang"] = rec.target_lang;
        j["target_text"] = rec.target_text;
    }
    return j;
}

UtteranceRecord record_from_json(const nlohmann::json& j) {
    UtteranceRecord rec;
    rec.id = j.value("id", std::string{});
    rec.audio = j.value("audio", std::string{});
    if (j.contains("duration")) {
        if (!j["duration"].is_number())
            throw ValidationError("duration is not a number");
        rec.duration = j["duration"].get<double>();
    }
    rec.lang = j.value("lang", std::string{});
    rec.dataset = j.value("dataset", std::string{});
    rec.text = j.value("text", std::string{});
    rec.pnc = j.value("pnc", false);
    const std::string task = j.value("task", std::string{"transcribe"});
    if (task == "transcribe") {
        rec.task = Task::transcribe;
    } else if (task == "translate") {
        rec.task = Task::translate;
    } else {
        throw ValidationError("unknown task \"" + task + "\"");
    }
    rec.target_lang = j.value("target_lang", std::string{});
    rec.target_text = j.value("target_text", std::string{});
    return rec;
}

void parse_manifest(std::istream& in, const ParseOptions& opts,
                    const std::function<void(UtteranceRecord&&)>& sink,
                    std::vector<ParseError>* errors, std::size_t* filtered) {
    std::string line;
    std::size_t line_no = 0;
    auto fail = [&](const std::string& msg) {
        if (opts.skip_bad_lines) {
            if (errors)
                errors->push_back({line_no, msg});
            return;
        }
        throw DataError("line " + std::to_string(line_no) + ": " + msg);
    };

    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty())
            continue;
        nlohmann::json j = nlohmann::json::parse(line, nullptr, false);
        if (j.is_discarded()) {
            fail("malformed JSON");
            continue;
        }
        if (!j.is_object()) {
            fail("line is not a JSON object");
            continue;
        }
        UtteranceRecord rec;
        try {
            rec = record_from_json(j);
        } catch (const ValidationError& e) {
            fail(e.what());
            continue;
        }
        if (auto problem = validate_record(rec)) {
            fail(*problem);
            continue;
        }
        if ((opts.min_duration && rec.duration < *opts.min_duration) ||
            (opts.max_duration && rec.duration > *opts.max_duration)) {
            if (filtered)
                ++*filtered;
            continue;
        }
        sink(std::move(rec));
    }
}

ParseResult parse_manifest(std::istream& in, const ParseOptions& opts) {
    ParseResult result;
    parse_manifest(
        in, opts, [&](UtteranceRecord&& rec) { result.records.push_back(std::move(rec)); },
        &result.errors, &result.filtered);
    return result;
}

ParseResult parse_manifest_file(const std::string& path, const ParseOptions& opts) {
    std::ifstream in(path);
    if (!in)
        throw DataError("cannot open manifest: " + path);
    return parse_manifest(in, opts);
}

std::string StratumId::name() const {
    if (lang.empty())
        return dataset;
    if (dataset.empty())
        return lang;
    return lang + "/" + dataset;
}

StratumId stratum_of(const UtteranceRecord& rec, Stratify stratify) {
    switch (stratify) {
    case Stratify::language:
        return {rec.lang, {}};
    case Stratify::dataset:
        return {{}, rec.dataset};
    case Stratify::language_then_dataset:
        return {rec.lang, rec.dataset};
    }
    throw ConfigError("unknown stratification");
}

void StatsAccumulator::add(const UtteranceRecord& rec) {
    Acc& a = acc_[stratum_of(rec, stratify_)];
    const double y = rec.duration - a.comp;
    const double t = a.sum_seconds + y;
    a.comp = (t - a.sum_seconds) - y;
    a.sum_seconds = t;
    ++a.count;
    a.min_dur = std::min(a.min_dur, rec.duration);
    a.max_dur = std::max(a.max_dur, rec.duration);
}

CorpusStats StatsAccumulator::finish() const {
    CorpusStats stats;
    stats.stratify = stratify_;
    KahanSum total_hours;
    for (const auto& [id, a] : acc_) {
        StratumStats s;
        s.hours = a.sum_seconds / 3600.0;
        s.count = a.count;
        s.min_dur = a.min_dur;
        s.max_dur = a.max_dur;
        stats.strata.emplace(id, s);
        total_hours.add(s.hours);
        stats.total_count += a.count;
    }
    stats.total_hours = total_hours.value();
    return stats;
}

CorpusStats corpus_stats(std::span<const UtteranceRecord> records, Stratify stratify) {
    StatsAccumulator acc(stratify);
    for (const UtteranceRecord& rec : records)
        acc.add(rec);
    return acc.finish();
}

std::map<std::string, double> CorpusStats::hours_by_name() const {
    std::map<std::string, double> out;
    for (const auto& [id, s] : strata)
        out.emplace(id.name(), s.hours);
    return out;
}

std::string process_pnc_text(std::string_view text) {
    static constexpr char32_t kKeep[] = {U'\'', U',', U'?', U'.', U'!'};
    std::string out;
    out.reserve(text.size());
    bool pending_space = false;
    std::size_t i = 0;
    while (i < text.size()) {
        char32_t cp = decode_utf8(text, i);
        if (cp == U'’')  // right single quotation mark
            cp = U'\'';
        bool keep = false;
        for (char32_t k : kKeep)
            keep |= (cp == k);
        if (is_whitespace(cp) || (is_punctuation(cp) && !keep)) {
            pending_space = !out.empty();
            continue;
        }
        if (pending_space) {
            out.push_back(' ');
            pending_space = false;
        }
        append_utf8(out, cp);
    }
    return out;
}

}  // namespace corpusmix
