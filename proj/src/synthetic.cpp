#include "corpusmix/synthetic.hpp"

#include <cmath>
#include <cstdio>

#include "corpusmix/error.hpp"
#include "corpusmix/rng.hpp"

namespace corpusmix {

void SyntheticSpec::validate() const {
    if (count == 0) throw ConfigError("synthetic corpus needs at least one record");
    if (!(lo > 0.0)) throw ConfigError("duration lower bound must be positive");
    if (dist != DurationDist::constant && !(hi >= lo))
        throw ConfigError("duration upper bound must be at least the lower bound");
    double total = 0.0;
    for (const auto& s : strata) {
        if (s.lang.empty() || s.dataset.empty())
            throw ConfigError("synthetic strata need lang and dataset");
        if (!(s.share > 0.0)) throw ConfigError("synthetic stratum share must be positive");
        total += s.share;
    }
    if (!strata.empty() && !(total > 0.0))
        throw ConfigError("synthetic strata shares sum to zero");
}

void parse_dist(const std::string& text, SyntheticSpec& spec) {
    const auto c1 = text.find(':');
    const std::string name = text.substr(0, c1);
    std::vector<double> args;
    std::size_t pos = c1;
    while (pos != std::string::npos) {
        const auto next = text.find(':', pos + 1);
        const std::string piece =
            text.substr(pos + 1, next == std::string::npos ? std::string::npos : next - pos - 1);
        try {
            std::size_t used = 0;
            args.push_back(std::stod(piece, &used));
            if (used != piece.size()) throw std::invalid_argument(piece);
        } catch (const std::exception&) {
            throw ConfigError("bad duration bound \"" + piece + "\" in --dist " + text);
        }
        pos = next;
    }
    if (name == "loguniform" || name == "uniform") {
        if (args.size() != 2)
            throw ConfigError("--dist " + name + " takes two bounds, e.g. " + name + ":1:40");
        spec.dist = name == "loguniform" ? DurationDist::loguniform : DurationDist::uniform;
        spec.lo = args[0];
        spec.hi = args[1];
    } else if (name == "constant") {
        if (args.size() != 1) throw ConfigError("--dist constant takes one value, e.g. constant:5");
        spec.dist = DurationDist::constant;
        spec.lo = spec.hi = args[0];
    } else {
        throw ConfigError("unknown duration distribution \"" + name + "\"");
    }
}

std::vector<UtteranceRecord> generate_synthetic(const SyntheticSpec& spec) {
    spec.validate();
    std::vector<SyntheticStratum> strata = spec.strata;
    if (strata.empty()) strata.push_back({"en", "synth", 1.0});

    double share_total = 0.0;
    for (const auto& s : strata) share_total += s.share;

    std::vector<UtteranceRecord> records;
    records.reserve(spec.count);
    const double log_lo = std::log(spec.lo);
    const double log_hi = std::log(spec.hi);
    double cum = 0.0;
    std::size_t emitted = 0;
    char id_buf[96];
    for (const auto& s : strata) {
        cum += s.share;
        const auto upto = static_cast<std::size_t>(
            std::llround(cum / share_total * static_cast<double>(spec.count)));
        Rng rng(derive_seed(spec.seed, "synthetic-" + s.lang + "/" + s.dataset));
        for (std::size_t k = emitted; k < upto; ++k) {
            UtteranceRecord rec;
            std::snprintf(id_buf, sizeof(id_buf), "%s-%s-%08zu", s.lang.c_str(),
                          s.dataset.c_str(), k - emitted);
            rec.id = id_buf;
            rec.lang = s.lang;
            rec.dataset = s.dataset;
            switch (spec.dist) {
            case DurationDist::loguniform:
                rec.duration = std::exp(log_lo + rng.uniform01() * (log_hi - log_lo));
                break;
            case DurationDist::uniform:
                rec.duration = spec.lo + rng.uniform01() * (spec.hi - spec.lo);
                break;
            case DurationDist::constant:
                rec.duration = spec.lo;
                break;
            }
            records.push_back(std::move(rec));
        }
        emitted = upto;
    }
    return records;
}

}  // namespace corpusmix
