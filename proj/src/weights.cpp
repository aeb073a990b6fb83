#include "corpusmix/weights.hpp"

#include <cmath>

#include "corpusmix/error.hpp"
#include "corpusmix/numeric.hpp"

namespace corpusmix {

double WeightMap::sum() const {
    KahanSum total;
    for (const auto& [name, w] : entries)
        total.add(w);
    return total.value();
}

void WeightMap::validate() const {
    for (const auto& [name, w] : entries) {
        if (!(w >= 0.0))
            throw ConfigError("negative weight for stratum \"" + name + "\"");
    }
    if (entries.empty())
        return;
    const double total = sum();
    if (std::abs(total - 1.0) > 1e-12)
        throw ConfigError("weights sum to " + std::to_string(total) + ", expected 1");
}

WeightMap natural_weights(const CorpusStats& stats) {
    KahanSum total;
    for (const auto& [id, s] : stats.strata)
        total.add(s.hours);
    if (!(total.value() > 0.0))
        throw DataError("degenerate corpus: no stratum has positive hours");
    WeightMap weights;
    for (const auto& [id, s] : stats.strata)
        weights.entries.emplace(id.name(), s.hours / total.value());
    return weights;
}

WeightMap temperature_weights(const std::map<std::string, double>& hours, double alpha) {
    if (!(alpha >= 0.0 && alpha <= 1.0))
        throw ConfigError("alpha must lie in [0, 1]");
    KahanSum total_hours;
    for (const auto& [name, h] : hours) {
        if (h < 0.0)
            throw DataError("negative hours for stratum \"" + name + "\"");
        total_hours.add(h);
    }
    const double n = total_hours.value();
    if (!(n > 0.0))
        throw DataError("degenerate corpus: no stratum has positive hours");

    WeightMap weights;
    KahanSum norm;
    for (const auto& [name, h] : hours) {
        // 0^0 counts as 0 here: empty strata stay excluded at alpha = 0.
        const double term = h > 0.0 ? std::pow(h / n, alpha) : 0.0;
        weights.entries.emplace(name, term);
        norm.add(term);
    }
    const double z = norm.value();
    for (auto& [name, w] : weights.entries)
        w /= z;
    return weights;
}

WeightMap hierarchical_weights(const CorpusStats& stats, double alpha_lang, double alpha_dataset) {
    if (stats.stratify != Stratify::language_then_dataset)
        throw ConfigError("hierarchical weights require language_then_dataset stratification");

    std::map<std::string, double> lang_hours;
    std::map<std::string, std::map<std::string, double>> dataset_hours;  // lang -> dataset -> h
    std::map<std::string, std::string> dataset_owner;
    for (const auto& [id, s] : stats.strata) {
        lang_hours[id.lang] += s.hours;
        dataset_hours[id.lang][id.dataset] = s.hours;
        auto [it, inserted] = dataset_owner.emplace(id.dataset, id.lang);
        if (!inserted && it->second != id.lang)
            throw DataError("ambiguous stratification: dataset \"" + id.dataset +
                            "\" appears under languages \"" + it->second + "\" and \"" + id.lang +
                            "\"");
    }

    const WeightMap lang_weights = temperature_weights(lang_hours, alpha_lang);

    WeightMap weights;
    for (const auto& [lang, datasets] : dataset_hours) {
        const double wl = lang_weights.entries.at(lang);
        KahanSum within_total;
        for (const auto& [ds, h] : datasets)
            within_total.add(h);
        if (!(within_total.value() > 0.0)) {
            // A language with no positive-hour dataset carries weight 0.
            for (const auto& [ds, h] : datasets)
                weights.entries.emplace(lang + "/" + ds, 0.0);
            continue;
        }
        const WeightMap within = temperature_weights(datasets, alpha_dataset);
        for (const auto& [ds, wd] : within.entries)
            weights.entries.emplace(lang + "/" + ds, wl * wd);
    }
    return weights;
}

}  // namespace corpusmix
