#pragma once

#include <map>
#include <string>

#include "corpusmix/manifest.hpp"

namespace corpusmix {

// A probability distribution over sampling strata. Keys are stratum names
// ("en", "mls", "en/mls"); iteration order is lexicographic and stable.
struct WeightMap {
    std::map<std::string, double> entries;

    // Checks: all entries >= 0 and the total is 1 within 1e-12 (an empty map
    // sums to 0 and is allowed). Throws ConfigError otherwise.
    void validate() const;

    double sum() const;
    bool empty() const { return entries.empty(); }
};

// w_s = hours_s / total_hours. Zero-hour strata keep a 0 entry so that a
// misconfigured corpus stays visible in reports.
WeightMap natural_weights(const CorpusStats& stats);

// w_s = (n_s/N)^alpha normalized, alpha in [0, 1]. alpha = 1 reproduces the
// natural weights, alpha = 0 is uniform over the strata with positive hours.
// Zero-hour strata keep weight 0.
WeightMap temperature_weights(const std::map<std::string, double>& hours, double alpha);

// Two-level product: language-level temperature weights times the dataset
// weights within each language. Keys are "lang/dataset". Requires
// language_then_dataset stratification and a dataset name that appears under
// only one language.
WeightMap hierarchical_weights(const CorpusStats& stats, double alpha_lang, double alpha_dataset);

}  // namespace corpusmix
