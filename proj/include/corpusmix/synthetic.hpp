#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "corpusmix/manifest.hpp"

namespace corpusmix {

enum class DurationDist { loguniform, uniform, constant };

struct SyntheticStratum {
    std::string lang;
    std::string dataset;
    double share = 1.0;  // relative record count
};

// Deterministic metadata-only corpus; record ids are unique per stratum.
// Stratum record counts split `count` proportionally to the shares using
// cumulative rounding, so they sum to `count` exactly.
struct SyntheticSpec {
    std::size_t count = 0;
    DurationDist dist = DurationDist::loguniform;
    double lo = 1.0;
    double hi = 40.0;
    std::uint64_t seed = 0;
    std::vector<SyntheticStratum> strata;  // empty -> single en/synth stratum

    void validate() const;
};

// Accepts "loguniform:1:40", "uniform:2:10", "constant:5".
void parse_dist(const std::string& text, SyntheticSpec& spec);

std::vector<UtteranceRecord> generate_synthetic(const SyntheticSpec& spec);

}  // namespace corpusmix
