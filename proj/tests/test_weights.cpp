#include <doctest.h>

#include <cmath>
#include <map>
#include <string>

#include "corpusmix/error.hpp"
#include "corpusmix/rng.hpp"
#include "corpusmix/weights.hpp"

using namespace corpusmix;

namespace {

// Per-language totals published for the training mix (thousands of hours).
const std::map<std::string, double> kMixHours = {
    {"en", 63.4e3}, {"de", 6.1e3}, {"es", 6.6e3}, {"fr", 5.1e3}, {"ns", 0.3e3}};

// High-precision evaluations of the weight formulas on kMixHours, computed
// with an independent arbitrary-precision calculator and frozen here.
const std::map<std::string, double> kMixNatural = {{"en", 0.777914110429447852760736196319},
                                                   {"de", 0.0748466257668711656441717791411},
                                                   {"es", 0.0809815950920245398773006134969},
                                                   {"fr", 0.0625766871165644171779141104294},
                                                   {"ns", 0.0036809815950920245398773006135}};
const std::map<std::string, double> kMixTemperatureHalf = {
    {"en", 0.503716850241423653592843646917},
    {"de", 0.156245229975117230052807019709},
    {"es", 0.162522621110915799954951924663},
    {"fr", 0.142865359427704612556715678355},
    {"ns", 0.0346499392448387038426817303567}};

CorpusStats stats_from_hours(const std::map<std::string, double>& hours) {
    CorpusStats stats;
    stats.stratify = Stratify::language;
    for (const auto& [lang, h] : hours) {
        StratumStats s;
        s.hours = h;
        stats.strata.emplace(StratumId{lang, {}}, s);
        stats.total_hours += h;
    }
    return stats;
}

CorpusStats hierarchy_from_hours(
    const std::map<std::string, std::map<std::string, double>>& tree) {
    CorpusStats stats;
    stats.stratify = Stratify::language_then_dataset;
    for (const auto& [lang, datasets] : tree) {
        for (const auto& [ds, h] : datasets) {
            StratumStats s;
            s.hours = h;
            stats.strata.emplace(StratumId{lang, ds}, s);
            stats.total_hours += h;
        }
    }
    return stats;
}

}  // namespace

TEST_CASE("natural weights are proportional to hours") {
    const auto w = natural_weights(stats_from_hours({{"A", 1.0}, {"B", 3.0}}));
    CHECK(w.entries.at("A") == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(w.entries.at("B") == doctest::Approx(0.75).epsilon(1e-15));
    w.validate();
}

TEST_CASE("single stratum takes all the weight") {
    const auto w = natural_weights(stats_from_hours({{"A", 5.0}}));
    CHECK(w.entries.at("A") == 1.0);
}

TEST_CASE("natural weights match the frozen mix evaluation") {
    const auto w = natural_weights(stats_from_hours(kMixHours));
    for (const auto& [lang, expected] : kMixNatural)
        CHECK(std::abs(w.entries.at(lang) - expected) < 1e-14);
    w.validate();
}

TEST_CASE("all-zero hours is a degenerate corpus") {
    CHECK_THROWS_WITH_AS(static_cast<void>(natural_weights(stats_from_hours({{"A", 0.0}}))),
                         doctest::Contains("degenerate corpus"), DataError);
    CHECK_THROWS_AS(static_cast<void>(temperature_weights({{"A", 0.0}}, 0.5)), DataError);
}

TEST_CASE("temperature weights at the published operating point") {
    const auto w = temperature_weights(kMixHours, 0.5);
    for (const auto& [lang, expected] : kMixTemperatureHalf)
        CHECK(std::abs(w.entries.at(lang) - expected) < 1e-12);
    w.validate();
}

TEST_CASE("alpha 0.5 on a 20/80 split gives thirds") {
    const auto w = temperature_weights({{"A", 0.2}, {"B", 0.8}}, 0.5);
    CHECK(w.entries.at("A") == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
    CHECK(w.entries.at("B") == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
}

TEST_CASE("alpha 1 reproduces natural weights") {
    const auto natural = natural_weights(stats_from_hours(kMixHours));
    const auto w = temperature_weights(kMixHours, 1.0);
    for (const auto& [lang, nat] : natural.entries)
        CHECK(std::abs(w.entries.at(lang) - nat) < 1e-15);
}

TEST_CASE("alpha 0 is uniform over positive strata") {
    auto hours = kMixHours;
    hours["empty"] = 0.0;
    const auto w = temperature_weights(hours, 0.0);
    CHECK(w.entries.at("empty") == 0.0);
    for (const auto& [lang, unused] : kMixHours)
        CHECK(w.entries.at(lang) == doctest::Approx(0.2).epsilon(1e-15));
}

TEST_CASE("alpha outside [0,1] is rejected") {
    CHECK_THROWS_AS(static_cast<void>(temperature_weights(kMixHours, -0.1)), ConfigError);
    CHECK_THROWS_AS(static_cast<void>(temperature_weights(kMixHours, 1.5)), ConfigError);
}

TEST_CASE("zero-hour strata stay visible with weight 0") {
    const auto w = temperature_weights({{"A", 2.0}, {"B", 0.0}}, 0.5);
    CHECK(w.entries.at("B") == 0.0);
    CHECK(w.entries.at("A") == 1.0);
}

TEST_CASE("weight properties hold on random hour maps") {
    Rng rng(29);
    for (int trial = 0; trial < 100; ++trial) {
        std::map<std::string, double> hours;
        const std::size_t n = 1 + rng.bounded(30);
        for (std::size_t i = 0; i < n; ++i)
            hours["s" + std::to_string(i)] =
                rng.bounded(10) == 0 ? 0.0 : 0.01 + static_cast<double>(rng.bounded(100000));
        bool any = false;
        for (const auto& [k, h] : hours) any |= h > 0.0;
        if (!any) hours["s0"] = 1.0;
        const double alpha = static_cast<double>(rng.bounded(101)) / 100.0;
        const auto w = temperature_weights(hours, alpha);
        w.validate();

        // Monotonicity: more hours never means less weight.
        for (const auto& [a, ha] : hours)
            for (const auto& [b, hb] : hours)
                if (ha >= hb) CHECK(w.entries.at(a) >= w.entries.at(b) - 1e-15);
    }
}

TEST_CASE("normalization holds across hundreds of strata") {
    Rng rng(41);
    std::map<std::string, double> hours;
    for (int i = 0; i < 800; ++i)
        hours["s" + std::to_string(i)] = 0.001 + static_cast<double>(rng.bounded(1000000)) / 7.0;
    for (double alpha : {0.0, 0.3, 0.5, 1.0}) {
        const auto w = temperature_weights(hours, alpha);
        w.validate();
        CHECK(std::abs(w.sum() - 1.0) <= 1e-12);
    }
}

TEST_CASE("smaller alpha flattens the distribution") {
    Rng rng(31);
    for (int trial = 0; trial < 50; ++trial) {
        std::map<std::string, double> hours;
        const std::size_t n = 2 + rng.bounded(20);
        for (std::size_t i = 0; i < n; ++i)
            hours["s" + std::to_string(i)] = 1.0 + static_cast<double>(rng.bounded(100000));
        const double a1 = static_cast<double>(rng.bounded(50)) / 100.0;
        const double a2 = a1 + 0.1 + static_cast<double>(rng.bounded(40)) / 100.0;
        auto ratio = [&](double alpha) {
            const auto w = temperature_weights(hours, alpha);
            double lo = 1.0, hi = 0.0;
            for (const auto& [k, v] : w.entries) {
                lo = std::min(lo, v);
                hi = std::max(hi, v);
            }
            return hi / lo;
        };
        CHECK(ratio(a1) <= ratio(a2) * (1.0 + 1e-12));

        // The argmax stratum does not move for any positive alpha.
        const auto w1 = temperature_weights(hours, std::max(a1, 0.01));
        const auto w2 = temperature_weights(hours, std::min(a2, 1.0));
        const auto argmax = [](const WeightMap& w) {
            std::string best;
            double hi = -1.0;
            for (const auto& [k, v] : w.entries)
                if (v > hi) {
                    hi = v;
                    best = k;
                }
            return best;
        };
        std::string max_hours;
        double hi = -1.0;
        for (const auto& [k, v] : hours)
            if (v > hi) {
                hi = v;
                max_hours = k;
            }
        CHECK(argmax(w1) == max_hours);
        CHECK(argmax(w2) == max_hours);
    }
}

TEST_CASE("hierarchical weights on a degenerate hierarchy") {
    const auto w = hierarchical_weights(hierarchy_from_hours({{"X", {{"a", 3.0}}}}), 0.5, 0.5);
    CHECK(w.entries.size() == 1);
    CHECK(w.entries.at("X/a") == 1.0);
}

TEST_CASE("hierarchical product of natural weights by hand") {
    const auto w = hierarchical_weights(
        hierarchy_from_hours({{"X", {{"a", 1.0}}}, {"Y", {{"b", 0.5}, {"c", 0.5}}}}), 1.0, 1.0);
    CHECK(w.entries.at("X/a") == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(w.entries.at("Y/b") == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(w.entries.at("Y/c") == doctest::Approx(0.25).epsilon(1e-15));
    w.validate();
}

TEST_CASE("hierarchical weights at the published operating point") {
    // The English split is illustrative; the inner datasets sum to en's hours.
    std::map<std::string, std::map<std::string, double>> tree = {
        {"en", {{"mls", 30.0e3}, {"fisher", 33.4e3}}},
        {"de", {{"dall", 6.1e3}}},
        {"es", {{"eall", 6.6e3}}},
        {"fr", {{"fall", 5.1e3}}},
        {"ns", {{"noise", 0.3e3}}}};
    const auto w = hierarchical_weights(hierarchy_from_hours(tree), 0.5, 0.5);
    CHECK(std::abs(w.entries.at("en/mls") - 0.245100260989158318201106246577) < 1e-12);
    CHECK(std::abs(w.entries.at("en/fisher") - 0.25861658925226533539173740034) < 1e-12);
    CHECK(std::abs(w.entries.at("de/dall") - kMixTemperatureHalf.at("de")) < 1e-12);
    w.validate();
}

TEST_CASE("a dataset under two languages is ambiguous") {
    CHECK_THROWS_WITH_AS(
        static_cast<void>(hierarchical_weights(
            hierarchy_from_hours({{"X", {{"a", 1.0}}}, {"Y", {{"a", 1.0}}}}), 0.5, 0.5)),
        doctest::Contains("ambiguous stratification"), DataError);
}

TEST_CASE("hierarchical weights require the two-level stratification") {
    CHECK_THROWS_AS(
        static_cast<void>(hierarchical_weights(stats_from_hours({{"A", 1.0}}), 0.5, 0.5)),
        ConfigError);
}

TEST_CASE("hierarchical marginals reproduce language-level weights") {
    Rng rng(37);
    for (int trial = 0; trial < 100; ++trial) {
        std::map<std::string, std::map<std::string, double>> tree;
        std::map<std::string, double> lang_hours;
        const std::size_t langs = 1 + rng.bounded(8);
        int ds_id = 0;
        for (std::size_t l = 0; l < langs; ++l) {
            const std::string lang = "L" + std::to_string(l);
            const std::size_t datasets = 1 + rng.bounded(6);
            for (std::size_t d = 0; d < datasets; ++d) {
                const double h = 0.1 + static_cast<double>(rng.bounded(10000));
                tree[lang]["D" + std::to_string(ds_id++)] = h;
                lang_hours[lang] += h;
            }
        }
        const double al = static_cast<double>(rng.bounded(101)) / 100.0;
        const double ad = static_cast<double>(rng.bounded(101)) / 100.0;
        const auto w = hierarchical_weights(hierarchy_from_hours(tree), al, ad);
        w.validate();
        const auto lang_w = temperature_weights(lang_hours, al);
        std::map<std::string, double> marginal;
        for (const auto& [name, v] : w.entries)
            marginal[name.substr(0, name.find('/'))] += v;
        for (const auto& [lang, expected] : lang_w.entries)
            CHECK(std::abs(marginal.at(lang) - expected) < 1e-12);
    }
}
