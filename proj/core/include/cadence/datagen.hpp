#pragma once

#include "cadence/data_model.hpp"
#include "cadence/mnb.hpp"
#include "cadence/patterns.hpp"
#include "cadence/series.hpp"

#include <array>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace cadence {

// Release-pattern archetypes, as 13-day probability profiles of the days
// following a release.
enum class Archetype { SuccessivePeak, Ascending, EarlyBurst, BiweeklySpike, Never };

inline constexpr int kArchetypeCount = 4;  // excluding Never

[[nodiscard]] const char* to_string(Archetype a);
[[nodiscard]] const std::array<double, kDefaultWindow>& archetype_profile(Archetype a);

enum class Purpose { Bugfix, Feature, Cosmetic };

[[nodiscard]] const char* to_string(Purpose p);

// Planted release-note vocabulary per purpose (distinct Porter stems).
[[nodiscard]] const std::vector<std::string>& purpose_terms(Purpose p);

enum class RatingMode { Daily, Cumulative };

struct GeneratorConfig {
    int n_apps = 200;
    int span_days = 105;
    std::uint64_t seed = 1;
    std::string start_day = "2017-01-02";
    // SuccessivePeak, Ascending, EarlyBurst, BiweeklySpike, Never.
    std::array<double, 5> archetype_mix{0.2, 0.2, 0.2, 0.2, 0.2};
    // Successive, Normal, Sparse.
    std::array<double, 3> interval_mix{0.40, 0.35, 0.25};
    double weekday_share = 0.8;
    int lag_days = 4;
    double responsive_fraction = 1.0;
    double rating_noise = 0.02;
    RatingMode rating_mode = RatingMode::Daily;
    // Logit couplings of the planted effect: rank score times matthew for
    // successive releases, +/- trend for a descending / ascending prior
    // trend, +/- purpose for bugfix / feature notes (successive sign, sparse
    // reversed).
    double matthew_coupling = 5.0;
    double trend_coupling = 0.0;
    double purpose_coupling = 0.6;
    double response_height = 0.2;    // lagged step size
    double engagement_spike = 0.0;   // one-day app-polarity bump at the lag
    double repeat_text_rate = 0.1;   // releases re-using the previous notes
    std::vector<std::string> categories{"GAME", "TOOLS", "SOCIAL"};

    // Throws ConfigError when a field is out of range.
    void validate() const;
};

// Defaults tuned for lag recovery: half the apps respond, with a one-day
// engagement bump at the lag and a small permanent step.
[[nodiscard]] GeneratorConfig lag_study_config(std::uint64_t seed = 1);

struct PlantedRelease {
    Day day{};
    std::string version;
    std::optional<int> interval_days;
    Purpose purpose = Purpose::Bugfix;
    std::optional<EffectLabel> effect;  // responsive apps only
    double prior_slope = 0.0;
    int rank = 0;
    bool significant = false;  // carries a planted turning point at day + lag
    bool repeated_text = false;
};

struct PlantedTurningPoint {
    Day day{};
    double slope_before = 0.0;
    double slope_after = 0.0;
};

struct PlantedApp {
    std::string app_id;
    std::string category;
    Archetype archetype = Archetype::Never;
    bool responsive = false;
    int polarity = 1;
    std::vector<PlantedRelease> releases;
    std::vector<PlantedTurningPoint> turning_points;
};

struct GroundTruth {
    std::string run_id;
    GeneratorConfig config;
    int lag_days = 0;
    std::vector<PlantedApp> apps;
};

struct GeneratedMarket {
    std::vector<AppSnapshot> snapshots;  // app order, then day order
    GroundTruth truth;
};

[[nodiscard]] GeneratedMarket generate(const GeneratorConfig& config);

// Deterministic identifier derived from the configuration.
[[nodiscard]] std::string run_id_for(const GeneratorConfig& config);

void write_truth(std::ostream& out, const GroundTruth& truth);
[[nodiscard]] GroundTruth read_truth(std::istream& in);

// Rating series with three planted breakpoints: slopes of alternating sign
// with |slope| in [0.002, 0.015], a step of 0.1-0.25 in the direction of the
// new slope at each breakpoint, breakpoints at least 12 days apart and from
// the ends. Breakpoints are the first day of each new piece.
struct PlantedSeries {
    Series series;
    std::vector<int> breakpoints;  // indices
};

[[nodiscard]] PlantedSeries planted_breakpoint_series(std::uint64_t seed, double noise_sigma,
                                                      int length = 105, int n_breakpoints = 3);

// Window vectors sampled bit-by-bit from the archetype profiles, per_archetype
// of each archetype, in archetype order.
[[nodiscard]] std::vector<WindowVector> sample_archetype_windows(int per_archetype,
                                                                 std::uint64_t seed);

} // namespace cadence
