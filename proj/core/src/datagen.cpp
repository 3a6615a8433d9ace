#include "cadence/datagen.hpp"

#include "cadence/error.hpp"
#include "cadence/trend_seg.hpp"

#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <optional>
#include <cmath>
#include <istream>
#include <numeric>
#include <ostream>
#include <random>

namespace cadence {

const char* to_string(Archetype a) {
    switch (a) {
    case Archetype::SuccessivePeak: return "successive_peak";
    case Archetype::Ascending: return "ascending";
    case Archetype::EarlyBurst: return "early_burst";
    case Archetype::BiweeklySpike: return "biweekly_spike";
    case Archetype::Never: return "never";
    }
    return "?";
}

const std::array<double, kDefaultWindow>& archetype_profile(Archetype a) {
    static const auto profiles = [] {
        std::array<std::array<double, kDefaultWindow>, 5> p{};
        p[0].fill(0.05);
        p[0][2] = 0.85;
        p[0][6] = 0.85;
        p[0][12] = 0.0;
        for (int d = 1; d <= kDefaultWindow; ++d) {
            p[1][static_cast<std::size_t>(d - 1)] = 0.04 + 0.06 * d;
        }
        p[1][5] += 0.25;
        p[1][12] = 0.3;
        p[2] = {0.3, 0.9, 0.9, 0.5, 0.35, 0.25, 0.15, 0.1, 0.05, 0.05, 0.05, 0.05, 0.05};
        p[3].fill(0.06);
        p[3][12] = 0.95;
        p[4].fill(0.0);
        return p;
    }();
    return profiles[static_cast<std::size_t>(a)];
}

const char* to_string(Purpose p) {
    switch (p) {
    case Purpose::Bugfix: return "bugfix";
    case Purpose::Feature: return "feature";
    case Purpose::Cosmetic: return "cosmetic";
    }
    return "?";
}

const std::vector<std::string>& purpose_terms(Purpose p) {
    static const std::vector<std::string> bugfix = {
        "fix", "crash", "bug", "issue", "error", "freeze", "glitch", "stability", "patch",
        "resolve", "leak", "hang", "broken", "repair", "failure", "timeout", "corrupt"};
    static const std::vector<std::string> feature = {
        "feature", "add", "new", "support", "option", "widget", "share", "sync", "mode",
        "filter", "search", "export", "import", "playlist", "chat", "offline", "calendar"};
    static const std::vector<std::string> cosmetic = {
        "design", "color", "icon", "layout", "font", "animation", "polish", "visual",
        "style", "tweak", "wording", "translation", "spacing", "button", "banner", "look"};
    switch (p) {
    case Purpose::Bugfix: return bugfix;
    case Purpose::Feature: return feature;
    case Purpose::Cosmetic: return cosmetic;
    }
    return bugfix;
}

GeneratorConfig lag_study_config(std::uint64_t seed) {
    GeneratorConfig c;
    c.seed = seed;
    c.responsive_fraction = 0.5;
    c.response_height = 0.02;
    c.engagement_spike = 0.6;
    return c;
}

void GeneratorConfig::validate() const {
    auto fail = [](const std::string& what) { throw ConfigError(what); };
    if (n_apps < 1) fail("n_apps must be >= 1");
    if (span_days < 30) fail("span_days must be >= 30");
    auto check_mix = [&](const auto& mix, const char* name) {
        double sum = 0.0;
        for (double v : mix) {
            if (!(v >= 0.0)) fail(std::string(name) + " fractions must be >= 0");
            sum += v;
        }
        if (std::fabs(sum - 1.0) > 1e-9) fail(std::string(name) + " fractions must sum to 1");
    };
    check_mix(archetype_mix, "archetype_mix");
    check_mix(interval_mix, "interval_mix");
    if (!(weekday_share >= 0.0 && weekday_share <= 1.0)) fail("weekday_share must lie in [0, 1]");
    if (lag_days < 1 || lag_days > 10) fail("lag_days must lie in [1, 10]");
    if (lag_days * 3 > span_days) fail("span too short for the configured lag");
    if (!(responsive_fraction >= 0.0 && responsive_fraction <= 1.0)) {
        fail("responsive_fraction must lie in [0, 1]");
    }
    if (!(rating_noise >= 0.0)) fail("rating_noise must be >= 0");
    if (!(response_height >= 0.0) || !(engagement_spike >= 0.0)) {
        fail("response sizes must be >= 0");
    }
    if (!(repeat_text_rate >= 0.0 && repeat_text_rate <= 1.0)) {
        fail("repeat_text_rate must lie in [0, 1]");
    }
    if (!(matthew_coupling >= 0.0) || !(trend_coupling >= 0.0) || !(purpose_coupling >= 0.0)) {
        fail("effect couplings must be >= 0");
    }
    if (categories.empty()) fail("at least one category is required");
    try {
        (void)parse_iso_date(start_day);
    } catch (const ParseError&) {
        fail("start_day must be an ISO date");
    }
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

double uniform(std::mt19937_64& rng, double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
}

bool bernoulli(std::mt19937_64& rng, double p) { return uniform(rng, 0.0, 1.0) < p; }

int uniform_int(std::mt19937_64& rng, int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng);
}

std::size_t pick_weighted(std::mt19937_64& rng, std::span<const double> weights) {
    const double total = std::accumulate(weights.begin(), weights.end(), 0.0);
    double u = uniform(rng, 0.0, total);
    for (std::size_t i = 0; i < weights.size(); ++i) {
        if (u < weights[i]) return i;
        u -= weights[i];
    }
    for (std::size_t i = weights.size(); i-- > 0;) {
        if (weights[i] > 0.0) return i;
    }
    return 0;
}

constexpr std::array<std::array<int, 2>, 3> kGapRange{{{1, 5}, {6, 20}, {21, 45}}};
constexpr double kTrendSlopeLo = 0.001;
constexpr double kTrendSlopeHi = 0.006;
constexpr int kMinTurningSpacing = 12;
constexpr int kEdgeGuard = 6;
constexpr double kMinPlantedSlopeChange = 0.003;

double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

// Draws the next gap from `from` landing within the span; weekday landing
// days are chosen with probability `weekday_share` whenever both kinds exist.
std::optional<int> draw_gap(std::mt19937_64& rng, Day origin, int from, int last_index,
                            int lo, int hi, Archetype archetype, double weekday_share) {
    const auto& profile = archetype_profile(archetype);
    std::vector<int> weekday, weekend;
    std::vector<double> w_weekday, w_weekend;
    for (int g = lo; g <= hi && from + g <= last_index; ++g) {
        const double w = g <= kDefaultWindow ? profile[static_cast<std::size_t>(g - 1)] + 0.02 : 0.1;
        if (is_weekend(add_days(origin, from + g))) {
            weekend.push_back(g);
            w_weekend.push_back(w);
        } else {
            weekday.push_back(g);
            w_weekday.push_back(w);
        }
    }
    if (weekday.empty() && weekend.empty()) return std::nullopt;
    const bool use_weekday =
        weekend.empty() || (!weekday.empty() && bernoulli(rng, weekday_share));
    const auto& gaps = use_weekday ? weekday : weekend;
    const auto& weights = use_weekday ? w_weekday : w_weekend;
    return gaps[pick_weighted(rng, weights)];
}

std::string compose_notes(std::mt19937_64& rng, Purpose purpose) {
    static const char* const fillers[] = {"update", "version", "thanks", "release", "users", "today"};
    static const char* const joiners[] = {"and", "with", "for", "in"};
    const auto& terms = purpose_terms(purpose);
    std::vector<std::size_t> idx(terms.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::shuffle(idx.begin(), idx.end(), rng);
    const int n_terms = uniform_int(rng, 2, 4);
    std::string text;
    for (int i = 0; i < n_terms; ++i) {
        if (i > 0) {
            text += ' ';
            text += joiners[uniform_int(rng, 0, 3)];
            text += ' ';
        }
        text += terms[idx[static_cast<std::size_t>(i)]];
    }
    text[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(text[0])));
    text += " in this ";
    text += fillers[uniform_int(rng, 0, 5)];
    text += '.';
    return text;
}

struct AppPlan {
    PlantedApp planted;
    std::vector<int> release_idx;  // day offsets
};

} // namespace

namespace {
nlohmann::ordered_json config_to_json(const GeneratorConfig& c);
}

GeneratedMarket generate(const GeneratorConfig& config) {
    config.validate();
    const Day origin = parse_iso_date(config.start_day);
    const int span = config.span_days;
    const int last = span - 1;
    const int lag = config.lag_days;

    GeneratedMarket out;
    out.truth.config = config;
    out.truth.run_id = run_id_for(config);
    out.truth.lag_days = lag;

    std::mt19937_64 master(splitmix64(config.seed));
    // Interval categories come from one stream shared across apps; a draw
    // that no longer fits an app's span carries over to the next app.
    std::mt19937_64 category_stream(splitmix64(config.seed ^ 0x5bd1e995ULL));
    std::optional<int> pending_category;
    auto peek_category = [&] {
        if (!pending_category) {
            pending_category = static_cast<int>(pick_weighted(category_stream, config.interval_mix));
        }
        return *pending_category;
    };

    // Exactly round(fraction * n) responsive apps.
    std::vector<int> order(static_cast<std::size_t>(config.n_apps));
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), master);
    const auto n_responsive = static_cast<int>(std::lround(config.responsive_fraction * config.n_apps));
    std::vector<bool> responsive(static_cast<std::size_t>(config.n_apps), false);
    for (int i = 0; i < n_responsive; ++i) responsive[static_cast<std::size_t>(order[static_cast<std::size_t>(i)])] = true;

    for (int a = 0; a < config.n_apps; ++a) {
        std::mt19937_64 rng(splitmix64(config.seed * 0x9e3779b97f4a7c15ULL + static_cast<std::uint64_t>(a) + 1));
        PlantedApp app;
        char id[32];
        std::snprintf(id, sizeof id, "app%04d", a);
        app.app_id = id;
        app.category = config.categories[static_cast<std::size_t>(a) % config.categories.size()];
        app.archetype = static_cast<Archetype>(pick_weighted(rng, config.archetype_mix));
        app.responsive = responsive[static_cast<std::size_t>(a)];
        app.polarity = bernoulli(rng, 0.5) ? 1 : -1;

        // Release schedule.
        std::vector<int> days;
        std::vector<int> cats;
        if (app.archetype != Archetype::Never) {
            if (auto first = draw_gap(rng, origin, 0, last, 1, 14, Archetype::Never, config.weekday_share)) {
                days.push_back(*first);
                cats.push_back(-1);
                while (true) {
                    const int cat = peek_category();
                    const auto [lo, hi] = kGapRange[static_cast<std::size_t>(cat)];
                    const auto gap = draw_gap(rng, origin, days.back(), last, lo, hi, app.archetype,
                                              config.weekday_share);
                    if (!gap) break;
                    pending_category.reset();
                    days.push_back(days.back() + *gap);
                    cats.push_back(cat);
                }
            }
        }

        // Rank walk and base trend.
        std::vector<int> rank(static_cast<std::size_t>(span));
        const double level0 = uniform(rng, 3.4, 4.2);
        double slope = (bernoulli(rng, 0.5) ? 1.0 : -1.0) * uniform(rng, kTrendSlopeLo, kTrendSlopeHi);
        std::vector<double> trend(static_cast<std::size_t>(span));
        std::vector<double> response(static_cast<std::size_t>(span), 0.0);
        std::vector<double> slope_at(static_cast<std::size_t>(span));

        // Turning points are planted as releases are processed; the trend is
        // integrated day by day using the slope schedule.
        std::vector<std::pair<int, double>> slope_changes;  // (day index, new slope)
        int last_tp = -kMinTurningSpacing;
        double planned_slope = slope;

        std::normal_distribution<double> rank_step(0.0, 2.0);
        int r = uniform_int(rng, 1, kTopListSize);

        std::vector<std::string> notes_by_release;
        std::size_t next_release = 0;
        std::size_t change_idx = 0;
        double value = level0;
        for (int d = 0; d < span; ++d) {
            while (change_idx < slope_changes.size() && slope_changes[change_idx].first == d) {
                slope = slope_changes[change_idx].second;
                ++change_idx;
            }
            if (d > 0) value += slope;
            trend[static_cast<std::size_t>(d)] = value;
            slope_at[static_cast<std::size_t>(d)] = slope;
            if (d > 0) {
                const double drift = -0.5 * slope / 0.01;
                r = std::clamp(static_cast<int>(std::lround(r + rank_step(rng) + drift)), 1, kTopListSize);
            }
            rank[static_cast<std::size_t>(d)] = r;

            if (next_release < days.size() && days[next_release] == d) {
                PlantedRelease rel;
                rel.day = add_days(origin, d);
                rel.version = "1.0." + std::to_string(next_release + 1);
                if (next_release > 0) rel.interval_days = d - days[next_release - 1];
                const int cat = cats[next_release];
                const bool repeat = next_release > 0 && bernoulli(rng, config.repeat_text_rate);
                if (repeat) {
                    rel.purpose = app.releases.back().purpose;
                    rel.repeated_text = true;
                    notes_by_release.push_back(notes_by_release.back());
                } else {
                    rel.purpose = static_cast<Purpose>(uniform_int(rng, 0, 2));
                    notes_by_release.push_back(compose_notes(rng, rel.purpose));
                }
                rel.prior_slope = slope;
                rel.rank = r;

                if (app.responsive) {
                    const double rank_score = 1.0 - 2.0 * (r - 1) / (kTopListSize - 1.0);
                    double logit = 0.0;
                    if (cat == static_cast<int>(IntervalCategory::Successive)) {
                        logit += config.matthew_coupling * rank_score;
                    }
                    if (slope < -kFlatSlopeEps) logit += config.trend_coupling;
                    if (slope > kFlatSlopeEps) logit -= config.trend_coupling;
                    const double purpose_sign = rel.purpose == Purpose::Bugfix    ? 1.0
                                                : rel.purpose == Purpose::Feature ? -1.0
                                                                                  : 0.0;
                    if (cat == static_cast<int>(IntervalCategory::Successive)) logit += config.purpose_coupling * purpose_sign;
                    if (cat == static_cast<int>(IntervalCategory::Sparse)) logit -= config.purpose_coupling * purpose_sign;
                    const bool positive = bernoulli(rng, sigmoid(logit));
                    rel.effect = positive ? EffectLabel::Positive : EffectLabel::Negative;
                    const double e = positive ? 1.0 : -1.0;

                    for (int k = 1; k < span - d; ++k) {
                        const double frac = k >= lag ? 1.0 : static_cast<double>(k) / lag;
                        response[static_cast<std::size_t>(d + k)] += e * config.response_height * frac;
                    }
                    if (d + lag <= last) {
                        response[static_cast<std::size_t>(d + lag)] += app.polarity * config.engagement_spike;
                    }

                    const int tp = d + lag;
                    const bool next_far = next_release + 1 >= days.size() ||
                                          days[next_release + 1] - d > lag;
                    if (next_far && tp >= kEdgeGuard && tp <= last - kEdgeGuard &&
                        tp - last_tp >= kMinTurningSpacing) {
                        double target = e * uniform(rng, kTrendSlopeLo, kTrendSlopeHi);
                        if (std::fabs(target - planned_slope) >= kMinPlantedSlopeChange) {
                            slope_changes.emplace_back(tp, target);
                            app.turning_points.push_back({add_days(origin, tp), planned_slope, target});
                            planned_slope = target;
                            last_tp = tp;
                            rel.significant = true;
                        }
                    }
                }
                app.releases.push_back(std::move(rel));
                ++next_release;
            }
        }

        // Emit snapshots.
        std::normal_distribution<double> noise(0.0, 1.0);
        constexpr double kPriorDays = 30.0;
        double cumulative = kPriorDays * level0;
        std::size_t current = 0;  // releases seen so far
        for (int d = 0; d < span; ++d) {
            while (current < days.size() && days[current] <= d) ++current;
            const double latent = trend[static_cast<std::size_t>(d)] + response[static_cast<std::size_t>(d)];
            double daily = latent + config.rating_noise * noise(rng);
            double shown = daily;
            if (config.rating_mode == RatingMode::Cumulative) {
                cumulative += daily;
                shown = cumulative / (kPriorDays + d + 1);
            }
            AppSnapshot s;
            s.app_id = app.app_id;
            s.category = app.category;
            s.day = add_days(origin, d);
            s.rank = rank[static_cast<std::size_t>(d)];
            s.rating = std::clamp(shown, 1.0, 5.0);
            s.version = current == 0 ? "1.0.0" : app.releases[current - 1].version;
            if (current > 0) s.whats_new = notes_by_release[current - 1];
            out.snapshots.push_back(std::move(s));
        }
        out.truth.apps.push_back(std::move(app));
    }
    return out;
}

namespace {

using ordered_json = nlohmann::ordered_json;

ordered_json config_to_json(const GeneratorConfig& c) {
    ordered_json j;
    j["n_apps"] = c.n_apps;
    j["span_days"] = c.span_days;
    j["seed"] = c.seed;
    j["start_day"] = c.start_day;
    j["archetype_mix"] = c.archetype_mix;
    j["interval_mix"] = c.interval_mix;
    j["weekday_share"] = c.weekday_share;
    j["lag_days"] = c.lag_days;
    j["responsive_fraction"] = c.responsive_fraction;
    j["rating_noise"] = c.rating_noise;
    j["rating_mode"] = c.rating_mode == RatingMode::Daily ? "daily" : "cumulative";
    j["matthew_coupling"] = c.matthew_coupling;
    j["trend_coupling"] = c.trend_coupling;
    j["purpose_coupling"] = c.purpose_coupling;
    j["response_height"] = c.response_height;
    j["engagement_spike"] = c.engagement_spike;
    j["repeat_text_rate"] = c.repeat_text_rate;
    j["categories"] = c.categories;
    return j;
}

GeneratorConfig config_from_json(const nlohmann::json& j) {
    GeneratorConfig c;
    c.n_apps = j.at("n_apps").get<int>();
    c.span_days = j.at("span_days").get<int>();
    c.seed = j.at("seed").get<std::uint64_t>();
    c.start_day = j.at("start_day").get<std::string>();
    c.archetype_mix = j.at("archetype_mix").get<std::array<double, 5>>();
    c.interval_mix = j.at("interval_mix").get<std::array<double, 3>>();
    c.weekday_share = j.at("weekday_share").get<double>();
    c.lag_days = j.at("lag_days").get<int>();
    c.responsive_fraction = j.at("responsive_fraction").get<double>();
    c.rating_noise = j.at("rating_noise").get<double>();
    c.rating_mode = j.at("rating_mode").get<std::string>() == "cumulative" ? RatingMode::Cumulative
                                                                           : RatingMode::Daily;
    c.matthew_coupling = j.at("matthew_coupling").get<double>();
    c.trend_coupling = j.at("trend_coupling").get<double>();
    c.purpose_coupling = j.at("purpose_coupling").get<double>();
    c.response_height = j.at("response_height").get<double>();
    c.engagement_spike = j.at("engagement_spike").get<double>();
    c.repeat_text_rate = j.at("repeat_text_rate").get<double>();
    c.categories = j.at("categories").get<std::vector<std::string>>();
    return c;
}

} // namespace

std::string run_id_for(const GeneratorConfig& c) {
    // FNV-1a over the canonical configuration dump.
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char ch : config_to_json(c).dump()) {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "gen-%016llx", static_cast<unsigned long long>(h));
    return buf;
}

void write_truth(std::ostream& out, const GroundTruth& truth) {
    ordered_json j;
    j["run_id"] = truth.run_id;
    j["lag_days"] = truth.lag_days;
    j["config"] = config_to_json(truth.config);
    ordered_json terms;
    for (auto p : {Purpose::Bugfix, Purpose::Feature, Purpose::Cosmetic}) {
        terms[to_string(p)] = purpose_terms(p);
    }
    j["purpose_terms"] = terms;
    auto& apps = j["apps"] = ordered_json::array();
    for (const auto& a : truth.apps) {
        ordered_json ja;
        ja["app_id"] = a.app_id;
        ja["category"] = a.category;
        ja["archetype"] = to_string(a.archetype);
        ja["responsive"] = a.responsive;
        ja["polarity"] = a.polarity;
        auto& rels = ja["releases"] = ordered_json::array();
        for (const auto& r : a.releases) {
            ordered_json jr;
            jr["day"] = format_iso_date(r.day);
            jr["version"] = r.version;
            jr["interval_days"] = r.interval_days ? ordered_json(*r.interval_days) : ordered_json();
            jr["purpose"] = to_string(r.purpose);
            jr["effect"] = r.effect ? ordered_json(to_string(*r.effect)) : ordered_json();
            jr["prior_slope"] = r.prior_slope;
            jr["rank"] = r.rank;
            jr["significant"] = r.significant;
            jr["repeated_text"] = r.repeated_text;
            rels.push_back(std::move(jr));
        }
        auto& tps = ja["turning_points"] = ordered_json::array();
        for (const auto& t : a.turning_points) {
            tps.push_back({{"day", format_iso_date(t.day)},
                           {"slope_before", t.slope_before},
                           {"slope_after", t.slope_after}});
        }
        apps.push_back(std::move(ja));
    }
    out << j.dump(1) << '\n';
}

GroundTruth read_truth(std::istream& in) {
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("ground truth: ") + e.what());
    }
    try {
        GroundTruth t;
        t.run_id = j.at("run_id").get<std::string>();
        t.lag_days = j.at("lag_days").get<int>();
        t.config = config_from_json(j.at("config"));
        auto purpose_of = [](const std::string& s) {
            if (s == "bugfix") return Purpose::Bugfix;
            if (s == "feature") return Purpose::Feature;
            if (s == "cosmetic") return Purpose::Cosmetic;
            throw ParseError("unknown purpose '" + s + "'");
        };
        auto archetype_of = [](const std::string& s) {
            for (int i = 0; i <= kArchetypeCount; ++i) {
                if (s == to_string(static_cast<Archetype>(i))) return static_cast<Archetype>(i);
            }
            throw ParseError("unknown archetype '" + s + "'");
        };
        for (const auto& ja : j.at("apps")) {
            PlantedApp a;
            a.app_id = ja.at("app_id").get<std::string>();
            a.category = ja.at("category").get<std::string>();
            a.archetype = archetype_of(ja.at("archetype").get<std::string>());
            a.responsive = ja.at("responsive").get<bool>();
            a.polarity = ja.at("polarity").get<int>();
            for (const auto& jr : ja.at("releases")) {
                PlantedRelease r;
                r.day = parse_iso_date(jr.at("day").get<std::string>());
                r.version = jr.at("version").get<std::string>();
                if (!jr.at("interval_days").is_null()) r.interval_days = jr.at("interval_days").get<int>();
                r.purpose = purpose_of(jr.at("purpose").get<std::string>());
                if (!jr.at("effect").is_null()) {
                    r.effect = jr.at("effect").get<std::string>() == "positive" ? EffectLabel::Positive
                                                                                : EffectLabel::Negative;
                }
                r.prior_slope = jr.at("prior_slope").get<double>();
                r.rank = jr.at("rank").get<int>();
                r.significant = jr.at("significant").get<bool>();
                r.repeated_text = jr.at("repeated_text").get<bool>();
                a.releases.push_back(std::move(r));
            }
            for (const auto& jt : ja.at("turning_points")) {
                a.turning_points.push_back({parse_iso_date(jt.at("day").get<std::string>()),
                                            jt.at("slope_before").get<double>(),
                                            jt.at("slope_after").get<double>()});
            }
            t.apps.push_back(std::move(a));
        }
        return t;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("ground truth: ") + e.what());
    }
}

PlantedSeries planted_breakpoint_series(std::uint64_t seed, double noise_sigma, int length,
                                        int n_breakpoints) {
    constexpr int kMinSpacing = 12;
    if (n_breakpoints < 0 || length < (n_breakpoints + 1) * kMinSpacing) {
        throw ConfigError("series too short for the requested breakpoints");
    }
    if (!(noise_sigma >= 0.0)) throw ConfigError("noise sigma must be >= 0");
    std::mt19937_64 rng(splitmix64(seed ^ 0xb5ad4eceda1ce2a9ULL));
    std::vector<int> bps;
    while (true) {
        bps.clear();
        std::vector<int> pool;
        for (int i = kMinSpacing; i < length - kMinSpacing; ++i) pool.push_back(i);
        std::shuffle(pool.begin(), pool.end(), rng);
        bps.assign(pool.begin(), pool.begin() + n_breakpoints);
        std::sort(bps.begin(), bps.end());
        bool ok = true;
        for (std::size_t i = 1; i < bps.size(); ++i) ok = ok && bps[i] - bps[i - 1] >= kMinSpacing;
        if (ok) break;
    }
    double sign = bernoulli(rng, 0.5) ? 1.0 : -1.0;
    std::vector<int> knots{0};
    knots.insert(knots.end(), bps.begin(), bps.end());
    knots.push_back(length);
    std::vector<double> y(static_cast<std::size_t>(length));
    double v = 3.5;
    for (std::size_t k = 0; k + 1 < knots.size(); ++k) {
        const double s = sign * uniform(rng, 0.002, 0.015);
        sign = -sign;
        if (k > 0) v += (s > 0 ? 1.0 : -1.0) * uniform(rng, 0.1, 0.25);
        for (int d = knots[k]; d < knots[k + 1]; ++d) {
            y[static_cast<std::size_t>(d)] = v + s * (d - knots[k]);
        }
        v += s * (knots[k + 1] - knots[k]);
    }
    std::normal_distribution<double> noise(0.0, 1.0);
    for (double& val : y) val += noise_sigma * noise(rng);
    return {Series(std::move(y), parse_iso_date("2017-01-02")), bps};
}

std::vector<WindowVector> sample_archetype_windows(int per_archetype, std::uint64_t seed) {
    if (per_archetype < 1) throw ConfigError("per_archetype must be >= 1");
    std::mt19937_64 rng(splitmix64(seed ^ 0x2545f4914f6cdd1dULL));
    std::vector<WindowVector> out;
    const Day origin = parse_iso_date("2017-01-02");
    for (int a = 0; a < kArchetypeCount; ++a) {
        const auto& profile = archetype_profile(static_cast<Archetype>(a));
        for (int i = 0; i < per_archetype; ++i) {
            WindowVector v;
            v.app_id = std::string("arch") + std::to_string(a) + "-" + std::to_string(i);
            v.anchor_day = origin;
            v.bits.resize(kDefaultWindow);
            for (std::size_t d = 0; d < kDefaultWindow; ++d) v.bits[d] = bernoulli(rng, profile[d]) ? 1 : 0;
            out.push_back(std::move(v));
        }
    }
    return out;
}

} // namespace cadence
