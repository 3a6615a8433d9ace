#include "cadence/pipeline.hpp"

#include "io.hpp"

#include <json.hpp>

#include <algorithm>
#include <sstream>

namespace cadence::pipeline {

using json = nlohmann::ordered_json;

std::vector<ParamSpec> param_specs(Params& p) {
    return {
        {"seed", "all", &p.seed, "Seed for every randomised step"},
        {"input", "ingest", &p.input, "Snapshot log (JSON lines)"},

        {"seg-threshold", "segment", &p.seg_threshold,
         "RMS stopping threshold; negative uses the median consecutive change"},
        {"min-slope-delta", "segment", &p.min_slope_delta,
         "Smallest slope change kept as a turning point; negative uses 10% of the median |slope|"},
        {"flat-eps", "segment,train", &p.flat_eps, "Slopes within +/- this are flat"},
        {"lag-window", "segment,terms,train", &p.lag_window,
         "Days after a release searched for its effect"},

        {"max-lag", "lag", &p.max_lag, "Largest lag scanned, days"},
        {"smooth-window", "lag", &p.smooth_window, "Moving-average window (odd)"},
        {"alpha", "lag", &p.alpha, "Significance level"},
        {"effective-n", "lag", &p.effective_n, "Autocorrelation-adjusted degrees of freedom"},
        {"bonferroni", "lag", &p.bonferroni, "Bonferroni-adjust the best-lag test"},

        {"window", "cluster", &p.window, "Days per release window vector"},
        {"clusters", "cluster", &p.clusters, "Number of Ward clusters"},
        {"max-vectors", "cluster", &p.max_vectors,
         "Seeded subsample size for the exact embedding"},
        {"perplexity", "cluster", &p.perplexity,
         "t-SNE perplexity; negative uses min(30, (n - 1) / 3)"},
        {"tsne-iterations", "cluster", &p.tsne_iterations, "Gradient steps"},
        {"learning-rate", "cluster", &p.learning_rate, "t-SNE learning rate"},
        {"exaggeration", "cluster", &p.exaggeration, "Early exaggeration factor"},
        {"exaggeration-iterations", "cluster", &p.exaggeration_iterations,
         "Steps under early exaggeration"},

        {"min-df", "terms,train", &p.min_df, "Minimum document frequency of a vocabulary term"},
        {"top-terms", "terms", &p.top_terms, "Terms entering the regression"},
        {"lasso-folds", "terms", &p.lasso_folds, "Cross-validation folds for lambda"},
        {"n-lambdas", "terms", &p.n_lambdas, "Points on the lambda path"},
        {"lambda-min-ratio", "terms", &p.lambda_min_ratio, "Smallest lambda / lambda_max"},

        {"mnb-alpha", "train", &p.mnb_alpha, "Laplace smoothing"},
        {"cv-folds", "train", &p.cv_folds, "Cross-validation folds"},
        {"label-rule", "train", &p.label_rule, "Effect label: rating | slope"},
        {"features", "train", &p.features, "Feature set: full | terms | terms-rank-slope"},

        {"rank", "recommend", &p.rank, "Current rank of the app"},
        {"slope", "recommend", &p.slope, "Current rating trend, per day"},
        {"notes", "recommend", &p.notes, "Release notes of the planned update"},
        {"t-min", "recommend", &p.t_min, "Shortest interval considered"},
        {"t-max", "recommend", &p.t_max, "Longest interval considered"},

        {"n-apps", "datagen", &p.n_apps, "Apps to generate"},
        {"span-days", "datagen", &p.span_days, "Observed days"},
        {"start-day", "datagen", &p.start_day, "First observed day"},
        {"archetype-mix", "datagen", &p.archetype_mix,
         "Shares of successive-peak,ascending,early-burst,biweekly,never"},
        {"interval-mix", "datagen", &p.interval_mix, "Shares of successive,normal,sparse"},
        {"weekday-share", "datagen", &p.weekday_share, "Share of releases on weekdays"},
        {"lag-days", "datagen", &p.lag_days, "Planted rating response lag"},
        {"responsive-fraction", "datagen", &p.responsive_fraction,
         "Share of apps whose ratings respond to releases"},
        {"rating-noise", "datagen", &p.rating_noise, "Daily rating noise sd"},
        {"rating-mode", "datagen", &p.rating_mode, "daily | cumulative"},
        {"matthew-coupling", "datagen", &p.matthew_coupling,
         "Rank dependence of successive-release effects"},
        {"trend-coupling", "datagen", &p.trend_coupling, "Prior-trend dependence of effects"},
        {"purpose-coupling", "datagen", &p.purpose_coupling, "Note-purpose dependence of effects"},
        {"response-height", "datagen", &p.response_height, "Rating step after an effect"},
        {"engagement-spike", "datagen", &p.engagement_spike, "One-day rating bump at the lag"},
        {"repeat-text-rate", "datagen", &p.repeat_text_rate,
         "Share of releases re-using the previous notes"},

        {"truth", "score", &p.truth, "Ground-truth file written by datagen"},
    };
}

const std::vector<std::string>& stage_names() {
    static const std::vector<std::string> names{"datagen", "ingest", "intervals", "segment",
                                                "lag",     "cluster", "terms",    "train",
                                                "recommend", "report", "score"};
    return names;
}

namespace {

bool owned_by(const std::string& owners, const std::string& stage) {
    if (owners == "all") return true;
    std::istringstream in(owners);
    std::string s;
    while (std::getline(in, s, ',')) {
        if (s == stage) return true;
    }
    return false;
}

bool is_input(const std::string& name) { return name == "input" || name == "truth"; }

} // namespace

std::vector<std::string> stage_param_names(const std::string& stage) {
    Params scratch;
    std::vector<std::string> names;
    for (const auto& spec : param_specs(scratch)) {
        if (owned_by(spec.stage, stage)) names.push_back(spec.name);
    }
    return names;
}

void load_manifest(const fs::path& file, Params& params, const std::set<std::string>& keep) {
    json j;
    try {
        j = json::parse(io::read_file(file));
    } catch (const json::exception& e) {
        throw ParseError(file.generic_string() + ": " + e.what());
    }
    if (!j.is_object() || j.value("tool", "") != "cadence") {
        throw ParseError(file.generic_string() + ": not a cadence manifest");
    }
    auto lookup = [&](const std::string& name) -> const json* {
        if (name == "seed") return j.contains("seed") ? &j["seed"] : nullptr;
        const char* section = is_input(name) ? "inputs" : "params";
        if (!j.contains(section) || !j[section].contains(name)) return nullptr;
        return &j[section][name];
    };
    for (auto& spec : param_specs(params)) {
        if (keep.count(spec.name)) continue;
        const json* v = lookup(spec.name);
        if (!v) continue;
        try {
            std::visit([&](auto* target) { *target = v->get<std::remove_pointer_t<decltype(target)>>(); },
                       spec.target);
        } catch (const json::exception&) {
            throw ParseError(file.generic_string() + ": bad value for " + spec.name);
        }
    }
}

std::string manifest_text(const Params& params, const std::string& stage, const fs::path& out_dir) {
    Params copy = params;
    json j;
    j["tool"] = "cadence";
    j["version"] = kToolVersion;
    j["stage"] = stage;
    j["output_dir"] = out_dir.generic_string();
    j["seed"] = params.seed;
    json inputs = json::object();
    json values = json::object();
    for (const auto& spec : param_specs(copy)) {
        if (spec.name == "seed" || !owned_by(spec.stage, stage)) continue;
        json v;
        std::visit([&](auto* target) { v = *target; }, spec.target);
        (is_input(spec.name) ? inputs : values)[spec.name] = v;
    }
    j["inputs"] = inputs;
    j["params"] = values;
    return j.dump(2) + "\n";
}

namespace {

template <std::size_t N>
std::array<double, N> parse_mix(const std::string& text, const char* name) {
    std::array<double, N> out{};
    std::istringstream in(text);
    std::string part;
    std::size_t i = 0;
    while (std::getline(in, part, ',')) {
        if (i == N) break;
        try {
            std::size_t used = 0;
            out[i] = std::stod(part, &used);
            if (used != part.size()) throw std::invalid_argument(part);
        } catch (const std::exception&) {
            throw ConfigError(std::string(name) + ": bad share '" + part + "'");
        }
        ++i;
    }
    if (i != N || std::getline(in, part)) {
        throw ConfigError(std::string(name) + " needs " + std::to_string(N) +
                          " comma-separated shares");
    }
    return out;
}

} // namespace

GeneratorConfig generator_config(const Params& p) {
    GeneratorConfig c;
    c.n_apps = p.n_apps;
    c.span_days = p.span_days;
    c.seed = p.seed;
    c.start_day = p.start_day;
    c.archetype_mix = parse_mix<5>(p.archetype_mix, "archetype-mix");
    c.interval_mix = parse_mix<3>(p.interval_mix, "interval-mix");
    c.weekday_share = p.weekday_share;
    c.lag_days = p.lag_days;
    c.responsive_fraction = p.responsive_fraction;
    c.rating_noise = p.rating_noise;
    if (p.rating_mode == "daily") {
        c.rating_mode = RatingMode::Daily;
    } else if (p.rating_mode == "cumulative") {
        c.rating_mode = RatingMode::Cumulative;
    } else {
        throw ConfigError("rating-mode must be daily or cumulative");
    }
    c.matthew_coupling = p.matthew_coupling;
    c.trend_coupling = p.trend_coupling;
    c.purpose_coupling = p.purpose_coupling;
    c.response_height = p.response_height;
    c.engagement_spike = p.engagement_spike;
    c.repeat_text_rate = p.repeat_text_rate;
    c.validate();
    return c;
}

} // namespace cadence::pipeline
