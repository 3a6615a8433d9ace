#pragma once

#include "cadence/datagen.hpp"
#include "cadence/effect.hpp"
#include "cadence/error.hpp"

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <set>
#include <string>
#include <variant>
#include <vector>

namespace cadence::pipeline {

namespace fs = std::filesystem;

// A stage ran before the stage whose output it reads.
class DependencyError : public Error {
public:
    explicit DependencyError(const fs::path& missing)
        : Error("dependency", "missing predecessor artifact " + missing.generic_string()),
          missing_(missing) {}

    [[nodiscard]] const fs::path& missing() const noexcept { return missing_; }

private:
    fs::path missing_;
};

// Every tunable of every stage. Negative values of the optional thresholds
// select the library default.
struct Params {
    std::uint64_t seed = 1;

    // ingest
    std::string input;

    // segment
    double seg_threshold = -1.0;     // < 0: median consecutive change
    double min_slope_delta = -1.0;   // < 0: 10% of the median |slope|
    double flat_eps = kFlatSlopeEps;
    int lag_window = kDefaultLagWindow;

    // lag
    int max_lag = 10;
    int smooth_window = 3;
    double alpha = 0.01;
    bool effective_n = true;
    bool bonferroni = true;

    // cluster
    int window = 13;
    int clusters = 4;
    int max_vectors = 1000;
    double perplexity = -1.0;        // < 0: min(30, (n - 1) / 3)
    int tsne_iterations = 1000;
    double learning_rate = 200.0;
    double exaggeration = 12.0;
    int exaggeration_iterations = 250;

    // terms
    int min_df = 2;
    int top_terms = 500;
    int lasso_folds = 5;
    int n_lambdas = 50;
    double lambda_min_ratio = 1e-3;

    // train
    double mnb_alpha = 1.0;
    int cv_folds = 5;
    std::string label_rule = "rating";   // rating | slope
    std::string features = "full";       // full | terms | terms-rank-slope

    // recommend
    int rank = 10;
    double slope = 0.0;
    std::string notes;
    int t_min = kDefaultTMin;
    int t_max = kDefaultTMax;

    // datagen
    int n_apps = 200;
    int span_days = 105;
    std::string start_day = "2017-01-02";
    std::string archetype_mix = "0.2,0.2,0.2,0.2,0.2";
    std::string interval_mix = "0.40,0.35,0.25";
    double weekday_share = 0.8;
    int lag_days = 4;
    double responsive_fraction = 1.0;
    double rating_noise = 0.02;
    std::string rating_mode = "daily";   // daily | cumulative
    double matthew_coupling = 5.0;
    double trend_coupling = 0.0;
    double purpose_coupling = 0.6;
    double response_height = 0.2;
    double engagement_spike = 0.0;
    double repeat_text_rate = 0.1;

    // score
    std::string truth;
};

using ParamTarget = std::variant<int*, double*, bool*, std::string*, std::uint64_t*>;

struct ParamSpec {
    std::string name;   // flag name without dashes
    std::string stage;  // owning stage, "all" for shared ones
    ParamTarget target;
    std::string help;
};

[[nodiscard]] std::vector<ParamSpec> param_specs(Params& params);

// Stage names in pipeline order.
[[nodiscard]] const std::vector<std::string>& stage_names();

// Parameters owned by `stage` plus the shared ones.
[[nodiscard]] std::vector<std::string> stage_param_names(const std::string& stage);

// Loads parameter values from a manifest file, skipping names in `keep`.
void load_manifest(const fs::path& file, Params& params, const std::set<std::string>& keep);

// Manifest text for one stage: tool version, stage, seed, inputs and the
// stage's parameters. Deterministic for equal arguments.
[[nodiscard]] std::string manifest_text(const Params& params, const std::string& stage,
                                        const fs::path& out_dir);

struct Context {
    Params params;
    fs::path run_dir;
    std::ostream* warn = nullptr;  // stage warnings; discarded when null
};

void run_ingest(const Context& ctx);
void run_intervals(const Context& ctx);
void run_segment(const Context& ctx);
void run_lag(const Context& ctx);
void run_cluster(const Context& ctx);
void run_terms(const Context& ctx);
void run_train(const Context& ctx);
[[nodiscard]] Recommendation run_recommend(const Context& ctx);
// Returns the number of figure tables written.
int run_report(const Context& ctx);
void run_score(const Context& ctx);
// Writes snapshots.jsonl and truth.json into ctx.run_dir.
void run_datagen(const Context& ctx);

// ingest through report; the text stage may fail on thin data, which is
// reported as a warning.
void run_all(const Context& ctx);

[[nodiscard]] GeneratorConfig generator_config(const Params& params);

inline constexpr const char* kToolVersion = "0.3.0";

} // namespace cadence::pipeline
