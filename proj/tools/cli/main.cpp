#include "cadence/pipeline.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <map>
#include <set>

namespace {

namespace pl = cadence::pipeline;

std::string quote(const std::string& text) {
    std::string out;
    for (char c : text) {
        if (c == '"' || c == '\\') out += '\\';
        out += (c == '\n' || c == '\r') ? ' ' : c;
    }
    return out;
}

int fail(const std::string& kind, const std::string& stage, const std::string& message) {
    std::cerr << "error: kind=" << kind << " stage=" << stage << " message=\"" << quote(message)
              << "\"\n";
    return 1;
}

struct Command {
    std::string stage;
    std::string description;
    std::vector<std::string> param_stages;  // whose flags the command takes
    std::function<void(const pl::Context&)> action;
};

std::vector<Command> commands() {
    const std::vector<std::string> analysis{"ingest", "segment", "lag",  "cluster",
                                            "terms",  "train",   "report"};
    return {
        {"datagen", "Generate a synthetic market with planted ground truth", {"datagen"},
         [](const pl::Context& c) { pl::run_datagen(c); }},
        {"ingest", "Validate a snapshot log and store it canonically", {"ingest"},
         [](const pl::Context& c) { pl::run_ingest(c); }},
        {"intervals", "Derive releases, intervals and their distributions", {"intervals"},
         [](const pl::Context& c) { pl::run_intervals(c); }},
        {"segment", "Segment rating trends and link turning points to releases", {"segment"},
         [](const pl::Context& c) { pl::run_segment(c); }},
        {"lag", "Scan release-to-rating lags", {"lag"},
         [](const pl::Context& c) { pl::run_lag(c); }},
        {"cluster", "Embed and cluster release-window vectors", {"cluster"},
         [](const pl::Context& c) { pl::run_cluster(c); }},
        {"terms", "Regress trend change on release-note terms", {"terms"},
         [](const pl::Context& c) { pl::run_terms(c); }},
        {"train", "Label release effects and train the effect model", {"train"},
         [](const pl::Context& c) { pl::run_train(c); }},
        {"recommend", "Best release interval from a trained model", {"recommend"},
         [](const pl::Context& c) {
             const auto rec = pl::run_recommend(c);
             std::printf("t_best=%d category=%s positive_probability=%.6f\n", rec.t_best,
                         cadence::to_string(cadence::categorize_interval(rec.t_best)),
                         rec.predicted_positive_probability);
         }},
        {"report", "Write the figure tables", {"report"},
         [](const pl::Context& c) {
             const int n = pl::run_report(c);
             std::printf("tables=%d\n", n);
         }},
        {"score", "Compare stage outputs with generator ground truth", {"score"},
         [](const pl::Context& c) { pl::run_score(c); }},
        {"run", "ingest, intervals, segment, lag, cluster, terms, train and report", analysis,
         [](const pl::Context& c) { pl::run_all(c); }},
    };
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Release-cadence analytics over daily app-store snapshots", "cadence"};
    app.set_version_flag("--version", std::string(pl::kToolVersion));
    app.require_subcommand(1);

    pl::Params params;
    std::string run_dir;
    std::string manifest;
    struct Bound {
        CLI::App* sub;
        Command cmd;
        std::vector<std::pair<std::string, CLI::Option*>> options;
    };
    std::vector<Bound> bound;

    for (auto& cmd : commands()) {
        auto* sub = app.add_subcommand(cmd.stage, cmd.description);
        sub->add_option("--run-dir", run_dir, "Run directory holding every stage's output")
            ->required();
        sub->add_option("--manifest", manifest,
                        "Take parameters from a manifest.json; explicit flags still win")
            ->check(CLI::ExistingFile);
        std::set<std::string> names;
        for (const auto& s : cmd.param_stages) {
            for (const auto& n : pl::stage_param_names(s)) names.insert(n);
        }
        Bound b{sub, cmd, {}};
        for (auto& spec : pl::param_specs(params)) {
            if (!names.count(spec.name)) continue;
            auto* opt = std::visit(
                [&](auto* target) { return sub->add_option("--" + spec.name, *target, spec.help); },
                spec.target);
            opt->capture_default_str();
            b.options.emplace_back(spec.name, opt);
        }
        bound.push_back(std::move(b));
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    for (const auto& b : bound) {
        if (!b.sub->parsed()) continue;
        const std::string& stage = b.cmd.stage;
        try {
            if (!manifest.empty()) {
                std::set<std::string> keep;
                for (const auto& [name, opt] : b.options) {
                    if (opt->count() > 0) keep.insert(name);
                }
                pl::load_manifest(manifest, params, keep);
            }
            pl::Context ctx{params, run_dir, &std::cerr};
            b.cmd.action(ctx);
            return 0;
        } catch (const cadence::Error& e) {
            return fail(e.kind(), stage, e.what());
        } catch (const std::filesystem::filesystem_error& e) {
            return fail("io", stage, e.what());
        } catch (const std::exception& e) {
            return fail("internal", stage, e.what());
        }
    }
    return 0;
}
