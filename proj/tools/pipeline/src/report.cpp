#include "cadence/pipeline.hpp"

#include "artifacts.hpp"

#include "cadence/scorecard.hpp"
#include "cadence/stats.hpp"

#include <algorithm>
#include <sstream>

namespace cadence::pipeline {

using namespace artifacts;

namespace {

struct Figure {
    const char* name;
    fs::path source;
};

bool copy_table(const Context& ctx, const Figure& fig, const fs::path& dest) {
    if (!fs::exists(ctx.run_dir / fig.source)) {
        warn(ctx, "report", std::string(fig.name) + " skipped: missing " +
                                fig.source.generic_string());
        fs::remove(dest);
        return false;
    }
    io::write_file(dest, io::read_file(ctx.run_dir / fig.source));
    return true;
}

} // namespace

int run_report(const Context& ctx) {
    const auto releases = load_releases(ctx);
    const bool any_interval = std::any_of(releases.begin(), releases.end(), [](const auto& kv) {
        return std::any_of(kv.second.begin(), kv.second.end(),
                           [](const ReleaseEvent& e) { return e.interval_days.has_value(); });
    });
    if (!any_interval) {
        throw UndefinedError("no release intervals to report");
    }
    const auto dir = ctx.run_dir / "report";
    int written = 0;

    written += copy_table(ctx, {"weekday", kWeekday}, dir / "weekday.tsv");
    written += copy_table(ctx, {"interval_cdf", kCdf}, dir / "interval_cdf.tsv");
    written += copy_table(ctx, {"update_counts", kUpdateCounts}, dir / "update_counts.tsv");

    if (fs::exists(ctx.run_dir / kProfiles)) {
        const auto t = io::read_table(ctx.run_dir / kProfiles,
                                      {"app_id", "mean_interval", "std_interval", "n_releases"});
        std::vector<stats::Point> pts;
        for (std::size_t r = 0; r < t.rows.size(); ++r) pts.push_back({t.real(r, 1), t.real(r, 2)});
        io::Table scatter({"app_id", "mean_interval", "std_interval", "fitted_std"});
        io::Table line({"slope", "intercept", "r_squared", "n"});
        if (pts.size() >= 2) {
            const auto fit = stats::linear_fit(pts);
            for (std::size_t r = 0; r < t.rows.size(); ++r) {
                scatter.row({t.rows[r][0], t.rows[r][1], t.rows[r][2],
                             io::num(fit.intercept + fit.slope * pts[r].x)});
            }
            line.row({io::num(fit.slope), io::num(fit.intercept), io::num(fit.r_squared),
                      io::num(fit.n)});
        } else {
            warn(ctx, "report", "interval_mean_std has fewer than 2 interval profiles; no fitted line");
            for (std::size_t r = 0; r < t.rows.size(); ++r) {
                scatter.row({t.rows[r][0], t.rows[r][1], t.rows[r][2], ""});
            }
        }
        scatter.save(dir / "interval_mean_std.tsv");
        line.save(dir / "interval_fit_line.tsv");
        ++written;
    } else {
        warn(ctx, "report", "interval_mean_std skipped: missing " + kProfiles.generic_string());
    }

    written += copy_table(ctx, {"embedding", kEmbedding}, dir / "embedding.tsv");
    written += copy_table(ctx, {"patterns", kPatterns}, dir / "patterns.tsv");

    if (fs::exists(ctx.run_dir / kSamples)) {
        io::Table ranks({"category", "effect", "rank"});
        auto samples = load_samples(ctx);
        std::stable_sort(samples.begin(), samples.end(), [](const auto& a, const auto& b) {
            return std::pair(categorize_interval(a.interval), a.label) <
                   std::pair(categorize_interval(b.interval), b.label);
        });
        for (const auto& s : samples) {
            ranks.row({to_string(categorize_interval(s.interval)), to_string(s.label),
                       io::num(s.rank)});
        }
        ranks.save(dir / "update_group_ranks.tsv");
        copy_table(ctx, {"rank_tests", kRankTests}, dir / "rank_tests.tsv");
        ++written;
    } else {
        warn(ctx, "report", "update_group_ranks skipped: missing " + kSamples.generic_string());
        fs::remove(dir / "update_group_ranks.tsv");
        fs::remove(dir / "rank_tests.tsv");
    }

    written += copy_table(ctx, {"term_quadrants", kQuadrants}, dir / "term_quadrants.tsv");

    write_manifest(ctx, "report", dir);
    return written;
}

void run_score(const Context& ctx) {
    if (ctx.params.truth.empty()) {
        throw ConfigError("score needs --truth");
    }
    std::istringstream in(io::read_file(ctx.params.truth));
    const auto truth = read_truth(in);

    const auto apps = io::read_table(ctx.run_dir / kApps, kAppsHeader);
    std::vector<std::string> ids, planted;
    for (const auto& row : apps.rows) ids.push_back(row[0]);
    for (const auto& a : truth.apps) planted.push_back(a.app_id);
    std::sort(planted.begin(), planted.end());
    if (ids != planted) {
        throw DomainError("ground truth " + truth.run_id + " does not describe the ingested apps");
    }

    AnalysisOutputs out;
    out.run_id = truth.run_id;
    for (const auto& [app, events] : load_releases(ctx)) {
        out.releases.insert(out.releases.end(), events.begin(), events.end());
    }
    if (fs::exists(ctx.run_dir / kTurningPoints)) {
        const auto t = io::read_table(ctx.run_dir / kTurningPoints, kTurningPointsHeader);
        for (const auto& id : ids) out.turning_points[id];
        for (const auto& row : t.rows) out.turning_points[row[0]].push_back(parse_iso_date(row[1]));
    }
    if (fs::exists(ctx.run_dir / kLagSummary)) {
        const auto t = io::read_table(ctx.run_dir / kLagSummary, kLagSummaryHeader);
        for (std::size_t r = 0; r < t.rows.size(); ++r) {
            if (t.rows[r][0] == "peak_lag") out.corpus_peak_lag = static_cast<int>(t.integer(r, 1));
        }
    }
    if (fs::exists(ctx.run_dir / kPatterns)) {
        const auto t = io::read_table(ctx.run_dir / kPatterns, {});
        if (t.header.size() == 2 + kDefaultWindow && t.rows.size() <= kArchetypeCount) {
            for (std::size_t r = 0; r < t.rows.size(); ++r) {
                std::vector<double> mean;
                for (std::size_t c = 2; c < t.header.size(); ++c) mean.push_back(t.real(r, c));
                out.cluster_means.push_back(std::move(mean));
            }
        } else {
            warn(ctx, "score", "cluster patterns not comparable with the archetypes; skipped");
        }
    }
    if (fs::exists(ctx.run_dir / kSamples)) out.labelled = load_samples(ctx);

    const auto sc = validate_against_truth(out, truth);
    io::Table table({"metric", "value"});
    auto put = [&](const char* key, const auto& v) {
        if (v) table.row({key, io::num(*v)});
    };
    table.row({"run_id", sc.run_id});
    table.row({"planted_turning_points", io::num(sc.planted_turning_points)});
    put("breakpoint_recall", sc.breakpoint_recall);
    put("breakpoint_precision", sc.breakpoint_precision);
    table.row({"planted_lag", io::num(sc.planted_lag)});
    put("detected_lag", sc.detected_lag);
    if (sc.clusters) table.row({"cluster_min_correlation", io::num(sc.clusters->min_correlation)});
    put("label_agreement", sc.label_agreement);
    table.row({"labels_compared", io::num(sc.labels_compared)});
    if (sc.interval_mix) {
        table.row({"successive_share", io::num(sc.interval_mix->successive)});
        table.row({"normal_share", io::num(sc.interval_mix->normal)});
        table.row({"sparse_share", io::num(sc.interval_mix->sparse)});
    }
    put("weekday_share", sc.weekday_share);
    put("successive_rank_p", sc.successive_rank_p);
    put("sparse_rank_p", sc.sparse_rank_p);
    table.save(ctx.run_dir / kScorecard);
    write_manifest(ctx, "score", ctx.run_dir / "score");
}

} // namespace cadence::pipeline
