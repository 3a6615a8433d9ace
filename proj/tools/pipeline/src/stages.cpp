#include "cadence/pipeline.hpp"

#include "artifacts.hpp"

#include "cadence/datagen.hpp"
#include "cadence/lag_scan.hpp"
#include "cadence/patterns.hpp"
#include "cadence/snapshot_io.hpp"
#include "cadence/stats.hpp"
#include "cadence/tsne.hpp"
#include "cadence/ward.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>
#include <random>
#include <sstream>

namespace cadence::pipeline {

namespace artifacts {

void write_manifest(const Context& ctx, const std::string& stage, const fs::path& dir) {
    io::write_file(dir / "manifest.json", manifest_text(ctx.params, stage, dir));
}

void warn(const Context& ctx, const std::string& stage, const std::string& message) {
    if (ctx.warn) *ctx.warn << "warning: stage=" << stage << " message=\"" << message << "\"\n";
}

std::vector<AppHistory> load_histories(const Context& ctx) {
    std::istringstream in(io::read_file(ctx.run_dir / kSnapshots));
    return parse_snapshots(in);
}

std::map<std::string, std::vector<ReleaseEvent>> load_releases(const Context& ctx) {
    const auto t = io::read_table(ctx.run_dir / kReleases, kReleasesHeader);
    std::map<std::string, std::vector<ReleaseEvent>> out;
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
        const auto& row = t.rows[r];
        ReleaseEvent ev;
        ev.app_id = row[0];
        ev.day = parse_iso_date(row[1]);
        ev.version_from = io::unescape(row[2]).value_or("");
        ev.version_to = io::unescape(row[3]).value_or("");
        if (const auto interval = t.optional_integer(r, 4)) {
            ev.interval_days = static_cast<int>(*interval);
            ev.category = categorize_interval(*ev.interval_days);
            if (row[5] != to_string(*ev.category)) {
                throw ParseError(t.path.generic_string() + ": category does not match interval",
                                 r + 2);
            }
        }
        ev.whats_new = io::unescape(row[6]);
        out[ev.app_id].push_back(std::move(ev));
    }
    return out;
}

std::map<std::string, SegmentationResult> load_segments(const Context& ctx) {
    const auto t = io::read_table(ctx.run_dir / kSegments, kSegmentsHeader);
    std::map<std::string, SegmentationResult> out;
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
        auto& seg = out[t.rows[r][0]];
        Segment s;
        s.start_day = parse_iso_date(t.rows[r][2]);
        s.end_day = parse_iso_date(t.rows[r][3]);
        s.slope = t.real(r, 4);
        s.intercept = t.real(r, 5);
        s.sse = t.real(r, 6);
        seg.threshold = t.real(r, 7);
        seg.segments.push_back(s);
    }
    return out;
}

std::vector<AppAnalysis> load_analyses(const Context& ctx, const std::vector<AppHistory>& histories) {
    auto releases = load_releases(ctx);
    auto segments = load_segments(ctx);
    std::vector<AppAnalysis> out;
    out.reserve(histories.size());
    for (const auto& h : histories) {
        AppAnalysis a{h.app_id(), {}, rating_series(h), {}, {}, {}};
        if (auto it = releases.find(h.app_id()); it != releases.end()) a.releases = it->second;
        if (auto it = segments.find(h.app_id()); it != segments.end()) a.segmentation = it->second;
        out.push_back(std::move(a));
    }
    return out;
}

std::vector<EffectSample> load_samples(const Context& ctx) {
    const auto t = io::read_table(ctx.run_dir / kSamples, kSamplesHeader);
    std::vector<EffectSample> out;
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
        EffectSample s;
        s.app_id = t.rows[r][0];
        s.day = parse_iso_date(t.rows[r][1]);
        s.rank = static_cast<int>(t.integer(r, 2));
        s.interval = static_cast<int>(t.integer(r, 3));
        s.slope = t.real(r, 5);
        s.label = t.rows[r][6] == "positive" ? EffectLabel::Positive : EffectLabel::Negative;
        out.push_back(std::move(s));
    }
    return out;
}

} // namespace artifacts

using namespace artifacts;

void run_datagen(const Context& ctx) {
    const auto config = generator_config(ctx.params);
    const auto market = generate(config);
    std::string lines;
    for (const auto& s : market.snapshots) {
        lines += serialize_snapshot(s);
        lines += '\n';
    }
    io::write_file(ctx.run_dir / "snapshots.jsonl", lines);
    std::ostringstream truth;
    write_truth(truth, market.truth);
    io::write_file(ctx.run_dir / "truth.json", truth.str());
    write_manifest(ctx, "datagen", ctx.run_dir);
}

void run_ingest(const Context& ctx) {
    if (ctx.params.input.empty()) {
        throw ConfigError("ingest needs --input");
    }
    std::istringstream in(io::read_file(ctx.params.input));
    const auto histories = parse_snapshots(in);
    std::ostringstream canon;
    write_snapshots(canon, histories);
    io::Table apps(kAppsHeader);
    for (const auto& h : histories) {
        apps.row({h.app_id(), io::escape(h.category()), io::num(h.snapshots().size()),
                  format_iso_date(h.first_day()), format_iso_date(h.last_day())});
    }
    const auto dir = ctx.run_dir / "ingest";
    io::write_file(ctx.run_dir / kSnapshots, canon.str());
    apps.save(ctx.run_dir / kApps);
    write_manifest(ctx, "ingest", dir);
}

void run_intervals(const Context& ctx) {
    const auto histories = load_histories(ctx);
    std::vector<ReleaseEvent> all;
    io::Table releases(kReleasesHeader);
    io::Table profiles({"app_id", "mean_interval", "std_interval", "n_releases"});
    std::map<std::string, std::array<int, 2>> by_category;  // successive, intervals
    for (const auto& h : histories) {
        const auto events = derive_releases(h);
        for (const auto& ev : events) {
            releases.row({ev.app_id, format_iso_date(ev.day), io::escape(ev.version_from),
                          io::escape(ev.version_to),
                          ev.interval_days ? io::num(*ev.interval_days) : "",
                          ev.category ? to_string(*ev.category) : "", io::escape_optional(ev.whats_new)});
            if (ev.category) {
                auto& c = by_category[h.category()];
                c[0] += *ev.category == IntervalCategory::Successive;
                c[1] += 1;
            }
        }
        if (const auto p = interval_profile(events)) {
            profiles.row({p->app_id, io::num(p->mean_interval), io::num(p->std_interval),
                          io::num(p->n_releases)});
        }
        all.insert(all.end(), events.begin(), events.end());
    }

    io::Table cdf({"interval_days", "fraction"});
    io::Table mix({"category", "share", "count"});
    const auto m = category_mix(all);
    if (m.total > 0) {
        for (const auto& pt : interval_cdf(all)) {
            cdf.row({io::num(pt.interval_days), io::num(pt.fraction)});
        }
        mix.row({"successive", io::num(m.successive),
                 io::num(static_cast<long long>(std::llround(m.successive * m.total)))});
        mix.row({"normal", io::num(m.normal),
                 io::num(static_cast<long long>(std::llround(m.normal * m.total)))});
        mix.row({"sparse", io::num(m.sparse),
                 io::num(static_cast<long long>(std::llround(m.sparse * m.total)))});
    } else {
        warn(ctx, "intervals", "no release carries an interval");
    }

    io::Table weekday({"iso_week", "mon", "tue", "wed", "thu", "fri", "sat", "sun"});
    for (const auto& [week, counts] : weekday_distribution(all)) {
        std::vector<std::string> row{format_iso_week(week)};
        for (int c : counts) row.push_back(io::num(c));
        weekday.row(row);
    }
    io::Table counts({"n_releases", "n_apps"});
    for (const auto& [k, n] : update_count_distribution(histories)) {
        counts.row({io::num(k), io::num(n)});
    }
    io::Table successive({"app_category", "intervals", "successive_share"});
    for (const auto& [cat, c] : by_category) {
        successive.row({io::escape(cat), io::num(c[1]),
                        io::num(static_cast<double>(c[0]) / static_cast<double>(c[1]))});
    }

    releases.save(ctx.run_dir / kReleases);
    profiles.save(ctx.run_dir / kProfiles);
    cdf.save(ctx.run_dir / kCdf);
    mix.save(ctx.run_dir / kCategoryMix);
    weekday.save(ctx.run_dir / kWeekday);
    counts.save(ctx.run_dir / kUpdateCounts);
    successive.save(ctx.run_dir / kCategorySuccessive);
    write_manifest(ctx, "intervals", ctx.run_dir / "intervals");
}

void run_segment(const Context& ctx) {
    const auto& p = ctx.params;
    const auto histories = load_histories(ctx);
    const auto releases = load_releases(ctx);
    io::Table segments(kSegmentsHeader);
    io::Table points(kTurningPointsHeader);
    io::Table significant({"app_id", "release_day", "version_to", "turning_point_day", "gap_days",
                           "transition"});
    int skipped = 0;
    for (const auto& h : histories) {
        const auto ratings = rating_series(h);
        if (ratings.size() < static_cast<std::size_t>(kMinSegmentPoints)) {
            ++skipped;
            continue;
        }
        const auto seg = fit_segments(ratings, p.seg_threshold >= 0.0
                                                   ? std::optional<double>(p.seg_threshold)
                                                   : std::nullopt);
        for (std::size_t i = 0; i < seg.segments.size(); ++i) {
            const auto& s = seg.segments[i];
            segments.row({h.app_id(), io::num(i), format_iso_date(s.start_day),
                          format_iso_date(s.end_day), io::num(s.slope), io::num(s.intercept),
                          io::num(s.sse), io::num(seg.threshold)});
        }
        const double delta =
            p.min_slope_delta >= 0.0 ? p.min_slope_delta : default_min_slope_delta(seg);
        const auto tps = turning_points(seg, delta, p.flat_eps);
        for (const auto& tp : tps) {
            points.row({h.app_id(), format_iso_date(tp.day), io::num(tp.slope_before),
                        io::num(tp.slope_after), to_string(tp.transition)});
        }
        const auto it = releases.find(h.app_id());
        if (it == releases.end()) continue;
        for (const auto& link : link_significant_updates(it->second, tps, p.lag_window)) {
            significant.row({h.app_id(), format_iso_date(link.release.day),
                             io::escape(link.release.version_to),
                             format_iso_date(link.turning_point.day), io::num(link.gap_days),
                             to_string(link.turning_point.transition)});
        }
    }
    if (skipped) {
        warn(ctx, "segment", std::to_string(skipped) + " apps with fewer than 3 days skipped");
    }
    segments.save(ctx.run_dir / kSegments);
    points.save(ctx.run_dir / kTurningPoints);
    significant.save(ctx.run_dir / kSignificant);
    write_manifest(ctx, "segment", ctx.run_dir / "segment");
}

void run_lag(const Context& ctx) {
    const auto& p = ctx.params;
    LagOptions opts;
    opts.max_lag = p.max_lag;
    opts.smooth_window = p.smooth_window;
    opts.alpha = p.alpha;
    opts.effective_n = p.effective_n;
    opts.bonferroni = p.bonferroni;

    const auto histories = load_histories(ctx);
    const auto releases = load_releases(ctx);
    std::vector<LagResult> results;
    io::Table per_app({"app_id", "lag", "r", "p", "defined"});
    io::Table best({"app_id", "best_lag"});
    int too_short = 0;
    for (const auto& h : histories) {
        const auto it = releases.find(h.app_id());
        if (it == releases.end() || it->second.empty()) continue;
        if (h.span_days() <= p.max_lag + 3) {
            ++too_short;
            continue;
        }
        std::vector<double> impulse(static_cast<std::size_t>(h.span_days()), 0.0);
        for (const auto& ev : it->second) {
            impulse[static_cast<std::size_t>(days_between(h.first_day(), ev.day))] = 1.0;
        }
        auto res = lag_correlations(Series(std::move(impulse), h.first_day()), rating_series(h), opts);
        res.app_id = h.app_id();
        for (const auto& e : res.per_lag) {
            per_app.row({res.app_id, io::num(e.lag), e.defined ? io::num(e.r) : "",
                         e.defined ? io::num(e.p) : "", e.defined ? "1" : "0"});
        }
        best.row({res.app_id, res.best_lag ? io::num(*res.best_lag) : ""});
        results.push_back(std::move(res));
    }
    if (too_short) {
        warn(ctx, "lag", std::to_string(too_short) + " apps too short for the lag scan skipped");
    }
    if (results.empty()) {
        throw UndefinedError("no app with releases spans enough days for the lag scan");
    }
    const auto hist = aggregate_lags(results, p.alpha);
    io::Table histogram({"lag", "fraction", "mean_abs_r"});
    for (std::size_t l = 0; l < hist.fraction.size(); ++l) {
        histogram.row({io::num(l), io::num(hist.fraction[l]), io::num(hist.mean_abs_r[l])});
    }
    io::Table summary(kLagSummaryHeader);
    summary.row({"n_apps", io::num(hist.n_apps)});
    summary.row({"peak_lag", io::num(hist.peak_lag())});

    per_app.save(ctx.run_dir / kLagPerApp);
    best.save(ctx.run_dir / "lag/best.tsv");
    histogram.save(ctx.run_dir / kLagHistogram);
    summary.save(ctx.run_dir / kLagSummary);
    write_manifest(ctx, "lag", ctx.run_dir / "lag");
}

namespace {

// Seeded choice of m indices out of n, ascending.
std::vector<std::size_t> subsample(std::size_t n, std::size_t m, std::uint64_t seed) {
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    if (m >= n) return idx;
    std::mt19937_64 rng(seed);
    for (std::size_t i = 0; i < m; ++i) {
        const std::size_t j = i + static_cast<std::size_t>(rng() % (n - i));
        std::swap(idx[i], idx[j]);
    }
    idx.resize(m);
    std::sort(idx.begin(), idx.end());
    return idx;
}

std::string bit_string(const std::vector<std::uint8_t>& bits) {
    std::string s;
    for (auto b : bits) s += b ? '1' : '0';
    return s;
}

} // namespace

void run_cluster(const Context& ctx) {
    const auto& p = ctx.params;
    const auto apps = io::read_table(ctx.run_dir / kApps, kAppsHeader);
    const auto releases = load_releases(ctx);
    std::vector<WindowVector> vectors;
    for (std::size_t r = 0; r < apps.rows.size(); ++r) {
        const auto it = releases.find(apps.rows[r][0]);
        if (it == releases.end()) continue;
        auto v = extract_windows(it->second, p.window, parse_iso_date(apps.rows[r][4]));
        vectors.insert(vectors.end(), std::make_move_iterator(v.begin()),
                       std::make_move_iterator(v.end()));
    }
    if (p.max_vectors > 0 && vectors.size() > static_cast<std::size_t>(p.max_vectors)) {
        warn(ctx, "cluster",
             "embedding a seeded sample of " + std::to_string(p.max_vectors) + " of " +
                 std::to_string(vectors.size()) + " window vectors");
        std::vector<WindowVector> kept;
        for (auto i : subsample(vectors.size(), static_cast<std::size_t>(p.max_vectors), p.seed)) {
            kept.push_back(std::move(vectors[i]));
        }
        vectors = std::move(kept);
    }
    if (vectors.size() < 5) {
        throw UndefinedError("need at least 5 window vectors to cluster, got " +
                             std::to_string(vectors.size()));
    }

    TsneOptions opts;
    if (p.perplexity >= 0.0) opts.perplexity = p.perplexity;
    opts.iterations = p.tsne_iterations;
    opts.seed = p.seed;
    opts.learning_rate = p.learning_rate;
    opts.exaggeration = p.exaggeration;
    opts.exaggeration_iterations = p.exaggeration_iterations;
    const auto emb = tsne_embed(as_rows(vectors), opts);
    const auto clustering = ward_cluster(emb.points, p.clusters);
    const auto means = aggregate_patterns(vectors, clustering);

    io::Table windows({"index", "app_id", "anchor_day", "bits"});
    io::Table embedding(kEmbeddingHeader);
    for (std::size_t i = 0; i < vectors.size(); ++i) {
        const auto& v = vectors[i];
        windows.row({io::num(i), v.app_id, format_iso_date(v.anchor_day), bit_string(v.bits)});
        embedding.row({io::num(i), v.app_id, format_iso_date(v.anchor_day),
                       io::num(emb.points[i][0]), io::num(emb.points[i][1]),
                       io::num(clustering.labels[i])});
    }
    std::vector<std::string> header{"cluster", "size"};
    for (int d = 1; d <= p.window; ++d) header.push_back("d" + std::to_string(d));
    io::Table patterns(header);
    for (std::size_t c = 0; c < means.size(); ++c) {
        const auto size = std::count(clustering.labels.begin(), clustering.labels.end(),
                                     static_cast<int>(c));
        std::vector<std::string> row{io::num(c), io::num(static_cast<long long>(size))};
        for (double v : means[c]) row.push_back(io::num(v));
        patterns.row(row);
    }
    io::Table summary({"key", "value"});
    summary.row({"vectors", io::num(vectors.size())});
    summary.row({"perplexity", io::num(opts.perplexity.value_or(default_perplexity(vectors.size())))});
    summary.row({"final_kl", io::num(emb.final_kl)});
    summary.row({"kl_after_exaggeration", io::num(emb.kl_after_exaggeration)});

    windows.save(ctx.run_dir / kWindows);
    embedding.save(ctx.run_dir / kEmbedding);
    patterns.save(ctx.run_dir / kPatterns);
    summary.save(ctx.run_dir / kClusterSummary);
    write_manifest(ctx, "cluster", ctx.run_dir / "cluster");
}

void run_terms(const Context& ctx) {
    const auto& p = ctx.params;
    const auto histories = load_histories(ctx);
    const auto apps = load_analyses(ctx, histories);
    const auto vocab = fit_vocabulary(release_documents(apps), p.min_df);
    if (vocab.size() == 0) {
        throw UndefinedError("no release-note term reaches min-df " + std::to_string(p.min_df));
    }
    TermParams tp;
    tp.top_terms = static_cast<std::size_t>(p.top_terms);
    tp.lag_window = p.lag_window;
    tp.folds = p.lasso_folds;
    tp.n_lambdas = p.n_lambdas;
    tp.lambda_min_ratio = p.lambda_min_ratio;
    tp.seed = p.seed;

    std::map<IntervalCategory, TermImportance> tables;
    for (auto group : {IntervalCategory::Successive, IntervalCategory::Normal,
                       IntervalCategory::Sparse}) {
        try {
            tables[group] = term_importance(apps, vocab, group, tp);
        } catch (const UndefinedError& e) {
            warn(ctx, "terms", e.what());
        }
    }
    if (!tables.count(IntervalCategory::Successive) || !tables.count(IntervalCategory::Sparse)) {
        throw UndefinedError("term quadrants need successive and sparse term importance");
    }

    io::Table vocabulary({"term", "df", "idf"});
    for (std::size_t i = 0; i < vocab.size(); ++i) {
        vocabulary.row({vocab.terms()[i], io::num(vocab.document_frequency()[i]),
                        io::num(vocab.idf(i))});
    }
    io::Table importance({"group", "lambda", "term", "coefficient"});
    for (const auto& [group, t] : tables) {
        for (const auto& [term, coef] : t.coefficients) {
            importance.row({t.group, io::num(t.lambda), term, io::num(coef)});
        }
    }
    io::Table quadrants(kQuadrantsHeader);
    for (const auto& q : term_quadrants(tables[IntervalCategory::Successive],
                                        tables[IntervalCategory::Sparse])) {
        quadrants.row({q.term, io::num(q.sparse), io::num(q.successive), to_string(q.quadrant)});
    }
    vocabulary.save(ctx.run_dir / kVocabulary);
    importance.save(ctx.run_dir / kImportance);
    quadrants.save(ctx.run_dir / kQuadrants);
    write_manifest(ctx, "terms", ctx.run_dir / "terms");
}

namespace {

FeatureSet parse_features(const std::string& name) {
    if (name == "full") return FeatureSet::full();
    if (name == "terms") return FeatureSet::terms_only();
    if (name == "terms-rank-slope") return FeatureSet::terms_rank_slope();
    throw ConfigError("features must be full, terms or terms-rank-slope");
}

LabelRule parse_rule(const std::string& name) {
    if (name == "rating") return LabelRule::RatingDelta;
    if (name == "slope") return LabelRule::SlopeDelta;
    throw ConfigError("label-rule must be rating or slope");
}

std::string optional_num(const std::vector<double>& v, double (*f)(std::vector<double>)) {
    return v.empty() ? "" : io::num(f(v));
}

} // namespace

void run_train(const Context& ctx) {
    const auto& p = ctx.params;
    const auto features = parse_features(p.features);
    SampleParams sp;
    sp.lag_window = p.lag_window;
    sp.rule = parse_rule(p.label_rule);

    const auto histories = load_histories(ctx);
    const auto apps = load_analyses(ctx, histories);
    const auto vocab = fit_vocabulary(release_documents(apps), p.min_df);
    const auto samples = build_effect_samples(histories, apps, vocab, sp);
    if (samples.size() < static_cast<std::size_t>(std::max(p.cv_folds, 2))) {
        throw UndefinedError("only " + std::to_string(samples.size()) +
                             " labelled releases; too few to train");
    }

    EffectModel model;
    model.vocabulary = vocab;
    model.spec.slope_cut = fit_slope_cut(samples);
    model.spec.flat_eps = p.flat_eps;
    model.spec.features = features;
    model.spec.n_terms = features.terms ? vocab.size() : 0;
    std::vector<FeatureVector> x;
    std::vector<EffectLabel> y;
    for (const auto& s : samples) {
        x.push_back(featurize(s, model.spec));
        y.push_back(s.label);
    }
    model.mnb = mnb_train(x, y, p.mnb_alpha);
    const auto cv = cross_validate(x, y, p.cv_folds, p.mnb_alpha, p.seed);
    for (const auto& w : cv.warnings) warn(ctx, "train", w);

    io::Table table(kSamplesHeader);
    int positive = 0;
    for (const auto& s : samples) {
        table.row({s.app_id, format_iso_date(s.day), io::num(s.rank), io::num(s.interval),
                   to_string(categorize_interval(s.interval)), io::num(s.slope),
                   to_string(s.label)});
        positive += s.label == EffectLabel::Positive;
    }
    io::Table folds({"fold", "accuracy"});
    for (std::size_t f = 0; f < cv.fold_accuracy.size(); ++f) {
        const double a = cv.fold_accuracy[f];
        folds.row({io::num(f), std::isnan(a) ? "" : io::num(a)});
    }
    io::Table summary({"key", "value"});
    summary.row({"samples", io::num(samples.size())});
    summary.row({"positive_share", io::num(static_cast<double>(positive) /
                                           static_cast<double>(samples.size()))});
    summary.row({"cv_accuracy", io::num(cv.accuracy)});
    summary.row({"excluded_folds", io::num(cv.excluded_folds.size())});
    summary.row({"dimension", io::num(model.spec.dimension())});

    const auto groups = update_groups(samples);
    io::Table tests({"category", "n_positive", "n_negative", "median_rank_positive",
                     "median_rank_negative", "u", "p"});
    for (auto c : {IntervalCategory::Successive, IntervalCategory::Normal,
                   IntervalCategory::Sparse}) {
        const auto& pos = groups.ranks[static_cast<int>(c)][1];
        const auto& neg = groups.ranks[static_cast<int>(c)][0];
        std::string u, pv;
        if (!pos.empty() && !neg.empty()) {
            const auto mw = stats::mann_whitney_u(pos, neg);
            u = io::num(mw.u);
            pv = io::num(mw.p);
        }
        tests.row({to_string(c), io::num(pos.size()), io::num(neg.size()),
                   optional_num(pos, stats::median), optional_num(neg, stats::median), u, pv});
    }

    std::ostringstream model_text;
    save_model(model_text, model);
    table.save(ctx.run_dir / kSamples);
    io::write_file(ctx.run_dir / kModel, model_text.str());
    folds.save(ctx.run_dir / kCv);
    summary.save(ctx.run_dir / kTrainSummary);
    tests.save(ctx.run_dir / kRankTests);
    write_manifest(ctx, "train", ctx.run_dir / "train");
}

Recommendation run_recommend(const Context& ctx) {
    const auto& p = ctx.params;
    std::istringstream in(io::read_file(ctx.run_dir / kModel));
    const auto model = load_model(in);
    const auto terms = model.vocabulary.size() > 0
                           ? tfidf(preprocess(p.notes), model.vocabulary)
                           : TermVector{};
    const auto rec = optimize_interval(model.mnb, model.spec, p.rank, p.slope, terms, p.t_min,
                                       p.t_max);
    io::Table summary({"rank", "slope", "t_best", "category", "positive_probability"});
    summary.row({io::num(p.rank), io::num(p.slope), io::num(rec.t_best),
                 to_string(categorize_interval(rec.t_best)),
                 io::num(rec.predicted_positive_probability)});
    io::Table curve({"interval_days", "positive_probability"});
    for (std::size_t i = 0; i < rec.probability_by_t.size(); ++i) {
        curve.row({io::num(rec.t_min + static_cast<int>(i)), io::num(rec.probability_by_t[i])});
    }
    summary.save(ctx.run_dir / kRecommendation);
    curve.save(ctx.run_dir / kRecommendationCurve);
    write_manifest(ctx, "recommend", ctx.run_dir / "recommend");
    return rec;
}

void run_all(const Context& ctx) {
    run_ingest(ctx);
    run_intervals(ctx);
    run_segment(ctx);
    run_lag(ctx);
    run_cluster(ctx);
    try {
        run_terms(ctx);
    } catch (const UndefinedError& e) {
        warn(ctx, "terms", std::string("skipped: ") + e.what());
        fs::remove_all(ctx.run_dir / "terms");
    }
    run_train(ctx);
    (void)run_report(ctx);
}

} // namespace cadence::pipeline
