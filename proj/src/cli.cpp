#include "catseries/cli.hpp"

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "catseries/format.hpp"
#include "catseries/inference.hpp"
#include "catseries/io.hpp"
#include "catseries/mining.hpp"
#include "catseries/plot.hpp"
#include "catseries/simulate.hpp"
#include "catseries/viz.hpp"

namespace cts::cli {
namespace {

using Json = nlohmann::ordered_json;

struct OutputArgs {
    std::string output;
    bool bitexact = false;
    std::size_t workers = 0;  // 0: environment or hardware default
};

struct CorpusArgs {
    std::string path;
    std::string alphabet;
    bool infer = false;
    std::string format = "auto";
};

void add_output_args(CLI::App* app, OutputArgs& a) {
    app->add_option("-o,--output", a.output, "Write the result to this file instead of stdout");
    app->add_flag("--bitexact", a.bitexact, "Print numbers as exact hexadecimal floats");
    app->add_option("--workers", a.workers, "Worker threads (default: $CATSERIES_WORKERS or all cores)")
        ->check(CLI::PositiveNumber);
}

void add_corpus_args(CLI::App* app, CorpusArgs& a) {
    app->add_option("corpus", a.path, "Corpus file (symbol-csv or fasta-like; '-' for stdin)")->required();
    auto* alpha = app->add_option("--alphabet", a.alphabet, "Ordered category labels, e.g. a,c,g,t");
    auto* infer = app->add_flag("--infer-alphabet", a.infer, "Use the sorted distinct symbols of the file");
    alpha->excludes(infer);
    app->add_option("--format", a.format, "auto, csv or fasta")
        ->check(CLI::IsMember({"auto", "csv", "symbol-csv", "fasta", "fasta-like"}));
}

std::size_t resolve_workers(std::size_t flag) {
    if (flag > 0) return flag;
    if (const char* env = std::getenv(kWorkersEnv); env && *env) {
        char* end = nullptr;
        errno = 0;
        const unsigned long long v = std::strtoull(env, &end, 10);
        if (*end != '\0' || errno == ERANGE || v == 0) {
            throw ValidationError(std::string(kWorkersEnv) + " must be a positive integer");
        }
        return static_cast<std::size_t>(v);
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

std::string read_input(const std::string& path) {
    if (path == "-") {
        std::ostringstream buf;
        buf << std::cin.rdbuf();
        return buf.str();
    }
    return read_text_file(path);
}

ParsedCorpus load_corpus(const CorpusArgs& a) {
    if (a.alphabet.empty() && !a.infer) {
        throw ValidationError("declare the alphabet with --alphabet or pass --infer-alphabet");
    }
    const std::string text = read_input(a.path);
    const CorpusFormat format =
        a.format == "auto" ? detect_corpus_format(text) : *parse_corpus_format(a.format);
    std::optional<Alphabet> alphabet;
    if (!a.alphabet.empty()) alphabet = parse_alphabet_list(a.alphabet);
    return parse_corpus(text, format, alphabet);
}

const CategoricalSeries& pick_series(const ParsedCorpus& corpus, std::size_t index) {
    if (index == 0 || index > corpus.series.size()) {
        throw ValidationError("--series must lie in 1.." + std::to_string(corpus.series.size()));
    }
    return corpus.series[index - 1];
}

std::size_t category_of(const Alphabet& alphabet, const std::string& symbol) {
    const auto k = alphabet.index_of(symbol);
    if (!k) throw ValidationError("category '" + symbol + "' is not in the alphabet");
    return *k;
}

std::vector<double> parse_numbers(const std::string& list, const char* what) {
    std::vector<double> out;
    std::stringstream ss(list);
    std::string item;
    while (std::getline(ss, item, ',')) {
        char* end = nullptr;
        errno = 0;
        const double v = std::strtod(item.c_str(), &end);
        if (item.empty() || *end != '\0' || errno == ERANGE || !std::isfinite(v)) {
            throw ValidationError(std::string("invalid number '") + item + "' in " + what);
        }
        out.push_back(v);
    }
    if (out.empty()) throw ValidationError(std::string(what) + " is empty");
    return out;
}

Json json_number(double v, bool bitexact) {
    if (!std::isfinite(v)) return nullptr;
    if (bitexact) return format_number(v, true);
    return std::strtod(format_number(v, false).c_str(), nullptr);
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

void emit(const OutputArgs& a, const std::string& content, std::ostream& out) {
    if (a.output.empty()) {
        out << content;
        return;
    }
    std::ofstream file(a.output, std::ios::binary);
    if (!file) throw ValidationError("cannot write '" + a.output + "'");
    file << content;
    if (!file) throw ValidationError("failed writing '" + a.output + "'");
}

std::string id_header(const ParsedCorpus& corpus) {
    return corpus.has_labels() ? "id,label" : "id";
}

std::string id_cells(const ParsedCorpus& corpus, std::size_t k) {
    std::string s = csv_field(corpus.ids[k]);
    if (corpus.has_labels()) s += ',' + csv_field(corpus.labels[k].value_or(""));
    return s;
}

// ---------------------------------------------------------------------------
// features

struct FeaturesArgs {
    CorpusArgs corpus;
    OutputArgs out;
    std::vector<std::string> measures;
    std::vector<std::size_t> lags{1};
    bool expand = false;
    std::string preset;
    std::size_t max_lag = 1;
};

std::string run_features(const FeaturesArgs& a) {
    const auto corpus = load_corpus(a.corpus);
    if (!a.preset.empty() && !a.measures.empty()) {
        throw ValidationError("--preset and --measures are mutually exclusive");
    }
    if (a.preset.empty() && a.measures.empty()) throw ValidationError("give --measures or --preset");
    const FeatureRequest request{a.measures, a.lags, a.expand};
    const std::size_t n = corpus.series.size();
    std::vector<FeatureVector> rows(n);
    std::vector<std::string> errors(n);
    parallel_for(n, resolve_workers(a.out.workers), [&](std::size_t k) {
        try {
            if (a.preset == "dcc") rows[k] = dcc_features(corpus.series[k], a.max_lag);
            else if (a.preset == "db") rows[k] = db_features(corpus.series[k], a.max_lag);
            else rows[k] = extract_features(corpus.series[k], request);
        } catch (const ValidationError& e) {
            errors[k] = e.what();
        }
    });
    for (std::size_t k = 0; k < n; ++k) {
        if (!errors[k].empty()) throw ValidationError("series " + corpus.ids[k] + ": " + errors[k]);
    }
    std::string csv = id_header(corpus);
    for (const auto& d : rows.front().schema) csv += ',' + csv_field(d.label());
    csv += '\n';
    for (std::size_t k = 0; k < n; ++k) {
        csv += id_cells(corpus, k);
        for (double v : rows[k].values) csv += ',' + format_number(v, a.out.bitexact);
        csv += '\n';
    }
    return csv;
}

// ---------------------------------------------------------------------------
// test

struct TestArgs {
    CorpusArgs corpus;
    OutputArgs out;
    std::string family;
    std::size_t max_lag = 10;
    double alpha = 0.05;
    bool holm = false;
    std::size_t series = 0;  // 0: all
};

std::string run_test(const TestArgs& a) {
    const auto corpus = load_corpus(a.corpus);
    const auto family = parse_test_family(a.family);
    if (!family) throw ValidationError("unknown test family '" + a.family + "' (use v or kappa)");
    const bool bx = a.out.bitexact;

    Json doc;
    doc["family"] = std::string(to_string(*family));
    doc["alpha"] = json_number(a.alpha, bx);
    doc["max_lag"] = a.max_lag;
    doc["holm"] = a.holm;
    Json list = Json::array();
    for (std::size_t k = 0; k < corpus.series.size(); ++k) {
        if (a.series != 0 && a.series != k + 1) continue;
        const auto& s = corpus.series[k];
        TestReport report;
        try {
            report = dependence_test(*family, s, a.max_lag, a.alpha);
        } catch (const ValidationError& e) {
            throw ValidationError("series " + corpus.ids[k] + ": " + e.what());
        }
        Json entry;
        entry["id"] = corpus.ids[k];
        entry["length"] = s.length();
        entry["critical_lower"] = report.critical_lower ? json_number(*report.critical_lower, bx) : Json(nullptr);
        entry["critical_upper"] = json_number(report.critical_upper, bx);
        const auto p = report.p_values();
        const auto adjusted = holm_adjust(p);
        Json lags = Json::array();
        for (std::size_t l = 0; l < report.rows.size(); ++l) {
            const auto& row = report.rows[l];
            Json r;
            r["lag"] = row.lag;
            r["estimate"] = json_number(row.estimate, bx);
            r["statistic"] = json_number(row.statistic, bx);
            r["p_value"] = json_number(row.p_value, bx);
            if (a.holm) r["p_value_holm"] = json_number(adjusted[l], bx);
            lags.push_back(std::move(r));
        }
        entry["lags"] = std::move(lags);
        Json pv = Json::array();
        for (double v : a.holm ? adjusted : p) pv.push_back(json_number(v, bx));
        entry["p_values"] = std::move(pv);
        list.push_back(std::move(entry));
    }
    if (a.series > corpus.series.size()) {
        throw ValidationError("--series must lie in 1.." + std::to_string(corpus.series.size()));
    }
    doc["series"] = std::move(list);
    return dump(doc);
}

// ---------------------------------------------------------------------------
// plot

struct PlotArgs {
    CorpusArgs corpus;
    OutputArgs out;
    std::size_t series = 1;
    bool csv = false;
    std::string title;
    // kind-specific
    std::size_t head = 0;
    std::string category;
    double alpha = 0.0;
    double beta = 0.0;
    std::string origin;
    std::string window;
    std::string family;
    std::size_t max_lag = 10;
    double level = 0.05;
    double chart_alpha = 0.01;
    std::string in_control;
    double lambda = 0.9;
    double k = 3.0;
    std::string start;
    bool collapse = false;
};

std::optional<std::vector<double>> optional_numbers(const std::string& list, const char* what) {
    if (list.empty()) return std::nullopt;
    return parse_numbers(list, what);
}

PlotData build_plot(const std::string& kind, const PlotArgs& a) {
    const auto corpus = load_corpus(a.corpus);
    const auto& s = pick_series(corpus, a.series);
    if (kind == "ts") {
        if (a.head > 0 && a.head < s.length()) {
            std::vector<std::size_t> codes(s.codes().begin(), s.codes().begin() + static_cast<long>(a.head));
            return TimeSeriesPlot{CategoricalSeries(std::move(codes), s.alphabet())};
        }
        return TimeSeriesPlot{s};
    }
    if (kind == "rate") return rate_evolution(s);
    if (kind == "pattern") return cycle_lengths(s, category_of(s.alphabet(), a.category));
    if (kind == "ifs") {
        Point2 origin{};
        if (!a.origin.empty()) {
            const auto o = parse_numbers(a.origin, "--origin");
            if (o.size() != 2) throw ValidationError("--origin needs x,y");
            origin = {o[0], o[1]};
        }
        IfsPlot plot{ifs_circle_transform(s, a.alpha, a.beta, origin), std::nullopt};
        if (!a.window.empty()) {
            const auto w = parse_numbers(a.window, "--window");
            if (w.size() != 4) throw ValidationError("--window needs x0,x1,y0,y1");
            plot.window = PlotWindow{w[0], w[1], w[2], w[3]};
        }
        return plot;
    }
    if (kind == "dependence") {
        const auto family = parse_test_family(a.family);
        if (!family) throw ValidationError("unknown test family '" + a.family + "' (use v or kappa)");
        return dependence_plot_data(s, *family, a.max_lag, a.level);
    }
    if (kind == "cycle-chart") {
        auto p = optional_numbers(a.in_control, "--in-control");
        if (a.category.empty()) return combined_cycle_length_chart(s, a.chart_alpha, std::move(p));
        return cycle_length_chart(s, category_of(s.alphabet(), a.category), a.chart_alpha, std::move(p));
    }
    // ewma
    auto start = a.start.empty() ? marginal_probabilities(s) : parse_numbers(a.start, "--start");
    return ewma_marginal_chart(s, a.lambda, std::move(start), a.k, a.collapse,
                               optional_numbers(a.in_control, "--in-control"));
}

std::string run_plot(const std::string& kind, const PlotArgs& a) {
    const auto data = build_plot(kind, a);
    if (a.csv) return to_csv(data, a.out.bitexact);
    return render_svg(data, SvgStyle{a.title});
}

// ---------------------------------------------------------------------------
// dist, mds, outliers

struct DistanceArgs {
    CorpusArgs corpus;
    OutputArgs out;
    std::string metric = "db";
    std::size_t max_lag = 1;
    bool root = false;
    bool from_table = false;
};

struct LabelledDistances {
    std::vector<std::string> ids;
    std::vector<std::optional<std::string>> labels;
    DistanceMatrix dm;
};

void add_distance_args(CLI::App* app, DistanceArgs& a, bool allow_table) {
    add_corpus_args(app, a.corpus);
    add_output_args(app, a.out);
    app->add_option("--metric", a.metric, "dcc or db")->check(CLI::IsMember({"dcc", "db"}));
    app->add_option("--max-lag", a.max_lag, "Largest lag L")->check(CLI::PositiveNumber);
    app->add_flag("--root", a.root, "Use the square root of the metric (plain Euclidean distance)");
    if (allow_table) {
        app->add_flag("--distances", a.from_table, "The input is a distance table written by 'dist'");
    }
}

LabelledDistances compute_distances(const DistanceArgs& a) {
    if (a.from_table) {
        auto table = parse_distance_csv(read_input(a.corpus.path));
        const std::size_t n = table.ids.size();
        return {std::move(table.ids), std::vector<std::optional<std::string>>(n),
                DistanceMatrix{Metric::euclidean, 0, false, std::move(table.values)}};
    }
    const auto corpus = load_corpus(a.corpus);
    DistanceOptions options{*parse_metric(a.metric), a.max_lag, a.root, resolve_workers(a.out.workers)};
    return {corpus.ids, corpus.labels, distance_matrix(corpus.series, options)};
}

std::string run_dist(const DistanceArgs& a) {
    const auto d = compute_distances(a);
    std::string csv = "id";
    for (const auto& id : d.ids) csv += ',' + csv_field(id);
    csv += '\n';
    for (std::size_t i = 0; i < d.ids.size(); ++i) {
        csv += csv_field(d.ids[i]);
        for (std::size_t j = 0; j < d.ids.size(); ++j) {
            csv += ',' + format_number(d.dm.values(i, j), a.out.bitexact);
        }
        csv += '\n';
    }
    return csv;
}

std::string run_mds(const DistanceArgs& a, std::ostream& err) {
    const auto d = compute_distances(a);
    const auto result = two_dimensional_scaling(d.dm.values);
    char note[96];
    std::snprintf(note, sizeof note, "clamped eigenvalue mass: %.6g\n", result.clamped_mass);
    err << note;
    const bool labelled =
        std::any_of(d.labels.begin(), d.labels.end(), [](const auto& l) { return l.has_value(); });
    std::string csv = labelled ? "id,label,x,y\n" : "id,x,y\n";
    for (std::size_t i = 0; i < d.ids.size(); ++i) {
        csv += csv_field(d.ids[i]);
        if (labelled) csv += ',' + csv_field(d.labels[i].value_or(""));
        csv += ',' + format_number(result.coordinates(i, 0), a.out.bitexact) + ',' +
               format_number(result.coordinates(i, 1), a.out.bitexact) + '\n';
    }
    return csv;
}

std::string run_outliers(const DistanceArgs& a, double factor) {
    const auto d = compute_distances(a);
    const bool bx = a.out.bitexact;
    const auto ranking = outlier_scores(d.dm.values);
    const auto box = boxplot_outlier_count(ranking.scores, factor);
    std::vector<std::size_t> rank(ranking.order.size());
    for (std::size_t k = 0; k < ranking.order.size(); ++k) rank[ranking.order[k]] = k + 1;

    Json doc;
    doc["metric"] = a.from_table ? std::string("table") : a.metric;
    if (!a.from_table) {
        doc["max_lag"] = a.max_lag;
        doc["root"] = a.root;
    }
    doc["range_factor"] = json_number(factor, bx);
    Json scores = Json::array();
    for (std::size_t i = 0; i < d.ids.size(); ++i) {
        Json s;
        s["id"] = d.ids[i];
        s["score"] = json_number(ranking.scores[i], bx);
        s["rank"] = rank[i];
        scores.push_back(std::move(s));
    }
    doc["scores"] = std::move(scores);
    Json order = Json::array();
    for (auto k : ranking.order) order.push_back(d.ids[k]);
    doc["ranking"] = std::move(order);
    doc["boxplot"] = {{"q1", json_number(box.q1, bx)},
                      {"q3", json_number(box.q3, bx)},
                      {"iqr", json_number(box.iqr, bx)},
                      {"threshold", json_number(box.threshold, bx)}};
    Json flagged = Json::array();
    for (auto k : box.flagged) flagged.push_back(d.ids[k]);
    doc["outliers"] = std::move(flagged);
    doc["outlier_count"] = box.count();
    return dump(doc);
}

// ---------------------------------------------------------------------------
// simulate

struct SimulateArgs {
    std::string spec;
    OutputArgs out;
};

std::string run_simulate(const SimulateArgs& a) {
    const auto spec = parse_corpus_spec(read_input(a.spec));
    const auto corpus = generate_corpus(spec, resolve_workers(a.out.workers));
    std::vector<std::string> labels;
    for (auto l : corpus.labels) labels.push_back(std::to_string(l));
    std::string text = "# alphabet: ";
    const auto& symbols = corpus.series.front().alphabet().symbols();
    for (std::size_t k = 0; k < symbols.size(); ++k) text += (k ? "," : "") + symbols[k];
    text += '\n';
    return text + write_corpus(corpus.series, labels);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Feature extraction, dependence tests, plots, distances and simulation for "
                 "categorical time series",
                 "catseries"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all", "Show help for every subcommand");

    FeaturesArgs fa;
    auto* features = app.add_subcommand("features", "Feature matrix (one CSV row per series)");
    add_corpus_args(features, fa.corpus);
    add_output_args(features, fa.out);
    features->add_option("--measures", fa.measures,
                         "gini, entropy, chebycheff, marginals or any serial measure "
                         "(gk_tau, gk_lambda, uncertainty, pearson, phi2, sakoda, cramers_v, "
                         "cohens_kappa, total_correlation)")
        ->delimiter(',');
    features->add_option("--lag,--lags", fa.lags, "Lags for serial measures")->delimiter(',');
    features->add_flag("--expand", fa.expand, "Emit the per-cell components of serial measures");
    features->add_option("--preset", fa.preset, "Feature set of a distance: dcc or db")
        ->check(CLI::IsMember({"dcc", "db"}));
    features->add_option("--max-lag", fa.max_lag, "Largest lag for --preset")->check(CLI::PositiveNumber);

    TestArgs ta;
    auto* test = app.add_subcommand("test", "Serial independence tests (JSON report)");
    add_corpus_args(test, ta.corpus);
    add_output_args(test, ta.out);
    test->add_option("--family", ta.family, "v (Cramer's v) or kappa (Cohen's kappa)")->required();
    test->add_option("--max-lag", ta.max_lag, "Test lags 1..L")->check(CLI::PositiveNumber);
    test->add_option("--alpha", ta.alpha, "Significance level");
    test->add_flag("--holm", ta.holm, "Add Holm-adjusted p-values");
    test->add_option("--series", ta.series, "Only this series (1-based)")->check(CLI::PositiveNumber);

    auto* plot = app.add_subcommand("plot", "Plots as SVG (or their data as CSV)");
    plot->require_subcommand(1);
    PlotArgs pa;
    std::string plot_kind;
    auto plot_kind_cmd = [&](const char* name, const char* help) {
        auto* sub = plot->add_subcommand(name, help);
        add_corpus_args(sub, pa.corpus);
        add_output_args(sub, pa.out);
        sub->add_option("--series", pa.series, "Series to plot (1-based)")->check(CLI::PositiveNumber);
        sub->add_flag("--csv", pa.csv, "Emit the plotted data as CSV");
        sub->add_option("--title", pa.title, "Plot title");
        sub->callback([&plot_kind, name] { plot_kind = name; });
        return sub;
    };
    plot_kind_cmd("ts", "Time series plot")
        ->add_option("--head", pa.head, "Only the first N observations");
    plot_kind_cmd("rate", "Rate evolution graph");
    plot_kind_cmd("pattern", "Pattern histogram of one category")
        ->add_option("--category", pa.category, "Category symbol")
        ->required();
    {
        auto* ifs = plot_kind_cmd("ifs", "IFS circle transformation");
        ifs->add_option("--alpha", pa.alpha, "Contraction factor in (0, 1)")->required();
        ifs->add_option("--beta", pa.beta, "Step towards the category point (> 0)")->required();
        ifs->add_option("--origin", pa.origin, "Starting point x,y (default 0,0)");
        ifs->add_option("--window", pa.window, "Zoom window x0,x1,y0,y1");
    }
    {
        auto* dep = plot_kind_cmd("dependence", "Serial dependence plot with critical values");
        dep->add_option("--family", pa.family, "v or kappa")->required();
        dep->add_option("--max-lag", pa.max_lag, "Lags 1..L")->check(CLI::PositiveNumber);
        dep->add_option("--alpha", pa.level, "Significance level");
    }
    {
        auto* cyc = plot_kind_cmd("cycle-chart", "Control chart of cycle lengths");
        cyc->add_option("--category", pa.category, "Category symbol (default: all categories)");
        cyc->add_option("--alpha", pa.chart_alpha, "False alarm probability per cycle");
        cyc->add_option("--in-control", pa.in_control, "In-control marginal p1,...,pr (default: sample)");
    }
    {
        auto* ewma = plot_kind_cmd("ewma", "EWMA control chart of the marginal distribution");
        ewma->add_option("--lambda", pa.lambda, "Smoothing parameter in (0, 1)");
        ewma->add_option("--k", pa.k, "Width of the k-sigma limits");
        ewma->add_option("--start", pa.start, "Starting vector c (default: sample marginals)");
        ewma->add_option("--in-control", pa.in_control, "In-control marginal p (default: c)");
        ewma->add_flag("--collapse", pa.collapse, "Plot only the minimum and maximum statistics");
    }

    DistanceArgs da;
    auto* dist = app.add_subcommand("dist", "Pairwise distance matrix (CSV)");
    add_distance_args(dist, da, false);

    DistanceArgs ma;
    auto* mds = app.add_subcommand("mds", "Two-dimensional scaling coordinates (CSV)");
    add_distance_args(mds, ma, true);

    DistanceArgs oa;
    double factor = 1.0;
    auto* outliers = app.add_subcommand("outliers", "Distance-sum outlier scores and boxplot rule (JSON)");
    add_distance_args(outliers, oa, true);
    outliers->add_option("--range", factor, "Boxplot whisker factor")->check(CLI::NonNegativeNumber);

    SimulateArgs sa;
    auto* simulate = app.add_subcommand("simulate", "Generate a corpus from a JSON specification");
    simulate->add_option("spec", sa.spec, "Corpus specification (JSON; '-' for stdin)")->required();
    add_output_args(simulate, sa.out);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << (app.get_subcommands().empty() ? app.help() : app.get_subcommands().back()->help());
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        const CLI::App* failing = &app;
        while (!failing->get_subcommands().empty()) failing = failing->get_subcommands().back();
        err << "error: " << e.what() << "\n\n" << failing->help();
        return kExitValidation;
    }

    try {
        if (features->parsed()) emit(fa.out, run_features(fa), out);
        else if (test->parsed()) emit(ta.out, run_test(ta), out);
        else if (plot->parsed()) emit(pa.out, run_plot(plot_kind, pa), out);
        else if (dist->parsed()) emit(da.out, run_dist(da), out);
        else if (mds->parsed()) emit(ma.out, run_mds(ma, err), out);
        else if (outliers->parsed()) emit(oa.out, run_outliers(oa, factor), out);
        else if (simulate->parsed()) emit(sa.out, run_simulate(sa), out);
    } catch (const ValidationError& e) {
        err << "error: " << e.what() << '\n';
        return kExitValidation;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << '\n';
        return kExitInternal;
    }
    return kExitOk;
}

}  // namespace cts::cli
