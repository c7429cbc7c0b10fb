#include "catseries/viz.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace cts {

RateEvolution rate_evolution(const CategoricalSeries& series) {
    const std::size_t T = series.length();
    const std::size_t r = series.categories();
    CountMatrix cum(T, r, 0);
    for (std::size_t t = 0; t < T; ++t) {
        if (t > 0) {
            for (std::size_t i = 0; i < r; ++i) cum(t, i) = cum(t - 1, i);
        }
        ++cum(t, series[t]);
    }
    return {series.alphabet(), std::move(cum)};
}

PatternHistogram cycle_lengths(const CategoricalSeries& series, std::size_t category) {
    if (category >= series.categories()) throw ValidationError("category not in alphabet");
    PatternHistogram hist{category, series.alphabet().symbol(category), {}, {}};
    std::optional<std::size_t> last;
    for (std::size_t t = 0; t < series.length(); ++t) {
        if (series[t] != category) continue;
        if (last) {
            hist.cycles.push_back({category, *last, t - *last});
            ++hist.counts[t - *last];
        }
        last = t;
    }
    return hist;
}

Point2 circle_point(std::size_t category, std::size_t categories) {
    const double angle = 2.0 * std::numbers::pi * static_cast<double>(category) /
                         static_cast<double>(categories);
    return {std::cos(angle), std::sin(angle)};
}

FractalSeries ifs_circle_transform(const CategoricalSeries& series, double alpha, double beta,
                                   Point2 origin) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw ValidationError("alpha must lie in (0, 1)");
    if (!(beta > 0.0)) throw ValidationError("beta must be positive");
    const std::size_t r = series.categories();
    std::vector<Point2> corners(r);
    for (std::size_t i = 0; i < r; ++i) corners[i] = circle_point(i, r);

    FractalSeries out{alpha, beta, origin, {}};
    out.points.reserve(series.length());
    Point2 f = origin;
    for (auto code : series.codes()) {
        f = {alpha * f.x + beta * corners[code].x, alpha * f.y + beta * corners[code].y};
        out.points.push_back(f);
    }
    return out;
}

DependencePlotData dependence_plot_data(const CategoricalSeries& series, TestFamily family,
                                        std::size_t max_lag, double alpha) {
    const auto report = dependence_test(family, series, max_lag, alpha);
    DependencePlotData data{family, alpha, report.critical_lower, report.critical_upper, {}, {}, {}};
    for (const auto& row : report.rows) {
        data.lags.push_back(row.lag);
        data.estimates.push_back(row.estimate);
        data.p_values.push_back(row.p_value);
    }
    return data;
}

double standardized_statistic(double value, double mean, double lcl, double ucl) {
    const double dev = value - mean;
    auto part = [dev](double limit_gap) {
        if (limit_gap > 0.0) return dev / limit_gap;
        if (dev == 0.0) return 0.0;
        return dev > 0 ? std::numeric_limits<double>::infinity()
                       : -std::numeric_limits<double>::infinity();
    };
    const double lower = std::min(0.0, part(std::abs(lcl - mean)));
    const double upper = std::max(0.0, part(std::abs(ucl - mean)));
    return lower + upper;
}

std::size_t geometric_quantile(double q, double p) {
    if (!(p > 0.0 && p < 1.0)) throw ValidationError("geometric probability must lie in (0, 1)");
    if (!(q > 0.0 && q < 1.0)) throw ValidationError("quantile level must lie in (0, 1)");
    auto cdf = [p](double k) { return 1.0 - std::pow(1.0 - p, k); };
    auto k = static_cast<std::size_t>(std::max(1.0, std::ceil(std::log1p(-q) / std::log1p(-p))));
    while (k > 1 && cdf(static_cast<double>(k - 1)) >= q) --k;
    while (cdf(static_cast<double>(k)) < q) ++k;
    return k;
}

std::size_t CycleLengthChart::alarm_count() const {
    return static_cast<std::size_t>(
        std::count_if(points.begin(), points.end(), [](const auto& p) { return p.alarm; }));
}

namespace {

std::vector<double> resolve_in_control(const CategoricalSeries& series,
                                       std::optional<std::vector<double>> in_control) {
    auto p = in_control ? std::move(*in_control) : marginal_probabilities(series);
    if (p.size() != series.categories()) {
        throw ValidationError("in-control distribution has the wrong number of categories");
    }
    require_probability_vector(p, "in-control distribution");
    return p;
}

void append_cycle_points(const CategoricalSeries& series, std::size_t category, double alpha,
                         const std::vector<double>& p, std::vector<CycleChartPoint>& out) {
    const double pj = p[category];
    if (!(pj > 0.0 && pj < 1.0)) {
        throw ValidationError("in-control probability of the category must lie in (0, 1)");
    }
    const double mean = 1.0 / pj;
    const auto lcl = static_cast<double>(geometric_quantile(alpha / 2.0, pj));
    const auto ucl = static_cast<double>(geometric_quantile(1.0 - alpha / 2.0, pj));
    for (const auto& cycle : cycle_lengths(series, category).cycles) {
        const double c = static_cast<double>(cycle.length);
        const double stat = standardized_statistic(c, mean, lcl, ucl);
        out.push_back({cycle.start + cycle.length, category, cycle.length, mean, lcl, ucl, stat,
                       standardized_alarm(stat)});
    }
}

}  // namespace

CycleLengthChart cycle_length_chart(const CategoricalSeries& series, std::size_t category,
                                    double alpha, std::optional<std::vector<double>> in_control) {
    if (category >= series.categories()) throw ValidationError("category not in alphabet");
    if (!(alpha > 0.0 && alpha < 1.0)) throw ValidationError("alpha must lie in (0, 1)");
    const auto counts = marginal_counts(series);
    if (counts[category] < 2) {
        throw ValidationError("category occurs fewer than two times; no cycles to chart");
    }
    CycleLengthChart chart{alpha, resolve_in_control(series, std::move(in_control)), {}};
    append_cycle_points(series, category, alpha, chart.in_control, chart.points);
    return chart;
}

CycleLengthChart combined_cycle_length_chart(const CategoricalSeries& series, double alpha,
                                             std::optional<std::vector<double>> in_control) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw ValidationError("alpha must lie in (0, 1)");
    CycleLengthChart chart{alpha, resolve_in_control(series, std::move(in_control)), {}};
    const auto counts = marginal_counts(series);
    for (std::size_t j = 0; j < series.categories(); ++j) {
        if (counts[j] >= 2) append_cycle_points(series, j, alpha, chart.in_control, chart.points);
    }
    if (chart.points.empty()) throw ValidationError("no category occurs twice; no cycles to chart");
    std::stable_sort(chart.points.begin(), chart.points.end(),
                     [](const auto& a, const auto& b) { return a.time < b.time; });
    return chart;
}

std::size_t EwmaChart::alarm_count() const {
    return static_cast<std::size_t>(std::count(alarms.begin(), alarms.end(), true));
}

EwmaChart ewma_marginal_chart(const CategoricalSeries& series, double lambda,
                              std::vector<double> start, double k, bool collapse,
                              std::optional<std::vector<double>> in_control) {
    if (!(lambda > 0.0 && lambda < 1.0)) throw ValidationError("lambda must lie in (0, 1)");
    if (!(k > 0.0)) throw ValidationError("k must be positive");
    const std::size_t r = series.categories();
    const std::size_t T = series.length();
    if (start.size() != r) throw ValidationError("start vector has the wrong number of categories");
    require_probability_vector(start, "start vector");
    std::vector<double> p = in_control ? std::move(*in_control) : start;
    if (p.size() != r) throw ValidationError("in-control distribution has the wrong length");
    require_probability_vector(p, "in-control distribution");
    for (double v : p) {
        if (!(v > 0.0 && v < 1.0)) {
            throw ValidationError("in-control probabilities must lie in (0, 1)");
        }
    }

    EwmaChart chart{collapse ? ChartKind::ewma_minmax : ChartKind::ewma_marginal,
                    series.alphabet(), lambda, k, start, p, Matrix(T, r), Matrix(T, r),
                    Matrix(T, r), {}, {}, std::vector<bool>(T, false)};
    std::vector<double> pi = start;
    double lambda_pow = 1.0;  // lambda^{2t}
    for (std::size_t t = 0; t < T; ++t) {
        lambda_pow *= lambda * lambda;
        double tmin = std::numeric_limits<double>::infinity();
        double tmax = -tmin;
        for (std::size_t i = 0; i < r; ++i) {
            pi[i] = lambda * pi[i] + (1.0 - lambda) * (series[t] == i ? 1.0 : 0.0);
            const double var =
                p[i] * (1.0 - p[i]) * (1.0 - lambda) * (1.0 - lambda_pow) / (1.0 + lambda);
            const double sd = std::sqrt(var);
            const double stat = (pi[i] - p[i]) / (k * sd);
            chart.estimates(t, i) = pi[i];
            chart.sigma(t, i) = sd;
            chart.statistics(t, i) = stat;
            tmin = std::min(tmin, stat);
            tmax = std::max(tmax, stat);
        }
        if (collapse) {
            chart.minimum.push_back(tmin);
            chart.maximum.push_back(tmax);
        }
        chart.alarms[t] = standardized_alarm(tmin) || standardized_alarm(tmax);
    }
    return chart;
}

}  // namespace cts
