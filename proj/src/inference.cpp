#include "catseries/inference.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "catseries/distributions.hpp"
#include "catseries/serial.hpp"

namespace cts {
namespace {

void require_test_args(const CategoricalSeries& series, std::size_t max_lag, double alpha) {
    if (max_lag < 1) throw ValidationError("max lag must be at least 1");
    if (max_lag >= series.length()) throw ValidationError("lag exceeds series length");
    if (!(alpha > 0.0 && alpha < 1.0)) throw ValidationError("alpha must lie in (0, 1)");
    const auto counts = marginal_counts(series);
    if (*std::max_element(counts.begin(), counts.end()) == series.length()) {
        throw ValidationError("dependence test undefined for one-point marginal");
    }
}

}  // namespace

std::string_view to_string(TestFamily family) {
    return family == TestFamily::cramers_v ? "cramers_v" : "cohens_kappa";
}

std::optional<TestFamily> parse_test_family(std::string_view name) {
    if (name == "cramers_v" || name == "v" || name == "cramer") return TestFamily::cramers_v;
    if (name == "cohens_kappa" || name == "kappa" || name == "cohen") return TestFamily::cohens_kappa;
    return std::nullopt;
}

std::vector<double> TestReport::p_values() const {
    std::vector<double> out;
    out.reserve(rows.size());
    for (const auto& row : rows) out.push_back(row.p_value);
    return out;
}

TestReport cramers_v_test(const CategoricalSeries& series, std::size_t max_lag, double alpha) {
    require_test_args(series, max_lag, alpha);
    const double T = static_cast<double>(series.length());
    const double r = static_cast<double>(series.categories());
    const double dof = (r - 1.0) * (r - 1.0);

    TestReport report{TestFamily::cramers_v, alpha, max_lag, series.length(), std::nullopt,
                      std::sqrt(dist::chi_square_quantile(1.0 - alpha, dof) / (T * (r - 1.0))),
                      {}};
    for (std::size_t l = 1; l <= max_lag; ++l) {
        const double v = cramers_v(lag_tables(series, l)).value;
        const double stat = T * (r - 1.0) * v * v;
        report.rows.push_back({l, v, stat, dist::chi_square_sf(stat, dof)});
    }
    return report;
}

double kappa_null_variance(std::span<const double> p) {
    double s2 = 0.0;
    double s3 = 0.0;
    for (double v : p) {
        s2 += v * v;
        s3 += v * v * v;
    }
    const double denom = (1.0 - s2) * (1.0 - s2);
    if (!(denom > 0.0)) throw ValidationError("kappa variance undefined for one-point marginal");
    return 1.0 - (1.0 + 2.0 * s3 - 3.0 * s2) / denom;
}

TestReport cohens_kappa_test(const CategoricalSeries& series, std::size_t max_lag, double alpha) {
    require_test_args(series, max_lag, alpha);
    const double T = static_cast<double>(series.length());
    const double var = kappa_null_variance(marginal_probabilities(series));
    if (!(var > 0.0)) throw ValidationError("kappa null variance is not positive");
    const double scale = std::sqrt(T / var);
    const double z = dist::normal_quantile(1.0 - alpha / 2.0);

    TestReport report{TestFamily::cohens_kappa, alpha,  max_lag, series.length(),
                      -z / scale - 1.0 / T,     z / scale - 1.0 / T, {}};
    for (std::size_t l = 1; l <= max_lag; ++l) {
        const double kappa = cohens_kappa(lag_tables(series, l)).value;
        const double stat = scale * (kappa + 1.0 / T);
        const double p = std::min(1.0, 2.0 * dist::normal_sf(std::abs(stat)));
        report.rows.push_back({l, kappa, stat, p});
    }
    return report;
}

TestReport dependence_test(TestFamily family, const CategoricalSeries& series,
                           std::size_t max_lag, double alpha) {
    return family == TestFamily::cramers_v ? cramers_v_test(series, max_lag, alpha)
                                           : cohens_kappa_test(series, max_lag, alpha);
}

std::vector<double> holm_adjust(std::span<const double> p_values) {
    for (double p : p_values) {
        if (!(p >= 0.0 && p <= 1.0)) throw ValidationError("p-value outside [0, 1]");
    }
    const std::size_t m = p_values.size();
    std::vector<std::size_t> order(m);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return p_values[a] < p_values[b]; });

    std::vector<double> adjusted(m);
    double running = 0.0;
    for (std::size_t k = 0; k < m; ++k) {
        const double scaled = static_cast<double>(m - k) * p_values[order[k]];
        running = std::max(running, std::min(1.0, scaled));
        adjusted[order[k]] = running;
    }
    return adjusted;
}

}  // namespace cts
