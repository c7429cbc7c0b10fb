#pragma once

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "catseries/core.hpp"

namespace cts {

enum class TestFamily { cramers_v, cohens_kappa };

[[nodiscard]] std::string_view to_string(TestFamily family);
[[nodiscard]] std::optional<TestFamily> parse_test_family(std::string_view name);

struct LagTestRow {
    std::size_t lag;
    double estimate;   ///< v(l) or kappa(l)
    double statistic;  ///< T (r-1) v^2, or sqrt(T / V) (kappa + 1/T)
    double p_value;
};

/// Serial independence tests for lags 1..L under the i.i.d. null.
///
/// Cramer's v: T (r-1) v(l)^2 is asymptotically chi-square with (r-1)^2
/// degrees of freedom; one-sided, so only an upper critical value for v.
/// Cohen's kappa: sqrt(T / V(p)) (kappa(l) + 1/T) is asymptotically standard
/// normal with V(p) = 1 - (1 + 2 sum p^3 - 3 sum p^2) / (1 - sum p^2)^2;
/// two-sided, with critical values +-z_{1-alpha/2} / sqrt(T / V) - 1/T.
/// The critical values do not depend on the lag.
struct TestReport {
    TestFamily family;
    double alpha;
    std::size_t max_lag;
    std::size_t length;  ///< T
    std::optional<double> critical_lower;  ///< kappa only
    double critical_upper;
    std::vector<LagTestRow> rows;

    [[nodiscard]] std::vector<double> p_values() const;
};

[[nodiscard]] TestReport cramers_v_test(const CategoricalSeries& series, std::size_t max_lag,
                                        double alpha);
[[nodiscard]] TestReport cohens_kappa_test(const CategoricalSeries& series, std::size_t max_lag,
                                           double alpha);
[[nodiscard]] TestReport dependence_test(TestFamily family, const CategoricalSeries& series,
                                         std::size_t max_lag, double alpha);

/// V(p) of the kappa test.
[[nodiscard]] double kappa_null_variance(std::span<const double> p);

/// Holm step-down adjustment; output order matches input order.
[[nodiscard]] std::vector<double> holm_adjust(std::span<const double> p_values);

}  // namespace cts
