#pragma once

#include <map>
#include <optional>
#include <vector>

#include "catseries/core.hpp"
#include "catseries/inference.hpp"

namespace cts {

// ---------------------------------------------------------------------------
// Exploratory plots
// ---------------------------------------------------------------------------

/// Cumulated one-hot sums: row t holds the category counts in X_1..X_{t+1}.
struct RateEvolution {
    Alphabet alphabet;
    CountMatrix cumulative;  ///< T x r
};

[[nodiscard]] RateEvolution rate_evolution(const CategoricalSeries& series);

/// A cycle of category j: X_start = j = X_{start+length}, with no j strictly
/// between. `start` is a 0-based time index.
struct CycleRecord {
    std::size_t category;
    std::size_t start;
    std::size_t length;

    bool operator==(const CycleRecord&) const = default;
};

/// Pattern histogram of one category.
struct PatternHistogram {
    std::size_t category;
    std::string label;
    std::vector<CycleRecord> cycles;          ///< in time order
    std::map<std::size_t, std::size_t> counts;  ///< length -> number of cycles
};

/// Empty when the category occurs fewer than two times.
[[nodiscard]] PatternHistogram cycle_lengths(const CategoricalSeries& series,
                                             std::size_t category);

struct Point2 {
    double x = 0.0;
    double y = 0.0;
};

/// IFS circle transformation: F_k = alpha F_{k-1} + beta phi(X_k), where
/// phi(i) = (cos(2 pi i / r), sin(2 pi i / r)) for the 0-based category i.
struct FractalSeries {
    double alpha;
    double beta;
    Point2 origin;              ///< F_0
    std::vector<Point2> points;  ///< F_1..F_T
};

[[nodiscard]] Point2 circle_point(std::size_t category, std::size_t categories);

/// Requires 0 < alpha < 1 and beta > 0.
[[nodiscard]] FractalSeries ifs_circle_transform(const CategoricalSeries& series, double alpha,
                                                 double beta, Point2 origin = {});

// ---------------------------------------------------------------------------
// Serial dependence plots
// ---------------------------------------------------------------------------

struct DependencePlotData {
    TestFamily family;
    double alpha;
    std::optional<double> critical_lower;
    double critical_upper;
    std::vector<std::size_t> lags;
    std::vector<double> estimates;
    std::vector<double> p_values;
};

[[nodiscard]] DependencePlotData dependence_plot_data(const CategoricalSeries& series,
                                                      TestFamily family,
                                                      std::size_t max_lag = 10,
                                                      double alpha = 0.05);

// ---------------------------------------------------------------------------
// Control charts
// ---------------------------------------------------------------------------

/// Out-of-control rule shared by every standardized chart: |T| > 1.
[[nodiscard]] constexpr bool standardized_alarm(double statistic) {
    return statistic < -1.0 || statistic > 1.0;
}

/// T = min(0, (C - mu) / |LCL - mu|) + max(0, (C - mu) / |UCL - mu|).
[[nodiscard]] double standardized_statistic(double value, double mean, double lcl, double ucl);

/// Smallest k >= 1 with P(C <= k) >= q for C geometric on {1, 2, ...} with
/// success probability p.
[[nodiscard]] std::size_t geometric_quantile(double q, double p);

struct CycleChartPoint {
    std::size_t time;      ///< 0-based index at which the cycle closes
    std::size_t category;
    std::size_t length;    ///< C_t
    double mean;           ///< mu_t = 1 / p_j
    double lcl;
    double ucl;
    double statistic;      ///< T_t
    bool alarm;
};

/// Cycle-length chart. Under the in-control model the series is i.i.d. with
/// marginal p, so a cycle of category j is geometric(p_j); the control limits
/// are its alpha/2 and 1 - alpha/2 quantiles.
struct CycleLengthChart {
    double alpha;
    std::vector<double> in_control;  ///< p
    std::vector<CycleChartPoint> points;

    [[nodiscard]] std::size_t alarm_count() const;
};

/// Chart for one category. `in_control` defaults to the sample marginals.
/// Throws when the category occurs fewer than two times.
[[nodiscard]] CycleLengthChart cycle_length_chart(const CategoricalSeries& series,
                                                  std::size_t category, double alpha = 0.01,
                                                  std::optional<std::vector<double>> in_control = {});

/// All categories on one time axis, each point with its own category's limits.
[[nodiscard]] CycleLengthChart combined_cycle_length_chart(
    const CategoricalSeries& series, double alpha = 0.01,
    std::optional<std::vector<double>> in_control = {});

enum class ChartKind { cycle_length, ewma_marginal, ewma_minmax };

/// EWMA chart of the marginal distribution:
///   pi_t = lambda pi_{t-1} + (1 - lambda) Y_t,  pi_0 = c,
///   sigma_{t,i}^2 = p_i (1 - p_i) (1 - lambda) (1 - lambda^{2t}) / (1 + lambda),
///   T_{t,i} = (pi_{t,i} - p_i) / (k sigma_{t,i}).
/// The in-control marginal p defaults to c.
struct EwmaChart {
    ChartKind kind;  ///< ewma_marginal or ewma_minmax
    Alphabet alphabet;
    double lambda;
    double k;
    std::vector<double> start;       ///< c
    std::vector<double> in_control;  ///< p
    Matrix estimates;                ///< T x r, pi_t
    Matrix sigma;                    ///< T x r
    Matrix statistics;               ///< T x r, T_{t,i}
    std::vector<double> minimum;     ///< T_t^min (ewma_minmax only)
    std::vector<double> maximum;     ///< T_t^max (ewma_minmax only)
    std::vector<bool> alarms;        ///< per time step, any |T| > 1

    [[nodiscard]] std::size_t alarm_count() const;
};

[[nodiscard]] EwmaChart ewma_marginal_chart(const CategoricalSeries& series, double lambda,
                                            std::vector<double> start, double k, bool collapse,
                                            std::optional<std::vector<double>> in_control = {});

}  // namespace cts
