#pragma once

#include <optional>
#include <span>
#include <vector>

#include "catseries/core.hpp"

namespace cts {

/// Real-valued series paired index-by-index with a categorical series.
class NumericSeries {
public:
    explicit NumericSeries(std::vector<double> values);

    [[nodiscard]] std::size_t length() const noexcept { return values_.size(); }
    [[nodiscard]] std::span<const double> values() const noexcept { return values_; }
    [[nodiscard]] double operator[](std::size_t t) const { return values_[t]; }

private:
    std::vector<double> values_;
};

/// Quantile levels 0.05, 0.10, ..., 0.95.
[[nodiscard]] std::vector<double> default_rho_grid();

/// Sample quantile by linear interpolation of order statistics
/// (position (n - 1) * rho in the sorted sample).
[[nodiscard]] double sample_quantile(std::span<const double> values, double rho);

/// Per-category correlation between Y_{t,i} and Z_{t-l}. The lag may be
/// negative. Covariances use the overlapping window of length T - |l| with
/// that length as divisor; p_i and the variance of Z use the full series.
/// Categories with p_i in {0, 1} are undefined (nullopt).
[[nodiscard]] std::vector<std::optional<double>> mixed_cross_correlation(
    const CategoricalSeries& cat, const NumericSeries& num, long lag);

/// Matrix (r x |grid|) of correlations between Y_{t,i} and 1(Z_{t-l} <= q(rho)).
/// Undefined categories give undefined rows.
[[nodiscard]] PartialMatrix mixed_quantile_cross_correlation(const CategoricalSeries& cat,
                                                             const NumericSeries& num, long lag,
                                                             std::span<const double> rho_grid);

/// (1/r) sum_i psi*_i(l)^2. Throws if any category is undefined.
[[nodiscard]] double total_mixed_cor(const CategoricalSeries& cat, const NumericSeries& num,
                                     long lag);

/// (1/r) sum_i of the integral over (0, 1) of psi^rho_i(l)^2, by the trapezoid
/// rule on the grid with the integrand held constant outside [grid.front(),
/// grid.back()]. The grid needs at least two strictly increasing levels.
[[nodiscard]] double total_mixed_qcor(const CategoricalSeries& cat, const NumericSeries& num,
                                      long lag, std::span<const double> rho_grid);

/// Trapezoid integral of f over [0, 1] sampled at the grid, extended flat to
/// the endpoints.
[[nodiscard]] double integrate_unit_interval(std::span<const double> grid,
                                             std::span<const double> f);

}  // namespace cts
