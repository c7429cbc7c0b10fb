#include "catseries/mixed.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

namespace cts {
namespace {

struct Window {
    std::size_t y_begin;  // first index into the categorical side
    std::size_t z_begin;  // first index into the numeric side
    std::size_t length;
};

// Pairs (Y_t, Z_{t-l}) over the overlap of both series.
Window overlap(std::size_t T, long lag) {
    const auto shift = static_cast<std::size_t>(std::labs(lag));
    if (shift >= T) throw ValidationError("lag exceeds series length");
    if (lag >= 0) return {shift, 0, T - shift};
    return {0, shift, T - shift};
}

void require_aligned(const CategoricalSeries& cat, const NumericSeries& num) {
    if (cat.length() != num.length()) {
        throw ValidationError("categorical and numeric series differ in length");
    }
}

template <typename ZAt>
double window_covariance(const CategoricalSeries& cat, std::size_t category, const Window& w,
                         ZAt z) {
    const double n = static_cast<double>(w.length);
    double ymean = 0.0;
    double zmean = 0.0;
    for (std::size_t k = 0; k < w.length; ++k) {
        ymean += cat[w.y_begin + k] == category ? 1.0 : 0.0;
        zmean += z(w.z_begin + k);
    }
    ymean /= n;
    zmean /= n;
    double cov = 0.0;
    for (std::size_t k = 0; k < w.length; ++k) {
        const double y = cat[w.y_begin + k] == category ? 1.0 : 0.0;
        cov += (y - ymean) * (z(w.z_begin + k) - zmean);
    }
    return cov / n;
}

double full_variance(std::span<const double> z) {
    double mean = 0.0;
    for (double v : z) mean += v;
    mean /= static_cast<double>(z.size());
    double var = 0.0;
    for (double v : z) var += (v - mean) * (v - mean);
    return var / static_cast<double>(z.size());
}

void require_rho_grid(std::span<const double> grid, std::size_t min_points) {
    if (grid.size() < min_points) {
        throw ValidationError("rho grid needs at least " + std::to_string(min_points) + " levels");
    }
    for (std::size_t k = 0; k < grid.size(); ++k) {
        if (!(grid[k] > 0.0 && grid[k] < 1.0)) {
            throw ValidationError("rho levels must lie strictly inside (0, 1)");
        }
        if (k > 0 && !(grid[k] > grid[k - 1])) {
            throw ValidationError("rho grid must be strictly increasing");
        }
    }
}

}  // namespace

NumericSeries::NumericSeries(std::vector<double> values) : values_(std::move(values)) {
    if (values_.empty()) throw ValidationError("empty series");
    for (double v : values_) {
        if (!std::isfinite(v)) throw ValidationError("numeric series has a non-finite value");
    }
}

std::vector<double> default_rho_grid() {
    std::vector<double> grid;
    for (int k = 1; k <= 19; ++k) grid.push_back(0.05 * k);
    return grid;
}

double sample_quantile(std::span<const double> values, double rho) {
    if (values.empty()) throw ValidationError("quantile of empty sample");
    if (!(rho >= 0.0 && rho <= 1.0)) throw ValidationError("quantile level outside [0, 1]");
    std::vector<double> sorted(values.begin(), values.end());
    std::sort(sorted.begin(), sorted.end());
    const double h = static_cast<double>(sorted.size() - 1) * rho;
    const auto lo = static_cast<std::size_t>(std::floor(h));
    const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
    return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

std::vector<std::optional<double>> mixed_cross_correlation(const CategoricalSeries& cat,
                                                           const NumericSeries& num, long lag) {
    require_aligned(cat, num);
    const Window w = overlap(cat.length(), lag);
    const double var_z = full_variance(num.values());
    if (var_z <= 0.0) throw ValidationError("degenerate numeric series");

    const auto p = marginal_probabilities(cat);
    std::vector<std::optional<double>> out(cat.categories());
    for (std::size_t i = 0; i < out.size(); ++i) {
        const double var_y = p[i] * (1.0 - p[i]);
        if (var_y <= 0.0) continue;
        const double cov = window_covariance(cat, i, w, [&](std::size_t t) { return num[t]; });
        out[i] = cov / std::sqrt(var_y * var_z);
    }
    return out;
}

PartialMatrix mixed_quantile_cross_correlation(const CategoricalSeries& cat,
                                               const NumericSeries& num, long lag,
                                               std::span<const double> rho_grid) {
    require_aligned(cat, num);
    require_rho_grid(rho_grid, 1);
    const Window w = overlap(cat.length(), lag);
    if (full_variance(num.values()) <= 0.0) throw ValidationError("degenerate numeric series");

    const auto p = marginal_probabilities(cat);
    PartialMatrix out(cat.categories(), rho_grid.size());
    std::vector<std::uint8_t> below(num.length());
    for (std::size_t k = 0; k < rho_grid.size(); ++k) {
        const double rho = rho_grid[k];
        const double q = sample_quantile(num.values(), rho);
        for (std::size_t t = 0; t < num.length(); ++t) below[t] = num[t] <= q ? 1 : 0;
        for (std::size_t i = 0; i < cat.categories(); ++i) {
            const double var_y = p[i] * (1.0 - p[i]);
            if (var_y <= 0.0) continue;
            const double cov = window_covariance(
                cat, i, w, [&](std::size_t t) { return static_cast<double>(below[t]); });
            out.set(i, k, cov / std::sqrt(var_y * rho * (1.0 - rho)));
        }
    }
    return out;
}

double total_mixed_cor(const CategoricalSeries& cat, const NumericSeries& num, long lag) {
    const auto psi = mixed_cross_correlation(cat, num, lag);
    double total = 0.0;
    for (const auto& v : psi) {
        if (!v) throw ValidationError("total mixed cross-correlation undefined");
        total += *v * *v;
    }
    return total / static_cast<double>(psi.size());
}

double integrate_unit_interval(std::span<const double> grid, std::span<const double> f) {
    require_rho_grid(grid, 2);
    if (f.size() != grid.size()) throw ValidationError("integrand and grid differ in length");
    double area = f.front() * grid.front() + f.back() * (1.0 - grid.back());
    for (std::size_t k = 1; k < grid.size(); ++k) {
        area += 0.5 * (f[k] + f[k - 1]) * (grid[k] - grid[k - 1]);
    }
    return area;
}

double total_mixed_qcor(const CategoricalSeries& cat, const NumericSeries& num, long lag,
                        std::span<const double> rho_grid) {
    require_rho_grid(rho_grid, 2);
    const auto psi = mixed_quantile_cross_correlation(cat, num, lag, rho_grid);
    double total = 0.0;
    std::vector<double> sq(rho_grid.size());
    for (std::size_t i = 0; i < psi.rows(); ++i) {
        for (std::size_t k = 0; k < rho_grid.size(); ++k) {
            if (!psi.defined(i, k)) {
                throw ValidationError("total mixed q-cross-correlation undefined");
            }
            sq[k] = psi.value(i, k) * psi.value(i, k);
        }
        total += integrate_unit_interval(rho_grid, sq);
    }
    return total / static_cast<double>(psi.rows());
}

}  // namespace cts
