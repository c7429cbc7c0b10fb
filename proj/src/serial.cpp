#include "catseries/serial.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace cts {
namespace {

constexpr double kDegenerateTol = 1e-12;

void require_not_one_point(const LagTables& t) {
    const double pmax = *std::max_element(t.marginals.begin(), t.marginals.end());
    if (pmax >= 1.0 - kDegenerateTol) {
        throw ValidationError("measure undefined for one-point marginal");
    }
}

double sum_of_squares(const std::vector<double>& p) {
    return std::inner_product(p.begin(), p.end(), p.begin(), 0.0);
}

// (p_ij - p_i p_j)^2 / (p_i p_j), zero where the expectation vanishes.
std::vector<double> chi_square_cells(const LagTables& t) {
    const std::size_t r = t.categories();
    std::vector<double> cells(r * r, 0.0);
    for (std::size_t i = 0; i < r; ++i) {
        for (std::size_t j = 0; j < r; ++j) {
            const double expected = t.marginals[i] * t.marginals[j];
            if (expected <= 0.0) continue;
            const double d = t.joint(i, j) - expected;
            cells[i * r + j] = d * d / expected;
        }
    }
    return cells;
}

double sum(const std::vector<double>& v) { return std::accumulate(v.begin(), v.end(), 0.0); }

}  // namespace

SerialResult gk_tau(const LagTables& t) {
    require_not_one_point(t);
    const std::size_t r = t.categories();
    std::vector<double> partial(r, 0.0);
    for (std::size_t j = 0; j < r; ++j) {
        const double pj = t.marginals[j];
        if (pj <= 0.0) continue;
        for (std::size_t i = 0; i < r; ++i) partial[j] += t.joint(i, j) * t.joint(i, j) / pj;
    }
    const double s2 = sum_of_squares(t.marginals);
    return {SerialMeasure::gk_tau, t.lag, (sum(partial) - s2) / (1.0 - s2), std::move(partial)};
}

SerialResult gk_lambda(const LagTables& t) {
    require_not_one_point(t);
    const std::size_t r = t.categories();
    std::vector<double> colmax(r, 0.0);
    for (std::size_t j = 0; j < r; ++j)
        for (std::size_t i = 0; i < r; ++i) colmax[j] = std::max(colmax[j], t.joint(i, j));
    const double pmax = *std::max_element(t.marginals.begin(), t.marginals.end());
    return {SerialMeasure::gk_lambda, t.lag, (sum(colmax) - pmax) / (1.0 - pmax),
            std::move(colmax)};
}

SerialResult uncertainty_coefficient(const LagTables& t) {
    require_not_one_point(t);
    const std::size_t r = t.categories();
    std::vector<double> cells(r * r, 0.0);
    for (std::size_t i = 0; i < r; ++i) {
        for (std::size_t j = 0; j < r; ++j) {
            const double pij = t.joint(i, j);
            const double expected = t.marginals[i] * t.marginals[j];
            if (pij <= 0.0 || expected <= 0.0) continue;
            cells[i * r + j] = pij * std::log(pij / expected);
        }
    }
    double h = 0.0;
    for (double p : t.marginals) {
        if (p > 0.0) h -= p * std::log(p);
    }
    return {SerialMeasure::uncertainty, t.lag, sum(cells) / h, std::move(cells)};
}

SerialResult phi2_measure(const LagTables& t) {
    auto cells = chi_square_cells(t);
    return {SerialMeasure::phi2, t.lag, sum(cells), std::move(cells)};
}

SerialResult pearson_measure(const LagTables& t) {
    auto cells = chi_square_cells(t);
    const double n = static_cast<double>(t.pairs());
    return {SerialMeasure::pearson, t.lag, n * sum(cells), std::move(cells)};
}

SerialResult sakoda_measure(const LagTables& t) {
    auto cells = chi_square_cells(t);
    const double phi2 = sum(cells);
    const double r = static_cast<double>(t.categories());
    return {SerialMeasure::sakoda, t.lag, std::sqrt(r * phi2 / ((r - 1.0) * (1.0 + phi2))),
            std::move(cells)};
}

SerialResult cramers_v(const LagTables& t) {
    auto cells = chi_square_cells(t);
    const double r = static_cast<double>(t.categories());
    return {SerialMeasure::cramers_v, t.lag, std::sqrt(sum(cells) / (r - 1.0)), std::move(cells)};
}

SerialResult cohens_kappa(const LagTables& t) {
    require_not_one_point(t);
    const std::size_t r = t.categories();
    const double denom = 1.0 - sum_of_squares(t.marginals);
    std::vector<double> terms(r);
    for (std::size_t j = 0; j < r; ++j) {
        terms[j] = (t.joint(j, j) - t.marginals[j] * t.marginals[j]) / denom;
    }
    return {SerialMeasure::cohens_kappa, t.lag, sum(terms), std::move(terms)};
}

PartialMatrix psi_matrix(const LagTables& t) {
    const std::size_t r = t.categories();
    PartialMatrix psi(r, r);
    std::vector<double> var(r);
    for (std::size_t i = 0; i < r; ++i) var[i] = t.marginals[i] * (1.0 - t.marginals[i]);
    for (std::size_t i = 0; i < r; ++i) {
        if (var[i] <= 0.0) continue;
        for (std::size_t j = 0; j < r; ++j) {
            if (var[j] <= 0.0) continue;
            const double cov = t.joint(i, j) - t.marginals[i] * t.marginals[j];
            psi.set(i, j, cov / std::sqrt(var[i] * var[j]));
        }
    }
    return psi;
}

SerialResult total_correlation(const LagTables& t) {
    const auto psi = psi_matrix(t);
    if (!psi.all_defined()) throw ValidationError("total correlation undefined");
    const std::size_t r = t.categories();
    std::vector<double> entries(r * r);
    double sq = 0.0;
    for (std::size_t i = 0; i < r; ++i) {
        for (std::size_t j = 0; j < r; ++j) {
            entries[i * r + j] = psi.value(i, j);
            sq += entries[i * r + j] * entries[i * r + j];
        }
    }
    return {SerialMeasure::total_correlation, t.lag, sq / static_cast<double>(r * r),
            std::move(entries)};
}

SerialResult serial_measure(SerialMeasure measure, const LagTables& tables) {
    switch (measure) {
        case SerialMeasure::gk_tau: return gk_tau(tables);
        case SerialMeasure::gk_lambda: return gk_lambda(tables);
        case SerialMeasure::uncertainty: return uncertainty_coefficient(tables);
        case SerialMeasure::pearson: return pearson_measure(tables);
        case SerialMeasure::phi2: return phi2_measure(tables);
        case SerialMeasure::sakoda: return sakoda_measure(tables);
        case SerialMeasure::cramers_v: return cramers_v(tables);
        case SerialMeasure::cohens_kappa: return cohens_kappa(tables);
        case SerialMeasure::total_correlation: return total_correlation(tables);
    }
    throw ValidationError("unknown serial measure");
}

namespace {
constexpr std::pair<SerialMeasure, std::string_view> kNames[] = {
    {SerialMeasure::gk_tau, "gk_tau"},
    {SerialMeasure::gk_lambda, "gk_lambda"},
    {SerialMeasure::uncertainty, "uncertainty"},
    {SerialMeasure::pearson, "pearson"},
    {SerialMeasure::phi2, "phi2"},
    {SerialMeasure::sakoda, "sakoda"},
    {SerialMeasure::cramers_v, "cramers_v"},
    {SerialMeasure::cohens_kappa, "cohens_kappa"},
    {SerialMeasure::total_correlation, "total_correlation"},
};
}  // namespace

std::string_view to_string(SerialMeasure measure) {
    for (const auto& [m, name] : kNames) {
        if (m == measure) return name;
    }
    return "unknown";
}

std::optional<SerialMeasure> parse_serial_measure(std::string_view name) {
    for (const auto& [m, n] : kNames) {
        if (n == name) return m;
    }
    return std::nullopt;
}

}  // namespace cts
