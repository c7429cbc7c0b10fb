#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "catseries/core.hpp"

namespace cts {

enum class SerialMeasure {
    gk_tau,
    gk_lambda,
    uncertainty,
    pearson,
    phi2,
    sakoda,
    cramers_v,
    cohens_kappa,
    total_correlation,
};

/// A lag-l association estimate together with its per-term expansion.
///
/// Components and how they aggregate to `value` (r categories, p = marginals,
/// s2 = sum p_i^2):
///   gk_tau             r terms  sum_i p_ij^2 / p_j        value = (sum - s2) / (1 - s2)
///   gk_lambda          r terms  max_i p_ij                value = (sum - max p) / (1 - max p)
///   uncertainty        r^2 terms p_ij ln(p_ij / p_i p_j)  value = sum / (-sum p_i ln p_i)
///   pearson, phi2,
///   sakoda, cramers_v  r^2 terms (p_ij - p_i p_j)^2 / (p_i p_j); value from Phi^2 = sum
///   cohens_kappa       r terms  (p_jj - p_j^2) / (1 - s2)  value = sum
///   total_correlation  r^2 terms psi_ij                    value = mean of squares
/// Cell terms are stored row-major (current category i, lagged category j).
struct SerialResult {
    SerialMeasure measure;
    std::size_t lag;
    double value;
    std::vector<double> components;
};

[[nodiscard]] SerialResult gk_tau(const LagTables& tables);
[[nodiscard]] SerialResult gk_lambda(const LagTables& tables);
[[nodiscard]] SerialResult uncertainty_coefficient(const LagTables& tables);
/// X^2(l) = n * Phi^2(l) with n = T - l.
[[nodiscard]] SerialResult pearson_measure(const LagTables& tables);
[[nodiscard]] SerialResult phi2_measure(const LagTables& tables);
[[nodiscard]] SerialResult sakoda_measure(const LagTables& tables);
[[nodiscard]] SerialResult cramers_v(const LagTables& tables);
[[nodiscard]] SerialResult cohens_kappa(const LagTables& tables);
/// Throws ValidationError when any psi entry is undefined.
[[nodiscard]] SerialResult total_correlation(const LagTables& tables);

/// Correlations between binarized components,
/// psi_ij(l) = (p_ij - p_i p_j) / sqrt(p_i (1 - p_i) p_j (1 - p_j)).
/// Entries involving a category with p = 0 or p = 1 are undefined.
[[nodiscard]] PartialMatrix psi_matrix(const LagTables& tables);

[[nodiscard]] SerialResult serial_measure(SerialMeasure measure, const LagTables& tables);

[[nodiscard]] std::string_view to_string(SerialMeasure measure);
[[nodiscard]] std::optional<SerialMeasure> parse_serial_measure(std::string_view name);

}  // namespace cts
