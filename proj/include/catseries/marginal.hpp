#pragma once

#include <span>
#include <string_view>

namespace cts {

/// Dispersion measures of a marginal distribution. All lie in [0, 1]:
/// 0 for a one-point distribution, 1 for the uniform distribution.
enum class Dispersion { gini, entropy, chebycheff };

struct DispersionValue {
    Dispersion measure;
    double value;
};

/// r/(r-1) * (1 - sum p_i^2)
[[nodiscard]] double gini_index(std::span<const double> p);

/// -sum p_i ln p_i / ln r, with 0 ln 0 = 0.
[[nodiscard]] double entropy(std::span<const double> p);

/// r/(r-1) * (1 - max_i p_i)
[[nodiscard]] double chebycheff_dispersion(std::span<const double> p);

[[nodiscard]] DispersionValue dispersion(Dispersion measure, std::span<const double> p);

[[nodiscard]] std::string_view to_string(Dispersion measure);

}  // namespace cts
