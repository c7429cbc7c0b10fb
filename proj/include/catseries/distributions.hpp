#pragma once

namespace cts::dist {

/// Regularized lower incomplete gamma P(a, x), a > 0, x >= 0.
[[nodiscard]] double gamma_p(double a, double x);
/// Regularized upper incomplete gamma Q(a, x) = 1 - P(a, x), computed directly
/// so small tail probabilities keep their relative accuracy.
[[nodiscard]] double gamma_q(double a, double x);

[[nodiscard]] double chi_square_cdf(double x, double dof);
/// Upper tail P(X > x).
[[nodiscard]] double chi_square_sf(double x, double dof);
/// Inverse of chi_square_cdf for prob in (0, 1).
[[nodiscard]] double chi_square_quantile(double prob, double dof);

[[nodiscard]] double normal_cdf(double z);
/// P(Z > z)
[[nodiscard]] double normal_sf(double z);
/// Inverse of normal_cdf for prob in (0, 1).
[[nodiscard]] double normal_quantile(double prob);

}  // namespace cts::dist
