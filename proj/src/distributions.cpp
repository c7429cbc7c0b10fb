#include "catseries/distributions.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "catseries/core.hpp"

namespace cts::dist {
namespace {

constexpr double kEps = 1e-16;
constexpr int kMaxIter = 100000;

// exp(-x + a ln x - lgamma(a))
double gamma_prefactor(double a, double x) {
    return std::exp(-x + a * std::log(x) - std::lgamma(a));
}

double lower_series(double a, double x) {
    double ap = a;
    double term = 1.0 / a;
    double sum = term;
    for (int n = 0; n < kMaxIter; ++n) {
        ap += 1.0;
        term *= x / ap;
        sum += term;
        if (std::abs(term) < std::abs(sum) * kEps) break;
    }
    return sum * gamma_prefactor(a, x);
}

// Modified Lentz evaluation of the continued fraction for Q(a, x).
double upper_fraction(double a, double x) {
    constexpr double tiny = 1e-300;
    double b = x + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < kMaxIter; ++i) {
        const double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double delta = d * c;
        h *= delta;
        if (std::abs(delta - 1.0) < kEps) break;
    }
    return gamma_prefactor(a, x) * h;
}

void require_gamma_args(double a, double x) {
    if (!(a > 0.0) || !(x >= 0.0)) throw ValidationError("incomplete gamma needs a > 0, x >= 0");
}

void require_open_unit(double prob) {
    if (!(prob > 0.0 && prob < 1.0)) throw ValidationError("probability must lie in (0, 1)");
}

}  // namespace

double gamma_p(double a, double x) {
    require_gamma_args(a, x);
    if (x == 0.0) return 0.0;
    if (x < a + 1.0) return lower_series(a, x);
    return 1.0 - upper_fraction(a, x);
}

double gamma_q(double a, double x) {
    require_gamma_args(a, x);
    if (x == 0.0) return 1.0;
    if (x < a + 1.0) return 1.0 - lower_series(a, x);
    return upper_fraction(a, x);
}

double chi_square_cdf(double x, double dof) {
    if (x <= 0.0) return 0.0;
    return gamma_p(0.5 * dof, 0.5 * x);
}

double chi_square_sf(double x, double dof) {
    if (x <= 0.0) return 1.0;
    return gamma_q(0.5 * dof, 0.5 * x);
}

double chi_square_quantile(double prob, double dof) {
    require_open_unit(prob);
    if (!(dof > 0.0)) throw ValidationError("degrees of freedom must be positive");

    // Monotone residual; the upper half uses the survival function directly.
    const bool upper = prob > 0.5;
    auto residual = [&](double x) {
        return upper ? (1.0 - prob) - chi_square_sf(x, dof) : chi_square_cdf(x, dof) - prob;
    };
    auto density = [&](double x) {
        const double k = 0.5 * dof;
        return std::exp((k - 1.0) * std::log(x) - 0.5 * x - k * std::numbers::ln2 - std::lgamma(k));
    };

    // Wilson-Hilferty start.
    const double z = normal_quantile(prob);
    const double w = 2.0 / (9.0 * dof);
    double x = dof * std::pow(std::max(1.0 - w + z * std::sqrt(w), 0.05), 3.0);

    double lo = 0.0;
    double hi = std::max(2.0 * x, 1.0);
    while (residual(hi) < 0.0) hi *= 2.0;

    for (int iter = 0; iter < 200; ++iter) {
        const double r = residual(x);
        if (r == 0.0) return x;
        if (r < 0.0) lo = x; else hi = x;
        double next = x - r / density(x);
        if (!(next > lo && next < hi) || !std::isfinite(next)) next = 0.5 * (lo + hi);
        if (std::abs(next - x) <= 1e-15 * std::max(1.0, x)) return next;
        x = next;
    }
    return x;
}

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::numbers::sqrt2); }

double normal_sf(double z) { return 0.5 * std::erfc(z / std::numbers::sqrt2); }

double normal_quantile(double prob) {
    require_open_unit(prob);
    // Acklam's rational approximation, then one Halley step.
    static constexpr double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                                   -2.759285104469687e+02, 1.383577518672690e+02,
                                   -3.066479806614716e+01, 2.506628277459239e+00};
    static constexpr double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                                   -1.556989798598866e+02, 6.680131188771972e+01,
                                   -1.328068155288572e+01};
    static constexpr double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                                   -2.400758277161838e+00, -2.549732539343734e+00,
                                   4.374664141464968e+00,  2.938163982698783e+00};
    static constexpr double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                                   2.445134137142996e+00, 3.754408661907416e+00};
    constexpr double p_low = 0.02425;

    double x;
    if (prob < p_low) {
        const double q = std::sqrt(-2.0 * std::log(prob));
        x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    } else if (prob <= 1.0 - p_low) {
        const double q = prob - 0.5;
        const double r = q * q;
        x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
            (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
    } else {
        const double q = std::sqrt(-2.0 * std::log(1.0 - prob));
        x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }

    const double e = prob < 0.5 ? normal_cdf(x) - prob : (1.0 - prob) - normal_sf(x);
    const double u = e * std::sqrt(2.0 * std::numbers::pi) * std::exp(0.5 * x * x);
    return x - u / (1.0 + 0.5 * x * u);
}

}  // namespace cts::dist
