#include "catseries/marginal.hpp"

#include <algorithm>
#include <cmath>

#include "catseries/core.hpp"

namespace cts {
namespace {

double validated_r(std::span<const double> p) {
    if (p.size() < 2) throw ValidationError("need at least two categories");
    require_probability_vector(p, "probability vector");
    return static_cast<double>(p.size());
}

}  // namespace

double gini_index(std::span<const double> p) {
    const double r = validated_r(p);
    double sum_sq = 0.0;
    for (double v : p) sum_sq += v * v;
    return r / (r - 1.0) * (1.0 - sum_sq);
}

double entropy(std::span<const double> p) {
    const double r = validated_r(p);
    double h = 0.0;
    for (double v : p) {
        if (v > 0.0) h -= v * std::log(v);
    }
    return h / std::log(r);
}

double chebycheff_dispersion(std::span<const double> p) {
    const double r = validated_r(p);
    return r / (r - 1.0) * (1.0 - *std::max_element(p.begin(), p.end()));
}

DispersionValue dispersion(Dispersion measure, std::span<const double> p) {
    switch (measure) {
        case Dispersion::gini: return {measure, gini_index(p)};
        case Dispersion::entropy: return {measure, entropy(p)};
        case Dispersion::chebycheff: return {measure, chebycheff_dispersion(p)};
    }
    throw ValidationError("unknown dispersion measure");
}

std::string_view to_string(Dispersion measure) {
    switch (measure) {
        case Dispersion::gini: return "gini";
        case Dispersion::entropy: return "entropy";
        case Dispersion::chebycheff: return "chebycheff";
    }
    return "unknown";
}

}  // namespace cts
