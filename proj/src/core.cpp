#include "catseries/core.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

namespace cts {

bool PartialMatrix::all_defined() const {
    return std::all_of(cells_.data().begin(), cells_.data().end(),
                       [](const auto& c) { return c.has_value(); });
}

double PartialMatrix::value(std::size_t i, std::size_t j) const {
    const auto& cell = cells_(i, j);
    if (!cell) {
        throw ValidationError("undefined matrix entry (" + std::to_string(i + 1) + ", " +
                              std::to_string(j + 1) + ")");
    }
    return *cell;
}

Alphabet::Alphabet(std::vector<std::string> symbols) : symbols_(std::move(symbols)) {
    if (symbols_.size() < 2) {
        throw ValidationError("need at least two categories");
    }
    std::unordered_set<std::string_view> seen;
    for (const auto& s : symbols_) {
        if (s.empty()) throw ValidationError("empty category label");
        if (!seen.insert(s).second) throw ValidationError("duplicate category label '" + s + "'");
    }
}

Alphabet Alphabet::numbered(std::size_t r) {
    std::vector<std::string> labels;
    labels.reserve(r);
    for (std::size_t k = 1; k <= r; ++k) labels.push_back(std::to_string(k));
    return Alphabet(std::move(labels));
}

std::optional<std::size_t> Alphabet::index_of(std::string_view symbol) const {
    for (std::size_t k = 0; k < symbols_.size(); ++k) {
        if (symbols_[k] == symbol) return k;
    }
    return std::nullopt;
}

CategoricalSeries::CategoricalSeries(std::vector<std::size_t> codes, Alphabet alphabet)
    : codes_(std::move(codes)), alphabet_(std::move(alphabet)) {
    if (codes_.empty()) throw ValidationError("empty series");
    const std::size_t r = alphabet_.size();
    for (std::size_t t = 0; t < codes_.size(); ++t) {
        if (codes_[t] >= r) {
            throw ValidationError("code out of range at position " + std::to_string(t + 1));
        }
    }
}

CategoricalSeries::CategoricalSeries(std::vector<std::size_t> codes, std::size_t r)
    : CategoricalSeries(std::move(codes), Alphabet::numbered(r)) {}

BinarizedSeries::BinarizedSeries(std::size_t length, std::size_t categories)
    : rows_(length, categories, 0) {}

std::vector<std::size_t> BinarizedSeries::argmax() const {
    std::vector<std::size_t> out(length());
    for (std::size_t t = 0; t < length(); ++t) {
        auto r = row(t);
        out[t] = static_cast<std::size_t>(std::max_element(r.begin(), r.end()) - r.begin());
    }
    return out;
}

BinarizedSeries binarize(const CategoricalSeries& series) {
    BinarizedSeries out(series.length(), series.categories());
    for (std::size_t t = 0; t < series.length(); ++t) out.set(t, series[t]);
    return out;
}

std::vector<std::size_t> marginal_counts(const CategoricalSeries& series) {
    std::vector<std::size_t> counts(series.categories(), 0);
    for (auto c : series.codes()) ++counts[c];
    return counts;
}

std::vector<double> marginal_probabilities(const CategoricalSeries& series) {
    const auto counts = marginal_counts(series);
    const double T = static_cast<double>(series.length());
    std::vector<double> p(counts.size());
    std::transform(counts.begin(), counts.end(), p.begin(),
                   [T](std::size_t n) { return static_cast<double>(n) / T; });
    return p;
}

LagTables lag_tables(const CategoricalSeries& series, std::size_t lag) {
    const std::size_t T = series.length();
    if (lag >= T) throw ValidationError("lag exceeds series length");
    const std::size_t r = series.categories();

    LagTables tables;
    tables.lag = lag;
    tables.length = T;
    tables.marginal_counts = marginal_counts(series);
    tables.marginals = marginal_probabilities(series);
    tables.joint_counts = CountMatrix(r, r, 0);
    for (std::size_t t = lag; t < T; ++t) ++tables.joint_counts(series[t], series[t - lag]);

    const double pairs = static_cast<double>(T - lag);
    tables.joint = Matrix(r, r, 0.0);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j)
            tables.joint(i, j) = static_cast<double>(tables.joint_counts(i, j)) / pairs;
    return tables;
}

LagTables LagTables::from_probabilities(std::vector<double> marginals, Matrix joint,
                                        std::size_t length, std::size_t lag) {
    const std::size_t r = marginals.size();
    if (r < 2) throw ValidationError("need at least two categories");
    if (joint.rows() != r || joint.cols() != r) {
        throw ValidationError("joint matrix must be r x r");
    }
    if (lag >= length) throw ValidationError("lag exceeds series length");
    require_probability_vector(marginals, "marginal distribution");
    require_probability_vector(joint.data(), "joint distribution");

    LagTables tables;
    tables.lag = lag;
    tables.length = length;
    tables.marginals = std::move(marginals);
    tables.joint = std::move(joint);
    return tables;
}

PartialMatrix conditional_probabilities(const LagTables& tables) {
    const std::size_t r = tables.categories();
    PartialMatrix out(r, r);
    for (std::size_t j = 0; j < r; ++j) {
        const double pj = tables.marginals[j];
        if (pj <= 0.0) continue;
        for (std::size_t i = 0; i < r; ++i) out.set(i, j, tables.joint(i, j) / pj);
    }
    return out;
}

void require_probability_vector(std::span<const double> p, const char* what) {
    double sum = 0.0;
    for (double v : p) {
        if (!std::isfinite(v) || v < 0.0) {
            throw ValidationError(std::string(what) + " has a negative or non-finite entry");
        }
        sum += v;
    }
    if (std::abs(sum - 1.0) > 1e-9) {
        throw ValidationError(std::string(what) + " does not sum to 1");
    }
}

}  // namespace cts
