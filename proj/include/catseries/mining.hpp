#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "catseries/core.hpp"

namespace cts {

// ---------------------------------------------------------------------------
// Feature vectors
// ---------------------------------------------------------------------------

/// Identifies one entry of a feature vector. `lag` is empty for marginal
/// features and `component` is empty for scalar (non-expanded) measures.
struct FeatureDescriptor {
    std::string measure;
    std::optional<std::size_t> lag;
    std::optional<std::size_t> component;  ///< 0-based

    /// Column name such as "gini", "cramers_v_l1" or "cramers_v_l1_c3"
    /// (component printed 1-based).
    [[nodiscard]] std::string label() const;

    bool operator==(const FeatureDescriptor&) const = default;
};

struct FeatureVector {
    std::vector<double> values;
    std::vector<FeatureDescriptor> schema;

    void push(double value, FeatureDescriptor descriptor);
};

/// Measures accepted by extract_features: "gini", "entropy", "chebycheff",
/// "marginals" (the r probabilities) and every serial measure name.
struct FeatureRequest {
    std::vector<std::string> measures;
    std::vector<std::size_t> lags{1};
    bool expand = false;  ///< serial measures emit their components instead of the value
};

/// Features in request order; serial measures repeat for each lag.
[[nodiscard]] FeatureVector extract_features(const CategoricalSeries& series,
                                             const FeatureRequest& request);

/// For l = 1..L: the r^2 cells (p_ij - p_i p_j)^2 / (p_i p_j), then the r terms
/// (p_ii - p_i^2) / (1 - sum p^2); finally the r marginals. Length L(r^2 + r) + r.
[[nodiscard]] FeatureVector dcc_features(const CategoricalSeries& series, std::size_t max_lag = 1);

/// For l = 1..L the r^2 binarized correlations psi_ij(l), then the r
/// marginals. Length L r^2 + r. Throws if a psi entry is undefined.
[[nodiscard]] FeatureVector db_features(const CategoricalSeries& series, std::size_t max_lag = 1);

/// Sum of squared differences.
[[nodiscard]] double squared_euclidean(const std::vector<double>& a, const std::vector<double>& b);

// ---------------------------------------------------------------------------
// Distances
// ---------------------------------------------------------------------------

/// d_cc and d_b are squared Euclidean distances between dcc_features and
/// db_features. `euclidean` is the plain Euclidean distance between arbitrary
/// feature vectors.
enum class Metric { dcc, db, euclidean };

[[nodiscard]] std::string_view to_string(Metric metric);
[[nodiscard]] std::optional<Metric> parse_metric(std::string_view name);

[[nodiscard]] double dcc_distance(const CategoricalSeries& a, const CategoricalSeries& b,
                                  std::size_t max_lag = 1);
[[nodiscard]] double db_distance(const CategoricalSeries& a, const CategoricalSeries& b,
                                 std::size_t max_lag = 1);

struct DistanceMatrix {
    Metric metric;
    std::size_t max_lag;  ///< 0 for euclidean
    bool root = false;    ///< entries are square roots of the metric
    Matrix values;        ///< n x n, symmetric, zero diagonal

    [[nodiscard]] std::size_t size() const noexcept { return values.rows(); }
};

struct DistanceOptions {
    Metric metric = Metric::db;
    std::size_t max_lag = 1;
    bool root = false;
    std::size_t workers = 1;
};

/// Pairwise d_cc or d_b over a corpus sharing one alphabet. Each unordered
/// pair is evaluated once. Throws on an alphabet mismatch, naming the first
/// offending series (1-based).
[[nodiscard]] DistanceMatrix distance_matrix(const std::vector<CategoricalSeries>& corpus,
                                             const DistanceOptions& options = {});

/// Pairwise Euclidean distance between rows of a feature table.
[[nodiscard]] DistanceMatrix feature_distance_matrix(const std::vector<FeatureVector>& features,
                                                     std::size_t workers = 1);

// ---------------------------------------------------------------------------
// Two-dimensional scaling
// ---------------------------------------------------------------------------

struct ScalingResult {
    Matrix coordinates;            ///< n x 2, centred at the origin
    double eigenvalues[2] = {0, 0};  ///< top two of the doubly centred matrix, before clamping
    /// Sum of |negative eigenvalues| over the sum of all |eigenvalues|; zero
    /// when the distances embed exactly in Euclidean space.
    double clamped_mass = 0.0;
};

/// Classical metric scaling of the matrix entries taken as distances:
/// B = -1/2 J D^2 J, coordinates = top-2 eigenvectors times sqrt(max(0, eigenvalue)).
/// Each eigenvector's largest-magnitude entry is made positive. Requires n >= 3.
[[nodiscard]] ScalingResult two_dimensional_scaling(const Matrix& distances);

// ---------------------------------------------------------------------------
// Outliers
// ---------------------------------------------------------------------------

struct OutlierRanking {
    std::vector<double> scores;       ///< row sums of the distance matrix
    std::vector<std::size_t> order;   ///< indices by decreasing score, ties by index
};

[[nodiscard]] OutlierRanking outlier_scores(const Matrix& distances);

struct BoxplotOutliers {
    double q1, q3, iqr, threshold;
    std::vector<std::size_t> flagged;  ///< indices with score > threshold, ascending

    [[nodiscard]] std::size_t count() const noexcept { return flagged.size(); }
};

/// Flags scores above Q3 + factor * IQR, quartiles by linear interpolation.
/// Requires at least four scores and a non-negative factor.
[[nodiscard]] BoxplotOutliers boxplot_outlier_count(const std::vector<double>& scores,
                                                    double factor = 1.0);

// ---------------------------------------------------------------------------

/// Runs body(k) for k in [0, n) on up to `workers` threads. Exceptions are
/// rethrown on the caller's thread (the one with the lowest k wins).
void parallel_for(std::size_t n, std::size_t workers, const std::function<void(std::size_t)>& body);

}  // namespace cts
