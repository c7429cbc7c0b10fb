#include "catseries/mining.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <numeric>
#include <thread>

#include <Eigen/Eigenvalues>

#include "catseries/marginal.hpp"
#include "catseries/mixed.hpp"
#include "catseries/serial.hpp"

namespace cts {

std::string FeatureDescriptor::label() const {
    std::string out = measure;
    if (lag) out += "_l" + std::to_string(*lag);
    if (component) out += "_c" + std::to_string(*component + 1);
    return out;
}

void FeatureVector::push(double value, FeatureDescriptor descriptor) {
    values.push_back(value);
    schema.push_back(std::move(descriptor));
}

namespace {

void require_lag(const CategoricalSeries& series, std::size_t lag) {
    if (lag == 0) throw ValidationError("lags must be positive");
    if (lag >= series.length()) throw ValidationError("lag exceeds series length");
}

void push_marginals(FeatureVector& fv, const std::vector<double>& p) {
    for (std::size_t i = 0; i < p.size(); ++i) fv.push(p[i], {"marginal", std::nullopt, i});
}

}  // namespace

FeatureVector extract_features(const CategoricalSeries& series, const FeatureRequest& request) {
    if (request.measures.empty()) throw ValidationError("no measures requested");
    const auto p = marginal_probabilities(series);
    FeatureVector fv;
    for (const auto& name : request.measures) {
        if (name == "gini") {
            fv.push(gini_index(p), {name, std::nullopt, std::nullopt});
        } else if (name == "entropy") {
            fv.push(entropy(p), {name, std::nullopt, std::nullopt});
        } else if (name == "chebycheff") {
            fv.push(chebycheff_dispersion(p), {name, std::nullopt, std::nullopt});
        } else if (name == "marginals") {
            push_marginals(fv, p);
        } else if (auto measure = parse_serial_measure(name)) {
            if (request.lags.empty()) throw ValidationError("no lags requested");
            for (auto lag : request.lags) {
                require_lag(series, lag);
                const auto result = serial_measure(*measure, lag_tables(series, lag));
                if (request.expand) {
                    for (std::size_t c = 0; c < result.components.size(); ++c) {
                        fv.push(result.components[c], {name, lag, c});
                    }
                } else {
                    fv.push(result.value, {name, lag, std::nullopt});
                }
            }
        } else {
            throw ValidationError("unknown measure '" + name + "'");
        }
    }
    return fv;
}

FeatureVector dcc_features(const CategoricalSeries& series, std::size_t max_lag) {
    if (max_lag == 0) throw ValidationError("max lag must be at least 1");
    FeatureVector fv;
    for (std::size_t lag = 1; lag <= max_lag; ++lag) {
        require_lag(series, lag);
        const auto tables = lag_tables(series, lag);
        const auto cells = cramers_v(tables).components;
        for (std::size_t c = 0; c < cells.size(); ++c) fv.push(cells[c], {"cramer_cell", lag, c});
        const auto kappa = cohens_kappa(tables).components;
        for (std::size_t c = 0; c < kappa.size(); ++c) fv.push(kappa[c], {"cohen_term", lag, c});
    }
    push_marginals(fv, marginal_probabilities(series));
    return fv;
}

FeatureVector db_features(const CategoricalSeries& series, std::size_t max_lag) {
    if (max_lag == 0) throw ValidationError("max lag must be at least 1");
    const std::size_t r = series.categories();
    FeatureVector fv;
    for (std::size_t lag = 1; lag <= max_lag; ++lag) {
        require_lag(series, lag);
        const auto psi = psi_matrix(lag_tables(series, lag));
        if (!psi.all_defined()) {
            throw ValidationError("binarized correlation undefined: a category has probability 0 or 1");
        }
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < r; ++j) fv.push(psi.value(i, j), {"psi", lag, i * r + j});
    }
    push_marginals(fv, marginal_probabilities(series));
    return fv;
}

double squared_euclidean(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.size() != b.size()) throw ValidationError("feature vectors differ in length");
    double sum = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        const double d = a[k] - b[k];
        sum += d * d;
    }
    return sum;
}

std::string_view to_string(Metric metric) {
    switch (metric) {
        case Metric::dcc: return "dcc";
        case Metric::db: return "db";
        case Metric::euclidean: return "euclidean";
    }
    return "unknown";
}

std::optional<Metric> parse_metric(std::string_view name) {
    if (name == "dcc" || name == "d_cc") return Metric::dcc;
    if (name == "db" || name == "d_b") return Metric::db;
    if (name == "euclidean") return Metric::euclidean;
    return std::nullopt;
}

namespace {

void require_same_alphabet(const CategoricalSeries& a, const CategoricalSeries& b) {
    if (!(a.alphabet() == b.alphabet())) throw ValidationError("series have different alphabets");
}

DistanceMatrix pairwise(std::size_t n, Metric metric, std::size_t max_lag, bool root,
                        std::size_t workers, const std::vector<std::vector<double>>& rows,
                        bool squared) {
    DistanceMatrix dm{metric, max_lag, root, Matrix(n, n, 0.0)};
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    pairs.reserve(n * (n - 1) / 2);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = a + 1; b < n; ++b) pairs.emplace_back(a, b);
    parallel_for(pairs.size(), workers, [&](std::size_t k) {
        const auto [a, b] = pairs[k];
        double d = squared_euclidean(rows[a], rows[b]);
        if (!squared || root) d = std::sqrt(d);
        dm.values(a, b) = d;
        dm.values(b, a) = d;
    });
    return dm;
}

}  // namespace

double dcc_distance(const CategoricalSeries& a, const CategoricalSeries& b, std::size_t max_lag) {
    require_same_alphabet(a, b);
    return squared_euclidean(dcc_features(a, max_lag).values, dcc_features(b, max_lag).values);
}

double db_distance(const CategoricalSeries& a, const CategoricalSeries& b, std::size_t max_lag) {
    require_same_alphabet(a, b);
    return squared_euclidean(db_features(a, max_lag).values, db_features(b, max_lag).values);
}

DistanceMatrix distance_matrix(const std::vector<CategoricalSeries>& corpus,
                               const DistanceOptions& options) {
    if (corpus.empty()) throw ValidationError("empty corpus");
    if (options.metric == Metric::euclidean) {
        throw ValidationError("euclidean distances need a feature table, not a corpus");
    }
    for (std::size_t k = 1; k < corpus.size(); ++k) {
        if (!(corpus[k].alphabet() == corpus[0].alphabet())) {
            throw ValidationError("alphabet of series " + std::to_string(k + 1) +
                                  " differs from series 1");
        }
    }
    const std::size_t n = corpus.size();
    std::vector<std::vector<double>> rows(n);
    std::vector<std::string> errors(n);
    parallel_for(n, options.workers, [&](std::size_t k) {
        try {
            rows[k] = options.metric == Metric::dcc ? dcc_features(corpus[k], options.max_lag).values
                                                    : db_features(corpus[k], options.max_lag).values;
        } catch (const ValidationError& e) {
            errors[k] = e.what();
        }
    });
    for (std::size_t k = 0; k < n; ++k) {
        if (!errors[k].empty()) {
            throw ValidationError("series " + std::to_string(k + 1) + ": " + errors[k]);
        }
    }
    return pairwise(n, options.metric, options.max_lag, options.root, options.workers, rows, true);
}

DistanceMatrix feature_distance_matrix(const std::vector<FeatureVector>& features,
                                       std::size_t workers) {
    if (features.empty()) throw ValidationError("empty feature table");
    std::vector<std::vector<double>> rows;
    rows.reserve(features.size());
    for (const auto& f : features) {
        if (f.values.size() != features[0].values.size()) {
            throw ValidationError("feature vectors differ in length");
        }
        rows.push_back(f.values);
    }
    return pairwise(rows.size(), Metric::euclidean, 0, false, workers, rows, false);
}

ScalingResult two_dimensional_scaling(const Matrix& distances) {
    const std::size_t n = distances.rows();
    if (distances.cols() != n) throw ValidationError("distance matrix must be square");
    if (n < 3) throw ValidationError("two-dimensional scaling needs at least three objects");

    Eigen::MatrixXd d2(n, n);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) {
            const double d = distances(a, b);
            if (!std::isfinite(d)) throw ValidationError("distance matrix has non-finite entries");
            d2(a, b) = d * d;
        }
    // B = -1/2 J D2 J with J = I - 11'/n
    const Eigen::VectorXd row_mean = d2.rowwise().mean();
    const Eigen::RowVectorXd col_mean = d2.colwise().mean();
    const double grand = d2.mean();
    Eigen::MatrixXd b(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            b(i, j) = -0.5 * (d2(i, j) - row_mean(i) - col_mean(j) + grand);
        }
    b = 0.5 * (b + b.transpose());

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(b);
    if (solver.info() != Eigen::Success) throw std::runtime_error("eigendecomposition failed");
    const auto& values = solver.eigenvalues();  // ascending
    const auto& vectors = solver.eigenvectors();

    ScalingResult out;
    out.coordinates = Matrix(n, 2, 0.0);
    double negative = 0.0, total = 0.0;
    for (Eigen::Index k = 0; k < values.size(); ++k) {
        total += std::abs(values(k));
        if (values(k) < 0) negative -= values(k);
    }
    out.clamped_mass = total > 0.0 ? negative / total : 0.0;

    for (std::size_t c = 0; c < 2; ++c) {
        const Eigen::Index k = static_cast<Eigen::Index>(n - 1 - c);
        out.eigenvalues[c] = values(k);
        Eigen::VectorXd v = vectors.col(k);
        Eigen::Index arg = 0;
        for (Eigen::Index i = 1; i < v.size(); ++i) {
            if (std::abs(v(i)) > std::abs(v(arg)) * (1.0 + 1e-12)) arg = i;
        }
        if (v(arg) < 0) v = -v;
        const double scale = std::sqrt(std::max(0.0, values(k)));
        double mean = 0.0;
        for (std::size_t i = 0; i < n; ++i) mean += v(static_cast<Eigen::Index>(i)) * scale;
        mean /= static_cast<double>(n);
        for (std::size_t i = 0; i < n; ++i) {
            out.coordinates(i, c) = v(static_cast<Eigen::Index>(i)) * scale - mean;
        }
    }
    return out;
}

OutlierRanking outlier_scores(const Matrix& distances) {
    const std::size_t n = distances.rows();
    if (distances.cols() != n) throw ValidationError("distance matrix must be square");
    OutlierRanking out{std::vector<double>(n, 0.0), std::vector<std::size_t>(n)};
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) out.scores[a] += distances(a, b);
    std::iota(out.order.begin(), out.order.end(), std::size_t{0});
    std::stable_sort(out.order.begin(), out.order.end(),
                     [&](std::size_t x, std::size_t y) { return out.scores[x] > out.scores[y]; });
    return out;
}

BoxplotOutliers boxplot_outlier_count(const std::vector<double>& scores, double factor) {
    if (scores.size() < 4) throw ValidationError("boxplot rule needs at least four scores");
    if (!(factor >= 0.0)) throw ValidationError("range factor must be non-negative");
    BoxplotOutliers out{};
    out.q1 = sample_quantile(scores, 0.25);
    out.q3 = sample_quantile(scores, 0.75);
    out.iqr = out.q3 - out.q1;
    out.threshold = out.q3 + factor * out.iqr;
    for (std::size_t k = 0; k < scores.size(); ++k) {
        if (scores[k] > out.threshold) out.flagged.push_back(k);
    }
    return out;
}

void parallel_for(std::size_t n, std::size_t workers,
                  const std::function<void(std::size_t)>& body) {
    workers = std::clamp<std::size_t>(workers, 1, std::max<std::size_t>(n, 1));
    if (workers == 1) {
        for (std::size_t k = 0; k < n; ++k) body(k);
        return;
    }
    // Every index below the lowest failure still runs, so the reported
    // exception does not depend on scheduling.
    std::atomic<std::size_t> first_failure{std::numeric_limits<std::size_t>::max()};
    std::mutex mutex;
    std::exception_ptr error;
    std::vector<std::thread> threads;
    threads.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        threads.emplace_back([&, w] {
            for (std::size_t k = w; k < n; k += workers) {
                if (k > first_failure.load()) return;
                try {
                    body(k);
                } catch (...) {
                    std::lock_guard lock(mutex);
                    if (k < first_failure.load()) {
                        first_failure = k;
                        error = std::current_exception();
                    }
                    return;
                }
            }
        });
    }
    for (auto& t : threads) t.join();
    if (error) std::rethrow_exception(error);
}

}  // namespace cts
