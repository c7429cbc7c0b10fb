#include "catseries/spectral.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <unsupported/Eigen/FFT>

namespace cts {

std::size_t SpectralEnvelope::peak_index() const {
    if (envelope.empty()) throw ValidationError("empty spectral envelope");
    const double top = *std::max_element(envelope.begin(), envelope.end());
    std::size_t best = envelope.size();
    for (std::size_t k = 0; k < envelope.size(); ++k) {
        if (envelope[k] < top * (1.0 - 1e-9)) continue;
        const double raw = k < raw_envelope.size() ? raw_envelope[k] : 0.0;
        const double best_raw =
            best < envelope.size() && best < raw_envelope.size() ? raw_envelope[best] : -1.0;
        if (best == envelope.size() || raw > best_raw) best = k;
    }
    return best;
}

std::size_t default_daniell_window(std::size_t length) {
    const auto half = static_cast<std::size_t>(std::floor(std::sqrt(static_cast<double>(length)) / 2.0));
    return 2 * half + 1;
}

SpectralEnvelope spectral_envelope(const Matrix& data, std::optional<std::size_t> window) {
    const std::size_t T = data.rows();
    const std::size_t m = data.cols();
    if (T < 8) throw ValidationError("spectral envelope needs at least 8 observations");
    if (m < 1) throw ValidationError("spectral envelope needs at least one component");
    const std::size_t span = window.value_or(default_daniell_window(T));
    if (span % 2 == 0) throw ValidationError("smoothing window length must be odd");
    if (2 * span >= T) throw ValidationError("smoothing window must be shorter than T/2");

    Eigen::MatrixXd x(T, m);
    for (std::size_t t = 0; t < T; ++t)
        for (std::size_t a = 0; a < m; ++a) x(t, a) = data(t, a);
    x.rowwise() -= x.colwise().mean();

    const Eigen::MatrixXd cov = (x.transpose() * x) / static_cast<double>(T);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> cov_eig(cov);
    const double cov_max = cov_eig.eigenvalues().maxCoeff();
    if (!(cov_eig.eigenvalues().minCoeff() > 1e-10 * std::max(cov_max, 1e-300))) {
        throw ValidationError(
            "singular indicator covariance: a category is constant or unobserved; reduce the "
            "alphabet to the observed categories");
    }

    // d_a(j) = T^{-1/2} sum_t x_t e^{-2 pi i j t / T}
    Eigen::FFT<double> fft;
    std::vector<std::vector<std::complex<double>>> dft(m);
    const double norm = 1.0 / std::sqrt(static_cast<double>(T));
    for (std::size_t a = 0; a < m; ++a) {
        std::vector<std::complex<double>> in(T);
        for (std::size_t t = 0; t < T; ++t) in[t] = x(static_cast<Eigen::Index>(t), a);
        fft.fwd(dft[a], in);
        for (auto& v : dft[a]) v *= norm;
    }

    // Real part of the cross-periodogram at index j (mod T).
    auto periodogram = [&](std::size_t j) {
        Eigen::MatrixXd I(m, m);
        for (std::size_t a = 0; a < m; ++a)
            for (std::size_t b = 0; b < m; ++b)
                I(a, b) = (dft[a][j] * std::conj(dft[b][j])).real();
        return I;
    };

    const std::size_t half_span = span / 2;
    SpectralEnvelope out;
    out.window = span;
    // Running Daniell sum over indices j - half_span .. j + half_span (mod T).
    Eigen::MatrixXd window_sum = Eigen::MatrixXd::Zero(m, m);
    for (std::size_t h = 0; h < span; ++h) window_sum += periodogram((1 + T + h - half_span) % T);
    for (std::size_t j = 1; j <= T / 2; ++j) {
        if (j > 1) {
            window_sum += periodogram((j + half_span) % T);
            window_sum -= periodogram((j - 1 + T - half_span) % T);
        }
        Eigen::MatrixXd f = window_sum / static_cast<double>(span);
        f = 0.5 * (f + f.transpose());

        Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> ges(f, cov);
        const Eigen::Index top = m - 1;
        Eigen::VectorXd gamma = ges.eigenvectors().col(top);
        gamma.normalize();
        Eigen::Index lead = 0;
        gamma.cwiseAbs().maxCoeff(&lead);
        if (gamma(lead) < 0) gamma = -gamma;

        out.frequencies.push_back(static_cast<double>(j) / static_cast<double>(T));
        out.envelope.push_back(std::max(0.0, ges.eigenvalues()(top)));
        out.scalings.emplace_back(gamma.data(), gamma.data() + m);

        Eigen::MatrixXd raw = periodogram(j);
        raw = 0.5 * (raw + raw.transpose());
        Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> raw_ges(raw, cov, Eigen::EigenvaluesOnly);
        out.raw_envelope.push_back(std::max(0.0, raw_ges.eigenvalues()(top)));
    }
    return out;
}

SpectralEnvelope spectral_envelope(const CategoricalSeries& series,
                                   std::optional<std::size_t> window) {
    const std::size_t T = series.length();
    const std::size_t m = series.categories() - 1;
    Matrix indicators(T, m, 0.0);
    for (std::size_t t = 0; t < T; ++t) {
        if (series[t] < m) indicators(t, series[t]) = 1.0;
    }
    return spectral_envelope(indicators, window);
}

NumericSeries scaled_series(const CategoricalSeries& series, std::span<const double> gamma) {
    if (gamma.size() != series.categories()) {
        throw ValidationError("scaling length must equal the number of categories");
    }
    std::vector<double> values(series.length());
    for (std::size_t t = 0; t < series.length(); ++t) values[t] = gamma[series[t]];
    return NumericSeries(std::move(values));
}

}  // namespace cts
