#pragma once

#include <optional>
#include <vector>

#include "catseries/core.hpp"
#include "catseries/mixed.hpp"

namespace cts {

/// Sample spectral envelope over the Fourier frequencies j/T in (0, 0.5].
///
/// envelope[k] is the largest ratio gamma' f(w) gamma / gamma' V gamma over
/// real scalings gamma, where f is the real part of the Daniell-smoothed
/// periodogram matrix and V the sample covariance of the indicator series.
/// scalings[k] is the maximizing gamma, rescaled to unit Euclidean norm with
/// its largest-magnitude entry positive.
struct SpectralEnvelope {
    std::vector<double> frequencies;
    std::vector<double> envelope;
    std::vector<std::vector<double>> scalings;
    /// Same ratio from the unsmoothed periodogram (window of length 1).
    std::vector<double> raw_envelope;
    std::size_t window = 0;  ///< Daniell window length used

    /// Index of the largest envelope value. A flat window turns a single
    /// periodogram spike into a run of equal values, so values within a relative
    /// 1e-9 of the maximum count as tied and the tie goes to the largest raw
    /// envelope value (then to the lowest frequency).
    [[nodiscard]] std::size_t peak_index() const;
};

/// 2 * floor(sqrt(T) / 2) + 1
[[nodiscard]] std::size_t default_daniell_window(std::size_t length);

/// Binarizes the series and drops the last category's indicator, so scalings
/// have r - 1 entries (the dropped category is implicitly scaled by 0).
/// Requires T >= 8 and an odd window below T / 2. Throws if a retained
/// indicator is constant or the retained indicators are collinear; reduce the
/// alphabet to the observed categories in that case.
[[nodiscard]] SpectralEnvelope spectral_envelope(const CategoricalSeries& series,
                                                 std::optional<std::size_t> window = {});

/// Same computation on an arbitrary multivariate real series (rows = time).
[[nodiscard]] SpectralEnvelope spectral_envelope(const Matrix& data,
                                                 std::optional<std::size_t> window = {});

/// X_t(gamma) = gamma[code_t].
[[nodiscard]] NumericSeries scaled_series(const CategoricalSeries& series,
                                          std::span<const double> gamma);

}  // namespace cts
