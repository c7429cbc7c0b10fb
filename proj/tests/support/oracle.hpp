#pragma once

// Deliberately naive reference implementations used as test oracles. They
// work from raw codes with explicit loops and share no code with the library.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <random>
#include <vector>

namespace oracle {

using Codes = std::vector<std::size_t>;
using Table = std::vector<std::vector<double>>;

inline std::vector<double> marginals(const Codes& x, std::size_t r) {
    std::vector<double> p(r, 0.0);
    for (std::size_t i = 0; i < r; ++i) {
        std::size_t n = 0;
        for (auto c : x) n += (c == i);
        p[i] = static_cast<double>(n) / static_cast<double>(x.size());
    }
    return p;
}

/// joint[i][j]: fraction of t with x_t = i and x_{t-l} = j, scanning every
/// (t, s) pair and keeping those with t - s = l.
inline Table joint(const Codes& x, std::size_t r, std::size_t l) {
    Table n(r, std::vector<double>(r, 0.0));
    std::size_t pairs = 0;
    for (std::size_t t = 0; t < x.size(); ++t)
        for (std::size_t s = 0; s < x.size(); ++s) {
            if (t != s + l) continue;
            n[x[t]][x[s]] += 1.0;
            ++pairs;
        }
    for (auto& row : n)
        for (auto& v : row) v /= static_cast<double>(pairs);
    return n;
}

inline double sum_sq(const std::vector<double>& p) {
    double s = 0;
    for (double v : p) s += v * v;
    return s;
}

inline double gini(const std::vector<double>& p) {
    const double r = static_cast<double>(p.size());
    return r / (r - 1) * (1 - sum_sq(p));
}

inline double entropy(const std::vector<double>& p) {
    double s = 0;
    for (double v : p)
        if (v > 0) s -= v * std::log(v);
    return s / std::log(static_cast<double>(p.size()));
}

inline double chebycheff(const std::vector<double>& p) {
    const double r = static_cast<double>(p.size());
    return r / (r - 1) * (1 - *std::max_element(p.begin(), p.end()));
}

/// Goodman-Kruskal tau through conditional distributions:
/// sum_j p_j sum_i p(i|j)^2 is the expected squared conditional mass.
inline double tau(const std::vector<double>& p, const Table& pj) {
    const std::size_t r = p.size();
    double expected = 0;
    for (std::size_t j = 0; j < r; ++j) {
        if (p[j] == 0) continue;
        double s = 0;
        for (std::size_t i = 0; i < r; ++i) {
            const double cond = pj[i][j] / p[j];
            s += cond * cond;
        }
        expected += p[j] * s;
    }
    return (expected - sum_sq(p)) / (1 - sum_sq(p));
}

inline double lambda(const std::vector<double>& p, const Table& pj) {
    const std::size_t r = p.size();
    double s = 0;
    for (std::size_t j = 0; j < r; ++j) {
        double m = 0;
        for (std::size_t i = 0; i < r; ++i) m = std::max(m, pj[i][j]);
        s += m;
    }
    const double pm = *std::max_element(p.begin(), p.end());
    return (s - pm) / (1 - pm);
}

/// Mutual information over marginal entropy.
inline double uncertainty(const std::vector<double>& p, const Table& pj) {
    const std::size_t r = p.size();
    double mi = 0, h = 0;
    for (std::size_t i = 0; i < r; ++i) {
        if (p[i] > 0) h -= p[i] * std::log(p[i]);
        for (std::size_t j = 0; j < r; ++j) {
            if (pj[i][j] > 0) mi += pj[i][j] * (std::log(pj[i][j]) - std::log(p[i]) - std::log(p[j]));
        }
    }
    return mi / h;
}

inline double phi2(const std::vector<double>& p, const Table& pj) {
    const std::size_t r = p.size();
    double s = 0;
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j) {
            const double e = p[i] * p[j];
            if (e == 0) continue;
            s += (pj[i][j] - e) * (pj[i][j] - e) / e;
        }
    return s;
}

inline double cramers_v(const std::vector<double>& p, const Table& pj) {
    return std::sqrt(phi2(p, pj) / static_cast<double>(p.size() - 1));
}

inline double sakoda(const std::vector<double>& p, const Table& pj) {
    const double f = phi2(p, pj);
    const double r = static_cast<double>(p.size());
    return std::sqrt(r * f / ((r - 1) * (1 + f)));
}

/// Cohen's kappa as (observed agreement - chance agreement) / (1 - chance).
inline double kappa(const std::vector<double>& p, const Table& pj) {
    double agree = 0;
    for (std::size_t i = 0; i < p.size(); ++i) agree += pj[i][i];
    return (agree - sum_sq(p)) / (1 - sum_sq(p));
}

/// Binarized-correlation matrix from the indicator vectors: covariance over
/// the lagged window, variances and means over the full series.
inline Table psi(const Codes& x, std::size_t r, std::size_t l) {
    const std::size_t T = x.size();
    std::vector<std::vector<double>> y(r, std::vector<double>(T, 0.0));
    for (std::size_t t = 0; t < T; ++t) y[x[t]][t] = 1.0;
    std::vector<double> mean(r, 0.0), var(r, 0.0);
    for (std::size_t i = 0; i < r; ++i) {
        for (double v : y[i]) mean[i] += v;
        mean[i] /= static_cast<double>(T);
        for (double v : y[i]) var[i] += v * v;
        var[i] = var[i] / static_cast<double>(T) - mean[i] * mean[i];
    }
    Table out(r, std::vector<double>(r, 0.0));
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j) {
            double cross = 0;
            for (std::size_t t = l; t < T; ++t) cross += y[i][t] * y[j][t - l];
            cross /= static_cast<double>(T - l);
            out[i][j] = (cross - mean[i] * mean[j]) / std::sqrt(var[i] * var[j]);
        }
    return out;
}

inline double total_correlation(const Table& psi) {
    double s = 0;
    for (const auto& row : psi)
        for (double v : row) s += v * v;
    return s / static_cast<double>(psi.size() * psi.size());
}

/// d_CC written out as the triple sum.
inline double dcc(const Codes& a, const Codes& b, std::size_t r, std::size_t L) {
    const auto pa = marginals(a, r), pb = marginals(b, r);
    double d = 0;
    for (std::size_t l = 1; l <= L; ++l) {
        const auto ja = joint(a, r, l), jb = joint(b, r, l);
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < r; ++j) {
                const double ea = pa[i] * pa[j], eb = pb[i] * pb[j];
                const double ta = ea > 0 ? (ja[i][j] - ea) * (ja[i][j] - ea) / ea : 0.0;
                const double tb = eb > 0 ? (jb[i][j] - eb) * (jb[i][j] - eb) / eb : 0.0;
                d += (ta - tb) * (ta - tb);
            }
        for (std::size_t i = 0; i < r; ++i) {
            const double ka = (ja[i][i] - pa[i] * pa[i]) / (1 - sum_sq(pa));
            const double kb = (jb[i][i] - pb[i] * pb[i]) / (1 - sum_sq(pb));
            d += (ka - kb) * (ka - kb);
        }
    }
    for (std::size_t i = 0; i < r; ++i) d += (pa[i] - pb[i]) * (pa[i] - pb[i]);
    return d;
}

inline double db(const Codes& a, const Codes& b, std::size_t r, std::size_t L) {
    const auto pa = marginals(a, r), pb = marginals(b, r);
    double d = 0;
    for (std::size_t l = 1; l <= L; ++l) {
        const auto sa = psi(a, r, l), sb = psi(b, r, l);
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < r; ++j) d += (sa[i][j] - sb[i][j]) * (sa[i][j] - sb[i][j]);
    }
    for (std::size_t i = 0; i < r; ++i) d += (pa[i] - pb[i]) * (pa[i] - pb[i]);
    return d;
}

/// Quantile by linear interpolation at position (n - 1) rho of the sorted sample.
inline double quantile(std::vector<double> v, double rho) {
    std::sort(v.begin(), v.end());
    const double h = (static_cast<double>(v.size()) - 1) * rho;
    const auto lo = static_cast<std::size_t>(std::floor(h));
    const auto hi = std::min(lo + 1, v.size() - 1);
    return v[lo] + (h - static_cast<double>(lo)) * (v[hi] - v[lo]);
}

/// Holm adjustment straight from its definition:
/// adj_(k) = min(1, max_{m <= k} (n - m + 1) p_(m)).
inline std::vector<double> holm(const std::vector<double>& p) {
    const std::size_t n = p.size();
    std::vector<double> out(n);
    for (std::size_t a = 0; a < n; ++a) {
        // rank of a among p (ties broken by index)
        double best = 0;
        for (std::size_t b = 0; b < n; ++b) {
            const bool before = p[b] < p[a] || (p[b] == p[a] && b <= a);
            if (!before) continue;
            std::size_t rank_b = 0;
            for (std::size_t c = 0; c < n; ++c) rank_b += (p[c] < p[b] || (p[c] == p[b] && c <= b));
            best = std::max(best, static_cast<double>(n - rank_b + 1) * p[b]);
        }
        out[a] = std::min(1.0, best);
    }
    return out;
}

/// Periodogram matrix entry at Fourier index k by the O(T) direct sum:
/// I_ab = d_a conj(d_b), d = T^{-1/2} sum_t (x_t - mean) e^{-2 pi i k t / T}.
inline std::complex<double> dft(const std::vector<double>& x, std::size_t k) {
    const std::size_t T = x.size();
    double mean = 0;
    for (double v : x) mean += v;
    mean /= static_cast<double>(T);
    std::complex<double> s = 0;
    for (std::size_t t = 0; t < T; ++t) {
        const double ang = -2.0 * std::numbers::pi * static_cast<double>(k * t % T) / static_cast<double>(T);
        s += (x[t] - mean) * std::complex<double>(std::cos(ang), std::sin(ang));
    }
    return s / std::sqrt(static_cast<double>(T));
}

inline Codes random_codes(std::mt19937_64& rng, std::size_t T, std::size_t r) {
    std::uniform_int_distribution<std::size_t> d(0, r - 1);
    Codes x(T);
    for (auto& c : x) c = d(rng);
    return x;
}

}  // namespace oracle
