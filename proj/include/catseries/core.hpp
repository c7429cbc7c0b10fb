#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace cts {

/// Raised for any input that violates an operation's preconditions.
class ValidationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Dense row-major matrix.
template <typename T>
class Grid {
public:
    Grid() = default;
    Grid(std::size_t rows, std::size_t cols, T fill = T{})
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    [[nodiscard]] std::size_t rows() const noexcept { return rows_; }
    [[nodiscard]] std::size_t cols() const noexcept { return cols_; }

    T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    [[nodiscard]] std::span<T> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
    [[nodiscard]] std::span<const T> row(std::size_t i) const {
        return {data_.data() + i * cols_, cols_};
    }

    [[nodiscard]] const std::vector<T>& data() const noexcept { return data_; }

    bool operator==(const Grid&) const = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<T> data_;
};

using Matrix = Grid<double>;
using CountMatrix = Grid<std::size_t>;

/// Matrix whose cells may be undefined (e.g. a ratio with a zero denominator).
///
/// Reading an undefined cell through value() throws, so callers cannot consume
/// a missing entry by accident.
class PartialMatrix {
public:
    PartialMatrix() = default;
    PartialMatrix(std::size_t rows, std::size_t cols) : cells_(rows, cols) {}

    [[nodiscard]] std::size_t rows() const noexcept { return cells_.rows(); }
    [[nodiscard]] std::size_t cols() const noexcept { return cells_.cols(); }

    [[nodiscard]] const std::optional<double>& at(std::size_t i, std::size_t j) const {
        return cells_(i, j);
    }
    void set(std::size_t i, std::size_t j, std::optional<double> v) { cells_(i, j) = v; }

    [[nodiscard]] bool defined(std::size_t i, std::size_t j) const {
        return cells_(i, j).has_value();
    }
    [[nodiscard]] bool all_defined() const;

    /// Throws ValidationError if the cell is undefined.
    [[nodiscard]] double value(std::size_t i, std::size_t j) const;

private:
    Grid<std::optional<double>> cells_;
};

/// Ordered set of category labels. Category k (0-based) is symbols()[k].
class Alphabet {
public:
    explicit Alphabet(std::vector<std::string> symbols);

    /// Alphabet with labels "1", "2", ..., "r".
    static Alphabet numbered(std::size_t r);

    [[nodiscard]] std::size_t size() const noexcept { return symbols_.size(); }
    [[nodiscard]] const std::vector<std::string>& symbols() const noexcept { return symbols_; }
    [[nodiscard]] const std::string& symbol(std::size_t k) const { return symbols_.at(k); }
    [[nodiscard]] std::optional<std::size_t> index_of(std::string_view symbol) const;

    bool operator==(const Alphabet&) const = default;

private:
    std::vector<std::string> symbols_;
};

/// A categorical series: integer codes into an alphabet.
///
/// Codes are 0-based category indices; a series may leave some alphabet
/// categories unobserved.
class CategoricalSeries {
public:
    CategoricalSeries(std::vector<std::size_t> codes, Alphabet alphabet);

    /// Convenience for the numbered alphabet {1..r}.
    CategoricalSeries(std::vector<std::size_t> codes, std::size_t r);

    [[nodiscard]] std::size_t length() const noexcept { return codes_.size(); }
    [[nodiscard]] std::size_t categories() const noexcept { return alphabet_.size(); }
    [[nodiscard]] std::span<const std::size_t> codes() const noexcept { return codes_; }
    [[nodiscard]] std::size_t operator[](std::size_t t) const { return codes_[t]; }
    [[nodiscard]] const Alphabet& alphabet() const noexcept { return alphabet_; }

    bool operator==(const CategoricalSeries&) const = default;

private:
    std::vector<std::size_t> codes_;
    Alphabet alphabet_;
};

/// One-hot representation: row t is the unit vector of the category at t.
class BinarizedSeries {
public:
    BinarizedSeries(std::size_t length, std::size_t categories);

    [[nodiscard]] std::size_t length() const noexcept { return rows_.rows(); }
    [[nodiscard]] std::size_t categories() const noexcept { return rows_.cols(); }
    [[nodiscard]] std::span<const std::uint8_t> row(std::size_t t) const { return rows_.row(t); }
    [[nodiscard]] std::uint8_t operator()(std::size_t t, std::size_t k) const { return rows_(t, k); }
    void set(std::size_t t, std::size_t k) { rows_(t, k) = 1; }

    /// Position of the 1 in each row.
    [[nodiscard]] std::vector<std::size_t> argmax() const;

private:
    Grid<std::uint8_t> rows_;
};

[[nodiscard]] BinarizedSeries binarize(const CategoricalSeries& series);

/// Sample marginal and lag-l joint distribution of a series.
///
/// joint(i, j) estimates P(X_t = i, X_{t-l} = j): row i is the current value,
/// column j the lagged one. Marginals divide by T, the joint by T - l.
struct LagTables {
    std::size_t lag = 0;
    std::size_t length = 0;                  ///< T
    std::vector<std::size_t> marginal_counts;  ///< N_i (empty for population tables)
    CountMatrix joint_counts;                ///< N_ij(l) (empty for population tables)
    std::vector<double> marginals;           ///< p_i
    Matrix joint;                            ///< p_ij(l)

    [[nodiscard]] std::size_t categories() const noexcept { return marginals.size(); }
    /// Number of lagged pairs, T - l.
    [[nodiscard]] std::size_t pairs() const noexcept { return length - lag; }

    /// Tables from known probabilities, e.g. a population model. `length` and
    /// `lag` only set the nominal sample size used by count-scaled measures.
    static LagTables from_probabilities(std::vector<double> marginals, Matrix joint,
                                        std::size_t length, std::size_t lag);
};

[[nodiscard]] std::vector<double> marginal_probabilities(const CategoricalSeries& series);
[[nodiscard]] std::vector<std::size_t> marginal_counts(const CategoricalSeries& series);

/// Requires lag < T.
[[nodiscard]] LagTables lag_tables(const CategoricalSeries& series, std::size_t lag);

/// p_{i|j}(l) = p_ij(l) / p_j; columns with p_j = 0 are undefined.
[[nodiscard]] PartialMatrix conditional_probabilities(const LagTables& tables);

/// Throws ValidationError unless p is a probability vector (tolerance 1e-9).
void require_probability_vector(std::span<const double> p, const char* what);

}  // namespace cts
