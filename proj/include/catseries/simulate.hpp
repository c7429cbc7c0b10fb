#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "catseries/core.hpp"

namespace cts {

/// Portable random source: std::mt19937_64, whose output sequence is fixed by
/// the C++ standard. Uniforms are built from the top 53 bits so no library
/// distribution (implementation-defined) is involved.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform on [0, 1).
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1p-53; }

    /// Inverse-CDF draw from cumulative sums (last entry ~ 1).
    std::size_t draw(std::span<const double> cumulative);

private:
    std::mt19937_64 engine_;
};

/// Running sums of a probability vector, accumulated left to right.
[[nodiscard]] std::vector<double> cumulative_sums(std::span<const double> p);

struct MarkovChainSpec {
    Matrix transition;            ///< r x r, row j = distribution of X_t given X_{t-1} = j
    std::vector<double> initial;  ///< distribution of X_1
};

struct HmmSpec {
    Matrix transition;            ///< h x h over hidden states
    Matrix emission;              ///< h x r, row s = observation distribution in state s
    std::vector<double> initial;  ///< hidden distribution at t = 1
};

/// X_t is X_{t-1}, ..., X_{t-p} or e_t, e_{t-1}, ..., e_{t-q}, chosen at random
/// with the probabilities in `selection` (in that order, length p + q + 1);
/// the innovations e are i.i.d. with marginal `innovation`.
struct NdarmaSpec {
    std::size_t p = 0;
    std::size_t q = 0;
    std::vector<double> selection;
    std::vector<double> innovation;
    std::size_t burn_in = 500;
};

using ModelSpec = std::variant<MarkovChainSpec, HmmSpec, NdarmaSpec>;

struct GeneratorSpec {
    ModelSpec model;
    std::uint64_t seed = 0;
    std::size_t length = 0;
};

/// Number of observable categories of a model.
[[nodiscard]] std::size_t model_categories(const ModelSpec& model);

/// Throws ValidationError unless the model is well formed: stochastic rows
/// with non-negative entries summing to 1 within 1e-12, matching dimensions.
void validate_model(const ModelSpec& model);

[[nodiscard]] CategoricalSeries generate_mc(const MarkovChainSpec& spec, std::size_t length,
                                            std::uint64_t seed);
[[nodiscard]] CategoricalSeries generate_hmm(const HmmSpec& spec, std::size_t length,
                                             std::uint64_t seed);
/// max(p, q) past values and innovations are drawn from the innovation
/// marginal, then burn_in steps are run and discarded. Each step draws the
/// innovation first, then the selection.
[[nodiscard]] CategoricalSeries generate_ndarma(const NdarmaSpec& spec, std::size_t length,
                                                std::uint64_t seed);
[[nodiscard]] CategoricalSeries generate(const GeneratorSpec& spec);

struct CorpusGroup {
    ModelSpec model;
    std::size_t length = 0;
    std::size_t count = 1;
};

struct CorpusSpec {
    std::optional<Alphabet> alphabet;  ///< defaults to the numbered alphabet
    std::uint64_t seed = 0;
    std::vector<CorpusGroup> groups;
};

struct Corpus {
    std::vector<CategoricalSeries> series;
    std::vector<std::size_t> labels;  ///< 1-based group of each series
};

/// Groups in order; series k of the corpus (0-based, across groups) uses seed
/// `spec.seed + k`.
[[nodiscard]] Corpus generate_corpus(const CorpusSpec& spec, std::size_t workers = 1);

/// Reads a corpus specification from JSON:
///
///   {
///     "seed": 2024,                      unsigned 64-bit, default 0
///     "alphabet": ["a", "b", "c"],       optional
///     "groups": [
///       {"family": "mc", "count": 20, "length": 600,
///        "transition": [[...], ...], "initial": [...]},
///       {"family": "hmm", "count": 5, "length": 600,
///        "transition": [[...]], "emission": [[...]], "initial": [...]},
///       {"family": "ndarma", "count": 2, "length": 600, "p": 1, "q": 0,
///        "selection": [0.7, 0.3], "innovation": [...], "burn_in": 500}
///     ]
///   }
///
/// "count" defaults to 1 and "burn_in" to 500.
[[nodiscard]] CorpusSpec parse_corpus_spec(const std::string& json_text);

}  // namespace cts
