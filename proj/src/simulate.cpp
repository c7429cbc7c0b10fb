#include "catseries/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

#include <json.hpp>

#include "catseries/mining.hpp"

namespace cts {

std::size_t Rng::draw(std::span<const double> cumulative) {
    const double u = uniform();
    for (std::size_t k = 0; k < cumulative.size(); ++k) {
        if (u < cumulative[k]) return k;
    }
    // u beyond a total that rounded below 1: take the last category with mass.
    std::size_t k = cumulative.size() - 1;
    while (k > 0 && cumulative[k] == cumulative[k - 1]) --k;
    return k;
}

std::vector<double> cumulative_sums(std::span<const double> p) {
    std::vector<double> out(p.size());
    double sum = 0.0;
    for (std::size_t k = 0; k < p.size(); ++k) {
        sum += p[k];
        out[k] = sum;
    }
    return out;
}

namespace {

constexpr double kStochasticTolerance = 1e-12;

void require_stochastic(std::span<const double> p, const std::string& what) {
    if (p.empty()) throw ValidationError(what + " is empty");
    double sum = 0.0;
    for (double v : p) {
        if (!std::isfinite(v) || v < 0.0) throw ValidationError(what + " has a negative or non-finite entry");
        sum += v;
    }
    if (std::abs(sum - 1.0) > kStochasticTolerance) throw ValidationError(what + " does not sum to 1");
}

void require_stochastic_matrix(const Matrix& m, const std::string& what) {
    if (m.rows() == 0) throw ValidationError(what + " is empty");
    for (std::size_t i = 0; i < m.rows(); ++i) {
        require_stochastic(m.row(i), what + " row " + std::to_string(i + 1));
    }
}

std::vector<std::vector<double>> cumulative_rows(const Matrix& m) {
    std::vector<std::vector<double>> out;
    for (std::size_t i = 0; i < m.rows(); ++i) out.push_back(cumulative_sums(m.row(i)));
    return out;
}

void require_length(std::size_t length) {
    if (length == 0) throw ValidationError("series length must be positive");
}

struct ModelValidator {
    void operator()(const MarkovChainSpec& s) const {
        if (s.transition.rows() < 2 || s.transition.cols() != s.transition.rows()) {
            throw ValidationError("transition matrix must be square with at least two states");
        }
        require_stochastic_matrix(s.transition, "transition matrix");
        if (s.initial.size() != s.transition.rows()) {
            throw ValidationError("initial distribution does not match the transition matrix");
        }
        require_stochastic(s.initial, "initial distribution");
    }
    void operator()(const HmmSpec& s) const {
        if (s.transition.rows() == 0 || s.transition.cols() != s.transition.rows()) {
            throw ValidationError("hidden transition matrix must be square");
        }
        if (s.emission.rows() != s.transition.rows()) {
            throw ValidationError("emission matrix needs one row per hidden state");
        }
        if (s.emission.cols() < 2) throw ValidationError("emission matrix needs at least two categories");
        require_stochastic_matrix(s.transition, "hidden transition matrix");
        require_stochastic_matrix(s.emission, "emission matrix");
        if (s.initial.size() != s.transition.rows()) {
            throw ValidationError("initial distribution does not match the hidden states");
        }
        require_stochastic(s.initial, "initial distribution");
    }
    void operator()(const NdarmaSpec& s) const {
        if (s.selection.size() != s.p + s.q + 1) {
            throw ValidationError("selection vector must have length p + q + 1");
        }
        require_stochastic(s.selection, "selection vector");
        if (s.innovation.size() < 2) throw ValidationError("innovation marginal needs at least two categories");
        require_stochastic(s.innovation, "innovation marginal");
    }
};

}  // namespace

std::size_t model_categories(const ModelSpec& model) {
    struct {
        std::size_t operator()(const MarkovChainSpec& s) const { return s.transition.rows(); }
        std::size_t operator()(const HmmSpec& s) const { return s.emission.cols(); }
        std::size_t operator()(const NdarmaSpec& s) const { return s.innovation.size(); }
    } visitor;
    return std::visit(visitor, model);
}

void validate_model(const ModelSpec& model) { std::visit(ModelValidator{}, model); }

CategoricalSeries generate_mc(const MarkovChainSpec& spec, std::size_t length, std::uint64_t seed) {
    ModelValidator{}(spec);
    require_length(length);
    Rng rng(seed);
    const auto initial = cumulative_sums(spec.initial);
    const auto rows = cumulative_rows(spec.transition);
    std::vector<std::size_t> codes(length);
    codes[0] = rng.draw(initial);
    for (std::size_t t = 1; t < length; ++t) codes[t] = rng.draw(rows[codes[t - 1]]);
    return {std::move(codes), spec.transition.rows()};
}

CategoricalSeries generate_hmm(const HmmSpec& spec, std::size_t length, std::uint64_t seed) {
    ModelValidator{}(spec);
    require_length(length);
    Rng rng(seed);
    const auto initial = cumulative_sums(spec.initial);
    const auto transitions = cumulative_rows(spec.transition);
    const auto emissions = cumulative_rows(spec.emission);
    std::vector<std::size_t> codes(length);
    std::size_t state = rng.draw(initial);
    for (std::size_t t = 0; t < length; ++t) {
        if (t > 0) state = rng.draw(transitions[state]);
        codes[t] = rng.draw(emissions[state]);
    }
    return {std::move(codes), spec.emission.cols()};
}

CategoricalSeries generate_ndarma(const NdarmaSpec& spec, std::size_t length, std::uint64_t seed) {
    ModelValidator{}(spec);
    require_length(length);
    Rng rng(seed);
    const auto innovation = cumulative_sums(spec.innovation);
    const auto selection = cumulative_sums(spec.selection);
    const std::size_t warm = std::max(spec.p, spec.q);

    // Most recent first: past[0] = X_{t-1}, shocks[0] = e_t once drawn.
    std::deque<std::size_t> past, shocks;
    for (std::size_t k = 0; k < warm; ++k) past.push_front(rng.draw(innovation));
    for (std::size_t k = 0; k < warm; ++k) shocks.push_front(rng.draw(innovation));

    std::vector<std::size_t> codes;
    codes.reserve(length);
    const std::size_t total = spec.burn_in + length;
    for (std::size_t t = 0; t < total; ++t) {
        shocks.push_front(rng.draw(innovation));
        const std::size_t s = rng.draw(selection);
        const std::size_t x = s < spec.p ? past[s] : shocks[s - spec.p];
        past.push_front(x);
        if (past.size() > std::max<std::size_t>(spec.p, 1)) past.pop_back();
        if (shocks.size() > spec.q + 1) shocks.pop_back();
        if (t >= spec.burn_in) codes.push_back(x);
    }
    return {std::move(codes), spec.innovation.size()};
}

CategoricalSeries generate(const GeneratorSpec& spec) {
    struct {
        const GeneratorSpec& g;
        CategoricalSeries operator()(const MarkovChainSpec& s) const { return generate_mc(s, g.length, g.seed); }
        CategoricalSeries operator()(const HmmSpec& s) const { return generate_hmm(s, g.length, g.seed); }
        CategoricalSeries operator()(const NdarmaSpec& s) const { return generate_ndarma(s, g.length, g.seed); }
    } visitor{spec};
    return std::visit(visitor, spec.model);
}

Corpus generate_corpus(const CorpusSpec& spec, std::size_t workers) {
    if (spec.groups.empty()) throw ValidationError("corpus specification has no groups");
    const std::size_t r = model_categories(spec.groups.front().model);
    std::vector<GeneratorSpec> jobs;
    std::vector<std::size_t> labels;
    for (std::size_t g = 0; g < spec.groups.size(); ++g) {
        const auto& group = spec.groups[g];
        const std::string where = "group " + std::to_string(g + 1) + ": ";
        try {
            validate_model(group.model);
        } catch (const ValidationError& e) {
            throw ValidationError(where + e.what());
        }
        if (model_categories(group.model) != r) {
            throw ValidationError(where + "number of categories differs from group 1");
        }
        if (group.count == 0) throw ValidationError(where + "count must be at least 1");
        if (group.length == 0) throw ValidationError(where + "length must be positive");
        for (std::size_t k = 0; k < group.count; ++k) {
            jobs.push_back({group.model, spec.seed + jobs.size(), group.length});
            labels.push_back(g + 1);
        }
    }
    const Alphabet alphabet = spec.alphabet ? *spec.alphabet : Alphabet::numbered(r);
    if (alphabet.size() != r) throw ValidationError("alphabet size does not match the models");

    std::vector<std::optional<CategoricalSeries>> slots(jobs.size());
    parallel_for(jobs.size(), workers, [&](std::size_t k) {
        auto s = generate(jobs[k]);
        slots[k].emplace(std::vector<std::size_t>(s.codes().begin(), s.codes().end()), alphabet);
    });
    Corpus corpus;
    corpus.labels = std::move(labels);
    corpus.series.reserve(slots.size());
    for (auto& s : slots) corpus.series.push_back(std::move(*s));
    return corpus;
}

namespace {

using nlohmann::json;

std::vector<double> read_vector(const json& j, const char* key, const std::string& where) {
    if (!j.contains(key)) throw ValidationError(where + "missing \"" + key + "\"");
    const auto& v = j.at(key);
    if (!v.is_array()) throw ValidationError(where + "\"" + key + "\" must be an array");
    std::vector<double> out;
    for (const auto& x : v) {
        if (!x.is_number()) throw ValidationError(where + "\"" + key + "\" must hold numbers");
        out.push_back(x.get<double>());
    }
    return out;
}

Matrix read_matrix(const json& j, const char* key, const std::string& where) {
    if (!j.contains(key)) throw ValidationError(where + "missing \"" + key + "\"");
    const auto& m = j.at(key);
    if (!m.is_array() || m.empty()) throw ValidationError(where + "\"" + key + "\" must be a non-empty array of rows");
    const std::size_t rows = m.size();
    std::size_t cols = 0;
    std::vector<std::vector<double>> data;
    for (const auto& row : m) {
        if (!row.is_array()) throw ValidationError(where + "\"" + key + "\" must be an array of rows");
        std::vector<double> values;
        for (const auto& x : row) {
            if (!x.is_number()) throw ValidationError(where + "\"" + key + "\" must hold numbers");
            values.push_back(x.get<double>());
        }
        if (data.empty()) cols = values.size();
        if (values.size() != cols || cols == 0) throw ValidationError(where + "\"" + key + "\" rows differ in length");
        data.push_back(std::move(values));
    }
    Matrix out(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t k = 0; k < cols; ++k) out(i, k) = data[i][k];
    return out;
}

std::size_t read_count(const json& j, const char* key, std::size_t fallback, const std::string& where) {
    if (!j.contains(key)) return fallback;
    const auto& v = j.at(key);
    if (!v.is_number_unsigned()) throw ValidationError(where + "\"" + key + "\" must be a non-negative integer");
    return v.get<std::size_t>();
}

}  // namespace

CorpusSpec parse_corpus_spec(const std::string& json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ValidationError(std::string("invalid JSON: ") + e.what());
    }
    if (!doc.is_object()) throw ValidationError("corpus specification must be a JSON object");
    CorpusSpec spec;
    if (doc.contains("seed")) {
        if (!doc["seed"].is_number_unsigned()) throw ValidationError("\"seed\" must be a non-negative integer");
        spec.seed = doc["seed"].get<std::uint64_t>();
    }
    if (doc.contains("alphabet")) {
        std::vector<std::string> symbols;
        for (const auto& s : doc["alphabet"]) {
            if (!s.is_string()) throw ValidationError("\"alphabet\" must be an array of strings");
            symbols.push_back(s.get<std::string>());
        }
        spec.alphabet.emplace(std::move(symbols));
    }
    if (!doc.contains("groups") || !doc["groups"].is_array() || doc["groups"].empty()) {
        throw ValidationError("\"groups\" must be a non-empty array");
    }
    for (std::size_t g = 0; g < doc["groups"].size(); ++g) {
        const auto& j = doc["groups"][g];
        const std::string where = "group " + std::to_string(g + 1) + ": ";
        if (!j.is_object()) throw ValidationError(where + "must be an object");
        if (!j.contains("family") || !j["family"].is_string()) throw ValidationError(where + "missing \"family\"");
        const auto family = j["family"].get<std::string>();
        CorpusGroup group;
        group.count = read_count(j, "count", 1, where);
        group.length = read_count(j, "length", 0, where);
        if (group.length == 0) throw ValidationError(where + "\"length\" must be a positive integer");
        if (family == "mc") {
            group.model = MarkovChainSpec{read_matrix(j, "transition", where), read_vector(j, "initial", where)};
        } else if (family == "hmm") {
            group.model = HmmSpec{read_matrix(j, "transition", where), read_matrix(j, "emission", where),
                                  read_vector(j, "initial", where)};
        } else if (family == "ndarma") {
            NdarmaSpec s;
            s.p = read_count(j, "p", 0, where);
            s.q = read_count(j, "q", 0, where);
            s.selection = read_vector(j, "selection", where);
            s.innovation = read_vector(j, "innovation", where);
            s.burn_in = read_count(j, "burn_in", 500, where);
            group.model = std::move(s);
        } else {
            throw ValidationError(where + "unknown family \"" + family + "\" (expected mc, hmm or ndarma)");
        }
        spec.groups.push_back(std::move(group));
    }
    return spec;
}

}  // namespace cts
