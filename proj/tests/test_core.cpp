#include <catch_amalgamated.hpp>

#include "catseries/core.hpp"
#include "support/oracle.hpp"

using namespace cts;
using Catch::Matchers::WithinAbs;

namespace {

CategoricalSeries s1() { return CategoricalSeries({0, 1, 0, 0, 1}, 2); }

CategoricalSeries periodic123() {
    std::vector<std::size_t> codes;
    for (int k = 0; k < 200; ++k) codes.insert(codes.end(), {0, 1, 2});
    return CategoricalSeries(codes, 3);
}

}  // namespace

TEST_CASE("alphabet validation") {
    CHECK_THROWS_AS(Alphabet({"a"}), ValidationError);
    CHECK_THROWS_AS(Alphabet({"a", "a"}), ValidationError);
    CHECK_THROWS_AS(Alphabet({"a", ""}), ValidationError);
    const Alphabet a({"a", "c", "g", "t"});
    CHECK(a.size() == 4);
    CHECK(a.index_of("g") == 2u);
    CHECK_FALSE(a.index_of("x"));
    CHECK(Alphabet::numbered(3).symbols() == std::vector<std::string>{"1", "2", "3"});
}

TEST_CASE("series validation") {
    CHECK_THROWS_WITH(CategoricalSeries({}, 2), "empty series");
    CHECK_THROWS_AS(CategoricalSeries({0, 3}, 3), ValidationError);
    const CategoricalSeries s({1, 1}, 3);  // category 0 unobserved is fine
    CHECK(s.length() == 2);
}

TEST_CASE("binarize") {
    SECTION("single observation") {
        const auto b = binarize(CategoricalSeries({0}, 3));
        CHECK(std::vector<std::uint8_t>(b.row(0).begin(), b.row(0).end()) ==
              std::vector<std::uint8_t>{1, 0, 0});
    }
    SECTION("S1 rows") {
        const auto b = binarize(s1());
        const std::vector<std::vector<std::uint8_t>> expected{{1, 0}, {0, 1}, {1, 0}, {1, 0}, {0, 1}};
        for (std::size_t t = 0; t < 5; ++t) {
            CHECK(std::vector<std::uint8_t>(b.row(t).begin(), b.row(t).end()) == expected[t]);
        }
    }
    SECTION("argmax round trip on random series") {
        std::mt19937_64 rng(11);
        for (int rep = 0; rep < 50; ++rep) {
            const std::size_t r = 2 + rep % 4;
            const auto codes = oracle::random_codes(rng, 1 + rep, r);
            const auto b = binarize(CategoricalSeries(codes, r));
            for (std::size_t t = 0; t < codes.size(); ++t) {
                int ones = 0;
                for (auto v : b.row(t)) ones += v;
                CHECK(ones == 1);
            }
            CHECK(b.argmax() == codes);
        }
    }
}

TEST_CASE("marginal probabilities") {
    const auto p = marginal_probabilities(s1());
    CHECK_THAT(p[0], WithinAbs(0.6, 1e-15));
    CHECK_THAT(p[1], WithinAbs(0.4, 1e-15));
    CHECK(marginal_probabilities(CategoricalSeries({1, 1, 1}, 3)) == std::vector<double>{0, 1, 0});
    for (double v : marginal_probabilities(periodic123())) CHECK_THAT(v, WithinAbs(1.0 / 3, 1e-15));
}

TEST_CASE("lag tables") {
    SECTION("S1 at lag 1") {
        const auto t = lag_tables(s1(), 1);
        CHECK(t.joint_counts(0, 0) == 1);
        CHECK(t.joint_counts(0, 1) == 1);
        CHECK(t.joint_counts(1, 0) == 2);
        CHECK(t.joint_counts(1, 1) == 0);
        CHECK(t.pairs() == 4);
        CHECK_THAT(t.joint(0, 0), WithinAbs(0.25, 1e-15));
        CHECK_THAT(t.joint(0, 1), WithinAbs(0.25, 1e-15));
        CHECK_THAT(t.joint(1, 0), WithinAbs(0.5, 1e-15));
        CHECK(t.joint(1, 1) == 0.0);
    }
    SECTION("lag zero gives the diagonal of the marginals") {
        const auto t = lag_tables(s1(), 0);
        CHECK_THAT(t.joint(0, 0), WithinAbs(0.6, 1e-15));
        CHECK_THAT(t.joint(1, 1), WithinAbs(0.4, 1e-15));
        CHECK(t.joint(0, 1) == 0.0);
        CHECK(t.joint(1, 0) == 0.0);
    }
    SECTION("lag bounds") {
        CHECK_THROWS_WITH(lag_tables(s1(), 5), "lag exceeds series length");
        CHECK_NOTHROW(lag_tables(s1(), 4));
    }
    SECTION("counts match a brute-force enumeration") {
        std::mt19937_64 rng(7);
        for (int rep = 0; rep < 200; ++rep) {
            const std::size_t r = 2 + rep % 3;
            const std::size_t T = 2 + rep % 49;
            const auto codes = oracle::random_codes(rng, T, r);
            const CategoricalSeries s(codes, r);
            const std::size_t l = static_cast<std::size_t>(rep) % T;
            const auto t = lag_tables(s, l);
            const auto j = oracle::joint(codes, r, l);
            std::size_t total = 0;
            double psum = 0;
            for (std::size_t a = 0; a < r; ++a)
                for (std::size_t b = 0; b < r; ++b) {
                    CHECK(t.joint_counts(a, b) ==
                          static_cast<std::size_t>(std::lround(j[a][b] * static_cast<double>(T - l))));
                    CHECK(t.joint(a, b) >= 0.0);
                    total += t.joint_counts(a, b);
                    psum += t.joint(a, b);
                }
            CHECK(total == T - l);
            CHECK_THAT(psum, WithinAbs(1.0, 1e-12));
            std::size_t n = 0;
            for (auto c : t.marginal_counts) n += c;
            CHECK(n == T);
        }
    }
}

TEST_CASE("conditional probabilities") {
    SECTION("S1 column of category 1") {
        const auto c = conditional_probabilities(lag_tables(s1(), 1));
        CHECK_THAT(c.value(0, 0), WithinAbs(0.25 / 0.6, 1e-12));
        CHECK_THAT(c.value(1, 0), WithinAbs(0.5 / 0.6, 1e-12));
    }
    SECTION("independent population tables give p_i in every column") {
        const std::vector<double> p{0.2, 0.5, 0.3};
        Matrix j(3, 3);
        for (std::size_t a = 0; a < 3; ++a)
            for (std::size_t b = 0; b < 3; ++b) j(a, b) = p[a] * p[b];
        const auto c = conditional_probabilities(LagTables::from_probabilities(p, j, 100, 1));
        for (std::size_t a = 0; a < 3; ++a)
            for (std::size_t b = 0; b < 3; ++b) CHECK_THAT(c.value(a, b), WithinAbs(p[a], 1e-15));
        // consistent population tables: every column sums to one
        for (std::size_t b = 0; b < 3; ++b) {
            double s = 0;
            for (std::size_t a = 0; a < 3; ++a) s += c.value(a, b);
            CHECK_THAT(s, WithinAbs(1.0, 1e-12));
        }
    }
    SECTION("absent category gives an undefined column") {
        const auto c = conditional_probabilities(lag_tables(CategoricalSeries({0, 1, 0, 1}, 3), 1));
        for (std::size_t a = 0; a < 3; ++a) {
            CHECK_FALSE(c.defined(a, 2));
            CHECK_THROWS_AS(c.value(a, 2), ValidationError);
        }
        CHECK(c.defined(0, 0));
    }
    SECTION("sample column sums follow the two divisors") {
        // Marginals divide by T, joints by T - l, so a column sums to
        // (sum_i N_ij / (T - l)) / (N_j / T) rather than exactly 1.
        std::mt19937_64 rng(3);
        for (int rep = 0; rep < 100; ++rep) {
            const std::size_t r = 2 + rep % 3, T = 5 + rep % 40, l = 1 + rep % 4;
            const CategoricalSeries s(oracle::random_codes(rng, T, r), r);
            const auto t = lag_tables(s, l);
            const auto c = conditional_probabilities(t);
            for (std::size_t b = 0; b < r; ++b) {
                if (t.marginal_counts[b] == 0) continue;
                double col = 0, nj = 0;
                for (std::size_t a = 0; a < r; ++a) {
                    col += c.value(a, b);
                    nj += static_cast<double>(t.joint_counts(a, b));
                }
                const double expected = (nj / static_cast<double>(T - l)) /
                                        (static_cast<double>(t.marginal_counts[b]) / static_cast<double>(T));
                CHECK_THAT(col, WithinAbs(expected, 1e-12));
            }
        }
    }
}

TEST_CASE("probability vector check") {
    CHECK_NOTHROW(require_probability_vector(std::vector<double>{0.5, 0.5}, "p"));
    CHECK_THROWS_AS(require_probability_vector(std::vector<double>{0.5, 0.6}, "p"), ValidationError);
    CHECK_THROWS_AS(require_probability_vector(std::vector<double>{1.5, -0.5}, "p"), ValidationError);
}
