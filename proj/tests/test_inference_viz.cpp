#include <catch_amalgamated.hpp>

#include <boost/math/distributions/chi_squared.hpp>
#include <boost/math/distributions/normal.hpp>

#include "catseries/distributions.hpp"
#include "catseries/inference.hpp"
#include "catseries/serial.hpp"
#include "catseries/viz.hpp"
#include "support/oracle.hpp"

using namespace cts;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

CategoricalSeries s1() { return CategoricalSeries({0, 1, 0, 0, 1}, 2); }

CategoricalSeries periodic(std::size_t r, std::size_t reps) {
    std::vector<std::size_t> codes;
    for (std::size_t k = 0; k < reps; ++k)
        for (std::size_t c = 0; c < r; ++c) codes.push_back(c);
    return CategoricalSeries(codes, r);
}

}  // namespace

TEST_CASE("distribution functions against table values") {
    CHECK_THAT(dist::chi_square_quantile(0.95, 4), WithinAbs(9.4877, 1e-4));
    CHECK_THAT(dist::chi_square_quantile(0.95, 1), WithinAbs(3.8415, 1e-4));
    CHECK_THAT(dist::chi_square_quantile(0.99, 9), WithinAbs(21.6660, 1e-4));
    CHECK_THAT(dist::normal_quantile(0.975), WithinAbs(1.959964, 1e-6));
    CHECK_THAT(dist::normal_quantile(0.95), WithinAbs(1.644854, 1e-6));
    CHECK_THAT(dist::normal_quantile(0.995), WithinAbs(2.575829, 1e-6));
    CHECK_THROWS_AS(dist::normal_quantile(1.0), ValidationError);
    CHECK_THROWS_AS(dist::chi_square_quantile(0.5, 0), ValidationError);
}

TEST_CASE("distribution functions agree with Boost") {
    for (double dof : {1.0, 2.0, 4.0, 9.0, 16.0, 49.0}) {
        const boost::math::chi_squared_distribution<double> chi(dof);
        for (double x : {0.01, 0.5, 1.0, 3.0, 10.0, 40.0, 120.0}) {
            CHECK_THAT(dist::chi_square_cdf(x, dof), WithinAbs(boost::math::cdf(chi, x), 1e-12));
            const double sf = boost::math::cdf(boost::math::complement(chi, x));
            if (sf > 1e-300) CHECK_THAT(dist::chi_square_sf(x, dof), WithinRel(sf, 1e-9));
        }
        for (double q : {0.001, 0.05, 0.5, 0.95, 0.999}) {
            CHECK_THAT(dist::chi_square_quantile(q, dof), WithinRel(boost::math::quantile(chi, q), 1e-9));
        }
    }
    const boost::math::normal_distribution<double> n;
    for (double z : {-8.0, -3.0, -1.0, 0.0, 0.5, 2.0, 6.0}) {
        CHECK_THAT(dist::normal_cdf(z), WithinAbs(boost::math::cdf(n, z), 1e-14));
        CHECK_THAT(dist::normal_sf(z), WithinRel(boost::math::cdf(boost::math::complement(n, z)), 1e-10));
    }
    for (double q : {1e-10, 0.001, 0.3, 0.5, 0.8, 0.999999}) {
        CHECK_THAT(dist::normal_quantile(q), WithinAbs(boost::math::quantile(n, q), 1e-9));
    }
}

TEST_CASE("critical values of the independence tests") {
    std::mt19937_64 rng(5);
    const CategoricalSeries s(oracle::random_codes(rng, 600, 3), 3);
    const auto v = cramers_v_test(s, 10, 0.05);
    CHECK_THAT(v.critical_upper, WithinAbs(0.0889, 5e-4));
    CHECK_THAT(v.critical_upper, WithinAbs(std::sqrt(dist::chi_square_quantile(0.95, 4) / 1200), 1e-12));
    CHECK_FALSE(v.critical_lower);
    CHECK(v.rows.size() == 10);

    std::vector<std::size_t> uniform;
    for (int k = 0; k < 200; ++k) uniform.insert(uniform.end(), {0, 2, 1});
    const auto kap = cohens_kappa_test(CategoricalSeries(uniform, 3), 5, 0.05);
    CHECK_THAT(*kap.critical_lower, WithinAbs(-0.0582, 5e-4));
    CHECK_THAT(kap.critical_upper, WithinAbs(0.0549, 5e-4));
    const std::vector<double> third(3, 1.0 / 3);
    CHECK_THAT(kappa_null_variance(third), WithinAbs(0.5, 1e-12));
}

TEST_CASE("trivial p-values") {
    // With divisors T and T - l an exactly null sample estimate cannot occur,
    // so check the null statistic through the reported mapping instead.
    for (double dof : {1.0, 4.0, 9.0}) CHECK(dist::chi_square_sf(0.0, dof) == 1.0);
    CHECK(2 * dist::normal_sf(0.0) == 1.0);

    std::mt19937_64 rng(15);
    for (int rep = 0; rep < 50; ++rep) {
        const CategoricalSeries x(oracle::random_codes(rng, 40 + rep, 3), 3);
        const auto p = marginal_probabilities(x);
        if (*std::min_element(p.begin(), p.end()) == 0) continue;
        const double T = static_cast<double>(x.length());
        const double V = kappa_null_variance(p);
        const auto k = cohens_kappa_test(x, 3, 0.05);
        for (const auto& row : k.rows) {
            CHECK_THAT(row.estimate, WithinAbs(cohens_kappa(lag_tables(x, row.lag)).value, 1e-14));
            CHECK_THAT(row.statistic, WithinAbs(std::sqrt(T / V) * (row.estimate + 1 / T), 1e-12));
            CHECK_THAT(row.p_value, WithinAbs(2 * dist::normal_sf(std::abs(row.statistic)), 1e-14));
        }
    }
}

TEST_CASE("test statistics and preconditions") {
    std::mt19937_64 rng(99);
    const CategoricalSeries s(oracle::random_codes(rng, 100, 4), 4);
    const auto v = cramers_v_test(s, 3, 0.1);
    for (const auto& row : v.rows) {
        const double est = cramers_v(lag_tables(s, row.lag)).value;
        CHECK_THAT(row.estimate, WithinAbs(est, 1e-14));
        CHECK_THAT(row.statistic, WithinAbs(100 * 3 * est * est, 1e-10));
        CHECK_THAT(row.p_value, WithinAbs(dist::chi_square_sf(row.statistic, 9), 1e-14));
    }
    CHECK_THROWS_AS(cramers_v_test(s, 0, 0.05), ValidationError);
    CHECK_THROWS_AS(cramers_v_test(s, 100, 0.05), ValidationError);
    CHECK_THROWS_AS(cohens_kappa_test(s, 2, 1.0), ValidationError);
    CHECK_THROWS_AS(cohens_kappa_test(CategoricalSeries({1, 1, 1, 1}, 2), 1, 0.05), ValidationError);
    CHECK(parse_test_family("cohens_kappa") == TestFamily::cohens_kappa);
    CHECK_FALSE(parse_test_family("pearson"));
}

TEST_CASE("test duality between critical values and p-values") {
    std::mt19937_64 rng(2024);
    for (int rep = 0; rep < 300; ++rep) {
        const std::size_t r = 2 + rep % 3, T = 30 + rep;
        const CategoricalSeries s(oracle::random_codes(rng, T, r), r);
        const auto p = marginal_probabilities(s);
        if (*std::min_element(p.begin(), p.end()) == 0) continue;
        const double alpha = 0.01 + 0.01 * (rep % 10);
        for (auto family : {TestFamily::cramers_v, TestFamily::cohens_kappa}) {
            const auto rep_ = dependence_test(family, s, 5, alpha);
            for (const auto& row : rep_.rows) {
                const bool outside = row.estimate > rep_.critical_upper ||
                                     (rep_.critical_lower && row.estimate < *rep_.critical_lower);
                const bool near = std::abs(row.p_value - alpha) < 1e-10;
                if (!near) CHECK(outside == (row.p_value < alpha));
                CHECK(row.p_value >= 0.0);
                CHECK(row.p_value <= 1.0);
            }
        }
    }
}

TEST_CASE("Holm adjustment") {
    const std::vector<double> p{0.01, 0.04, 0.03};
    const auto a = holm_adjust(p);
    CHECK_THAT(a[0], WithinAbs(0.03, 1e-15));
    CHECK_THAT(a[1], WithinAbs(0.06, 1e-15));
    CHECK_THAT(a[2], WithinAbs(0.06, 1e-15));

    const std::vector<double> ones(4, 1.0);
    CHECK(holm_adjust(ones) == ones);
    CHECK(holm_adjust(std::vector<double>{0.3}) == std::vector<double>{0.3});
    CHECK_THROWS_AS(holm_adjust(std::vector<double>{0.3, 1.2}), ValidationError);

    // Rounded ten-lag vector: adjusted values after rounding to two digits.
    const std::vector<double> ten{0, 0, 0, .07, .62, .15, .01, .24, .04, .04};
    const std::vector<double> want{0, 0, 0, .28, .62, .45, .07, .48, .24, .24};
    const auto got = holm_adjust(ten);
    for (std::size_t k = 0; k < ten.size(); ++k) CHECK_THAT(got[k], WithinAbs(want[k], 1e-12));

    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(0, 1);
    for (int rep = 0; rep < 200; ++rep) {
        std::vector<double> x(1 + rep % 12);
        for (auto& v : x) v = u(rng) * (rep % 2 ? 0.2 : 1.0);
        const auto adj = holm_adjust(x);
        const auto ref = oracle::holm(x);
        for (std::size_t k = 0; k < x.size(); ++k) {
            CHECK(adj[k] >= x[k]);
            CHECK_THAT(adj[k], WithinAbs(ref[k], 1e-15));
        }
        auto perm = x;
        std::vector<std::size_t> idx(x.size());
        std::iota(idx.begin(), idx.end(), 0);
        std::shuffle(idx.begin(), idx.end(), rng);
        for (std::size_t k = 0; k < x.size(); ++k) perm[k] = x[idx[k]];
        const auto padj = holm_adjust(perm);
        for (std::size_t k = 0; k < x.size(); ++k) CHECK(padj[k] == adj[idx[k]]);
    }
}

// ---------------------------------------------------------------------------

TEST_CASE("rate evolution") {
    const auto rate = rate_evolution(s1());
    const std::vector<std::size_t> c1{1, 1, 2, 3, 3}, c2{0, 1, 1, 1, 2};
    for (std::size_t t = 0; t < 5; ++t) {
        CHECK(rate.cumulative(t, 0) == c1[t]);
        CHECK(rate.cumulative(t, 1) == c2[t]);
    }
    std::mt19937_64 rng(6);
    const auto codes = oracle::random_codes(rng, 80, 4);
    const auto r = rate_evolution(CategoricalSeries(codes, 4));
    for (std::size_t t = 0; t < 80; ++t) {
        std::size_t sum = 0;
        for (std::size_t i = 0; i < 4; ++i) {
            sum += r.cumulative(t, i);
            if (t > 0) CHECK(r.cumulative(t, i) >= r.cumulative(t - 1, i));
        }
        CHECK(sum == t + 1);
    }
}

TEST_CASE("cycle lengths") {
    const auto h1 = cycle_lengths(s1(), 0);
    CHECK(h1.cycles == std::vector<CycleRecord>{{0, 0, 2}, {0, 2, 1}});
    CHECK(h1.counts == std::map<std::size_t, std::size_t>{{1, 1}, {2, 1}});
    const auto h2 = cycle_lengths(s1(), 1);
    CHECK(h2.counts == std::map<std::size_t, std::size_t>{{3, 1}});
    const auto per = cycle_lengths(periodic(3, 200), 0);
    CHECK(per.cycles.size() == 199);
    CHECK(per.counts == std::map<std::size_t, std::size_t>{{3, 199}});
    CHECK(cycle_lengths(CategoricalSeries({0, 1, 1}, 3), 2).cycles.empty());
    CHECK(cycle_lengths(CategoricalSeries({0, 1, 1}, 3), 0).cycles.empty());
    CHECK_THROWS_AS(cycle_lengths(s1(), 2), ValidationError);

    std::mt19937_64 rng(17);
    for (int rep = 0; rep < 50; ++rep) {
        const auto codes = oracle::random_codes(rng, 60, 3);
        const auto h = cycle_lengths(CategoricalSeries(codes, 3), rep % 3);
        std::vector<CycleRecord> brute;
        for (std::size_t a = 0; a < codes.size(); ++a) {
            if (codes[a] != static_cast<std::size_t>(rep % 3)) continue;
            for (std::size_t b = a + 1; b < codes.size(); ++b) {
                if (codes[b] == codes[a]) {
                    brute.push_back({codes[a], a, b - a});
                    break;
                }
            }
        }
        CHECK(h.cycles == brute);
    }
}

TEST_CASE("IFS circle transformation") {
    const auto p = circle_point(1, 4);
    CHECK_THAT(p.x, WithinAbs(0.0, 1e-15));
    CHECK_THAT(p.y, WithinAbs(1.0, 1e-15));
    CHECK_THAT(circle_point(2, 4).x, WithinAbs(-1.0, 1e-15));
    CHECK_THAT(circle_point(3, 4).y, WithinAbs(-1.0, 1e-15));

    const auto f = ifs_circle_transform(CategoricalSeries({0, 0}, 2), 0.17, 0.10);
    CHECK_THAT(f.points[0].x, WithinAbs(0.1, 1e-15));
    CHECK_THAT(f.points[1].x, WithinAbs(0.117, 1e-15));
    CHECK_THAT(f.points[1].y, WithinAbs(0.0, 1e-15));

    const auto run = ifs_circle_transform(CategoricalSeries(std::vector<std::size_t>(60, 0), 3), 0.17, 0.10);
    const double limit = 0.10 / (1 - 0.17);
    for (const auto& q : run.points) CHECK(q.x < limit);
    CHECK_THAT(run.points.back().x, WithinAbs(limit, 1e-14));

    std::mt19937_64 rng(23);
    const CategoricalSeries s(oracle::random_codes(rng, 40, 5), 5);
    const Point2 origin{0.3, -0.2};
    const auto g = ifs_circle_transform(s, 0.5, 0.25, origin);
    Point2 prev = origin;
    for (std::size_t t = 0; t < 40; ++t) {
        const auto phi = circle_point(s[t], 5);
        CHECK(g.points[t].x == 0.5 * prev.x + 0.25 * phi.x);
        CHECK(g.points[t].y == 0.5 * prev.y + 0.25 * phi.y);
        prev = g.points[t];
    }
    CHECK_THROWS_AS(ifs_circle_transform(s, 1.0, 0.1), ValidationError);
    CHECK_THROWS_AS(ifs_circle_transform(s, 0.5, 0.0), ValidationError);
}

TEST_CASE("dependence plot data") {
    const auto per = dependence_plot_data(periodic(3, 200), TestFamily::cohens_kappa);
    CHECK(per.lags.size() == 10);
    CHECK_THAT(per.estimates[2], WithinAbs(1.0, 1e-12));
    CHECK(per.estimates[2] > per.critical_upper);
    const auto v = dependence_plot_data(periodic(3, 200), TestFamily::cramers_v, 4, 0.01);
    CHECK(v.lags == std::vector<std::size_t>{1, 2, 3, 4});
    CHECK_FALSE(v.critical_lower);
}

TEST_CASE("standardized statistic and geometric quantile") {
    CHECK(standardized_statistic(5.0, 5.0, 1.0, 15.0) == 0.0);
    CHECK(standardized_statistic(15.0, 5.0, 1.0, 15.0) == 1.0);
    CHECK(standardized_statistic(1.0, 5.0, 1.0, 15.0) == -1.0);
    CHECK_FALSE(standardized_alarm(1.0));
    CHECK(standardized_alarm(1.0 + 1e-12));
    CHECK(standardized_alarm(-1.5));

    for (double p : {0.05, 0.2, 0.5, 0.9}) {
        for (double q : {0.005, 0.3, 0.5, 0.995}) {
            const auto k = geometric_quantile(q, p);
            CHECK(1.0 - std::pow(1.0 - p, static_cast<double>(k)) >= q - 1e-12);
            if (k > 1) CHECK(1.0 - std::pow(1.0 - p, static_cast<double>(k - 1)) < q);
        }
    }
    CHECK(geometric_quantile(0.5, 0.5) == 1);
    CHECK_THROWS_AS(geometric_quantile(0.5, 1.0), ValidationError);
}

TEST_CASE("cycle-length chart") {
    std::mt19937_64 rng(41);
    const CategoricalSeries s(oracle::random_codes(rng, 400, 3), 3);
    const auto chart = cycle_length_chart(s, 1, 0.01);
    const auto h = cycle_lengths(s, 1);
    REQUIRE(chart.points.size() == h.cycles.size());
    const double p = marginal_probabilities(s)[1];
    for (std::size_t k = 0; k < chart.points.size(); ++k) {
        const auto& pt = chart.points[k];
        CHECK(pt.length == h.cycles[k].length);
        CHECK(pt.time == h.cycles[k].start + h.cycles[k].length);
        CHECK_THAT(pt.mean, WithinAbs(1 / p, 1e-12));
        CHECK(pt.lcl == static_cast<double>(geometric_quantile(0.005, p)));
        CHECK(pt.ucl == static_cast<double>(geometric_quantile(0.995, p)));
        CHECK(pt.alarm == standardized_alarm(pt.statistic));
        CHECK(pt.alarm == (static_cast<double>(pt.length) < pt.lcl || static_cast<double>(pt.length) > pt.ucl));
    }

    const auto all = combined_cycle_length_chart(s, 0.01);
    std::size_t total = 0;
    for (std::size_t j = 0; j < 3; ++j) total += cycle_lengths(s, j).cycles.size();
    CHECK(all.points.size() == total);
    for (std::size_t k = 1; k < all.points.size(); ++k) CHECK(all.points[k - 1].time <= all.points[k].time);

    CHECK_THROWS_AS(cycle_length_chart(CategoricalSeries({0, 1, 1}, 2), 0), ValidationError);
    CHECK_THROWS_AS(cycle_length_chart(s, 0, 0.01, std::vector<double>{0.5, 0.5}), ValidationError);
}

TEST_CASE("cycle-length chart alarm rate matches the exact geometric tail") {
    // Discreteness keeps the nominal rate at or below alpha; compare with the
    // exact probability of falling outside the integer limits.
    const std::vector<double> p{0.2, 0.3, 0.5};
    std::mt19937_64 rng(1234);
    std::discrete_distribution<std::size_t> d(p.begin(), p.end());
    std::vector<std::size_t> codes(200000);
    for (auto& c : codes) c = d(rng);
    const auto chart = cycle_length_chart(CategoricalSeries(codes, 3), 0, 0.05, p);
    const double lcl = chart.points[0].lcl, ucl = chart.points[0].ucl;
    const double exact = 1 - std::pow(0.8, lcl - 1) + std::pow(0.8, ucl);
    CHECK(exact <= 0.05);
    const double n = static_cast<double>(chart.points.size());
    const double rate = static_cast<double>(chart.alarm_count()) / n;
    CHECK(std::abs(rate - exact) < 4 * std::sqrt(exact * (1 - exact) / n));
}

TEST_CASE("EWMA marginal chart") {
    const std::vector<double> c(3, 1.0 / 3);
    const double lambda = 0.9;
    const auto chart = ewma_marginal_chart(CategoricalSeries(std::vector<std::size_t>(80, 1), 3), lambda, c, 3.0, false);
    bool alarmed = false;
    for (std::size_t t = 0; t < 80; ++t) {
        const double expected = 1 - std::pow(lambda, static_cast<double>(t + 1)) * (1 - c[1]);
        CHECK_THAT(chart.estimates(t, 1), WithinAbs(expected, 1e-12));
        if (t > 0) CHECK(chart.estimates(t, 1) > chart.estimates(t - 1, 1));
        double s = 0;
        for (std::size_t i = 0; i < 3; ++i) s += chart.estimates(t, i);
        CHECK_THAT(s, WithinAbs(1.0, 1e-12));
        const double tt = static_cast<double>(t + 1);
        const double var = (1.0 / 3) * (2.0 / 3) * (1 - lambda) * (1 - std::pow(lambda, 2 * tt)) / (1 + lambda);
        CHECK_THAT(chart.sigma(t, 0), WithinAbs(std::sqrt(var), 1e-14));
        CHECK_THAT(chart.statistics(t, 1), WithinAbs((chart.estimates(t, 1) - 1.0 / 3) / (3 * chart.sigma(t, 1)), 1e-12));
        alarmed = alarmed || chart.alarms[t];
    }
    CHECK(alarmed);
    CHECK_THAT(chart.sigma(79, 2), WithinAbs(std::sqrt((2.0 / 9) * 0.1 / 1.9), 1e-4));

    const auto mm = ewma_marginal_chart(CategoricalSeries(std::vector<std::size_t>(20, 0), 3), 0.5, c, 3.0, true);
    CHECK(mm.kind == ChartKind::ewma_minmax);
    for (std::size_t t = 0; t < 20; ++t) {
        CHECK(mm.minimum[t] == std::min({mm.statistics(t, 0), mm.statistics(t, 1), mm.statistics(t, 2)}));
        CHECK(mm.maximum[t] == std::max({mm.statistics(t, 0), mm.statistics(t, 1), mm.statistics(t, 2)}));
        CHECK(mm.alarms[t] == (mm.minimum[t] < -1 || mm.maximum[t] > 1));
    }

    const CategoricalSeries x({0, 1, 2, 0}, 3);
    CHECK_THROWS_AS(ewma_marginal_chart(x, 1.0, c, 3.0, false), ValidationError);
    CHECK_THROWS_AS(ewma_marginal_chart(x, 0.5, c, 0.0, false), ValidationError);
    CHECK_THROWS_AS(ewma_marginal_chart(x, 0.5, {0.5, 0.5}, 3.0, false), ValidationError);
    CHECK_THROWS_AS(ewma_marginal_chart(x, 0.5, {0.5, 0.6, -0.1}, 3.0, false), ValidationError);
}
