#include <doctest.h>

#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <stdexcept>

#include "fdrest/pvalues.hpp"
#include "fdrest/twogroup.hpp"
#include "oracles.hpp"

using namespace fdrest;

TEST_CASE("mixture density point values") {
    TwoGroupModel standard;  // pi0 = 1, null N(0,1)
    CHECK(mixture_density(0.0, standard) ==
          doctest::Approx(0.398942).epsilon(1e-6));

    TwoGroupModel mixed{0.8, 0.0, 1.0, 2.0, 1.0};
    CHECK(mixture_density(0.0, mixed) == doctest::Approx(0.329952).epsilon(1e-5));

    TwoGroupModel alt_only{0.0, 0.0, 1.0, 2.0, 1.0};
    CHECK(mixture_density(2.0, alt_only) ==
          doctest::Approx(0.398942).epsilon(1e-6));
}

TEST_CASE("mixture density integrates to 1") {
    std::mt19937_64 gen(11);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    for (int trial = 0; trial < 20; ++trial) {
        TwoGroupModel model;
        model.pi0 = unif(gen);
        model.null_mean = unif(gen) * 2.0 - 1.0;
        model.null_sd = 0.5 + unif(gen);
        model.alt_mean = unif(gen) * 6.0 - 3.0;
        model.alt_sd = 0.5 + unif(gen);
        const double total = oracles::simpson(
            [&](double z) { return mixture_density(z, model); }, -12.0, 12.0, 4000);
        CHECK(std::fabs(total - 1.0) < 1e-6);
    }
}

TEST_CASE("mixture density validates the model") {
    TwoGroupModel bad;
    bad.null_sd = 0.0;
    CHECK_THROWS_AS(mixture_density(0.0, bad), std::invalid_argument);
    bad = TwoGroupModel{};
    bad.pi0 = 1.4;
    CHECK_THROWS_AS(mixture_density(0.0, bad), std::invalid_argument);
}

TEST_CASE("empirical mixture CDF is rank over m") {
    const auto p = PValueSet::from_values({0.005, 0.049, 0.050, 0.051, 0.700});
    const auto cdf = empirical_mixture_cdf(p, rank_with_ties(p, TiePolicy::first));
    CHECK(cdf == std::vector<double>{0.2, 0.4, 0.6, 0.8, 1.0});

    const auto one = PValueSet::from_values({0.42});
    CHECK(empirical_mixture_cdf(one, rank_with_ties(one, TiePolicy::first)) ==
          std::vector<double>{1.0});
}

TEST_CASE("empirical mixture CDF equals a direct-count estimate on tie-free data") {
    std::mt19937_64 gen(5150);
    const auto values = oracles::random_pvector(gen, 64, false);
    const auto p = PValueSet::from_values(values);
    const auto cdf = empirical_mixture_cdf(p, rank_with_ties(p, TiePolicy::first));
    for (std::size_t i = 0; i < values.size(); ++i) {
        std::size_t count = 0;
        for (double v : values) {
            if (v <= values[i]) ++count;
        }
        CHECK(cdf[i] ==
              doctest::Approx(static_cast<double>(count) / values.size())
                  .epsilon(1e-12));
    }
}

TEST_CASE("empirical mixture CDF is permutation-equivariant") {
    std::mt19937_64 gen(31);
    const auto values = oracles::random_pvector(gen, 25, false);
    const auto p = PValueSet::from_values(values);
    const auto base = empirical_mixture_cdf(p, rank_with_ties(p, TiePolicy::first));

    std::vector<std::size_t> perm(values.size());
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    std::shuffle(perm.begin(), perm.end(), gen);
    std::vector<double> shuffled(values.size());
    for (std::size_t i = 0; i < perm.size(); ++i) shuffled[i] = values[perm[i]];
    const auto ps = PValueSet::from_values(shuffled);
    const auto moved = empirical_mixture_cdf(ps, rank_with_ties(ps, TiePolicy::first));
    for (std::size_t i = 0; i < perm.size(); ++i) {
        CHECK(moved[i] == base[perm[i]]);
    }
}

TEST_CASE("lower bound reproduces the example benchmark column") {
    // (p, printed lower bound) for the five-feature example, two-sided z
    const struct { double p, bound; } rows[] = {
        {0.005, 0.019}, {0.049, 0.126}, {0.050, 0.128},
        {0.051, 0.130}, {0.700, 0.481},
    };
    for (const auto& row : rows) {
        const double z = p_to_z(row.p, Sidedness::two_sided);
        CHECK(std::fabs(lower_bound_fdr(z) - row.bound) < 5e-4);
    }
    CHECK(std::fabs(lower_bound_fdr(1.951) - 0.130) < 5e-4);
    CHECK(std::fabs(lower_bound_fdr(2.807) - 0.019) < 5e-4);
}

TEST_CASE("lower bound shape properties") {
    CHECK(lower_bound_fdr(0.0) == 0.5);

    double prev = 0.5;
    for (int k = 1; k <= 1000; ++k) {
        const double z = 0.035 * k;  // stays below the exp overflow cutoff
        const double b = lower_bound_fdr(z);
        CHECK(b < prev);
        CHECK(b > 0.0);
        CHECK(lower_bound_fdr(-z) == b);  // symmetric in z
        prev = b;
    }

    CHECK(lower_bound_fdr(60.0) == 0.0);  // exp(z^2/2) would overflow
    CHECK(lower_bound_fdr(0.0, {4.0}) == doctest::Approx(0.2).epsilon(1e-12));
}

TEST_CASE("lower bound input validation") {
    CHECK_THROWS_AS(lower_bound_fdr(std::numeric_limits<double>::infinity()),
                    std::invalid_argument);
    CHECK_THROWS_AS(lower_bound_fdr(1.0, {0.0}), std::invalid_argument);
    CHECK_THROWS_AS(lower_bound_fdr(1.0, {-1.0}), std::invalid_argument);
}
