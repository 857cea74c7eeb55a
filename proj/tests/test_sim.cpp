#include <doctest.h>

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "fdrest/sim.hpp"

using namespace fdrest;

namespace {

Pi0Spec last_hist_spec() {
    Pi0Spec s;
    s.mode = Pi0Mode::last_hist;
    return s;
}

Pi0Spec storey_spec() {
    Pi0Spec s;
    s.mode = Pi0Mode::storey;
    return s;
}

const ComparisonRow& find_row(const ComparisonTable& table,
                              const std::string& estimator, double pi0) {
    for (const auto& row : table.rows) {
        if (row.estimator == estimator && row.true_pi0 == pi0) return row;
    }
    throw std::runtime_error("row not found");
}

}  // namespace

TEST_CASE("alternative spec parsing") {
    auto u = AlternativeSpec::parse("uniform_low(0.01)");
    CHECK(u.kind == AlternativeSpec::Kind::uniform_low);
    CHECK(u.max_bound == 0.01);
    CHECK(u.label() == "uniform_low(0.01)");

    auto n = AlternativeSpec::parse("normal_shift(2,1)");
    CHECK(n.kind == AlternativeSpec::Kind::normal_shift);
    CHECK(n.mean == 2.0);
    CHECK(n.sd == 1.0);

    CHECK(AlternativeSpec::parse("uniform_low").max_bound == 0.01);
    CHECK_THROWS_AS(AlternativeSpec::parse("uniform_low(0)"), std::invalid_argument);
    CHECK_THROWS_AS(AlternativeSpec::parse("cauchy(1)"), std::invalid_argument);
    CHECK_THROWS_AS(AlternativeSpec::parse("normal_shift(2,0)"), std::invalid_argument);
}

TEST_CASE("generated samples honor the label bookkeeping exactly") {
    const AlternativeSpec alt;
    for (double pi0 : {0.0, 0.25, 0.5, 0.8, 0.97, 1.0}) {
        const auto sample = generate_two_group(100, pi0, alt, 1);
        std::size_t nulls = 0;
        for (bool b : sample.labels) nulls += b ? 1 : 0;
        CHECK(nulls == static_cast<std::size_t>(std::llround(100 * pi0)));
        CHECK(sample.labels.size() == 100);
        CHECK(sample.pvalues.m() == 100);
    }
    // rounding of m * pi0 at a non-integer split
    const auto odd = generate_two_group(7, 0.5, alt, 3);
    std::size_t nulls = 0;
    for (bool b : odd.labels) nulls += b ? 1 : 0;
    CHECK(nulls == 4);  // round(3.5) away from zero
}

TEST_CASE("boundary pi0 = 1 gives uniform nulls strictly inside (0,1)") {
    const auto sample = generate_two_group(100, 1.0, AlternativeSpec{}, 42);
    for (std::size_t i = 0; i < sample.pvalues.size(); ++i) {
        CHECK(sample.labels[i]);
        CHECK(sample.pvalues.value(i) > 0.0);
        CHECK(sample.pvalues.value(i) < 1.0);
    }
}

TEST_CASE("uniform_low alternatives stay below the bound") {
    AlternativeSpec alt;
    alt.max_bound = 0.01;
    const auto sample = generate_two_group(100, 0.8, alt, 9001);
    std::size_t nulls = 0, small = 0;
    for (std::size_t i = 0; i < sample.pvalues.size(); ++i) {
        if (sample.labels[i]) {
            ++nulls;
        } else {
            CHECK(sample.pvalues.value(i) < 0.01);
            CHECK(sample.pvalues.value(i) > 0.0);
            ++small;
        }
    }
    CHECK(nulls == 80);
    CHECK(small == 20);
}

TEST_CASE("normal_shift alternatives produce valid two-sided p-values") {
    AlternativeSpec alt;
    alt.kind = AlternativeSpec::Kind::normal_shift;
    alt.mean = 2.0;
    alt.sd = 1.0;
    const auto sample = generate_two_group(200, 0.5, alt, 7);
    double alt_sum = 0.0;
    std::size_t alt_count = 0;
    for (std::size_t i = 0; i < sample.pvalues.size(); ++i) {
        const double v = sample.pvalues.value(i);
        CHECK(v > 0.0);
        CHECK(v <= 1.0);
        if (!sample.labels[i]) {
            alt_sum += v;
            ++alt_count;
        }
    }
    CHECK(alt_count == 100);
    CHECK(alt_sum / alt_count < 0.25);  // shifted alternatives skew small
}

TEST_CASE("same seed reproduces the sample, different seeds move it") {
    const AlternativeSpec alt;
    const auto a = generate_two_group(50, 0.8, alt, 123);
    const auto b = generate_two_group(50, 0.8, alt, 123);
    const auto c = generate_two_group(50, 0.8, alt, 124);
    CHECK(a.pvalues.values() == b.pvalues.values());
    CHECK(a.pvalues.values() != c.pvalues.values());
    CHECK(a.seed == 123);
}

TEST_CASE("generate_two_group validation") {
    CHECK_THROWS_AS(generate_two_group(0, 0.5, AlternativeSpec{}, 1),
                    std::invalid_argument);
    CHECK_THROWS_AS(generate_two_group(10, 1.5, AlternativeSpec{}, 1),
                    std::invalid_argument);
}

TEST_CASE("comparison table is deterministic across runs and thread counts") {
    const std::vector<double> pi0_grid{0.5, 1.0};
    const std::vector<AlternativeSpec> alts{AlternativeSpec{}};
    const std::vector<Pi0Spec> estimators{last_hist_spec(), storey_spec()};

    const auto t1 = compare_pi0_estimators(60, pi0_grid, alts, estimators, 8,
                                           2025, /*threads=*/1);
    const auto t1b = compare_pi0_estimators(60, pi0_grid, alts, estimators, 8,
                                            2025, /*threads=*/1);
    const auto t4 = compare_pi0_estimators(60, pi0_grid, alts, estimators, 8,
                                           2025, /*threads=*/4);

    const auto render = [](const ComparisonTable& t) {
        std::ostringstream os;
        write_comparison_csv(t, os);
        return os.str();
    };
    CHECK(render(t1) == render(t1b));
    CHECK(render(t1) == render(t4));
    CHECK(t1.rows.size() == 4);
    for (const auto& row : t1.rows) {
        CHECK(row.replications == 8);
        CHECK(row.failures == 0);
        CHECK(row.mean >= 0.0);
        CHECK(row.mean <= 1.0);
        CHECK(row.mse >= 0.0);
    }
}

TEST_CASE("comparison mean bands at the grid edges") {
    const std::vector<AlternativeSpec> alts{AlternativeSpec::parse("uniform_low(0.001)")};

    // all-null cell: last_hist mean lands in the reference band
    auto table = compare_pi0_estimators(100, {1.0}, {AlternativeSpec{}},
                                        {last_hist_spec()}, 200, 88888, 2);
    const auto& null_row = find_row(table, "last_hist", 1.0);
    CHECK(null_row.mean > 0.85);
    CHECK(null_row.mean <= 1.0);

    // all-alternative cell: every p-value is tiny, storey collapses to ~0
    table = compare_pi0_estimators(100, {0.0}, alts, {storey_spec()}, 200,
                                   88888, 2);
    const auto& alt_row = find_row(table, "storey", 0.0);
    CHECK(alt_row.mean >= 0.0);
    CHECK(alt_row.mean <= 0.15);
}

TEST_CASE("estimator means approach 1 as the sample grows (all-null data)") {
    const std::vector<AlternativeSpec> alts{AlternativeSpec{}};
    const std::vector<Pi0Spec> estimators{last_hist_spec(), storey_spec()};
    double prev_lh = 0.0, prev_st = 0.0;
    const struct { std::size_t m; int R; } steps[] = {{100, 50}, {400, 200}, {1600, 400}};
    for (const auto& step : steps) {
        const auto table = compare_pi0_estimators(step.m, {1.0}, alts, estimators,
                                                  step.R, 424242, 4);
        const double lh = find_row(table, "last_hist", 1.0).mean;
        const double st = find_row(table, "storey", 1.0).mean;
        CHECK(lh >= prev_lh);
        CHECK(st >= prev_st);
        prev_lh = lh;
        prev_st = st;
    }
    CHECK(prev_lh > 0.95);
    CHECK(prev_st > 0.95);
}

TEST_CASE("estimator failures are counted per cell, not fatal") {
    // fixed 200 bins on m = 100 samples: last_hist requires B < m and fails
    Pi0Spec bad = last_hist_spec();
    bad.hist_breaks = 200;
    const auto table = compare_pi0_estimators(100, {1.0}, {AlternativeSpec{}},
                                              {bad, last_hist_spec()}, 5, 3, 1);
    CHECK(table.rows.size() == 2);
    CHECK(table.rows[0].failures == 5);
    CHECK(std::isnan(table.rows[0].mean));
    CHECK(table.rows[1].failures == 0);
    CHECK(table.rows[1].mean > 0.0);
}

TEST_CASE("comparison csv layout") {
    const auto table = compare_pi0_estimators(50, {0.8}, {AlternativeSpec{}},
                                              {last_hist_spec()}, 2, 11, 1);
    std::ostringstream os;
    write_comparison_csv(table, os);
    const std::string text = os.str();
    CHECK(text.rfind("estimator,true_pi0,alt,R,mean,mse\n", 0) == 0);
    CHECK(text.find("last_hist,") != std::string::npos);
    CHECK(text.find("uniform_low(0.01)") != std::string::npos);
}

TEST_CASE("alt labels with commas are quoted in the csv") {
    const auto alt = AlternativeSpec::parse("normal_shift(2,1)");
    const auto table = compare_pi0_estimators(50, {0.8}, {alt},
                                              {last_hist_spec()}, 2, 11, 1);
    std::ostringstream os;
    write_comparison_csv(table, os);
    CHECK(os.str().find("\"normal_shift(2,1)\"") != std::string::npos);
    // every data line keeps exactly 5 unquoted commas
    std::istringstream lines(os.str());
    std::string line;
    std::getline(lines, line);  // header
    while (std::getline(lines, line)) {
        int commas = 0;
        bool quoted = false;
        for (char c : line) {
            if (c == '"') quoted = !quoted;
            if (c == ',' && !quoted) ++commas;
        }
        CHECK(commas == 5);
    }
}

TEST_CASE("compare_pi0_estimators validation") {
    CHECK_THROWS_AS(compare_pi0_estimators(10, {}, {AlternativeSpec{}},
                                           {last_hist_spec()}, 1, 1, 1),
                    std::invalid_argument);
    CHECK_THROWS_AS(compare_pi0_estimators(10, {0.5}, {AlternativeSpec{}},
                                           {last_hist_spec()}, 0, 1, 1),
                    std::invalid_argument);
}
