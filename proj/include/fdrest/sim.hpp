// Seedable Monte-Carlo harness for benchmarking null-proportion
// estimators over (pi0, alternative) grids. Per-replication RNG streams
// are derived from the master seed by a splitmix construction, so results
// are identical regardless of how replications are scheduled.

#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "fdrest/pi0.hpp"
#include "fdrest/pvalues.hpp"

namespace fdrest {

struct AlternativeSpec {
    enum class Kind { uniform_low, normal_shift };
    Kind kind = Kind::uniform_low;
    double max_bound = 0.01;  // uniform_low: p ~ U(0, max_bound)
    double mean = 2.0;        // normal_shift: z ~ N(mean, sd), two-sided p
    double sd = 1.0;

    static AlternativeSpec parse(const std::string& tag);
    std::string label() const;  // "uniform_low(0.01)", "normal_shift(2,1)"
};

struct TwoGroupSample {
    PValueSet pvalues;
    std::vector<bool> labels;  // true = null
    double true_pi0 = 1.0;
    std::uint64_t seed = 0;
};

// round(m pi0) null p-values uniform on (0, 1), the rest drawn from the
// alternative; deterministic for a fixed seed, nulls first.
TwoGroupSample generate_two_group(std::size_t m, double pi0,
                                  const AlternativeSpec& alt,
                                  std::uint64_t seed);

struct ComparisonRow {
    std::string estimator;
    double true_pi0 = 0.0;
    std::string alt;
    int replications = 0;
    double mean = 0.0;
    double mse = 0.0;
    int failures = 0;  // estimator errors, excluded from mean/mse
};

struct ComparisonTable {
    std::vector<ComparisonRow> rows;
};

// header: estimator,true_pi0,alt,R,mean,mse
void write_comparison_csv(const ComparisonTable& table, std::ostream& os);

std::string pi0_spec_label(const Pi0Spec& spec);

// For each (pi0, alternative) cell, R replications are generated with
// seeds derived from (master_seed, cell index, replication index) and
// every estimator is evaluated on the same samples. threads > 1 splits
// the work; the output is identical for any thread count.
ComparisonTable compare_pi0_estimators(std::size_t m,
                                       const std::vector<double>& pi0_grid,
                                       const std::vector<AlternativeSpec>& alts,
                                       const std::vector<Pi0Spec>& estimators,
                                       int replications,
                                       std::uint64_t master_seed,
                                       int threads = 1);

}  // namespace fdrest
