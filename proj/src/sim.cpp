#include "fdrest/sim.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "fdrest/table.hpp"

namespace fdrest {

namespace {

std::uint64_t splitmix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t cell,
                          std::uint64_t rep) {
    return splitmix64(splitmix64(splitmix64(master) ^ cell) ^ rep);
}

// Deterministic draws independent of the standard library's distribution
// implementations: the engine is fully specified, and the mappings below
// are explicit arithmetic.
class SampleRng {
public:
    explicit SampleRng(std::uint64_t seed) : eng_(seed) {}

    // strictly inside (0, 1)
    double uniform01() {
        const std::uint64_t bits = eng_() >> 11;  // 53 bits
        return (static_cast<double>(bits) + 0.5) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) { return lo + uniform01() * (hi - lo); }

    double normal(double mean, double sd) {
        const double u1 = uniform01();
        const double u2 = uniform01();
        return mean + sd * std::sqrt(-2.0 * std::log(u1)) *
                          std::cos(2.0 * M_PI * u2);
    }

private:
    std::mt19937_64 eng_;
};

}  // namespace

AlternativeSpec AlternativeSpec::parse(const std::string& tag) {
    AlternativeSpec spec;
    const auto open = tag.find('(');
    const std::string name = open == std::string::npos ? tag : tag.substr(0, open);
    std::string args;
    if (open != std::string::npos) {
        const auto close = tag.rfind(')');
        if (close == std::string::npos || close < open) {
            throw std::invalid_argument("malformed alternative spec: " + tag);
        }
        args = tag.substr(open + 1, close - open - 1);
    }
    if (name == "uniform_low") {
        spec.kind = Kind::uniform_low;
        if (!args.empty()) spec.max_bound = std::stod(args);
        if (!(spec.max_bound > 0.0 && spec.max_bound <= 1.0)) {
            throw std::invalid_argument("uniform_low bound must lie in (0, 1]");
        }
    } else if (name == "normal_shift") {
        spec.kind = Kind::normal_shift;
        if (!args.empty()) {
            const auto comma = args.find(',');
            spec.mean = std::stod(args.substr(0, comma));
            if (comma != std::string::npos) spec.sd = std::stod(args.substr(comma + 1));
        }
        if (!(spec.sd > 0.0)) {
            throw std::invalid_argument("normal_shift sd must be positive");
        }
    } else {
        throw std::invalid_argument("unknown alternative kind: " + name);
    }
    return spec;
}

std::string AlternativeSpec::label() const {
    std::ostringstream os;
    if (kind == Kind::uniform_low) {
        os << "uniform_low(" << max_bound << ")";
    } else {
        os << "normal_shift(" << mean << "," << sd << ")";
    }
    return os.str();
}

TwoGroupSample generate_two_group(std::size_t m, double pi0,
                                  const AlternativeSpec& alt,
                                  std::uint64_t seed) {
    if (m < 1) throw std::invalid_argument("generate_two_group: m must be positive");
    if (!(pi0 >= 0.0 && pi0 <= 1.0)) {
        throw std::invalid_argument("generate_two_group: pi0 must lie in [0, 1]");
    }

    const auto n_null = static_cast<std::size_t>(
        std::llround(static_cast<double>(m) * pi0));

    SampleRng rng(seed);
    std::vector<double> p(m);
    std::vector<bool> labels(m);
    for (std::size_t i = 0; i < m; ++i) {
        if (i < n_null) {
            labels[i] = true;
            p[i] = rng.uniform01();
        } else {
            labels[i] = false;
            if (alt.kind == AlternativeSpec::Kind::uniform_low) {
                p[i] = rng.uniform01() * alt.max_bound;
            } else {
                const double z = rng.normal(alt.mean, alt.sd);
                p[i] = std::erfc(std::fabs(z) / 1.4142135623730951);  // two-sided
            }
        }
    }

    TwoGroupSample sample;
    sample.pvalues = PValueSet::from_values(std::move(p));
    sample.labels = std::move(labels);
    sample.true_pi0 = pi0;
    sample.seed = seed;
    return sample;
}

std::string pi0_spec_label(const Pi0Spec& spec) {
    switch (spec.mode) {
        case Pi0Mode::set_value: {
            std::ostringstream os;
            os << "set(" << spec.set_value << ")";
            return os.str();
        }
        case Pi0Mode::last_hist: return "last_hist";
        case Pi0Mode::storey: return "storey";
    }
    return "?";
}

void write_comparison_csv(const ComparisonTable& table, std::ostream& os) {
    os << "estimator,true_pi0,alt,R,mean,mse\n";
    for (const auto& row : table.rows) {
        os << csv_field(row.estimator) << ',' << format_full(row.true_pi0) << ','
           << csv_field(row.alt) << ',' << row.replications << ','
           << format_full(row.mean) << ',' << format_full(row.mse) << '\n';
    }
}

ComparisonTable compare_pi0_estimators(std::size_t m,
                                       const std::vector<double>& pi0_grid,
                                       const std::vector<AlternativeSpec>& alts,
                                       const std::vector<Pi0Spec>& estimators,
                                       int replications,
                                       std::uint64_t master_seed,
                                       int threads) {
    if (replications < 1) throw std::invalid_argument("replications must be >= 1");
    if (pi0_grid.empty() || alts.empty() || estimators.empty()) {
        throw std::invalid_argument("pi0 grid, alternatives and estimators must be non-empty");
    }

    const std::size_t n_cells = pi0_grid.size() * alts.size();
    const std::size_t n_est = estimators.size();
    const auto R = static_cast<std::size_t>(replications);
    constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

    // estimates[cell * R + rep][e]; slots are pre-indexed so any scheduling
    // of the jobs produces the same table
    std::vector<std::vector<double>> estimates(n_cells * R,
                                               std::vector<double>(n_est, kNaN));

    const auto run_job = [&](std::size_t job) {
        const std::size_t cell = job / R;
        const std::size_t rep = job % R;
        const double pi0 = pi0_grid[cell / alts.size()];
        const AlternativeSpec& alt = alts[cell % alts.size()];
        const auto sample =
            generate_two_group(m, pi0, alt, derive_seed(master_seed, cell, rep));
        for (std::size_t e = 0; e < n_est; ++e) {
            try {
                estimates[job][e] = get_pi0(sample.pvalues, estimators[e]).value;
            } catch (const std::exception&) {
                // leave NaN; counted as a failure during aggregation
            }
        }
    };

    const std::size_t n_jobs = n_cells * R;
    if (threads <= 1) {
        for (std::size_t job = 0; job < n_jobs; ++job) run_job(job);
    } else {
        std::vector<std::thread> pool;
        const auto t = static_cast<std::size_t>(threads);
        for (std::size_t w = 0; w < t; ++w) {
            pool.emplace_back([&, w] {
                for (std::size_t job = w; job < n_jobs; job += t) run_job(job);
            });
        }
        for (auto& th : pool) th.join();
    }

    // fixed aggregation order: estimator-major, then pi0, then alternative
    ComparisonTable table;
    for (std::size_t e = 0; e < n_est; ++e) {
        for (std::size_t pi = 0; pi < pi0_grid.size(); ++pi) {
            for (std::size_t ai = 0; ai < alts.size(); ++ai) {
                const std::size_t cell = pi * alts.size() + ai;
                ComparisonRow row;
                row.estimator = pi0_spec_label(estimators[e]);
                row.true_pi0 = pi0_grid[pi];
                row.alt = alts[ai].label();
                row.replications = replications;
                double sum = 0.0, sq = 0.0;
                std::size_t ok = 0;
                for (std::size_t rep = 0; rep < R; ++rep) {
                    const double v = estimates[cell * R + rep][e];
                    if (std::isnan(v)) continue;
                    sum += v;
                    const double d = v - pi0_grid[pi];
                    sq += d * d;
                    ++ok;
                }
                row.failures = static_cast<int>(R - ok);
                row.mean = ok ? sum / static_cast<double>(ok) : kNaN;
                row.mse = ok ? sq / static_cast<double>(ok) : kNaN;
                table.rows.push_back(std::move(row));
            }
        }
    }
    return table;
}

}  // namespace fdrest
