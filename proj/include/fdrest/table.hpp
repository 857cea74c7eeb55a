// CSV ingestion and results emission.
//
// Input CSV: header row, required column `p`, optional `id` and `z`;
// `NA` or an empty cell marks a missing value. Output CSV columns:
// id,raw_p,z,adjusted_p,fdr,lower_bound,reject with `#` footer lines
// carrying method, pi0, threshold and m. Machine mode serializes doubles
// with 17 significant digits so a re-parse reproduces them exactly;
// display mode rounds to 3 decimals.

#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "fdrest/adjust.hpp"
#include "fdrest/pvalues.hpp"

namespace fdrest {

// malformed input (non-numeric fields, p outside [0,1], missing column)
class input_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// no usable rows after NA removal
class empty_input_error : public input_error {
public:
    using input_error::input_error;
};

struct InputTable {
    std::vector<std::string> ids;
    std::vector<double> pvalues;  // NaN marks missing
    std::vector<double> zvalues;  // NaN where absent
    bool has_ids = false;
    bool has_z = false;
};

InputTable read_input_csv(std::istream& is);
InputTable read_input_csv_file(const std::string& path);

struct ResultsRow {
    std::string id;
    double raw_p = 0.0;
    double z = 0.0;
    double adjusted_p = 0.0;
    double fdr = 0.0;
    double lower_bound = 0.0;
    bool reject = false;
    bool missing = false;  // NA row retained under na-rm=false
};

struct ResultsTable {
    std::vector<ResultsRow> rows;
    std::string method;
    double pi0 = 1.0;
    double threshold = 0.05;
    std::size_t m = 0;
};

// Assembles the CLI results view of an FdrResult: two-sided (or as
// requested) z-values, the univariate lower bound, and reject flags.
// z_override, when non-null, supplies user-provided z-values aligned with
// the rows. p = 0 rows get z = NaN and lower bound 0.
ResultsTable build_results(const FdrResult& result, Sidedness sidedness,
                           double default_odds,
                           const std::vector<double>* z_override = nullptr);

void write_results_csv(const ResultsTable& table, std::ostream& os);
ResultsTable read_results_csv(std::istream& is);
void write_results_json(const ResultsTable& table, std::ostream& os);
void write_results_display(const ResultsTable& table, std::ostream& os);

// fixed-point formatting with decimal round-half-even, e.g.
// format_fixed(0.1225, 3) == "0.122"
std::string format_fixed(double x, int digits);

// 17 significant digits; "NA" for NaN
std::string format_full(double x);

// quotes a field when it contains commas, quotes or newlines
std::string csv_field(const std::string& s);

}  // namespace fdrest
