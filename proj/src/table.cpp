#include "fdrest/table.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <limits>
#include <ostream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "fdrest/twogroup.hpp"

namespace fdrest {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    field += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                field += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            fields.push_back(field);
            field.clear();
        } else {
            field += c;
        }
    }
    fields.push_back(field);
    return fields;
}

bool is_na(const std::string& s) {
    return s.empty() || s == "NA" || s == "na" || s == "NaN" || s == "nan";
}

double parse_double(const std::string& s, const char* what) {
    if (is_na(s)) return kNaN;
    try {
        std::size_t pos = 0;
        const double v = std::stod(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw input_error(std::string("non-numeric ") + what + " value: '" + s + "'");
    }
}

bool parse_bool(const std::string& s) {
    if (s == "true" || s == "TRUE" || s == "1") return true;
    if (s == "false" || s == "FALSE" || s == "0") return false;
    throw input_error("invalid boolean value: '" + s + "'");
}

}  // namespace

std::string format_full(double x) {
    if (std::isnan(x)) return "NA";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string quoted = "\"";
    for (char c : s) {
        if (c == '"') quoted += '"';
        quoted += c;
    }
    quoted += '"';
    return quoted;
}

std::string format_fixed(double x, int digits) {
    if (std::isnan(x)) return "NA";

    // Print with four guard digits, then round the decimal string half to
    // even; representation error below the guard digits cannot flip a tie.
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits + 4, x);
    std::string s = buf;

    const bool negative = s[0] == '-';
    if (negative) s.erase(0, 1);

    const auto dot = s.find('.');
    std::string whole = s.substr(0, dot);
    std::string frac = s.substr(dot + 1);

    const std::string tail = frac.substr(static_cast<std::size_t>(digits));
    frac.resize(static_cast<std::size_t>(digits));

    // digits as a single string to make carries easy
    std::string num = whole + frac;
    bool round_up;
    if (tail > "5000") {
        round_up = true;
    } else if (tail < "5000") {
        round_up = false;
    } else {  // exact tie: round to even
        round_up = ((num.back() - '0') % 2) != 0;
    }
    if (round_up) {
        int i = static_cast<int>(num.size()) - 1;
        while (i >= 0 && num[static_cast<std::size_t>(i)] == '9') {
            num[static_cast<std::size_t>(i)] = '0';
            --i;
        }
        if (i < 0) {
            num.insert(num.begin(), '1');
        } else {
            ++num[static_cast<std::size_t>(i)];
        }
    }

    const std::size_t frac_len = static_cast<std::size_t>(digits);
    std::string out = num.substr(0, num.size() - frac_len);
    if (digits > 0) out += "." + num.substr(num.size() - frac_len);
    if (negative && out.find_first_not_of("0.") != std::string::npos) {
        out.insert(out.begin(), '-');
    }
    return out;
}

InputTable read_input_csv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line)) throw input_error("empty input file");
    if (!line.empty() && static_cast<unsigned char>(line[0]) == 0xEF &&
        line.size() >= 3) {
        line.erase(0, 3);  // strip UTF-8 BOM
    }

    const auto header = split_csv_line(trim(line));
    int p_col = -1, id_col = -1, z_col = -1;
    for (std::size_t i = 0; i < header.size(); ++i) {
        const std::string h = trim(header[i]);
        if (h == "p" || h == "pvalue" || h == "p_value") p_col = static_cast<int>(i);
        else if (h == "id") id_col = static_cast<int>(i);
        else if (h == "z") z_col = static_cast<int>(i);
    }
    if (p_col < 0) throw input_error("input CSV must contain a column named 'p'");

    InputTable table;
    table.has_ids = id_col >= 0;
    table.has_z = z_col >= 0;

    std::size_t row_no = 1;
    while (std::getline(is, line)) {
        ++row_no;
        const std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        const auto fields = split_csv_line(t);
        if (fields.size() < header.size()) {
            throw input_error("row " + std::to_string(row_no) + ": expected " +
                              std::to_string(header.size()) + " fields");
        }
        const double p = parse_double(trim(fields[static_cast<std::size_t>(p_col)]), "p");
        if (!std::isnan(p) && (p < 0.0 || p > 1.0)) {
            throw input_error("row " + std::to_string(row_no) +
                              ": p-value outside [0, 1]");
        }
        table.pvalues.push_back(p);
        table.ids.push_back(id_col >= 0 ? trim(fields[static_cast<std::size_t>(id_col)])
                                        : "feature_" + std::to_string(row_no - 1));
        table.zvalues.push_back(
            z_col >= 0 ? parse_double(trim(fields[static_cast<std::size_t>(z_col)]), "z")
                       : kNaN);
    }
    if (table.pvalues.empty()) {
        throw empty_input_error("input contains no data rows");
    }
    return table;
}

InputTable read_input_csv_file(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw input_error("cannot open input file: " + path);
    return read_input_csv(is);
}

ResultsTable build_results(const FdrResult& result, Sidedness sidedness,
                           double default_odds,
                           const std::vector<double>* z_override) {
    const PValueSet& p = result.raw;
    const bool just_fdr = result.output.adjusted_pvalues.empty();

    ResultsTable table;
    table.method = method_label(result.method);
    table.pi0 = result.pi0;
    table.threshold = result.threshold;
    table.m = p.m();
    table.rows.resize(p.size());

    const LowerBoundConfig lb{default_odds};
    for (std::size_t i = 0; i < p.size(); ++i) {
        ResultsRow& row = table.rows[i];
        row.id = p.has_ids() ? p.ids()[i] : "feature_" + std::to_string(i + 1);
        if (p.is_missing(i)) {
            row.missing = true;
            row.raw_p = row.z = row.adjusted_p = row.fdr = row.lower_bound = kNaN;
            continue;
        }
        row.raw_p = p.value(i);
        if (z_override && !std::isnan((*z_override)[i])) {
            row.z = (*z_override)[i];
        } else if (row.raw_p == 0.0) {
            row.z = kNaN;  // no finite z; the lower bound limit is 0
        } else {
            row.z = p_to_z(row.raw_p, sidedness);
        }
        row.lower_bound = std::isnan(row.z) ? 0.0 : lower_bound_fdr(row.z, lb);
        row.fdr = result.output.fdrs[i];
        if (!just_fdr) {
            row.adjusted_p = result.output.adjusted_pvalues[i];
            row.reject = result.reject[i];
        } else {
            row.adjusted_p = kNaN;
            row.reject = false;
        }
    }
    return table;
}

void write_results_csv(const ResultsTable& table, std::ostream& os) {
    os << "id,raw_p,z,adjusted_p,fdr,lower_bound,reject\n";
    for (const auto& row : table.rows) {
        os << csv_field(row.id) << ',';
        if (row.missing) {
            os << "NA,NA,NA,NA,NA,NA\n";
            continue;
        }
        os << format_full(row.raw_p) << ',' << format_full(row.z) << ','
           << format_full(row.adjusted_p) << ',' << format_full(row.fdr) << ','
           << format_full(row.lower_bound) << ',';
        if (std::isnan(row.adjusted_p)) {
            os << "NA\n";  // just-fdr mode carries no decision
        } else {
            os << (row.reject ? "true" : "false") << '\n';
        }
    }
    os << "# method: " << table.method << '\n';
    os << "# pi0: " << format_full(table.pi0) << '\n';
    os << "# threshold: " << format_full(table.threshold) << '\n';
    os << "# m: " << table.m << '\n';
}

ResultsTable read_results_csv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line)) throw input_error("empty results file");
    const auto header = split_csv_line(trim(line));
    const std::vector<std::string> expected = {
        "id", "raw_p", "z", "adjusted_p", "fdr", "lower_bound", "reject"};
    if (header.size() != expected.size() ||
        !std::equal(header.begin(), header.end(), expected.begin(),
                    [](const std::string& a, const std::string& b) {
                        return trim(a) == b;
                    })) {
        throw input_error("unexpected results CSV header");
    }

    ResultsTable table;
    while (std::getline(is, line)) {
        const std::string t = trim(line);
        if (t.empty()) continue;
        if (t[0] == '#') {
            const auto colon = t.find(':');
            if (colon == std::string::npos) continue;
            const std::string key = trim(t.substr(1, colon - 1));
            const std::string value = trim(t.substr(colon + 1));
            if (key == "method") table.method = value;
            else if (key == "pi0") table.pi0 = parse_double(value, "pi0");
            else if (key == "threshold") table.threshold = parse_double(value, "threshold");
            else if (key == "m") table.m = static_cast<std::size_t>(std::stoull(value));
            continue;
        }
        const auto fields = split_csv_line(t);
        if (fields.size() != expected.size()) {
            throw input_error("results row with wrong field count");
        }
        ResultsRow row;
        row.id = trim(fields[0]);
        row.raw_p = parse_double(trim(fields[1]), "raw_p");
        row.z = parse_double(trim(fields[2]), "z");
        row.adjusted_p = parse_double(trim(fields[3]), "adjusted_p");
        row.fdr = parse_double(trim(fields[4]), "fdr");
        row.lower_bound = parse_double(trim(fields[5]), "lower_bound");
        const std::string rej = trim(fields[6]);
        row.missing = std::isnan(row.raw_p);
        row.reject = row.missing || is_na(rej) ? false : parse_bool(rej);
        table.rows.push_back(std::move(row));
    }
    return table;
}

void write_results_json(const ResultsTable& table, std::ostream& os) {
    nlohmann::json j;
    j["method"] = table.method;
    j["pi0"] = table.pi0;
    j["threshold"] = table.threshold;
    j["m"] = table.m;
    auto& rows = j["rows"];
    rows = nlohmann::json::array();
    for (const auto& row : table.rows) {
        nlohmann::json r;
        r["id"] = row.id;
        if (row.missing) {
            r["raw_p"] = nullptr;
        } else {
            r["raw_p"] = row.raw_p;
            if (!std::isnan(row.z)) r["z"] = row.z;
            if (!std::isnan(row.adjusted_p)) r["adjusted_p"] = row.adjusted_p;
            r["fdr"] = row.fdr;
            r["lower_bound"] = row.lower_bound;
            r["reject"] = row.reject;
        }
        rows.push_back(std::move(r));
    }
    os << j.dump(2) << '\n';
}

void write_results_display(const ResultsTable& table, std::ostream& os) {
    os << std::left << std::setw(14) << "id" << std::right << std::setw(10)
       << "raw_p" << std::setw(10) << "z" << std::setw(12) << "adjusted_p"
       << std::setw(10) << "fdr" << std::setw(13) << "lower_bound"
       << std::setw(8) << "reject" << '\n';
    const auto cell = [](double v) { return format_fixed(v, 3); };
    for (const auto& row : table.rows) {
        os << std::left << std::setw(14) << row.id << std::right << std::setw(10)
           << cell(row.raw_p) << std::setw(10) << cell(row.z) << std::setw(12)
           << cell(row.adjusted_p) << std::setw(10) << cell(row.fdr)
           << std::setw(13) << cell(row.lower_bound) << std::setw(8)
           << (row.missing ? "NA" : (row.reject ? "yes" : "no")) << '\n';
    }
    os << "method " << table.method << "  pi0 " << format_fixed(table.pi0, 4)
       << "  threshold " << format_fixed(table.threshold, 4) << "  m "
       << table.m << '\n';
}

}  // namespace fdrest
