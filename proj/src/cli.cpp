#include "millsbounds/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "millsbounds/analysis.hpp"
#include "millsbounds/bound_families.hpp"
#include "millsbounds/constants.hpp"
#include "millsbounds/polynomial_forms.hpp"
#include "millsbounds/reference_oracle.hpp"
#include "millsbounds/verification.hpp"

namespace mills::cli {
namespace {

using nlohmann::ordered_json;

enum class Format { Text, Csv, Json };

constexpr int kDefaultDigits = 17;
constexpr int kTableDigits = 20;
constexpr double kMaxX = 1e6;
constexpr double kDirectLimit = 30.0;
constexpr std::size_t kMaxConstantsK = 100000;
constexpr std::size_t kMaxCrossoverK = 20;
constexpr std::size_t kMaxCurvePoints = 1000000;

struct Options {
    std::string format = "text";
    int digits = kDefaultDigits;
    bool digits_given = false;
    Format fmt() const { return format == "csv" ? Format::Csv : format == "json" ? Format::Json : Format::Text; }
    int digits_or(int fallback) const { return digits_given ? digits : fallback; }
};

// Signals a domain error (exit 1) raised by argument checks.
struct DomainError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string num(const ExtReal& v, int digits) { return v.to_string(digits); }

// m * 10^e10 printed in the same style as DoubleDouble::to_string.
std::string scaled_num(const ExtReal& m, std::int64_t e10, int digits) {
    if (m.hi() == 0.0) return num(m, digits);
    const std::string s = m.to_string(digits);
    const auto pos = s.find('e');
    const std::int64_t e = std::stoll(s.substr(pos + 1)) + e10;
    char buf[32];
    std::snprintf(buf, sizeof buf, "e%c%02lld", e < 0 ? '-' : '+', static_cast<long long>(e < 0 ? -e : e));
    return s.substr(0, pos) + buf;
}

std::string csv_row(const std::vector<std::string>& cells) {
    std::string out;
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) out += ',';
        out += cells[i];
    }
    return out + '\n';
}

void write_aligned(std::ostream& out, const std::vector<std::vector<std::string>>& rows) {
    std::vector<std::size_t> width;
    for (const auto& r : rows) {
        width.resize(std::max(width.size(), r.size()), 0);
        for (std::size_t i = 0; i < r.size(); ++i) width[i] = std::max(width[i], r[i].size());
    }
    for (const auto& r : rows) {
        std::string line;
        for (std::size_t i = 0; i < r.size(); ++i) {
            if (i) line += "  ";
            line += r[i];
            if (i + 1 < r.size()) line.append(width[i] - r[i].size(), ' ');
        }
        line.erase(line.find_last_not_of(' ') + 1);
        out << line << '\n';
    }
}

void write_table(std::ostream& out, Format f, const std::vector<std::string>& header,
                 const std::vector<std::vector<std::string>>& rows) {
    if (f == Format::Csv) {
        out << csv_row(header);
        for (const auto& r : rows) out << csv_row(r);
    } else if (f == Format::Json) {
        ordered_json arr = ordered_json::array();
        for (const auto& r : rows) {
            ordered_json obj;
            for (std::size_t i = 0; i < header.size(); ++i) obj[header[i]] = i < r.size() ? r[i] : "";
            arr.push_back(obj);
        }
        out << arr.dump(2) << '\n';
    } else {
        std::vector<std::vector<std::string>> all{header};
        all.insert(all.end(), rows.begin(), rows.end());
        write_aligned(out, all);
    }
}

std::string side_name(BoundSide s) { return s == BoundSide::Upper ? "upper" : "lower"; }

ExtReal parse_x(const std::string& text) {
    ExtReal x;
    try {
        x = ExtReal::from_string(text);
    } catch (const std::invalid_argument&) {
        throw DomainError("x is not a number: " + text);
    }
    if (!(x.hi() >= 0.0) || !(x.hi() <= kMaxX)) {
        throw DomainError("x must lie in the domain x >= 0 (and x <= 1e6); got " + text);
    }
    return x;
}

BoundId make_bound(const std::string& family, std::size_t k) {
    const auto f = parse_family(family);
    if (!f) throw CLI::ValidationError("--family", "unknown family '" + family + "'");
    const BoundId id{*f, is_continued_fraction(*f) ? k : 0};
    try {
        validate(id);
    } catch (const std::exception& e) {
        throw DomainError(e.what());
    }
    return id;
}

// Bound and oracle for x beyond the direct double-double range, as
// (mantissa, exponent) pairs.
struct BoundValues {
    std::string h, bound, oracle, error, relative_error;
    BoundSide side;
    bool degraded;
};

BoundValues evaluate_bound(const BoundId& id, const ExtReal& x, int digits) {
    BoundValues v;
    const ExtReal h = eval_h(id, x);
    v.h = num(h, digits);
    v.side = bound_side(id);
    if (x.hi() <= kDirectLimit) {
        const TailBound tb = tail_bound(id, x);
        const ExtReal q = oracle::upper_tail(x);
        v.degraded = tb.degraded;
        v.bound = num(tb.value, digits);
        v.oracle = num(q, digits);
        v.error = num(tb.value - q, digits);
        v.relative_error = num((tb.value - q) / q, digits);
        return v;
    }
    // Q(x) = phi(x) M(x) and the bound is phi(x)/h(x): share the phi factor.
    const auto q = oracle::upper_tail_scaled(x);
    const ExtReal ratio = ExtReal(1.0) / (h * oracle::mills_ratio_continued_fraction(x));
    const ExtReal bound_m = q.mantissa * ratio;
    v.degraded = tail_bound(id, x).degraded;
    v.bound = scaled_num(bound_m, q.exponent10, digits);
    v.oracle = scaled_num(q.mantissa, q.exponent10, digits);
    v.error = scaled_num(bound_m - q.mantissa, q.exponent10, digits);
    v.relative_error = num(ratio - ExtReal(1.0), digits);
    return v;
}

int cmd_bound(const Options& o, const std::string& family, std::size_t k, const std::string& x_text, bool side_only,
              std::ostream& out) {
    const BoundId id = make_bound(family, k);
    const ExtReal x = parse_x(x_text);
    if (id.family == Family::ClassicCF && x.hi() == 0.0) {
        throw DomainError("classic-cf requires x > 0");
    }
    const int d = o.digits_or(kDefaultDigits);
    if (side_only) {
        const std::string s = side_name(bound_side(id));
        if (o.fmt() == Format::Csv) {
            out << "bound,side\n" << bound_label(id) << ',' << s << '\n';
        } else if (o.fmt() == Format::Json) {
            out << ordered_json{{"bound", bound_label(id)}, {"side", s}}.dump(2) << '\n';
        } else {
            out << s << '\n';
        }
        return kExitOk;
    }
    const BoundValues v = evaluate_bound(id, x, d);
    const std::vector<std::string> header{"bound", "x", "h", "tail_bound", "side", "oracle", "error", "relative_error",
                                          "degraded"};
    const std::vector<std::string> row{bound_label(id), num(x, d), v.h, v.bound, side_name(v.side), v.oracle, v.error,
                                       v.relative_error, v.degraded ? "yes" : "no"};
    if (o.fmt() == Format::Text) {
        std::vector<std::vector<std::string>> lines;
        for (std::size_t i = 0; i < header.size(); ++i) lines.push_back({header[i], row[i]});
        write_aligned(out, lines);
    } else if (o.fmt() == Format::Json) {
        ordered_json obj;
        for (std::size_t i = 0; i < header.size(); ++i) obj[header[i]] = row[i];
        out << obj.dump(2) << '\n';
    } else {
        write_table(out, Format::Csv, header, {row});
    }
    return kExitOk;
}

int cmd_constants(const Options& o, std::size_t k_max, std::ostream& out) {
    if (k_max > kMaxConstantsK) throw DomainError("--k-max must not exceed 100000");
    const int d = o.digits_or(kTableDigits);
    const std::vector<std::string> header{"k",       "c_star",      "delta",        "x_star",
                                          "x_tilde", "lower_slack", "middle_slack", "upper_slack"};
    std::vector<std::vector<std::string>> rows;
    for (std::size_t k = 0; k <= k_max; ++k) {
        const auto l3 = constants::sandwich_check(k);
        rows.push_back({std::to_string(k), num(constants::c_star(k), d), num(constants::delta_k(k), d),
                        num(constants::x_star(k), d), num(constants::x_tilde(k), d), num(l3.lower_slack, d),
                        num(l3.middle_slack, d), num(l3.upper_slack, d)});
    }
    write_table(out, o.fmt(), header, rows);
    return kExitOk;
}

int cmd_poly(const Options& o, std::size_t k, bool table, std::ostream& out) {
    if (k > kMaxPolynomialOrder) throw DomainError("--k must not exceed 200");
    const std::size_t first = table ? 0 : k;
    auto cells = [](const IntPolynomial& p, std::size_t count) {
        std::vector<std::string> c;
        for (std::size_t i = 0; i < count; ++i) c.push_back(p.coefficient(i).str());
        return c;
    };
    if (o.fmt() == Format::Json) {
        ordered_json arr = ordered_json::array();
        for (std::size_t r = first; r <= k; ++r) {
            const auto pq = pq_polynomials(r);
            arr.push_back({{"k", r}, {"p", cells(pq.p, r + 1)}, {"q", cells(pq.q, std::max<std::size_t>(r, 1))}});
        }
        out << arr.dump(2) << '\n';
        return kExitOk;
    }
    const std::size_t b_cols = std::max<std::size_t>(k, 1);
    std::vector<std::string> header{"k"};
    for (std::size_t i = 0; i <= k; ++i) header.push_back("a" + std::to_string(i));
    for (std::size_t i = 0; i < b_cols; ++i) header.push_back("b" + std::to_string(i));
    std::vector<std::vector<std::string>> rows;
    for (std::size_t r = first; r <= k; ++r) {
        const auto pq = pq_polynomials(r);
        std::vector<std::string> row{std::to_string(r)};
        auto a = cells(pq.p, r + 1);
        auto b = cells(pq.q, std::max<std::size_t>(r, 1));
        a.resize(k + 1);
        b.resize(b_cols);
        if (o.fmt() == Format::Text) row.push_back("|");
        row.insert(row.end(), a.begin(), a.end());
        if (o.fmt() == Format::Text) row.push_back("|");
        row.insert(row.end(), b.begin(), b.end());
        rows.push_back(row);
    }
    if (o.fmt() == Format::Text) {
        header.insert(header.begin() + 1, "|");
        header.insert(header.begin() + static_cast<std::ptrdiff_t>(k) + 3, "|");
    }
    write_table(out, o.fmt(), header, rows);
    return kExitOk;
}

const std::array<const char*, 5> kTable1Columns{"exp_star_gt0", "sqrt_star_gt0", "sqrt_star_ge1", "sqrt_star_ge2",
                                                "sqrt_star_ge3"};

int cmd_table1(const Options& o, std::ostream& out) {
    const int d = o.digits_or(kDefaultDigits);
    const auto t = analysis::reproduce_table1();
    const std::size_t total = analysis::kTable1Rows * kTable1Columns.size();
    if (o.fmt() == Format::Csv) {
        std::vector<std::string> header{"k"};
        header.insert(header.end(), kTable1Columns.begin(), kTable1Columns.end());
        out << csv_row(header);
        for (std::size_t k = 0; k < analysis::kTable1Rows; ++k) {
            std::vector<std::string> row{std::to_string(k)};
            for (const auto& cell : t.cells[k]) row.push_back(cell.rounded_up.to_string());
            out << csv_row(row);
        }
        return kExitOk;
    }
    const std::vector<std::string> header{"k", "column", "computed", "rounded_up", "published", "status"};
    std::vector<std::vector<std::string>> rows;
    for (std::size_t k = 0; k < analysis::kTable1Rows; ++k) {
        for (std::size_t c = 0; c < kTable1Columns.size(); ++c) {
            const auto& cell = t.cells[k][c];
            rows.push_back({std::to_string(k), kTable1Columns[c], num(cell.computed, d), cell.rounded_up.to_string(),
                            cell.published.to_string(), cell.matches() ? "pass" : "fail"});
        }
    }
    if (o.fmt() == Format::Json) {
        ordered_json obj;
        ordered_json cells = ordered_json::array();
        for (const auto& r : rows) {
            ordered_json c;
            for (std::size_t i = 0; i < header.size(); ++i) c[header[i]] = r[i];
            cells.push_back(c);
        }
        obj["cells"] = cells;
        obj["matched"] = t.matches();
        obj["total"] = total;
        out << obj.dump(2) << '\n';
        return kExitOk;
    }
    write_table(out, Format::Text, header, rows);
    out << "matched " << t.matches() << " of " << total << '\n';
    return kExitOk;
}

int cmd_curve(const Options& o, const std::vector<std::string>& labels, int figure, double low, double high,
              std::size_t points, bool log_spacing, std::ostream& out) {
    std::vector<BoundId> bounds;
    if (figure != 0) {
        bounds = analysis::figure_bounds(figure);
    } else {
        for (const auto& l : labels) {
            try {
                bounds.push_back(parse_bound_label(l));
            } catch (const std::exception& e) {
                throw DomainError(e.what());
            }
        }
    }
    if (points > kMaxCurvePoints) throw DomainError("--points must not exceed 1000000");
    const analysis::GridSpec grid{low, high, points, log_spacing ? analysis::Spacing::Log : analysis::Spacing::Linear};
    analysis::validate(grid);
    if (low < 0.0) throw DomainError("grid must lie in x >= 0");
    if (high > kMaxX) throw DomainError("grid must lie in x <= 1e6");
    const auto table = analysis::curve_dump(bounds, grid);
    const int d = o.digits_or(kTableDigits);
    if (o.fmt() == Format::Json) {
        ordered_json obj;
        ordered_json xs = ordered_json::array();
        for (double x : table.xs) xs.push_back(num(x, d));
        obj["x"] = xs;
        ordered_json series = ordered_json::object();
        for (std::size_t j = 0; j < bounds.size(); ++j) {
            ordered_json col = ordered_json::array();
            for (std::size_t i = 0; i < table.xs.size(); ++i) col.push_back(num(table.at(i, j), d));
            series[bound_label(bounds[j])] = col;
        }
        obj["error"] = series;
        out << obj.dump(2) << '\n';
        return kExitOk;
    }
    std::vector<std::string> header{"x"};
    for (const auto& b : bounds) header.push_back(bound_label(b));
    out << csv_row(header);
    for (std::size_t i = 0; i < table.xs.size(); ++i) {
        std::vector<std::string> row{num(table.xs[i], d)};
        for (std::size_t j = 0; j < bounds.size(); ++j) row.push_back(num(table.at(i, j), d));
        out << csv_row(row);
    }
    return kExitOk;
}

int cmd_verify(const Options& o, std::size_t k_max, std::ostream& out) {
    const auto results = verification::run_invariant_suites(k_max);
    const bool all = std::all_of(results.begin(), results.end(), [](const auto& r) { return r.passed; });
    if (o.fmt() == Format::Text) {
        for (const auto& r : results) out << (r.passed ? "PASS " : "FAIL ") << r.name << ": " << r.detail << '\n';
        out << (all ? "all suites passed" : "verification failed") << '\n';
    } else {
        std::vector<std::vector<std::string>> rows;
        for (const auto& r : results) {
            rows.push_back({r.name, r.passed ? "pass" : "fail", std::to_string(r.checked), r.detail});
        }
        if (o.fmt() == Format::Csv) {
            for (auto& r : rows) std::replace(r[3].begin(), r[3].end(), ',', ';');
        }
        write_table(out, o.fmt(), {"suite", "status", "checked", "detail"}, rows);
    }
    return all ? kExitOk : kExitVerification;
}

int cmd_crossover(const Options& o, std::size_t k, std::ostream& out) {
    if (k > kMaxCrossoverK) throw DomainError("--k must not exceed 20");
    const ExtReal root = analysis::crossover_exp_vs_sqrt(k);
    const double threshold = k == 0 ? 3.2 : 3.0;
    const int d = o.digits_or(kDefaultDigits);
    const std::vector<std::string> row{std::to_string(k), num(root, d), num(threshold, 2),
                                       root <= ExtReal(threshold) ? "yes" : "no"};
    if (o.fmt() == Format::Text) {
        out << "k=" << row[0] << " crossover=" << row[1] << " stated_threshold=" << row[2]
            << " within=" << row[3] << '\n';
        return kExitOk;
    }
    write_table(out, o.fmt(), {"k", "crossover", "stated_threshold", "within"}, {row});
    return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Mills ratio bound evaluator and verifier", "mills_bounds"};
    app.require_subcommand(1, 1);
    app.fallthrough();
    Options o;
    app.add_option("--format", o.format, "Output format")->check(CLI::IsMember({"text", "csv", "json"}));
    auto* precision = app.add_option("--precision", o.digits, "Significant digits (6..25)")->check(CLI::Range(6, 25));

    std::string family;
    std::size_t k = 0;
    std::string x_text;
    bool side_only = false;
    auto* bound = app.add_subcommand("bound", "Evaluate one bound against the oracle");
    bound->add_option("--family", family, "Family name")->required();
    bound->add_option("--k", k, "Continued-fraction depth");
    bound->add_option("--x", x_text, "Argument x >= 0")->required();
    bound->add_flag("--side", side_only, "Print only the side of the bound");

    std::size_t k_max = 10;
    bool as_json = false;
    bool as_csv = false;
    auto* consts = app.add_subcommand("constants", "Tabulate c_k*, delta_k, maximizers and sandwich slacks");
    consts->add_option("--k-max", k_max, "Largest k")->required();
    consts->add_flag("--json", as_json, "Same as --format json");
    consts->add_flag("--csv", as_csv, "Same as --format csv");

    bool table = false;
    auto* poly = app.add_subcommand("poly", "Print P_k and Q_k coefficients");
    poly->add_option("--k", k, "Polynomial index")->required();
    poly->add_flag("--table", table, "Print all rows 0..k");

    auto* table1 = app.add_subcommand("table1", "Reproduce the table of maximal errors");

    std::vector<std::string> labels;
    int figure = 0;
    double low = 0.0;
    double high = 0.0;
    std::size_t points = 0;
    bool log_spacing = false;
    auto* curve = app.add_subcommand("curve", "Dump error curves as CSV");
    auto* bounds_opt = curve->add_option("--bounds", labels, "Comma-separated bound labels such as sqrt-star:4")
                           ->delimiter(',');
    auto* figure_opt = curve->add_option("--figure", figure, "Bound set of figure 1..5")->check(CLI::Range(1, 5));
    bounds_opt->excludes(figure_opt);
    curve->add_option("--low", low, "Grid start")->required();
    curve->add_option("--high", high, "Grid end")->required();
    curve->add_option("--points", points, "Number of grid points")->required();
    curve->add_flag("--log", log_spacing, "Logarithmic spacing");

    std::size_t verify_k = 10;
    auto* verify = app.add_subcommand("verify", "Run the invariant suites");
    verify->add_option("--k-max", verify_k, "Largest continued-fraction depth")->check(CLI::Range(2, 100));

    auto* crossover = app.add_subcommand("crossover", "Threshold beyond which the square-root bound wins");
    crossover->add_option("--k", k, "Order")->required();

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
        if (curve->parsed() && labels.empty() && figure == 0) {
            throw CLI::RequiredError("--bounds or --figure");
        }
    } catch (const CLI::CallForHelp&) {
        out << (app.get_subcommands().empty() ? app.help() : app.get_subcommands().front()->help());
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n\n" << app.help();
        return kExitUsage;
    }
    o.digits_given = precision->count() > 0;
    if (as_json && as_csv) {
        err << "error: --json and --csv are exclusive\n\n" << consts->help();
        return kExitUsage;
    }
    if (as_json) o.format = "json";
    if (as_csv) o.format = "csv";

    try {
        if (bound->parsed()) return cmd_bound(o, family, k, x_text, side_only, out);
        if (consts->parsed()) return cmd_constants(o, k_max, out);
        if (poly->parsed()) return cmd_poly(o, k, table, out);
        if (table1->parsed()) return cmd_table1(o, out);
        if (curve->parsed()) return cmd_curve(o, labels, figure, low, high, points, log_spacing, out);
        if (verify->parsed()) return cmd_verify(o, verify_k, out);
        if (crossover->parsed()) return cmd_crossover(o, k, out);
    } catch (const CLI::ValidationError& e) {
        err << "error: " << e.what() << "\n\n" << app.help();
        return kExitUsage;
    } catch (const std::domain_error& e) {
        err << "error: " << e.what() << '\n';
        return kExitDomain;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return kExitDomain;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << '\n';
        return kExitDomain;
    } catch (const std::runtime_error& e) {
        err << "error: " << e.what() << '\n';
        return kExitDomain;
    }
    return kExitUsage;
}

}  // namespace mills::cli
