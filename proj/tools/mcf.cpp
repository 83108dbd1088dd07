// mcf: command-line front end for base-m continued fractions.
//
// Exit codes: 0 success, 2 bad input, 3 precision exhausted, 4 audit violation.

#include <charconv>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "mcf/mcf.hpp"

namespace {

using json = nlohmann::ordered_json;
using namespace mcf;

constexpr int exit_ok = 0;
constexpr int exit_input = 2;
constexpr int exit_precision = 3;
constexpr int exit_violation = 4;

struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Common {
    std::int64_t base = 2;
    std::optional<std::size_t> max_digits;
    std::optional<std::int64_t> precision;
    std::string format = "text";
    unsigned threads = 0;
};

std::size_t digit_cap(const Common& c) {
    if (c.max_digits) return *c.max_digits;
    if (const char* env = std::getenv("MCF_MAX_DIGITS")) {
        std::size_t v = 0;
        const std::string_view s(env);
        auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec != std::errc() || ptr != s.data() + s.size() || v < 1)
            throw InputError("MCF_MAX_DIGITS must be a positive integer, got '" + std::string(s) + "'");
        return v;
    }
    return default_max_digits;
}

NumberInput parse_number(const std::string& text, const Common& c) {
    if (text.rfind("sqrt(", 0) == 0 && text.size() > 6 && text.back() == ')') {
        if (!c.precision) throw InputError("sqrt(n) needs --precision");
        const std::string arg = text.substr(5, text.size() - 6);
        const Rational n = parse_rational(arg);
        if (!n.is_integer() || n.sign() <= 0) throw InputError("sqrt argument must be a positive integer");
        return interval_from_sqrt(n.num(), *c.precision);
    }
    return parse_rational(text);
}

json rat_json(const Rational& r) { return {{"num", r.num().get_str()}, {"den", r.den().get_str()}}; }

json opt_rat_json(const std::optional<Rational>& r) { return r ? rat_json(*r) : json(nullptr); }

json interval_json(const Interval& iv) {
    return {{"lo", rat_json(iv.lo())}, {"hi", rat_json(iv.hi())}, {"precision", iv.precision()}};
}

std::string fmt_double(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return ec == std::errc() ? std::string(buf, ptr) : std::string("nan");
}

std::string digits_text(const std::vector<std::int64_t>& d) {
    std::string s = "[";
    for (std::size_t i = 0; i < d.size(); ++i) s += (i ? "," : "") + std::to_string(d[i]);
    return s + "]";
}

void print_json(const json& j) { std::cout << j.dump(2) << '\n'; }

// Expansion plus whether it stopped at an uncertifiable digit.
std::pair<Expansion, bool> expand_partial(const NumberInput& x, Base m, std::size_t cap) {
    try {
        return {expand(x, m, cap), false};
    } catch (const PrecisionExhausted& ex) {
        return {ex.partial(), true};
    }
}

// ---------------------------------------------------------------- expand

int cmd_expand(const Common& c, const std::string& text) {
    const Base m(c.base);
    const NumberInput x = parse_number(text, c);
    const auto [e, exhausted] = expand_partial(x, m, digit_cap(c));
    const auto digits = digit_values(e.digits);

    if (c.format == "json") {
        json j{{"command", "expand"}, {"base", c.base}, {"input", text}, {"digits", digits},
               {"terminated", e.terminated}};
        if (const auto* r = std::get_if<Rational>(&e.remainder)) j["remainder"] = rat_json(*r);
        else if (const auto* iv = std::get_if<Interval>(&e.remainder)) j["remainder"] = interval_json(*iv);
        else j["remainder"] = nullptr;
        j["cap_hit"] = e.rational_cap_hit();
        j["precision_exhausted"] = exhausted;
        print_json(j);
    } else if (c.format == "csv") {
        std::cout << "n,digit\n";
        for (std::size_t i = 0; i < digits.size(); ++i) std::cout << i + 1 << ',' << digits[i] << '\n';
    } else {
        std::cout << "base: " << c.base << '\n' << "input: " << text << '\n';
        std::cout << "digits: " << digits_text(digits) << '\n';
        std::cout << "count: " << digits.size() << '\n';
        std::cout << "terminated: " << (e.terminated ? "true" : "false") << '\n';
        if (const auto* r = std::get_if<Rational>(&e.remainder)) std::cout << "remainder: " << r->str() << '\n';
        else if (const auto* iv = std::get_if<Interval>(&e.remainder)) std::cout << "remainder: " << iv->str() << '\n';
        if (e.rational_cap_hit()) std::cout << "note: rational expansion did not terminate within the digit cap\n";
        if (exhausted) std::cout << "precision exhausted after " << digits.size() << " digits\n";
    }
    if (exhausted) {
        std::cerr << "mcf: precision exhausted after " << digits.size() << " digits\n";
        return exit_precision;
    }
    return exit_ok;
}

// ----------------------------------------------------------- convergents

int cmd_convergents(const Common& c, const std::string& text, std::optional<std::size_t> rows) {
    const Base m(c.base);
    const NumberInput x = parse_number(text, c);
    const auto [e, exhausted] = expand_partial(x, m, rows ? *rows : digit_cap(c));

    const auto digits = digit_values(e.digits);
    json jrows = json::array();
    if (c.format == "csv") std::cout << "n,p,q,omega,q_integer,determinant,determinant_expected,determinant_ok\n";
    else if (c.format == "text")
        std::cout << "base: " << c.base << "\ninput: " << text << "\ndigits: " << digits_text(digits) << '\n';

    if (!e.digits.empty()) {
        const ConvergentTable table(e.digits, m);
        for (std::size_t n = 1; n <= table.depth(); ++n) {
            const Rational p = table.p(n), q = table.q(n), w = table.convergent(n);
            std::optional<Rational> det, expected;
            if (n + 1 <= table.depth()) {
                det = determinant(table, n);
                expected = determinant_expected(table, n);
            }
            const bool ok = det && *det == *expected;
            if (c.format == "json") {
                jrows.push_back({{"n", n},
                                 {"p", rat_json(p)},
                                 {"q", rat_json(q)},
                                 {"omega", rat_json(w)},
                                 {"q_integer", q.is_integer()},
                                 {"determinant", opt_rat_json(det)},
                                 {"determinant_expected", opt_rat_json(expected)},
                                 {"determinant_ok", det ? json(ok) : json(nullptr)}});
            } else if (c.format == "csv") {
                std::cout << n << ',' << p.str() << ',' << q.str() << ',' << w.str() << ','
                          << (q.is_integer() ? "true" : "false") << ',' << (det ? det->str() : "") << ','
                          << (expected ? expected->str() : "") << ',' << (det ? (ok ? "true" : "false") : "")
                          << '\n';
            } else {
                std::cout << "n=" << n << "  p=" << p.str() << "  q=" << q.str() << (q.is_integer() ? "" : " (non-integer)")
                          << "  omega=" << w.str();
                if (det) std::cout << "  det=" << det->str() << (ok ? " ok" : " MISMATCH");
                std::cout << '\n';
            }
        }
    }
    if (c.format == "json")
        print_json({{"command", "convergents"},
                    {"base", c.base},
                    {"input", text},
                    {"digits", digits},
                    {"terminated", e.terminated},
                    {"precision_exhausted", exhausted},
                    {"rows", jrows}});
    if (exhausted) {
        std::cerr << "mcf: precision exhausted after " << digits.size() << " digits\n";
        return exit_precision;
    }
    return exit_ok;
}

// ---------------------------------------------------------------- bounds

int bounds_exact(const Common& c, const std::string& text, const Rational& x, std::optional<std::size_t> depth) {
    const Base m(c.base);
    const Expansion e = expand(x, m, depth ? *depth + 1 : digit_cap(c));
    const auto digits = digit_values(e.digits);
    json jrows = json::array();
    if (c.format == "csv")
        std::cout << "n,error,applicable,lower_loose,lower_tight,upper_tight,upper_fib,q_floor_power,q_floor_fib,"
                     "power_floor_holds,fib_floor_holds,sandwich_holds\n";
    else if (c.format == "text")
        std::cout << "base: " << c.base << "\ninput: " << text << "\ndigits: " << digits_text(digits) << '\n';

    if (!e.digits.empty()) {
        const ConvergentTable table(e.digits, m);
        // Rows need b_{n+1} unless the expansion ended at n.
        std::size_t last = e.terminated ? table.depth() : table.depth() - 1;
        if (depth) last = std::min(last, *depth);
        for (std::size_t n = 1; n <= last; ++n) {
            const BoundsRow row = error_bounds(table, e, n);
            const QFloors floors = q_floors(table, n);
            const Rational abs_err = row.error.abs();
            std::optional<bool> sandwich;
            if (row.applicable)
                sandwich = *row.lower_loose <= *row.lower_tight && *row.lower_tight < abs_err &&
                           abs_err <= *row.upper_tight;
            auto opt_str = [](const std::optional<Rational>& r) { return r ? r->str() : std::string("n/a"); };
            if (c.format == "json") {
                jrows.push_back({{"n", n},
                                 {"error", rat_json(row.error)},
                                 {"applicable", row.applicable},
                                 {"lower_loose", opt_rat_json(row.lower_loose)},
                                 {"lower_tight", opt_rat_json(row.lower_tight)},
                                 {"upper_tight", opt_rat_json(row.upper_tight)},
                                 {"upper_fib", opt_rat_json(row.upper_fib)},
                                 {"q_floor_power", rat_json(row.q_floor_power)},
                                 {"q_floor_fib", row.q_floor_fib.get_str()},
                                 {"power_floor_holds", floors.power_floor_holds},
                                 {"fib_floor_holds", floors.fib_floor_holds},
                                 {"sandwich_holds", sandwich ? json(*sandwich) : json(nullptr)}});
            } else if (c.format == "csv") {
                auto csv_opt = [](const std::optional<Rational>& r) { return r ? r->str() : std::string(); };
                std::cout << n << ',' << row.error.str() << ',' << (row.applicable ? "true" : "false") << ','
                          << csv_opt(row.lower_loose) << ',' << csv_opt(row.lower_tight) << ','
                          << csv_opt(row.upper_tight) << ',' << csv_opt(row.upper_fib) << ','
                          << row.q_floor_power.str() << ',' << row.q_floor_fib.get_str() << ','
                          << (floors.power_floor_holds ? "true" : "false") << ','
                          << (floors.fib_floor_holds ? "true" : "false") << ','
                          << (sandwich ? (*sandwich ? "true" : "false") : "") << '\n';
            } else {
                std::cout << "n=" << n << "  error=" << row.error.str();
                if (row.applicable) {
                    std::cout << "  lower_loose=" << opt_str(row.lower_loose)
                              << "  lower_tight=" << opt_str(row.lower_tight)
                              << "  upper_tight=" << opt_str(row.upper_tight)
                              << "  upper_fib=" << opt_str(row.upper_fib)
                              << (*sandwich ? "  sandwich ok" : "  sandwich FAILS");
                } else {
                    std::cout << "  bounds n/a";
                }
                std::cout << "  q_n>=m^S " << (floors.power_floor_holds ? "yes" : "no") << "  q_n>=F_n "
                          << (floors.fib_floor_holds ? "yes" : "no") << '\n';
            }
        }
    }
    if (c.format == "json")
        print_json({{"command", "bounds"},
                    {"base", c.base},
                    {"input", text},
                    {"digits", digits},
                    {"terminated", e.terminated},
                    {"mode", "exact"},
                    {"rows", jrows}});
    return exit_ok;
}

int bounds_interval(const Common& c, const std::string& text, const Interval& x, std::optional<std::size_t> depth) {
    const Base m(c.base);
    std::size_t want = depth ? *depth : digit_cap(c) - 1;
    bool exhausted = false;
    try {
        (void)expand(x, m, want + 1);
    } catch (const PrecisionExhausted& ex) {
        exhausted = true;
        // The last certified digit is only usable as b_{n+1}.
        want = ex.digits_emitted() == 0 ? 0 : std::min(want, ex.digits_emitted() - 1);
    }
    const auto rows = want == 0 ? std::vector<DiagnosticsRow>{} : convergence_diagnostics(x, m, want, x.precision());

    json jrows = json::array();
    if (c.format == "csv") std::cout << "n,error_lo,error_hi,ceiling,ceiling_holds\n";
    else if (c.format == "text") std::cout << "base: " << c.base << "\ninput: " << text << "\n";
    for (const auto& r : rows) {
        if (c.format == "json") {
            jrows.push_back({{"n", r.n},
                             {"error", interval_json(r.error)},
                             {"ceiling", opt_rat_json(r.ceiling)},
                             {"ceiling_holds", r.ceiling_holds}});
        } else if (c.format == "csv") {
            std::cout << r.n << ',' << r.error.lo().str() << ',' << r.error.hi().str() << ','
                      << (r.ceiling ? r.ceiling->str() : "") << ',' << (r.ceiling_holds ? "true" : "false") << '\n';
        } else {
            std::cout << "n=" << r.n << "  |error| in [" << fmt_double(r.error.lo().to_double()) << ", "
                      << fmt_double(r.error.hi().to_double()) << "]  1/q_{n+1}="
                      << (r.ceiling ? fmt_double(r.ceiling->to_double()) : std::string("n/a"))
                      << (r.ceiling_holds ? "  ok" : "  EXCEEDS") << '\n';
        }
    }
    if (c.format == "json")
        print_json({{"command", "bounds"},
                    {"base", c.base},
                    {"input", text},
                    {"mode", "interval"},
                    {"precision_exhausted", exhausted},
                    {"rows", jrows}});
    else if (c.format == "text" && exhausted)
        std::cout << "precision exhausted after " << rows.size() + 1 << " digits\n";
    if (exhausted) {
        std::cerr << "mcf: precision exhausted\n";
        return exit_precision;
    }
    return exit_ok;
}

int cmd_bounds(const Common& c, const std::string& text, std::optional<std::size_t> depth) {
    const NumberInput x = parse_number(text, c);
    if (const auto* r = std::get_if<Rational>(&x)) return bounds_exact(c, text, *r, depth);
    return bounds_interval(c, text, std::get<Interval>(x), depth);
}

// ----------------------------------------------------------------- audit

int report_audit(const Common& c, const char* command, const AuditReport& report, std::size_t max_listed) {
    const bool violated = report.gating_violation();
    if (c.format == "json") {
        json claims = json::array();
        for (const auto& e : report.entries) {
            json ws = json::array();
            for (const auto& w : e.witnesses)
                ws.push_back({{"input", w.input}, {"depth", w.depth}, {"digits", w.digits}, {"detail", w.detail}});
            claims.push_back({{"id", e.info().id},
                              {"statement", e.info().statement},
                              {"condition", e.info().condition},
                              {"gating", e.info().gating},
                              {"base", e.base},
                              {"status", to_string(e.status())},
                              {"checked", e.checked},
                              {"violations", e.violations},
                              {"conditional_violations", e.conditional_violations},
                              {"witnesses", ws}});
        }
        json nonterm = json::array();
        for (const auto& f : report.non_terminating)
            nonterm.push_back({{"base", f.base},
                               {"input", f.input},
                               {"digits_emitted", f.digits_emitted},
                               {"preperiod", f.preperiod ? json(*f.preperiod) : json(nullptr)},
                               {"period", f.period ? json(*f.period) : json(nullptr)}});
        print_json({{"command", command},
                    {"inputs_checked", report.inputs_checked},
                    {"inputs_skipped", report.inputs_skipped},
                    {"precision_exhausted", report.precision_exhausted},
                    {"gating_violation", violated},
                    {"claims", claims},
                    {"non_terminating", nonterm}});
    } else if (c.format == "csv") {
        std::cout << "claim,base,status,gating,checked,violations,conditional_violations\n";
        for (const auto& e : report.entries)
            std::cout << e.info().id << ',' << e.base << ',' << to_string(e.status()) << ','
                      << (e.info().gating ? "true" : "false") << ',' << e.checked << ',' << e.violations << ','
                      << e.conditional_violations << '\n';
    } else {
        std::cout << "inputs checked: " << report.inputs_checked << "  skipped: " << report.inputs_skipped
                  << "  precision exhausted: " << report.precision_exhausted << '\n';
        for (const auto& e : report.entries) {
            std::cout << "m=" << e.base << "  " << e.info().id << ": " << to_string(e.status()) << "  checked "
                      << e.checked << ", violations " << e.violations << ", conditional " << e.conditional_violations
                      << (e.info().gating ? "" : "  (informational)") << '\n';
            for (std::size_t i = 0; i < e.witnesses.size() && i < max_listed; ++i) {
                const auto& w = e.witnesses[i];
                std::cout << "    x=" << w.input << " depth " << w.depth << " digits " << digits_text(w.digits)
                          << ": " << w.detail << '\n';
            }
        }
        std::size_t periodic = 0;
        for (const auto& f : report.non_terminating) periodic += f.period ? 1 : 0;
        std::cout << "non-terminating rationals: " << report.non_terminating.size() << " (eventually periodic "
                  << periodic << ")\n";
        for (std::size_t i = 0; i < report.non_terminating.size() && i < max_listed; ++i) {
            const auto& f = report.non_terminating[i];
            std::cout << "    m=" << f.base << " x=" << f.input << " digits emitted " << f.digits_emitted;
            if (f.period) std::cout << ", preperiod " << *f.preperiod << ", period " << *f.period;
            std::cout << '\n';
        }
        std::cout << (violated ? "result: violation\n" : "result: ok\n");
    }
    return violated ? exit_violation : exit_ok;
}

std::vector<std::int64_t> parse_bases(const std::string& text) {
    std::vector<std::int64_t> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        const Rational v = parse_rational(item);
        if (!v.is_integer() || !v.num().fits_slong_p()) throw InputError("bad base '" + item + "'");
        out.push_back(Base(v.num().get_si()).value());
    }
    return out;
}

struct AuditArgs {
    std::string bases = "2,3,5,10";
    std::int64_t grid_q = 60;
    std::size_t random = 10000;
    std::int64_t random_q = 1000000;
    std::uint64_t seed = 1;
    std::size_t witnesses = 20;
    std::size_t listed = 5;
};

int cmd_audit(const Common& c, const AuditArgs& a) {
    AuditGrid grid;
    grid.bases = parse_bases(a.bases);
    grid.max_q = a.grid_q;
    grid.random_count = a.random;
    grid.random_max_q = a.random_q;
    grid.seed = a.seed;
    std::vector<Base> bases;
    for (auto b : grid.bases) bases.emplace_back(b);

    AuditOptions opt;
    opt.max_digits = digit_cap(c);
    opt.max_witnesses = a.witnesses;
    opt.threads = c.threads;
    return report_audit(c, "audit", audit(grid_inputs(grid), bases, opt), a.listed);
}

int cmd_verify(const Common& c, const std::string& text, std::size_t witnesses, std::size_t listed) {
    AuditOptions opt;
    opt.max_digits = digit_cap(c);
    opt.max_witnesses = witnesses;
    opt.threads = 1;
    const NumberInput x = parse_number(text, c);
    const Base m(c.base);
    if (const auto* r = std::get_if<Rational>(&x)) detail::check_domain(*r, m);
    return report_audit(c, "verify", audit({x}, {m}, opt), listed);
}

// ----------------------------------------------------------------- stats

std::vector<Rational> parse_z_grid(const std::string& text) {
    if (text.empty()) return default_z_grid();
    std::vector<Rational> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) out.push_back(parse_rational(item));
    return out;
}

int cmd_gauss_kuzmin(const Common& c, std::size_t samples, std::size_t n, std::uint64_t seed, const std::string& z) {
    const auto rows = gauss_kuzmin_empirical(samples, n, parse_z_grid(z), seed, c.threads);
    double worst = 0;
    for (const auto& r : rows) worst = std::max(worst, std::abs(r.empirical.to_double() - r.reference));

    if (c.format == "json") {
        json jr = json::array();
        for (const auto& r : rows)
            jr.push_back({{"z", rat_json(r.z)},
                          {"empirical", rat_json(r.empirical)},
                          {"empirical_value", r.empirical.to_double()},
                          {"reference", r.reference}});
        print_json({{"command", "stats gauss-kuzmin"},
                    {"samples", samples},
                    {"n", n},
                    {"seed", seed},
                    {"generator", "splitmix64"},
                    {"rows", jr},
                    {"max_deviation", worst}});
    } else if (c.format == "csv") {
        std::cout << "z,empirical,reference\n";
        for (const auto& r : rows)
            std::cout << fmt_double(r.z.to_double()) << ',' << fmt_double(r.empirical.to_double()) << ','
                      << fmt_double(r.reference) << '\n';
    } else {
        std::cout << "Gauss map, " << samples << " samples, n = " << n << ", seed " << seed << '\n';
        std::cout << "z  empirical  log2(z+1)\n";
        for (const auto& r : rows)
            std::cout << r.z.str() << "  " << fmt_double(r.empirical.to_double()) << "  " << fmt_double(r.reference)
                      << '\n';
        std::cout << "max deviation: " << fmt_double(worst) << '\n';
    }
    return exit_ok;
}

int cmd_mcf_digits(const Common& c, std::size_t samples, std::size_t depth, std::uint64_t seed, std::int64_t cap) {
    const Base m(c.base);
    const HistogramResult h = mcf_digit_histogram(m, samples, depth, seed, cap, c.threads);
    if (c.format == "json") {
        json bins = json::array();
        for (std::int64_t d = -1; d <= cap; ++d)
            bins.push_back({{"digit", d},
                            {"count", h.counts[static_cast<std::size_t>(d + 1)]},
                            {"frequency", rat_json(h.frequency(d))}});
        print_json({{"command", "stats mcf-digits"},
                    {"note", histogram_banner},
                    {"base", h.base},
                    {"samples", h.samples},
                    {"depth", h.depth},
                    {"seed", h.seed},
                    {"digit_cap", h.digit_cap},
                    {"total", h.total},
                    {"bins", bins},
                    {"overflow", {{"count", h.overflow}, {"frequency", rat_json(h.overflow_frequency())}}}});
    } else if (c.format == "csv") {
        std::cout << "# " << histogram_banner << '\n' << "digit,count,frequency\n";
        for (std::int64_t d = -1; d <= cap; ++d)
            std::cout << d << ',' << h.counts[static_cast<std::size_t>(d + 1)] << ','
                      << fmt_double(h.frequency(d).to_double()) << '\n';
        std::cout << '>' << cap << ',' << h.overflow << ',' << fmt_double(h.overflow_frequency().to_double()) << '\n';
    } else {
        std::cout << histogram_banner << '\n';
        std::cout << "base " << h.base << ", " << h.samples << " samples, depth " << h.depth << ", seed " << h.seed
                  << ", " << h.total << " digits\n";
        for (std::int64_t d = -1; d <= cap; ++d)
            std::cout << d << "  " << h.counts[static_cast<std::size_t>(d + 1)] << "  "
                      << fmt_double(h.frequency(d).to_double()) << '\n';
        std::cout << '>' << cap << "  " << h.overflow << "  " << fmt_double(h.overflow_frequency().to_double()) << '\n';
    }
    return exit_ok;
}

// ------------------------------------------------------------------- rcf

int cmd_rcf(const Common& c, const std::string& text) {
    const Rational x = parse_rational(text);
    const RcfExpansion r = rcf_expand(x, digit_cap(c));
    std::vector<std::string> qs;
    for (const auto& a : r.quotients) qs.push_back(a.get_str());
    if (c.format == "json") {
        print_json({{"command", "rcf"},
                    {"input", text},
                    {"quotients", qs},
                    {"terminated", r.terminated},
                    {"remainder", rat_json(r.remainder)}});
    } else if (c.format == "csv") {
        std::cout << "n,quotient\n";
        for (std::size_t i = 0; i < qs.size(); ++i) std::cout << i + 1 << ',' << qs[i] << '\n';
    } else {
        std::cout << "input: " << text << "\nquotients: [";
        for (std::size_t i = 0; i < qs.size(); ++i) std::cout << (i ? "," : "") << qs[i];
        std::cout << "]\nterminated: " << (r.terminated ? "true" : "false") << '\n';
    }
    return exit_ok;
}

void add_common(CLI::App* sub, Common& c, bool number_opts) {
    sub->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"text", "json", "csv"}));
    sub->add_option("--threads", c.threads, "Worker threads (0 = all cores)");
    if (number_opts) {
        sub->add_option("--base,-m", c.base, "Base m >= 2")->check(CLI::Range(std::int64_t{2}, std::int64_t{1} << 62));
        sub->add_option("--max-digits", c.max_digits, "Digit cap (default 5000 or $MCF_MAX_DIGITS)")
            ->check(CLI::PositiveNumber);
        sub->add_option("--precision", c.precision, "Bits of working precision for sqrt(n)")
            ->check(CLI::Range(std::int64_t{16}, std::int64_t{1} << 30));
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Base-m continued fractions: expansions, convergents, error bounds and audits"};
    app.require_subcommand(1);
    Common c;
    std::string number;
    std::optional<std::size_t> rows;
    AuditArgs audit_args;
    std::size_t samples = 0, stat_n = 8, depth = 20;
    std::uint64_t seed = 1;
    std::int64_t cap = 10;
    std::string z_grid;

    auto* expand_cmd = app.add_subcommand("expand", "Digits of a number");
    add_common(expand_cmd, c, true);
    expand_cmd->add_option("x", number, "p, p/q, decimal or sqrt(n)")->required();

    auto* conv_cmd = app.add_subcommand("convergents", "Convergent table with determinant check");
    add_common(conv_cmd, c, true);
    conv_cmd->add_option("x", number)->required();
    conv_cmd->add_option("-n", rows, "Number of rows")->check(CLI::PositiveNumber);

    auto* bounds_cmd = app.add_subcommand("bounds", "Truncation error and its bounds per depth");
    add_common(bounds_cmd, c, true);
    bounds_cmd->add_option("x", number)->required();
    bounds_cmd->add_option("-n", rows, "Last depth")->check(CLI::PositiveNumber);

    auto* verify_cmd = app.add_subcommand("verify", "Audit a single input");
    add_common(verify_cmd, c, true);
    verify_cmd->add_option("x", number)->required();
    verify_cmd->add_option("--witnesses", audit_args.witnesses, "Witnesses kept per claim");
    verify_cmd->add_option("--list", audit_args.listed, "Witnesses printed per claim in text output");

    auto* audit_cmd = app.add_subcommand("audit", "Audit every claim over a grid of rationals");
    add_common(audit_cmd, c, false);
    audit_cmd->add_option("--max-digits", c.max_digits, "Digit cap per input")->check(CLI::PositiveNumber);
    audit_cmd->add_option("--bases", audit_args.bases, "Comma-separated bases");
    audit_cmd->add_option("--grid-q", audit_args.grid_q, "Exhaustive part: all p/q with q up to this");
    audit_cmd->add_option("--random", audit_args.random, "Number of random rationals");
    audit_cmd->add_option("--random-q", audit_args.random_q, "Largest denominator of the random rationals");
    audit_cmd->add_option("--seed", audit_args.seed, "Seed of the random part");
    audit_cmd->add_option("--witnesses", audit_args.witnesses, "Witnesses kept per claim");
    audit_cmd->add_option("--list", audit_args.listed, "Witnesses printed per claim in text output");

    auto* stats_cmd = app.add_subcommand("stats", "Monte Carlo statistics");
    stats_cmd->require_subcommand(1);
    auto* gk_cmd = stats_cmd->add_subcommand("gauss-kuzmin", "Gauss map iterates against log2(z+1)");
    add_common(gk_cmd, c, false);
    gk_cmd->add_option("--samples", samples, "Sample count")->default_val(100000)->check(CLI::PositiveNumber);
    gk_cmd->add_option("-n", stat_n, "Gauss map iterations")->default_val(8);
    gk_cmd->add_option("--seed", seed, "Seed")->default_val(1);
    gk_cmd->add_option("--z", z_grid, "Comma-separated z values in [0,1] (default 0.1,...,0.9)");
    auto* hist_cmd = stats_cmd->add_subcommand("mcf-digits", "Digit histogram of random inputs");
    add_common(hist_cmd, c, true);
    hist_cmd->add_option("--samples", samples, "Sample count")->default_val(10000)->check(CLI::PositiveNumber);
    hist_cmd->add_option("--depth", depth, "Digits per sample")->default_val(20)->check(CLI::PositiveNumber);
    hist_cmd->add_option("--seed", seed, "Seed")->default_val(1);
    hist_cmd->add_option("--digit-cap", cap, "Largest digit with its own bin")->default_val(10)
        ->check(CLI::Range(std::int64_t{-1}, std::int64_t{100000}));

    auto* rcf_cmd = app.add_subcommand("rcf", "Regular continued fraction of p/q in (0,1)");
    add_common(rcf_cmd, c, true);
    rcf_cmd->add_option("x", number)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? exit_ok : exit_input;
    }

    try {
        if (*expand_cmd) return cmd_expand(c, number);
        if (*conv_cmd) return cmd_convergents(c, number, rows);
        if (*bounds_cmd) return cmd_bounds(c, number, rows);
        if (*verify_cmd) return cmd_verify(c, number, audit_args.witnesses, audit_args.listed);
        if (*audit_cmd) return cmd_audit(c, audit_args);
        if (*gk_cmd) return cmd_gauss_kuzmin(c, samples, stat_n, seed, z_grid);
        if (*hist_cmd) return cmd_mcf_digits(c, samples, depth, seed, cap);
        if (*rcf_cmd) return cmd_rcf(c, number);
    } catch (const PrecisionExhausted& e) {
        std::cerr << "mcf: " << e.what() << '\n';
        return exit_precision;
    } catch (const InternalInconsistency& e) {
        std::cerr << "mcf: " << e.what() << '\n';
        return exit_violation;
    } catch (const std::exception& e) {
        std::cerr << "mcf: " << e.what() << '\n';
        return exit_input;
    }
    return exit_input;
}
