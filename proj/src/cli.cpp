#include "incr/cli.hpp"

#include <cctype>
#include <fstream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "incr/cantor.hpp"
#include "incr/error.hpp"
#include "incr/expr.hpp"
#include "incr/fn1d.hpp"
#include "incr/inequalities.hpp"
#include "incr/interval.hpp"
#include "incr/numeric.hpp"
#include "incr/polyop.hpp"
#include "incr/serialize.hpp"
#include "incr/slope.hpp"
#include "incr/theoremgraph.hpp"
#include "incr/witness.hpp"

namespace incr::cli {

namespace {

using ordered_json = nlohmann::ordered_json;

enum class Format { Text, Csv, Json };

Format parse_format(const std::string& s) {
    if (s == "csv") return Format::Csv;
    if (s == "json") return Format::Json;
    return Format::Text;
}

std::string fmt(double v) { return fmt_double(v); }
std::string fmt(const Rat& v) { return rat_to_string(v); }

ordered_json jval(double v) { return v; }
ordered_json jval(const Rat& v) { return rat_to_string(v); }

std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

bool is_ident(const std::string& s) {
    if (s.empty()) return false;
    if (!std::isalpha(static_cast<unsigned char>(s[0])) && s[0] != '_') return false;
    for (char ch : s)
        if (!std::isalnum(static_cast<unsigned char>(ch)) && ch != '_') return false;
    return true;
}

/// Full-string double parse; BadParam on trailing garbage or no digits.
double parse_f64(const std::string& s) {
    const std::string t = trim(s);
    std::size_t pos = 0;
    double v = 0.0;
    try {
        v = std::stod(t, &pos);
    } catch (const std::exception&) {
        throw Error(Errc::BadParam, "not a number: '" + s + "'");
    }
    if (pos != t.size()) throw Error(Errc::BadParam, "not a number: '" + s + "'");
    return v;
}

/// Recognizes "name" or "name(r1, r2, ...)" with rational arguments.
/// Returns false (leaving name/params unspecified) for anything else,
/// which then goes to the expression parser.
bool try_split_call(const std::string& text, std::string& name, std::vector<Rat>& params) {
    const std::string t = trim(text);
    const std::size_t open = t.find('(');
    if (open == std::string::npos) {
        if (!is_ident(t)) return false;
        name = t;
        params.clear();
        return true;
    }
    if (t.back() != ')') return false;
    name = trim(t.substr(0, open));
    if (!is_ident(name)) return false;
    params.clear();
    const std::string inner = t.substr(open + 1, t.size() - open - 2);
    if (trim(inner).empty()) return true;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = inner.find(',', start);
        const std::string piece =
            trim(comma == std::string::npos ? inner.substr(start) : inner.substr(start, comma - start));
        try {
            params.push_back(parse_rat(piece));
        } catch (const Error&) {
            return false; // e.g. "sin(x)": an expression, not a catalog call
        }
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return true;
}

/// --fn resolution: catalog name (optionally with rational parameters)
/// first, otherwise the expression grammar over an unbounded domain.
Fn1D resolve_fn(const std::string& text) {
    std::string name;
    std::vector<Rat> params;
    if (try_split_call(text, name, params)) {
        try {
            return catalog_lookup(name, params);
        } catch (const Error& e) {
            if (e.code() != Errc::UnknownName) throw;
        }
    }
    constexpr double inf = std::numeric_limits<double>::infinity();
    return to_fn(parse(text), Interval(-inf, inf));
}

Interval make_interval(const std::vector<std::string>& pair) {
    return Interval(parse_f64(pair[0]), parse_f64(pair[1]));
}

RatInterval make_interval_exact(const std::vector<std::string>& pair) {
    return RatInterval(parse_rat(pair[0]), parse_rat(pair[1]));
}

bool exact_mode(const std::string& mode) { return mode == "exact"; }

/// Writes the artifact to --output when given, else to the run's stream.
void deliver(const std::string& artifact, const std::string& out_path, std::ostream& out) {
    if (out_path.empty()) {
        out << artifact;
        return;
    }
    std::ofstream file(out_path, std::ios::binary);
    if (!file) throw Error(Errc::BadParam, "cannot open output file: " + out_path);
    file << artifact;
}

int exit_for(Errc code) {
    switch (code) {
        // The inputs were valid; the operation itself reported failure.
        case Errc::StepFloorReached:
        case Errc::NoInteriorExtremum:
        case Errc::TargetNotBracketed:
            return kExitCheckFailed;
        default:
            return kExitUsage;
    }
}

// ---- text renderers ------------------------------------------------------

template <class S>
std::string trace_text(const BisectionTrace<S>& t) {
    std::ostringstream o;
    o << "d = " << fmt(t.d) << '\n';
    o << "c = " << fmt(t.c) << '\n';
    o << "levels = " << t.levels << '\n';
    o << "rule = " << rule_name(t.rule) << '\n';
    o << "stationary = " << stationary_name(t.stationary) << '\n';
    if (t.deriv_at_c) o << "deriv_at_c = " << fmt(*t.deriv_at_c) << '\n';
    if (t.deriv_floor_ok) o << "deriv_floor_ok = " << (*t.deriv_floor_ok ? "true" : "false") << '\n';
    o << '\n' << trace_to_csv(t);
    return o.str();
}

template <class S>
std::string emit_trace(const BisectionTrace<S>& t, Format f) {
    switch (f) {
        case Format::Csv: return trace_to_csv(t);
        case Format::Json: return trace_to_json(t) + "\n";
        case Format::Text: break;
    }
    return trace_text(t);
}

template <class S>
std::string report_text(const IneqReport<S>& r) {
    std::ostringstream o;
    o << "holds = " << (r.holds ? "true" : "false") << '\n';
    o << "lhs = " << fmt(r.lhs) << '\n';
    o << "rhs = " << fmt(r.rhs) << '\n';
    o << "margin = " << fmt(r.margin) << '\n';
    if (r.counter_witness) o << "\ncounter_witness:\n" << trace_text(*r.counter_witness);
    return o.str();
}

template <class S>
std::string emit_report(const IneqReport<S>& r, Format f) {
    switch (f) {
        case Format::Csv: return report_to_csv(r);
        case Format::Json: return report_to_json(r) + "\n";
        case Format::Text: break;
    }
    return report_text(r);
}

std::string probe_text(const SlopeProbeReport& r) {
    std::ostringstream o;
    o << "estimate = " << fmt_double(r.estimate) << '\n';
    o << "dispersion = " << fmt_double(r.dispersion) << '\n';
    o << "verdict = " << verdict_name(r.verdict) << '\n';
    if (r.adversarial) {
        o << "adversarial_x = " << fmt_double(r.adversarial->x) << '\n';
        o << "adversarial_y = " << fmt_double(r.adversarial->y) << '\n';
        o << "adversarial_p = " << fmt_double(r.adversarial->p) << '\n';
    }
    o << '\n' << probe_to_csv(r);
    return o.str();
}

std::string emit_probe(const SlopeProbeReport& r, Format f) {
    switch (f) {
        case Format::Csv: return probe_to_csv(r);
        case Format::Json: return probe_to_json(r) + "\n";
        case Format::Text: break;
    }
    return probe_text(r);
}

std::string chain_text(const EpsilonChain& c) {
    std::ostringstream o;
    o << "bound_m = " << fmt_double(c.bound_m) << '\n';
    o << "epsilon = " << fmt_double(c.epsilon) << '\n';
    o << "knots = " << c.knots.size() << '\n';
    o << '\n' << chain_to_csv(c);
    return o.str();
}

std::string poly_to_string(const Poly& p) {
    std::ostringstream o;
    bool first = true;
    for (std::size_t i = 0; i < p.coeffs.size(); ++i) {
        const Rat& c = p.coeffs[i];
        if (c == 0) continue;
        if (!first) o << " + ";
        if (i == 0) {
            o << rat_to_string(c);
        } else {
            if (!(c == 1)) o << rat_to_string(c) << '*';
            o << 'x';
            if (i > 1) o << '^' << i;
        }
        first = false;
    }
    if (first) o << '0';
    return o.str();
}

Poly parse_coeffs(const std::string& text) {
    Poly p;
    p.coeffs.clear();
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = text.find(',', start);
        const std::string piece =
            comma == std::string::npos ? text.substr(start) : text.substr(start, comma - start);
        p.coeffs.push_back(parse_rat(trim(piece)));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return p;
}

// ---- subcommand handlers -------------------------------------------------

struct CommonOpts {
    std::string fn_text;
    std::vector<std::string> interval;
    std::string mode = "float";
    std::string format = "text";
    std::string out_path;
};

int run_witness(const CommonOpts& c, int levels, const std::string& rule_s, std::ostream& out) {
    const HalvingRule rule = rule_s == "max-delta" ? HalvingRule::MaxDelta : HalvingRule::LeftFirst;
    const Fn1D f = resolve_fn(c.fn_text);
    const Format fm = parse_format(c.format);
    if (exact_mode(c.mode)) {
        const auto t = fcd_witness_exact(f, make_interval_exact(c.interval), levels, rule);
        deliver(emit_trace(t, fm), c.out_path, out);
    } else {
        const auto t = fcd_witness(f, make_interval(c.interval), levels, rule);
        deliver(emit_trace(t, fm), c.out_path, out);
    }
    return kExitOk;
}

int run_lagrange(const CommonOpts& c, int levels, const std::string& rule_s,
                 const std::string& want_s, std::ostream& out) {
    const HalvingRule rule = rule_s == "max-delta" ? HalvingRule::MaxDelta : HalvingRule::LeftFirst;
    const Orientation want = want_s == "negative" ? Orientation::Negative : Orientation::Positive;
    const Fn1D f = resolve_fn(c.fn_text);
    const Format fm = parse_format(c.format);
    if (exact_mode(c.mode)) {
        const auto t = lagrange_witness_exact(f, make_interval_exact(c.interval), want, levels, rule);
        deliver(emit_trace(t, fm), c.out_path, out);
    } else {
        const auto t = lagrange_witness(f, make_interval(c.interval), want, levels, rule);
        deliver(emit_trace(t, fm), c.out_path, out);
    }
    return kExitOk;
}

template <class S>
std::string emit_refutation(const std::optional<BisectionTrace<S>>& t, Format f) {
    if (t) {
        if (f == Format::Json) {
            ordered_json j;
            j["refuted"] = true;
            j["trace"] = ordered_json::parse(trace_to_json(*t));
            return j.dump(2) + "\n";
        }
        if (f == Format::Csv) return trace_to_csv(*t);
        return "refuted = true\n\n" + trace_text(*t);
    }
    if (f == Format::Json) {
        ordered_json j;
        j["refuted"] = false;
        j["trace"] = nullptr;
        return j.dump(2) + "\n";
    }
    if (f == Format::Csv) return "refuted\nfalse\n";
    return "refuted = false\n";
}

int run_refute(const CommonOpts& c, const std::string& k_s, int levels, std::ostream& out) {
    const Fn1D f = resolve_fn(c.fn_text);
    const Format fm = parse_format(c.format);
    bool refuted = false;
    if (exact_mode(c.mode)) {
        const auto t = iaf_refute_exact(f, make_interval_exact(c.interval), parse_rat(k_s), levels);
        refuted = t.has_value();
        deliver(emit_refutation(t, fm), c.out_path, out);
    } else {
        const auto t = iaf_refute(f, make_interval(c.interval), parse_f64(k_s), levels);
        refuted = t.has_value();
        deliver(emit_refutation(t, fm), c.out_path, out);
    }
    return refuted ? kExitCheckFailed : kExitOk;
}

int run_chain(const CommonOpts& c, double bound_m, double epsilon, double min_step,
              std::ostream& out) {
    const Fn1D f = resolve_fn(c.fn_text);
    const EpsilonChain chain = epsilon_chain(f, make_interval(c.interval), bound_m, epsilon, min_step);
    std::string artifact;
    switch (parse_format(c.format)) {
        case Format::Csv: artifact = chain_to_csv(chain); break;
        case Format::Json: artifact = chain_to_json(chain) + "\n"; break;
        case Format::Text: artifact = chain_text(chain); break;
    }
    deliver(artifact, c.out_path, out);
    return kExitOk;
}

int run_mean_value(const CommonOpts& c, int grid, int refine, bool with_secant, std::ostream& out) {
    const Fn1D f = resolve_fn(c.fn_text);
    const Interval iv = make_interval(c.interval);
    const double point = with_secant ? mvt_witness(f, iv, grid, refine) : rolle_witness(f, iv, grid, refine);
    const double secant = with_secant ? slope(f, iv.lo, iv.hi) : 0.0;
    const bool has_dc = f.has_deriv();
    const double dc = has_dc ? deriv_at(f, point) : 0.0;
    std::string artifact;
    switch (parse_format(c.format)) {
        case Format::Csv: {
            std::ostringstream o;
            if (with_secant) {
                o << "c,secant,deriv_at_c\n" << fmt_double(point) << ',' << fmt_double(secant) << ',';
            } else {
                o << "c,deriv_at_c\n" << fmt_double(point) << ',';
            }
            if (has_dc) o << fmt_double(dc);
            o << '\n';
            artifact = o.str();
            break;
        }
        case Format::Json: {
            ordered_json j;
            j["c"] = point;
            if (with_secant) j["secant"] = secant;
            j["deriv_at_c"] = has_dc ? ordered_json(dc) : ordered_json(nullptr);
            artifact = j.dump(2) + "\n";
            break;
        }
        case Format::Text: {
            std::ostringstream o;
            o << "c = " << fmt_double(point) << '\n';
            if (with_secant) o << "secant = " << fmt_double(secant) << '\n';
            if (has_dc) o << "deriv_at_c = " << fmt_double(dc) << '\n';
            artifact = o.str();
            break;
        }
    }
    deliver(artifact, c.out_path, out);
    return kExitOk;
}

int run_darboux(const CommonOpts& c, double v, int bisect_levels, std::ostream& out) {
    const Fn1D f = resolve_fn(c.fn_text);
    const Interval iv = make_interval(c.interval);
    const double point = darboux_witness(f, iv, v, bisect_levels);
    const double dc = deriv_at(f, point);
    std::string artifact;
    switch (parse_format(c.format)) {
        case Format::Csv: {
            std::ostringstream o;
            o << "v,c,deriv_at_c\n"
              << fmt_double(v) << ',' << fmt_double(point) << ',' << fmt_double(dc) << '\n';
            artifact = o.str();
            break;
        }
        case Format::Json: {
            ordered_json j;
            j["v"] = v;
            j["c"] = point;
            j["deriv_at_c"] = dc;
            artifact = j.dump(2) + "\n";
            break;
        }
        case Format::Text: {
            std::ostringstream o;
            o << "v = " << fmt_double(v) << '\n'
              << "c = " << fmt_double(point) << '\n'
              << "deriv_at_c = " << fmt_double(dc) << '\n';
            artifact = o.str();
            break;
        }
    }
    deliver(artifact, c.out_path, out);
    return kExitOk;
}

template <class S>
std::string emit_pair_slope(const S& x, const S& y, const S& p, const std::optional<S>& bary_a,
                            const std::optional<S>& residual, Format f) {
    switch (f) {
        case Format::Csv: {
            std::ostringstream o;
            o << "x,y,slope";
            if (bary_a) o << ",bary_a,residual";
            o << '\n' << fmt(x) << ',' << fmt(y) << ',' << fmt(p);
            if (bary_a) o << ',' << fmt(*bary_a) << ',' << fmt(*residual);
            o << '\n';
            return o.str();
        }
        case Format::Json: {
            ordered_json j;
            j["x"] = jval(x);
            j["y"] = jval(y);
            j["slope"] = jval(p);
            if (bary_a) {
                j["bary_a"] = jval(*bary_a);
                j["residual"] = jval(*residual);
            }
            return j.dump(2) + "\n";
        }
        case Format::Text: break;
    }
    std::ostringstream o;
    o << "x = " << fmt(x) << '\n' << "y = " << fmt(y) << '\n' << "slope = " << fmt(p) << '\n';
    if (bary_a) {
        o << "bary_a = " << fmt(*bary_a) << '\n';
        o << "residual = " << fmt(*residual) << '\n';
    }
    return o.str();
}

int run_slope(const CommonOpts& c, const std::string& x_s, const std::string& y_s,
              const std::string& bary_s, const std::string& limit_s, double h0, int levels,
              bool have_counter, int counter_n, std::ostream& out) {
    const Format fm = parse_format(c.format);
    const bool have_pair = !x_s.empty() || !y_s.empty();
    const bool have_limit = !limit_s.empty();
    const int modes = (have_pair ? 1 : 0) + (have_limit ? 1 : 0) + (have_counter ? 1 : 0);
    if (modes != 1)
        throw Error(Errc::BadParam,
                    "pick exactly one of --x/--y, --limit-at, --counterexample");

    if (have_counter) {
        const CounterexamplePair pair = counterexample_slopes(counter_n);
        std::string artifact;
        switch (fm) {
            case Format::Csv: {
                std::ostringstream o;
                o << "n,x,y,p\n"
                  << counter_n << ',' << fmt_double(pair.x) << ',' << fmt_double(pair.y) << ','
                  << fmt_double(pair.p) << '\n';
                artifact = o.str();
                break;
            }
            case Format::Json: {
                ordered_json j;
                j["n"] = counter_n;
                j["x"] = pair.x;
                j["y"] = pair.y;
                j["p"] = pair.p;
                artifact = j.dump(2) + "\n";
                break;
            }
            case Format::Text: {
                std::ostringstream o;
                o << "n = " << counter_n << '\n'
                  << "x = " << fmt_double(pair.x) << '\n'
                  << "y = " << fmt_double(pair.y) << '\n'
                  << "p = " << fmt_double(pair.p) << '\n';
                artifact = o.str();
                break;
            }
        }
        deliver(artifact, c.out_path, out);
        return kExitOk;
    }

    if (c.fn_text.empty()) throw Error(Errc::BadParam, "--fn is required here");
    const Fn1D f = resolve_fn(c.fn_text);

    if (have_limit) {
        if (exact_mode(c.mode))
            throw Error(Errc::BadParam, "--mode exact applies only to the pair forms");
        const SlopeProbeReport r = two_sided_slope_limit(f, parse_f64(limit_s), h0, levels);
        deliver(emit_probe(r, fm), c.out_path, out);
        return kExitOk;
    }

    if (x_s.empty() || y_s.empty()) throw Error(Errc::BadParam, "--x and --y go together");
    if (exact_mode(c.mode)) {
        const Rat x = parse_rat(x_s), y = parse_rat(y_s);
        const Rat p = slope_exact(f, x, y);
        std::optional<Rat> a, res;
        if (!bary_s.empty()) {
            a = parse_rat(bary_s);
            res = barycentric_residual_exact(f, x, *a, y);
        }
        deliver(emit_pair_slope(x, y, p, a, res, fm), c.out_path, out);
    } else {
        const double x = parse_f64(x_s), y = parse_f64(y_s);
        const double p = slope(f, x, y);
        std::optional<double> a, res;
        if (!bary_s.empty()) {
            a = parse_f64(bary_s);
            res = barycentric_residual(f, x, *a, y);
        }
        deliver(emit_pair_slope(x, y, p, a, res, fm), c.out_path, out);
    }
    return kExitOk;
}

int run_strict_probe(const CommonOpts& c, double at, double h0, int levels, int samples,
                     const ProbeOptions& opts, std::ostream& out) {
    const Fn1D f = resolve_fn(c.fn_text);
    const SlopeProbeReport r = strict_deriv_probe(f, at, h0, levels, samples, opts);
    deliver(emit_probe(r, parse_format(c.format)), c.out_path, out);
    return kExitOk;
}

enum class CheckKind { Iaf, IafPrime, Iafg, Maja };

int run_check(const CommonOpts& c, CheckKind kind, const std::string& k_s, const std::string& m_s,
              const std::string& M_s, const std::string& g_text, std::ostream& out) {
    const Fn1D f = resolve_fn(c.fn_text);
    const Format fm = parse_format(c.format);
    bool holds = false;
    std::string artifact;
    if (exact_mode(c.mode)) {
        const RatInterval iv = make_interval_exact(c.interval);
        IneqReport<Rat> r;
        switch (kind) {
            case CheckKind::Iaf: r = check_iaf_exact(f, iv, parse_rat(k_s)); break;
            case CheckKind::IafPrime:
                r = check_iafprime_exact(f, iv, parse_rat(m_s), parse_rat(M_s));
                break;
            case CheckKind::Iafg: r = check_iafg_exact(f, resolve_fn(g_text), iv); break;
            case CheckKind::Maja: r = check_maja_exact(f, iv, parse_rat(M_s)); break;
        }
        holds = r.holds;
        artifact = emit_report(r, fm);
    } else {
        const Interval iv = make_interval(c.interval);
        IneqReport<double> r;
        switch (kind) {
            case CheckKind::Iaf: r = check_iaf(f, iv, parse_f64(k_s)); break;
            case CheckKind::IafPrime:
                r = check_iafprime(f, iv, parse_f64(m_s), parse_f64(M_s));
                break;
            case CheckKind::Iafg: r = check_iafg(f, resolve_fn(g_text), iv); break;
            case CheckKind::Maja: r = check_maja(f, iv, parse_f64(M_s)); break;
        }
        holds = r.holds;
        artifact = emit_report(r, fm);
    }
    deliver(artifact, c.out_path, out);
    return holds ? kExitOk : kExitCheckFailed;
}

int run_staircase(double tol, int grid, const std::string& format, const std::string& out_path,
                  std::ostream& out) {
    if (grid < 2) throw Error(Errc::BadParam, "--grid must be at least 2");
    const int n = staircase_level_for_tol(tol);
    std::vector<double> xs(static_cast<std::size_t>(grid));
    std::vector<double> fs(static_cast<std::size_t>(grid));
    for (int i = 0; i < grid; ++i) {
        xs[static_cast<std::size_t>(i)] = static_cast<double>(i) / (grid - 1);
        fs[static_cast<std::size_t>(i)] = staircase_eval(n, xs[static_cast<std::size_t>(i)]);
    }
    std::string artifact;
    switch (parse_format(format)) {
        case Format::Csv: {
            std::ostringstream o;
            o << "x,f\n";
            for (int i = 0; i < grid; ++i)
                o << fmt_double(xs[static_cast<std::size_t>(i)]) << ','
                  << fmt_double(fs[static_cast<std::size_t>(i)]) << '\n';
            artifact = o.str();
            break;
        }
        case Format::Json: {
            ordered_json j;
            j["n"] = n;
            j["tol"] = tol;
            j["grid"] = grid;
            j["x"] = xs;
            j["f"] = fs;
            artifact = j.dump(2) + "\n";
            break;
        }
        case Format::Text: {
            std::ostringstream o;
            o << "n = " << n << '\n' << "grid = " << grid << '\n' << '\n' << "x,f\n";
            for (int i = 0; i < grid; ++i)
                o << fmt_double(xs[static_cast<std::size_t>(i)]) << ','
                  << fmt_double(fs[static_cast<std::size_t>(i)]) << '\n';
            artifact = o.str();
            break;
        }
    }
    deliver(artifact, out_path, out);
    return kExitOk;
}

int run_cantor_intervals(int n, const std::string& format, const std::string& out_path,
                         std::ostream& out) {
    const StaircaseLevel level = kn_intervals(n);
    std::string artifact;
    switch (parse_format(format)) {
        case Format::Csv: artifact = level_to_csv(level); break;
        case Format::Json: artifact = level_to_json(level) + "\n"; break;
        case Format::Text: {
            std::ostringstream o;
            o << "n = " << level.n << '\n'
              << "intervals = " << level.intervals.size() << '\n'
              << "plateaus = " << level.plateaus.size() << '\n'
              << '\n' << level_to_csv(level);
            artifact = o.str();
            break;
        }
    }
    deliver(artifact, out_path, out);
    return kExitOk;
}

int run_polyop(int n, const std::string& coeffs_s, const std::string& format,
               const std::string& out_path, std::ostream& out) {
    const Format fm = parse_format(format);
    std::string artifact;
    if (coeffs_s.empty()) {
        const auto matrix = d_matrix(n);
        const int rank = matrix_rank(matrix);
        const auto kernel = kernel_basis(n);
        switch (fm) {
            case Format::Csv: {
                std::ostringstream o;
                o << "i,j,value\n";
                for (std::size_t i = 0; i < matrix.size(); ++i)
                    for (std::size_t j = 0; j < matrix[i].size(); ++j)
                        o << i << ',' << j << ',' << rat_to_string(matrix[i][j]) << '\n';
                artifact = o.str();
                break;
            }
            case Format::Json: {
                ordered_json j;
                j["n"] = n;
                j["rank"] = rank;
                j["nullity"] = n + 1 - rank;
                ordered_json ker = ordered_json::array();
                for (const auto& p : kernel) ker.push_back(poly_to_string(p));
                j["kernel"] = std::move(ker);
                ordered_json rows = ordered_json::array();
                for (const auto& row : matrix) {
                    ordered_json r = ordered_json::array();
                    for (const auto& v : row) r.push_back(rat_to_string(v));
                    rows.push_back(std::move(r));
                }
                j["matrix"] = std::move(rows);
                artifact = j.dump(2) + "\n";
                break;
            }
            case Format::Text: {
                std::ostringstream o;
                o << "n = " << n << '\n'
                  << "rank = " << rank << '\n'
                  << "nullity = " << (n + 1 - rank) << '\n';
                o << "kernel =";
                for (const auto& p : kernel) o << ' ' << poly_to_string(p);
                o << '\n';
                artifact = o.str();
                break;
            }
        }
    } else {
        const Poly p = parse_coeffs(coeffs_s);
        const Poly dp = poly_derivative(p);
        const PrimitiveResult res = has_primitive(p, n);
        switch (fm) {
            case Format::Csv: {
                std::ostringstream o;
                o << "i,p_coeff,primitive_coeff\n";
                const std::size_t rows =
                    std::max(p.coeffs.size(), res.primitive ? res.primitive->coeffs.size() : 0);
                for (std::size_t i = 0; i < rows; ++i) {
                    o << i << ',';
                    if (i < p.coeffs.size()) o << rat_to_string(p.coeffs[i]);
                    o << ',';
                    if (res.primitive && i < res.primitive->coeffs.size())
                        o << rat_to_string(res.primitive->coeffs[i]);
                    o << '\n';
                }
                artifact = o.str();
                break;
            }
            case Format::Json: {
                ordered_json j;
                j["n"] = n;
                ordered_json pc = ordered_json::array();
                for (const auto& v : p.coeffs) pc.push_back(rat_to_string(v));
                j["p"] = std::move(pc);
                ordered_json dc = ordered_json::array();
                for (const auto& v : dp.coeffs) dc.push_back(rat_to_string(v));
                j["derivative"] = std::move(dc);
                j["has_primitive"] = res.has;
                if (res.primitive) {
                    ordered_json qc = ordered_json::array();
                    for (const auto& v : res.primitive->coeffs) qc.push_back(rat_to_string(v));
                    j["primitive"] = std::move(qc);
                } else {
                    j["primitive"] = nullptr;
                }
                artifact = j.dump(2) + "\n";
                break;
            }
            case Format::Text: {
                std::ostringstream o;
                o << "n = " << n << '\n'
                  << "p = " << poly_to_string(p) << '\n'
                  << "derivative = " << poly_to_string(dp) << '\n'
                  << "has_primitive = " << (res.has ? "true" : "false") << '\n';
                if (res.primitive) o << "primitive = " << poly_to_string(*res.primitive) << '\n';
                artifact = o.str();
                break;
            }
        }
    }
    deliver(artifact, out_path, out);
    return kExitOk;
}

int run_graph(bool want_dot, bool want_classes, const std::vector<std::string>& implies_args,
              const std::string& format, const std::string& out_path, std::ostream& out) {
    const int modes = (want_dot ? 1 : 0) + (want_classes ? 1 : 0) + (implies_args.empty() ? 0 : 1);
    if (modes > 1) throw Error(Errc::BadParam, "pick one of --dot, --classes, --implies");
    const TheoremGraph g = build_graph();
    std::string artifact;
    if (!implies_args.empty()) {
        const Statement from = parse_statement(implies_args[0]);
        const Statement to = parse_statement(implies_args[1]);
        const bool yes = g.implies(from, to);
        switch (parse_format(format)) {
            case Format::Csv: {
                std::ostringstream o;
                o << "from,to,implies\n"
                  << statement_name(from) << ',' << statement_name(to) << ','
                  << (yes ? "true" : "false") << '\n';
                artifact = o.str();
                break;
            }
            case Format::Json: {
                ordered_json j;
                j["from"] = statement_name(from);
                j["to"] = statement_name(to);
                j["implies"] = yes;
                artifact = j.dump(2) + "\n";
                break;
            }
            case Format::Text: {
                std::ostringstream o;
                o << "from = " << statement_name(from) << '\n'
                  << "to = " << statement_name(to) << '\n'
                  << "implies = " << (yes ? "true" : "false") << '\n';
                artifact = o.str();
                break;
            }
        }
    } else if (want_classes) {
        const auto classes = g.equivalence_classes();
        switch (parse_format(format)) {
            case Format::Csv: {
                std::ostringstream o;
                o << "class,member\n";
                for (std::size_t i = 0; i < classes.size(); ++i)
                    for (Statement s : classes[i]) o << i << ',' << statement_name(s) << '\n';
                artifact = o.str();
                break;
            }
            case Format::Json: {
                ordered_json arr = ordered_json::array();
                for (const auto& cls : classes) {
                    ordered_json one = ordered_json::array();
                    for (Statement s : cls) one.push_back(statement_name(s));
                    arr.push_back(std::move(one));
                }
                artifact = arr.dump(2) + "\n";
                break;
            }
            case Format::Text: {
                std::ostringstream o;
                for (const auto& cls : classes) {
                    for (std::size_t i = 0; i < cls.size(); ++i)
                        o << (i ? " " : "") << statement_name(cls[i]);
                    o << '\n';
                }
                artifact = o.str();
                break;
            }
        }
    } else {
        // DOT is its own grammar; --format does not reinterpret it.
        artifact = g.to_dot();
    }
    deliver(artifact, out_path, out);
    return kExitOk;
}

void add_format_output(CLI::App* sub, CommonOpts& c) {
    sub->add_option("--format", c.format, "artifact format")
        ->check(CLI::IsMember({"text", "csv", "json"}))
        ->capture_default_str();
    sub->add_option("--output", c.out_path, "write the artifact to this file");
}

void add_mode(CLI::App* sub, CommonOpts& c) {
    sub->add_option("--mode", c.mode, "float or exact rational arithmetic")
        ->check(CLI::IsMember({"float", "exact"}))
        ->capture_default_str();
}

void add_fn_interval(CLI::App* sub, CommonOpts& c) {
    sub->add_option("--fn", c.fn_text, "catalog name, name(params), or expression")->required();
    sub->add_option("--interval", c.interval, "interval endpoints lo hi")
        ->expected(2)
        ->required();
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"finite-increment toolkit: dichotomy witnesses, slope probes,\n"
                 "endpoint inequalities, the devil's staircase, and the implication graph"};
    app.name("incr");
    app.require_subcommand(1);

    CommonOpts c;
    int levels = 20;
    std::string rule_s = "left-first";
    std::string want_s = "positive";
    std::string k_s, m_s, M_s, g_text;
    double bound_m = 0.0, epsilon = 0.0, min_step = 1e-9;
    int grid = 1001, refine = 60;
    double v = 0.0;
    int bisect_levels = 60;
    std::string x_s, y_s, bary_s, limit_s;
    double h0 = 0.1;
    int probe_levels = 8, samples = 64;
    int counter_n = 0;
    ProbeOptions popts;
    double at = 0.0;
    double tol = 1e-6;
    int stair_grid = 1000;
    int cantor_n = 0;
    int poly_n = 0;
    std::string coeffs_s;
    bool want_dot = false, want_classes = false;
    std::vector<std::string> implies_args;

    CLI::App* witness = app.add_subcommand("witness", "dichotomy trace for a nonconstant function");
    add_fn_interval(witness, c);
    witness->add_option("--levels", levels, "dichotomy depth")->capture_default_str();
    witness->add_option("--rule", rule_s, "halving rule")
        ->check(CLI::IsMember({"left-first", "max-delta"}))
        ->capture_default_str();
    add_mode(witness, c);
    add_format_output(witness, c);

    CLI::App* lagrange = app.add_subcommand("lagrange", "signed dichotomy trace");
    add_fn_interval(lagrange, c);
    lagrange->add_option("--levels", levels, "dichotomy depth")->capture_default_str();
    lagrange->add_option("--rule", rule_s, "halving rule")
        ->check(CLI::IsMember({"left-first", "max-delta"}))
        ->capture_default_str();
    lagrange->add_option("--want", want_s, "orientation of the increment")
        ->check(CLI::IsMember({"positive", "negative"}))
        ->capture_default_str();
    add_mode(lagrange, c);
    add_format_output(lagrange, c);

    CLI::App* refute = app.add_subcommand("refute-iaf", "refute |f(b)-f(a)| <= k(b-a) by endpoints");
    add_fn_interval(refute, c);
    refute->add_option("--k", k_s, "slope bound k >= 0")->required();
    refute->add_option("--levels", levels, "dichotomy depth")->capture_default_str();
    add_mode(refute, c);
    add_format_output(refute, c);

    CLI::App* chain = app.add_subcommand("chain", "greedy epsilon-chain under a slope cap");
    add_fn_interval(chain, c);
    chain->add_option("--bound-m", bound_m, "slope cap M")->required();
    chain->add_option("--epsilon", epsilon, "slack above the cap")->required();
    chain->add_option("--min-step", min_step, "smallest admissible step")->capture_default_str();
    add_format_output(chain, c);

    CLI::App* rolle = app.add_subcommand("rolle", "interior critical point, equal endpoints");
    add_fn_interval(rolle, c);
    rolle->add_option("--grid", grid, "sampling grid size")->capture_default_str();
    rolle->add_option("--refine", refine, "ternary refinement levels")->capture_default_str();
    add_format_output(rolle, c);

    CLI::App* mvt = app.add_subcommand("mvt", "mean-value point for the secant slope");
    add_fn_interval(mvt, c);
    mvt->add_option("--grid", grid, "sampling grid size")->capture_default_str();
    mvt->add_option("--refine", refine, "ternary refinement levels")->capture_default_str();
    add_format_output(mvt, c);

    CLI::App* darboux = app.add_subcommand("darboux", "intermediate-value point of the derivative");
    add_fn_interval(darboux, c);
    darboux->add_option("--v", v, "target derivative value")->required();
    darboux->add_option("--bisect-levels", bisect_levels, "chord-slope bisection depth")
        ->capture_default_str();
    add_format_output(darboux, c);

    CLI::App* slope_cmd = app.add_subcommand("slope", "slopes: pair, barycentric, limit, or the classical counterexample");
    slope_cmd->add_option("--fn", c.fn_text, "catalog name, name(params), or expression");
    slope_cmd->add_option("--x", x_s, "left point of the pair");
    slope_cmd->add_option("--y", y_s, "right point of the pair");
    slope_cmd->add_option("--bary-a", bary_s, "interior point for the barycentric identity");
    slope_cmd->add_option("--limit-at", limit_s, "probe straddling slopes at this point");
    slope_cmd->add_option("--h0", h0, "initial window half-width")->capture_default_str();
    slope_cmd->add_option("--levels", probe_levels, "window levels")->capture_default_str();
    auto* counter_opt =
        slope_cmd->add_option("--counterexample", counter_n, "index n of the oscillation pair");
    add_mode(slope_cmd, c);
    add_format_output(slope_cmd, c);

    CLI::App* probe = app.add_subcommand("strict-probe", "two-variable slope probe for strict differentiability");
    probe->add_option("--fn", c.fn_text, "catalog name, name(params), or expression")->required();
    probe->add_option("--at", at, "probe point")->required();
    probe->add_option("--h0", h0, "initial window half-width")->capture_default_str();
    probe->add_option("--levels", probe_levels, "window levels")->capture_default_str();
    probe->add_option("--samples", samples, "anchor points per level")->capture_default_str();
    probe->add_option("--seed", popts.seed, "jitter seed")->capture_default_str();
    probe->add_option("--coarse-tol", popts.coarse_tol, "NotStrict threshold")->capture_default_str();
    probe->add_option("--fine-tol", popts.fine_tol, "ConsistentWithStrict threshold")
        ->capture_default_str();
    add_format_output(probe, c);

    CLI::App* ciaf = app.add_subcommand("check-iaf", "check |f(hi)-f(lo)| <= k*(hi-lo)");
    add_fn_interval(ciaf, c);
    ciaf->add_option("--k", k_s, "slope bound k >= 0")->required();
    add_mode(ciaf, c);
    add_format_output(ciaf, c);

    CLI::App* ciafp = app.add_subcommand("check-iafp", "check m*(hi-lo) <= f(hi)-f(lo) <= M*(hi-lo)");
    add_fn_interval(ciafp, c);
    ciafp->add_option("--m", m_s, "lower slope bound")->required();
    ciafp->add_option("--M", M_s, "upper slope bound")->required();
    add_mode(ciafp, c);
    add_format_output(ciafp, c);

    CLI::App* ciafg = app.add_subcommand("check-iafg", "check |f(hi)-f(lo)| <= g(hi)-g(lo)");
    add_fn_interval(ciafg, c);
    ciafg->add_option("--g", g_text, "dominating function")->required();
    add_mode(ciafg, c);
    add_format_output(ciafg, c);

    CLI::App* cmaja = app.add_subcommand("check-maja", "check f(hi)-f(lo) <= M*(hi-lo)");
    add_fn_interval(cmaja, c);
    cmaja->add_option("--M", M_s, "upper slope bound")->required();
    add_mode(cmaja, c);
    add_format_output(cmaja, c);

    CLI::App* stair = app.add_subcommand("staircase", "uniform approximant of the devil's staircase");
    stair->add_option("--tol", tol, "uniform tolerance, picks the level")->required();
    stair->add_option("--grid", stair_grid, "sample count over [0,1]")->capture_default_str();
    add_format_output(stair, c);

    CLI::App* cantor = app.add_subcommand("cantor-intervals", "level-n intervals and plateaus");
    cantor->add_option("--n", cantor_n, "construction level")->required();
    add_format_output(cantor, c);

    CLI::App* poly = app.add_subcommand("polyop", "derivative operator on polynomials of degree <= n");
    poly->add_option("--n", poly_n, "space degree bound")->required();
    poly->add_option("--coeffs", coeffs_s, "comma-separated rational coefficients, lowest first");
    add_format_output(poly, c);

    CLI::App* graph = app.add_subcommand("graph", "implication graph between the nine statements");
    graph->add_flag("--dot", want_dot, "emit the DOT digraph (default)");
    graph->add_flag("--classes", want_classes, "emit the equivalence classes");
    graph->add_option("--implies", implies_args, "query reachability FROM TO")->expected(2);
    add_format_output(graph, c);

    std::vector<const char*> argv;
    argv.reserve(args.size() + 1);
    argv.push_back("incr");
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return e.get_exit_code() == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (witness->parsed()) return run_witness(c, levels, rule_s, out);
        if (lagrange->parsed()) return run_lagrange(c, levels, rule_s, want_s, out);
        if (refute->parsed()) return run_refute(c, k_s, levels, out);
        if (chain->parsed()) return run_chain(c, bound_m, epsilon, min_step, out);
        if (rolle->parsed()) return run_mean_value(c, grid, refine, false, out);
        if (mvt->parsed()) return run_mean_value(c, grid, refine, true, out);
        if (darboux->parsed()) return run_darboux(c, v, bisect_levels, out);
        if (slope_cmd->parsed())
            return run_slope(c, x_s, y_s, bary_s, limit_s, h0, probe_levels,
                             counter_opt->count() > 0, counter_n, out);
        if (probe->parsed()) return run_strict_probe(c, at, h0, probe_levels, samples, popts, out);
        if (ciaf->parsed()) return run_check(c, CheckKind::Iaf, k_s, m_s, M_s, g_text, out);
        if (ciafp->parsed()) return run_check(c, CheckKind::IafPrime, k_s, m_s, M_s, g_text, out);
        if (ciafg->parsed()) return run_check(c, CheckKind::Iafg, k_s, m_s, M_s, g_text, out);
        if (cmaja->parsed()) return run_check(c, CheckKind::Maja, k_s, m_s, M_s, g_text, out);
        if (stair->parsed()) return run_staircase(tol, stair_grid, c.format, c.out_path, out);
        if (cantor->parsed()) return run_cantor_intervals(cantor_n, c.format, c.out_path, out);
        if (poly->parsed()) return run_polyop(poly_n, coeffs_s, c.format, c.out_path, out);
        if (graph->parsed())
            return run_graph(want_dot, want_classes, implies_args, c.format, c.out_path, out);
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        if (e.code() == Errc::StepFloorReached)
            err << "stuck near t = " << fmt_double(e.where()) << '\n';
        return exit_for(e.code());
    }
    err << "error: no subcommand dispatched\n";
    return kExitUsage;
}

} // namespace incr::cli
