#include "incr/serialize.hpp"

#include <sstream>

#include "json.hpp"

namespace incr {

const char* rule_name(HalvingRule r) {
    return r == HalvingRule::LeftFirst ? "left_first" : "max_delta";
}

const char* stationary_name(Stationary s) {
    switch (s) {
        case Stationary::LeftStationary: return "left";
        case Stationary::RightStationary: return "right";
        case Stationary::None: break;
    }
    return "none";
}

namespace {

using ordered_json = nlohmann::ordered_json;

std::string cell(double v) { return fmt_double(v); }
std::string cell(const Rat& v) { return rat_to_string(v); }

ordered_json jval(double v) { return v; }
ordered_json jval(const Rat& v) { return rat_to_string(v); }

template <class S>
std::string trace_csv_impl(const BisectionTrace<S>& t) {
    std::ostringstream out;
    out << "n,a,b,f_a,f_b,slope\n";
    for (std::size_t i = 0; i < t.a_seq.size(); ++i)
        out << i << ',' << cell(t.a_seq[i]) << ',' << cell(t.b_seq[i]) << ',' << cell(t.f_a[i])
            << ',' << cell(t.f_b[i]) << ',' << cell(t.slopes[i]) << '\n';
    return out.str();
}

template <class S>
ordered_json trace_json_impl(const BisectionTrace<S>& t) {
    ordered_json j;
    j["d"] = jval(t.d);
    j["c"] = jval(t.c);
    j["levels"] = t.levels;
    j["rule"] = rule_name(t.rule);
    j["stationary"] = stationary_name(t.stationary);
    j["deriv_at_c"] = t.deriv_at_c ? jval(*t.deriv_at_c) : ordered_json(nullptr);
    j["deriv_floor_ok"] = t.deriv_floor_ok ? ordered_json(*t.deriv_floor_ok) : ordered_json(nullptr);
    ordered_json rows = ordered_json::array();
    for (std::size_t i = 0; i < t.a_seq.size(); ++i) {
        ordered_json row;
        row["n"] = i;
        row["a"] = jval(t.a_seq[i]);
        row["b"] = jval(t.b_seq[i]);
        row["f_a"] = jval(t.f_a[i]);
        row["f_b"] = jval(t.f_b[i]);
        row["slope"] = jval(t.slopes[i]);
        rows.push_back(std::move(row));
    }
    j["rows"] = std::move(rows);
    return j;
}

template <class S>
ordered_json report_json_impl(const IneqReport<S>& r) {
    ordered_json j;
    j["holds"] = r.holds;
    j["lhs"] = jval(r.lhs);
    j["rhs"] = jval(r.rhs);
    j["margin"] = jval(r.margin);
    j["counter_witness"] =
        r.counter_witness ? trace_json_impl(*r.counter_witness) : ordered_json(nullptr);
    return j;
}

template <class S>
std::string report_csv_impl(const IneqReport<S>& r) {
    std::ostringstream out;
    out << "holds,lhs,rhs,margin\n";
    out << (r.holds ? "true" : "false") << ',' << cell(r.lhs) << ',' << cell(r.rhs) << ','
        << cell(r.margin) << '\n';
    return out.str();
}

} // namespace

std::string trace_to_csv(const BisectionTrace<double>& t) { return trace_csv_impl(t); }
std::string trace_to_csv(const BisectionTrace<Rat>& t) { return trace_csv_impl(t); }
std::string trace_to_json(const BisectionTrace<double>& t) { return trace_json_impl(t).dump(2); }
std::string trace_to_json(const BisectionTrace<Rat>& t) { return trace_json_impl(t).dump(2); }

std::string chain_to_csv(const EpsilonChain& c) {
    std::ostringstream out;
    out << "i,from,to,slope\n";
    for (std::size_t i = 0; i + 1 < c.knots.size(); ++i)
        out << i << ',' << fmt_double(c.knots[i]) << ',' << fmt_double(c.knots[i + 1]) << ','
            << fmt_double(c.step_slopes[i]) << '\n';
    return out.str();
}

std::string chain_to_json(const EpsilonChain& c) {
    ordered_json j;
    j["bound_m"] = c.bound_m;
    j["epsilon"] = c.epsilon;
    j["knots"] = c.knots;
    j["step_slopes"] = c.step_slopes;
    return j.dump(2);
}

std::string report_to_csv(const IneqReport<double>& r) { return report_csv_impl(r); }
std::string report_to_csv(const IneqReport<Rat>& r) { return report_csv_impl(r); }
std::string report_to_json(const IneqReport<double>& r) { return report_json_impl(r).dump(2); }
std::string report_to_json(const IneqReport<Rat>& r) { return report_json_impl(r).dump(2); }

const char* verdict_name(ProbeVerdict v) {
    switch (v) {
        case ProbeVerdict::ConsistentWithStrict: return "consistent_with_strict";
        case ProbeVerdict::NotStrict: return "not_strict";
        case ProbeVerdict::Inconclusive: break;
    }
    return "inconclusive";
}

std::string probe_to_csv(const SlopeProbeReport& r) {
    std::ostringstream out;
    out << "level,dispersion\n";
    for (std::size_t i = 0; i < r.level_dispersion.size(); ++i)
        out << i << ',' << fmt_double(r.level_dispersion[i]) << '\n';
    return out.str();
}

std::string probe_to_json(const SlopeProbeReport& r) {
    ordered_json j;
    j["estimate"] = r.estimate;
    j["dispersion"] = r.dispersion;
    j["verdict"] = verdict_name(r.verdict);
    if (r.adversarial) {
        ordered_json adv;
        adv["x"] = r.adversarial->x;
        adv["y"] = r.adversarial->y;
        adv["p"] = r.adversarial->p;
        j["adversarial"] = std::move(adv);
    } else {
        j["adversarial"] = nullptr;
    }
    j["level_dispersion"] = r.level_dispersion;
    return j.dump(2);
}

std::string level_to_csv(const StaircaseLevel& level) {
    std::ostringstream out;
    out << "kind,k,lo,hi,value\n";
    for (std::size_t k = 0; k < level.intervals.size(); ++k)
        out << "interval," << k << ',' << rat_to_string(level.intervals[k].lo) << ','
            << rat_to_string(level.intervals[k].hi) << ",\n";
    for (std::size_t k = 0; k < level.plateaus.size(); ++k)
        out << "plateau," << k << ',' << rat_to_string(level.plateaus[k].first.lo) << ','
            << rat_to_string(level.plateaus[k].first.hi) << ','
            << rat_to_string(level.plateaus[k].second) << '\n';
    return out.str();
}

std::string level_to_json(const StaircaseLevel& level) {
    ordered_json j;
    j["n"] = level.n;
    ordered_json ivs = ordered_json::array();
    for (const auto& iv : level.intervals) {
        ordered_json o;
        o["lo"] = rat_to_string(iv.lo);
        o["hi"] = rat_to_string(iv.hi);
        ivs.push_back(std::move(o));
    }
    j["intervals"] = std::move(ivs);
    ordered_json ps = ordered_json::array();
    for (const auto& [gap, value] : level.plateaus) {
        ordered_json o;
        o["lo"] = rat_to_string(gap.lo);
        o["hi"] = rat_to_string(gap.hi);
        o["value"] = rat_to_string(value);
        ps.push_back(std::move(o));
    }
    j["plateaus"] = std::move(ps);
    return j.dump(2);
}

} // namespace incr
