#pragma once

#include <string>

#include "incr/cantor.hpp"
#include "incr/inequalities.hpp"
#include "incr/slope.hpp"
#include "incr/witness.hpp"

namespace incr {

/**
 * Deterministic text serialization: CSV with fixed header and column order
 * (n,a,b,f_a,f_b,slope for traces), JSON with fixed key order. Doubles print
 * as %.17g in CSV and as shortest round-trip numbers in JSON; rationals as
 * p/q in both. Reruns are byte-identical.
 */

std::string trace_to_csv(const BisectionTrace<double>& t);
std::string trace_to_csv(const BisectionTrace<Rat>& t);
std::string trace_to_json(const BisectionTrace<double>& t);
std::string trace_to_json(const BisectionTrace<Rat>& t);

std::string chain_to_csv(const EpsilonChain& c);
std::string chain_to_json(const EpsilonChain& c);

std::string report_to_csv(const IneqReport<double>& r);
std::string report_to_csv(const IneqReport<Rat>& r);
std::string report_to_json(const IneqReport<double>& r);
std::string report_to_json(const IneqReport<Rat>& r);

std::string probe_to_csv(const SlopeProbeReport& r);
std::string probe_to_json(const SlopeProbeReport& r);
const char* verdict_name(ProbeVerdict v);
const char* rule_name(HalvingRule r);
const char* stationary_name(Stationary s);

std::string level_to_csv(const StaircaseLevel& level);
std::string level_to_json(const StaircaseLevel& level);

} // namespace incr
