#pragma once

#include <optional>
#include <string>
#include <vector>

#include "svcbond/bond_fabric.hpp"
#include "svcbond/distances.hpp"
#include "svcbond/ecosystem_sim.hpp"
#include "svcbond/smarthouse.hpp"
#include "svcbond/types.hpp"

namespace svcbond::io {

// --- time and SLO flag parsing ----------------------------------------------

// "900", "900s", "15m", "1h", "24h", "2d" -> seconds.
double parse_duration(const std::string& text);

// "19:00" or "19:00:30" -> seconds since midnight.
double parse_clock(const std::string& text);

// Clock when the text contains ':', duration otherwise.
double parse_time_point(const std::string& text);

// "19:00-22:00" or "100-250" -> half-open interval in seconds.
Interval parse_time_interval(const std::string& text);

// Comma-separated list of intervals.
std::vector<Interval> parse_time_intervals(const std::string& text);

// "ds=25mbps,us=3mbps" with an optional ":lower" orientation suffix per metric.
SloTuple parse_slo(const std::string& text);

// --- file formats -------------------------------------------------------

struct ParsedSignal {
    Signal signal;
    std::vector<MetricSpec> schema;  // names/units/orientations; values unused
};

// signal,v1 / metrics,... / horizon,a,b / segment,a,b,v... (or lsegment with x,y)
ParsedSignal parse_signal(const std::string& text);

// Line-delimited trace: header `timestamp,<m1>,...[,x,y]`, one sample per row.
// Header metric names must match the slo.
Trace parse_trace(const std::string& text, const SloTuple& slo);
std::string write_trace(const Trace& trace);

// `horizon,<H>` header then `start,end` bonded intervals.
BondSchedule parse_schedule(const std::string& text);
std::string write_schedule(const BondSchedule& schedule);

// `entity,<id>` and `bond,<a>,<b>` lines.
Molecule parse_molecule(const std::string& text);

struct ParsedScenario {
    std::string name;
    std::optional<Scenario> ecosystem;
    std::optional<SmartHouseConfig> smarthouse;
};

// Structured scenario config; `type,ecosystem` or `type,smarthouse` selects
// the flavour.
ParsedScenario parse_scenario(const std::string& text);

// --- emission ----------------------------------------------------------------

// Flat JSON object metric -> fraction with 12 significant digits.
std::string distance_json(const DistanceTuple& tuple);

std::string ecosystem_summary_json(const ParsedScenario& scenario, const SimReport& report);
std::string ecosystem_metrics_csv(const SimReport& report);
std::string smarthouse_summary_json(const ParsedScenario& scenario,
                                    const SmartHouseReport& report);
std::string smarthouse_metrics_csv(const SmartHouseReport& report);

// --- small file helpers -------------------------------------------------------

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace svcbond::io
