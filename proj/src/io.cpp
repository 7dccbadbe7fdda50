#include "svcbond/io.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

namespace svcbond::io {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

double parse_number(const std::string& text, int line = 0) {
    const std::string t = trim(text);
    try {
        std::size_t used = 0;
        const double v = std::stod(t, &used);
        if (used != t.size()) throw std::invalid_argument(t);
        return v;
    } catch (const std::exception&) {
        if (line > 0) throw ParseError(line, "expected a number, got '" + t + "'");
        throw InvalidInputError("expected a number, got '" + t + "'");
    }
}

long long parse_integer(const std::string& text, int line) {
    const double v = parse_number(text, line);
    const auto n = static_cast<long long>(v);
    if (static_cast<double>(n) != v) throw ParseError(line, "expected an integer, got '" +
                                                                trim(text) + "'");
    return n;
}

// key=value tail fields of a config line
std::pair<std::string, std::string> key_value(const std::string& field, int line) {
    const auto eq = field.find('=');
    if (eq == std::string::npos)
        throw ParseError(line, "expected key=value, got '" + field + "'");
    return {trim(field.substr(0, eq)), trim(field.substr(eq + 1))};
}

bool parse_bool(const std::string& text, int line) {
    const std::string t = trim(text);
    if (t == "true" || t == "1" || t == "yes") return true;
    if (t == "false" || t == "0" || t == "no") return false;
    throw ParseError(line, "expected a boolean, got '" + t + "'");
}

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return std::string(buf);
}

std::string fmt12(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return std::string(buf);
}

std::string json_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    return out;
}

}  // namespace

double parse_duration(const std::string& text) {
    const std::string t = trim(text);
    detail::require(!t.empty(), "empty duration");
    std::size_t suffix = t.size();
    while (suffix > 0 && std::isalpha(static_cast<unsigned char>(t[suffix - 1]))) --suffix;
    const std::string unit = t.substr(suffix);
    const double value = parse_number(t.substr(0, suffix));
    double scale = 1.0;
    if (unit.empty() || unit == "s") scale = 1.0;
    else if (unit == "m" || unit == "min") scale = 60.0;
    else if (unit == "h") scale = 3600.0;
    else if (unit == "d") scale = 86400.0;
    else throw InvalidInputError("unknown duration unit '" + unit + "'");
    return value * scale;
}

double parse_clock(const std::string& text) {
    const auto parts = split(trim(text), ':');
    detail::require(parts.size() == 2 || parts.size() == 3,
                    "clock time must look like HH:MM or HH:MM:SS");
    const double h = parse_number(parts[0]);
    const double m = parse_number(parts[1]);
    const double s = parts.size() == 3 ? parse_number(parts[2]) : 0.0;
    detail::require(h >= 0 && h <= 24 && m >= 0 && m < 60 && s >= 0 && s < 60,
                    "clock time out of range: '" + text + "'");
    return h * 3600.0 + m * 60.0 + s;
}

double parse_time_point(const std::string& text) {
    return text.find(':') != std::string::npos ? parse_clock(text) : parse_duration(text);
}

Interval parse_time_interval(const std::string& text) {
    const auto dash = text.find('-');
    detail::require(dash != std::string::npos,
                    "interval must look like begin-end: '" + text + "'");
    const Interval iv{parse_time_point(text.substr(0, dash)),
                      parse_time_point(text.substr(dash + 1))};
    detail::require(iv.end > iv.begin, "interval must be non-empty: '" + text + "'");
    return iv;
}

std::vector<Interval> parse_time_intervals(const std::string& text) {
    std::vector<Interval> out;
    for (const auto& part : split(text, ','))
        if (!trim(part).empty()) out.push_back(parse_time_interval(part));
    detail::require(!out.empty(), "no intervals in '" + text + "'");
    return out;
}

SloTuple parse_slo(const std::string& text) {
    std::vector<MetricSpec> metrics;
    for (const auto& part : split(text, ',')) {
        const std::string p = trim(part);
        if (p.empty()) continue;
        const auto eq = p.find('=');
        detail::require(eq != std::string::npos, "slo metric must look like name=value: '" + p +
                                                     "'");
        MetricSpec m;
        m.name = trim(p.substr(0, eq));
        std::string rhs = trim(p.substr(eq + 1));
        if (const auto colon = rhs.find(':'); colon != std::string::npos) {
            const std::string orient = trim(rhs.substr(colon + 1));
            rhs = trim(rhs.substr(0, colon));
            if (orient == "lower") m.orientation = Orientation::LowerIsBetter;
            else if (orient == "higher") m.orientation = Orientation::HigherIsBetter;
            else throw InvalidInputError("unknown orientation '" + orient + "'");
        }
        std::size_t suffix = rhs.size();
        while (suffix > 0 && std::isalpha(static_cast<unsigned char>(rhs[suffix - 1]))) --suffix;
        m.unit = rhs.substr(suffix);
        m.value = parse_number(rhs.substr(0, suffix));
        metrics.push_back(std::move(m));
    }
    return SloTuple(std::move(metrics));
}

// --- signal config -----------------------------------------------------------

ParsedSignal parse_signal(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    int ln = 0;
    std::vector<MetricSpec> schema;
    std::optional<Interval> horizon;
    std::vector<Segment> segments;
    bool header_seen = false;

    while (std::getline(in, line)) {
        ++ln;
        const std::string l = trim(line);
        if (l.empty() || l[0] == '#') continue;
        const auto fields = split(l, ',');
        const std::string& tag = fields[0];
        if (!header_seen) {
            if (tag != "signal") throw ParseError(ln, "signal file must start with 'signal,v1'");
            header_seen = true;
            continue;
        }
        if (tag == "metrics") {
            for (std::size_t i = 1; i < fields.size(); ++i) {
                const auto parts = split(trim(fields[i]), ':');
                if (parts.empty() || parts[0].empty())
                    throw ParseError(ln, "empty metric name");
                MetricSpec m;
                m.name = parts[0];
                if (parts.size() > 1) m.unit = parts[1];
                if (parts.size() > 2) {
                    if (parts[2] == "lower") m.orientation = Orientation::LowerIsBetter;
                    else if (parts[2] == "higher") m.orientation = Orientation::HigherIsBetter;
                    else throw ParseError(ln, "unknown orientation '" + parts[2] + "'");
                }
                schema.push_back(std::move(m));
            }
        } else if (tag == "horizon") {
            if (fields.size() != 3) throw ParseError(ln, "horizon needs begin and end");
            horizon = Interval{parse_number(fields[1], ln), parse_number(fields[2], ln)};
        } else if (tag == "segment" || tag == "lsegment") {
            if (schema.empty()) throw ParseError(ln, "metrics line must precede segments");
            const bool located = tag == "lsegment";
            const std::size_t fixed = located ? 5 : 3;
            if (fields.size() != fixed + schema.size())
                throw ParseError(ln, "segment needs " + std::to_string(fixed + schema.size()) +
                                         " fields, got " + std::to_string(fields.size()));
            Segment seg;
            seg.span = {parse_number(fields[1], ln), parse_number(fields[2], ln)};
            std::size_t v0 = 3;
            if (located) {
                seg.location = Vec2{parse_number(fields[3], ln), parse_number(fields[4], ln)};
                v0 = 5;
            }
            for (std::size_t i = v0; i < fields.size(); ++i)
                seg.values.push_back(parse_number(fields[i], ln));
            segments.push_back(std::move(seg));
        } else {
            throw ParseError(ln, "unknown signal line tag '" + tag + "'");
        }
    }
    if (!header_seen) throw ParseError(1, "empty signal file");
    if (!horizon) throw ParseError(ln, "signal file lacks a horizon line");
    if (schema.empty()) throw ParseError(ln, "signal file lacks a metrics line");
    try {
        return ParsedSignal{Signal(*horizon, std::move(segments)), std::move(schema)};
    } catch (const InvalidInputError& e) {
        throw ParseError(ln, std::string("invalid signal: ") + e.what());
    }
}

// --- trace csv -----------------------------------------------------------------

Trace parse_trace(const std::string& text, const SloTuple& slo) {
    std::istringstream in(text);
    std::string line;
    int ln = 0;
    bool header_seen = false;
    bool located = false;
    std::vector<Sample> samples;
    while (std::getline(in, line)) {
        ++ln;
        const std::string l = trim(line);
        if (l.empty() || l[0] == '#') continue;
        const auto fields = split(l, ',');
        if (!header_seen) {
            if (fields.empty() || trim(fields[0]) != "timestamp")
                throw ParseError(ln, "trace header must start with 'timestamp'");
            std::vector<std::string> names;
            for (std::size_t i = 1; i < fields.size(); ++i) names.push_back(trim(fields[i]));
            if (names.size() == slo.arity() + 2 && names[names.size() - 2] == "x" &&
                names.back() == "y") {
                located = true;
                names.resize(names.size() - 2);
            }
            if (names != slo.names())
                throw ParseError(ln, "trace header metrics do not match the slo");
            header_seen = true;
            continue;
        }
        const std::size_t expect = 1 + slo.arity() + (located ? 2 : 0);
        if (fields.size() != expect)
            throw ParseError(ln, "expected " + std::to_string(expect) + " fields, got " +
                                     std::to_string(fields.size()));
        Sample s;
        s.timestamp = parse_number(fields[0], ln);
        for (std::size_t i = 0; i < slo.arity(); ++i)
            s.values.push_back(parse_number(fields[1 + i], ln));
        if (located)
            s.location = Vec2{parse_number(fields[1 + slo.arity()], ln),
                              parse_number(fields[2 + slo.arity()], ln)};
        samples.push_back(std::move(s));
    }
    if (!header_seen) throw ParseError(1, "empty trace file");
    try {
        return Trace(slo, std::move(samples));
    } catch (const InvalidInputError& e) {
        throw ParseError(ln, std::string("invalid trace: ") + e.what());
    }
}

std::string write_trace(const Trace& trace) {
    std::string out = "timestamp";
    const bool located = trace.samples().front().location.has_value();
    for (const auto& m : trace.slo_ref().metrics()) out += "," + m.name;
    if (located) out += ",x,y";
    out += "\n";
    for (const auto& s : trace.samples()) {
        out += fmt17(s.timestamp);
        for (double v : s.values) out += "," + fmt17(v);
        if (located && s.location) out += "," + fmt17(s.location->x) + "," + fmt17(s.location->y);
        out += "\n";
    }
    return out;
}

// --- schedule file ----------------------------------------------------------

BondSchedule parse_schedule(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    int ln = 0;
    std::optional<double> horizon;
    std::vector<Interval> bonded;
    double cursor = 0.0;
    while (std::getline(in, line)) {
        ++ln;
        const std::string l = trim(line);
        if (l.empty() || l[0] == '#') continue;
        const auto fields = split(l, ',');
        if (!horizon) {
            if (fields.size() != 2 || trim(fields[0]) != "horizon")
                throw ParseError(ln, "schedule file must start with 'horizon,<H>'");
            horizon = parse_number(fields[1], ln);
            continue;
        }
        if (fields.size() != 2) throw ParseError(ln, "expected 'start,end'");
        const Interval iv{parse_number(fields[0], ln), parse_number(fields[1], ln)};
        if (iv.end <= iv.begin) throw ParseError(ln, "interval must be non-empty");
        if (iv.begin < cursor)
            throw ParseError(ln, "interval overlaps or precedes an earlier one");
        if (iv.end > *horizon) throw ParseError(ln, "interval exceeds the horizon");
        bonded.push_back(iv);
        cursor = iv.end;
    }
    if (!horizon) throw ParseError(1, "schedule file lacks a horizon line");
    return BondSchedule(*horizon, std::move(bonded));
}

std::string write_schedule(const BondSchedule& schedule) {
    std::string out = "horizon," + fmt17(schedule.horizon()) + "\n";
    for (const auto& iv : schedule.bonded())
        out += fmt17(iv.begin) + "," + fmt17(iv.end) + "\n";
    return out;
}

// --- molecule file -----------------------------------------------------------

Molecule parse_molecule(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    int ln = 0;
    Molecule mol;
    std::set<EntityId> entities;
    auto note_entity = [&](const EntityId& id) {
        if (entities.insert(id).second) mol.entities.push_back(id);
    };
    while (std::getline(in, line)) {
        ++ln;
        const std::string l = trim(line);
        if (l.empty() || l[0] == '#') continue;
        const auto fields = split(l, ',');
        const std::string& tag = fields[0];
        if (tag == "entity") {
            if (fields.size() != 2) throw ParseError(ln, "entity line needs one id");
            note_entity(trim(fields[1]));
        } else if (tag == "bond") {
            if (fields.size() != 3) throw ParseError(ln, "bond line needs two ids");
            const EntityId a = trim(fields[1]);
            const EntityId b = trim(fields[2]);
            note_entity(a);
            note_entity(b);
            mol.bonds.emplace_back(a, b);
        } else {
            throw ParseError(ln, "unknown molecule line tag '" + tag + "'");
        }
    }
    return mol;
}

// --- scenario config -----------------------------------------------------------

namespace {

InteractionForm parse_form(const std::string& text, int ln) {
    if (text == "naive") return InteractionForm::Naive;
    if (text == "directory") return InteractionForm::Directory;
    if (text == "broker") return InteractionForm::Broker;
    if (text == "brand") return InteractionForm::Brand;
    if (text == "bond") return InteractionForm::Bond;
    throw ParseError(ln, "unknown interaction form '" + text + "'");
}

FlowKind parse_flow(const std::string& text, int ln) {
    if (text == "water") return FlowKind::Water;
    if (text == "electricity") return FlowKind::Electricity;
    if (text == "connectivity") return FlowKind::Connectivity;
    if (text == "food") return FlowKind::Food;
    if (text == "air") return FlowKind::Air;
    throw ParseError(ln, "unknown flow kind '" + text + "'");
}

void apply_entity_field(Entity& e, const std::string& key, const std::string& value, int ln) {
    if (key == "level") e.level = static_cast<int>(parse_integer(value, ln));
    else if (key == "capacity") e.capacity = parse_number(value, ln);
    else if (key == "inertia") e.inertia_horizon = static_cast<int>(parse_integer(value, ln));
    else if (key == "cost") e.serve_cost = parse_number(value, ln);
    else if (key == "roles") {
        for (const auto& r : split(value, '+')) {
            if (r == "requester") e.roles.requester = true;
            else if (r == "provider") e.roles.provider = true;
            else if (r == "broker") e.roles.broker = true;
            else if (r == "brand") e.roles.brand = true;
            else if (r == "directory") e.roles.directory = true;
            else throw ParseError(ln, "unknown role '" + r + "'");
        }
    } else {
        throw ParseError(ln, "unknown entity field '" + key + "'");
    }
}

}  // namespace

ParsedScenario parse_scenario(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    int ln = 0;
    bool header_seen = false;
    std::optional<std::string> type;
    Scenario eco;
    SmartHouseConfig smart;
    std::string name = "scenario";

    while (std::getline(in, line)) {
        ++ln;
        const std::string l = trim(line);
        if (l.empty() || l[0] == '#') continue;
        const auto fields = split(l, ',');
        const std::string& tag = fields[0];
        if (!header_seen) {
            if (tag != "scenario")
                throw ParseError(ln, "scenario file must start with 'scenario,v1'");
            header_seen = true;
            continue;
        }
        auto want = [&](std::size_t n) {
            if (fields.size() != n)
                throw ParseError(ln, "'" + tag + "' needs " + std::to_string(n - 1) + " fields");
        };
        if (tag == "type") {
            want(2);
            type = trim(fields[1]);
            if (*type != "ecosystem" && *type != "smarthouse")
                throw ParseError(ln, "unknown scenario type '" + *type + "'");
        } else if (tag == "name") {
            want(2);
            name = trim(fields[1]);
        } else if (tag == "seed") {
            want(2);
            const long long s = parse_integer(fields[1], ln);
            eco.seed = static_cast<std::uint64_t>(s);
            smart.seed = static_cast<std::uint64_t>(s);
        } else if (tag == "horizon_ticks") {
            want(2);
            eco.horizon_ticks = static_cast<int>(parse_integer(fields[1], ln));
            smart.horizon_ticks = eco.horizon_ticks;
        } else if (tag == "review_period") {
            want(2);
            eco.review_period_ticks = static_cast<int>(parse_integer(fields[1], ln));
            smart.review_period_ticks = eco.review_period_ticks;
        } else if (tag == "request_cap") {
            want(2);
            eco.request_cap = parse_integer(fields[1], ln);
        } else if (tag == "directory_refresh") {
            want(2);
            eco.directory_refresh_ticks = static_cast<int>(parse_integer(fields[1], ln));
        } else if (tag == "northwise_threshold") {
            want(2);
            eco.northwise_threshold = parse_number(fields[1], ln);
        } else if (tag == "bond_initial_grade") {
            want(2);
            eco.bond_initial_grade = parse_number(fields[1], ln);
        } else if (tag == "bond_max_interval") {
            want(2);
            eco.bond_max_interval_ticks = parse_number(fields[1], ln);
            smart.bond_max_interval_ticks = eco.bond_max_interval_ticks;
        } else if (tag == "form") {
            want(2);
            eco.form = parse_form(trim(fields[1]), ln);
        } else if (tag == "avalanche") {
            for (std::size_t i = 1; i < fields.size(); ++i) {
                const auto [key, value] = key_value(fields[i], ln);
                if (key == "adopt_prob") eco.avalanche.horizontal_adopt_prob = parse_number(value, ln);
                else if (key == "amplification")
                    eco.avalanche.vertical_amplification = parse_number(value, ln);
                else if (key == "uncertainty")
                    eco.avalanche.self_driven_uncertainty = parse_number(value, ln);
                else if (key == "damping") eco.avalanche.damping_via_review = parse_bool(value, ln);
                else throw ParseError(ln, "unknown avalanche field '" + key + "'");
            }
        } else if (tag == "broker") {
            for (std::size_t i = 1; i < fields.size(); ++i) {
                const auto [key, value] = key_value(fields[i], ln);
                if (key == "mode") {
                    if (value == "none") eco.broker.mode = BrokerFailureMode::None;
                    else if (value == "continuous_degradation")
                        eco.broker.mode = BrokerFailureMode::ContinuousDegradation;
                    else if (value == "discrete_failure")
                        eco.broker.mode = BrokerFailureMode::DiscreteFailure;
                    else throw ParseError(ln, "unknown broker mode '" + value + "'");
                } else if (key == "trust") {
                    eco.broker.trust_threshold = static_cast<int>(parse_integer(value, ln));
                } else {
                    throw ParseError(ln, "unknown broker field '" + key + "'");
                }
            }
        } else if (tag == "entity") {
            if (fields.size() < 2) throw ParseError(ln, "entity line needs an id");
            Entity e;
            e.id = trim(fields[1]);
            for (std::size_t i = 2; i < fields.size(); ++i) {
                const auto [key, value] = key_value(fields[i], ln);
                apply_entity_field(e, key, value, ln);
            }
            eco.entities.push_back(std::move(e));
        } else if (tag == "edge") {
            want(3);
            eco.same_level_edges.emplace_back(trim(fields[1]), trim(fields[2]));
        } else if (tag == "seed_request") {
            want(4);
            SeedRequest seed;
            seed.tick = static_cast<int>(parse_integer(fields[1], ln));
            seed.entity = trim(fields[2]);
            seed.demand = parse_number(fields[3], ln);
            eco.seed_requests.push_back(std::move(seed));
        } else if (tag == "capacity_up") {
            want(2);
            smart.capacity_up_kbps = parse_number(fields[1], ln);
        } else if (tag == "capacity_down") {
            want(2);
            smart.capacity_down_kbps = parse_number(fields[1], ln);
        } else if (tag == "tap_period") {
            want(2);
            smart.tap_period_ticks = static_cast<int>(parse_integer(fields[1], ln));
        } else if (tag == "utility") {
            want(2);
            smart.utilities.push_back(trim(fields[1]));
        } else if (tag == "device") {
            if (fields.size() < 2) throw ParseError(ln, "device line needs an id");
            Device d;
            d.id = trim(fields[1]);
            for (std::size_t i = 2; i < fields.size(); ++i) {
                const auto [key, value] = key_value(fields[i], ln);
                if (key == "flow") d.flow = parse_flow(value, ln);
                else if (key == "mode") {
                    if (value == "pull") d.mode = DeviceMode::PullSensor;
                    else if (value == "push") d.mode = DeviceMode::PushActuator;
                    else throw ParseError(ln, "unknown device mode '" + value + "'");
                } else if (key == "demand") d.demand_kbps = parse_number(value, ln);
                else if (key == "quota") d.min_quota_kbps = parse_number(value, ln);
                else if (key == "vendor") d.vendor = value;
                else throw ParseError(ln, "unknown device field '" + key + "'");
            }
            smart.devices.push_back(std::move(d));
        } else if (tag == "bond_grade") {
            want(3);
            smart.bond_grades[trim(fields[1])] = parse_number(fields[2], ln);
        } else if (tag == "refusal") {
            want(3);
            smart.refusal_ticks[trim(fields[1])] =
                static_cast<int>(parse_integer(fields[2], ln));
        } else {
            throw ParseError(ln, "unknown scenario line tag '" + tag + "'");
        }
    }
    if (!header_seen) throw ParseError(1, "empty scenario file");
    if (!type) throw ParseError(ln, "scenario file lacks a type line");

    ParsedScenario out;
    out.name = name;
    if (*type == "ecosystem") {
        eco.name = name;
        validate(eco);
        out.ecosystem = std::move(eco);
    } else {
        smart.name = name;
        out.smarthouse = std::move(smart);
    }
    return out;
}

// --- emission ------------------------------------------------------------------

std::string distance_json(const DistanceTuple& tuple) {
    std::string out = "{";
    bool first = true;
    for (const auto& c : tuple.components()) {
        if (!first) out += ",";
        first = false;
        out += "\"" + json_escape(c.name) + "\":" + fmt12(c.value);
    }
    out += "}";
    return out;
}

std::string ecosystem_summary_json(const ParsedScenario& scenario, const SimReport& report) {
    std::string out = "{\n";
    out += "  \"name\": \"" + json_escape(scenario.name) + "\",\n";
    out += "  \"type\": \"ecosystem\",\n";
    out += "  \"seed\": " + std::to_string(scenario.ecosystem->seed) + ",\n";
    out += "  \"form\": \"" + to_string(scenario.ecosystem->form) + "\",\n";
    out += "  \"digest\": \"" + to_hex(report.digest) + "\",\n";
    out += std::string("  \"saturated\": ") + (report.saturated ? "true" : "false") + ",\n";
    out += "  \"total_requests\": " + std::to_string(report.total_requests) + ",\n";
    out += "  \"total_demand\": " + fmt17(report.total_demand) + ",\n";
    out += "  \"total_abandoned\": " + fmt17(report.total_abandoned) + ",\n";
    out += "  \"max_request_demand\": " + fmt17(report.max_request_demand) + ",\n";
    out += "  \"triggered_requesters\": " + std::to_string(report.triggered_requesters) + ",\n";
    out += "  \"no_profit_serving_ticks\": " + std::to_string(report.no_profit_serving_ticks) +
           ",\n";
    out += "  \"notifications\": " + std::to_string(report.notifications) + ",\n";
    out += "  \"no_provider_failures\": " + std::to_string(report.no_provider_failures) + "\n";
    out += "}\n";
    return out;
}

std::string ecosystem_metrics_csv(const SimReport& report) {
    std::string out =
        "tick,requests,demanded,abandoned,no_profit_serving,triggered,mean_bond_grade\n";
    for (const auto& row : report.per_tick) {
        out += std::to_string(row.tick) + "," + std::to_string(row.requests) + "," +
               fmt17(row.demanded) + "," + fmt17(row.abandoned) + "," +
               std::to_string(row.no_profit_serving) + "," + std::to_string(row.triggered) +
               "," + fmt17(row.mean_bond_grade) + "\n";
    }
    return out;
}

std::string smarthouse_summary_json(const ParsedScenario& scenario,
                                    const SmartHouseReport& report) {
    std::string out = "{\n";
    out += "  \"name\": \"" + json_escape(scenario.name) + "\",\n";
    out += "  \"type\": \"smarthouse\",\n";
    out += "  \"seed\": " + std::to_string(scenario.smarthouse->seed) + ",\n";
    out += "  \"digest\": \"" + to_hex(report.digest) + "\",\n";
    out += "  \"events\": " + std::to_string(report.events) + ",\n";
    out += "  \"outflows_allowed\": " + std::to_string(report.outflows_allowed) + ",\n";
    out += "  \"inflows_allowed\": " + std::to_string(report.inflows_allowed) + ",\n";
    out += "  \"denied_no_bond\": " + std::to_string(report.denied_no_bond) + ",\n";
    out += "  \"denied_disbonded\": " + std::to_string(report.denied_disbonded) + ",\n";
    out += "  \"denied_no_allocation\": " + std::to_string(report.denied_no_allocation) + ",\n";
    out += "  \"taps_granted\": " + std::to_string(report.taps_granted) + ",\n";
    out += "  \"bonds_flagged\": " + std::to_string(report.bonds_flagged) + ",\n";
    out += "  \"bilaterality_violations\": " + std::to_string(report.bilaterality_violations) +
           "\n";
    out += "}\n";
    return out;
}

std::string smarthouse_metrics_csv(const SmartHouseReport& report) {
    std::string out = "review_index,bond,grade\n";
    for (const auto& [id, grades] : report.grade_trajectories)
        for (std::size_t i = 0; i < grades.size(); ++i)
            out += std::to_string(i) + "," + id + "," + fmt17(grades[i]) + "\n";
    return out;
}

// --- small file helpers --------------------------------------------------------

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InvalidInputError("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InvalidInputError("cannot write '" + path + "'");
    out << content;
}

}  // namespace svcbond::io
