// svcbond: audit distances, bond schedule grading, ecosystem simulation and
// molecule communities from the command line.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "svcbond/io.hpp"
#include "svcbond/trace_model.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitParse = 2;
constexpr int kExitIncompatible = 3;

using namespace svcbond;

std::vector<Rect> parse_regions(const std::string& text) {
    std::vector<Rect> regions;
    std::string cur;
    std::vector<std::string> groups;
    for (char c : text) {
        if (c == ';') {
            groups.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    groups.push_back(cur);
    for (const auto& g : groups) {
        if (g.empty()) continue;
        double v[4];
        if (std::sscanf(g.c_str(), "%lf,%lf,%lf,%lf", &v[0], &v[1], &v[2], &v[3]) != 4)
            throw InvalidInputError("region must look like x0,y0,x1,y1: '" + g + "'");
        regions.push_back(Rect{v[0], v[1], v[2], v[3]});
    }
    detail::require(!regions.empty(), "no regions given");
    return regions;
}

DistanceKind build_kind(const std::string& kind, double period, double phase,
                        const std::string& interest, const std::string& regions) {
    if (kind == "rbd") return RBd{period, phase};
    if (kind == "pbd") return PBd{period, phase};
    if (kind == "pid") return PId{period, phase};
    if (kind == "rxd") {
        detail::require(!interest.empty(), "rxd needs --interest intervals");
        return RXd{io::parse_time_intervals(interest), period};
    }
    if (kind == "rxd_spatial") {
        detail::require(!interest.empty(), "rxd_spatial needs --interest intervals");
        detail::require(!regions.empty(), "rxd_spatial needs --regions rectangles");
        return RXdSpatial{parse_regions(regions), io::parse_time_intervals(interest), period};
    }
    throw CLI::ValidationError("--kind", "unknown distance kind '" + kind + "'");
}

// Audit of an already-sampled trace: the kind selects which samples count.
DistanceTuple trace_distance(const Trace& trace, const SloTuple& slo, const DistanceKind& kind) {
    std::vector<Sample> kept;
    if (std::holds_alternative<RBd>(kind) || std::holds_alternative<PBd>(kind)) {
        kept = trace.samples();
    } else if (const auto* rxd = std::get_if<RXd>(&kind)) {
        for (const auto& s : trace.samples())
            for (const auto& iv : rxd->interest)
                if (iv.contains(s.timestamp)) {
                    kept.push_back(s);
                    break;
                }
    } else if (const auto* pid = std::get_if<PId>(&kind)) {
        for (const auto& s : trace.samples()) {
            const double k = (s.timestamp - pid->phase) / pid->period;
            if (k >= -1e-9 && std::abs(k - std::round(k)) < 1e-9) kept.push_back(s);
        }
    } else {
        const auto& spatial = std::get<RXdSpatial>(kind);
        for (const auto& s : trace.samples()) {
            if (!s.location) continue;
            const bool in_region =
                std::any_of(spatial.regions.begin(), spatial.regions.end(),
                            [&](const Rect& r) { return r.contains(*s.location); });
            if (!in_region) continue;
            for (const auto& iv : spatial.interest)
                if (iv.contains(s.timestamp)) {
                    kept.push_back(s);
                    break;
                }
        }
    }
    if (kept.empty())
        throw IncompatibleTracesError("no trace samples match the requested audit kind");
    std::vector<double> ts;
    ts.reserve(kept.size());
    for (const auto& s : kept) ts.push_back(s.timestamp);
    return step_distance(Trace(slo, std::move(kept)), make_reference_trace(slo, ts));
}

int run_audit(const std::string& slo_text, const std::string& input, const std::string& kind,
              const std::string& period_text, const std::string& phase_text,
              const std::string& interest, const std::string& regions) {
    const SloTuple slo = io::parse_slo(slo_text);
    const double period = io::parse_duration(period_text);
    const double phase = phase_text.empty() ? 0.0 : io::parse_time_point(phase_text);
    const DistanceKind dkind = build_kind(kind, period, phase, interest, regions);

    const std::string text = io::read_file(input);
    DistanceTuple result = [&] {
        if (text.rfind("signal", 0) == 0) {
            const io::ParsedSignal parsed = io::parse_signal(text);
            if (parsed.schema.size() != slo.arity())
                throw IncompatibleTracesError("signal metric arity does not match --slo");
            return distance(parsed.signal, slo, dkind);
        }
        return trace_distance(io::parse_trace(text, slo), slo, dkind);
    }();
    std::cout << io::distance_json(result) << "\n";
    return kExitOk;
}

int run_grade(const std::string& path) {
    const BondSchedule schedule = io::parse_schedule(io::read_file(path));
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6f", bond_grade(schedule));
    std::cout << buf << "\n";
    return kExitOk;
}

int run_simulate(const std::string& path, const std::string& seed_text,
                 const std::string& out_dir) {
    io::ParsedScenario scenario = io::parse_scenario(io::read_file(path));
    if (!seed_text.empty()) {
        const auto seed = static_cast<std::uint64_t>(std::stoull(seed_text));
        if (scenario.ecosystem) scenario.ecosystem->seed = seed;
        if (scenario.smarthouse) scenario.smarthouse->seed = seed;
    }
    std::string summary, metrics, digest;
    if (scenario.ecosystem) {
        const SimReport report = run(*scenario.ecosystem);
        summary = io::ecosystem_summary_json(scenario, report);
        metrics = io::ecosystem_metrics_csv(report);
        digest = to_hex(report.digest);
    } else {
        const SmartHouseReport report = run_smarthouse(*scenario.smarthouse);
        summary = io::smarthouse_summary_json(scenario, report);
        metrics = io::smarthouse_metrics_csv(report);
        digest = to_hex(report.digest);
    }
    io::write_file(out_dir + "/summary.json", summary);
    io::write_file(out_dir + "/metrics.csv", metrics);
    std::cout << digest << "\n";
    return kExitOk;
}

int run_molecule(const std::string& path) {
    const Molecule mol = io::parse_molecule(io::read_file(path));
    const auto comms = communities(mol);
    std::string out = "[";
    for (std::size_t i = 0; i < comms.size(); ++i) {
        if (i) out += ",";
        out += "[";
        bool first = true;
        for (const auto& id : comms[i]) {
            if (!first) out += ",";
            first = false;
            out += "\"" + id + "\"";
        }
        out += "]";
    }
    out += "]";
    std::cout << out << "\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"service-bond toolkit: audit distances, bond grading, ecosystem simulation"};
    app.require_subcommand(1);

    std::string slo_text, input, kind, period_text = "1h", phase_text, interest, regions;
    auto* audit_cmd = app.add_subcommand("audit", "audit a delivered trace or signal");
    audit_cmd->add_option("--slo", slo_text, "coded SLO, e.g. ds=25mbps,us=3mbps")->required();
    audit_cmd->add_option("--input", input, "trace csv or signal config file")->required();
    audit_cmd->add_option("--kind", kind, "rbd | rxd | pbd | pid | rxd_spatial")->required();
    audit_cmd->add_option("--period", period_text, "sampling period, e.g. 15m");
    audit_cmd->add_option("--phase", phase_text, "sampling phase, e.g. 4h or 04:00");
    audit_cmd->add_option("--interest", interest, "interest intervals, e.g. 19:00-22:00");
    audit_cmd->add_option("--regions", regions, "interest rectangles x0,y0,x1,y1;...");

    std::string grade_file;
    auto* grade_cmd = app.add_subcommand("grade", "grade a bond schedule file");
    grade_cmd->add_option("file", grade_file, "schedule file")->required();

    std::string scenario_file, seed_text, out_dir = ".";
    auto* sim_cmd = app.add_subcommand("simulate", "run a scenario deterministically");
    sim_cmd->add_option("file", scenario_file, "scenario config file")->required();
    sim_cmd->add_option("--seed", seed_text, "seed override");
    sim_cmd->add_option("--out", out_dir, "output directory for metrics.csv and summary.json");

    std::string molecule_file;
    auto* mol_cmd = app.add_subcommand("molecule", "list communities of a bond graph");
    mol_cmd->add_option("file", molecule_file, "bond-list file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitParse;
    }

    try {
        if (audit_cmd->parsed())
            return run_audit(slo_text, input, kind, period_text, phase_text, interest, regions);
        if (grade_cmd->parsed()) return run_grade(grade_file);
        if (sim_cmd->parsed()) return run_simulate(scenario_file, seed_text, out_dir);
        return run_molecule(molecule_file);
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitParse;
    } catch (const CLI::Error& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitParse;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIncompatible;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIncompatible;
    }
}
