#include "svcbond/smarthouse.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>

#include "svcbond/rng.hpp"

namespace svcbond {

std::string to_string(FlowKind flow) {
    switch (flow) {
        case FlowKind::Water: return "water";
        case FlowKind::Electricity: return "electricity";
        case FlowKind::Connectivity: return "connectivity";
        case FlowKind::Food: return "food";
        case FlowKind::Air: return "air";
    }
    return "?";
}

std::string to_string(DeviceMode mode) {
    return mode == DeviceMode::PullSensor ? "pull" : "push";
}

namespace {

double quota_floor(const Device& d) {
    return d.demand_kbps >= d.min_quota_kbps ? d.min_quota_kbps : 0.0;
}

}  // namespace

std::map<EntityId, double> allocate_bandwidth(const std::vector<Device>& devices,
                                              double capacity_kbps) {
    detail::require(capacity_kbps >= 0.0 && std::isfinite(capacity_kbps),
                    "capacity must be finite and >= 0");
    std::map<EntityId, double> out;
    if (devices.empty()) return out;

    double total_demand = 0.0;
    double total_floor = 0.0;
    std::set<EntityId> ids;
    for (const auto& d : devices) {
        detail::require(!d.id.empty(), "device id must be non-empty");
        detail::require(ids.insert(d.id).second, "device id '" + d.id + "' repeated");
        detail::require(d.demand_kbps >= 0.0 && std::isfinite(d.demand_kbps),
                        "device demand must be finite and >= 0");
        detail::require(d.min_quota_kbps >= 0.0 && std::isfinite(d.min_quota_kbps),
                        "device min quota must be finite and >= 0");
        total_demand += d.demand_kbps;
        total_floor += quota_floor(d);
    }
    if (total_floor > capacity_kbps)
        throw InfeasibleQuotaError("minimum quotas exceed capacity by " +
                                   std::to_string(total_floor - capacity_kbps) + " kbps");
    if (total_demand <= capacity_kbps) {
        for (const auto& d : devices) out[d.id] = d.demand_kbps;
        return out;
    }

    // Water level lambda solves sum_i min(d_i, max(f_i, lambda)) = capacity.
    // Between consecutive breakpoints every device contributes a constant or
    // exactly lambda, so lambda comes out of one division.
    std::vector<double> breakpoints;
    breakpoints.reserve(devices.size() * 2);
    for (const auto& d : devices) {
        breakpoints.push_back(quota_floor(d));
        breakpoints.push_back(d.demand_kbps);
    }
    std::sort(breakpoints.begin(), breakpoints.end());
    breakpoints.erase(std::unique(breakpoints.begin(), breakpoints.end()), breakpoints.end());

    auto filled_at = [&devices](double level) {
        double s = 0.0;
        for (const auto& d : devices)
            s += std::min(d.demand_kbps, std::max(quota_floor(d), level));
        return s;
    };

    double prev = 0.0;
    double next = breakpoints.back();
    for (double b : breakpoints) {
        if (filled_at(b) >= capacity_kbps) {
            next = b;
            break;
        }
        prev = b;
    }

    double fixed = 0.0;
    long long linear = 0;
    for (const auto& d : devices) {
        if (d.demand_kbps <= prev) fixed += d.demand_kbps;
        else if (quota_floor(d) >= next) fixed += quota_floor(d);
        else ++linear;
    }
    const double level = (capacity_kbps - fixed) / static_cast<double>(linear);
    for (const auto& d : devices)
        out[d.id] = std::min(d.demand_kbps, std::max(quota_floor(d), level));
    return out;
}

GateDecision gate_flow(const RegulatorState& regulator, const EntityId& device_id,
                       FlowDirection direction, double t) {
    (void)direction;  // the same bilaterality rule gates both directions
    const auto dev = std::find_if(regulator.devices.begin(), regulator.devices.end(),
                                  [&](const Device& d) { return d.id == device_id; });
    if (dev == regulator.devices.end())
        throw UnknownDeviceError("device '" + device_id + "' is not registered");
    const auto bond_it = regulator.bonds.find(device_id);
    if (bond_it == regulator.bonds.end()) return GateDeny{"no-bond"};
    if (!is_bonded_at(bond_it->second.schedule, t)) return GateDeny{"disbonded-interval"};
    const auto alloc_it = regulator.allocations.find(device_id);
    if (alloc_it == regulator.allocations.end() || alloc_it->second <= 0.0)
        return GateDeny{"no-allocation"};
    return GateAllow{};
}

TapOutcome reciprocal_tap(const Bond& utility_bond, bool utility_is_tapping,
                          bool utility_refuses) {
    detail::require(bond_grade(utility_bond.schedule) > 0.0,
                    "reciprocal tap requires an active bond");
    if (!utility_refuses) return TapGrant{};
    TapRefusal refusal;
    refusal.flagged = utility_is_tapping;
    if (utility_is_tapping) {
        // refusing while tapping breaks reciprocity: hand review a failing report
        std::vector<DistanceTuple::Component> zero;
        std::vector<DistanceTuple::Component> one;
        for (const auto& m : utility_bond.agreement.slo.metrics()) {
            zero.push_back({m.name, 0.0});
            one.push_back({m.name, 1.0});
        }
        refusal.fail_report =
            AuditReport{DistanceTuple(one), DistanceTuple(zero), false};
    }
    return refusal;
}

// ---------------------------------------------------------------------------

namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return std::string(buf);
}

Agreement device_agreement(const EntityId& regulator, const EntityId& vendor, double kbps,
                           double review_period) {
    SloTuple slo(std::vector<MetricSpec>{
        {"kbps", std::max(kbps, 0.0), "kbps", Orientation::HigherIsBetter}});
    DistanceTuple thresholds(std::vector<DistanceTuple::Component>{{"kbps", 0.05}});
    return Agreement{slo, RBd{1.0, 0.0}, thresholds, review_period, regulator, vendor};
}

}  // namespace

SmartHouseConfig default_smarthouse_config() {
    SmartHouseConfig cfg;
    cfg.name = "smarthouse.default";
    cfg.utilities = {"util_water", "util_electric"};
    cfg.devices = {
        {"water_meter", FlowKind::Water, DeviceMode::PullSensor, 800, 100, "util_water"},
        {"water_valve", FlowKind::Water, DeviceMode::PushActuator, 400, 50, "util_water"},
        {"elec_meter", FlowKind::Electricity, DeviceMode::PullSensor, 900, 100, "util_electric"},
        {"elec_switch", FlowKind::Electricity, DeviceMode::PushActuator, 600, 50, "util_electric"},
        {"conn_monitor", FlowKind::Connectivity, DeviceMode::PullSensor, 1200, 150, "isp_main"},
        {"conn_router_ctl", FlowKind::Connectivity, DeviceMode::PushActuator, 800, 100,
         "isp_main"},
        {"fridge_sensor", FlowKind::Food, DeviceMode::PullSensor, 500, 80, "vendor_food"},
        {"air_quality", FlowKind::Air, DeviceMode::PullSensor, 700, 80, "vendor_air"},
        {"co2_sensor", FlowKind::Air, DeviceMode::PullSensor, 600, 80, "vendor_air"},
    };
    cfg.bond_grades = {{"util_water", 0.9},  {"util_electric", 0.85}, {"isp_main", 0.95},
                       {"vendor_food", 0.8}, {"vendor_air", 0.75}};
    cfg.refusal_ticks = {{"util_electric", 600}};
    return cfg;
}

SmartHouseReport run_smarthouse(const SmartHouseConfig& cfg) {
    detail::require(cfg.horizon_ticks > 0, "horizon_ticks must be > 0");
    detail::require(!cfg.devices.empty(), "smarthouse scenario needs devices");

    SmartHouseReport report;
    LogDigest digest;
    auto log = [&](const std::string& line) {
        digest.feed(line);
        report.event_log.push_back(line);
        ++report.events;
    };

    const double horizon = static_cast<double>(cfg.horizon_ticks);
    RegulatorState reg;
    reg.capacity_up_kbps = cfg.capacity_up_kbps;
    reg.capacity_down_kbps = cfg.capacity_down_kbps;
    reg.devices = cfg.devices;

    // one bond per device with its vendor agent, plus one per utility
    auto grade_for = [&cfg](const EntityId& vendor) {
        auto it = cfg.bond_grades.find(vendor);
        return it == cfg.bond_grades.end() ? 0.9 : it->second;
    };
    for (const auto& d : cfg.devices) {
        BondSchedule full(horizon, {{0.0, horizon}});
        Bond bond{"regulator", d.vendor,
                  device_agreement("regulator", d.vendor, d.demand_kbps,
                                   static_cast<double>(cfg.review_period_ticks)),
                  modulate(full, grade_for(d.vendor), cfg.bond_max_interval_ticks)};
        reg.bonds.emplace(d.id, std::move(bond));
    }
    std::map<EntityId, Bond> utility_bonds;
    for (const auto& u : cfg.utilities) {
        BondSchedule full(horizon, {{0.0, horizon}});
        Bond bond{"regulator", u,
                  device_agreement("regulator", u, 100.0,
                                   static_cast<double>(cfg.review_period_ticks)),
                  modulate(full, grade_for(u), cfg.bond_max_interval_ticks)};
        utility_bonds.emplace(u, std::move(bond));
    }

    // fair shares: sensors from the upstream pool, actuators from the downstream pool
    std::vector<Device> pulls, pushes;
    for (const auto& d : cfg.devices)
        (d.mode == DeviceMode::PullSensor ? pulls : pushes).push_back(d);
    reg.allocations = allocate_bandwidth(pulls, cfg.capacity_up_kbps);
    for (auto& [id, kbps] : allocate_bandwidth(pushes, cfg.capacity_down_kbps))
        reg.allocations[id] = kbps;
    for (const auto& [id, kbps] : reg.allocations)
        log("0,allocate," + id + "," + fmt(kbps));

    std::map<EntityId, bool> utility_tapping;
    for (const auto& u : cfg.utilities) utility_tapping[u] = false;

    // actuator command cadence is phase-jittered per device by the run seed
    std::map<EntityId, int> push_offset;
    for (const auto& d : cfg.devices)
        if (d.mode == DeviceMode::PushActuator)
            push_offset[d.id] =
                static_cast<int>(RngStream(cfg.seed, d.id, "cadence").next_below(4));

    for (int t = 0; t < cfg.horizon_ticks; ++t) {
        const auto ts = static_cast<double>(t);

        for (const auto& d : cfg.devices) {
            const bool is_pull = d.mode == DeviceMode::PullSensor;
            // sensors report every tick; actuator commands arrive on a cadence
            if (!is_pull && (t + push_offset.at(d.id)) % 4 != 0) continue;
            const FlowDirection dir = is_pull ? FlowDirection::Outflow : FlowDirection::Inflow;
            const GateDecision decision = gate_flow(reg, d.id, dir, ts);
            if (std::holds_alternative<GateAllow>(decision)) {
                if (is_pull) {
                    ++report.outflows_allowed;
                    report.outflow_events.emplace_back(t, d.id);
                    if (!is_bonded_at(reg.bonds.at(d.id).schedule, ts))
                        ++report.bilaterality_violations;
                } else {
                    ++report.inflows_allowed;
                }
                log(std::to_string(t) + ",flow," + d.id + "," +
                    (is_pull ? "outflow" : "inflow") + ",allow");
            } else {
                const auto& deny = std::get<GateDeny>(decision);
                if (deny.reason == "no-bond") ++report.denied_no_bond;
                else if (deny.reason == "disbonded-interval") ++report.denied_disbonded;
                else ++report.denied_no_allocation;
                log(std::to_string(t) + ",flow," + d.id + "," +
                    (is_pull ? "outflow" : "inflow") + ",deny," + deny.reason);
            }
        }

        // utilities tap household sensors on a fixed cadence
        for (auto& [u, tapping] : utility_tapping) {
            if (t % cfg.tap_period_ticks == 0) {
                tapping = true;
                log(std::to_string(t) + ",utility_tap," + u);
            }
            // halfway through the cadence the household taps back
            if (t % cfg.tap_period_ticks == cfg.tap_period_ticks / 2) {
                Bond& bond = utility_bonds.at(u);
                const auto ref_it = cfg.refusal_ticks.find(u);
                const bool refuses = ref_it != cfg.refusal_ticks.end() && ref_it->second == t;
                const TapOutcome outcome = reciprocal_tap(bond, tapping, refuses);
                if (std::holds_alternative<TapGrant>(outcome)) {
                    ++report.taps_granted;
                    log(std::to_string(t) + ",household_tap," + u + ",grant");
                } else {
                    const auto& refusal = std::get<TapRefusal>(outcome);
                    log(std::to_string(t) + ",household_tap," + u + ",refuse");
                    if (refusal.flagged && refusal.fail_report) {
                        ++report.bonds_flagged;
                        const ReviewOutcome rv =
                            review_bond(bond, *refusal.fail_report, ReviewPolicy{});
                        bond = apply_review(std::move(bond), rv, cfg.bond_max_interval_ticks);
                        log(std::to_string(t) + ",bond_flagged," + u + "," +
                            fmt(bond_grade(bond.schedule)));
                    }
                }
            }
        }

        // periodic reviews keep passing bonds renewed and record trajectories
        if (t > 0 && t % cfg.review_period_ticks == 0) {
            for (auto& [id, bond] : reg.bonds) {
                std::vector<DistanceTuple::Component> zero{{"kbps", 0.0}};
                const AuditReport ok{DistanceTuple(zero), DistanceTuple(zero), true};
                bond = apply_review(std::move(bond), review_bond(bond, ok, ReviewPolicy{}),
                                    cfg.bond_max_interval_ticks);
                report.grade_trajectories[id].push_back(bond_grade(bond.schedule));
            }
            for (auto& [u, bond] : utility_bonds)
                report.grade_trajectories[u].push_back(bond_grade(bond.schedule));
        }
    }

    report.final_allocations = reg.allocations;
    report.digest = digest.value();
    return report;
}

}  // namespace svcbond
