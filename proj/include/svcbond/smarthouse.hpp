#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "svcbond/bond_fabric.hpp"
#include "svcbond/types.hpp"

namespace svcbond {

// The five vital household inflows.
enum class FlowKind { Water, Electricity, Connectivity, Food, Air };

enum class DeviceMode { PullSensor, PushActuator };

std::string to_string(FlowKind flow);
std::string to_string(DeviceMode mode);

struct Device {
    EntityId id;
    FlowKind flow = FlowKind::Water;
    DeviceMode mode = DeviceMode::PullSensor;
    double demand_kbps = 0.0;
    double min_quota_kbps = 0.0;
    EntityId vendor;
};

// Max-min fair (water-filling) share of `capacity` among the devices.
// Every device receives min(demand, share level); devices whose demand is at
// least their min_quota never drop below that quota. Throws
// InfeasibleQuotaError (listing the deficit) when the quotas alone exceed
// capacity.
std::map<EntityId, double> allocate_bandwidth(const std::vector<Device>& devices,
                                              double capacity_kbps);

// Household-side agent governing all device data outflows and command inflows.
struct RegulatorState {
    double capacity_up_kbps = 3000.0;     // sensor outflows
    double capacity_down_kbps = 25000.0;  // actuator command inflows
    std::vector<Device> devices;
    std::map<EntityId, Bond> bonds;        // device id -> bond with its vendor agent
    std::map<EntityId, double> allocations;
};

enum class FlowDirection { Outflow, Inflow };

struct GateAllow {};
struct GateDeny {
    std::string reason;  // no-bond | disbonded-interval | no-allocation
};
using GateDecision = std::variant<GateAllow, GateDeny>;

// Allow a device flow at time t only when its vendor bond exists, the bond is
// in a bonded interval and a positive allocation is present. Unregistered
// devices raise UnknownDeviceError.
GateDecision gate_flow(const RegulatorState& regulator, const EntityId& device_id,
                       FlowDirection direction, double t);

struct TapGrant {};
struct TapRefusal {
    bool flagged = false;            // true when the utility was tapping and still refused
    std::optional<AuditReport> fail_report;
};
using TapOutcome = std::variant<TapGrant, TapRefusal>;

// Reciprocity rule for household taps on utility data: the utility is
// expected to grant; a refusal while it taps household sensors flags the bond
// for review with a failing report.
TapOutcome reciprocal_tap(const Bond& utility_bond, bool utility_is_tapping,
                          bool utility_refuses);

// --- the bundled Fig. 5 style scenario --------------------------------------

struct SmartHouseConfig {
    std::string name = "smarthouse";
    std::uint64_t seed = 0;
    int horizon_ticks = 1600;
    double capacity_up_kbps = 3000.0;
    double capacity_down_kbps = 25000.0;
    int review_period_ticks = 50;
    std::vector<Device> devices;
    std::vector<EntityId> utilities;        // bonded counterpart agents
    std::map<EntityId, double> bond_grades; // vendor agent -> initial grade
    double bond_max_interval_ticks = 16.0;
    int tap_period_ticks = 25;              // utilities tap this often
    // vendor agent -> tick at which it refuses a household tap while tapping
    std::map<EntityId, int> refusal_ticks;
};

struct SmartHouseReport {
    std::uint64_t digest = 0;
    long long events = 0;
    long long outflows_allowed = 0;
    long long inflows_allowed = 0;
    long long denied_no_bond = 0;
    long long denied_disbonded = 0;
    long long denied_no_allocation = 0;
    long long taps_granted = 0;
    long long bonds_flagged = 0;
    long long bilaterality_violations = 0;  // allowed outflows without an active bond
    std::map<EntityId, std::vector<double>> grade_trajectories;
    std::map<EntityId, double> final_allocations;
    std::vector<std::string> event_log;
    // (tick, device) of every allowed outflow, for independent re-checking
    std::vector<std::pair<int, EntityId>> outflow_events;
};

SmartHouseConfig default_smarthouse_config();

SmartHouseReport run_smarthouse(const SmartHouseConfig& config);

}  // namespace svcbond
