#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "svcbond/bond_fabric.hpp"
#include "svcbond/rng.hpp"
#include "svcbond/types.hpp"

namespace svcbond {

struct RoleFlags {
    bool requester = false;
    bool provider = false;
    bool broker = false;
    bool brand = false;
    bool directory = false;
};

// One actor (node) of the service ecosystem.
struct Entity {
    EntityId id;
    int level = 0;              // service-stack level, 0 = lowest
    double capacity = 0.0;      // resource units servable per tick
    int inertia_horizon = 0;    // ticks of negative profit absorbed before stopping
    RoleFlags roles;
    double serve_cost = 0.0;    // per-tick cost of staying in the serving state
};

enum class InteractionForm { Naive, Directory, Broker, Brand, Bond };

std::string to_string(InteractionForm form);

// Parametric stand-ins for the three avalanche phenomena: branching adoption
// among peers, geometric amplification down the stack, and multiplicative
// demand inflation from requester uncertainty.
struct AvalancheParams {
    double horizontal_adopt_prob = 0.0;   // [0, 1]
    double vertical_amplification = 1.0;  // >= 1
    double self_driven_uncertainty = 0.0; // >= 0
    bool damping_via_review = false;
};

enum class BrokerFailureMode { None, ContinuousDegradation, DiscreteFailure };

struct BrokerConfig {
    BrokerFailureMode mode = BrokerFailureMode::None;
    int trust_threshold = 10;  // successes before a discrete failure fires
};

struct SeedRequest {
    int tick = 0;
    EntityId entity;
    double demand = 1.0;
};

struct Scenario {
    std::string name = "scenario";
    std::vector<Entity> entities;
    std::vector<std::pair<EntityId, EntityId>> same_level_edges;
    InteractionForm form = InteractionForm::Directory;
    AvalancheParams avalanche;
    int horizon_ticks = 1;
    std::uint64_t seed = 0;
    long long request_cap = 1000000;
    std::vector<SeedRequest> seed_requests;
    BrokerConfig broker;
    int review_period_ticks = 10;
    int directory_refresh_ticks = 5;
    double northwise_threshold = 0.25;
    double bond_initial_grade = 1.0;
    double bond_max_interval_ticks = 4.0;
};

void validate(const Scenario& scenario);

struct TickMetrics {
    int tick = 0;
    long long requests = 0;       // requests issued this tick (incl. sub-requests)
    double demanded = 0.0;        // resource units demanded this tick
    double abandoned = 0.0;       // surplus dropped at the base level this tick
    int no_profit_serving = 0;    // providers serving at a loss this tick
    int triggered = 0;            // cumulative triggered requesters
    double mean_bond_grade = 0.0; // 0 when no bonds exist
};

struct SimReport {
    std::vector<TickMetrics> per_tick;
    bool saturated = false;
    std::uint64_t digest = 0;
    long long total_requests = 0;
    double total_demand = 0.0;
    double total_abandoned = 0.0;
    long long no_profit_serving_ticks = 0;
    double max_request_demand = 0.0;
    int triggered_requesters = 0;
    long long notifications = 0;
    long long no_provider_failures = 0;
    std::vector<std::string> event_log;
};

// --- avalanche primitives -------------------------------------------------

// Demands of one vertical chain: a request arriving at `from_level` with
// `demand` descends one level at a time, amplified at each hop. Index i of
// the result is the demand arriving at level from_level - i.
std::vector<double> vertical_demands(double demand, double amplification, int from_level);

// Surplus dropped at the base of a vertical chain: final demand minus the
// demand originally requested at the top.
double vertical_abandoned(double demand, double amplification, int from_level);

// Demand an uncertain requester actually issues for a need of `demand`.
double self_driven_demand(double demand, double uncertainty);

// One horizontal adoption round: untriggered nodes adjacent to a triggered
// node adopt independently with adopt_prob. Draws are keyed by (seed, node,
// tick), so the result does not depend on evaluation order.
std::vector<EntityId> horizontal_adoption_round(
    const std::set<EntityId>& triggered,
    const std::map<EntityId, std::vector<EntityId>>& adjacency, double adopt_prob,
    std::uint64_t scenario_seed, int tick);

// --- interaction resolution ------------------------------------------------

struct ProviderInfo {
    EntityId id;
    double free_capacity = 0.0;  // live remaining capacity this tick
    double rank_key = 0.0;       // directory rank as of the last refresh
};

struct InteractionRegistry {
    std::vector<ProviderInfo> providers;  // sorted by id
    std::optional<EntityId> bonded_counterpart;
    BrokerConfig broker;
    int broker_successes = 0;
    bool broker_discrete_fired = false;
};

struct Binding {
    EntityId provider;
    bool propose_bond = false;
    bool broker_discrete_failure = false;
};
struct NoProvider {};
using ResolveResult = std::variant<Binding, NoProvider>;

struct SimRequest {
    EntityId requester;
    int level = 0;
    double demand = 0.0;
};

// Pick a provider for the request under the given interaction form.
// Naive requires exactly one provider and throws AmbiguousNaiveError otherwise.
ResolveResult resolve_interaction(InteractionForm form, const SimRequest& request,
                                  const InteractionRegistry& registry, RngStream& rng);

// --- inertia and northwise notifications -----------------------------------

// True while the entity keeps serving at tick t: it stops only once profit
// has been negative for inertia_horizon ticks and stays negative.
bool step_inertia(const Entity& entity, const std::vector<double>& profit_series, int t);

struct Notification {
    EntityId provider;
    double utilization = 0.0;
};

// Upward discount offer when a bonded provider sits underutilized.
std::optional<Notification> northwise_notify(const EntityId& provider, double utilization,
                                             double threshold, InteractionForm form);

// --- the event loop ---------------------------------------------------------

// Deterministic tick loop over the scenario. Identical (scenario, seed) pairs
// produce identical digests; exceeding request_cap halts the run with the
// saturated flag set.
SimReport run(const Scenario& scenario);

}  // namespace svcbond
