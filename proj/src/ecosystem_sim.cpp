#include "svcbond/ecosystem_sim.hpp"

#include <algorithm>
#include <cinttypes>
#include <cmath>
#include <cstdio>

namespace svcbond {

std::string to_string(InteractionForm form) {
    switch (form) {
        case InteractionForm::Naive: return "naive";
        case InteractionForm::Directory: return "directory";
        case InteractionForm::Broker: return "broker";
        case InteractionForm::Brand: return "brand";
        case InteractionForm::Bond: return "bond";
    }
    return "?";
}

std::string to_hex(std::uint64_t value) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016" PRIx64, value);
    return std::string(buf);
}

void validate(const Scenario& s) {
    detail::require(s.horizon_ticks > 0, "horizon_ticks must be > 0");
    detail::require(s.request_cap > 0, "request_cap must be > 0");
    detail::require(!s.entities.empty(), "scenario needs at least one entity");
    detail::require(s.review_period_ticks > 0, "review_period_ticks must be > 0");
    detail::require(s.avalanche.horizontal_adopt_prob >= 0.0 &&
                        s.avalanche.horizontal_adopt_prob <= 1.0,
                    "horizontal_adopt_prob outside [0, 1]");
    detail::require(s.avalanche.vertical_amplification >= 1.0,
                    "vertical_amplification must be >= 1");
    detail::require(s.avalanche.self_driven_uncertainty >= 0.0,
                    "self_driven_uncertainty must be >= 0");
    std::map<EntityId, int> levels;
    for (const auto& e : s.entities) {
        detail::require(!e.id.empty(), "entity id must be non-empty");
        detail::require(e.level >= 0, "entity level must be >= 0");
        detail::require(e.capacity >= 0.0, "entity capacity must be >= 0");
        detail::require(e.inertia_horizon >= 0, "inertia_horizon must be >= 0");
        detail::require(levels.emplace(e.id, e.level).second,
                        "entity id '" + e.id + "' repeated");
    }
    for (const auto& [a, b] : s.same_level_edges) {
        detail::require(levels.count(a) == 1 && levels.count(b) == 1,
                        "edge endpoint not declared as an entity");
        detail::require(a != b, "self edges are not allowed");
        detail::require(levels.at(a) == levels.at(b),
                        "same-level edges must connect equal-level entities");
    }
    for (const auto& seed : s.seed_requests) {
        detail::require(levels.count(seed.entity) == 1, "seed request entity not declared");
        detail::require(seed.tick >= 0 && seed.tick < s.horizon_ticks,
                        "seed request tick outside the horizon");
        detail::require(seed.demand > 0.0, "seed request demand must be > 0");
    }
}

std::vector<double> vertical_demands(double demand, double amplification, int from_level) {
    detail::require(demand >= 0.0, "demand must be >= 0");
    detail::require(amplification >= 1.0, "amplification must be >= 1");
    detail::require(from_level >= 0, "level must be >= 0");
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(from_level) + 1);
    double d = demand;
    out.push_back(d);
    for (int level = from_level; level > 0; --level) {
        d *= amplification;
        out.push_back(d);
    }
    return out;
}

double vertical_abandoned(double demand, double amplification, int from_level) {
    return vertical_demands(demand, amplification, from_level).back() - demand;
}

double self_driven_demand(double demand, double uncertainty) {
    detail::require(uncertainty >= 0.0, "uncertainty must be >= 0");
    return demand * (1.0 + uncertainty);
}

std::vector<EntityId> horizontal_adoption_round(
    const std::set<EntityId>& triggered,
    const std::map<EntityId, std::vector<EntityId>>& adjacency, double adopt_prob,
    std::uint64_t scenario_seed, int tick) {
    std::vector<EntityId> adopted;
    for (const auto& [node, neighbours] : adjacency) {
        if (triggered.count(node)) continue;
        const bool exposed = std::any_of(neighbours.begin(), neighbours.end(),
                                         [&](const EntityId& n) { return triggered.count(n); });
        if (!exposed) continue;
        RngStream rolls(scenario_seed, node, "adopt@" + std::to_string(tick));
        if (rolls.next_double() < adopt_prob) adopted.push_back(node);
    }
    return adopted;
}

namespace {

const ProviderInfo* best_by_rank(const std::vector<ProviderInfo>& providers) {
    const ProviderInfo* best = nullptr;
    for (const auto& p : providers)
        if (!best || p.rank_key > best->rank_key ||
            (p.rank_key == best->rank_key && p.id < best->id))
            best = &p;
    return best;
}

const ProviderInfo* nth_by_capacity(const std::vector<ProviderInfo>& providers, std::size_t n) {
    // rank descending by live free capacity, ties by id
    std::vector<const ProviderInfo*> order;
    order.reserve(providers.size());
    for (const auto& p : providers) order.push_back(&p);
    std::sort(order.begin(), order.end(), [](const ProviderInfo* a, const ProviderInfo* b) {
        if (a->free_capacity != b->free_capacity) return a->free_capacity > b->free_capacity;
        return a->id < b->id;
    });
    return order[std::min(n, order.size() - 1)];
}

}  // namespace

ResolveResult resolve_interaction(InteractionForm form, const SimRequest& request,
                                  const InteractionRegistry& registry, RngStream& rng) {
    (void)request;
    const auto& providers = registry.providers;
    if (form == InteractionForm::Naive) {
        if (providers.size() != 1)
            throw AmbiguousNaiveError("naive interaction saw " +
                                      std::to_string(providers.size()) +
                                      " providers; exactly one is required");
        return Binding{providers.front().id};
    }
    if (providers.empty()) return NoProvider{};

    switch (form) {
        case InteractionForm::Directory:
            return Binding{best_by_rank(providers)->id};
        case InteractionForm::Broker: {
            if (registry.broker.mode == BrokerFailureMode::ContinuousDegradation)
                return Binding{nth_by_capacity(providers, 1)->id};  // persistently suboptimal
            if (registry.broker.mode == BrokerFailureMode::DiscreteFailure &&
                !registry.broker_discrete_fired &&
                registry.broker_successes >= registry.broker.trust_threshold) {
                // one-shot worst pick once full trust was acquired
                return Binding{nth_by_capacity(providers, providers.size() - 1)->id, false, true};
            }
            return Binding{nth_by_capacity(providers, 0)->id};
        }
        case InteractionForm::Brand:
            // the cloud is opaque: any member may end up serving
            return Binding{providers[rng.next_below(providers.size())].id};
        case InteractionForm::Bond: {
            if (registry.bonded_counterpart) return Binding{*registry.bonded_counterpart};
            return Binding{best_by_rank(providers)->id, true};
        }
        default: break;
    }
    return NoProvider{};
}

bool step_inertia(const Entity& entity, const std::vector<double>& profit_series, int t) {
    detail::require(t >= 0 && static_cast<std::size_t>(t) < profit_series.size(),
                    "profit series must be defined up to t");
    if (profit_series[static_cast<std::size_t>(t)] >= 0.0) return true;
    // stop only when the preceding inertia_horizon ticks were all negative too
    if (t < entity.inertia_horizon) return true;
    for (int k = t - entity.inertia_horizon; k < t; ++k)
        if (profit_series[static_cast<std::size_t>(k)] >= 0.0) return true;
    return false;
}

std::optional<Notification> northwise_notify(const EntityId& provider, double utilization,
                                             double threshold, InteractionForm form) {
    if (form != InteractionForm::Bond) return std::nullopt;
    if (utilization < threshold) return Notification{provider, utilization};
    return std::nullopt;
}

// ---------------------------------------------------------------------------

namespace {

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return std::string(buf);
}

struct ProviderState {
    const Entity* entity = nullptr;
    bool serving = true;
    double load = 0.0;       // demand arriving this tick
    double served = 0.0;
    double rank_key = 0.0;   // directory snapshot
    std::vector<double> profit;
};

struct CycleState {
    long long id = 0;
    EntityId requester;
    EntityId provider;
    ServiceCycle cycle;
    bool done = false;
};

constexpr const char* kBondMetric = "units";

Agreement synthetic_agreement(const EntityId& requester, const EntityId& provider,
                              double demand, int review_period_ticks) {
    SloTuple slo(std::vector<MetricSpec>{{kBondMetric, std::max(demand, 0.0), "units",
                                          Orientation::HigherIsBetter}});
    DistanceTuple thresholds(
        std::vector<DistanceTuple::Component>{{kBondMetric, 0.0}});
    return Agreement{slo, RBd{1.0, 0.0}, thresholds,
                     static_cast<double>(review_period_ticks), requester, provider};
}

class SimRun {
  public:
    explicit SimRun(const Scenario& scenario) : sc_(scenario) {
        validate(sc_);
        for (const auto& e : sc_.entities) entities_.emplace(e.id, e);
        for (const auto& [a, b] : sc_.same_level_edges) {
            adjacency_[a].push_back(b);
            adjacency_[b].push_back(a);
        }
        for (auto& [id, nbs] : adjacency_) std::sort(nbs.begin(), nbs.end());
        for (const auto& e : sc_.entities)
            if (e.roles.provider) providers_.emplace(e.id, ProviderState{&entities_.at(e.id)});
        for (const auto& seed : sc_.seed_requests) seeds_by_tick_[seed.tick].push_back(seed);
    }

    SimReport go() {
        for (int t = 0; t < sc_.horizon_ticks && !report_.saturated; ++t) tick(t);
        report_.digest = digest_.value();
        report_.triggered_requesters = static_cast<int>(triggered_.size());
        return std::move(report_);
    }

  private:
    void log(const std::string& line) {
        digest_.feed(line);
        report_.event_log.push_back(line);
    }

    void refresh_directory(int t) {
        if (t % sc_.directory_refresh_ticks != 0) return;
        for (auto& [id, p] : providers_)
            p.rank_key = std::max(p.entity->capacity - p.load, 0.0);
    }

    InteractionRegistry registry_for(int level, const EntityId& requester) {
        InteractionRegistry reg;
        reg.broker = sc_.broker;
        reg.broker_successes = broker_successes_;
        reg.broker_discrete_fired = broker_discrete_fired_;
        for (const auto& [id, p] : providers_) {
            if (!p.serving || p.entity->level != level) continue;
            reg.providers.push_back(
                {id, std::max(p.entity->capacity - p.load, 0.0), p.rank_key});
        }
        if (sc_.form == InteractionForm::Bond) {
            auto it = bonds_.find(requester);
            if (it != bonds_.end() && bond_grade(it->second.schedule) > 0.0) {
                auto pit = providers_.find(it->second.b);
                if (pit != providers_.end() && pit->second.serving &&
                    pit->second.entity->level == level)
                    reg.bonded_counterpart = it->second.b;
            }
        }
        return reg;
    }

    // Resolve one request and cascade it down the stack. Returns false when
    // no provider could be found at the entry level.
    void dispatch(int t, const SimRequest& request) {
        double chain_demand = request.demand;
        const double original = request.demand;
        EntityId from = request.requester;
        int level = request.level - 1;
        bool entry = true;
        while (level >= 0) {
            InteractionRegistry reg = registry_for(level, entry ? request.requester : from);
            RngStream rng(sc_.seed, from, "resolve@" + std::to_string(t));
            ResolveResult res = resolve_interaction(
                entry ? sc_.form : InteractionForm::Directory, request, reg, rng);
            if (std::holds_alternative<NoProvider>(res)) {
                ++report_.no_provider_failures;
                log(std::to_string(t) + ",no_provider," + from);
                return;
            }
            const Binding& binding = std::get<Binding>(res);
            if (entry) {
                if (binding.broker_discrete_failure) broker_discrete_fired_ = true;
                else if (sc_.form == InteractionForm::Broker) ++broker_successes_;
                log(std::to_string(t) + ",bind," + request.requester + "," + binding.provider +
                    "," + to_string(sc_.form));
                if (binding.propose_bond) create_bond(t, request.requester, binding.provider);
                open_cycle(t, request.requester, binding.provider);
            } else {
                count_request(chain_demand);
                if (report_.saturated) return;
                log(std::to_string(t) + ",subrequest," + from + "," + binding.provider + "," +
                    fmt_double(chain_demand));
            }
            ProviderState& prov = providers_.at(binding.provider);
            prov.load += chain_demand;
            if (level == 0) {
                const double abandoned = chain_demand - original;
                if (abandoned > 0.0) {
                    abandoned_this_tick_ += abandoned;
                    log(std::to_string(t) + ",abandoned," + binding.provider + "," +
                        fmt_double(abandoned));
                }
                return;
            }
            chain_demand *= sc_.avalanche.vertical_amplification;
            from = binding.provider;
            --level;
            entry = false;
        }
    }

    void count_request(double demand) {
        if (report_.total_requests + 1 > sc_.request_cap) {
            report_.saturated = true;
            log("saturated");
            return;
        }
        ++report_.total_requests;
        ++requests_this_tick_;
        report_.total_demand += demand;
        demanded_this_tick_ += demand;
        report_.max_request_demand = std::max(report_.max_request_demand, demand);
    }

    void create_bond(int t, const EntityId& requester, const EntityId& provider) {
        const double horizon = static_cast<double>(sc_.horizon_ticks);
        BondSchedule full(horizon, {{0.0, horizon}});
        BondSchedule schedule =
            modulate(full, sc_.bond_initial_grade, sc_.bond_max_interval_ticks);
        Bond bond{requester, provider,
                  synthetic_agreement(requester, provider, 1.0, sc_.review_period_ticks),
                  std::move(schedule)};
        log(std::to_string(t) + ",bond_new," + requester + "," + provider + "," +
            fmt_double(bond_grade(bond.schedule)));
        bonds_.erase(requester);
        bonds_.emplace(requester, std::move(bond));
    }

    void open_cycle(int t, const EntityId& requester, const EntityId& provider) {
        const auto key = std::make_pair(requester, provider);
        if (active_cycles_.count(key)) return;  // demand joins the running cycle
        active_cycles_.insert(key);
        cycles_.push_back(CycleState{next_cycle_id_++, requester, provider, ServiceCycle{}});
        (void)t;
    }

    void advance_cycle(int t, CycleState& c) {
        const CyclePhase phase = c.cycle.phase();
        CycleEvent event;
        switch (phase) {
            case CyclePhase::Request: event = CycleEvent::Advertise; break;
            case CyclePhase::Advertisement: event = CycleEvent::Agree; break;
            case CyclePhase::Negotiation: event = CycleEvent::Deliver; break;
            case CyclePhase::Provide: event = CycleEvent::Audit; break;
            case CyclePhase::Audition: {
                const ProviderState& prov = providers_.at(c.provider);
                const bool served_fully = prov.load <= prov.entity->capacity;
                if (served_fully) event = CycleEvent::Accept;
                else if (c.cycle.milestone_retries() < 3) event = CycleEvent::Deliver;
                else event = CycleEvent::Dispute;
                break;
            }
            case CyclePhase::Acceptance: event = CycleEvent::Terminate; break;
            case CyclePhase::Termination:
            default:
                c.done = true;
                active_cycles_.erase(std::make_pair(c.requester, c.provider));
                return;
        }
        c.cycle.advance(event);
        log("cycle," + std::to_string(c.id) + "," + std::to_string(t) + "," + to_string(phase) +
            "," + to_string(event) + "," + to_string(c.cycle.phase()));
        if (c.cycle.phase() == CyclePhase::Termination) {
            if (c.cycle.disputed())
                log("cycle," + std::to_string(c.id) + "," + std::to_string(t) + ",disputed");
            c.done = true;
            active_cycles_.erase(std::make_pair(c.requester, c.provider));
        }
    }

    void review_bonds(int t) {
        if (sc_.form != InteractionForm::Bond) return;
        if (t == 0 || t % sc_.review_period_ticks != 0) return;
        const ReviewPolicy policy{};
        for (auto it = bonds_.begin(); it != bonds_.end();) {
            Bond& bond = it->second;
            const ProviderState& prov = providers_.at(bond.b);
            const bool served_fully = prov.serving && prov.load <= prov.entity->capacity;
            const DistanceTuple zero(
                std::vector<DistanceTuple::Component>{{kBondMetric, 0.0}});
            const DistanceTuple one(
                std::vector<DistanceTuple::Component>{{kBondMetric, 1.0}});
            const AuditReport report{served_fully ? zero : one, zero, served_fully};
            const ReviewOutcome outcome = review_bond(bond, report, policy);
            const char* what = std::holds_alternative<Renew>(outcome)   ? "renew"
                               : std::holds_alternative<Adjust>(outcome) ? "adjust"
                                                                         : "dissolve";
            if (sc_.avalanche.damping_via_review)
                bond = apply_review(std::move(bond), outcome, sc_.bond_max_interval_ticks);
            else if (report.passed)
                bond.consecutive_failures = 0;
            else
                ++bond.consecutive_failures;
            log(std::to_string(t) + ",bond_review," + bond.a + "," + bond.b + "," + what + "," +
                fmt_double(bond_grade(bond.schedule)));
            if (sc_.avalanche.damping_via_review && std::holds_alternative<Dissolve>(outcome))
                it = bonds_.erase(it);
            else
                ++it;
        }
    }

    void tick(int t) {
        requests_this_tick_ = 0;
        demanded_this_tick_ = 0.0;
        abandoned_this_tick_ = 0.0;
        for (auto& [id, p] : providers_) {
            p.load = 0.0;
            p.served = 0.0;
        }
        refresh_directory(t);

        // seed requests fire
        if (auto it = seeds_by_tick_.find(t); it != seeds_by_tick_.end()) {
            for (const auto& seed : it->second) {
                if (!triggered_.count(seed.entity)) {
                    triggered_.insert(seed.entity);
                    base_demand_[seed.entity] = seed.demand;
                    log(std::to_string(t) + ",seed_request," + seed.entity + "," +
                        fmt_double(seed.demand));
                }
            }
        }

        // one horizontal adoption round per tick
        if (sc_.avalanche.horizontal_adopt_prob > 0.0 && !triggered_.empty()) {
            for (const EntityId& node : horizontal_adoption_round(
                     triggered_, adjacency_, sc_.avalanche.horizontal_adopt_prob, sc_.seed, t)) {
                EntityId source;
                for (const EntityId& n : adjacency_.at(node))
                    if (triggered_.count(n)) {
                        source = n;
                        break;
                    }
                triggered_.insert(node);
                base_demand_[node] =
                    self_driven_demand(base_demand_.at(source), sc_.avalanche.self_driven_uncertainty);
                log(std::to_string(t) + ",adopt," + node + "," + source);
            }
        }

        // every triggered requester issues one request per tick
        for (const EntityId& id : triggered_) {
            const Entity& e = entities_.at(id);
            if (!e.roles.requester) continue;
            const double demand =
                self_driven_demand(base_demand_.at(id), sc_.avalanche.self_driven_uncertainty);
            count_request(demand);
            if (report_.saturated) break;
            log(std::to_string(t) + ",request," + id + "," + fmt_double(demand));
            dispatch(t, SimRequest{id, e.level, demand});
            if (report_.saturated) break;
        }

        // providers serve, earn and maybe stop
        int no_profit = 0;
        for (auto& [id, p] : providers_) {
            if (!p.serving) {
                p.profit.push_back(0.0);
                continue;
            }
            p.served = std::min(p.load, p.entity->capacity);
            const double profit = p.served - p.entity->serve_cost;
            p.profit.push_back(profit);
            if (p.load > 0.0)
                log(std::to_string(t) + ",serve," + id + "," + fmt_double(p.served) + "," +
                    fmt_double(p.load - p.served));
            if (profit < 0.0) {
                ++no_profit;
                ++report_.no_profit_serving_ticks;
            }
            if (!step_inertia(*p.entity, p.profit, t)) {
                p.serving = false;
                log(std::to_string(t) + ",stop_serving," + id);
            }
        }

        review_bonds(t);

        // cycles advance one event per tick
        for (auto& c : cycles_)
            if (!c.done) advance_cycle(t, c);
        cycles_.erase(std::remove_if(cycles_.begin(), cycles_.end(),
                                     [](const CycleState& c) { return c.done; }),
                      cycles_.end());

        // northwise discount offers from underutilized bonded providers
        for (const auto& [id, p] : providers_) {
            if (!p.serving || p.entity->capacity <= 0.0) continue;
            const double utilization = p.load / p.entity->capacity;
            if (auto n = northwise_notify(id, utilization, sc_.northwise_threshold, sc_.form)) {
                ++report_.notifications;
                log(std::to_string(t) + ",northwise," + id + "," + fmt_double(n->utilization));
            }
        }

        double grade_sum = 0.0;
        for (const auto& [id, b] : bonds_) grade_sum += bond_grade(b.schedule);
        TickMetrics row;
        row.tick = t;
        row.requests = requests_this_tick_;
        row.demanded = demanded_this_tick_;
        row.abandoned = abandoned_this_tick_;
        row.no_profit_serving = no_profit;
        row.triggered = static_cast<int>(triggered_.size());
        row.mean_bond_grade =
            bonds_.empty() ? 0.0 : grade_sum / static_cast<double>(bonds_.size());
        report_.per_tick.push_back(row);
        report_.total_abandoned += abandoned_this_tick_;
    }

    const Scenario& sc_;
    std::map<EntityId, Entity> entities_;
    std::map<EntityId, std::vector<EntityId>> adjacency_;
    std::map<EntityId, ProviderState> providers_;
    std::map<int, std::vector<SeedRequest>> seeds_by_tick_;
    std::set<EntityId> triggered_;
    std::map<EntityId, double> base_demand_;
    std::map<EntityId, Bond> bonds_;  // keyed by requester
    std::vector<CycleState> cycles_;
    std::set<std::pair<EntityId, EntityId>> active_cycles_;
    long long next_cycle_id_ = 1;
    int broker_successes_ = 0;
    bool broker_discrete_fired_ = false;
    long long requests_this_tick_ = 0;
    double demanded_this_tick_ = 0.0;
    double abandoned_this_tick_ = 0.0;
    LogDigest digest_;
    SimReport report_;
};

}  // namespace

SimReport run(const Scenario& scenario) { return SimRun(scenario).go(); }

}  // namespace svcbond
