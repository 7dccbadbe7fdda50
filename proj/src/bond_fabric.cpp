#include "svcbond/bond_fabric.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace svcbond {

BondSchedule::BondSchedule(double horizon, std::vector<Interval> bonded)
    : horizon_(horizon), bonded_(std::move(bonded)) {
    detail::require(std::isfinite(horizon_) && horizon_ > 0.0,
                    "schedule horizon must be > 0");
    double cursor = 0.0;
    for (const auto& iv : bonded_) {
        detail::require(iv.end > iv.begin, "bonded interval must be non-empty");
        detail::require(iv.begin >= cursor, "bonded intervals must be sorted and disjoint");
        detail::require(iv.end <= horizon_, "bonded interval exceeds the horizon");
        cursor = iv.end;
    }
}

double BondSchedule::bonded_length() const {
    double total = 0.0;
    for (const auto& iv : bonded_) total += iv.length();
    return total;
}

double bond_grade(const BondSchedule& schedule) {
    return schedule.bonded_length() / schedule.horizon();
}

BondSchedule modulate(const BondSchedule& schedule, double target_grade, double max_interval) {
    detail::require(target_grade >= 0.0 && target_grade <= 1.0, "target grade outside [0, 1]");
    detail::require(max_interval > 0.0, "max_interval must be > 0");
    const double horizon = schedule.horizon();
    if (target_grade == 0.0) return BondSchedule(horizon, {});

    const auto slots = static_cast<std::size_t>(std::ceil(horizon / max_interval));
    std::vector<Interval> bonded;
    bonded.reserve(slots);
    for (std::size_t k = 0; k < slots; ++k) {
        const double begin = horizon * static_cast<double>(k) / static_cast<double>(slots);
        const double next = horizon * static_cast<double>(k + 1) / static_cast<double>(slots);
        const double end = std::min(begin + target_grade * (next - begin), next);
        if (end > begin) bonded.push_back({begin, end});
    }
    return BondSchedule(horizon, std::move(bonded));
}

bool is_bonded_at(const BondSchedule& schedule, double t) {
    if (!(t >= 0.0 && t < schedule.horizon()))
        throw OutOfHorizonError("time " + std::to_string(t) + " outside schedule horizon [0, " +
                                std::to_string(schedule.horizon()) + ")");
    const auto& bonded = schedule.bonded();
    auto it = std::upper_bound(bonded.begin(), bonded.end(), t,
                               [](double v, const Interval& iv) { return v < iv.end; });
    return it != bonded.end() && it->contains(t);
}

bool privacy_ok(const BondSchedule& schedule, double entity_change_frequency) {
    detail::require(entity_change_frequency > 0.0, "change frequency must be > 0");
    const double onset_frequency =
        static_cast<double>(schedule.bonded().size()) / schedule.horizon();
    return onset_frequency < entity_change_frequency;
}

ReviewOutcome review_bond(const Bond& bond, const AuditReport& report,
                          const ReviewPolicy& policy) {
    if (report.passed) return Renew{};
    if (bond.consecutive_failures + 1 >= policy.dissolve_after) return Dissolve{};
    const double damped = bond_grade(bond.schedule) * policy.damping;
    return Adjust{std::max(damped, policy.min_grade)};
}

Bond apply_review(Bond bond, const ReviewOutcome& outcome, double max_interval) {
    if (std::holds_alternative<Renew>(outcome)) {
        bond.consecutive_failures = 0;
    } else if (const auto* adjust = std::get_if<Adjust>(&outcome)) {
        bond.consecutive_failures += 1;
        bond.schedule = modulate(bond.schedule, adjust->new_grade, max_interval);
    } else {
        bond.consecutive_failures += 1;
        bond.schedule = BondSchedule(bond.schedule.horizon(), {});
    }
    return bond;
}

double accumulated_upkeep(const Bond& bond) {
    return bond.upkeep_rate * bond.schedule.bonded_length();
}

std::vector<std::set<EntityId>> communities(const Molecule& molecule) {
    std::map<EntityId, EntityId> parent;
    for (const auto& e : molecule.entities) {
        detail::require(!e.empty(), "entity id must be non-empty");
        detail::require(parent.emplace(e, e).second, "entity id '" + e + "' repeated");
    }

    // Union-find with path halving; keyed by id so the output order is stable.
    auto find = [&parent](EntityId x) {
        while (parent.at(x) != x) {
            x = parent.at(x) = parent.at(parent.at(x));
        }
        return x;
    };

    std::set<std::pair<EntityId, EntityId>> seen_pairs;
    for (const auto& [a, b] : molecule.bonds) {
        detail::require(a != b, "a bond cannot join an entity to itself");
        detail::require(parent.count(a) == 1 && parent.count(b) == 1,
                        "bond endpoint missing from the molecule's entities");
        auto key = a < b ? std::make_pair(a, b) : std::make_pair(b, a);
        detail::require(seen_pairs.insert(key).second,
                        "at most one bond per unordered entity pair");
        const EntityId ra = find(a);
        const EntityId rb = find(b);
        if (ra != rb) parent[std::max(ra, rb)] = std::min(ra, rb);
    }

    std::map<EntityId, std::set<EntityId>> by_root;
    for (const auto& e : molecule.entities) by_root[find(e)].insert(e);
    std::vector<std::set<EntityId>> out;
    out.reserve(by_root.size());
    for (auto& [root, members] : by_root) out.push_back(std::move(members));
    return out;
}

}  // namespace svcbond
