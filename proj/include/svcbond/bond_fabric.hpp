#pragma once

#include <set>
#include <utility>
#include <variant>
#include <vector>

#include "svcbond/service_cycle.hpp"
#include "svcbond/types.hpp"

namespace svcbond {

// Bonded/disbonded alternation of one bilateral bond over [0, horizon).
// Bonded intervals are sorted and disjoint; touching intervals are allowed.
class BondSchedule {
  public:
    BondSchedule(double horizon, std::vector<Interval> bonded);

    double horizon() const { return horizon_; }
    const std::vector<Interval>& bonded() const { return bonded_; }
    double bonded_length() const;

  private:
    double horizon_;
    std::vector<Interval> bonded_;
};

// Fraction of the horizon spent bonded, in [0, 1].
double bond_grade(const BondSchedule& schedule);

// Re-spread the schedule to hit target_grade using bonded intervals of at
// most max_interval each, one per equally sized slot. The resulting grade is
// within 1/(2*ceil(horizon/max_interval)) of the target (exact in practice).
BondSchedule modulate(const BondSchedule& schedule, double target_grade, double max_interval);

// Half-open membership test; throws OutOfHorizonError outside [0, horizon).
bool is_bonded_at(const BondSchedule& schedule, double t);

// True when the bond onset frequency (bonded intervals per second of horizon)
// stays below the entity's frequency of change, so no behavioural model of
// the counterparty can be sampled through the bond.
bool privacy_ok(const BondSchedule& schedule, double entity_change_frequency);

struct ReviewPolicy {
    double damping = 0.5;
    double min_grade = 0.05;
    int dissolve_after = 3;
};

// A bilateral service relation: two entities, the agreement that governs it,
// its time modulation and the resources the bonded state consumes.
struct Bond {
    EntityId a;
    EntityId b;
    Agreement agreement;
    BondSchedule schedule;
    double upkeep_rate = 0.0;
    int consecutive_failures = 0;
};

struct Renew {};
struct Adjust {
    double new_grade = 0.0;
};
struct Dissolve {};
using ReviewOutcome = std::variant<Renew, Adjust, Dissolve>;

// Periodic review: a passing report renews, a failing one damps the grade,
// and dissolve_after consecutive failures end the bond.
ReviewOutcome review_bond(const Bond& bond, const AuditReport& report, const ReviewPolicy& policy);

// Fold a review outcome back into the bond value. Adjust re-modulates the
// schedule to the damped grade with bonded intervals of at most max_interval.
Bond apply_review(Bond bond, const ReviewOutcome& outcome, double max_interval);

// Resources consumed by the bonded state over the whole horizon:
// upkeep_rate * grade * horizon.
double accumulated_upkeep(const Bond& bond);

// Entities-as-atoms bond graph. At most one bond per unordered pair.
struct Molecule {
    std::vector<EntityId> entities;
    std::vector<std::pair<EntityId, EntityId>> bonds;
};

// Connected components of the bond graph, each a community. Components are
// ordered by their smallest entity id.
std::vector<std::set<EntityId>> communities(const Molecule& molecule);

}  // namespace svcbond
