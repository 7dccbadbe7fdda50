#pragma once

#include <string>

#include "svcbond/distances.hpp"
#include "svcbond/types.hpp"

namespace svcbond {

enum class CyclePhase {
    Request,
    Advertisement,
    Negotiation,
    Provide,
    Audition,
    Acceptance,
    Termination,
};

enum class CycleEvent {
    Request,
    Advertise,
    Agree,
    Deliver,
    Audit,
    Accept,
    Dispute,
    Terminate,
};

std::string to_string(CyclePhase phase);
std::string to_string(CycleEvent event);

// Pure transition table of the seven-step cycle. Throws InvalidTransitionError
// naming both the phase and the event for every illegal pair.
//
//   Request --advertise--> Advertisement --agree--> Negotiation
//     --deliver--> Provide --audit--> Audition
//   Audition --accept--> Acceptance --terminate--> Termination
//   Audition --deliver--> Provide          (milestone re-audit loop)
//   Audition --dispute--> Termination      (failed final audit)
CyclePhase advance(CyclePhase phase, CycleEvent event);

// A potential matching service: base request A plus the provider margin epsilon.
struct Advertisement {
    SloTuple base;
    SloTuple advertised;
    EntityId provider;
};

struct Agreement {
    SloTuple slo;
    DistanceKind audit_kind;
    DistanceTuple thresholds;
    double review_period = 86400.0;
    EntityId requester;
    EntityId provider;
};

// Settle on the advertised service and the audit terms. pId is never
// negotiable; asking for it raises NegotiationRejectedError.
Agreement negotiate(const SloTuple& request, const Advertisement& ad,
                    const DistanceKind& requested_kind, const DistanceTuple& thresholds,
                    double review_period = 86400.0, EntityId requester = "requester");

struct AuditReport {
    DistanceTuple requester_view;
    DistanceTuple provider_view;
    bool passed = false;
};

// Audit a delivered signal under both perspective norms. The requester view
// uses the agreed kind; the provider view blind-samples at the same period.
AuditReport audit(const Agreement& agreement, const Signal& delivered);

// One cycle instance: tracks the phase, the milestone re-audit budget and
// whether termination was reached through a dispute.
class ServiceCycle {
  public:
    explicit ServiceCycle(int milestone_retry_cap = 3);

    CyclePhase phase() const { return phase_; }
    bool disputed() const { return disputed_; }
    int milestone_retries() const { return milestone_retries_; }

    void advance(CycleEvent event);

  private:
    CyclePhase phase_ = CyclePhase::Request;
    int milestone_retries_ = 0;
    int retry_cap_;
    bool disputed_ = false;
};

}  // namespace svcbond
