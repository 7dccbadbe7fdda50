#include "svcbond/service_cycle.hpp"

namespace svcbond {

std::string to_string(CyclePhase phase) {
    switch (phase) {
        case CyclePhase::Request: return "request";
        case CyclePhase::Advertisement: return "advertisement";
        case CyclePhase::Negotiation: return "negotiation";
        case CyclePhase::Provide: return "provide";
        case CyclePhase::Audition: return "audition";
        case CyclePhase::Acceptance: return "acceptance";
        case CyclePhase::Termination: return "termination";
    }
    return "?";
}

std::string to_string(CycleEvent event) {
    switch (event) {
        case CycleEvent::Request: return "request";
        case CycleEvent::Advertise: return "advertise";
        case CycleEvent::Agree: return "agree";
        case CycleEvent::Deliver: return "deliver";
        case CycleEvent::Audit: return "audit";
        case CycleEvent::Accept: return "accept";
        case CycleEvent::Dispute: return "dispute";
        case CycleEvent::Terminate: return "terminate";
    }
    return "?";
}

CyclePhase advance(CyclePhase phase, CycleEvent event) {
    switch (phase) {
        case CyclePhase::Request:
            if (event == CycleEvent::Advertise) return CyclePhase::Advertisement;
            break;
        case CyclePhase::Advertisement:
            if (event == CycleEvent::Agree) return CyclePhase::Negotiation;
            break;
        case CyclePhase::Negotiation:
            if (event == CycleEvent::Deliver) return CyclePhase::Provide;
            break;
        case CyclePhase::Provide:
            if (event == CycleEvent::Audit) return CyclePhase::Audition;
            break;
        case CyclePhase::Audition:
            if (event == CycleEvent::Accept) return CyclePhase::Acceptance;
            if (event == CycleEvent::Deliver) return CyclePhase::Provide;
            if (event == CycleEvent::Dispute) return CyclePhase::Termination;
            break;
        case CyclePhase::Acceptance:
            if (event == CycleEvent::Terminate) return CyclePhase::Termination;
            break;
        case CyclePhase::Termination:
            break;
    }
    throw InvalidTransitionError("event '" + to_string(event) + "' is illegal in phase '" +
                                 to_string(phase) + "'");
}

Agreement negotiate(const SloTuple& request, const Advertisement& ad,
                    const DistanceKind& requested_kind, const DistanceTuple& thresholds,
                    double review_period, EntityId requester) {
    detail::require(request.names() == ad.base.names(),
                    "advertisement base metrics must match the requested metrics");
    detail::require(ad.advertised.arity() == ad.base.arity(),
                    "advertised arity must match the base arity");
    detail::require(thresholds.arity() == ad.advertised.arity(),
                    "threshold arity must match the advertised metrics");
    detail::require(review_period > 0.0, "review period must be > 0");
    if (std::holds_alternative<PId>(requested_kind))
        throw NegotiationRejectedError(
            "pId auditing is removed from the negotiable options");
    return Agreement{ad.advertised, requested_kind, thresholds,
                     review_period, std::move(requester), ad.provider};
}

AuditReport audit(const Agreement& agreement, const Signal& delivered) {
    if (delivered.horizon().length() < agreement.review_period)
        throw InsufficientDataError("delivered signal covers " +
                                    std::to_string(delivered.horizon().length()) +
                                    " s, shorter than the review period of " +
                                    std::to_string(agreement.review_period) + " s");
    DistanceTuple requester_view = distance(delivered, agreement.slo, agreement.audit_kind);
    DistanceTuple provider_view =
        distance(delivered, agreement.slo, PBd{kind_period(agreement.audit_kind), 0.0});
    const bool passed = requester_view.all_leq(agreement.thresholds);
    return AuditReport{std::move(requester_view), std::move(provider_view), passed};
}

ServiceCycle::ServiceCycle(int milestone_retry_cap) : retry_cap_(milestone_retry_cap) {
    detail::require(milestone_retry_cap >= 0, "retry cap must be >= 0");
}

void ServiceCycle::advance(CycleEvent event) {
    if (phase_ == CyclePhase::Audition && event == CycleEvent::Deliver) {
        if (milestone_retries_ >= retry_cap_)
            throw InvalidTransitionError("milestone re-audit budget of " +
                                         std::to_string(retry_cap_) + " exhausted");
        ++milestone_retries_;
    }
    if (phase_ == CyclePhase::Audition && event == CycleEvent::Dispute) disputed_ = true;
    phase_ = svcbond::advance(phase_, event);
}

}  // namespace svcbond
