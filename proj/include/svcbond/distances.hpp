#pragma once

#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "svcbond/trace_model.hpp"
#include "svcbond/types.hpp"

namespace svcbond {

// Per-metric audited under-delivery fractions, each in [0, 1].
class DistanceTuple {
  public:
    struct Component {
        std::string name;
        double value = 0.0;
    };

    explicit DistanceTuple(std::vector<Component> components);

    const std::vector<Component>& components() const { return components_; }
    std::size_t arity() const { return components_.size(); }
    std::vector<double> values() const;

    bool is_zero() const;
    // True when every component is <= the matching component of `other`.
    bool all_leq(const DistanceTuple& other, double slack = 0.0) const;

  private:
    std::vector<Component> components_;
};

// Audit distance kinds. They differ only in how audit timestamps are drawn.
struct RBd {  // requester-blind: uniform grid over the whole horizon
    double period = 1.0;
    double phase = 0.0;
};
struct RXd {  // requester-experience: uniform grid inside intervals of interest
    std::vector<Interval> interest;
    double period = 1.0;
};
struct PBd {  // provider-blind; by definition identical to RBd
    double period = 1.0;
    double phase = 0.0;
};
struct PId {  // provider-illusion: sparse grid that can skip every violation
    double period = 1.0;
    double phase = 0.0;
};
struct RXdSpatial {  // requester-experience over combined time/location interest
    std::vector<Rect> regions;
    std::vector<Interval> interest;
    double period = 1.0;
};

using DistanceKind = std::variant<RBd, RXd, PBd, PId, RXdSpatial>;

enum class Perspective { Requester, Provider };

// Default audit kind per side: requesters audit experience, providers blind-sample.
DistanceKind default_kind(Perspective side, double period);

double kind_period(const DistanceKind& kind);
std::string kind_name(const DistanceKind& kind);

// Mean one-sided step distance between a delivered trace and its reference.
// Per metric: (1/M) * sum_i U(ref_i - del_i) with U(z) = 1 for z > 0, 0
// otherwise, so meeting the advertised value exactly is compliant. Metrics
// oriented lower-is-better compare in the opposite direction.
DistanceTuple step_distance(const Trace& delivered, const Trace& reference);

// Norm form: fraction of strictly positive entries in a signed difference trace.
DistanceTuple rbd_norm(const Trace& delta);

// Audit a delivered signal against a coded SLO under the given distance kind.
DistanceTuple distance(const Signal& signal, const SloTuple& slo, const DistanceKind& kind);

// Search a halving period grid (largest first) with phases stepped across each
// period for a pId sampling that reports a zero distance tuple.
std::optional<std::pair<double, double>> find_illusion_period(const Signal& signal,
                                                              const SloTuple& slo,
                                                              double max_period);

// Mean over `days` of the delivered-metric mean inside each day's busiest
// contiguous window (window start scanned over whole hours), where busiest
// means maximal integrated usage weight. Returned values align with the
// signal's metric order.
std::vector<double> prime_time_mean(const Signal& signal, const Signal& usage_weight, int days,
                                    double window_hours = 3.0);

}  // namespace svcbond
