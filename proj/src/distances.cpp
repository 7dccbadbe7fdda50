#include "svcbond/distances.hpp"

#include <algorithm>
#include <cmath>

namespace svcbond {

DistanceTuple::DistanceTuple(std::vector<Component> components)
    : components_(std::move(components)) {
    detail::require(!components_.empty(), "DistanceTuple needs at least one component");
    for (const auto& c : components_)
        detail::require(std::isfinite(c.value) && c.value >= 0.0 && c.value <= 1.0,
                        "DistanceTuple component '" + c.name + "' outside [0, 1]");
}

std::vector<double> DistanceTuple::values() const {
    std::vector<double> out;
    out.reserve(components_.size());
    for (const auto& c : components_) out.push_back(c.value);
    return out;
}

bool DistanceTuple::is_zero() const {
    return std::all_of(components_.begin(), components_.end(),
                       [](const Component& c) { return c.value == 0.0; });
}

bool DistanceTuple::all_leq(const DistanceTuple& other, double slack) const {
    if (other.arity() != arity()) throw IncompatibleTracesError("distance tuple arity mismatch");
    for (std::size_t i = 0; i < components_.size(); ++i)
        if (components_[i].value > other.components_[i].value + slack) return false;
    return true;
}

DistanceKind default_kind(Perspective side, double period) {
    if (side == Perspective::Requester) return RXd{{}, period};
    return PBd{period, 0.0};
}

double kind_period(const DistanceKind& kind) {
    return std::visit([](const auto& k) { return k.period; }, kind);
}

std::string kind_name(const DistanceKind& kind) {
    struct Namer {
        std::string operator()(const RBd&) const { return "rbd"; }
        std::string operator()(const RXd&) const { return "rxd"; }
        std::string operator()(const PBd&) const { return "pbd"; }
        std::string operator()(const PId&) const { return "pid"; }
        std::string operator()(const RXdSpatial&) const { return "rxd_spatial"; }
    };
    return std::visit(Namer{}, kind);
}

namespace {

// U(z) = 1 for z > 0; exactly meeting the advertised value is compliant.
inline int unit_step(double z) { return z > 0.0 ? 1 : 0; }

DistanceTuple count_violations(const Trace& delivered, const Trace& reference) {
    const auto& del = delivered.samples();
    const auto& ref = reference.samples();
    const auto& metrics = reference.slo_ref().metrics();
    std::vector<long long> hits(metrics.size(), 0);
    for (std::size_t i = 0; i < del.size(); ++i) {
        for (std::size_t m = 0; m < metrics.size(); ++m) {
            const double z = metrics[m].orientation == Orientation::HigherIsBetter
                                 ? ref[i].values[m] - del[i].values[m]
                                 : del[i].values[m] - ref[i].values[m];
            hits[m] += unit_step(z);
        }
    }
    std::vector<DistanceTuple::Component> out;
    out.reserve(metrics.size());
    for (std::size_t m = 0; m < metrics.size(); ++m)
        out.push_back({metrics[m].name,
                       static_cast<double>(hits[m]) / static_cast<double>(del.size())});
    return DistanceTuple(std::move(out));
}

}  // namespace

DistanceTuple step_distance(const Trace& delivered, const Trace& reference) {
    if (delivered.slo_ref().arity() != reference.slo_ref().arity())
        throw IncompatibleTracesError("trace metric arity mismatch");
    if (delivered.size() != reference.size())
        throw IncompatibleTracesError("trace sample counts differ");
    const auto& del = delivered.samples();
    const auto& ref = reference.samples();
    for (std::size_t i = 0; i < del.size(); ++i)
        if (del[i].timestamp != ref[i].timestamp)
            throw IncompatibleTracesError("trace timestamps differ at sample " +
                                          std::to_string(i));
    return count_violations(delivered, reference);
}

DistanceTuple rbd_norm(const Trace& delta) {
    const auto& samples = delta.samples();
    detail::require(!samples.empty(), "rbd norm needs a non-empty difference trace");
    const auto& metrics = delta.slo_ref().metrics();
    std::vector<long long> hits(metrics.size(), 0);
    for (const auto& s : samples)
        for (std::size_t m = 0; m < metrics.size(); ++m) hits[m] += unit_step(s.values[m]);
    std::vector<DistanceTuple::Component> out;
    out.reserve(metrics.size());
    for (std::size_t m = 0; m < metrics.size(); ++m)
        out.push_back({metrics[m].name,
                       static_cast<double>(hits[m]) / static_cast<double>(samples.size())});
    return DistanceTuple(std::move(out));
}

namespace {

std::vector<double> interest_timestamps(const std::vector<Interval>& interest, double period,
                                        const Interval& horizon) {
    detail::require(!interest.empty(), "interest intervals must be non-empty");
    PiecewiseScheme scheme;
    for (const auto& iv : interest) scheme.pieces.push_back({iv, period});
    return scheme_timestamps(scheme, horizon);
}

DistanceTuple distance_at(const Signal& signal, const SloTuple& slo,
                          const std::vector<double>& timestamps) {
    const Trace reference = make_reference_trace(slo, timestamps);
    const Trace delivered = sample_signal(signal, ExplicitScheme{timestamps}, slo);
    return step_distance(delivered, reference);
}

DistanceTuple spatial_distance(const Signal& signal, const SloTuple& slo,
                               const RXdSpatial& kind) {
    detail::require(!kind.regions.empty(), "spatial audit needs at least one interest region");
    const auto ts = interest_timestamps(kind.interest, kind.period, signal.horizon());
    std::vector<Sample> qualifying;
    for (double t : ts) {
        const Segment& seg = signal.segment_at(t);
        if (!seg.location) continue;
        const bool in_region = std::any_of(kind.regions.begin(), kind.regions.end(),
                                           [&](const Rect& r) { return r.contains(*seg.location); });
        if (in_region) qualifying.push_back(Sample{t, seg.location, seg.values});
    }
    detail::require(!qualifying.empty(),
                    "no sample fell inside the interest regions and intervals");
    std::vector<double> kept;
    kept.reserve(qualifying.size());
    for (const auto& s : qualifying) kept.push_back(s.timestamp);
    return step_distance(Trace(slo, std::move(qualifying)), make_reference_trace(slo, kept));
}

}  // namespace

DistanceTuple distance(const Signal& signal, const SloTuple& slo, const DistanceKind& kind) {
    detail::require(slo.arity() == signal.arity(), "slo arity must match the signal");
    const Interval hor = signal.horizon();
    if (const auto* rbd = std::get_if<RBd>(&kind)) {
        return distance_at(signal, slo,
                           scheme_timestamps(UniformScheme{rbd->period, rbd->phase}, hor));
    }
    if (const auto* pbd = std::get_if<PBd>(&kind)) {
        // pBd is defined to coincide with rBd.
        return distance_at(signal, slo,
                           scheme_timestamps(UniformScheme{pbd->period, pbd->phase}, hor));
    }
    if (const auto* rxd = std::get_if<RXd>(&kind)) {
        return distance_at(signal, slo, interest_timestamps(rxd->interest, rxd->period, hor));
    }
    if (const auto* pid = std::get_if<PId>(&kind)) {
        detail::require(pid->phase >= 0.0, "pId phase must be >= 0");
        detail::require(pid->phase < hor.length(),
                        "pId sampling produced no timestamps inside the horizon");
        return distance_at(signal, slo,
                           scheme_timestamps(UniformScheme{pid->period, pid->phase}, hor));
    }
    return spatial_distance(signal, slo, std::get<RXdSpatial>(kind));
}

std::optional<std::pair<double, double>> find_illusion_period(const Signal& signal,
                                                              const SloTuple& slo,
                                                              double max_period) {
    detail::require(max_period > 0.0, "max_period must be > 0");
    constexpr int kPeriodHalvings = 16;
    constexpr int kPhaseSteps = 24;
    const double horizon_length = signal.horizon().length();
    double period = max_period;
    for (int j = 0; j <= kPeriodHalvings; ++j, period /= 2.0) {
        for (int i = 0; i < kPhaseSteps; ++i) {
            const double phase = period * static_cast<double>(i) / kPhaseSteps;
            if (phase >= horizon_length) continue;
            if (distance(signal, slo, PId{period, phase}).is_zero())
                return std::make_pair(period, phase);
        }
    }
    return std::nullopt;
}

namespace {

constexpr double kSecondsPerHour = 3600.0;
constexpr double kSecondsPerDay = 86400.0;

double integrate_metric(const Signal& signal, std::size_t metric, const Interval& window) {
    double acc = 0.0;
    for (const auto& seg : signal.segments()) {
        const double lo = std::max(seg.span.begin, window.begin);
        const double hi = std::min(seg.span.end, window.end);
        if (hi > lo) acc += seg.values[metric] * (hi - lo);
    }
    return acc;
}

}  // namespace

std::vector<double> prime_time_mean(const Signal& signal, const Signal& usage_weight, int days,
                                    double window_hours) {
    detail::require(days >= 1, "days must be >= 1");
    detail::require(window_hours > 0.0 && window_hours <= 24.0,
                    "window must be within one day");
    detail::require(usage_weight.arity() == 1, "usage weight must carry a single metric");
    const double start = signal.horizon().begin;
    const double needed = start + static_cast<double>(days) * kSecondsPerDay;
    detail::require(signal.horizon().end >= needed && usage_weight.horizon().end >= needed &&
                        usage_weight.horizon().begin <= start,
                    "horizons must cover the requested whole days");

    const double window_len = window_hours * kSecondsPerHour;
    const int last_start_hour = static_cast<int>(std::floor(24.0 - window_hours));
    const std::size_t arity = signal.arity();
    std::vector<double> sums(arity, 0.0);

    for (int d = 0; d < days; ++d) {
        const double day_begin = start + static_cast<double>(d) * kSecondsPerDay;
        double best_usage = -1.0;
        Interval best_window{};
        for (int h = 0; h <= last_start_hour; ++h) {
            const Interval w{day_begin + h * kSecondsPerHour,
                             day_begin + h * kSecondsPerHour + window_len};
            const double usage = integrate_metric(usage_weight, 0, w);
            if (usage > best_usage) {  // ties keep the earliest hour
                best_usage = usage;
                best_window = w;
            }
        }
        for (std::size_t m = 0; m < arity; ++m)
            sums[m] += integrate_metric(signal, m, best_window) / window_len;
    }

    for (double& s : sums) s /= static_cast<double>(days);
    return sums;
}

}  // namespace svcbond
