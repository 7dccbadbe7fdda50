#include "svcbond/types.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

namespace svcbond {

namespace detail {

void require(bool condition, const std::string& what) {
    if (!condition) throw InvalidInputError(what);
}

}  // namespace detail

SloTuple::SloTuple(std::vector<MetricSpec> metrics) : metrics_(std::move(metrics)) {
    detail::require(!metrics_.empty(), "SloTuple needs at least one metric");
    std::unordered_set<std::string> seen;
    for (const auto& m : metrics_) {
        detail::require(!m.name.empty(), "SloTuple metric name must be non-empty");
        detail::require(std::isfinite(m.value) && m.value >= 0.0,
                        "SloTuple metric '" + m.name + "' must be finite and >= 0");
        detail::require(seen.insert(m.name).second,
                        "SloTuple metric name '" + m.name + "' repeated");
    }
}

std::vector<double> SloTuple::values() const {
    std::vector<double> out;
    out.reserve(metrics_.size());
    for (const auto& m : metrics_) out.push_back(m.value);
    return out;
}

std::vector<std::string> SloTuple::names() const {
    std::vector<std::string> out;
    out.reserve(metrics_.size());
    for (const auto& m : metrics_) out.push_back(m.name);
    return out;
}

Signal::Signal(Interval horizon, std::vector<Segment> segments)
    : horizon_(horizon), segments_(std::move(segments)) {
    detail::require(horizon_.end > horizon_.begin, "Signal horizon must be non-empty");
    detail::require(!segments_.empty(), "Signal needs at least one segment");
    const std::size_t arity = segments_.front().values.size();
    detail::require(arity > 0, "Signal segments need at least one metric value");
    double cursor = horizon_.begin;
    for (std::size_t i = 0; i < segments_.size(); ++i) {
        const Segment& s = segments_[i];
        detail::require(s.values.size() == arity, "Signal segment arity mismatch");
        detail::require(s.span.end > s.span.begin, "Signal segment interval must be non-empty");
        detail::require(s.span.begin == cursor,
                        "Signal segments must tile the horizon contiguously");
        for (double v : s.values)
            detail::require(std::isfinite(v) && v >= 0.0, "Signal values must be finite and >= 0");
        cursor = s.span.end;
    }
    detail::require(cursor == horizon_.end, "Signal segments must cover the whole horizon");
}

const Segment& Signal::segment_at(double t) const {
    if (!(t >= horizon_.begin && t < horizon_.end))
        throw OutOfHorizonError("timestamp " + std::to_string(t) + " outside signal horizon [" +
                                std::to_string(horizon_.begin) + ", " +
                                std::to_string(horizon_.end) + ")");
    // First segment whose end exceeds t.
    auto it = std::upper_bound(segments_.begin(), segments_.end(), t,
                               [](double v, const Segment& s) { return v < s.span.end; });
    return *it;
}

Trace::Trace(SloTuple slo_ref, std::vector<Sample> samples)
    : slo_ref_(std::move(slo_ref)), samples_(std::move(samples)) {
    detail::require(!samples_.empty(), "Trace needs at least one sample");
    double prev = -std::numeric_limits<double>::infinity();
    for (const auto& s : samples_) {
        detail::require(std::isfinite(s.timestamp), "Trace timestamps must be finite");
        detail::require(s.timestamp > prev, "Trace timestamps must be strictly increasing");
        detail::require(s.values.size() == slo_ref_.arity(),
                        "Trace sample arity must match its SloTuple");
        prev = s.timestamp;
    }
}

std::vector<double> Trace::timestamps() const {
    std::vector<double> out;
    out.reserve(samples_.size());
    for (const auto& s : samples_) out.push_back(s.timestamp);
    return out;
}

}  // namespace svcbond
