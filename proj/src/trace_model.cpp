#include "svcbond/trace_model.hpp"

#include <algorithm>
#include <cmath>

namespace svcbond {

namespace {

void append_grid(std::vector<double>& out, double anchor, double period, double end) {
    detail::require(period > 0.0 && std::isfinite(period), "sampling period must be > 0");
    // k*period instead of repeated addition keeps grid points exact.
    for (std::size_t k = 0;; ++k) {
        const double t = anchor + static_cast<double>(k) * period;
        if (t >= end) break;
        out.push_back(t);
    }
}

}  // namespace

std::vector<double> scheme_timestamps(const SamplingScheme& scheme, const Interval& horizon) {
    std::vector<double> out;
    if (const auto* u = std::get_if<UniformScheme>(&scheme)) {
        detail::require(u->phase >= 0.0, "uniform phase must be >= 0");
        append_grid(out, horizon.begin + u->phase, u->period, horizon.end);
    } else if (const auto* pw = std::get_if<PiecewiseScheme>(&scheme)) {
        detail::require(!pw->pieces.empty(), "piecewise scheme needs at least one piece");
        double prev_end = -std::numeric_limits<double>::infinity();
        for (const auto& piece : pw->pieces) {
            detail::require(piece.span.end > piece.span.begin,
                            "piecewise piece interval must be non-empty");
            detail::require(piece.span.begin >= prev_end,
                            "piecewise piece intervals must be disjoint and sorted");
            append_grid(out, piece.span.begin, piece.period, piece.span.end);
            prev_end = piece.span.end;
        }
    } else {
        const auto& ts = std::get<ExplicitScheme>(scheme).timestamps;
        detail::require(!ts.empty(), "explicit scheme needs at least one timestamp");
        for (std::size_t i = 1; i < ts.size(); ++i)
            detail::require(ts[i] > ts[i - 1], "explicit timestamps must be strictly increasing");
        out = ts;
    }
    return out;
}

Trace make_reference_trace(const SloTuple& slo, const std::vector<double>& timestamps) {
    detail::require(!timestamps.empty(), "reference trace needs at least one timestamp");
    for (std::size_t i = 1; i < timestamps.size(); ++i)
        detail::require(timestamps[i] > timestamps[i - 1],
                        "reference timestamps must be strictly increasing");
    std::vector<Sample> samples;
    samples.reserve(timestamps.size());
    const std::vector<double> values = slo.values();
    for (double t : timestamps) samples.push_back(Sample{t, std::nullopt, values});
    return Trace(slo, std::move(samples));
}

Trace sample_signal(const Signal& signal, const SamplingScheme& scheme, const SloTuple& slo_ref) {
    detail::require(slo_ref.arity() == signal.arity(),
                    "slo_ref arity must match the signal's metric arity");
    const std::vector<double> ts = scheme_timestamps(scheme, signal.horizon());
    detail::require(!ts.empty(), "sampling scheme produced no timestamps inside the horizon");
    std::vector<Sample> samples;
    samples.reserve(ts.size());
    for (double t : ts) {
        const Segment& seg = signal.segment_at(t);  // throws OutOfHorizonError
        samples.push_back(Sample{t, seg.location, seg.values});
    }
    return Trace(slo_ref, std::move(samples));
}

namespace {

// Fraction of the horizon, per metric, where the zero-order-hold of the trace
// sampled at `period` claims better service than the raw signal delivers.
// Only sampling cells that straddle a segment boundary can contribute, so the
// cost is O(segments) regardless of how small the period gets.
std::vector<double> hold_overstatement(const Signal& signal, const SloTuple& slo, double period) {
    const Interval hor = signal.horizon();
    const std::size_t arity = signal.arity();
    std::vector<double> over(arity, 0.0);
    const auto& segs = signal.segments();

    std::vector<long long> cells;
    for (std::size_t i = 1; i < segs.size(); ++i) {
        const auto k =
            static_cast<long long>(std::floor((segs[i].span.begin - hor.begin) / period));
        // Neighbouring cells guard against boundary/rounding placement; cells
        // interior to one segment contribute nothing anyway.
        for (long long d = -1; d <= 1; ++d)
            if (k + d >= 0) cells.push_back(k + d);
    }
    std::sort(cells.begin(), cells.end());
    cells.erase(std::unique(cells.begin(), cells.end()), cells.end());

    for (long long k : cells) {
        const double c0 = hor.begin + static_cast<double>(k) * period;
        if (c0 >= hor.end) continue;
        const double c1 = std::min(hor.begin + static_cast<double>(k + 1) * period, hor.end);
        const Segment& held = signal.segment_at(c0);
        double t = c0;
        while (t < c1) {
            const Segment& seg = signal.segment_at(t);
            const double piece_end = std::min(seg.span.end, c1);
            for (std::size_t m = 0; m < arity; ++m) {
                const bool better = slo.metrics()[m].orientation == Orientation::HigherIsBetter
                                        ? held.values[m] > seg.values[m]
                                        : held.values[m] < seg.values[m];
                if (better) over[m] += piece_end - t;
            }
            t = piece_end;
        }
    }
    for (double& v : over) v /= hor.length();
    return over;
}

bool all_below(const std::vector<double>& xs, double tol) {
    return std::all_of(xs.begin(), xs.end(), [tol](double x) { return x < tol; });
}

}  // namespace

double converged_period(const Signal& signal, const SloTuple& slo, double start_period, double tol,
                        int max_halvings) {
    detail::require(start_period > 0.0, "start_period must be > 0");
    detail::require(tol > 0.0, "tol must be > 0");
    detail::require(slo.arity() == signal.arity(), "slo arity must match the signal");

    double period = start_period;
    for (int k = 0; k <= max_halvings; ++k, period /= 2.0) {
        if (all_below(hold_overstatement(signal, slo, period), tol) &&
            all_below(hold_overstatement(signal, slo, period / 2.0), tol))
            return period;
    }
    throw NonConvergenceError("no oversampling period found within " +
                              std::to_string(max_halvings) + " halvings of " +
                              std::to_string(start_period));
}

}  // namespace svcbond
