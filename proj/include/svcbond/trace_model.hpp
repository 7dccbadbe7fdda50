#pragma once

#include <vector>

#include "svcbond/types.hpp"

namespace svcbond {

// Timestamps a scheme generates over a horizon. Uniform grids are anchored at
// horizon.begin + phase; piecewise grids are anchored at each piece's start.
std::vector<double> scheme_timestamps(const SamplingScheme& scheme, const Interval& horizon);

// Constant trace of the advertised values at the given audit timestamps.
Trace make_reference_trace(const SloTuple& slo, const std::vector<double>& timestamps);

// Decode a signal into a trace under a sampling scheme. slo_ref names the
// metrics of the produced trace; every generated timestamp must fall inside
// the signal horizon.
Trace sample_signal(const Signal& signal, const SamplingScheme& scheme, const SloTuple& slo_ref);

// Largest period in the halving chain start_period, start_period/2, ... whose
// zero-order-hold reconstruction (and the one at half that period) deviates
// from the raw signal on less than `tol` of the horizon, one-sided: only time
// where the reconstruction claims better service than was delivered counts.
// Throws NonConvergenceError after max_halvings failed probes.
double converged_period(const Signal& signal, const SloTuple& slo, double start_period, double tol,
                        int max_halvings = 40);

}  // namespace svcbond
