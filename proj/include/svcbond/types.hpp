#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "svcbond/errors.hpp"

namespace svcbond {

using EntityId = std::string;

enum class Orientation { HigherIsBetter, LowerIsBetter };

// One named, oriented metric of a coded service representation.
struct MetricSpec {
    std::string name;
    double value = 0.0;
    std::string unit;
    Orientation orientation = Orientation::HigherIsBetter;
};

// Coded representation of a service: named target values, e.g. (DS=25Mbps, US=3Mbps).
class SloTuple {
  public:
    explicit SloTuple(std::vector<MetricSpec> metrics);

    const std::vector<MetricSpec>& metrics() const { return metrics_; }
    std::size_t arity() const { return metrics_.size(); }
    std::vector<double> values() const;
    std::vector<std::string> names() const;

  private:
    std::vector<MetricSpec> metrics_;
};

struct Vec2 {
    double x = 0.0;
    double y = 0.0;
};

// Half-open interval [begin, end).
struct Interval {
    double begin = 0.0;
    double end = 0.0;

    bool contains(double t) const { return t >= begin && t < end; }
    double length() const { return end - begin; }
};

// Axis-aligned rectangle with inclusive bounds, used for spatial interest regions.
struct Rect {
    double x0 = 0.0, y0 = 0.0, x1 = 0.0, y1 = 0.0;

    bool contains(const Vec2& p) const {
        return p.x >= x0 && p.x <= x1 && p.y >= y0 && p.y <= y1;
    }
};

// One piece of a piecewise-constant delivered service.
struct Segment {
    Interval span;
    std::optional<Vec2> location;
    std::vector<double> values;
};

// Piecewise-constant ground truth of the delivered service over a horizon.
// Segments are sorted, disjoint and tile the horizon exactly.
class Signal {
  public:
    Signal(Interval horizon, std::vector<Segment> segments);

    const Interval& horizon() const { return horizon_; }
    const std::vector<Segment>& segments() const { return segments_; }
    std::size_t arity() const { return segments_.front().values.size(); }

    // Segment containing t. Throws OutOfHorizonError when t is outside the horizon.
    const Segment& segment_at(double t) const;

  private:
    Interval horizon_;
    std::vector<Segment> segments_;
};

// One timestamped (optionally located) measurement tuple.
struct Sample {
    double timestamp = 0.0;
    std::optional<Vec2> location;
    std::vector<double> values;
};

// Finite ordered decoded representation of a service. Sample values may be
// negative: difference traces are stored in the same shape.
class Trace {
  public:
    Trace(SloTuple slo_ref, std::vector<Sample> samples);

    const SloTuple& slo_ref() const { return slo_ref_; }
    const std::vector<Sample>& samples() const { return samples_; }
    std::size_t size() const { return samples_.size(); }
    std::vector<double> timestamps() const;

  private:
    SloTuple slo_ref_;
    std::vector<Sample> samples_;
};

// Sampling regimes for decoding a signal into a trace.
struct UniformScheme {
    double period = 1.0;
    double phase = 0.0;
};

struct PiecewiseScheme {
    struct Piece {
        Interval span;
        double period = 1.0;
    };
    std::vector<Piece> pieces;
};

struct ExplicitScheme {
    std::vector<double> timestamps;
};

using SamplingScheme = std::variant<UniformScheme, PiecewiseScheme, ExplicitScheme>;

namespace detail {
void require(bool condition, const std::string& what);
}

}  // namespace svcbond
