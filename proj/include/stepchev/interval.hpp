#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "stepchev/common.hpp"

namespace stepchev {

// Closed segment [lo, hi].  Degenerate point segments (lo == hi) are allowed.
struct Interval {
    double lo;
    double hi;

    Interval(double lo_, double hi_);

    double length() const { return hi - lo; }
    double half_length() const { return 0.5 * (hi - lo); }
    double mid() const { return 0.5 * (lo + hi); }
    bool contains(double x) const { return lo <= x && x <= hi; }
};

// Invertible map x -> scale*x + shift.
struct AffineMap {
    double scale;
    double shift;

    AffineMap(double scale_, double shift_);
    static AffineMap identity() { return AffineMap(1.0, 0.0); }

    double operator()(double x) const { return scale * x + shift; }
    AffineMap inverse() const { return AffineMap(1.0 / scale, -shift / scale); }
    AffineMap then(const AffineMap& outer) const {
        return AffineMap(outer.scale * scale, outer.scale * shift + outer.shift);
    }
    Interval map(const Interval& iv) const;
};

struct SystemStats {
    std::size_t s;  // segment count
    double delta;   // half of the largest segment length
    double sigma;   // smallest gap between consecutive segments (+inf for s=1)
    double D;       // diameter of the union
};

// Pairwise disjoint closed segments, kept sorted by left endpoint.
// Touching segments (gap == 0) are rejected.
class IntervalSystem {
  public:
    explicit IntervalSystem(std::vector<Interval> parts);

    const std::vector<Interval>& parts() const { return parts_; }
    std::size_t size() const { return parts_.size(); }
    const Interval& part(std::size_t i) const { return parts_[i]; }
    Interval hull() const { return Interval(parts_.front().lo, parts_.back().hi); }

  private:
    std::vector<Interval> parts_;
};

// Step function: value values[i] on system.part(i).  Values are paired with
// the sorted segment order.
struct StepFunction {
    IntervalSystem system;
    std::vector<double> values;

    StepFunction(IntervalSystem sys, std::vector<double> vals);

    double max_abs_value() const;
};

// Builds a StepFunction from possibly unsorted (segment, value) pairs.
StepFunction make_step_function(std::vector<Interval> parts, std::vector<double> values);

// Strictly increasing target values y_1 < ... < y_s, s >= 2.
class ValueSet {
  public:
    explicit ValueSet(std::vector<double> points);

    const std::vector<double>& points() const { return points_; }
    std::size_t size() const { return points_.size(); }
    double min_gap() const;   // sigma-hat
    double diameter() const;  // D-hat

  private:
    std::vector<double> points_;
};

SystemStats system_stats(const IntervalSystem& sys);

// {[y_i - delta, y_i + delta]} for delta in (0, min_gap/2).
IntervalSystem inflate(const ValueSet& y, double delta);

// Maps the system onto `target` ([0,1] or [-1,1]) so its hull equals target.
// Returns the mapped system and the map original -> normalized.
std::pair<IntervalSystem, AffineMap> normalize(const IntervalSystem& sys, const Interval& target);

// Image of a system under an affine map (segments re-sorted for scale < 0).
IntervalSystem apply(const AffineMap& map, const IntervalSystem& sys);

} // namespace stepchev
