#include "stepchev/interval.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace stepchev {

Interval::Interval(double lo_, double hi_) : lo(lo_), hi(hi_) {
    if (!std::isfinite(lo) || !std::isfinite(hi))
        throw PreconditionError("interval endpoints must be finite");
    if (lo > hi)
        throw PreconditionError("interval requires lo <= hi, got [" + std::to_string(lo_) +
                                ", " + std::to_string(hi_) + "]");
}

AffineMap::AffineMap(double scale_, double shift_) : scale(scale_), shift(shift_) {
    if (!std::isfinite(scale) || !std::isfinite(shift) || scale == 0.0)
        throw PreconditionError("affine map requires finite coefficients and scale != 0");
}

Interval AffineMap::map(const Interval& iv) const {
    const double a = (*this)(iv.lo);
    const double b = (*this)(iv.hi);
    return scale > 0 ? Interval(a, b) : Interval(b, a);
}

IntervalSystem::IntervalSystem(std::vector<Interval> parts) : parts_(std::move(parts)) {
    if (parts_.empty())
        throw PreconditionError("interval system requires at least one segment");
    std::sort(parts_.begin(), parts_.end(),
              [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
    for (std::size_t i = 1; i < parts_.size(); ++i) {
        const double gap = parts_[i].lo - parts_[i - 1].hi;
        if (gap <= 0.0)
            throw PreconditionError("segments must be disjoint with positive gaps; offending pair [" +
                                    std::to_string(parts_[i - 1].lo) + "," + std::to_string(parts_[i - 1].hi) +
                                    "] and [" + std::to_string(parts_[i].lo) + "," +
                                    std::to_string(parts_[i].hi) + "]");
    }
}

StepFunction::StepFunction(IntervalSystem sys, std::vector<double> vals)
    : system(std::move(sys)), values(std::move(vals)) {
    if (values.size() != system.size())
        throw PreconditionError("step function needs exactly one value per segment");
    for (double v : values)
        if (!std::isfinite(v)) throw PreconditionError("step function values must be finite");
}

double StepFunction::max_abs_value() const {
    double m = 0.0;
    for (double v : values) m = std::max(m, std::abs(v));
    return m;
}

StepFunction make_step_function(std::vector<Interval> parts, std::vector<double> values) {
    if (parts.size() != values.size())
        throw PreconditionError("step function needs exactly one value per segment");
    std::vector<std::size_t> order(parts.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return parts[a].lo < parts[b].lo; });
    std::vector<Interval> sorted_parts;
    std::vector<double> sorted_values;
    sorted_parts.reserve(parts.size());
    sorted_values.reserve(parts.size());
    for (std::size_t i : order) {
        sorted_parts.push_back(parts[i]);
        sorted_values.push_back(values[i]);
    }
    return StepFunction(IntervalSystem(std::move(sorted_parts)), std::move(sorted_values));
}

ValueSet::ValueSet(std::vector<double> points) : points_(std::move(points)) {
    if (points_.size() < 2)
        throw PreconditionError("value set needs at least two points");
    for (double p : points_)
        if (!std::isfinite(p)) throw PreconditionError("value set points must be finite");
    for (std::size_t i = 1; i < points_.size(); ++i)
        if (points_[i] <= points_[i - 1])
            throw PreconditionError("value set must be strictly increasing");
}

double ValueSet::min_gap() const {
    double g = kInf;
    for (std::size_t i = 1; i < points_.size(); ++i)
        g = std::min(g, points_[i] - points_[i - 1]);
    return g;
}

double ValueSet::diameter() const { return points_.back() - points_.front(); }

SystemStats system_stats(const IntervalSystem& sys) {
    SystemStats st;
    st.s = sys.size();
    st.delta = 0.0;
    for (const Interval& iv : sys.parts()) st.delta = std::max(st.delta, iv.half_length());
    st.sigma = kInf;
    for (std::size_t i = 1; i < sys.size(); ++i)
        st.sigma = std::min(st.sigma, sys.part(i).lo - sys.part(i - 1).hi);
    st.D = sys.hull().length();
    return st;
}

IntervalSystem inflate(const ValueSet& y, double delta) {
    const double bound = 0.5 * y.min_gap();
    if (!(delta > 0.0) || !(delta < bound))
        throw PreconditionError("inflate requires 0 < delta < " + std::to_string(bound) +
                                " (half the smallest value gap)");
    std::vector<Interval> parts;
    parts.reserve(y.size());
    for (double p : y.points()) parts.emplace_back(p - delta, p + delta);
    return IntervalSystem(std::move(parts));
}

std::pair<IntervalSystem, AffineMap> normalize(const IntervalSystem& sys, const Interval& target) {
    const Interval hull = sys.hull();
    if (hull.length() <= 0.0)
        throw PreconditionError("cannot normalize a system of zero diameter");
    if (target.length() <= 0.0)
        throw PreconditionError("normalization target must have positive length");
    const double scale = target.length() / hull.length();
    const double shift = target.lo - scale * hull.lo;
    const AffineMap map(scale, shift);
    return {apply(map, sys), map};
}

IntervalSystem apply(const AffineMap& map, const IntervalSystem& sys) {
    std::vector<Interval> parts;
    parts.reserve(sys.size());
    for (const Interval& iv : sys.parts()) parts.push_back(map.map(iv));
    return IntervalSystem(std::move(parts));
}

} // namespace stepchev
