#include "stepchev/amplify.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <string>

#include "stepchev/newton.hpp"

namespace stepchev {

namespace {

constexpr double kPi = 3.14159265358979323846;

// sup |g - p| on iv: clustered grid plus the extension's kink points, with
// golden-section sharpening around the grid argmax.
double sup_diff(const RealFn& g, const Polynomial& p, const Interval& iv,
                const std::vector<double>& knots) {
    GridSpec grid;
    grid.points_per_interval = std::max(32 * (p.degree() + 1), 513);
    auto diff = [&](double x) { return g(x) - p(x); };
    double best = sup_norm(diff, p.degree(), iv, grid);
    for (double k : knots)
        if (iv.contains(k)) best = std::max(best, std::abs(diff(k)));
    return best;
}

struct VertexPattern {
    std::vector<double> values;  // entries in {-1, +1}
    double weight;
};

// Decomposes y in [-1,1]^s as a product-measure mixture of sign patterns.
// Coordinates already at +-1 contribute a single branch.
std::vector<VertexPattern> vertex_patterns(const std::vector<double>& y) {
    std::size_t free_coords = 0;
    for (double v : y)
        if (std::abs(v) != 1.0) ++free_coords;
    if (free_coords > 10)
        throw ConstructionError("pipeline vertex reduction limited to 10 non-vertex values");

    std::vector<VertexPattern> patterns{{std::vector<double>(), 1.0}};
    patterns[0].values.reserve(y.size());
    for (double v : y) {
        const double p_plus = 0.5 * (1.0 + v);
        std::vector<VertexPattern> next;
        next.reserve(patterns.size() * 2);
        for (const VertexPattern& pat : patterns) {
            if (p_plus > 0.0) {
                VertexPattern ext = pat;
                ext.values.push_back(1.0);
                ext.weight *= p_plus;
                next.push_back(std::move(ext));
            }
            if (p_plus < 1.0) {
                VertexPattern ext = pat;
                ext.values.push_back(-1.0);
                ext.weight *= 1.0 - p_plus;
                next.push_back(std::move(ext));
            }
        }
        patterns = std::move(next);
    }
    return patterns;
}

BoundCertificate pipeline_certificate(int m, int base_degree, double scale) {
    BoundCertificate cert;
    cert.formula = BoundFormula::pipeline;
    cert.value = scale * 2.0 * std::pow(0.75, 0.5 * m);
    cert.params = {{"m", static_cast<double>(m)},
                   {"eps", 0.5},
                   {"base_degree", static_cast<double>(base_degree)},
                   {"scale", scale}};
    if (base_degree > 0)
        cert.params["rate"] = 0.5 * std::log(4.0 / 3.0) / base_degree;
    return cert;
}

PipelineReport run_pipeline(const StepFunction& f, int m, int degree_budget) {
    if (f.system.size() < 2)
        throw PreconditionError("general_pipeline requires at least two segments");

    const double value_scale = std::max(1.0, f.max_abs_value());
    std::vector<double> y(f.values);
    for (double& v : y) v /= value_scale;

    auto [sys_n, to_norm] = normalize(f.system, Interval(-1.0, 1.0));

    const std::vector<VertexPattern> patterns = vertex_patterns(y);
    std::vector<JacksonBase> bases;
    bases.reserve(patterns.size());
    int base_degree = 0, target_degree = 0;
    double base_error = 0.0;
    for (const VertexPattern& pat : patterns) {
        bases.push_back(jackson_base(StepFunction(sys_n, pat.values)));
        base_degree = std::max(base_degree, bases.back().degree);
        target_degree = std::max(target_degree, bases.back().target_degree);
        base_error = std::max(base_error, bases.back().base_error);
    }

    if (degree_budget > 0) m = degree_budget / std::max(base_degree, 1);
    if (m < 1)
        throw PipelineBudgetError("pipeline needs m >= 1 (degree budget below the base degree)");

    auto [amp, amp_cert] = amplifier(m, 0.5);

    Polynomial combined = Polynomial::constant(0.0, Interval(-1.0, 1.0));
    for (std::size_t i = 0; i < patterns.size(); ++i) {
        Polynomial composite = compose(amp, bases[i].poly);
        composite *= patterns[i].weight;
        combined += composite;
    }

    Polynomial final_poly = affine_pullback(combined, to_norm);
    final_poly *= value_scale;

    PipelineReport report;
    report.base_degree = base_degree;
    report.base_target_degree = target_degree;
    report.base_error = base_error;
    report.amplifier_degree = m;
    report.total_degree = m * base_degree;
    report.certificate = pipeline_certificate(m, base_degree, value_scale);
    report.measured = sup_error(final_poly, f);
    report.constructive_rate = report.certificate.params.count("rate")
                                   ? report.certificate.params.at("rate")
                                   : 0.0;
    report.poly = std::move(final_poly);
    return report;
}

} // namespace

RealFn piecewise_linear_extension(const StepFunction& f) {
    struct Data {
        std::vector<Interval> parts;
        std::vector<double> values;
    };
    auto data = std::make_shared<Data>();
    data->parts = f.system.parts();
    data->values = f.values;
    return [data](double x) {
        const auto& parts = data->parts;
        const auto& values = data->values;
        if (x <= parts.front().hi) return values.front();
        if (x >= parts.back().lo) return values.back();
        // x is past parts[i].hi for some i; find the segment or gap holding it.
        std::size_t lo = 0, hi = parts.size() - 1;
        while (lo + 1 < hi) {
            const std::size_t mid = (lo + hi) / 2;
            if (x > parts[mid].hi)
                lo = mid;
            else
                hi = mid;
        }
        if (x >= parts[hi].lo) return values[hi];
        if (x <= parts[lo].hi) return values[lo];
        const double t = (x - parts[lo].hi) / (parts[hi].lo - parts[lo].hi);
        return values[lo] + t * (values[hi] - values[lo]);
    };
}

JacksonBase jackson_base(const StepFunction& f) {
    const Interval hull = f.system.hull();
    if (std::abs(hull.lo + 1.0) > 1e-9 || std::abs(hull.hi - 1.0) > 1e-9)
        throw PreconditionError("jackson_base expects a system normalized to hull [-1,1]");

    JacksonBase out;
    if (f.system.size() == 1) {
        out.poly = Polynomial::constant(f.values[0], Interval(-1.0, 1.0));
        out.hull_norm = std::abs(f.values[0]);
        return out;
    }

    const SystemStats st = system_stats(f.system);
    const int n0 = std::max(1, static_cast<int>(std::floor(4.0 * kPi / st.sigma)));
    const int cap = 16 * n0;
    out.target_degree = n0;

    const RealFn g = piecewise_linear_extension(f);
    std::vector<double> knots;
    for (const Interval& seg : f.system.parts()) {
        knots.push_back(seg.lo);
        knots.push_back(seg.hi);
    }

    int degree = n0;
    Polynomial fit = Polynomial::constant(0.0, Interval(-1.0, 1.0));
    double fit_error = kInf;
    while (true) {
        fit = Polynomial::from_samples(g, degree, Interval(-1.0, 1.0));
        fit_error = sup_diff(g, fit, Interval(-1.0, 1.0), knots);
        if (fit_error <= 0.25) break;
        if (degree >= cap)
            throw ConstructionError("jackson_base could not reach fit error 1/4 by degree " +
                                    std::to_string(cap) + " (measured " +
                                    std::to_string(fit_error) + ")");
        degree = std::min(cap, std::max(degree + 1, static_cast<int>(1.5 * degree)));
    }

    fit *= 0.8;  // the 4/5 rescale: hull norm <= (4/5)(1 + 1/4) = 1
    out.degree = degree;
    out.fit_error = fit_error;
    out.base_error = sup_error(fit, f).global_error;
    out.hull_norm = sup_norm(fit, Interval(-1.0, 1.0));
    out.poly = std::move(fit);
    return out;
}

std::pair<Polynomial, BoundCertificate> amplifier(int m, double eps) {
    if (m < 1) throw PreconditionError("amplifier requires m >= 1");
    if (!(eps > 0.0 && eps <= 0.5)) throw PreconditionError("amplifier requires 0 < eps <= 1/2");

    const double h = 0.5 * eps;
    BernsteinApprox unit = two_segment_approx(h, -1.0, 1.0, m);
    const AffineMap to_unit(0.5, 0.5);  // [-1,1] -> [0,1]
    Polynomial poly = affine_pullback(unit.poly, to_unit);

    BoundCertificate cert = unit.certificate;
    cert.params["eps"] = eps;
    return {std::move(poly), std::move(cert)};
}

PipelineReport general_pipeline(const StepFunction& f, int m) {
    if (m < 1) throw PreconditionError("general_pipeline requires m >= 1");
    return run_pipeline(f, m, 0);
}

PipelineReport general_pipeline_budget(const StepFunction& f, int degree_budget) {
    if (degree_budget < 1) throw PreconditionError("degree budget must be >= 1");
    return run_pipeline(f, 0, degree_budget);
}

std::pair<Polynomial, BoundCertificate> eps_general(const ValueSet& y, double delta, int n) {
    const IntervalSystem inflated = inflate(y, delta);
    const double centre = 0.5 * (y.points().front() + y.points().back());
    const double half_diam = 0.5 * y.diameter();

    std::vector<double> recentred(y.size());
    for (std::size_t i = 0; i < y.size(); ++i)
        recentred[i] = (y.points()[i] - centre) / half_diam;

    try {
        PipelineReport pipe = general_pipeline_budget(StepFunction(inflated, recentred), n);
        Polynomial poly = std::move(pipe.poly);
        poly *= half_diam;
        poly.add_constant(centre);
        BoundCertificate cert = pipe.certificate;
        cert.formula = BoundFormula::eps_general;
        cert.value *= half_diam;
        cert.params["value_scale"] = half_diam;
        cert.params["value_centre"] = centre;
        return {std::move(poly), std::move(cert)};
    } catch (const PipelineBudgetError&) {
        // Budget below the base degree: the midpoint constant is within
        // diam(Y)/2 of every value.
        BoundCertificate cert;
        cert.formula = BoundFormula::eps_general;
        cert.value = half_diam;
        cert.params = {{"trivial", 1.0}, {"value_scale", half_diam}, {"value_centre", centre}};
        return {Polynomial::constant(centre, inflated.hull()), std::move(cert)};
    }
}

PipelineReport self_amplify(const StepFunction& f, int inner_degree, int m) {
    if (m < 1) throw PreconditionError("self_amplify requires m >= 1");
    for (double v : f.values)
        if (std::abs(v) != 1.0)
            throw PreconditionError("self_amplify requires values in {-1, 1}");

    BestChoice inner = choose_best(f, inner_degree);
    const double eps_inner = sup_error(inner.poly, f).global_error;
    if (eps_inner >= 1.0)
        throw ConstructionError("self_amplify: inner error " + std::to_string(eps_inner) +
                                " >= 1, amplification impossible");

    const double delta = std::max(eps_inner, 1e-15);
    BernsteinApprox amp = eps_two(ValueSet({-1.0, 1.0}), delta, m);

    PipelineReport report;
    report.base_degree = inner.poly.degree();
    report.base_error = eps_inner;
    report.amplifier_degree = m;
    report.total_degree = m * inner.poly.degree();
    report.certificate = amp.certificate;
    report.certificate.params["eps_inner"] = eps_inner;
    report.poly = compose(amp.poly, inner.poly);
    report.measured = sup_error(report.poly, f);
    return report;
}

BestChoice choose_best(const StepFunction& f, int degree_budget) {
    if (degree_budget < 0) throw PreconditionError("degree budget must be >= 0");
    const std::size_t s = f.system.size();

    if (s == 1) {
        BoundCertificate cert;
        cert.formula = BoundFormula::small_delta;
        cert.value = 0.0;
        cert.params = {{"s", 1.0}};
        const Interval hull = f.system.hull();
        const Interval ref = hull.length() == 0.0 ? Interval(hull.lo - 0.5, hull.lo + 0.5) : hull;
        return {Polynomial::constant(f.values[0], ref), std::move(cert), "constant", 0};
    }

    struct Candidate {
        BestChoice choice;
        int priority;
    };
    std::vector<Candidate> candidates;

    if (s == 2 && degree_budget >= 1) {
        BernsteinApprox b = equal_two_segment(f.system, f.values[0], f.values[1], degree_budget);
        candidates.push_back(
            {{std::move(b.poly), std::move(b.certificate), "bernstein", degree_budget}, 0});
    }

    const SystemStats st = system_stats(f.system);
    const int newton_m = (degree_budget + 1) / static_cast<int>(s);
    const int newton_degree = newton_m >= 1 ? newton_m * static_cast<int>(s) - 1 : 0;
    auto [np, ncert] = small_delta_for_system(f, degree_budget, st.sigma / st.D);
    candidates.push_back({{std::move(np), std::move(ncert), "newton", newton_degree}, 1});

    if (degree_budget >= 1) {
        try {
            PipelineReport pipe = general_pipeline_budget(f, degree_budget);
            candidates.push_back(
                {{std::move(pipe.poly), std::move(pipe.certificate), "pipeline",
                  pipe.total_degree},
                 2});
        } catch (const PipelineBudgetError&) {
            // budget below base degree; pipeline not applicable
        }
    }

    std::size_t best = 0;
    for (std::size_t i = 1; i < candidates.size(); ++i) {
        const auto& a = candidates[i];
        const auto& b = candidates[best];
        const bool better =
            a.choice.certificate.value < b.choice.certificate.value ||
            (a.choice.certificate.value == b.choice.certificate.value &&
             (a.choice.degree < b.choice.degree ||
              (a.choice.degree == b.choice.degree && a.priority < b.priority)));
        if (better) best = i;
    }
    return std::move(candidates[best].choice);
}

} // namespace stepchev
