#include "stepchev/bernstein.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace stepchev {

namespace {

double xlogy(double x, double ratio) {
    if (x == 0.0) return 0.0;  // 0 ln 0 convention
    return x * std::log(ratio);
}

} // namespace

double divergence(double p, double q) {
    if (std::isnan(p) || std::isnan(q)) throw PreconditionError("divergence: NaN input");
    if (p < 0.0 || p > 1.0) throw PreconditionError("divergence requires p in [0,1]");
    if (q < 0.0 || q > 1.0) throw PreconditionError("divergence requires q in [0,1]");
    if (q == 0.0) return p == 0.0 ? 0.0 : kInf;
    if (q == 1.0) return p == 1.0 ? 0.0 : kInf;
    return xlogy(p, p / q) + xlogy(1.0 - p, (1.0 - p) / (1.0 - q));
}

double chernoff_lower_tail(long n, double x, double a) {
    if (n < 1) throw PreconditionError("chernoff_lower_tail requires n >= 1");
    if (!(0.0 < a && a < x && x < 1.0))
        throw PreconditionError("chernoff_lower_tail requires 0 < a < x < 1");
    return std::exp(-static_cast<double>(n) * divergence(a, x));
}

double chernoff_upper_tail(long n, double x, double b) {
    if (n < 1) throw PreconditionError("chernoff_upper_tail requires n >= 1");
    if (!(0.0 < x && x < b && b < 1.0))
        throw PreconditionError("chernoff_upper_tail requires 0 < x < b < 1");
    return std::exp(-static_cast<double>(n) * divergence(b, x));
}

BernsteinEvaluator::BernsteinEvaluator(const RealFn& f, int n) : n_(n) {
    if (n < 1) throw PreconditionError("Bernstein operator requires n >= 1");
    if (n > kComposeDegreeCap)
        throw ConstructionError("Bernstein degree " + std::to_string(n) +
                                " exceeds the cap of " + std::to_string(kComposeDegreeCap));
    samples_.resize(n + 1);
    log_binom_.resize(n + 1);
    const double lg_n1 = std::lgamma(n + 1.0);
    for (int k = 0; k <= n; ++k) {
        samples_[k] = f(static_cast<double>(k) / n);
        log_binom_[k] = lg_n1 - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
    }
}

double BernsteinEvaluator::operator()(double x) const {
    if (x == 0.0) return samples_.front();
    if (x == 1.0) return samples_.back();
    NeumaierSum acc;
    if (x > 0.0 && x < 1.0) {
        const double lx = std::log(x);
        const double l1x = std::log1p(-x);
        for (int k = 0; k <= n_; ++k) {
            if (samples_[k] == 0.0) continue;
            acc.add(samples_[k] * std::exp(log_binom_[k] + k * lx + (n_ - k) * l1x));
        }
    } else {
        // Outside [0,1] the weights change sign; fall back to direct powers.
        for (int k = 0; k <= n_; ++k) {
            if (samples_[k] == 0.0) continue;
            acc.add(samples_[k] * std::exp(log_binom_[k]) * std::pow(x, k) *
                    std::pow(1.0 - x, n_ - k));
        }
    }
    return acc.value();
}

Polynomial bernstein_apply(const RealFn& f, int n) {
    BernsteinEvaluator eval(f, n);
    return Polynomial::from_samples([eval = std::move(eval)](double x) { return eval(x); }, n,
                                    Interval(0.0, 1.0));
}

BernsteinApprox two_segment_approx(double h, double y0, double y1, int n) {
    if (!(h > 0.0 && h < 0.5))
        throw PreconditionError("two_segment_approx requires 0 < h < 1/2");
    if (n < 1) throw PreconditionError("two_segment_approx requires n >= 1");

    const double mid_value = 0.5 * (y0 + y1);
    auto step = [y0, y1, mid_value](double t) {
        if (t < 0.5) return y0;
        if (t > 0.5) return y1;
        return mid_value;
    };
    BernsteinEvaluator eval(step, n);
    Polynomial poly = Polynomial::from_samples([&](double x) { return eval(x); }, n,
                                               Interval(0.0, 1.0));

    const double amplitude = 0.5 * std::abs(y1 - y0);
    const double base = 4.0 * h * (1.0 - h);
    BoundCertificate cert;
    cert.formula = BoundFormula::h_bound;
    cert.params = {{"h", h}, {"n", static_cast<double>(n)}, {"amplitude", amplitude}};
    cert.value = 2.0 * amplitude * std::pow(base, 0.5 * n);

    auto error_near = [y0, y1, mid_value, n](double target) -> RealFn {
        auto shifted = [y0, y1, mid_value, target](double t) {
            if (t < 0.5) return y0 - target;
            if (t > 0.5) return y1 - target;
            return mid_value - target;
        };
        BernsteinEvaluator recentred(shifted, n);
        return [recentred = std::move(recentred)](double x) { return std::abs(recentred(x)); };
    };
    return {std::move(poly), std::move(cert),
            [eval = std::move(eval)](double x) { return eval(x); }, std::move(error_near)};
}

BernsteinApprox equal_two_segment(const IntervalSystem& sys, double y0, double y1, int n) {
    if (sys.size() != 2) throw PreconditionError("equal_two_segment requires exactly 2 segments");
    const SystemStats st = system_stats(sys);

    // Equalize: grow the shorter segment inward-edge-first so both have
    // half-length delta while sigma is kept; the new diameter is sigma+4delta.
    const Interval left(sys.part(0).hi - 2.0 * st.delta, sys.part(0).hi);
    const Interval right(sys.part(1).lo, sys.part(1).lo + 2.0 * st.delta);
    const IntervalSystem enlarged({left, right});
    const double d_prime = st.sigma + 4.0 * st.delta;

    auto [unit_sys, to_unit] = normalize(enlarged, Interval(0.0, 1.0));
    const double h = 2.0 * st.delta / d_prime;
    BernsteinApprox unit = two_segment_approx(h, y0, y1, n);

    Polynomial poly = affine_pullback(unit.poly, to_unit);
    const double amplitude = 0.5 * std::abs(y1 - y0);
    const double base = 1.0 - (st.sigma * st.sigma) / (d_prime * d_prime);
    BoundCertificate cert;
    cert.formula = BoundFormula::two_seg;
    cert.params = {{"sigma", st.sigma},
                   {"delta", st.delta},
                   {"D_prime", d_prime},
                   {"n", static_cast<double>(n)},
                   {"amplitude", amplitude}};
    cert.value = 2.0 * amplitude * std::pow(base, 0.5 * n);
    RealFn exact = [inner = unit.exact, to_unit](double x) { return inner(to_unit(x)); };
    auto error_near = [inner = unit.error_near, to_unit](double target) -> RealFn {
        return [fn = inner(target), to_unit](double x) { return fn(to_unit(x)); };
    };
    return {std::move(poly), std::move(cert), std::move(exact), std::move(error_near)};
}

BernsteinApprox eps_two(const ValueSet& y, double delta, int n) {
    if (y.size() != 2) throw PreconditionError("eps_two requires a two-point value set");
    const IntervalSystem inflated = inflate(y, delta);  // checks delta range
    BernsteinApprox result = equal_two_segment(inflated, y.points()[0], y.points()[1], n);
    result.certificate.formula = BoundFormula::eps_two;
    result.certificate.params["delta"] = delta;
    return result;
}

ErrorReport bernstein_sup_error(const BernsteinApprox& approx, const StepFunction& f,
                                const GridSpec& grid) {
    const int degree = approx.poly.degree();
    ErrorReport report;
    report.per_interval_error.resize(f.system.size());
    long grid_size = 0;
    for (std::size_t i = 0; i < f.system.size(); ++i) {
        const RealFn err = approx.error_near(f.values[i]);
        report.per_interval_error[i] = sup_norm(err, degree, f.system.part(i), grid);
        grid_size += grid.effective_points(degree);
    }
    report.global_error = 0.0;
    for (double e : report.per_interval_error)
        report.global_error = std::max(report.global_error, e);
    report.hull_norm = sup_norm(approx.exact, degree, f.system.hull(), grid);
    report.grid_size = grid_size + grid.effective_points(degree);
    return report;
}

} // namespace stepchev
