#include "stepchev/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <thread>

namespace stepchev {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kTrimThreshold = 1e-300;

void trim_trailing(std::vector<double>& c) {
    while (c.size() > 1 && std::abs(c.back()) < kTrimThreshold) c.pop_back();
}

// Golden-section maximization of g on [a, b], 40 iterations.
double golden_max(const std::function<double(double)>& g, double a, double b) {
    constexpr double inv_phi = 0.6180339887498949;
    double x1 = b - inv_phi * (b - a);
    double x2 = a + inv_phi * (b - a);
    double f1 = g(x1), f2 = g(x2);
    for (int it = 0; it < 40; ++it) {
        if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = g(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = g(x1);
        }
    }
    return std::max(f1, f2);
}

// max over indices [0, n) of value(i), chunked over STEPCHEV_THREADS workers.
// The reduction is an exact max, so the result is thread-count independent.
double parallel_max(long n, const std::function<double(long)>& value) {
    const int workers = thread_count();
    if (workers <= 1 || n < 4096) {
        double m = -kInf;
        for (long i = 0; i < n; ++i) m = std::max(m, value(i));
        return m;
    }
    std::vector<double> partial(workers, -kInf);
    std::vector<std::thread> pool;
    const long chunk = (n + workers - 1) / workers;
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            const long lo = w * chunk;
            const long hi = std::min(n, lo + chunk);
            double m = -kInf;
            for (long i = lo; i < hi; ++i) m = std::max(m, value(i));
            partial[w] = m;
        });
    }
    for (auto& t : pool) t.join();
    double m = -kInf;
    for (double v : partial) m = std::max(m, v);
    return m;
}

// Grid argmax of g over iv, refined by golden-section in the bracket around
// the argmax.  Refinement can only increase the reported value.
double scan_max(const std::function<double(double)>& g, const Interval& iv, int points,
                GridSpec::Distribution dist, bool refine, long& evals) {
    if (iv.length() == 0.0) {
        evals += 1;
        return g(iv.lo);
    }
    const std::vector<double> xs = make_grid(iv, points, dist);
    evals += static_cast<long>(xs.size());
    std::vector<double> vals(xs.size());
    const long n = static_cast<long>(xs.size());
    if (thread_count() > 1 && n >= 4096) {
        (void)parallel_max(n, [&](long i) { return vals[i] = g(xs[i]); });
    } else {
        for (long i = 0; i < n; ++i) vals[i] = g(xs[i]);
    }
    std::size_t best = 0;
    for (std::size_t i = 1; i < xs.size(); ++i)
        if (vals[i] > vals[best]) best = i;
    double result = vals[best];
    if (refine) {
        const double lo = xs[best == 0 ? 0 : best - 1];
        const double hi = xs[best + 1 < xs.size() ? best + 1 : best];
        if (hi > lo) {
            evals += 82;
            result = std::max(result, golden_max(g, lo, hi));
        }
    }
    return result;
}

} // namespace

Polynomial::Polynomial(Interval ref, std::vector<double> coeffs)
    : ref_(ref), coeffs_(std::move(coeffs)) {
    if (coeffs_.empty()) coeffs_.push_back(0.0);
    for (double c : coeffs_)
        if (!std::isfinite(c)) throw ConstructionError("polynomial coefficients must be finite");
    trim_trailing(coeffs_);
    if (ref_.length() == 0.0 && coeffs_.size() > 1)
        throw PreconditionError("non-constant polynomial needs an anchor interval of positive length");
}

Polynomial Polynomial::constant(double c, Interval ref) { return Polynomial(ref, {c}); }

Polynomial Polynomial::from_samples(const std::function<double(double)>& f, int degree,
                                    Interval ref) {
    if (degree < 0) throw PreconditionError("from_samples requires degree >= 0");
    const int n = degree;
    const double mid = ref.mid();
    const double half = ref.half_length();
    if (n == 0) return Polynomial(ref, {f(mid)});

    // Chebyshev-Lobatto samples x_j = cos(pi j / n) mapped to ref.
    std::vector<double> fx(n + 1);
    for (int j = 0; j <= n; ++j) {
        double x;
        if (j == 0)
            x = ref.hi;
        else if (j == n)
            x = ref.lo;
        else
            x = mid + half * std::cos(kPi * j / n);
        fx[j] = f(x);
    }

    // DCT-I evaluated through an exact cos table: cos(pi*j*k/n) = table[(j*k) mod 2n].
    std::vector<double> cost(2 * static_cast<std::size_t>(n));
    for (int t = 0; t < 2 * n; ++t) cost[t] = std::cos(kPi * t / n);

    std::vector<double> coeffs(n + 1);
    for (int k = 0; k <= n; ++k) {
        NeumaierSum acc;
        acc.add(0.5 * fx[0]);
        acc.add(0.5 * ((k % 2 == 0) ? fx[n] : -fx[n]));
        for (int j = 1; j < n; ++j) {
            const std::size_t idx = (static_cast<std::size_t>(j) * k) % (2 * n);
            acc.add(fx[j] * cost[idx]);
        }
        double c = 2.0 * acc.value() / n;
        if (k == 0 || k == n) c *= 0.5;
        coeffs[k] = c;
    }
    return Polynomial(ref, std::move(coeffs));
}

double Polynomial::operator()(double x) const {
    const int n = degree();
    if (n == 0) return coeffs_[0];
    // Degenerate anchors only ever hold constants, handled above.
    const double t = (2.0 * x - (ref_.lo + ref_.hi)) / (ref_.hi - ref_.lo);
    double b1 = 0.0, b2 = 0.0;
    for (int k = n; k >= 1; --k) {
        const double b = coeffs_[k] + 2.0 * t * b1 - b2;
        b2 = b1;
        b1 = b;
    }
    return coeffs_[0] + t * b1 - b2;
}

Polynomial& Polynomial::operator+=(const Polynomial& other) {
    if (ref_.lo != other.ref_.lo || ref_.hi != other.ref_.hi)
        throw PreconditionError("polynomial addition requires identical reference intervals");
    if (other.coeffs_.size() > coeffs_.size()) coeffs_.resize(other.coeffs_.size(), 0.0);
    for (std::size_t k = 0; k < other.coeffs_.size(); ++k) coeffs_[k] += other.coeffs_[k];
    trim_trailing(coeffs_);
    return *this;
}

Polynomial& Polynomial::operator*=(double a) {
    for (double& c : coeffs_) c *= a;
    trim_trailing(coeffs_);
    return *this;
}

Polynomial& Polynomial::add_constant(double c) {
    coeffs_[0] += c;
    return *this;
}

Polynomial compose(const Polynomial& outer, const Polynomial& inner) {
    const long degree = static_cast<long>(outer.degree()) * inner.degree();
    if (degree > kComposeDegreeCap)
        throw ConstructionError("composition degree " + std::to_string(degree) +
                                " exceeds the cap of " + std::to_string(kComposeDegreeCap));
    return Polynomial::from_samples([&](double x) { return outer(inner(x)); },
                                    static_cast<int>(degree), inner.ref());
}

Polynomial affine_pullback(const Polynomial& p, const AffineMap& map) {
    const Interval ref = map.inverse().map(p.ref());
    std::vector<double> coeffs = p.coeffs();
    if (map.scale < 0)
        for (std::size_t k = 1; k < coeffs.size(); k += 2) coeffs[k] = -coeffs[k];
    return Polynomial(ref, std::move(coeffs));
}

int GridSpec::effective_points(int degree_hint) const {
    if (points_per_interval > 0) {
        if (points_per_interval < 2) throw PreconditionError("grid needs at least 2 points per interval");
        return points_per_interval;
    }
    const long auto_pts = 32L * (std::max(degree_hint, 0) + 1);
    return static_cast<int>(std::max(auto_pts, 257L));
}

std::vector<double> make_grid(const Interval& iv, int points, GridSpec::Distribution dist) {
    std::vector<double> xs(points);
    if (points == 1) {
        xs[0] = iv.mid();
        return xs;
    }
    const double mid = iv.mid();
    const double half = iv.half_length();
    for (int j = 0; j < points; ++j) {
        if (j == 0)
            xs[j] = iv.lo;
        else if (j == points - 1)
            xs[j] = iv.hi;
        else if (dist == GridSpec::Distribution::clustered)
            xs[j] = mid - half * std::cos(kPi * j / (points - 1));
        else
            xs[j] = iv.lo + iv.length() * j / (points - 1);
    }
    return xs;
}

ErrorReport sup_error(const RealFn& g, int degree_hint, const StepFunction& f,
                      const GridSpec& grid) {
    const int points = grid.effective_points(degree_hint);
    ErrorReport report;
    report.per_interval_error.resize(f.system.size());
    long evals = 0;
    for (std::size_t i = 0; i < f.system.size(); ++i) {
        const double target = f.values[i];
        auto err = [&](double x) { return std::abs(g(x) - target); };
        report.per_interval_error[i] =
            scan_max(err, f.system.part(i), points, grid.distribution, grid.refine, evals);
    }
    report.global_error = 0.0;
    for (double e : report.per_interval_error) report.global_error = std::max(report.global_error, e);
    auto mag = [&](double x) { return std::abs(g(x)); };
    report.hull_norm = scan_max(mag, f.system.hull(), points, grid.distribution, grid.refine, evals);
    report.grid_size = evals;
    return report;
}

ErrorReport sup_error(const Polynomial& p, const StepFunction& f, const GridSpec& grid) {
    return sup_error([&](double x) { return p(x); }, p.degree(), f, grid);
}

double sup_norm(const RealFn& g, int degree_hint, const Interval& on, const GridSpec& grid) {
    const int points = grid.effective_points(degree_hint);
    long evals = 0;
    auto mag = [&](double x) { return std::abs(g(x)); };
    return scan_max(mag, on, points, grid.distribution, grid.refine, evals);
}

double sup_norm(const Polynomial& p, const Interval& on, const GridSpec& grid) {
    return sup_norm([&](double x) { return p(x); }, p.degree(), on, grid);
}

} // namespace stepchev
