#include "stepchev/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

namespace stepchev {

namespace {

constexpr double kWeightFloor = 1e-300;

// Chebyshev row phi_k(x), k = 0..degree, anchored to the hull.
void basis_row(double t, int degree, double* out) {
    out[0] = 1.0;
    if (degree >= 1) out[1] = t;
    for (int k = 2; k <= degree; ++k) out[k] = 2.0 * t * out[k - 1] - out[k - 2];
}

struct WeightedLsq {
    // Solves (Phi^T W Phi) c = Phi^T W y with Jacobi column scaling and a
    // ridge retry ladder.  Returns false only if every retry failed.
    static bool solve(const std::vector<std::vector<double>>& rows,
                      const std::vector<double>& weights, const std::vector<double>& targets,
                      int cols, std::vector<double>& coeffs, double& cond_estimate) {
        std::vector<double> g(static_cast<std::size_t>(cols) * cols, 0.0);
        std::vector<double> rhs(cols, 0.0);
        for (std::size_t r = 0; r < rows.size(); ++r) {
            const double w = weights[r];
            if (w <= 0.0) continue;
            const std::vector<double>& phi = rows[r];
            for (int i = 0; i < cols; ++i) {
                rhs[i] += w * phi[i] * targets[r];
                for (int j = i; j < cols; ++j) g[i * cols + j] += w * phi[i] * phi[j];
            }
        }
        for (int i = 0; i < cols; ++i)
            for (int j = 0; j < i; ++j) g[i * cols + j] = g[j * cols + i];

        std::vector<double> scale(cols);
        for (int i = 0; i < cols; ++i)
            scale[i] = g[i * cols + i] > 0.0 ? 1.0 / std::sqrt(g[i * cols + i]) : 1.0;

        std::vector<double> a(g.size());
        std::vector<double> b(cols);
        for (int attempt = 0; attempt < 4; ++attempt) {
            const double ridge = attempt == 0 ? 0.0 : std::pow(10.0, attempt - 15);
            for (int i = 0; i < cols; ++i) {
                for (int j = 0; j < cols; ++j)
                    a[i * cols + j] = g[i * cols + j] * scale[i] * scale[j];
                a[i * cols + i] += ridge;
                b[i] = rhs[i] * scale[i];
            }
            if (cholesky_solve(a, b, cols, cond_estimate)) {
                coeffs.resize(cols);
                for (int i = 0; i < cols; ++i) coeffs[i] = b[i] * scale[i];
                return true;
            }
        }
        return false;
    }

  private:
    static bool cholesky_solve(std::vector<double>& a, std::vector<double>& b, int n,
                               double& cond_estimate) {
        double dmin = kInf, dmax = 0.0;
        for (int i = 0; i < n; ++i) {
            for (int j = i; j < n; ++j) {
                double sum = a[i * n + j];
                for (int k = 0; k < i; ++k) sum -= a[i * n + k] * a[j * n + k];
                if (i == j) {
                    if (sum <= 0.0) return false;
                    a[i * n + i] = std::sqrt(sum);
                    dmin = std::min(dmin, a[i * n + i]);
                    dmax = std::max(dmax, a[i * n + i]);
                } else {
                    a[j * n + i] = sum / a[i * n + i];
                }
            }
        }
        cond_estimate = (dmax / dmin) * (dmax / dmin);
        for (int i = 0; i < n; ++i) {
            double sum = b[i];
            for (int k = 0; k < i; ++k) sum -= a[i * n + k] * b[k];
            b[i] = sum / a[i * n + i];
        }
        for (int i = n - 1; i >= 0; --i) {
            double sum = b[i];
            for (int k = i + 1; k < n; ++k) sum -= a[k * n + i] * b[k];
            b[i] = sum / a[i * n + i];
        }
        return true;
    }
};

double eval_coeffs(const std::vector<double>& coeffs, double t) {
    const int n = static_cast<int>(coeffs.size()) - 1;
    if (n == 0) return coeffs[0];
    double b1 = 0.0, b2 = 0.0;
    for (int k = n; k >= 1; --k) {
        const double b = coeffs[k] + 2.0 * t * b1 - b2;
        b2 = b1;
        b1 = b;
    }
    return coeffs[0] + t * b1 - b2;
}

} // namespace

double exact_binomial_tail(long n, double x, long k, TailSide side) {
    if (n < 1 || n > 10000) throw PreconditionError("exact_binomial_tail requires 1 <= n <= 1e4");
    if (!(x >= 0.0 && x <= 1.0)) throw PreconditionError("exact_binomial_tail requires x in [0,1]");
    if (side == TailSide::lower) {
        if (k < 0) return 0.0;
        if (k >= n) return 1.0;
        if (x == 0.0) return 1.0;
        if (x == 1.0) return 0.0;
    } else {
        if (k <= 0) return 1.0;
        if (k > n) return 0.0;
        if (x == 0.0) return 0.0;
        if (x == 1.0) return 1.0;
    }
    const double lg_n1 = std::lgamma(n + 1.0);
    const double lx = std::log(x);
    const double l1x = std::log1p(-x);
    const long lo = side == TailSide::lower ? 0 : k;
    const long hi = side == TailSide::lower ? k : n;
    NeumaierSum acc;
    for (long m = lo; m <= hi; ++m) {
        const double log_term =
            lg_n1 - std::lgamma(m + 1.0) - std::lgamma(n - m + 1.0) + m * lx + (n - m) * l1x;
        acc.add(std::exp(log_term));
    }
    return std::min(acc.value(), 1.0);
}

OracleResult minimax_fit(const StepFunction& f, int degree, bool bounded, const GridSpec& grid) {
    if (degree < 0 || degree > kOracleDegreeCap)
        throw PreconditionError("oracle degree must be in [0, " +
                                std::to_string(kOracleDegreeCap) + "]");
    const Interval hull = f.system.hull();
    const double bound_m = f.max_abs_value();
    const int cols = degree + 1;

    const int base_pts = std::max(grid.points_per_interval, 8 * (degree + 1));
    const int seg_pts = std::max(base_pts, 9);
    const int gap_pts = std::max(4 * (degree + 1), 17);

    // Hull of a point system: the fit is a constant interpolation problem.
    const double hull_half = hull.half_length();
    auto to_t = [&](double x) {
        return hull_half == 0.0 ? 0.0 : (x - hull.mid()) / hull_half;
    };

    std::vector<double> xs;           // fit abscissae, segments first
    std::vector<double> targets;
    std::vector<bool> is_hull_row;
    for (std::size_t i = 0; i < f.system.size(); ++i) {
        const Interval& seg = f.system.part(i);
        const std::vector<double> pts =
            seg.length() == 0.0 ? std::vector<double>{seg.lo}
                                : make_grid(seg, seg_pts, GridSpec::Distribution::clustered);
        for (double x : pts) {
            xs.push_back(x);
            targets.push_back(f.values[i]);
            is_hull_row.push_back(false);
        }
    }
    const std::size_t k_rows = xs.size();
    if (bounded) {
        for (std::size_t i = 0; i + 1 < f.system.size(); ++i) {
            const Interval gap(f.system.part(i).hi, f.system.part(i + 1).lo);
            for (double x : make_grid(gap, gap_pts, GridSpec::Distribution::clustered)) {
                xs.push_back(x);
                targets.push_back(0.0);  // rewritten to the clipped value when violated
                is_hull_row.push_back(true);
            }
        }
    }

    std::vector<std::vector<double>> rows(xs.size(), std::vector<double>(cols));
    for (std::size_t r = 0; r < xs.size(); ++r) basis_row(to_t(xs[r]), degree, rows[r].data());

    std::vector<double> weights(xs.size(), 0.0);
    for (std::size_t r = 0; r < k_rows; ++r) weights[r] = 1.0 / static_cast<double>(k_rows);

    OracleResult result{0.0, Polynomial::constant(0.0, hull), 0, false, 0.0};
    std::vector<double> coeffs(cols, 0.0);
    std::vector<double> best_coeffs = coeffs;
    double best_score = kInf, best_obj = kInf;
    double prev_obj = kInf;
    int since_improvement = 0;
    bool warned = false;

    const int max_iters = 500;
    int it = 0;
    for (; it < max_iters; ++it) {
        double cond = 0.0;
        if (!WeightedLsq::solve(rows, weights, targets, cols, coeffs, cond)) break;
        if (cond > 1e12 && !warned) {
            std::fprintf(stderr, "minimax_fit: normal-system condition estimate %.3g\n", cond);
            warned = true;
        }

        double obj = 0.0, excess = 0.0;
        std::vector<double> vals(xs.size());
        for (std::size_t r = 0; r < xs.size(); ++r) {
            vals[r] = eval_coeffs(coeffs, to_t(xs[r]));
            if (!is_hull_row[r])
                obj = std::max(obj, std::abs(vals[r] - targets[r]));
            else
                excess = std::max(excess, std::abs(vals[r]) - bound_m);
        }
        const double score = excess > 0.0 ? obj + excess : obj;
        if (score < best_score - std::max(1e-12, 1e-9 * best_score)) {
            best_score = score;
            best_obj = obj;
            best_coeffs = coeffs;
            since_improvement = 0;
        } else {
            if (score < best_score) {
                best_score = score;
                best_obj = obj;
                best_coeffs = coeffs;
            }
            ++since_improvement;
        }

        const bool settled = std::abs(obj - prev_obj) <= 1e-9 * std::max(obj, 1e-300) &&
                             excess <= 1e-12 * std::max(bound_m, 1.0);
        if (settled || since_improvement >= 60) {
            result.converged = true;
            ++it;
            break;
        }
        prev_obj = obj;

        // Lawson multiplicative reweighting, damped with exponent 1/2.
        double wsum = 0.0;
        for (std::size_t r = 0; r < k_rows; ++r) {
            const double res = std::abs(vals[r] - targets[r]);
            weights[r] = std::max(weights[r], kWeightFloor) * std::sqrt(std::max(res, 1e-290));
            wsum += weights[r];
        }
        for (std::size_t r = k_rows; r < xs.size(); ++r) {
            if (vals[r] > bound_m) {
                targets[r] = bound_m;
                weights[r] = std::min(std::max(weights[r], 1.0 / static_cast<double>(k_rows)) * 2.0, 1e30);
            } else if (vals[r] < -bound_m) {
                targets[r] = -bound_m;
                weights[r] = std::min(std::max(weights[r], 1.0 / static_cast<double>(k_rows)) * 2.0, 1e30);
            }
            wsum += weights[r];
        }
        if (wsum <= 0.0) break;
        for (double& w : weights) w /= wsum;
    }

    result.iterations = it;
    result.polynomial = Polynomial(hull.length() == 0.0 ? Interval(hull.lo - 0.5, hull.lo + 0.5)
                                                        : hull,
                                   best_coeffs);

    // Verification pass on a 4x finer segment grid.
    double fine_err = 0.0;
    for (std::size_t i = 0; i < f.system.size(); ++i) {
        const Interval& seg = f.system.part(i);
        const std::vector<double> pts =
            seg.length() == 0.0 ? std::vector<double>{seg.lo}
                                : make_grid(seg, 4 * seg_pts, GridSpec::Distribution::clustered);
        for (double x : pts)
            fine_err = std::max(fine_err, std::abs(eval_coeffs(best_coeffs, to_t(x)) - f.values[i]));
    }
    result.best_error = fine_err;
    result.duality_gap_estimate =
        best_obj > 0.0 ? (fine_err - best_obj) / best_obj : 0.0;
    return result;
}

SandwichReport sandwich(const StepFunction& f, const RealFn& construction, int degree,
                        const BoundCertificate& cert, const GridSpec& grid) {
    SandwichReport report;
    report.measured_error = sup_error(construction, degree, f, grid).global_error;
    report.certificate = cert.value;
    if (degree <= kOracleDegreeCap)
        report.oracle_error = minimax_fit(f, degree, false, grid).best_error;

    report.ok = report.measured_error <= report.certificate + 1e-12;
    if (report.oracle_error) {
        report.oracle_resolved = *report.oracle_error <= report.measured_error + 1e-12;
        const bool below_floor = std::max(*report.oracle_error, report.measured_error) <=
                                 kOracleResolutionFloor;
        report.ok = report.ok && (report.oracle_resolved || below_floor);
    }
    if (!report.ok) {
        char msg[160];
        std::snprintf(msg, sizeof(msg), "sandwich violated: oracle=%.6e measured=%.6e certificate=%.6e",
                      report.oracle_error ? *report.oracle_error : -1.0, report.measured_error,
                      report.certificate);
        throw SandwichError(msg);
    }
    return report;
}

SandwichReport sandwich(const StepFunction& f, const Polynomial& construction,
                        const BoundCertificate& cert, const GridSpec& grid) {
    return sandwich(f, [&](double x) { return construction(x); }, construction.degree(), cert,
                    grid);
}

} // namespace stepchev
