#pragma once

#include <functional>

#include "stepchev/certificate.hpp"
#include "stepchev/polynomial.hpp"

namespace stepchev {

// Binary Kullback-Leibler divergence H(p||q) = p ln(p/q) + (1-p) ln((1-p)/(1-q)),
// with the 0 ln 0 = 0 convention at p in {0,1}.  Returns +inf when q is 0 or 1
// and p disagrees.
double divergence(double p, double q);

// Chernoff-Hoeffding bound exp(-n H(a||x)) on P(Bin(n,x) <= a n), for 0 < a < x < 1.
double chernoff_lower_tail(long n, double x, double a);

// Bound on P(Bin(n,x) >= b n), for 0 < x < b < 1 (mirror of the lower tail).
double chernoff_upper_tail(long n, double x, double b);

// Evaluates B_n(f, x) = sum_k C(n,k) f(k/n) x^k (1-x)^(n-k) through log-space
// binomial weights with compensated accumulation.  Stable in the tail regions
// where the value is exponentially small, which a refitted polynomial is not.
class BernsteinEvaluator {
  public:
    BernsteinEvaluator(const RealFn& f, int n);

    double operator()(double x) const;
    int n() const { return n_; }

  private:
    int n_;
    std::vector<double> samples_;    // f(k/n)
    std::vector<double> log_binom_;  // ln C(n,k)
};

// B_n f as a Polynomial on [0,1] (exact-by-degree refit of the evaluator).
Polynomial bernstein_apply(const RealFn& f, int n);

// A Bernstein-built approximant: the polynomial, its certificate, and the
// log-space evaluator (use `exact` wherever the certificate is below the
// refit's ~1e-14 absolute noise floor).
//
// `error_near(y)` evaluates |B_n f - y| through recentred samples
// (B_n(f) - y = B_n(f - y), since the operator preserves constants).  On a
// segment where f == y only the far-tail samples survive, all with one sign,
// so the error keeps full relative accuracy however small it is.  Direct
// subtraction from `exact` bottoms out near 1e-14.
struct BernsteinApprox {
    Polynomial poly;
    BoundCertificate certificate;
    RealFn exact;
    std::function<RealFn(double target)> error_near;
};

// Per-segment sup of error_near(values[i]) plus the hull norm of `exact`:
// the certificate-grade measurement for Bernstein constructions.
ErrorReport bernstein_sup_error(const BernsteinApprox& approx, const StepFunction& f,
                                const GridSpec& grid = {});

// B_n of the step y0 on [0,1/2), y1 on (1/2,1] (midpoint takes the average),
// certified on [0,h] u [1-h,1] by |y1-y0| * (4h(1-h))^(n/2).
BernsteinApprox two_segment_approx(double h, double y0, double y1, int n);

// Any two disjoint segments: the unequal-length case is reduced to equal
// half-length delta with diameter D' = sigma + 4 delta, then mapped to [0,1].
BernsteinApprox equal_two_segment(const IntervalSystem& sys, double y0, double y1, int n);

// Two-value amplifier: a degree-n polynomial mapping [y_i - delta, y_i + delta]
// into [y_i - eps, y_i + eps] with certified eps.
BernsteinApprox eps_two(const ValueSet& y, double delta, int n);

} // namespace stepchev
