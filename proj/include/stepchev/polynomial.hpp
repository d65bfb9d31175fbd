#pragma once

#include <functional>
#include <vector>

#include "stepchev/interval.hpp"

namespace stepchev {

// Real polynomial stored as Chebyshev (first-kind) coefficients anchored to a
// reference interval; evaluated by the Clenshaw backward recurrence.  The
// monomial basis is useless here: the constructions reach degrees in the
// hundreds, where T_k on the anchor interval stays conditioned and x^k does not.
class Polynomial {
  public:
    Polynomial() : ref_(-1.0, 1.0), coeffs_{0.0} {}  // zero polynomial on [-1,1]
    Polynomial(Interval ref, std::vector<double> coeffs);

    static Polynomial constant(double c, Interval ref);

    // Interpolates f at degree+1 Chebyshev-Lobatto nodes on ref.  Exact (up to
    // roundoff) whenever f is itself a polynomial of degree <= degree.
    static Polynomial from_samples(const std::function<double(double)>& f, int degree,
                                   Interval ref);

    double operator()(double x) const;

    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    const std::vector<double>& coeffs() const { return coeffs_; }
    const Interval& ref() const { return ref_; }

    Polynomial& operator+=(const Polynomial& other);  // requires identical ref
    Polynomial& operator*=(double a);
    Polynomial& add_constant(double c);

  private:
    Interval ref_;
    std::vector<double> coeffs_;
};

inline constexpr int kComposeDegreeCap = 4096;

// outer(inner(x)); degree is deg(outer)*deg(inner), capped at kComposeDegreeCap.
Polynomial compose(const Polynomial& outer, const Polynomial& inner);

// q(x) = p(map(x)).  Exact: Chebyshev coefficients transfer to the pulled-back
// anchor interval unchanged (odd ones flip sign if map reverses orientation).
Polynomial affine_pullback(const Polynomial& p, const AffineMap& map);

struct GridSpec {
    enum class Distribution { clustered, uniform };

    int points_per_interval = 0;  // 0 = auto: max(32*(degree+1), 257)
    Distribution distribution = Distribution::clustered;
    bool refine = true;

    int effective_points(int degree_hint) const;
};

struct ErrorReport {
    std::vector<double> per_interval_error;
    double global_error = 0.0;
    double hull_norm = 0.0;
    long grid_size = 0;
};

using RealFn = std::function<double(double)>;

// Grid sup of |g(x) - values[i]| per segment, plus sup |g| over the hull.
// Grid maxima are sharpened by golden-section search around each argmax; the
// result is still a lower bound on the true sup-norm.
ErrorReport sup_error(const RealFn& g, int degree_hint, const StepFunction& f,
                      const GridSpec& grid = {});
ErrorReport sup_error(const Polynomial& p, const StepFunction& f, const GridSpec& grid = {});

double sup_norm(const RealFn& g, int degree_hint, const Interval& on, const GridSpec& grid = {});
double sup_norm(const Polynomial& p, const Interval& on, const GridSpec& grid = {});

// Grid on [iv.lo, iv.hi] with exact endpoints; clustered = Chebyshev-extrema
// spacing (denser near the endpoints, where step-approximation errors peak).
std::vector<double> make_grid(const Interval& iv, int points, GridSpec::Distribution dist);

} // namespace stepchev
