#pragma once

#include <optional>

#include "stepchev/certificate.hpp"
#include "stepchev/polynomial.hpp"

namespace stepchev {

enum class TailSide { lower, upper };

// Exact binomial tail P(Bin(n,x) <= k) (lower) or P(Bin(n,x) >= k) (upper),
// summed in log space with compensated accumulation.
double exact_binomial_tail(long n, double x, long k, TailSide side);

struct OracleResult {
    double best_error = 0.0;
    Polynomial polynomial;
    int iterations = 0;
    bool converged = false;
    double duality_gap_estimate = 0.0;
};

inline constexpr int kOracleDegreeCap = 64;

// Grid minimax fit by Lawson-type iteratively reweighted least squares.
// bounded=true additionally keeps |P| <= max|y_i| on a hull grid (the E*
// constraint), enforced by doubling the weight of violated hull points.
// best_error is re-measured on a 4x finer grid than the one optimized.
OracleResult minimax_fit(const StepFunction& f, int degree, bool bounded,
                         const GridSpec& grid = {});

// Below this scale an IRLS fit on a segment union cannot certify optimality
// (the normal system's conditioning caps the resolvable residual), so the
// oracle-vs-measured ordering carries no information there.
inline constexpr double kOracleResolutionFloor = 1e-6;

struct SandwichReport {
    std::optional<double> oracle_error;  // absent when degree > kOracleDegreeCap
    double measured_error = 0.0;
    double certificate = 0.0;
    bool oracle_resolved = false;  // the strict oracle <= measured leg held
    bool ok = false;
};

// Checks oracle <= measured <= certificate + 1e-12 for a construction.  The
// oracle leg also passes when both sides sit below kOracleResolutionFloor
// (the construction is a feasible candidate, so the true minimum can never
// actually exceed its measured error; only solver slack can).
// Throws SandwichError when the ordering fails.
SandwichReport sandwich(const StepFunction& f, const RealFn& construction, int degree,
                        const BoundCertificate& cert, const GridSpec& grid = {});
SandwichReport sandwich(const StepFunction& f, const Polynomial& construction,
                        const BoundCertificate& cert, const GridSpec& grid = {});

} // namespace stepchev
