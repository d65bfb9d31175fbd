#pragma once

#include <complex>
#include <span>
#include <utility>
#include <vector>

#include "stepchev/certificate.hpp"
#include "stepchev/polynomial.hpp"

namespace stepchev {

namespace detail {

// Newton coefficients f[z_0], f[z_0,z_1], ..., f[z_0..z_{N-1}] by the standard
// recursion, computed in place (O(N) extra memory).  Confluent blocks are the
// locally-constant limit: a difference spanning equal endpoints is a scaled
// derivative, and every derivative here is zero.
template <typename Scalar>
std::vector<Scalar> newton_coefficients(std::span<const Scalar> nodes,
                                        std::span<const Scalar> values,
                                        bool locally_constant) {
    const std::size_t n = nodes.size();
    std::vector<Scalar> c(values.begin(), values.end());
    for (std::size_t level = 1; level < n; ++level) {
        for (std::size_t j = n - 1; j >= level; --j) {
            const Scalar span = nodes[j] - nodes[j - level];
            if (span == Scalar(0)) {
                if (!locally_constant)
                    throw PreconditionError(
                        "repeated interpolation nodes need the locally-constant convention");
                c[j] = Scalar(0);
            } else {
                c[j] = (c[j] - c[j - 1]) / span;
            }
        }
    }
    return c;
}

// Horner evaluation of the Newton form: nested multiplication keeps the
// partial products from overflowing the way an expanded product basis would.
template <typename Scalar>
Scalar newton_eval(std::span<const Scalar> nodes, std::span<const Scalar> coeffs, Scalar z) {
    Scalar acc = coeffs.back();
    for (std::size_t k = coeffs.size() - 1; k-- > 0;) acc = coeffs[k] + (z - nodes[k]) * acc;
    return acc;
}

} // namespace detail

// Interpolation centers z_1..z_s, each carrying the same multiplicity n.
// The bound formulas require pairwise separation >= 1 (callers rescale first).
struct NodeSystem {
    std::vector<double> centers;
    int multiplicity;

    NodeSystem(std::vector<double> centers_, int multiplicity_);

    std::size_t count() const { return centers.size(); }
    double diam() const;
    // A(Z) = 2 (1 + 2 diam Z)^(s-1)
    double amplification_constant() const;
};

// Full triangular divided-difference table over a node sequence where equal
// nodes are contiguous.  entry(k, j) = f[nodes_j, ..., nodes_{j+k}].
struct DividedDifferenceTable {
    std::vector<double> nodes;
    std::vector<std::vector<double>> table;  // table[k][j]

    double entry(std::size_t k, std::size_t j) const { return table[k][j]; }
    std::vector<double> newton_coefficients() const;
    double eval_newton(double z) const;
};

DividedDifferenceTable divided_differences(std::span<const double> nodes, const RealFn& f,
                                           bool locally_constant);

// Polynomials P_1..P_s of degree ns-1 with sum identically 1; P_i is 1 to
// order n at z_i and 0 to order n at every other center.
std::vector<Polynomial> partition_of_unity(const NodeSystem& z);

// Per-polynomial off-center bound of the limiting construction:
// max over |x - z_j| <= delta (j != i) of |P_i| <= (2 delta)^n (2 diam + 1)^(n(s-1)).
double partition_off_center_bound(const NodeSystem& z, double delta);
BoundCertificate partition_member_certificate(const NodeSystem& z, double delta);

// P = sum w_i P_i with |w_i| <= 1; for delta < 1/2,
// max_i max_{|x - z_i| <= delta} |P(x) - w_i| <= 2(s-1) (A(Z) delta)^n.
std::pair<Polynomial, BoundCertificate> small_delta_approx(const NodeSystem& z,
                                                           std::span<const double> w,
                                                           double delta);

// The small-delta construction for an arbitrary segment system with
// sigma/D >= u: multiplicity m = floor((n+1)/s) at the segment centers after
// rescaling by 1/(u D).  Falls back to the trivial certificate max|y| when
// m = 0 or the rescaled delta reaches 1/2.
std::pair<Polynomial, BoundCertificate> small_delta_for_system(const StepFunction& f, int n,
                                                               double u);

// Amplifier version: inflate Y by delta, recentre values to [-1,1], run
// small_delta_for_system, and scale everything back by diam(Y)/2.
std::pair<Polynomial, BoundCertificate> eps_small_delta(const ValueSet& y, double delta, int n);

} // namespace stepchev
