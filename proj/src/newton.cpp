#include "stepchev/newton.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace stepchev {

namespace {

// Node sequence for P_i: centers rotated so z_i comes last, each repeated
// n times.  With this ordering the first n(s-1) Newton coefficients vanish
// identically, which the tests check as a structural invariant.
std::vector<double> rotated_nodes(const NodeSystem& z, std::size_t i) {
    const std::size_t s = z.count();
    std::vector<double> nodes;
    nodes.reserve(s * z.multiplicity);
    for (std::size_t step = 1; step <= s; ++step) {
        const std::size_t j = (i + step) % s;
        for (int m = 0; m < z.multiplicity; ++m) nodes.push_back(z.centers[j]);
    }
    return nodes;
}

} // namespace

NodeSystem::NodeSystem(std::vector<double> centers_, int multiplicity_)
    : centers(std::move(centers_)), multiplicity(multiplicity_) {
    if (centers.empty()) throw PreconditionError("node system requires at least one center");
    if (multiplicity < 1) throw PreconditionError("node multiplicity must be >= 1");
    for (double c : centers)
        if (!std::isfinite(c)) throw PreconditionError("node centers must be finite");
    for (std::size_t i = 0; i < centers.size(); ++i)
        for (std::size_t j = i + 1; j < centers.size(); ++j)
            if (std::abs(centers[i] - centers[j]) < 1.0)
                throw PreconditionError(
                    "node centers must be separated by at least 1; rescale the problem first");
}

double NodeSystem::diam() const {
    const auto [lo, hi] = std::minmax_element(centers.begin(), centers.end());
    return *hi - *lo;
}

double NodeSystem::amplification_constant() const {
    return 2.0 * std::pow(1.0 + 2.0 * diam(), static_cast<double>(count() - 1));
}

std::vector<double> DividedDifferenceTable::newton_coefficients() const {
    std::vector<double> c(nodes.size());
    for (std::size_t k = 0; k < nodes.size(); ++k) c[k] = table[k][0];
    return c;
}

double DividedDifferenceTable::eval_newton(double z) const {
    const std::vector<double> c = newton_coefficients();
    return detail::newton_eval<double>(nodes, c, z);
}

DividedDifferenceTable divided_differences(std::span<const double> nodes, const RealFn& f,
                                           bool locally_constant) {
    const std::size_t n = nodes.size();
    if (n == 0) throw PreconditionError("divided_differences requires at least one node");
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 2; j < n; ++j)
            if (nodes[i] == nodes[j] && nodes[i] != nodes[j - 1])
                throw PreconditionError("repeated nodes must be contiguous");

    DividedDifferenceTable t;
    t.nodes.assign(nodes.begin(), nodes.end());
    t.table.resize(n);
    t.table[0].resize(n);
    for (std::size_t j = 0; j < n; ++j) t.table[0][j] = f(nodes[j]);
    for (std::size_t k = 1; k < n; ++k) {
        t.table[k].resize(n - k);
        for (std::size_t j = 0; j + k < n; ++j) {
            const double span = nodes[j + k] - nodes[j];
            if (span == 0.0) {
                if (!locally_constant)
                    throw PreconditionError(
                        "repeated interpolation nodes need the locally-constant convention");
                t.table[k][j] = 0.0;
            } else {
                t.table[k][j] = (t.table[k - 1][j + 1] - t.table[k - 1][j]) / span;
            }
        }
    }
    return t;
}

std::vector<Polynomial> partition_of_unity(const NodeSystem& z) {
    const std::size_t s = z.count();
    const int n = z.multiplicity;
    const long degree = static_cast<long>(n) * static_cast<long>(s) - 1;
    if (degree > kComposeDegreeCap)
        throw ConstructionError("partition degree " + std::to_string(degree) +
                                " exceeds the cap of " + std::to_string(kComposeDegreeCap));

    Interval ref = s == 1 ? Interval(z.centers[0] - 0.5, z.centers[0] + 0.5)
                          : Interval(*std::min_element(z.centers.begin(), z.centers.end()),
                                     *std::max_element(z.centers.begin(), z.centers.end()));

    std::vector<Polynomial> parts;
    parts.reserve(s);
    for (std::size_t i = 0; i < s; ++i) {
        const std::vector<double> nodes = rotated_nodes(z, i);
        std::vector<double> values(nodes.size());
        for (std::size_t k = 0; k < nodes.size(); ++k)
            values[k] = std::abs(nodes[k] - z.centers[i]) < 0.5 ? 1.0 : 0.0;
        const std::vector<double> coeffs =
            detail::newton_coefficients<double>(nodes, values, true);
        parts.push_back(Polynomial::from_samples(
            [&](double x) { return detail::newton_eval<double>(nodes, coeffs, x); },
            static_cast<int>(degree), ref));
    }
    return parts;
}

double partition_off_center_bound(const NodeSystem& z, double delta) {
    const double d = z.diam();
    const double n = static_cast<double>(z.multiplicity);
    const double s = static_cast<double>(z.count());
    return std::pow(2.0 * delta, n) * std::pow(2.0 * d + 1.0, n * (s - 1.0));
}

BoundCertificate partition_member_certificate(const NodeSystem& z, double delta) {
    BoundCertificate cert;
    cert.formula = BoundFormula::bnd_limit;
    cert.params = {{"s", static_cast<double>(z.count())},
                   {"n", static_cast<double>(z.multiplicity)},
                   {"diam", z.diam()},
                   {"delta", delta}};
    cert.value = partition_off_center_bound(z, delta);
    return cert;
}

std::pair<Polynomial, BoundCertificate> small_delta_approx(const NodeSystem& z,
                                                           std::span<const double> w,
                                                           double delta) {
    if (w.size() != z.count())
        throw PreconditionError("small_delta_approx needs one value per center");
    for (double v : w)
        if (std::abs(v) > 1.0 + 1e-12)
            throw PreconditionError("small_delta_approx requires |w_i| <= 1");
    if (!(delta > 0.0 && delta < 0.5))
        throw PreconditionError("small_delta_approx certificate requires 0 < delta < 1/2");

    std::vector<Polynomial> parts = partition_of_unity(z);
    Polynomial p = std::move(parts[0]);
    p *= w[0];
    for (std::size_t i = 1; i < parts.size(); ++i) {
        parts[i] *= w[i];
        p += parts[i];
    }

    const double a = z.amplification_constant();
    const double s = static_cast<double>(z.count());
    BoundCertificate cert;
    cert.formula = BoundFormula::small_delta;
    cert.params = {{"s", s},
                   {"n", static_cast<double>(z.multiplicity)},
                   {"A", a},
                   {"delta", delta},
                   {"diam", z.diam()}};
    cert.value = 2.0 * (s - 1.0) * std::pow(a * delta, static_cast<double>(z.multiplicity));
    return {std::move(p), std::move(cert)};
}

std::pair<Polynomial, BoundCertificate> small_delta_for_system(const StepFunction& f, int n,
                                                               double u) {
    const SystemStats st = system_stats(f.system);
    const std::size_t s = st.s;
    const double max_abs = f.max_abs_value();

    // Single segment: the constant is exact and every bound short-circuits.
    if (s == 1) {
        BoundCertificate cert;
        cert.formula = BoundFormula::small_delta;
        cert.params = {{"s", 1.0}, {"m", static_cast<double>(n + 1)}};
        cert.value = 0.0;
        return {Polynomial::constant(f.values[0], Interval(f.system.hull().mid() - 0.5,
                                                           f.system.hull().mid() + 0.5)),
                std::move(cert)};
    }

    if (!(u > 0.0)) throw PreconditionError("small_delta_for_system requires u > 0");
    if (st.sigma / st.D < u)
        throw PreconditionError("small_delta_for_system requires sigma/D >= u");
    if (n < 0) throw PreconditionError("degree must be >= 0");

    const int m = (n + 1) / static_cast<int>(s);
    auto trivial = [&]() {
        BoundCertificate cert;
        cert.formula = BoundFormula::small_delta;
        cert.params = {{"s", static_cast<double>(s)},
                       {"m", static_cast<double>(m)},
                       {"trivial", 1.0}};
        cert.value = max_abs;
        return std::pair<Polynomial, BoundCertificate>{
            Polynomial::constant(0.0, f.system.hull()), std::move(cert)};
    };
    if (m == 0) return trivial();

    // Rescale so center separation is >= 1: x -> (x - hull mid) / (u D).
    const double unit = u * st.D;
    const AffineMap to_scaled(1.0 / unit, -f.system.hull().mid() / unit);
    const double delta_tilde = st.delta / unit;
    if (!(delta_tilde < 0.5)) return trivial();

    std::vector<double> centers(s);
    for (std::size_t i = 0; i < s; ++i) centers[i] = to_scaled(f.system.part(i).mid());
    NodeSystem z(std::move(centers), m);

    std::vector<double> w(s);
    for (std::size_t i = 0; i < s; ++i) w[i] = max_abs == 0.0 ? 0.0 : f.values[i] / max_abs;

    // Degenerate point systems have delta = 0; the certificate formula still
    // needs a positive argument, so evaluate it in the limit.
    auto [p_scaled, cert] = delta_tilde > 0.0
                                ? small_delta_approx(z, w, delta_tilde)
                                : small_delta_approx(z, w, 0.25);
    if (delta_tilde == 0.0) {
        cert.params["delta"] = 0.0;
        cert.value = 0.0;
    }

    Polynomial p = affine_pullback(p_scaled, to_scaled);
    p *= max_abs;
    cert.value *= max_abs;
    cert.params["scale"] = max_abs;
    cert.params["u"] = u;
    return {std::move(p), std::move(cert)};
}

std::pair<Polynomial, BoundCertificate> eps_small_delta(const ValueSet& y, double delta, int n) {
    const IntervalSystem inflated = inflate(y, delta);  // checks delta < sigma_hat/2
    const double centre = 0.5 * (y.points().front() + y.points().back());
    const double half_diam = 0.5 * y.diameter();

    std::vector<double> recentred(y.size());
    for (std::size_t i = 0; i < y.size(); ++i)
        recentred[i] = (y.points()[i] - centre) / half_diam;

    const SystemStats st = system_stats(inflated);
    const double u = st.sigma / st.D;
    auto [p, cert] = small_delta_for_system(StepFunction(inflated, recentred), n, u);

    p *= half_diam;
    p.add_constant(centre);
    cert.value *= half_diam;
    cert.params["value_scale"] = half_diam;
    cert.params["value_centre"] = centre;
    return {std::move(p), std::move(cert)};
}

} // namespace stepchev
