#include <doctest.h>

#include <cmath>

#include "stepchev/bernstein.hpp"
#include "stepchev/oracle.hpp"
#include "support.hpp"

using namespace stepchev;
using namespace testsupport;

TEST_SUITE("bernstein") {

TEST_CASE("divergence") {
    SUBCASE("vanishes on the diagonal") {
        for (double p : {0.0, 0.1, 0.25, 0.5, 0.77, 1.0}) {
            const double q = std::min(std::max(p, 1e-9), 1.0 - 1e-9);
            CHECK(divergence(q, q) == doctest::Approx(0.0).epsilon(1e-15));
        }
    }
    SUBCASE("closed-form values") {
        // H(1/2 || q) = -(1/2) ln(4 q (1-q))
        CHECK(divergence(0.5, 0.1) ==
              doctest::Approx(-0.5 * std::log(4.0 * 0.1 * 0.9)).epsilon(1e-13));
        CHECK(divergence(0.5, 0.1) == doctest::Approx(0.510825624).epsilon(1e-8));
        CHECK(divergence(0.3, 0.5) ==
              doctest::Approx(0.3 * std::log(0.6) + 0.7 * std::log(1.4)).epsilon(1e-13));
        CHECK(divergence(0.3, 0.5) == doctest::Approx(0.082282879).epsilon(1e-7));
    }
    SUBCASE("endpoint conventions") {
        CHECK(divergence(0.0, 0.3) == doctest::Approx(std::log(1.0 / 0.7)).epsilon(1e-13));
        CHECK(divergence(1.0, 0.3) == doctest::Approx(std::log(1.0 / 0.3)).epsilon(1e-13));
        CHECK(divergence(0.0, 0.0) == 0.0);
        CHECK(divergence(1.0, 1.0) == 0.0);
        CHECK(std::isinf(divergence(0.5, 0.0)));
        CHECK(std::isinf(divergence(0.5, 1.0)));
        CHECK_THROWS_AS(divergence(std::nan(""), 0.5), PreconditionError);
        CHECK_THROWS_AS(divergence(0.5, std::nan("")), PreconditionError);
        CHECK_THROWS_AS(divergence(-0.1, 0.5), PreconditionError);
    }
    SUBCASE("nonnegative, zero only at p = q") {
        for (int trial = 0; trial < 100; ++trial) {
            const double p = uniform(0.0, 1.0);
            const double q = uniform(0.01, 0.99);
            const double h = divergence(p, q);
            CHECK(h >= 0.0);
            if (std::abs(p - q) > 1e-3) CHECK(h > 0.0);
        }
    }
}

TEST_CASE("chernoff tails") {
    SUBCASE("spot values") {
        CHECK(chernoff_lower_tail(10, 0.5, 0.3) ==
              doctest::Approx(std::exp(-10.0 * divergence(0.3, 0.5))).epsilon(1e-13));
        CHECK(chernoff_lower_tail(10, 0.5, 0.3) == doctest::Approx(0.4392).epsilon(1e-4));
        // exact tail P(Bin(10,1/2) <= 3) = 176/1024
        CHECK(reference_lower_tail(10, 0.5, 3) == doctest::Approx(0.171875).epsilon(1e-12));
        CHECK(reference_lower_tail(10, 0.5, 3) <= chernoff_lower_tail(10, 0.5, 0.3));
        // exp(-nH) is multiplicative in n
        CHECK(chernoff_lower_tail(20, 0.5, 0.3) ==
              doctest::Approx(std::pow(chernoff_lower_tail(10, 0.5, 0.3), 2)).epsilon(1e-12));
        CHECK(chernoff_lower_tail(20, 0.5, 0.3) == doctest::Approx(0.1929).epsilon(1e-4));
    }
    SUBCASE("bound approaches 1 as a approaches x") {
        CHECK(chernoff_lower_tail(50, 0.5, 0.4999999) == doctest::Approx(1.0).epsilon(1e-9));
    }
    SUBCASE("parameter ordering is enforced") {
        CHECK_THROWS_AS(chernoff_lower_tail(10, 0.3, 0.5), PreconditionError);
        CHECK_THROWS_AS(chernoff_upper_tail(10, 0.5, 0.3), PreconditionError);
        CHECK_THROWS_AS(chernoff_lower_tail(0, 0.5, 0.3), PreconditionError);
    }
    SUBCASE("dominates the exact binomial tail") {
        for (int n : {1, 2, 5, 8, 13, 21, 34, 55, 64}) {
            for (double a = 0.05; a < 0.95; a += 0.1) {
                for (double x = a + 0.05; x < 0.99; x += 0.1) {
                    const int k = static_cast<int>(std::floor(a * n));
                    const double exact = reference_lower_tail(n, x, k);
                    CHECK(exact <= chernoff_lower_tail(n, x, a) * (1.0 + 1e-12));
                }
            }
        }
    }
}

TEST_CASE("bernstein operator") {
    SUBCASE("preserves constants") {
        for (int n : {1, 5, 40, 200}) {
            const Polynomial p = bernstein_apply([](double) { return 2.75; }, n);
            for (double x : {0.0, 0.17, 0.5, 0.83, 1.0})
                CHECK(p(x) == doctest::Approx(2.75).epsilon(1e-12));
        }
    }
    SUBCASE("two-point case gives the coordinate") {
        const Polynomial p = bernstein_apply([](double t) { return t < 0.5 ? 0.0 : 1.0; }, 1);
        CHECK(p.degree() == 1);
        CHECK(p(0.3) == doctest::Approx(0.3).epsilon(1e-13));
    }
    SUBCASE("matches the exact binomial upper tail for an indicator") {
        const auto f = [](double t) { return t > 0.5 ? 1.0 : 0.0; };
        const BernsteinEvaluator eval(f, 10);
        CHECK(eval(0.3) == doctest::Approx(reference_upper_tail(10, 0.3, 6)).epsilon(1e-12));
        const Polynomial p = bernstein_apply(f, 10);
        CHECK(p(0.3) == doctest::Approx(reference_upper_tail(10, 0.3, 6)).epsilon(1e-11));
    }
    SUBCASE("degree-5 refit round-trips the evaluator") {
        const auto f = [](double t) { return t < 0.5 ? -1.0 : (t > 0.5 ? 1.0 : 0.0); };
        const BernsteinEvaluator eval(f, 5);
        const Polynomial p = bernstein_apply(f, 5);
        for (int i = 0; i < 100; ++i) {
            const double x = uniform(0.0, 1.0);
            CHECK(std::abs(p(x) - eval(x)) <= 1e-11);
        }
    }
    SUBCASE("positivity and range preservation") {
        for (int trial = 0; trial < 10; ++trial) {
            const int n = uniform_int(1, 60);
            std::vector<double> samples(n + 1);
            for (double& s : samples) s = uniform(0.0, 2.0);
            const auto f = [&](double t) { return samples[static_cast<int>(t * n + 0.5)]; };
            const BernsteinEvaluator eval(f, n);
            double max_sample = 0.0;
            for (double s : samples) max_sample = std::max(max_sample, s);
            for (int i = 0; i <= 100; ++i) {
                const double x = i / 100.0;
                CHECK(eval(x) >= -1e-12);
                CHECK(eval(x) <= max_sample + 1e-12);
            }
        }
    }
}

TEST_CASE("pointwise locally-constant bound") {
    // f constant on (a,b) inside [0,1], |f| <= M:
    // |B_n(f,x) - f(x)| <= 2M (e^{-nH(a||x)} + e^{-nH(b||x)}) on (a,b).
    const double a = 0.2, b = 0.7, mid_value = 0.5, big = 2.0;
    const auto f = [&](double t) {
        if (t <= a) return -big;
        if (t >= b) return 1.5;
        return mid_value;
    };
    for (int n = 1; n <= 200; n += 7) {
        const BernsteinEvaluator eval(f, n);
        for (int i = 1; i < 60; ++i) {
            const double x = a + (b - a) * i / 60.0;
            const double bound =
                2.0 * big *
                (std::exp(-n * divergence(a, x)) + std::exp(-n * divergence(b, x)));
            CHECK(std::abs(eval(x) - mid_value) <= bound);
        }
    }
}

TEST_CASE("two_segment_approx") {
    SUBCASE("h=0.1, n=20 certificate and dominance") {
        const BernsteinApprox approx = two_segment_approx(0.1, -1.0, 1.0, 20);
        const double expected = 2.0 * std::pow(4.0 * 0.1 * 0.9, 10.0);
        CHECK(approx.certificate.value == doctest::Approx(expected).epsilon(1e-13));
        CHECK(approx.certificate.value == doctest::Approx(7.3123e-5).epsilon(1e-4));
        const StepFunction f(IntervalSystem({Interval(0.0, 0.1), Interval(0.9, 1.0)}),
                             {-1.0, 1.0});
        const ErrorReport rep = sup_error(approx.exact, 20, f);
        CHECK(rep.global_error <= approx.certificate.value);
        CHECK(rep.hull_norm <= 1.0 + 1e-12);
    }
    SUBCASE("equal values collapse to the constant") {
        const BernsteinApprox approx = two_segment_approx(0.2, 0.8, 0.8, 12);
        CHECK(approx.certificate.value == 0.0);
        for (double x : {0.0, 0.1, 0.5, 0.95})
            CHECK(approx.exact(x) == doctest::Approx(0.8).epsilon(1e-13));
    }
    SUBCASE("values {0,1} scale the certificate by 1/2") {
        const BernsteinApprox approx = two_segment_approx(0.25, 0.0, 1.0, 2);
        CHECK(approx.certificate.value == doctest::Approx(0.75).epsilon(1e-13));
    }
    SUBCASE("h out of range") {
        CHECK_THROWS_AS(two_segment_approx(0.5, -1.0, 1.0, 4), PreconditionError);
        CHECK_THROWS_AS(two_segment_approx(0.0, -1.0, 1.0, 4), PreconditionError);
    }
}

TEST_CASE("equal_two_segment") {
    SUBCASE("symmetric pair certificate") {
        const IntervalSystem sys({Interval(-1.25, -1.0), Interval(1.0, 1.25)});
        const BernsteinApprox approx = equal_two_segment(sys, -1.0, 1.0, 10);
        CHECK(approx.certificate.value ==
              doctest::Approx(2.0 * std::pow(0.36, 5.0)).epsilon(1e-13));
        CHECK(approx.certificate.value == doctest::Approx(0.0120932).epsilon(1e-5));
        const StepFunction f(sys, {-1.0, 1.0});
        const ErrorReport rep = sup_error(approx.exact, 10, f);
        CHECK(rep.global_error <= approx.certificate.value);
        CHECK(rep.hull_norm <= 1.0 + 1e-12);
        // the polynomial refit agrees with the evaluator away from the noise floor
        CHECK(approx.poly(-1.1) == doctest::Approx(approx.exact(-1.1)).epsilon(1e-10));
    }
    SUBCASE("equal values give zero error") {
        const IntervalSystem sys({Interval(-1.25, -1.0), Interval(1.0, 1.25)});
        const BernsteinApprox approx = equal_two_segment(sys, 0.4, 0.4, 6);
        const ErrorReport rep = sup_error(approx.exact, 6, StepFunction(sys, {0.4, 0.4}));
        CHECK(rep.global_error <= 1e-14);
    }
    SUBCASE("unequal lengths use the enlarged diameter sigma + 4 delta") {
        const IntervalSystem sys({Interval(0.0, 0.2), Interval(0.6, 1.0)});
        const BernsteinApprox approx = equal_two_segment(sys, -1.0, 1.0, 6);
        CHECK(approx.certificate.params.at("D_prime") == doctest::Approx(1.2).epsilon(1e-14));
        const double expected = 2.0 * std::pow(1.0 - 1.0 / 9.0, 3.0);
        CHECK(approx.certificate.value == doctest::Approx(expected).epsilon(1e-13));
        const ErrorReport rep = sup_error(approx.exact, 6, StepFunction(sys, {-1.0, 1.0}));
        CHECK(rep.global_error <= approx.certificate.value);
    }
    SUBCASE("wrong segment count") {
        CHECK_THROWS_AS(equal_two_segment(IntervalSystem({Interval(0.0, 1.0)}), 0.0, 1.0, 4),
                        PreconditionError);
    }
}

TEST_CASE("eps_two") {
    SUBCASE("symmetric values") {
        const BernsteinApprox approx = eps_two(ValueSet({-1.0, 1.0}), 0.1, 6);
        const double expected = 2.0 * std::pow(4.0 * 0.1 / (1.1 * 1.1), 3.0);
        CHECK(approx.certificate.value == doctest::Approx(expected).epsilon(1e-13));
        CHECK(approx.certificate.value == doctest::Approx(0.0722545).epsilon(1e-5));
    }
    SUBCASE("zero-one values lose the factor two") {
        const BernsteinApprox approx = eps_two(ValueSet({0.0, 1.0}), 0.1, 4);
        const double expected = std::pow(8.0 * 0.1 / (1.2 * 1.2), 2.0);
        CHECK(approx.certificate.value == doctest::Approx(expected).epsilon(1e-13));
        CHECK(approx.certificate.value == doctest::Approx(0.308642).epsilon(1e-5));
    }
    SUBCASE("certificate stays below 2 as delta approaches the bound") {
        const BernsteinApprox approx = eps_two(ValueSet({-1.0, 1.0}), 0.9999, 3);
        CHECK(approx.certificate.value < 2.0);
    }
    SUBCASE("maps value neighborhoods into certified neighborhoods") {
        const ValueSet y({-1.0, 1.0});
        const double delta = 0.1;
        const BernsteinApprox approx = eps_two(y, delta, 6);
        const StepFunction target(inflate(y, delta), y.points());
        const ErrorReport rep = sup_error(approx.exact, 6, target);
        CHECK(rep.global_error <= approx.certificate.value);
    }
    SUBCASE("delta out of range") {
        CHECK_THROWS_AS(eps_two(ValueSet({-1.0, 1.0}), 1.0, 4), PreconditionError);
        CHECK_THROWS_AS(eps_two(ValueSet({0.0, 1.0}), 0.5, 4), PreconditionError);
    }
}

TEST_CASE("certificate dominance across randomized geometry") {
    GridSpec grid;
    grid.points_per_interval = 257;
    for (int trial = 0; trial < 25; ++trial) {
        const double h = uniform(0.02, 0.48);
        const double y0 = uniform(-1.0, 1.0);
        const double y1 = uniform(-1.0, 1.0);
        const int n = uniform_int(1, 40);
        const BernsteinApprox approx = two_segment_approx(h, y0, y1, n);
        const StepFunction f(IntervalSystem({Interval(0.0, h), Interval(1.0 - h, 1.0)}),
                             {y0, y1});
        const ErrorReport rep = bernstein_sup_error(approx, f, grid);
        CHECK(rep.global_error <= approx.certificate.value);
        CHECK(rep.hull_norm <= std::max(std::abs(y0), std::abs(y1)) + 1e-12);
    }
    for (int trial = 0; trial < 15; ++trial) {
        const double l0 = uniform(0.02, 0.3), l1 = uniform(0.02, 0.3);
        const double gap = uniform(0.05, 1.5);
        const double lo = uniform(-2.0, 2.0);
        const IntervalSystem sys(
            {Interval(lo, lo + l0), Interval(lo + l0 + gap, lo + l0 + gap + l1)});
        const double y0 = uniform(-1.0, 1.0), y1 = uniform(-1.0, 1.0);
        const int n = uniform_int(1, 30);
        const BernsteinApprox approx = equal_two_segment(sys, y0, y1, n);
        const ErrorReport rep = bernstein_sup_error(approx, StepFunction(sys, {y0, y1}), grid);
        CHECK(rep.global_error <= approx.certificate.value);
    }
}

} // TEST_SUITE
