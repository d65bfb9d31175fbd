#include <doctest.h>

#include <cmath>

#include "stepchev/bernstein.hpp"
#include "stepchev/newton.hpp"
#include "stepchev/oracle.hpp"
#include "support.hpp"

using namespace stepchev;
using namespace testsupport;

TEST_SUITE("oracle") {

TEST_CASE("exact_binomial_tail") {
    SUBCASE("integer-exact spot value") {
        CHECK(exact_binomial_tail(10, 0.5, 3, TailSide::lower) ==
              doctest::Approx(0.171875).epsilon(1e-12));
    }
    SUBCASE("degenerate cases") {
        CHECK(exact_binomial_tail(7, 0.3, 7, TailSide::lower) == 1.0);
        CHECK(exact_binomial_tail(7, 0.0, 0, TailSide::lower) == 1.0);
        CHECK(exact_binomial_tail(7, 0.0, 3, TailSide::lower) == 1.0);
        CHECK(exact_binomial_tail(7, 1.0, 7, TailSide::upper) == 1.0);
        CHECK(exact_binomial_tail(7, 0.3, 0, TailSide::upper) == 1.0);
    }
    SUBCASE("agrees with direct summation over exact coefficients") {
        for (int n : {1, 3, 10, 30, 47, 64}) {
            for (double x : {0.07, 0.31, 0.5, 0.88}) {
                for (int k = 0; k <= n; k += std::max(1, n / 5)) {
                    const double mine = exact_binomial_tail(n, x, k, TailSide::lower);
                    const double ref = reference_lower_tail(n, x, k);
                    CHECK(mine == doctest::Approx(ref).epsilon(1e-12));
                    const double mine_up = exact_binomial_tail(n, x, k, TailSide::upper);
                    const double ref_up = reference_upper_tail(n, x, k);
                    CHECK(mine_up == doctest::Approx(ref_up).epsilon(1e-12));
                }
            }
        }
    }
    SUBCASE("sides are complementary") {
        for (int k = 1; k <= 10; ++k)
            CHECK(exact_binomial_tail(10, 0.37, k, TailSide::upper) +
                      exact_binomial_tail(10, 0.37, k - 1, TailSide::lower) ==
                  doctest::Approx(1.0).epsilon(1e-12));
    }
    SUBCASE("preconditions") {
        CHECK_THROWS_AS(exact_binomial_tail(0, 0.5, 0, TailSide::lower), PreconditionError);
        CHECK_THROWS_AS(exact_binomial_tail(20000, 0.5, 3, TailSide::lower), PreconditionError);
        CHECK_THROWS_AS(exact_binomial_tail(10, 1.5, 3, TailSide::lower), PreconditionError);
    }
}

TEST_CASE("minimax_fit basics") {
    SUBCASE("single segment fits exactly") {
        const StepFunction f(IntervalSystem({Interval(-0.4, 0.9)}), {2.5});
        for (int degree : {0, 3, 10}) {
            const OracleResult r = minimax_fit(f, degree, false);
            CHECK(r.best_error <= 1e-10);
        }
    }
    SUBCASE("degree 0 against an antisymmetric pair is forced to 1") {
        const StepFunction f(IntervalSystem({Interval(-1.25, -1.0), Interval(1.0, 1.25)}),
                             {-1.0, 1.0});
        const OracleResult r = minimax_fit(f, 0, false);
        CHECK(r.best_error == doctest::Approx(1.0).epsilon(1e-9));
    }
    SUBCASE("degree 10 beats the Bernstein certificate") {
        const StepFunction f(IntervalSystem({Interval(-1.25, -1.0), Interval(1.0, 1.25)}),
                             {-1.0, 1.0});
        const OracleResult r = minimax_fit(f, 10, false);
        CHECK(r.best_error <= 2.0 * std::pow(0.36, 5.0));
    }
    SUBCASE("degree cap") {
        const StepFunction f(IntervalSystem({Interval(0.0, 1.0)}), {1.0});
        CHECK_THROWS_AS(minimax_fit(f, 65, false), PreconditionError);
    }
}

TEST_CASE("minimax_fit error is nonincreasing in the degree") {
    const StepFunction f(IntervalSystem({Interval(0.0, 0.2), Interval(0.5, 1.0)}), {1.0, -1.0});
    double prev = kInf;
    for (int degree = 0; degree <= 14; degree += 2) {
        const OracleResult r = minimax_fit(f, degree, false);
        CHECK(r.best_error <= prev + 1e-10);
        prev = r.best_error;
    }
}

TEST_CASE("bounded fit never beats the unbounded fit") {
    for (int trial = 0; trial < 12; ++trial) {
        const int s = uniform_int(2, 3);
        const IntervalSystem sys = random_system(s);
        const StepFunction f(sys, random_values(s));
        const int degree = uniform_int(0, 16);
        const double unbounded = minimax_fit(f, degree, false).best_error;
        const double bounded = minimax_fit(f, degree, true).best_error;
        CHECK(bounded >= unbounded * (1.0 - 1e-6) - 1e-12);
    }
}

TEST_CASE("grid doubling moves the result by less than 5 percent") {
    // Degrees where the minimax error on this geometry sits comfortably above
    // the solver's floor (~1e-2 down to ~2e-5).
    const StepFunction f(IntervalSystem({Interval(-2.0, -1.0), Interval(1.0, 2.0)}),
                         {-1.0, 1.0});
    for (int degree : {6, 12, 18}) {
        GridSpec coarse;  // default density
        GridSpec fine;
        fine.points_per_interval = 2 * std::max(8 * (degree + 1), 9);
        const double a = minimax_fit(f, degree, false, coarse).best_error;
        const double b = minimax_fit(f, degree, false, fine).best_error;
        CHECK(std::abs(a - b) <= 0.05 * std::max(a, b));
    }
    // wider gap so the degree-32 error stays resolvable (decay ~ (1/2)^(n/2))
    const StepFunction wide(IntervalSystem({Interval(-3.0, -1.0), Interval(1.0, 3.0)}),
                            {-1.0, 1.0});
    for (int degree : {24, 32}) {
        GridSpec fine;
        fine.points_per_interval = 2 * std::max(8 * (degree + 1), 9);
        const double a = minimax_fit(wide, degree, false).best_error;
        const double b = minimax_fit(wide, degree, false, fine).best_error;
        CHECK(std::abs(a - b) <= 0.05 * std::max(a, b));
    }
}

TEST_CASE("sandwich") {
    SUBCASE("constant step is exactly representable") {
        const StepFunction f(IntervalSystem({Interval(0.0, 1.0)}), {0.75});
        BoundCertificate cert;
        cert.formula = BoundFormula::small_delta;
        cert.value = 0.0;
        const SandwichReport rep =
            sandwich(f, Polynomial::constant(0.75, Interval(0.0, 1.0)), cert);
        CHECK(rep.ok);
        CHECK(rep.measured_error <= 1e-12);
        CHECK(*rep.oracle_error <= 1e-10);
    }
    SUBCASE("two-segment Bernstein construction at degree 10") {
        const IntervalSystem sys({Interval(-1.25, -1.0), Interval(1.0, 1.25)});
        const StepFunction f(sys, {-1.0, 1.0});
        const BernsteinApprox approx = equal_two_segment(sys, -1.0, 1.0, 10);
        const SandwichReport rep = sandwich(f, approx.exact, 10, approx.certificate);
        CHECK(rep.ok);
        CHECK(*rep.oracle_error <= rep.measured_error + 1e-12);
        CHECK(rep.measured_error <= rep.certificate + 1e-12);
    }
    SUBCASE("newton small-delta construction") {
        const IntervalSystem sys(
            {Interval(-0.01, 0.01), Interval(0.99, 1.01), Interval(2.49, 2.51)});
        const StepFunction f(sys, {0.3, -0.8, 0.5});
        const SystemStats st = system_stats(sys);
        const auto [poly, cert] = small_delta_for_system(f, 23, st.sigma / st.D);
        const SandwichReport rep = sandwich(f, poly, cert);
        CHECK(rep.ok);
    }
    SUBCASE("a violated ordering throws with all three values") {
        const StepFunction f(IntervalSystem({Interval(0.0, 0.1), Interval(0.9, 1.0)}),
                             {0.0, 1.0});
        const Polynomial p =
            Polynomial::from_samples([](double x) { return x; }, 1, Interval(0.0, 1.0));
        BoundCertificate lying;
        lying.formula = BoundFormula::h_bound;
        lying.value = 1e-30;
        CHECK_THROWS_AS(sandwich(f, p, lying), SandwichError);
    }
    SUBCASE("oracle leg is skipped above the degree cap") {
        const StepFunction f(IntervalSystem({Interval(0.0, 0.1), Interval(0.9, 1.0)}),
                             {-1.0, 1.0});
        const BernsteinApprox approx = equal_two_segment(f.system, -1.0, 1.0, 80);
        const SandwichReport rep = sandwich(f, approx.exact, 80, approx.certificate);
        CHECK(rep.ok);
        CHECK(!rep.oracle_error.has_value());
    }
}

TEST_CASE("asymptotic decay trend on a symmetric pair") {
    // K = [-2,-1] u [1,2]: the even-step ratio tends to (A-1)/(A+1) = 1/3.
    const StepFunction f(IntervalSystem({Interval(-2.0, -1.0), Interval(1.0, 2.0)}),
                         {-1.0, 1.0});
    std::vector<double> errors;
    for (int degree : {16, 18, 20, 22}) errors.push_back(minimax_fit(f, degree, false).best_error);
    for (std::size_t i = 0; i + 1 < errors.size(); ++i) {
        const double ratio = errors[i + 1] / errors[i];
        CHECK(ratio >= 0.20);
        CHECK(ratio <= 0.47);
    }
}

} // TEST_SUITE
