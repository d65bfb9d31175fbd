#pragma once

#include <cmath>
#include <cstdlib>
#include <limits>
#include <stdexcept>
#include <string>

namespace stepchev {

// Input that violates a documented precondition (bad geometry, parameter
// out of range, ...).  CLI maps this to exit status 3.
struct PreconditionError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// A construction that started from valid inputs but could not be completed
// (degree overflow, base fit failure, ...).  CLI exit status 4.
struct ConstructionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Malformed problem file.  CLI exit status 2.
struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A measured error exceeded its certificate, or an oracle/measured/certificate
// ordering failed.  CLI exit status 5.
struct SandwichError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// Neumaier-compensated accumulation; keeps long mixed-sign sums accurate to
// a few ulps of the largest intermediate term.
struct NeumaierSum {
    double sum = 0.0;
    double comp = 0.0;

    void add(double v) {
        const double t = sum + v;
        if (std::abs(sum) >= std::abs(v))
            comp += (sum - t) + v;
        else
            comp += (v - t) + sum;
        sum = t;
    }

    double value() const { return sum + comp; }
};

// Worker count for grid scans: STEPCHEV_THREADS, clamped to [1, 256].
// Defaults to 1 so output is deterministic without configuration.
inline int thread_count() {
    static const int cached = [] {
        const char* env = std::getenv("STEPCHEV_THREADS");
        if (!env) return 1;
        const long v = std::strtol(env, nullptr, 10);
        if (v < 1) return 1;
        if (v > 256) return 256;
        return static_cast<int>(v);
    }();
    return cached;
}

} // namespace stepchev
