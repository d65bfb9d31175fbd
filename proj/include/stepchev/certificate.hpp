#pragma once

#include <map>
#include <string>

namespace stepchev {

// Which closed-form bound a certificate instantiates.
enum class BoundFormula {
    h_bound,      // two segments [0,h] u [1-h,1]: 2*amp*(4h(1-h))^(n/2)
    two_seg,      // general two segments: 2*amp*(1 - sigma^2/D'^2)^(n/2)
    small_delta,  // Newton partition: 2(s-1)*(A(Z)*delta)^m, scaled
    pipeline,     // Jackson base + Bernstein amplifier: 2*(3/4)^(m/2), scaled
    eps_two,      // two-value amplifier eps_n(Y; delta)
    eps_general,  // general-value amplifier via the pipeline
    bnd_limit,    // per-polynomial partition bound (2 delta)^n (2D+1)^(n(s-1))
};

const char* to_string(BoundFormula f);

// A closed-form upper bound: the formula it instantiates, the parameters the
// formula was evaluated at, and the resulting numeric value.
struct BoundCertificate {
    BoundFormula formula;
    std::map<std::string, double> params;
    double value = 0.0;

    bool trivial() const { return params.count("trivial") != 0; }
};

inline const char* to_string(BoundFormula f) {
    switch (f) {
        case BoundFormula::h_bound: return "H_BOUND";
        case BoundFormula::two_seg: return "TWO_SEG";
        case BoundFormula::small_delta: return "SMALL_DELTA";
        case BoundFormula::pipeline: return "PIPELINE";
        case BoundFormula::eps_two: return "EPS_TWO";
        case BoundFormula::eps_general: return "EPS_GENERAL";
        case BoundFormula::bnd_limit: return "BND_LIMIT";
    }
    return "UNKNOWN";
}

} // namespace stepchev
