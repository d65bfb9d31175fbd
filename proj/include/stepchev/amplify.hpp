#pragma once

#include <string>

#include "stepchev/bernstein.hpp"
#include "stepchev/certificate.hpp"
#include "stepchev/polynomial.hpp"

namespace stepchev {

// Degree budget too small to fit even one amplifier stage (m would be 0).
struct PipelineBudgetError : ConstructionError {
    using ConstructionError::ConstructionError;
};

// Base approximant for a system normalized to hull [-1,1]: Chebyshev
// interpolation of the piecewise-linear extension, degree-escalated until the
// fit error is <= 1/4, then rescaled by 4/5 so the hull norm is <= 1 and the
// step-function error is <= 1/2.
struct JacksonBase {
    Polynomial poly;       // the rescaled approximant
    int degree = 0;        // achieved degree
    int target_degree = 0; // floor(4 pi / sigma)
    double fit_error = 0.0;   // |extension - unscaled fit| on [-1,1]
    double base_error = 0.0;  // |f - poly| on K after the 4/5 rescale
    double hull_norm = 0.0;
};

// Piecewise-linear extension of a step function: the values on the segments,
// straight ramps across the gaps.
RealFn piecewise_linear_extension(const StepFunction& f);

JacksonBase jackson_base(const StepFunction& f_normalized);

// Degree-m Bernstein approximant of the sign step on [-1,-1+eps] u [1-eps,1];
// bounded by 1 on [-1,1].  This is the composition stage's error amplifier.
std::pair<Polynomial, BoundCertificate> amplifier(int m, double eps);

struct PipelineReport {
    Polynomial poly;
    int base_degree = 0;
    int base_target_degree = 0;
    double base_error = 0.0;
    int amplifier_degree = 0;  // m
    int total_degree = 0;      // m * base_degree
    BoundCertificate certificate;
    ErrorReport measured;
    // exp(-c * total_degree) form of the certificate/2: the constructive rate.
    double constructive_rate = 0.0;
};

// Jackson base composed with the eps = 1/2 amplifier; certified by
// max|y| * 2 (3/4)^(m/2).  Values outside {-1,1} are handled by averaging the
// sign-pattern pipelines with product weights (the error bound is convex).
PipelineReport general_pipeline(const StepFunction& f, int m);

// Same, but m is derived from a total degree budget: m = floor(budget / base_degree).
PipelineReport general_pipeline_budget(const StepFunction& f, int degree_budget);

// General-value amplifier: inflate Y by delta, recentre to [-1,1], run the
// budgeted pipeline, scale back by diam(Y)/2.
std::pair<Polynomial, BoundCertificate> eps_general(const ValueSet& y, double delta, int n);

// Composes a two-value amplifier with an inner approximant of measured error
// eps_inner < 1; certified by 2 (4 eps/(1+eps)^2)^(m/2).
PipelineReport self_amplify(const StepFunction& f, int inner_degree, int m);

struct BestChoice {
    Polynomial poly;
    BoundCertificate certificate;
    std::string method;
    int degree = 0;
};

// Evaluates the applicable constructions at a degree budget and returns the
// one with the smallest certificate (ties: smaller degree, then Bernstein).
BestChoice choose_best(const StepFunction& f, int degree_budget);

} // namespace stepchev
