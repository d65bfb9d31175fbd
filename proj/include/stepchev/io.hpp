#pragma once

#include <optional>
#include <string>

#include "stepchev/amplify.hpp"
#include "stepchev/interval.hpp"
#include "stepchev/oracle.hpp"
#include "stepchev/polynomial.hpp"

namespace stepchev {

// A problem file holds either a step function ({"intervals": [[lo,hi],...],
// "values": [...]}) or a value-set amplification problem
// ({"value_set": [...], "delta": d}).  NaN/Inf endpoints are rejected.
struct Problem {
    std::optional<StepFunction> step;
    std::optional<ValueSet> value_set;
    double delta = 0.0;  // only meaningful with value_set
};

Problem parse_problem(const std::string& json_text);
Problem load_problem(const std::string& path);

std::string to_json(const Polynomial& p);              // {"ref":[lo,hi],"coeffs":[...]}
Polynomial polynomial_from_json(const std::string& s);

std::string to_json(const ErrorReport& r);
std::string to_json(const OracleResult& r, int degree);
std::string to_json(const PipelineReport& r);

// One row of the sweep table.  Optional fields print empty in CSV and null in JSON.
struct ResultRow {
    std::string method;
    int degree = 0;
    std::optional<int> m;
    std::optional<double> measured_error;
    std::optional<double> certificate;
    std::optional<double> hull_norm;
    std::optional<double> oracle_error;
    std::optional<bool> converged;
    bool violation = false;
};

// Schema: method,degree,m,measured_error,certificate,hull_norm,oracle_error,converged,flag.
// Floats carry 17 significant digits so regression baselines reproduce bit-for-bit.
std::string csv_header();
std::string csv_row(const ResultRow& row);
std::string rows_to_json(const std::vector<ResultRow>& rows);

std::string format_double(double v);  // %.17g

} // namespace stepchev
