#include "stepchev/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace stepchev {

using nlohmann::json;

namespace {

double finite_number(const json& j, const char* what) {
    if (!j.is_number()) throw ParseError(std::string(what) + " must be a number");
    const double v = j.get<double>();
    if (!std::isfinite(v)) throw ParseError(std::string(what) + " must be finite");
    return v;
}

json parse_json(const std::string& text) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded()) throw ParseError("invalid JSON");
    return j;
}

} // namespace

Problem parse_problem(const std::string& text) {
    const json j = parse_json(text);
    if (!j.is_object()) throw ParseError("problem file must be a JSON object");

    Problem problem;
    if (j.contains("value_set")) {
        const json& vs = j.at("value_set");
        if (!vs.is_array()) throw ParseError("value_set must be an array");
        std::vector<double> points;
        for (const json& p : vs) points.push_back(finite_number(p, "value_set entry"));
        try {
            problem.value_set = ValueSet(std::move(points));
        } catch (const PreconditionError& e) {
            throw ParseError(e.what());
        }
        if (!j.contains("delta")) throw ParseError("value_set problems need a delta");
        problem.delta = finite_number(j.at("delta"), "delta");
        return problem;
    }

    if (!j.contains("intervals")) throw ParseError("problem file needs intervals or value_set");
    const json& ivs = j.at("intervals");
    if (!ivs.is_array() || ivs.empty()) throw ParseError("intervals must be a nonempty array");
    std::vector<Interval> parts;
    for (const json& iv : ivs) {
        if (!iv.is_array() || iv.size() != 2)
            throw ParseError("each interval must be a [lo, hi] pair");
        const double lo = finite_number(iv[0], "interval endpoint");
        const double hi = finite_number(iv[1], "interval endpoint");
        try {
            parts.emplace_back(lo, hi);
        } catch (const PreconditionError& e) {
            throw ParseError(e.what());
        }
    }
    if (!j.contains("values")) throw ParseError("step-function problems need values");
    const json& vals = j.at("values");
    if (!vals.is_array()) throw ParseError("values must be an array");
    std::vector<double> values;
    for (const json& v : vals) values.push_back(finite_number(v, "value"));
    try {
        problem.step = make_step_function(std::move(parts), std::move(values));
    } catch (const PreconditionError& e) {
        throw ParseError(e.what());
    }
    return problem;
}

Problem load_problem(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open problem file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_problem(buf.str());
}

std::string to_json(const Polynomial& p) {
    json j;
    j["ref"] = {p.ref().lo, p.ref().hi};
    j["coeffs"] = p.coeffs();
    return j.dump();
}

Polynomial polynomial_from_json(const std::string& s) {
    const json j = parse_json(s);
    if (!j.is_object() || !j.contains("ref") || !j.contains("coeffs"))
        throw ParseError("polynomial JSON needs ref and coeffs");
    const json& ref = j.at("ref");
    if (!ref.is_array() || ref.size() != 2) throw ParseError("ref must be [lo, hi]");
    std::vector<double> coeffs;
    for (const json& c : j.at("coeffs")) coeffs.push_back(finite_number(c, "coefficient"));
    try {
        return Polynomial(Interval(finite_number(ref[0], "ref.lo"), finite_number(ref[1], "ref.hi")),
                          std::move(coeffs));
    } catch (const PreconditionError& e) {
        throw ParseError(e.what());
    } catch (const ConstructionError& e) {
        throw ParseError(e.what());
    }
}

std::string to_json(const ErrorReport& r) {
    json j;
    j["per_interval_error"] = r.per_interval_error;
    j["global_error"] = r.global_error;
    j["hull_norm"] = r.hull_norm;
    j["grid_size"] = r.grid_size;
    return j.dump();
}

std::string to_json(const OracleResult& r, int degree) {
    json j;
    j["degree"] = degree;
    j["best_error"] = r.best_error;
    j["iterations"] = r.iterations;
    j["converged"] = r.converged;
    j["duality_gap_estimate"] = r.duality_gap_estimate;
    return j.dump();
}

std::string to_json(const PipelineReport& r) {
    json j;
    j["base_degree"] = r.base_degree;
    j["base_target_degree"] = r.base_target_degree;
    j["base_error"] = r.base_error;
    j["amplifier_degree"] = r.amplifier_degree;
    j["total_degree"] = r.total_degree;
    j["certificate"] = {{"formula", to_string(r.certificate.formula)},
                        {"value", r.certificate.value},
                        {"params", r.certificate.params}};
    j["measured_global_error"] = r.measured.global_error;
    j["measured_hull_norm"] = r.measured.hull_norm;
    j["constructive_rate"] = r.constructive_rate;
    return j.dump();
}

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string csv_header() {
    return "method,degree,m,measured_error,certificate,hull_norm,oracle_error,converged,flag";
}

std::string csv_row(const ResultRow& r) {
    std::ostringstream out;
    out << r.method << ',' << r.degree << ',';
    if (r.m) out << *r.m;
    out << ',';
    if (r.measured_error) out << format_double(*r.measured_error);
    out << ',';
    if (r.certificate) out << format_double(*r.certificate);
    out << ',';
    if (r.hull_norm) out << format_double(*r.hull_norm);
    out << ',';
    if (r.oracle_error) out << format_double(*r.oracle_error);
    out << ',';
    if (r.converged) out << (*r.converged ? "true" : "false");
    out << ',';
    if (r.violation) out << "VIOLATION";
    return out.str();
}

std::string rows_to_json(const std::vector<ResultRow>& rows) {
    json arr = json::array();
    for (const ResultRow& r : rows) {
        json j;
        j["method"] = r.method;
        j["degree"] = r.degree;
        j["m"] = r.m ? json(*r.m) : json(nullptr);
        j["measured_error"] = r.measured_error ? json(*r.measured_error) : json(nullptr);
        j["certificate"] = r.certificate ? json(*r.certificate) : json(nullptr);
        j["hull_norm"] = r.hull_norm ? json(*r.hull_norm) : json(nullptr);
        j["oracle_error"] = r.oracle_error ? json(*r.oracle_error) : json(nullptr);
        j["converged"] = r.converged ? json(*r.converged) : json(nullptr);
        j["flag"] = r.violation ? "VIOLATION" : "";
        arr.push_back(std::move(j));
    }
    return arr.dump(2);
}

} // namespace stepchev
