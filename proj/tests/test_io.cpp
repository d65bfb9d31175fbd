#include <doctest.h>

#include <cmath>

#include "stepchev/io.hpp"
#include "support.hpp"

using namespace stepchev;
using namespace testsupport;

TEST_SUITE("io") {

TEST_CASE("problem parsing") {
    SUBCASE("step-function form") {
        const Problem p = parse_problem(
            R"({"intervals": [[0.9, 1.0], [0.0, 0.1]], "values": [1.0, -1.0]})");
        REQUIRE(p.step.has_value());
        CHECK(p.step->system.size() == 2);
        CHECK(p.step->system.part(0).lo == doctest::Approx(0.0));
        CHECK(p.step->values[0] == doctest::Approx(-1.0));  // values follow the sort
    }
    SUBCASE("value-set form") {
        const Problem p = parse_problem(R"({"value_set": [-1.0, 0.0, 1.0], "delta": 0.1})");
        REQUIRE(p.value_set.has_value());
        CHECK(p.value_set->size() == 3);
        CHECK(p.delta == doctest::Approx(0.1));
    }
    SUBCASE("malformed inputs raise ParseError") {
        CHECK_THROWS_AS(parse_problem("not json"), ParseError);
        CHECK_THROWS_AS(parse_problem(R"({"intervals": [[0,1]]})"), ParseError);
        CHECK_THROWS_AS(parse_problem(R"({"intervals": [[0,1]], "values": [1, 2]})"), ParseError);
        CHECK_THROWS_AS(parse_problem(R"({"intervals": [[1, 0]], "values": [1]})"), ParseError);
        CHECK_THROWS_AS(parse_problem(R"({"intervals": [[0, "x"]], "values": [1]})"), ParseError);
        CHECK_THROWS_AS(parse_problem(R"({"value_set": [0.0, 1.0]})"), ParseError);
        // out-of-range literals parse to infinity and must be rejected
        CHECK_THROWS_AS(parse_problem(R"({"intervals": [[0, 1e999]], "values": [1]})"),
                        ParseError);
        CHECK_THROWS_AS(parse_problem(R"({"intervals": [[0,0.4],[0.5,1]], "values": [1]})"),
                        ParseError);
        // overlapping segments are a parse-level rejection too
        CHECK_THROWS_AS(
            parse_problem(R"({"intervals": [[0,0.6],[0.5,1]], "values": [1,2]})"), ParseError);
    }
    SUBCASE("missing file") {
        CHECK_THROWS_AS(load_problem("/nonexistent/problem.json"), ParseError);
    }
}

TEST_CASE("polynomial JSON round-trip") {
    std::vector<double> coeffs(9);
    for (double& c : coeffs) c = uniform(-2.0, 2.0);
    const Polynomial p(Interval(-0.5, 2.5), coeffs);
    const Polynomial q = polynomial_from_json(to_json(p));
    CHECK(q.ref().lo == doctest::Approx(p.ref().lo));
    CHECK(q.degree() == p.degree());
    for (int i = 0; i < 20; ++i) {
        const double x = uniform(-0.5, 2.5);
        CHECK(q(x) == doctest::Approx(p(x)).epsilon(1e-14).scale(1.0));
    }
    CHECK_THROWS_AS(polynomial_from_json("{}"), ParseError);
    CHECK_THROWS_AS(polynomial_from_json(R"({"ref": [0], "coeffs": [1]})"), ParseError);
}

TEST_CASE("csv rows") {
    CHECK(csv_header() ==
          "method,degree,m,measured_error,certificate,hull_norm,oracle_error,converged,flag");
    ResultRow row;
    row.method = "bernstein";
    row.degree = 10;
    row.measured_error = 0.1;
    row.certificate = 0.25;
    row.converged = true;
    CHECK(csv_row(row) == "bernstein,10,,0.10000000000000001,0.25,,,true,");

    ResultRow bad = row;
    bad.violation = true;
    CHECK(csv_row(bad) == "bernstein,10,,0.10000000000000001,0.25,,,true,VIOLATION");
}

TEST_CASE("floating output carries 17 significant digits") {
    CHECK(format_double(0.1) == "0.10000000000000001");
    CHECK(format_double(2.5) == "2.5");
    CHECK(format_double(2.0) == "2");
    CHECK(format_double(7.3122e-05) == "7.3121999999999995e-05");
}

TEST_CASE("rows_to_json emits nulls for missing fields") {
    ResultRow row;
    row.method = "oracle";
    row.degree = 4;
    row.oracle_error = 0.5;
    const std::string out = rows_to_json({row});
    CHECK(out.find("\"measured_error\": null") != std::string::npos);
    CHECK(out.find("\"oracle_error\": 0.5") != std::string::npos);
}

TEST_CASE("report serializers") {
    ErrorReport rep;
    rep.per_interval_error = {0.5, 0.25};
    rep.global_error = 0.5;
    rep.hull_norm = 1.0;
    rep.grid_size = 514;
    const std::string rep_json = to_json(rep);
    CHECK(rep_json.find("\"global_error\":0.5") != std::string::npos);
    CHECK(rep_json.find("\"grid_size\":514") != std::string::npos);

    OracleResult oracle;
    oracle.best_error = 0.125;
    oracle.converged = true;
    oracle.iterations = 42;
    const std::string oracle_json = to_json(oracle, 7);
    CHECK(oracle_json.find("\"degree\":7") != std::string::npos);
    CHECK(oracle_json.find("\"best_error\":0.125") != std::string::npos);
    CHECK(oracle_json.find("\"converged\":true") != std::string::npos);

    PipelineReport pipe;
    pipe.base_degree = 31;
    pipe.amplifier_degree = 10;
    pipe.total_degree = 310;
    pipe.certificate.formula = BoundFormula::pipeline;
    pipe.certificate.value = 0.474609375;
    const std::string pipe_json = to_json(pipe);
    CHECK(pipe_json.find("\"total_degree\":310") != std::string::npos);
    CHECK(pipe_json.find("\"formula\":\"PIPELINE\"") != std::string::npos);
}

} // TEST_SUITE
