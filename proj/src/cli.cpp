#include "stepchev/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>
#include <vector>

#include "stepchev/amplify.hpp"
#include "stepchev/io.hpp"
#include "stepchev/newton.hpp"
#include "stepchev/oracle.hpp"

namespace stepchev {

namespace {

std::vector<int> degree_list(const RunConfig& cfg) {
    if (cfg.degree_lo < 0) throw PreconditionError("this command needs --degree or --degree-range");
    if (cfg.degree_hi >= 0 && cfg.degree_hi < cfg.degree_lo)
        throw PreconditionError("empty degree range");
    if (cfg.degree_step < 1) throw PreconditionError("degree step must be >= 1");
    std::vector<int> out;
    const int hi = cfg.degree_hi >= 0 ? cfg.degree_hi : cfg.degree_lo;
    for (int d = cfg.degree_lo; d <= hi; d += cfg.degree_step) out.push_back(d);
    return out;
}

GridSpec grid_for(const RunConfig& cfg, int degree) {
    GridSpec g;
    if (cfg.grid_mult != 1.0) {
        const int base = g.effective_points(degree);
        g.points_per_interval = std::max(2, static_cast<int>(cfg.grid_mult * base));
    }
    return g;
}

const StepFunction& require_step(const Problem& p) {
    if (!p.step) throw PreconditionError("this command needs a step-function problem file");
    return *p.step;
}

struct RowSink {
    std::vector<ResultRow> rows;
    bool any_violation = false;
    Polynomial last_poly;
    bool has_poly = false;

    void add(ResultRow row) {
        if (row.measured_error && row.certificate &&
            *row.measured_error > *row.certificate + 1e-12)
            row.violation = true;
        any_violation = any_violation || row.violation;
        rows.push_back(std::move(row));
    }

    void keep(const Polynomial& p) {
        last_poly = p;
        has_poly = true;
    }
};

void cmd_stats(const Problem& problem, std::ostream& out) {
    if (problem.step) {
        const SystemStats st = system_stats(problem.step->system);
        out << "s=" << st.s << " delta=" << format_double(st.delta)
            << " sigma=" << format_double(st.sigma) << " D=" << format_double(st.D) << "\n";
    } else {
        const ValueSet& y = *problem.value_set;
        out << "s=" << y.size() << " sigma_hat=" << format_double(y.min_gap())
            << " D_hat=" << format_double(y.diameter())
            << " delta=" << format_double(problem.delta) << "\n";
    }
}

void cmd_bernstein(const RunConfig& cfg, const StepFunction& f, RowSink& sink) {
    if (f.system.size() != 2)
        throw PreconditionError("bernstein command needs a two-segment system");
    for (int degree : degree_list(cfg)) {
        if (degree < 1) throw PreconditionError("bernstein needs degree >= 1");
        BernsteinApprox approx = equal_two_segment(f.system, f.values[0], f.values[1], degree);
        const ErrorReport rep = bernstein_sup_error(approx, f, grid_for(cfg, degree));
        ResultRow row;
        row.method = "bernstein";
        row.degree = degree;
        row.measured_error = rep.global_error;
        row.certificate = approx.certificate.value;
        row.hull_norm = rep.hull_norm;
        sink.add(std::move(row));
        sink.keep(approx.poly);
    }
}

void cmd_newton(const RunConfig& cfg, const StepFunction& f, RowSink& sink) {
    const SystemStats st = system_stats(f.system);
    const double u = cfg.u > 0.0 ? cfg.u : (st.s > 1 ? st.sigma / st.D : 1.0);
    for (int degree : degree_list(cfg)) {
        auto [poly, cert] = small_delta_for_system(f, degree, u);
        const ErrorReport rep = sup_error(poly, f, grid_for(cfg, poly.degree()));
        ResultRow row;
        row.method = "newton";
        row.degree = degree;
        row.m = static_cast<int>(cert.params.count("m") ? cert.params.at("m")
                                                        : cert.params.at("n"));
        row.measured_error = rep.global_error;
        row.certificate = cert.value;
        row.hull_norm = rep.hull_norm;
        sink.add(std::move(row));
        sink.keep(poly);
    }
}

ResultRow pipeline_row(const PipelineReport& report) {
    ResultRow row;
    row.method = "pipeline";
    row.degree = report.total_degree;
    row.m = report.amplifier_degree;
    row.measured_error = report.measured.global_error;
    row.certificate = report.certificate.value;
    row.hull_norm = report.measured.hull_norm;
    return row;
}

void cmd_pipeline(const RunConfig& cfg, const StepFunction& f, RowSink& sink) {
    if (cfg.m > 0) {
        PipelineReport report = general_pipeline(f, cfg.m);
        sink.add(pipeline_row(report));
        sink.keep(report.poly);
        return;
    }
    for (int budget : degree_list(cfg)) {
        PipelineReport report = general_pipeline_budget(f, budget);
        sink.add(pipeline_row(report));
        sink.keep(report.poly);
    }
}

void cmd_oracle(const RunConfig& cfg, const StepFunction& f, RowSink& sink) {
    for (int degree : degree_list(cfg)) {
        const OracleResult res = minimax_fit(f, degree, cfg.bounded, grid_for(cfg, degree));
        ResultRow row;
        row.method = cfg.bounded ? "oracle_bounded" : "oracle";
        row.degree = degree;
        row.oracle_error = res.best_error;
        row.converged = res.converged;
        sink.add(std::move(row));
        sink.keep(res.polynomial);
    }
}

void cmd_sweep(const RunConfig& cfg, const StepFunction& f, RowSink& sink) {
    const SystemStats st = system_stats(f.system);
    for (int degree : degree_list(cfg)) {
        std::optional<double> oracle_error;
        std::optional<bool> converged;
        if (degree <= kOracleDegreeCap) {
            const OracleResult res = minimax_fit(f, degree, false, grid_for(cfg, degree));
            oracle_error = res.best_error;
            converged = res.converged;
        }

        if (f.system.size() == 2 && degree >= 1) {
            BernsteinApprox approx =
                equal_two_segment(f.system, f.values[0], f.values[1], degree);
            const ErrorReport rep = bernstein_sup_error(approx, f, grid_for(cfg, degree));
            ResultRow row;
            row.method = "bernstein";
            row.degree = degree;
            row.measured_error = rep.global_error;
            row.certificate = approx.certificate.value;
            row.hull_norm = rep.hull_norm;
            row.oracle_error = oracle_error;
            row.converged = converged;
            sink.add(std::move(row));
            sink.keep(approx.poly);
        }

        {
            const double u = cfg.u > 0.0 ? cfg.u : (st.s > 1 ? st.sigma / st.D : 1.0);
            auto [poly, cert] = small_delta_for_system(f, degree, u);
            const ErrorReport rep = sup_error(poly, f, grid_for(cfg, poly.degree()));
            ResultRow row;
            row.method = "newton";
            row.degree = degree;
            row.m = static_cast<int>(cert.params.count("m") ? cert.params.at("m")
                                                            : cert.params.at("n"));
            row.measured_error = rep.global_error;
            row.certificate = cert.value;
            row.hull_norm = rep.hull_norm;
            row.oracle_error = oracle_error;
            row.converged = converged;
            sink.add(std::move(row));
            sink.keep(poly);
        }

        if (f.system.size() >= 2 && degree >= 1) {
            try {
                PipelineReport report = general_pipeline_budget(f, degree);
                ResultRow row = pipeline_row(report);
                row.degree = degree;  // budget column; total degree may be smaller
                row.oracle_error = oracle_error;
                row.converged = converged;
                sink.add(std::move(row));
                sink.keep(report.poly);
            } catch (const PipelineBudgetError&) {
                // budget below the base degree at this row
            }
        }
    }
}

void cmd_eps(const RunConfig& cfg, const Problem& problem, RowSink& sink) {
    if (!problem.value_set)
        throw PreconditionError("eps command needs a value_set problem file");
    const ValueSet& y = *problem.value_set;
    const double delta = problem.delta;
    const std::vector<int> degrees = degree_list(cfg);
    if (degrees.size() != 1)
        throw PreconditionError("eps command takes a single --degree budget");
    const int n = degrees.front();

    const IntervalSystem inflated = inflate(y, delta);
    const StepFunction target(inflated, y.points());

    struct Entry {
        std::string tag;
        Polynomial poly;
        double cert;
    };
    std::vector<Entry> entries;

    if (y.size() == 2 && n >= 1) {
        BernsteinApprox two = eps_two(y, delta, n);
        const ErrorReport rep = bernstein_sup_error(two, target, grid_for(cfg, n));
        ResultRow row;
        row.method = "eps_two";
        row.degree = n;
        row.measured_error = rep.global_error;
        row.certificate = two.certificate.value;
        row.hull_norm = rep.hull_norm;
        sink.add(std::move(row));
        entries.push_back({"eps_two", two.poly, two.certificate.value});
    }

    {
        auto [poly, cert] = eps_small_delta(y, delta, n);
        const ErrorReport rep = sup_error(poly, target, grid_for(cfg, poly.degree()));
        ResultRow row;
        row.method = "eps_small_delta";
        row.degree = n;
        row.measured_error = rep.global_error;
        row.certificate = cert.value;
        row.hull_norm = rep.hull_norm;
        sink.add(std::move(row));
        entries.push_back({"eps_small_delta", poly, cert.value});
    }

    if (n >= 1) {
        auto [poly, cert] = eps_general(y, delta, n);
        const ErrorReport rep = sup_error(poly, target, grid_for(cfg, poly.degree()));
        ResultRow row;
        row.method = "eps_general";
        row.degree = n;
        row.measured_error = rep.global_error;
        row.certificate = cert.value;
        row.hull_norm = rep.hull_norm;
        sink.add(std::move(row));
        entries.push_back({"eps_general", poly, cert.value});
    }

    const auto best = std::min_element(entries.begin(), entries.end(),
                                       [](const Entry& a, const Entry& b) { return a.cert < b.cert; });
    ResultRow row;
    row.method = "best:" + best->tag;
    row.degree = n;
    row.certificate = best->cert;
    sink.add(std::move(row));
    sink.keep(best->poly);
}

void write_table(const RunConfig& cfg, const RowSink& sink, std::ostream& out) {
    std::ostringstream body;
    if (cfg.format == "json") {
        body << rows_to_json(sink.rows) << "\n";
    } else if (cfg.format == "csv") {
        body << csv_header() << "\n";
        for (const ResultRow& row : sink.rows) body << csv_row(row) << "\n";
    } else {
        throw PreconditionError("unknown output format: " + cfg.format);
    }
    if (cfg.output_path.empty()) {
        out << body.str();
    } else {
        std::ofstream file(cfg.output_path);
        if (!file) throw ConstructionError("cannot open output file: " + cfg.output_path);
        file << body.str();
    }
    if (!cfg.poly_out.empty() && sink.has_poly) {
        std::ofstream file(cfg.poly_out);
        if (!file) throw ConstructionError("cannot open polynomial output file: " + cfg.poly_out);
        file << to_json(sink.last_poly) << "\n";
    }
}

} // namespace

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    try {
        const Problem problem = load_problem(cfg.input_path);
        if (cfg.command == Command::stats) {
            cmd_stats(problem, out);
            return 0;
        }

        RowSink sink;
        switch (cfg.command) {
            case Command::bernstein: cmd_bernstein(cfg, require_step(problem), sink); break;
            case Command::newton: cmd_newton(cfg, require_step(problem), sink); break;
            case Command::pipeline: cmd_pipeline(cfg, require_step(problem), sink); break;
            case Command::oracle: cmd_oracle(cfg, require_step(problem), sink); break;
            case Command::sweep: cmd_sweep(cfg, require_step(problem), sink); break;
            case Command::eps: cmd_eps(cfg, problem, sink); break;
            case Command::stats: break;
        }
        write_table(cfg, sink, out);
        if (sink.any_violation) {
            err << "certificate violation: at least one row exceeds its bound\n";
            return 5;
        }
        return 0;
    } catch (const ParseError& e) {
        err << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const SandwichError& e) {
        err << "sandwich violation: " << e.what() << "\n";
        return 5;
    } catch (const PreconditionError& e) {
        err << "precondition violation: " << e.what() << "\n";
        return 3;
    } catch (const std::invalid_argument& e) {
        err << "precondition violation: " << e.what() << "\n";
        return 3;
    } catch (const ConstructionError& e) {
        err << "construction failure: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 4;
    }
}

int run(const RunConfig& cfg) { return run(cfg, std::cout, std::cerr); }

} // namespace stepchev
