#pragma once

#include <iosfwd>
#include <string>

namespace stepchev {

enum class Command { stats, bernstein, newton, pipeline, oracle, sweep, eps };

struct RunConfig {
    Command command = Command::stats;
    std::string input_path;
    int degree_lo = -1;  // -1 = not given
    int degree_hi = -1;
    int degree_step = 1;
    int m = 0;               // pipeline amplifier degree (0 = derive from budget)
    bool bounded = false;    // oracle: enforce the hull bound (E*)
    double u = 0.0;          // newton: sigma/D floor (0 = use the actual ratio)
    double grid_mult = 1.0;  // scales the automatic grid density
    std::string output_path; // empty = stdout
    std::string poly_out;    // optional: write the last polynomial as JSON here
    std::string format = "csv";
};

// Executes one command and returns the process exit status:
//   0 ok, 2 parse error, 3 precondition violation, 4 construction failure,
//   5 measured-vs-certificate (sandwich) violation.
// Table output goes to config.output_path or `out`; diagnostics to `err`.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);
int run(const RunConfig& config);  // stdout/stderr

} // namespace stepchev
