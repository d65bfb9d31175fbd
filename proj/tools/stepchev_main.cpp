#include <cstdio>
#include <string>

#include <CLI11.hpp>

#include "stepchev/cli.hpp"

namespace {

// "A", "A:B" or "A:B:step"
bool parse_degree_range(const std::string& text, stepchev::RunConfig& cfg) {
    int lo = -1, hi = -1, step = 1;
    const int fields = std::sscanf(text.c_str(), "%d:%d:%d", &lo, &hi, &step);
    if (fields < 1 || lo < 0) return false;
    if (fields == 1) hi = lo;
    if (hi < lo || step < 1) return false;
    cfg.degree_lo = lo;
    cfg.degree_hi = hi;
    cfg.degree_step = step;
    return true;
}

void add_common(CLI::App* cmd, stepchev::RunConfig& cfg, bool needs_degree) {
    cmd->add_option("--input", cfg.input_path, "problem JSON file")->required();
    cmd->add_option("--out", cfg.output_path, "write the table here instead of stdout");
    cmd->add_option("--format", cfg.format, "csv or json")->default_val("csv");
    cmd->add_option("--grid-mult", cfg.grid_mult, "multiply the automatic grid density");
    cmd->add_option("--poly-out", cfg.poly_out, "write the last polynomial as JSON here");
    if (needs_degree) {
        auto* deg = cmd->add_option_function<int>(
            "--degree", [&cfg](int d) { cfg.degree_lo = cfg.degree_hi = d; },
            "single degree");
        auto* rng = cmd->add_option_function<std::string>(
            "--degree-range",
            [&cfg](const std::string& s) {
                if (!parse_degree_range(s, cfg))
                    throw CLI::ValidationError("--degree-range", "expected A:B or A:B:step");
            },
            "degree range A:B[:step]");
        deg->excludes(rng);
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Polynomial approximation of step functions on segment unions, "
                 "with closed-form error certificates"};
    app.require_subcommand(1);

    stepchev::RunConfig cfg;

    auto* stats = app.add_subcommand("stats", "print s, delta, sigma, D for a problem");
    stats->add_option("--input", cfg.input_path, "problem JSON file")->required();

    auto* bern = app.add_subcommand("bernstein", "two-segment Bernstein construction");
    add_common(bern, cfg, true);

    auto* newt = app.add_subcommand("newton", "small-delta Newton construction");
    add_common(newt, cfg, true);
    newt->add_option("--u", cfg.u, "sigma/D floor (default: the actual ratio)");

    auto* pipe = app.add_subcommand("pipeline", "Jackson base + Bernstein amplifier");
    add_common(pipe, cfg, true);
    pipe->add_option("--m", cfg.m, "amplifier degree (overrides the degree budget)");

    auto* orac = app.add_subcommand("oracle", "brute-force minimax fit");
    add_common(orac, cfg, true);
    orac->add_flag("--bounded", cfg.bounded, "enforce |P| <= max|y| on the hull (E*)");

    auto* sweep = app.add_subcommand("sweep", "all applicable methods plus oracle, per degree");
    add_common(sweep, cfg, true);
    sweep->add_option("--u", cfg.u, "sigma/D floor for the newton rows");

    auto* eps = app.add_subcommand("eps", "value-set amplifier constructions");
    add_common(eps, cfg, true);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    if (stats->parsed()) cfg.command = stepchev::Command::stats;
    if (bern->parsed()) cfg.command = stepchev::Command::bernstein;
    if (newt->parsed()) cfg.command = stepchev::Command::newton;
    if (pipe->parsed()) cfg.command = stepchev::Command::pipeline;
    if (orac->parsed()) cfg.command = stepchev::Command::oracle;
    if (sweep->parsed()) cfg.command = stepchev::Command::sweep;
    if (eps->parsed()) cfg.command = stepchev::Command::eps;

    // Pipeline with --m needs no degree; everything else does (checked in run).
    if (pipe->parsed() && cfg.m > 0 && cfg.degree_lo < 0) cfg.degree_lo = cfg.degree_hi = 0;

    return stepchev::run(cfg);
}
