// Command line runner for the lattice equidistribution experiments.
// Usage:
//   equilattice run <config.json> [--out DIR] [--threads N] [--seed S]
//   equilattice presets

#include <cstdio>
#include <cstdlib>

#include "CLI11.hpp"
#include "equilattice/report.hpp"

int main(int argc, char** argv) {
    CLI::App app{"lattice equidistribution laboratory"};
    app.require_subcommand(1);

    std::string config_path, out_dir;
    int threads = 0;
    std::uint64_t seed = 0;
    bool seed_given = false;

    auto* run = app.add_subcommand("run", "run an experiment from a JSON config");
    run->add_option("config", config_path, "path to config.json")->required();
    run->add_option("--out", out_dir, "output directory (overrides config)");
    run->add_option("--threads", threads, "worker thread count");
    auto* seed_opt = run->add_option("--seed", seed, "seed override");

    auto* presets = app.add_subcommand("presets", "list lattice and Lie presets");

    const char* env_out = std::getenv("EQUILATTICE_OUT");

    CLI11_PARSE(app, argc, argv);
    seed_given = seed_opt->count() > 0;

    if (presets->parsed()) {
        std::fputs(eql::preset_listing().c_str(), stdout);
        return 0;
    }
    if (out_dir.empty() && env_out) out_dir = env_out;
    return eql::run_from_file(config_path, out_dir, threads, seed, seed_given);
}
