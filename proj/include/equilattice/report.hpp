#pragma once

// Experiment runner: JSON configurations in, CSV tables and a JSON report
// out, with seeds and parameters echoed next to every table. Identical
// configurations byte-reproduce every CSV.

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "equilattice/ints.hpp"

namespace eql {

struct ExperimentConfig {
    std::string kind;  // sublattices | multiplicity | density | pullpush | cm
    std::string raw;   // full config echo

    std::string lattice_name;      // preset name or inline gram
    std::string lie_preset;
    int r = 1;
    Int K = 100;
    std::vector<Int> n_grid;
    std::vector<Int> N_set;
    Int prime_cutoff = 20;
    int s_max = 3;
    long long samples = 200000;
    std::uint64_t seed = 1;
    int threads = 0;  // 0 = library default
    std::string out_dir = ".";
    std::string gram_json;  // inline lattice, optional
};

ExperimentConfig parse_config(const std::string& json_text);

struct RunReport {
    int exit_code = 0;  // 0 ok, 1 config error, 2 assertion failure
    std::string report_json;
    std::map<std::string, std::string> files;  // filename -> contents (CSV + sidecars)
    std::vector<std::string> messages;
    double wall_clock_seconds = 0.0;  // reported on stdout, kept out of the
                                      // files so identical configs byte-match
};

// executes the experiment; does not touch the filesystem
RunReport run_experiment(const ExperimentConfig& cfg);

// parse + run + write files under cfg.out_dir
int run_from_file(const std::string& config_path, const std::string& out_override,
                  int threads_override, std::uint64_t seed_override, bool has_seed_override);

// RFC 4180 field quoting
std::string csv_escape(const std::string& field);

std::string preset_listing();

}  // namespace eql
