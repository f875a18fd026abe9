#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace fairclust {

// Everything a subcommand needs, filled from CLI flags. Defaults match the
// flag defaults so a RunConfig can also be built programmatically.
struct RunConfig {
    std::string command;                 // cluster|fair|combined|kcenter-fair|
                                         // audit|baseline|bound|reduce
    std::string input;                   // CSV path; graph path for `reduce`
    std::vector<std::string> features;   // numeric column names
    std::vector<std::string> group_cols; // categorical column names
    std::size_t k = 2;
    std::string p = "2";                 // 1 | 2 | inf
    std::string fairness = "f1";         // f1 | f2 | metric | file=PATH
    std::size_t m = 5;                   // f1 neighbor count
    double delta = 0.2;                  // group sandwich slack
    std::uint64_t seed = 1;
    std::size_t subsample = 0;           // 0 keeps every row
    double tol = 1e-6;                   // violation tolerance
    int threads = 0;                     // 0 leaves the kernel default
    std::string out;                     // report directory; empty -> stdout
    std::string soft;                    // input distributions for `audit`
};

// Verbosity from FAIRCLUST_LOG (unset/0 quiet, 1 progress, 2 chatty).
int log_level();
void log_line(int level, const std::string& msg);

// Executes one subcommand, writes report.json (and soft.csv when the
// command produces distributions) under cfg.out, echoing the report to
// stdout when cfg.out is empty. Returns the process exit code.
int run_command(const RunConfig& cfg);

}  // namespace fairclust
