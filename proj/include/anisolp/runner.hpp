#pragma once

#include "anisolp/config.hpp"

namespace anisolp {

/// Outcome of one named check in the verify battery.
struct CheckResult {
    std::string name;
    bool passed = false;
    Real value = 0.0;      // measured quantity
    Real tolerance = 0.0;  // bound it was tested against
};

/// Runs the cross-module invariant battery on the configured group/grid and
/// writes verify_summary.json into the output directory.
std::vector<CheckResult> run_verify(const ExperimentConfig& cfg);

/// Runs equivalence studies over suites x alphas x (p x beta) and writes
/// sweep.csv + sweep_summary.json.
std::vector<EquivalenceReport> run_sweep(const ExperimentConfig& cfg);

/// Runs the diag(1,2) reconstruction demo plus the Poisson and
/// Marcinkiewicz showcases; writes demo CSV/JSON artifacts.
std::vector<CheckResult> run_demo(const ExperimentConfig& cfg);

/// Dispatch by subcommand name; returns a process exit code
/// (0 ok, 1 failed checks, 2 usage/config errors).
int run_subcommand(const std::string& name, const ExperimentConfig& cfg);

}  // namespace anisolp
