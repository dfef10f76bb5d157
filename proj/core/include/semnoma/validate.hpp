#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "semnoma/allocator.hpp"

namespace semnoma {

struct ValidateOptions {
    std::uint64_t seed = 42;
    std::size_t slots_per_mode = 1000;
    ModelConfig model;
    SolverConfig solver;
    double oracle_rel_tol = 1e-6;
    unsigned threads = 0;
};

struct CheckResult {
    std::string name;
    bool passed = false;
    double worst = 0.0;  // measured worst-case error
    double bound = 0.0;  // pass limit for `worst`
    std::size_t samples = 0;  // values the check examined
};

struct ValidationReport {
    std::vector<CheckResult> checks;

    bool passed() const;
};

/// Solver-vs-oracle and stationarity checks on random two-user slots, plus
/// the logistic model's monotonicity and inverse round-trip.
ValidationReport run_validation(const ValidateOptions& options);

}  // namespace semnoma
