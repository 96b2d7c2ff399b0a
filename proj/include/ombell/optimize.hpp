#ifndef OMBELL_OPTIMIZE_HPP
#define OMBELL_OPTIMIZE_HPP

#include <cstdint>

#include "ombell/model.hpp"

// Maximization of |CHSH| over the displacement settings, plus the derived
// one-dimensional searches (squeezing strength, violation thresholds).

namespace ombell::opt {

struct OptimizerConfig {
    int restarts = 24;            // multi-start count
    double seed_extent = 1.5;     // max |alpha| used when seeding restarts
    double simplex_tol = 1e-8;    // simplex function-value convergence
    double settings_bound = 3.0;  // max |alpha| accepted in a result
    bool real_only = true;        // restrict settings to the real axis
    std::uint64_t seed = 1;       // RNG seed for the restart list

    void validate() const;
};

struct OptimizationResult {
    double s_star = 0.0;  // best |S| found
    SettingsQuad quad;    // arg max
    long evaluations = 0;
    bool converged = false;
};

// Multi-start Nelder-Mead over the 4 (real-only) or 8 (complex) settings
// coordinates. Deterministic for a fixed cfg.seed.
OptimizationResult optimize_chsh(const ModelParams& params, const OptimizerConfig& cfg);

struct POptResult {
    double p_star = 0.0;
    OptimizationResult result;
};

// Nested search: outer scan over p in (0, 0.9] (coarse grid bracketing a
// golden-section refinement), inner optimize_chsh. T, eta, n0 are taken from
// `fixed`; its p field is ignored.
POptResult optimize_chsh_over_p(const ModelParams& fixed, const OptimizerConfig& cfg);

enum class ScanAxis { kT, kEta, kN0 };

// Declared-violation threshold along one parameter axis: bisection of
// s_star(axis) - (2 + 1e-4) on [lo, hi] to an axis tolerance of 1e-3, with
// s_star evaluated through optimize_chsh_over_p. Throws std::invalid_argument
// when [lo, hi] does not bracket a sign change.
double threshold_scan(ScanAxis axis, const ModelParams& fixed, double lo, double hi,
                      const OptimizerConfig& cfg);

// Violation margin used by threshold_scan.
inline constexpr double kViolationEpsilon = 1e-4;

}  // namespace ombell::opt

#endif  // OMBELL_OPTIMIZE_HPP
