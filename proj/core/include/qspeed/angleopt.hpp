#pragma once

// Magnet-angle optimization over (theta_a, phi_a, theta_b, phi_b) for the
// three objectives: fastest kickoff, fastest period (max D_dif) and maximal
// attainable trace distance.

#include "qspeed/dynamics.hpp"

namespace qspeed {

enum class ObjectiveKind { kickoff, period_ddif, max_distance };

// kickoff -> rate 1/tau^2; period_ddif -> D(pi/4) - D(pi/2); max_distance ->
// max of D over the default 721-point grid on [0, pi].
double evaluate_objective(const DensityMatrix& rho, const MagnetConfig& config, ObjectiveKind kind);

struct OptimizationResult {
    MagnetConfig config;
    double value;       // objective at config
    long evaluations;   // total objective evaluations spent
};

// Multi-start search: 12^4 coarse grid, top 5 seeds refined by Nelder-Mead
// (reflect 1.0, expand 2.0, contract 0.5, shrink 0.5) with up to `budget`
// evaluations per refinement. Deterministic; ties within 1e-6 of the best
// value break to the lexicographically smallest canonical angle tuple.
OptimizationResult optimize_angles(const DensityMatrix& rho, ObjectiveKind kind, int budget);

}  // namespace qspeed
