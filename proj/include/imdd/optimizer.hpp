#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "imdd/core.hpp"

namespace imdd {

enum class Objective { average, peak };

const char* to_string(Objective objective) noexcept;
Objective objective_from_string(const std::string& name);  // "avg" | "peak"

struct DesignProblem {
    int m = 2;
    Objective objective = Objective::average;
    int dims = 2;

    void validate() const;
};

struct SolverSettings {
    int restarts = 64;
    std::uint64_t seed = 0;
    /// Inner L-BFGS iteration cap per penalty stage.
    int max_iterations = 2000;
    std::vector<double> penalty_schedule{1e1, 1e2, 1e3, 1e4, 1e5, 1e6};
    double convergence_tol = 1e-10;
    /// Worker threads for restarts; 0 picks the hardware concurrency. The
    /// report does not depend on this value.
    unsigned threads = 0;

    void validate() const;
};

struct SolveReport {
    Constellation best;
    double objective_value = 0.0;
    int restarts_hitting_best = 0;
    double constraint_violation = 0.0;
};

/// Average or peak optical power coefficient, depending on the objective.
double objective_value(const Constellation& c, Objective objective);

/// Worst violation of unit minimum distance and cone admissibility.
double constraint_violation(const Constellation& c);

/// Unit vectors along the two boundary rays of the 2-D cone; they are
/// cos^-1(1/3) apart and span the lattice the average-power optima live on.
SignalPoint cone_lattice_basis(int which);

/// True iff every point is an integer combination of the two boundary-ray
/// unit vectors, to within tol in Euclidean distance.
bool is_cone_lattice_subset(const Constellation& c, double tol = 1e-9);

/// The m lattice points closest to the apex in s_1, filled level by level
/// from the cone axis outward.
std::vector<SignalPoint> cone_lattice_seed(int m);

/// Multi-start augmented-Lagrangian search for m points in the 2-D cone with
/// unit minimum distance and minimal objective. Deterministic in
/// (problem, settings) regardless of thread count.
SolveReport solve(const DesignProblem& problem, const SolverSettings& settings);

}  // namespace imdd
