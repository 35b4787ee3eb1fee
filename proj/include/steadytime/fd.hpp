#pragma once

#include "steadytime/problem.hpp"

namespace steadytime {

/// Crank-Nicolson space-time samples of the transient solution, used as
/// an independent cross-check of the eigenfunction series.
struct FdSolution {
    std::vector<double> x;               // grid_n + 1 nodes
    std::vector<double> t;               // requested sample times (ascending)
    std::vector<std::vector<double>> u;  // u[j][i] at (t[j], x[i])

    /// Trapezoid-rule mass at time sample j.
    double mass(std::size_t j) const;
};

/// Second-order centered-space, trapezoidal-in-time integration with
/// ghost-point discretization of the Robin boundary conditions.
/// Initial node values at discontinuities of u0 use the mean of the
/// one-sided limits.
FdSolution fd_oracle(const ProblemSpec<double>& spec, int grid_n,
                     std::vector<double> sample_times, int total_steps = 8000);

template <class T>
FdSolution fd_oracle(const ProblemSpec<T>& spec, int grid_n,
                     std::vector<double> sample_times, int total_steps = 8000) {
    return fd_oracle(spec.to_double(), grid_n, std::move(sample_times), total_steps);
}

} // namespace steadytime
