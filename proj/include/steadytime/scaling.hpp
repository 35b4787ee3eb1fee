#pragma once

#include "steadytime/moments.hpp"

namespace steadytime {

/// Constants of the generalized left-Dirichlet / right-Neumann problem:
/// every global transition time estimate is a multiple of the diffusive
/// timescale L^2/D, and for the moment-matched estimate
///   t_hat = gamma_k (L^2/D) log(theta_k / delta).
/// gamma_k and theta_k are exact rationals; the error columns against
/// the leading-mode limits 4/pi^2 and 4/pi are evaluated in extended
/// precision (they sink far below double resolution by k = 20).
struct ScalingConstants {
    int k;
    Rational gamma;
    Rational theta;
    double gamma_err;  // |gamma_k - 4/pi^2|
    double theta_err;  // |theta_k - 4/pi|
};

/// Runs the moment recursion in exact arithmetic on the unit problem
/// (L = D = 1) and evaluates the constants at x = L, where the maximum
/// occurs. 1 <= k <= 20.
ScalingConstants generalized_caseA_constants(int k);

/// The exact moment set of the unit problem, reusable across k.
const MomentSet<Rational>& unit_dirichlet_neumann_moments(int q = 20);

} // namespace steadytime
