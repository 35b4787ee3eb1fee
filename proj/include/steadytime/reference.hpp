#pragma once

#include "steadytime/estimators.hpp"
#include "steadytime/moments.hpp"
#include "steadytime/optimize.hpp"

namespace steadytime {

/// One separation-of-variables mode of the transient solution:
/// phi(x) = sin(lambda (x - l0) + phase), decaying at rate xi = D lambda^2.
struct EigenMode {
    double lambda;
    double xi;
    double phase;
    double coeff;  // projection of u0 - u_inf onto phi / ||phi||^2
    double norm;   // ||phi||^2
};

/// Truncated eigenfunction expansion
///   u(x,t) = u_inf(x) + sum_n coeff_n phi_n(x) e^{-t xi_n}.
/// For pure Neumann problems the zero-rate constant mode is folded into
/// u_inf and excluded from the decaying sum.
class EigenExpansion {
public:
    EigenExpansion(ProblemSpec<double> spec, SteadyState<double> ss,
                   std::vector<EigenMode> modes)
        : spec_(std::move(spec)), ss_(std::move(ss)), modes_(std::move(modes)) {}

    const ProblemSpec<double>& spec() const { return spec_; }
    const SteadyState<double>& steady() const { return ss_; }
    const std::vector<EigenMode>& modes() const { return modes_; }

    double phi(std::size_t n, double x) const {
        const auto& m = modes_[n];
        return std::sin(m.lambda * (x - spec_.l0) + m.phase);
    }

    /// Series coefficient of the normalized residual at x.
    double zeta(std::size_t n, double x) const;

    double u(double x, double t) const;

    /// Normalized residual R(x,t) = [u(x,t) - u_inf(x)] / [u0(x) - u_inf(x)].
    double residual(double x, double t) const;

    /// CDF F(t;x) = 1 - R(x,t), clamped to [0,1] against truncation overshoot.
    double cdf(double x, double t) const;

    /// Crude bound on the truncation error of the residual at time t.
    double tail_bound(double x, double t) const;

    /// Index of the slowest mode whose zeta coefficient at x exceeds the
    /// threshold, or npos if the whole truncated series is inactive there.
    static constexpr std::size_t npos = std::size_t(-1);
    std::size_t leading_active_mode(double x, double threshold = 1e-12) const;

private:
    ProblemSpec<double> spec_;
    SteadyState<double> ss_;
    std::vector<EigenMode> modes_;
};

/// Solve the transcendental eigenvalue problem and project the initial
/// deviation onto the modes. Roots are isolated by the monotone phase
/// form of the characteristic equation (one root per bracket) and
/// refined by bisection then Newton.
EigenExpansion eigen_solve(const ProblemSpec<double>& spec, const SteadyState<double>& ss,
                           int n_terms = 50);

template <class T>
EigenExpansion eigen_solve(const ProblemSpec<T>& spec, const SteadyState<T>& ss,
                           int n_terms = 50) {
    return eigen_solve(spec.to_double(),
                       SteadyState<double>{ss.u_inf.to_double(), ss.is_neumann}, n_terms);
}

/// Exact local transition time: root of R(x, t) = delta. The bracket is
/// seeded at t_seed (the k=1 estimate scaled by 10 when available) and
/// expanded geometrically until the residual drops below delta.
double exact_ts(const EigenExpansion& ee, double delta, double x, double t_seed = 0.0);

struct ExactTransition {
    double delta;
    double t_hat;
    double argmax_x;
    int evals;
};

/// Exact global transition time: scan-and-refine supremum of exact_ts.
ExactTransition exact_global(const EigenExpansion& ee, double delta,
                             const ActiveRegion& region, const SupOptions& opts = {});

/// Residual error of a global estimate:
///   eps = max_x [u(x, t_hat) - u_inf(x)] / [u0(x) - u_inf(x)].
double epsilon_error(const EigenExpansion& ee, double t_hat, const ActiveRegion& region,
                     const SupOptions& opts = {});

} // namespace steadytime
