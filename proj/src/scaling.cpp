#include "steadytime/scaling.hpp"

#include <mpfr.h>

#include <mutex>

namespace steadytime {

namespace {

ProblemSpec<Rational> unit_problem() {
    ProblemSpec<Rational> spec;
    spec.D = 1;
    spec.l0 = 0;
    spec.lm = 1;
    spec.aL = 1; spec.bL = 0; spec.cL = 1;
    spec.aR = 0; spec.bR = 1; spec.cR = 0;
    spec.u0 = PiecewisePoly<Rational>::constant(0, 1, 0);
    return spec;
}

// |q - 4/pi^e| at 256-bit precision
double error_vs_pi_power(const Rational& q, int e) {
    constexpr mpfr_prec_t prec = 256;
    mpfr_t pi, ref, val;
    mpfr_inits2(prec, pi, ref, val, (mpfr_ptr)nullptr);
    mpfr_const_pi(pi, MPFR_RNDN);
    mpfr_pow_si(ref, pi, e, MPFR_RNDN);
    mpfr_si_div(ref, 4, ref, MPFR_RNDN);
    mpfr_set_q(val, q.get_mpq_t(), MPFR_RNDN);
    mpfr_sub(val, val, ref, MPFR_RNDN);
    mpfr_abs(val, val, MPFR_RNDN);
    double out = mpfr_get_d(val, MPFR_RNDN);
    mpfr_clears(pi, ref, val, (mpfr_ptr)nullptr);
    return out;
}

} // namespace

const MomentSet<Rational>& unit_dirichlet_neumann_moments(int q) {
    static std::mutex mu;
    static MomentSet<Rational> cached;
    std::lock_guard<std::mutex> lock(mu);
    if (cached.q < q) {
        auto spec = unit_problem();
        cached = compute_moments(spec, solve_steady(spec), q);
    }
    return cached;
}

ScalingConstants generalized_caseA_constants(int k) {
    if (k < 1 || k > 20)
        throw DomainError("generalized_caseA_constants: k out of [1, 20]");
    const auto& ms = unit_dirichlet_neumann_moments(std::max(k, 20));
    Rational x = 1;
    Rational mk = moment_at(ms, k, x);
    Rational mkm1 = moment_at(ms, k - 1, x);
    Rational gamma = mk / (Rational(k) * mkm1);
    // theta_k = alpha_k(L) = M_k / k! * (k M_{k-1} / M_k)^k
    mpz_class fact = 1;
    for (int i = 2; i <= k; ++i) fact *= i;
    Rational beta = Rational(k) * mkm1 / mk;
    Rational beta_pow = 1;
    for (int i = 0; i < k; ++i) beta_pow *= beta;
    Rational theta = mk / Rational(fact) * beta_pow;
    return {k, gamma, theta, error_vs_pi_power(gamma, 2), error_vs_pi_power(theta, 1)};
}

} // namespace steadytime
