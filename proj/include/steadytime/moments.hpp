#pragma once

#include "steadytime/problem.hpp"

namespace steadytime {

/// Raw moments of the action-time distribution, computed recursively
/// from the boundary value problems
///   Mbar_k'' = -(k/D) Mbar_{k-1},  homogeneous BCs,
/// without ever forming the transient solution. Mbar_0 = h = u_inf - u0
/// and M_k(x) = Mbar_k(x) / h(x).
template <class T>
struct MomentSet {
    int q = 0;
    std::vector<PiecewisePoly<T>> mbar;      // Mbar_0 .. Mbar_q
    std::vector<PiecewisePoly<T>> g;         // G_1 .. G_q (index k-1)
    std::vector<PiecewisePoly<T>> gprime;    // G_1' .. G_q'
    std::vector<std::pair<T, T>> constants;  // (c_{k,1}, c_{k,2}), index k-1
    PiecewisePoly<T> h;                      // alias of mbar[0]

    MomentSet<double> to_double() const {
        MomentSet<double> out;
        out.q = q;
        for (const auto& f : mbar) out.mbar.push_back(f.to_double());
        for (const auto& f : g) out.g.push_back(f.to_double());
        for (const auto& f : gprime) out.gprime.push_back(f.to_double());
        for (const auto& [c1, c2] : constants)
            out.constants.emplace_back(steadytime::to_double(c1), steadytime::to_double(c2));
        out.h = h.to_double();
        return out;
    }
};

/// Constants of Mbar_k = G_k + c1 + c2 x from the homogeneous Robin rows:
///   [aL  aL l0 - bL] [c1]   [bL G_k'(l0) - aL G_k(l0)]
///   [aR  aR lm + bR] [c2] = [-bR G_k'(lm) - aR G_k(lm)]
template <class T>
std::pair<T, T> solve_constants_robin(const PiecewisePoly<T>& gk,
                                      const PiecewisePoly<T>& gk_prime,
                                      const ProblemSpec<T>& spec) {
    T a11 = spec.aL, a12 = spec.aL * spec.l0 - spec.bL;
    T a21 = spec.aR, a22 = spec.aR * spec.lm + spec.bR;
    T det = a11 * a22 - a12 * a21;
    if (is_zero(det)) throw SingularSystem("solve_constants_robin: singular system");
    T b1 = spec.bL * gk_prime(spec.l0) - spec.aL * gk(spec.l0);
    T b2 = -spec.bR * gk_prime(spec.lm) - spec.aR * gk(spec.lm);
    T c1 = (b1 * a22 - a12 * b2) / det;
    T c2 = (a11 * b2 - b1 * a21) / det;
    return {c1, c2};
}

/// Pure-Neumann constants. Requires G_k'(l0) = G_k'(lm); then
/// c2 = -G_k'(l0) and the zero-mean constraint int Mbar_k = 0 fixes c1
/// through K_k = int G_k dx.
template <class T>
std::pair<T, T> solve_constants_neumann(const PiecewisePoly<T>& gk,
                                        const PiecewisePoly<T>& gk_prime,
                                        const PiecewisePoly<T>& kk,
                                        const ProblemSpec<T>& spec) {
    T gl = gk_prime(spec.l0);
    T gr = gk_prime(spec.lm);
    if constexpr (std::is_same_v<T, double>) {
        double tol = 1e-10 * std::max(1.0, std::fabs(gl));
        if (std::fabs(gl - gr) > tol)
            throw InconsistentConstraint("solve_constants_neumann: G_k'(l0) != G_k'(lm)");
    } else {
        if (!(gl == gr))
            throw InconsistentConstraint("solve_constants_neumann: G_k'(l0) != G_k'(lm)");
    }
    (void)gk;
    T c2 = -gl;
    T half = field_from_int<T>(1) / field_from_int<T>(2);
    T len = spec.lm - spec.l0;
    T rhs = kk(spec.l0) - kk(spec.lm);
    T c1 = (rhs - c2 * half * (spec.lm * spec.lm - spec.l0 * spec.l0)) / len;
    return {c1, c2};
}

template <class T>
MomentSet<T> compute_moments(const ProblemSpec<T>& spec, const SteadyState<T>& ss, int q) {
    if (q < 1) throw DomainError("compute_moments: q must be >= 1");
    MomentSet<T> ms;
    ms.q = q;
    ms.h = ss.u_inf - spec.u0;
    ms.mbar.push_back(ms.h);
    PiecewisePoly<T> x_poly({spec.l0, spec.lm}, {Polynomial<T>({T(0), T(1)})});
    for (int k = 1; k <= q; ++k) {
        T factor = -field_from_int<T>(k) / spec.D;
        auto gp = ms.mbar[k - 1].scaled(factor).antiderivative(spec.l0, T(0));
        auto gk = gp.antiderivative(spec.l0, T(0));
        std::pair<T, T> c;
        if (ss.is_neumann) {
            auto kk = gk.antiderivative(spec.l0, T(0));
            c = solve_constants_neumann(gk, gp, kk, spec);
        } else {
            c = solve_constants_robin(gk, gp, spec);
        }
        auto mbar_k = gk + PiecewisePoly<T>::constant(spec.l0, spec.lm, c.first) +
                      x_poly.scaled(c.second);
        ms.g.push_back(std::move(gk));
        ms.gprime.push_back(std::move(gp));
        ms.constants.push_back(c);
        ms.mbar.push_back(std::move(mbar_k));
    }
    return ms;
}

/// Pointwise M_k(x) = Mbar_k(x) / h(x). Division happens only here, at
/// evaluation time; h may vanish at excluded points.
template <class T>
T moment_at(const MomentSet<T>& ms, int k, const T& x) {
    if (k < 0 || k > ms.q) throw DomainError("moment_at: k out of range");
    T hx = ms.h(x);
    if (is_zero(hx)) throw ExcludedPoint("moment_at: h(x) = 0");
    // a jump of h (a u0 discontinuity) leaves no well-defined moment either
    if (ms.h.lo() < x && !(ms.h.eval_left(x) == hx))
        throw ExcludedPoint("moment_at: h jumps at x");
    if (k == 0) return T(1);
    return ms.mbar[std::size_t(k)](x) / hx;
}

/// MomentSet audit dump: array of {k, breakpoints, pieces, c1, c2}.
template <class T>
nlohmann::json moments_to_json(const MomentSet<T>& ms) {
    nlohmann::json arr = nlohmann::json::array();
    for (int k = 0; k <= ms.q; ++k) {
        nlohmann::json entry = to_json(ms.mbar[std::size_t(k)]);
        entry["k"] = k;
        if (k >= 1) {
            entry["c1"] = detail::coef_to_json(ms.constants[std::size_t(k - 1)].first);
            entry["c2"] = detail::coef_to_json(ms.constants[std::size_t(k - 1)].second);
        }
        arr.push_back(std::move(entry));
    }
    return arr;
}

} // namespace steadytime
