#pragma once

#include <cmath>
#include <functional>
#include <optional>
#include <vector>

#include "steadytime/pwpoly.hpp"

namespace steadytime {

/// 1-D linear diffusion problem on [l0, lm]:
///   du/dt = D u_xx,  u(x,0) = u0(x),
///   aL u(l0,t) - bL u_x(l0,t) = cL,
///   aR u(lm,t) + bR u_x(lm,t) = cR.
template <class T>
struct ProblemSpec {
    T D;
    T l0, lm;
    T aL, bL, cL;
    T aR, bR, cR;
    PiecewisePoly<T> u0;

    void validate() const {
        auto nonneg = [](const T& v) { return !(v < T(0)); };
        if (!(T(0) < D)) throw DomainError("ProblemSpec: D must be positive");
        if (!(l0 < lm)) throw DomainError("ProblemSpec: l0 must be < lm");
        if (!nonneg(aL) || !nonneg(bL) || !nonneg(aR) || !nonneg(bR))
            throw DomainError("ProblemSpec: boundary coefficients must be nonnegative");
        if (is_zero(aL) && is_zero(bL)) throw DomainError("ProblemSpec: aL + bL must be > 0");
        if (is_zero(aR) && is_zero(bR)) throw DomainError("ProblemSpec: aR + bR must be > 0");
        if (!(u0.lo() == l0) || !(u0.hi() == lm))
            throw DomainError("ProblemSpec: u0 domain must match [l0, lm]");
    }

    bool is_neumann() const { return is_zero(aL) && is_zero(aR); }

    ProblemSpec<double> to_double() const {
        return ProblemSpec<double>{steadytime::to_double(D),
                                   steadytime::to_double(l0), steadytime::to_double(lm),
                                   steadytime::to_double(aL), steadytime::to_double(bL),
                                   steadytime::to_double(cL),
                                   steadytime::to_double(aR), steadytime::to_double(bR),
                                   steadytime::to_double(cR),
                                   u0.to_double()};
    }
};

template <class T>
struct SteadyState {
    PiecewisePoly<T> u_inf;  // single linear piece
    bool is_neumann = false;
};

/// Solve the steady boundary value problem for u_inf = c + m x.
/// Pure Neumann problems additionally pin the mean of u_inf to the
/// mean of u0 (mass conservation).
template <class T>
SteadyState<T> solve_steady(const ProblemSpec<T>& spec) {
    spec.validate();
    T m, c;
    bool neumann = spec.is_neumann();
    if (neumann) {
        // -bL m = cL and bR m = cR must agree on the slope
        T m_left = -spec.cL / spec.bL;
        T m_right = spec.cR / spec.bR;
        if (!(m_left == m_right))
            throw NoSteadyState("solve_steady: Neumann fluxes admit no steady state");
        m = m_left;
        // mean constraint: int u_inf = int u0
        T mass = spec.u0.definite_integral(spec.l0, spec.lm);
        T len = spec.lm - spec.l0;
        T half = field_from_int<T>(1) / field_from_int<T>(2);
        c = (mass - m * half * (spec.lm * spec.lm - spec.l0 * spec.l0)) / len;
    } else {
        // [aL  aL l0 - bL] [c]   [cL]
        // [aR  aR lm + bR] [m] = [cR]
        T a11 = spec.aL, a12 = spec.aL * spec.l0 - spec.bL;
        T a21 = spec.aR, a22 = spec.aR * spec.lm + spec.bR;
        T det = a11 * a22 - a12 * a21;
        if (is_zero(det)) throw SingularSystem("solve_steady: singular boundary system");
        c = (spec.cL * a22 - a12 * spec.cR) / det;
        m = (a11 * spec.cR - spec.cL * a21) / det;
    }
    PiecewisePoly<T> u_inf({spec.l0, spec.lm}, {Polynomial<T>({c, m})});
    return SteadyState<T>{std::move(u_inf), neumann};
}

/// Sub-intervals of the domain where h = u_inf - u0 is nonzero, with
/// isolated zeros of h and discontinuity abscissae of u0 punctured out.
/// Dirichlet endpoints are flagged clamped: there u(x,t) equals its
/// steady value for all t > 0, so the transition time degenerates.
struct ActiveRegion {
    struct Interval {
        double lo, hi;
        bool open_lo, open_hi;
    };
    std::vector<Interval> intervals;
    std::vector<double> excluded_points;
    bool clamped_left = false;
    bool clamped_right = false;
};

namespace detail {

/// Real zeros of a polynomial on (a, b), located by sign-change scan
/// plus bisection. Piece degrees here are small; a scan fine enough to
/// separate roots is cheap.
inline std::vector<double> poly_zeros(const Polynomial<double>& p, double a, double b) {
    std::vector<double> zeros;
    if (p.degree() == 0) return zeros;
    int n = 64 * (p.degree() + 1);
    double prev_x = a, prev_f = p(a);
    for (int i = 1; i <= n; ++i) {
        double x = a + (b - a) * i / n;
        double f = p(x);
        if (prev_f == 0.0) {
            if (prev_x > a) zeros.push_back(prev_x);
        } else if (f * prev_f < 0.0) {
            double lo = prev_x, hi = x, flo = prev_f;
            for (int it = 0; it < 100; ++it) {
                double mid = 0.5 * (lo + hi);
                double fm = p(mid);
                if (fm == 0.0) { lo = hi = mid; break; }
                if (fm * flo < 0.0) hi = mid;
                else { lo = mid; flo = fm; }
            }
            zeros.push_back(0.5 * (lo + hi));
        }
        prev_x = x;
        prev_f = f;
    }
    return zeros;
}

} // namespace detail

template <class T>
ActiveRegion active_region(const ProblemSpec<T>& spec, const SteadyState<T>& ss) {
    auto dspec = spec.to_double();
    PiecewisePoly<double> h = ss.u_inf.to_double() - dspec.u0;

    bool all_zero = true;
    for (const auto& p : h.pieces())
        if (p.degree() > 0 || p.coeffs()[0] != 0.0) { all_zero = false; break; }
    if (all_zero) throw NothingToDo("active_region: u0 equals u_inf everywhere");

    ActiveRegion region;
    region.clamped_left = is_zero(spec.bL);
    region.clamped_right = is_zero(spec.bR);

    std::vector<double> cuts;
    for (double x : dspec.u0.discontinuities()) cuts.push_back(x);
    const auto& bp = h.breakpoints();
    for (std::size_t i = 0; i < h.piece_count(); ++i)
        for (double z : detail::poly_zeros(h.pieces()[i], bp[i], bp[i + 1]))
            cuts.push_back(z);
    // interior breakpoints where h is (continuously) zero
    for (std::size_t i = 1; i + 1 < bp.size(); ++i)
        if (h.pieces()[i](bp[i]) == 0.0 && h.pieces()[i - 1](bp[i]) == 0.0)
            cuts.push_back(bp[i]);
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end(),
                           [&](double x, double y) {
                               return std::fabs(x - y) <= 1e-13 * (h.hi() - h.lo());
                           }),
               cuts.end());
    region.excluded_points = cuts;

    std::vector<double> edges;
    edges.push_back(h.lo());
    for (double c : cuts)
        if (c > h.lo() && c < h.hi()) edges.push_back(c);
    edges.push_back(h.hi());
    for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
        ActiveRegion::Interval iv;
        iv.lo = edges[i];
        iv.hi = edges[i + 1];
        iv.open_lo = (i > 0) || region.clamped_left ||
                     std::find(cuts.begin(), cuts.end(), iv.lo) != cuts.end();
        iv.open_hi = (i + 2 < edges.size()) || region.clamped_right ||
                     std::find(cuts.begin(), cuts.end(), iv.hi) != cuts.end();
        region.intervals.push_back(iv);
    }
    return region;
}

struct MonotonicityViolation {
    double x, t;
    double delta_u;  // observed step of u against the expected direction
};

/// Sample a transient solution on a grid and report every (x, t) where
/// u moves strictly against the direction of u_inf - u0. Informational;
/// weak monotonicity (flat steps) is not a violation.
template <class T>
std::vector<MonotonicityViolation> validate_monotonicity(
    const ProblemSpec<T>& spec, const SteadyState<T>& ss,
    const std::function<double(double, double)>& u_of_xt,
    int nx = 41, int nt = 60, double t_end = 1.0, double tol = 1e-9) {
    auto dspec = spec.to_double();
    PiecewisePoly<double> h = ss.u_inf.to_double() - dspec.u0;
    std::vector<MonotonicityViolation> out;
    for (int i = 0; i <= nx; ++i) {
        double x = dspec.l0 + (dspec.lm - dspec.l0) * i / nx;
        double hx = h(x);
        if (hx == 0.0) continue;
        double sign = hx > 0.0 ? 1.0 : -1.0;
        double prev = u_of_xt(x, t_end / nt);
        for (int j = 2; j <= nt; ++j) {
            double t = t_end * j / nt;
            double u = u_of_xt(x, t);
            double step = (u - prev) * sign;
            if (step < -tol) out.push_back({x, t, step});
            prev = u;
        }
    }
    return out;
}

// --- ProblemSpec JSON: {"D":…, "domain":[l0,lm], "left":{"a","b","c"},
//     "right":{…}, "u0": <PiecewisePoly>} ---

template <class T>
ProblemSpec<T> problem_from_json(const nlohmann::json& j) {
    for (const char* key : {"D", "domain", "left", "right", "u0"})
        if (!j.contains(key))
            throw ConfigError(std::string("ProblemSpec JSON missing '") + key + "'");
    auto num = [](const nlohmann::json& v) { return detail::coef_from_json<T>(v); };
    ProblemSpec<T> spec;
    spec.D = num(j.at("D"));
    spec.l0 = num(j.at("domain").at(0));
    spec.lm = num(j.at("domain").at(1));
    spec.aL = num(j.at("left").at("a"));
    spec.bL = num(j.at("left").at("b"));
    spec.cL = num(j.at("left").at("c"));
    spec.aR = num(j.at("right").at("a"));
    spec.bR = num(j.at("right").at("b"));
    spec.cR = num(j.at("right").at("c"));
    spec.u0 = pwpoly_from_json<T>(j.at("u0"));
    spec.validate();
    return spec;
}

template <class T>
nlohmann::json problem_to_json(const ProblemSpec<T>& spec) {
    nlohmann::json j;
    j["D"] = detail::coef_to_json(spec.D);
    j["domain"] = {detail::coef_to_json(spec.l0), detail::coef_to_json(spec.lm)};
    j["left"] = {{"a", detail::coef_to_json(spec.aL)},
                 {"b", detail::coef_to_json(spec.bL)},
                 {"c", detail::coef_to_json(spec.cL)}};
    j["right"] = {{"a", detail::coef_to_json(spec.aR)},
                  {"b", detail::coef_to_json(spec.bR)},
                  {"c", detail::coef_to_json(spec.cR)}};
    j["u0"] = to_json(spec.u0);
    return j;
}

} // namespace steadytime
