#include "steadytime/reference.hpp"

#include <cmath>

namespace steadytime {

namespace {

// d/dlambda atan2(b lambda, a)
double atan_term_deriv(double a, double b, double lambda) {
    if (b == 0.0) return 0.0;
    if (a == 0.0) return 0.0;  // constant pi/2 for lambda > 0
    return a * b / (a * a + b * b * lambda * lambda);
}

double atan_term(double a, double b, double lambda) {
    return std::atan2(b * lambda, a);
}

// Phase form of the characteristic equation. With
// phi(x) = sin(lambda (x - l0) + phaseL), the left BC holds identically
// and the right BC reduces to
//   lambda len + atan2(bL lambda, aL) + atan2(bR lambda, aR) = n pi.
double phase(const ProblemSpec<double>& s, double lambda) {
    return lambda * (s.lm - s.l0) + atan_term(s.aL, s.bL, lambda) +
           atan_term(s.aR, s.bR, lambda);
}

double phase_deriv(const ProblemSpec<double>& s, double lambda) {
    return (s.lm - s.l0) + atan_term_deriv(s.aL, s.bL, lambda) +
           atan_term_deriv(s.aR, s.bR, lambda);
}

// integral of p(x) * trig(lambda (x - l0) + phase) over [a, b] by
// repeated integration by parts; exact up to roundoff for polynomial p.
struct TrigIntegrator {
    double lambda, l0, phase;

    double u(double x) const { return lambda * (x - l0) + phase; }

    double sin_int(const Polynomial<double>& p, double a, double b) const {
        if (p.degree() == 0 && p.coeffs()[0] == 0.0) return 0.0;
        double boundary = (-p(b) * std::cos(u(b)) + p(a) * std::cos(u(a))) / lambda;
        return boundary + cos_int(p.derivative(), a, b) / lambda;
    }
    double cos_int(const Polynomial<double>& p, double a, double b) const {
        if (p.degree() == 0 && p.coeffs()[0] == 0.0) return 0.0;
        double boundary = (p(b) * std::sin(u(b)) - p(a) * std::sin(u(a))) / lambda;
        return boundary - sin_int(p.derivative(), a, b) / lambda;
    }
};

} // namespace

EigenExpansion eigen_solve(const ProblemSpec<double>& spec, const SteadyState<double>& ss,
                           int n_terms) {
    spec.validate();
    if (n_terms < 1) throw DomainError("eigen_solve: n_terms must be >= 1");
    const double len = spec.lm - spec.l0;
    const double pi = std::acos(-1.0);

    // g(lambda) = phase(lambda) is strictly increasing with
    // g(lambda) in [lambda len, lambda len + pi], so the root of
    // g = n pi lies in [(n-1) pi / len, n pi / len].
    double g0 = 0.0;
    if (spec.aL == 0.0) g0 += 0.5 * pi;
    if (spec.aR == 0.0) g0 += 0.5 * pi;
    int n0 = int(std::floor(g0 / pi)) + 1;  // first target with a positive root

    PiecewisePoly<double> dev = spec.u0 - ss.u_inf;  // u0 - u_inf

    std::vector<EigenMode> modes;
    modes.reserve(std::size_t(n_terms));
    for (int n = n0; int(modes.size()) < n_terms; ++n) {
        double target = n * pi;
        // the root can sit exactly on a bracket edge (pure Neumann), so pad
        double pad = 1e-9 / len;
        double lo = std::max(1e-12 / len, (target - pi) / len - pad);
        double hi = target / len + pad;
        if (phase(spec, lo) > target || phase(spec, hi) < target)
            throw EigenBracketError("eigen_solve: bracket [" + std::to_string(lo) + ", " +
                                    std::to_string(hi) + "] misses root of index " +
                                    std::to_string(n));
        // bisection to isolate, then Newton polish
        for (int it = 0; it < 40; ++it) {
            double mid = 0.5 * (lo + hi);
            if (phase(spec, mid) < target) lo = mid; else hi = mid;
        }
        double lambda = 0.5 * (lo + hi);
        for (int it = 0; it < 50; ++it) {
            double r = phase(spec, lambda) - target;
            double d = phase_deriv(spec, lambda);
            double step = r / d;
            lambda -= step;
            if (lambda <= lo || lambda >= hi) lambda = 0.5 * (lo + hi);
            if (std::fabs(step) <= 1e-15 * std::fabs(lambda)) break;
        }
        if (std::fabs(phase(spec, lambda) - target) > 1e-12 * std::max(1.0, target))
            throw EigenBracketError("eigen_solve: residual too large at mode " +
                                    std::to_string(n));

        EigenMode m;
        m.lambda = lambda;
        m.xi = spec.D * lambda * lambda;
        m.phase = atan_term(spec.aL, spec.bL, lambda);

        TrigIntegrator ti{lambda, spec.l0, m.phase};
        // ||phi||^2 = len/2 - [sin(2u)/(4 lambda)] over the domain
        m.norm = 0.5 * len -
                 (std::sin(2.0 * ti.u(spec.lm)) - std::sin(2.0 * ti.u(spec.l0))) /
                     (4.0 * lambda);

        double proj = 0.0;
        const auto& bp = dev.breakpoints();
        for (std::size_t i = 0; i < dev.piece_count(); ++i)
            proj += ti.sin_int(dev.pieces()[i], bp[i], bp[i + 1]);
        m.coeff = proj / m.norm;
        modes.push_back(m);
    }
    return EigenExpansion(spec, ss, std::move(modes));
}

double EigenExpansion::zeta(std::size_t n, double x) const {
    double dev = spec_.u0(x) - ss_.u_inf(x);
    if (dev == 0.0) throw ExcludedPoint("zeta: u0(x) = u_inf(x)");
    return modes_[n].coeff * phi(n, x) / dev;
}

double EigenExpansion::u(double x, double t) const {
    double acc = ss_.u_inf(x);
    for (std::size_t n = 0; n < modes_.size(); ++n)
        acc += modes_[n].coeff * phi(n, x) * std::exp(-t * modes_[n].xi);
    return acc;
}

double EigenExpansion::residual(double x, double t) const {
    double dev = spec_.u0(x) - ss_.u_inf(x);
    if (dev == 0.0) throw ExcludedPoint("residual: u0(x) = u_inf(x)");
    double acc = 0.0;
    for (std::size_t n = 0; n < modes_.size(); ++n)
        acc += modes_[n].coeff * phi(n, x) * std::exp(-t * modes_[n].xi);
    return acc / dev;
}

double EigenExpansion::cdf(double x, double t) const {
    double F = 1.0 - residual(x, t);
    return std::min(1.0, std::max(0.0, F));
}

double EigenExpansion::tail_bound(double x, double t) const {
    double dev = std::fabs(spec_.u0(x) - ss_.u_inf(x));
    if (dev == 0.0) throw ExcludedPoint("tail_bound: u0(x) = u_inf(x)");
    double amp = 0.0;
    for (const auto& m : modes_) amp += std::fabs(m.coeff);
    double xi_next = modes_.back().xi;
    return amp / dev * std::exp(-t * xi_next);
}

std::size_t EigenExpansion::leading_active_mode(double x, double threshold) const {
    for (std::size_t n = 0; n < modes_.size(); ++n)
        if (std::fabs(zeta(n, x)) > threshold) return n;
    return npos;
}

double exact_ts(const EigenExpansion& ee, double delta, double x, double t_seed) {
    if (!(delta > 0.0 && delta < 1.0)) throw DomainError("exact_ts: delta not in (0,1)");
    double r0 = ee.residual(x, 0.0);
    if (r0 <= delta) return 0.0;
    double t_hi = t_seed > 0.0 ? t_seed : 10.0 / ee.modes().front().xi;
    int expansions = 0;
    while (ee.residual(x, t_hi) >= delta) {
        t_hi *= 2.0;
        if (++expansions > 60)
            throw RootBracketError("exact_ts: residual never crossed delta");
    }
    return brent_root([&](double t) { return ee.residual(x, t) - delta; }, 0.0, t_hi,
                      1e-12);
}

ExactTransition exact_global(const EigenExpansion& ee, double delta,
                             const ActiveRegion& region, const SupOptions& opts) {
    double span = ee.spec().lm - ee.spec().l0;
    // scale-free bracket seed shared by every local root solve
    double seed = std::log(4.0 / delta) / ee.modes().front().xi * 10.0;
    auto r = scan_refine_max([&](double x) { return exact_ts(ee, delta, x, seed); },
                             region, opts.samples_per_interval, opts.xtol_rel * span,
                             opts.margin_rel * span);
    return {delta, r.fx, r.x, r.evals};
}

double epsilon_error(const EigenExpansion& ee, double t_hat, const ActiveRegion& region,
                     const SupOptions& opts) {
    double span = ee.spec().lm - ee.spec().l0;
    auto r = scan_refine_max([&](double x) { return ee.residual(x, t_hat); }, region,
                             opts.samples_per_interval, opts.xtol_rel * span,
                             opts.margin_rel * span);
    return r.fx;
}

} // namespace steadytime
