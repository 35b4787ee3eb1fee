#pragma once

#include <cmath>
#include <functional>
#include <limits>

#include "steadytime/problem.hpp"

namespace steadytime {

struct ScalarMin {
    double x = 0.0;
    double fx = 0.0;
    int evals = 0;
};

/// Bounded scalar minimization on [a, b]: golden-section with parabolic
/// interpolation steps (fminbnd-style Brent).
template <class F>
ScalarMin brent_minimize(F&& f, double a, double b, double xtol, int max_iter = 500) {
    const double golden = 0.5 * (3.0 - std::sqrt(5.0));
    double x = a + golden * (b - a);
    double w = x, v = x;
    double fx = f(x);
    int evals = 1;
    double fw = fx, fv = fx;
    double d = 0.0, e = 0.0;
    for (int iter = 0; iter < max_iter; ++iter) {
        double m = 0.5 * (a + b);
        double tol1 = xtol + 1e-15 * std::fabs(x);
        double tol2 = 2.0 * tol1;
        if (std::fabs(x - m) <= tol2 - 0.5 * (b - a)) break;
        bool use_golden = true;
        if (std::fabs(e) > tol1) {
            // parabolic fit through x, w, v
            double r = (x - w) * (fx - fv);
            double q = (x - v) * (fx - fw);
            double p = (x - v) * q - (x - w) * r;
            q = 2.0 * (q - r);
            if (q > 0.0) p = -p;
            q = std::fabs(q);
            double e_old = e;
            e = d;
            if (std::fabs(p) < std::fabs(0.5 * q * e_old) && p > q * (a - x) &&
                p < q * (b - x)) {
                d = p / q;
                double u = x + d;
                if (u - a < tol2 || b - u < tol2) d = x < m ? tol1 : -tol1;
                use_golden = false;
            }
        }
        if (use_golden) {
            e = (x < m ? b : a) - x;
            d = golden * e;
        }
        double u = x + (std::fabs(d) >= tol1 ? d : (d > 0.0 ? tol1 : -tol1));
        double fu = f(u);
        ++evals;
        if (fu <= fx) {
            if (u < x) b = x; else a = x;
            v = w; fv = fw;
            w = x; fw = fx;
            x = u; fx = fu;
        } else {
            if (u < x) a = u; else b = u;
            if (fu <= fw || w == x) {
                v = w; fv = fw;
                w = u; fw = fu;
            } else if (fu <= fv || v == x || v == w) {
                v = u; fv = fu;
            }
        }
    }
    return {x, fx, evals};
}

/// Brent root finder on a bracketing interval [a, b] with f(a) f(b) <= 0.
template <class F>
double brent_root(F&& f, double a, double b, double rtol, int max_iter = 200) {
    double fa = f(a), fb = f(b);
    if (fa == 0.0) return a;
    if (fb == 0.0) return b;
    if (fa * fb > 0.0) throw RootBracketError("brent_root: endpoints do not bracket");
    if (std::fabs(fa) < std::fabs(fb)) { std::swap(a, b); std::swap(fa, fb); }
    double c = a, fc = fa, d = b - a, s = b;
    bool mflag = true;
    for (int iter = 0; iter < max_iter; ++iter) {
        if (fb == 0.0 || std::fabs(b - a) <= rtol * std::max(1.0, std::fabs(b))) break;
        if (fa != fc && fb != fc) {
            s = a * fb * fc / ((fa - fb) * (fa - fc)) +
                b * fa * fc / ((fb - fa) * (fb - fc)) +
                c * fa * fb / ((fc - fa) * (fc - fb));
        } else {
            s = b - fb * (b - a) / (fb - fa);
        }
        double lo = 0.25 * (3.0 * a + b);
        bool bad = !((s > std::min(lo, b) && s < std::max(lo, b))) ||
                   (mflag && std::fabs(s - b) >= 0.5 * std::fabs(b - c)) ||
                   (!mflag && std::fabs(s - b) >= 0.5 * std::fabs(c - d)) ||
                   (mflag && std::fabs(b - c) < rtol) ||
                   (!mflag && std::fabs(c - d) < rtol);
        if (bad) {
            s = 0.5 * (a + b);
            mflag = true;
        } else {
            mflag = false;
        }
        double fs = f(s);
        d = c;
        c = b; fc = fb;
        if (fa * fs < 0.0) { b = s; fb = fs; }
        else { a = s; fa = fs; }
        if (std::fabs(fa) < std::fabs(fb)) { std::swap(a, b); std::swap(fa, fb); }
    }
    return b;
}

struct ScanMax {
    double x = 0.0;
    double fx = -std::numeric_limits<double>::infinity();
    int evals = 0;
};

/// Maximize f over the active region: coarse uniform scan per interval
/// (excluded endpoints shrunk by margin) to bracket every local maximum,
/// then bounded minimization of -f on each bracket. Ties go to the
/// smallest abscissa.
template <class F>
ScanMax scan_refine_max(F&& f, const ActiveRegion& region, int samples_per_interval,
                        double xtol, double margin) {
    if (region.intervals.empty()) throw NothingToDo("scan_refine_max: empty active region");
    ScanMax best;
    for (const auto& iv : region.intervals) {
        double lo = iv.lo + (iv.open_lo ? margin : 0.0);
        double hi = iv.hi - (iv.open_hi ? margin : 0.0);
        if (!(lo < hi)) continue;
        int n = std::max(8, samples_per_interval);
        std::vector<double> xs(std::size_t(n) + 1), fs(std::size_t(n) + 1);
        for (int i = 0; i <= n; ++i) {
            xs[std::size_t(i)] = lo + (hi - lo) * i / n;
            fs[std::size_t(i)] = f(xs[std::size_t(i)]);
            ++best.evals;
        }
        auto consider = [&](double x, double fx) {
            if (!std::isfinite(fx)) return;
            if (!std::isfinite(best.fx)) {
                best.x = x;
                best.fx = fx;
                return;
            }
            if (fx > best.fx + 1e-12 * std::max(1.0, std::fabs(best.fx))) {
                best.x = x;
                best.fx = fx;
            } else if (fx >= best.fx - 1e-12 * std::max(1.0, std::fabs(best.fx)) &&
                       x < best.x && fx >= best.fx) {
                best.x = x;
                best.fx = fx;
            }
        };
        for (int i = 0; i <= n; ++i) {
            bool local_max = (i == 0 || fs[std::size_t(i)] >= fs[std::size_t(i - 1)]) &&
                             (i == n || fs[std::size_t(i)] >= fs[std::size_t(i + 1)]);
            if (!local_max) continue;
            if (i == 0 || i == n) {
                consider(xs[std::size_t(i)], fs[std::size_t(i)]);
                if (i == 0 && n >= 1 && fs[0] >= fs[1]) continue;
                if (i == n && fs[std::size_t(n)] >= fs[std::size_t(n - 1)]) continue;
            }
            double a = xs[std::size_t(std::max(0, i - 1))];
            double b = xs[std::size_t(std::min(n, i + 1))];
            auto r = brent_minimize([&](double x) { return -f(x); }, a, b, xtol);
            best.evals += r.evals;
            consider(r.x, -r.fx);
        }
    }
    if (!std::isfinite(best.fx))
        throw NothingToDo("scan_refine_max: no evaluable points in active region");
    return best;
}

} // namespace steadytime
