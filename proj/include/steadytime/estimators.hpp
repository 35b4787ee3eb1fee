#pragma once

#include "steadytime/moments.hpp"
#include "steadytime/optimize.hpp"

namespace steadytime {

enum class Method { MAT = 1, MatSd = 2, Asymptotic = 3 };

struct LocalEstimate {
    Method method;
    double x;
    int k = 0;          // Asymptotic only
    double delta = 0.0; // Asymptotic only
    double t = 0.0;
    bool valid = true;
};

/// One-exponential surrogate F ~ 1 - alpha e^{-beta t} matched to the
/// (k-1)th and kth moments.
struct AlphaBeta {
    int k;
    double alpha;
    double beta;
};

struct GlobalEstimate {
    Method method;
    int k = 0;
    double delta = 0.0;
    double t_hat = 0.0;
    double argmax_x = 0.0;
    int optimizer_evals = 0;
};

/// Exact integer factorial, k <= 20.
inline double factorial(int k) {
    if (k < 0 || k > 20) throw DomainError("factorial: k out of [0, 20]");
    unsigned long long f = 1;
    for (int i = 2; i <= k; ++i) f *= (unsigned long long)i;
    return double(f);
}

inline LocalEstimate mat(const MomentSet<double>& ms, double x) {
    return {Method::MAT, x, 0, 0.0, moment_at(ms, 1, x), true};
}

inline LocalEstimate mat_sd(const MomentSet<double>& ms, double x) {
    double m1 = moment_at(ms, 1, x);
    double m2 = moment_at(ms, 2, x);
    double var = m2 - m1 * m1;
    if (var < -1e-12 * std::max(1.0, m2))
        throw NumericalInconsistency("mat_sd: negative variance of action time");
    if (var < 0.0) var = 0.0;
    return {Method::MatSd, x, 0, 0.0, m1 + std::sqrt(var), true};
}

inline AlphaBeta alpha_beta(const MomentSet<double>& ms, int k, double x) {
    if (k < 1) throw DomainError("alpha_beta: k must be >= 1");
    double mk = moment_at(ms, k, x);
    double mkm1 = moment_at(ms, k - 1, x);
    if (mk == 0.0 || mkm1 == 0.0)
        throw DegenerateMoments("alpha_beta: vanishing moment");
    double beta = k * mkm1 / mk;
    double alpha = mk / factorial(k) * std::pow(beta, k);
    return {k, alpha, beta};
}

inline LocalEstimate t3_local(const MomentSet<double>& ms, int k, double delta, double x) {
    if (!(delta > 0.0 && delta < 1.0)) throw DomainError("t3_local: delta not in (0,1)");
    AlphaBeta ab = alpha_beta(ms, k, x);
    bool valid = ab.alpha >= delta;
    double t = std::log(ab.alpha / delta) / ab.beta;
    return {Method::Asymptotic, x, k, delta, valid ? t : 0.0, valid};
}

/// Additional transition time per decade of tolerance: log(10)/beta_k(x).
inline double t3_slope(const MomentSet<double>& ms, int k, double x) {
    return std::log(10.0) / alpha_beta(ms, k, x).beta;
}

struct SupOptions {
    int samples_per_interval = 512;
    double xtol_rel = 1e-14;   // of the domain span
    double margin_rel = 1e-9;  // shrink at open interval ends
};

inline double local_value(const MomentSet<double>& ms, Method method, int k, double delta,
                          double x) {
    switch (method) {
        case Method::MAT: return mat(ms, x).t;
        case Method::MatSd: return mat_sd(ms, x).t;
        case Method::Asymptotic: return t3_local(ms, k, delta, x).t;
    }
    throw DomainError("local_value: bad method");
}

/// Global transition time estimate: supremum of a local estimator over
/// the active region. Invalid (alpha < delta) points contribute t = 0.
inline GlobalEstimate global_sup(const MomentSet<double>& ms, const ActiveRegion& region,
                                 Method method, int k = 0, double delta = 0.0,
                                 const SupOptions& opts = {}) {
    double span = ms.h.hi() - ms.h.lo();
    auto f = [&](double x) { return local_value(ms, method, k, delta, x); };
    auto r = scan_refine_max(f, region, opts.samples_per_interval, opts.xtol_rel * span,
                             opts.margin_rel * span);
    return {method, k, delta, r.fx, r.x, r.evals};
}

} // namespace steadytime
