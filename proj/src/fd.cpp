#include "steadytime/fd.hpp"

#include <algorithm>
#include <cmath>

namespace steadytime {

namespace {

// Tridiagonal Thomas solve; overwrites d with the solution.
void thomas(std::vector<double>& a, std::vector<double>& b, std::vector<double>& c,
            std::vector<double>& d) {
    std::size_t n = b.size();
    for (std::size_t i = 1; i < n; ++i) {
        double w = a[i] / b[i - 1];
        b[i] -= w * c[i - 1];
        d[i] -= w * d[i - 1];
    }
    d[n - 1] /= b[n - 1];
    for (std::size_t i = n - 1; i-- > 0;) d[i] = (d[i] - c[i] * d[i + 1]) / b[i];
}

} // namespace

double FdSolution::mass(std::size_t j) const {
    double dx = x[1] - x[0];
    double s = 0.5 * (u[j].front() + u[j].back());
    for (std::size_t i = 1; i + 1 < x.size(); ++i) s += u[j][i];
    return s * dx;
}

FdSolution fd_oracle(const ProblemSpec<double>& spec, int grid_n,
                     std::vector<double> sample_times, int total_steps) {
    spec.validate();
    if (grid_n < 50) throw DomainError("fd_oracle: grid_n must be >= 50");
    std::sort(sample_times.begin(), sample_times.end());
    if (!sample_times.empty() && sample_times.front() < 0.0)
        throw DomainError("fd_oracle: negative sample time");

    const int N = grid_n;
    const double dx = (spec.lm - spec.l0) / N;
    const double r = spec.D / (dx * dx);

    FdSolution sol;
    sol.x.resize(std::size_t(N) + 1);
    for (int i = 0; i <= N; ++i) sol.x[std::size_t(i)] = spec.l0 + dx * i;

    // initial nodes; mean of one-sided limits at jumps of u0
    std::vector<double> u(std::size_t(N) + 1);
    for (int i = 0; i <= N; ++i) {
        double x = sol.x[std::size_t(i)];
        double right = spec.u0(x);
        double left = i > 0 ? spec.u0.eval_left(x) : right;
        u[std::size_t(i)] = 0.5 * (left + right);
    }

    const bool dirL = spec.bL == 0.0;
    const bool dirR = spec.bR == 0.0;

    // L u + q: tridiagonal spatial operator with ghost-point BC rows
    std::vector<double> sub(std::size_t(N) + 1, 0.0), diag(std::size_t(N) + 1, 0.0),
        sup(std::size_t(N) + 1, 0.0), q(std::size_t(N) + 1, 0.0);
    for (int i = 1; i < N; ++i) {
        sub[std::size_t(i)] = r;
        diag[std::size_t(i)] = -2.0 * r;
        sup[std::size_t(i)] = r;
    }
    if (!dirL) {
        diag[0] = -2.0 * r - 2.0 * r * dx * spec.aL / spec.bL;
        sup[0] = 2.0 * r;
        q[0] = 2.0 * r * dx * spec.cL / spec.bL;
    }
    if (!dirR) {
        sub[std::size_t(N)] = 2.0 * r;
        diag[std::size_t(N)] = -2.0 * r - 2.0 * r * dx * spec.aR / spec.bR;
        q[std::size_t(N)] = 2.0 * r * dx * spec.cR / spec.bR;
    }
    if (dirL) u[0] = spec.cL / spec.aL;
    if (dirR) u[std::size_t(N)] = spec.cR / spec.aR;

    double t_max = sample_times.empty() ? 0.0 : sample_times.back();
    double dt_target = t_max > 0.0 ? t_max / std::max(1, total_steps) : 0.0;

    double t = 0.0;
    std::vector<double> lower(std::size_t(N) + 1), middle(std::size_t(N) + 1),
        upper(std::size_t(N) + 1), rhs(std::size_t(N) + 1);
    for (double ts : sample_times) {
        double gap = ts - t;
        if (gap > 0.0) {
            int steps = std::max(1, int(std::ceil(gap / std::max(dt_target, 1e-300))));
            double dt = gap / steps;
            for (int s = 0; s < steps; ++s) {
                double h = 0.5 * dt;
                for (int i = 0; i <= N; ++i) {
                    std::size_t k = std::size_t(i);
                    lower[k] = -h * sub[k];
                    middle[k] = 1.0 - h * diag[k];
                    upper[k] = -h * sup[k];
                    double lu = diag[k] * u[k];
                    if (i > 0) lu += sub[k] * u[k - 1];
                    if (i < N) lu += sup[k] * u[k + 1];
                    rhs[k] = u[k] + h * lu + 2.0 * h * q[k];
                }
                if (dirL) {
                    lower[0] = 0.0; middle[0] = 1.0; upper[0] = 0.0;
                    rhs[0] = spec.cL / spec.aL;
                }
                if (dirR) {
                    std::size_t k = std::size_t(N);
                    lower[k] = 0.0; middle[k] = 1.0; upper[k] = 0.0;
                    rhs[k] = spec.cR / spec.aR;
                }
                thomas(lower, middle, upper, rhs);
                u = rhs;
            }
            t = ts;
        }
        sol.t.push_back(ts);
        sol.u.push_back(u);
    }
    return sol;
}

} // namespace steadytime
