#pragma once

#include <array>
#include <functional>
#include <ostream>

#include "steadytime/estimators.hpp"
#include "steadytime/fd.hpp"
#include "steadytime/reference.hpp"
#include "steadytime/scaling.hpp"

namespace steadytime {

/// A named problem, kept in exact coefficients so both arithmetic modes
/// can be derived from it.
struct CaseInput {
    std::string name;
    ProblemSpec<Rational> spec;
};

/// The embedded canonical cases A, B, C.
std::vector<CaseInput> bundled_cases();

/// Immutable per-problem evaluation context shared across table cells.
struct CaseContext {
    CaseInput input;
    ProblemSpec<double> spec;
    SteadyState<double> ss;
    ActiveRegion region;
    MomentSet<double> ms;
    EigenExpansion ee;
};

/// exact_arithmetic selects whether the moment recursion runs in
/// rationals (then converted) or directly in doubles.
CaseContext make_context(const CaseInput& input, int terms = 50, int q = 12,
                         bool exact_arithmetic = true);

/// Worker count: STEADYTIME_THREADS if set (clamped to >= 1), otherwise
/// the hardware concurrency.
int thread_budget();

/// Run job(0..n-1) on the pool; output placement is the callee's job so
/// results stay deterministic regardless of pool size.
void parallel_for(int n, const std::function<void(int)>& job);

inline constexpr std::array<double, 6> table3_deltas = {1e-1, 1e-2, 1e-3,
                                                        1e-4, 1e-5, 1e-6};
inline constexpr std::array<int, 4> table3_ks = {1, 2, 5, 10};

/// One case's worth of the exact-vs-estimate comparison table.
struct Table3Block {
    std::string name;
    std::array<double, 6> exact{};                 // per delta
    std::array<std::array<double, 6>, 4> est{};    // per k, per delta
    std::array<std::array<double, 6>, 4> rel{};    // per k, per delta
};

std::vector<Table3Block> table3_blocks(const std::vector<CaseContext>& cases);
void table3_csv(std::ostream& os, const std::vector<Table3Block>& blocks);

/// Residual errors of the three global estimates per case:
/// eps1, eps2, eps3[k=2, d=0.02], [k=2, 1e-3], [k=2, 1e-5], [k=5, 0.02].
struct Table2Row {
    std::string name;
    std::array<double, 6> eps{};
};

std::vector<Table2Row> table2_rows(const std::vector<CaseContext>& cases);
void table2_csv(std::ostream& os, const std::vector<Table2Row>& rows);

/// Scaling constants for even k up to k_max. Float mode runs the
/// recursion in doubles and refuses k_max > 10, where cancellation in
/// the error columns exceeds double resolution.
std::vector<ScalingConstants> table4_rows(int k_max, bool exact_arithmetic = true);
void table4_csv(std::ostream& os, const std::vector<ScalingConstants>& rows);

/// Local-profile sample: the k-th asymptotic estimate against the exact
/// transition time. Excluded abscissae carry valid = false and t3 = 0.
struct ProfilePoint {
    double x;
    double t3;
    bool valid;
    double ts;
};

std::vector<ProfilePoint> profile_points(const CaseContext& cc, int k, double delta,
                                         int n_points = 512);
void profile_csv(std::ostream& os, const std::vector<ProfilePoint>& pts);

/// Series-vs-finite-difference probe grid for regression baselines.
struct ProbePoint {
    double x, t, u_series, u_fd, abs_diff;
};

std::vector<ProbePoint> probe_points(const CaseContext& cc, int grid_n = 400, int nx = 21,
                                     int nt = 11);
void probe_csv(std::ostream& os, const std::vector<ProbePoint>& pts);

} // namespace steadytime
