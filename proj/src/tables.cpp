#include "steadytime/tables.hpp"

#include <atomic>
#include <cstdlib>
#include <mutex>
#include <thread>

#include "steadytime/bundled.hpp"
#include "steadytime/csv.hpp"

namespace steadytime {

std::vector<CaseInput> bundled_cases() {
    std::vector<CaseInput> cases;
    for (std::string_view text : bundled::all) {
        auto j = nlohmann::json::parse(text);
        cases.push_back({j.at("name").get<std::string>(), problem_from_json<Rational>(j)});
    }
    return cases;
}

CaseContext make_context(const CaseInput& input, int terms, int q, bool exact_arithmetic) {
    auto ss_exact = solve_steady(input.spec);
    MomentSet<double> ms;
    if (exact_arithmetic) {
        ms = compute_moments(input.spec, ss_exact, q).to_double();
    } else {
        auto specd = input.spec.to_double();
        ms = compute_moments(specd, solve_steady(specd), q);
    }
    return {input,
            input.spec.to_double(),
            SteadyState<double>{ss_exact.u_inf.to_double(), ss_exact.is_neumann},
            active_region(input.spec, ss_exact),
            std::move(ms),
            eigen_solve(input.spec, ss_exact, terms)};
}

int thread_budget() {
    if (const char* env = std::getenv("STEADYTIME_THREADS")) {
        int n = std::atoi(env);
        if (n >= 1) return n;
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw ? int(hw) : 1;
}

void parallel_for(int n, const std::function<void(int)>& job) {
    int workers = std::min(n, thread_budget());
    if (workers <= 1) {
        for (int i = 0; i < n; ++i) job(i);
        return;
    }
    std::atomic<int> next{0};
    std::exception_ptr failure;
    std::mutex failure_mu;
    auto worker = [&] {
        for (;;) {
            int i = next.fetch_add(1);
            if (i >= n) return;
            try {
                job(i);
            } catch (...) {
                std::lock_guard lock(failure_mu);
                if (!failure) failure = std::current_exception();
            }
        }
    };
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
}

std::vector<Table3Block> table3_blocks(const std::vector<CaseContext>& cases) {
    std::vector<Table3Block> blocks(cases.size());
    const int n_delta = int(table3_deltas.size());
    const int n_k = int(table3_ks.size());
    const int per_case = n_delta * (1 + n_k);
    parallel_for(int(cases.size()) * per_case, [&](int idx) {
        int ci = idx / per_case, cell = idx % per_case;
        const auto& cc = cases[std::size_t(ci)];
        auto& block = blocks[std::size_t(ci)];
        block.name = cc.input.name;
        int di = cell % n_delta, row = cell / n_delta;
        double delta = table3_deltas[std::size_t(di)];
        if (row == 0) {
            block.exact[std::size_t(di)] = exact_global(cc.ee, delta, cc.region).t_hat;
        } else {
            int k = table3_ks[std::size_t(row - 1)];
            block.est[std::size_t(row - 1)][std::size_t(di)] =
                global_sup(cc.ms, cc.region, Method::Asymptotic, k, delta).t_hat;
        }
    });
    for (auto& block : blocks)
        for (std::size_t ki = 0; ki < table3_ks.size(); ++ki)
            for (std::size_t di = 0; di < table3_deltas.size(); ++di)
                block.rel[ki][di] =
                    std::fabs(block.exact[di] - block.est[ki][di]) / std::fabs(block.exact[di]);
    return blocks;
}

void table3_csv(std::ostream& os, const std::vector<Table3Block>& blocks) {
    std::vector<std::string> header = {"case", "row"};
    for (double d : table3_deltas) header.push_back("delta=" + csv::fmt_compact(d));
    csv::write_row(os, header);
    for (const auto& b : blocks) {
        std::vector<std::string> row = {b.name, "exact"};
        for (double v : b.exact) row.push_back(csv::fmt_time(v));
        csv::write_row(os, row);
        for (std::size_t ki = 0; ki < table3_ks.size(); ++ki) {
            row = {b.name, "t3[k=" + std::to_string(table3_ks[ki]) + "]"};
            for (double v : b.est[ki]) row.push_back(csv::fmt_time(v));
            csv::write_row(os, row);
        }
        for (std::size_t ki = 0; ki < table3_ks.size(); ++ki) {
            row = {b.name, "relerr[k=" + std::to_string(table3_ks[ki]) + "]"};
            for (double v : b.rel[ki]) row.push_back(csv::fmt_sci(v));
            csv::write_row(os, row);
        }
    }
}

std::vector<Table2Row> table2_rows(const std::vector<CaseContext>& cases) {
    // columns: method 1, method 2, then method 3 at (k, delta) combos
    static constexpr std::array<std::pair<int, double>, 4> m3 = {
        {{2, 0.02}, {2, 1e-3}, {2, 1e-5}, {5, 0.02}}};
    std::vector<Table2Row> rows(cases.size());
    parallel_for(int(cases.size()) * 6, [&](int idx) {
        int ci = idx / 6, col = idx % 6;
        const auto& cc = cases[std::size_t(ci)];
        rows[std::size_t(ci)].name = cc.input.name;
        double t_hat;
        if (col == 0) {
            t_hat = global_sup(cc.ms, cc.region, Method::MAT).t_hat;
        } else if (col == 1) {
            t_hat = global_sup(cc.ms, cc.region, Method::MatSd).t_hat;
        } else {
            auto [k, delta] = m3[std::size_t(col - 2)];
            t_hat = global_sup(cc.ms, cc.region, Method::Asymptotic, k, delta).t_hat;
        }
        rows[std::size_t(ci)].eps[std::size_t(col)] =
            epsilon_error(cc.ee, t_hat, cc.region);
    });
    return rows;
}

void table2_csv(std::ostream& os, const std::vector<Table2Row>& rows) {
    csv::write_row(os, {"case", "eps1", "eps2", "eps3[k=2,delta=0.02]",
                        "eps3[k=2,delta=1e-3]", "eps3[k=2,delta=1e-5]",
                        "eps3[k=5,delta=0.02]"});
    for (const auto& r : rows)
        csv::write_row(os, {r.name, csv::fmt_time(r.eps[0]), csv::fmt_time(r.eps[1]),
                            csv::fmt_time(r.eps[2]), csv::fmt_sci(r.eps[3]),
                            csv::fmt_sci(r.eps[4]), csv::fmt_time(r.eps[5])});
}

namespace {

// Float-mode twin of generalized_caseA_constants: the unit problem's
// recursion and constants evaluated entirely in doubles.
ScalingConstants float_scaling_constants(int k) {
    static const MomentSet<double> ms = [] {
        auto unit = unit_dirichlet_neumann_moments().to_double();
        return unit;
    }();
    double mk = moment_at(ms, k, 1.0);
    double mkm1 = moment_at(ms, k - 1, 1.0);
    double gamma = mk / (k * mkm1);
    double theta = alpha_beta(ms, k, 1.0).alpha;
    const double pi = std::acos(-1.0);
    ScalingConstants out{k, Rational(0), Rational(0), std::fabs(gamma - 4.0 / (pi * pi)),
                         std::fabs(theta - 4.0 / pi)};
    out.gamma = field_from_double<Rational>(gamma);
    out.theta = field_from_double<Rational>(theta);
    return out;
}

} // namespace

std::vector<ScalingConstants> table4_rows(int k_max, bool exact_arithmetic) {
    if (k_max < 2 || k_max > 20) throw DomainError("table4_rows: k_max out of [2, 20]");
    if (!exact_arithmetic && k_max > 10)
        throw PrecisionError(
            "table4_rows: float arithmetic cannot resolve error columns past k = 10");
    std::vector<int> ks;
    for (int k = 2; k <= k_max; k += 2) ks.push_back(k);
    std::vector<ScalingConstants> rows(ks.size());
    parallel_for(int(ks.size()), [&](int i) {
        int k = ks[std::size_t(i)];
        rows[std::size_t(i)] =
            exact_arithmetic ? generalized_caseA_constants(k) : float_scaling_constants(k);
    });
    return rows;
}

void table4_csv(std::ostream& os, const std::vector<ScalingConstants>& rows) {
    csv::write_row(os, {"k", "gamma", "theta", "gamma_err", "theta_err"});
    for (const auto& r : rows)
        csv::write_row(os, {std::to_string(r.k), csv::fmt_time(to_double(r.gamma)),
                            csv::fmt_time(to_double(r.theta)), csv::fmt_sci(r.gamma_err),
                            csv::fmt_sci(r.theta_err)});
}

std::vector<ProfilePoint> profile_points(const CaseContext& cc, int k, double delta,
                                         int n_points) {
    if (n_points < 2) throw DomainError("profile_points: need at least 2 points");
    std::vector<ProfilePoint> pts(static_cast<std::size_t>(n_points));
    double seed = std::log(4.0 / delta) / cc.ee.modes().front().xi * 10.0;
    parallel_for(n_points, [&](int i) {
        double x = cc.spec.l0 + (cc.spec.lm - cc.spec.l0) * i / (n_points - 1);
        ProfilePoint p{x, 0.0, false, 0.0};
        try {
            auto est = t3_local(cc.ms, k, delta, x);
            p.t3 = est.t;
            p.valid = est.valid;
        } catch (const Error&) {
            // pinned or excluded abscissa: no finite-moment estimate exists
        }
        try {
            p.ts = exact_ts(cc.ee, delta, x, seed);
        } catch (const ExcludedPoint&) {
            p.valid = false;
        }
        pts[std::size_t(i)] = p;
    });
    return pts;
}

void profile_csv(std::ostream& os, const std::vector<ProfilePoint>& pts) {
    csv::write_row(os, {"x", "t3", "valid", "ts_exact"});
    for (const auto& p : pts)
        csv::write_row(os, {csv::fmt_full(p.x), csv::fmt_full(p.t3),
                            p.valid ? "1" : "0", csv::fmt_full(p.ts)});
}

std::vector<ProbePoint> probe_points(const CaseContext& cc, int grid_n, int nx, int nt) {
    double xi1 = cc.ee.modes().front().xi;
    std::vector<double> times(static_cast<std::size_t>(nt));
    for (int j = 0; j < nt; ++j) times[std::size_t(j)] = (j + 1) * 0.4 / xi1;
    auto fd = fd_oracle(cc.spec, grid_n, times);
    std::vector<ProbePoint> pts;
    pts.reserve(std::size_t(nx) * std::size_t(nt));
    for (int j = 0; j < nt; ++j)
        for (int i = 0; i < nx; ++i) {
            std::size_t gi = std::size_t(i) * (fd.x.size() - 1) / std::size_t(nx - 1);
            double x = fd.x[gi];
            double us = cc.ee.u(x, times[std::size_t(j)]);
            double uf = fd.u[std::size_t(j)][gi];
            pts.push_back({x, times[std::size_t(j)], us, uf, std::fabs(us - uf)});
        }
    return pts;
}

void probe_csv(std::ostream& os, const std::vector<ProbePoint>& pts) {
    csv::write_row(os, {"x", "t", "u_series", "u_fd", "abs_diff"});
    for (const auto& p : pts)
        csv::write_row(os, {csv::fmt_full(p.x), csv::fmt_full(p.t),
                            csv::fmt_full(p.u_series), csv::fmt_full(p.u_fd),
                            csv::fmt_sci(p.abs_diff)});
}

} // namespace steadytime
