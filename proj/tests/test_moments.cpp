#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cases.hpp"
#include "oracles.hpp"
#include "steadytime/moments.hpp"
#include "steadytime/reference.hpp"

using namespace steadytime;
using namespace steadytime::testing;

TEST_CASE("Case A closed forms: Mbar_1 = x - x^2/2, Mbar_2(1) = 5/12") {
    auto a = case_a<Rational>();
    auto ms = compute_moments(a, solve_steady(a), 2);

    Polynomial<Rational> mbar1({Rational(0), Rational(1), Rational(-1, 2)});
    CHECK(ms.mbar[1].pieces()[0] == mbar1);
    CHECK(moment_at(ms, 1, Rational(1)) == Rational(1, 2));
    CHECK(moment_at(ms, 1, Rational(1, 2)) == Rational(3, 8));

    CHECK(ms.mbar[2](Rational(1)) == Rational(5, 12));
    // 2 M_1^2 / M_2 at x = 1 (the k = 2 surrogate amplitude) is 6/5
    Rational m1 = moment_at(ms, 1, Rational(1));
    Rational m2 = moment_at(ms, 2, Rational(1));
    CHECK(Rational(2) * m1 * m1 / m2 == Rational(6, 5));

    CHECK(moment_at(ms, 0, Rational(1, 3)) == Rational(1));
}

TEST_CASE("constants: Robin rows for Cases A and B") {
    auto a = case_a<Rational>();
    auto ssa = solve_steady(a);
    auto ms = compute_moments(a, ssa, 1);
    CHECK(ms.constants[0].first == Rational(0));
    CHECK(ms.constants[0].second == Rational(1));

    // homogeneous G -> zero constants
    auto zero = PiecewisePoly<Rational>::constant(Rational(0), Rational(1), Rational(0));
    auto [c1, c2] = solve_constants_robin(zero, zero, a);
    CHECK(c1 == Rational(0));
    CHECK(c2 == Rational(0));

    // Case B, k = 1: BC residuals of Mbar_1 vanish exactly
    auto b = case_b<Rational>();
    auto msb = compute_moments(b, solve_steady(b), 1);
    auto mp = msb.mbar[1].derivative();
    CHECK(b.aL * msb.mbar[1](b.l0) - b.bL * mp(b.l0) == Rational(0));
    CHECK(b.aR * msb.mbar[1](b.lm) + b.bR * mp(b.lm) == Rational(0));
}

TEST_CASE("constants: Neumann rows for Case C") {
    auto c = case_c<Rational>();
    auto ss = solve_steady(c);
    auto ms = compute_moments(c, ss, 2);
    for (int k = 1; k <= 2; ++k) {
        // zero-mean constraint and zero-flux BCs hold exactly
        CHECK(ms.mbar[std::size_t(k)].definite_integral(Rational(0), Rational(1)) ==
              Rational(0));
        auto mp = ms.mbar[std::size_t(k)].derivative();
        CHECK(mp(Rational(0)) == Rational(0));
        CHECK(mp(Rational(1)) == Rational(0));
    }

    auto zero = PiecewisePoly<Rational>::constant(Rational(0), Rational(1), Rational(0));
    auto [c1, c2] = solve_constants_neumann(zero, zero, zero, c);
    CHECK(c1 == Rational(0));
    CHECK(c2 == Rational(0));

    // inconsistent G' endpoints are rejected
    PiecewisePoly<Rational> skew({Rational(0), Rational(1)},
                                 {Polynomial<Rational>({Rational(0), Rational(1)})});
    CHECK_THROWS_AS(solve_constants_neumann(zero, skew, zero, c), InconsistentConstraint);
}

TEST_CASE("moment_at excluded points and positivity") {
    auto c = case_c<Rational>();
    auto ms = compute_moments(c, solve_steady(c), 3);
    CHECK_THROWS_AS(moment_at(ms, 1, Rational(1, 4)), ExcludedPoint);

    auto msd = ms.to_double();
    for (double x : {0.05, 0.15, 0.35, 0.5, 0.65, 0.9})
        for (int k = 1; k <= 3; ++k) CHECK(moment_at(msd, k, x) > 0.0);
}

TEST_CASE("ODE residual: Mbar_k'' = -(k/D) Mbar_{k-1} exactly") {
    for (auto* name : {"case_a", "case_b", "case_c"}) {
        auto spec = load_case<Rational>(name);
        auto ms = compute_moments(spec, solve_steady(spec), 5);
        for (int k = 1; k <= 5; ++k) {
            auto lhs = ms.mbar[std::size_t(k)].derivative().derivative();
            auto rhs = ms.mbar[std::size_t(k - 1)].scaled(Rational(-k) / spec.D);
            for (int i = 0; i <= 50; ++i) {
                Rational x(i, 50);
                CHECK(lhs(x) == rhs(x));
            }
        }
    }
}

TEST_CASE("quadrature oracle: moments match series-density integration") {
    // the mode-truncation tail scales like 1/N^3, so the oracle series
    // is taken much deeper than the 50-term reference default
    const int n_terms = 1600;
    for (auto* name : {"case_a", "case_b", "case_c"}) {
        auto spec = load_case<Rational>(name);
        auto ss = solve_steady(spec);
        auto ms = compute_moments(spec, ss, 5).to_double();
        auto ee = eigen_solve(spec, ss, n_terms);
        double xi1 = ee.modes().front().xi;
        for (double frac : {0.11, 0.42, 0.68, 0.93}) {
            double x = spec.to_double().l0 + frac * (spec.to_double().lm - spec.to_double().l0);
            std::vector<double> amp(static_cast<std::size_t>(n_terms));
            std::vector<double> rate(static_cast<std::size_t>(n_terms));
            for (int n = 0; n < n_terms; ++n) {
                amp[std::size_t(n)] = ee.zeta(std::size_t(n), x);
                rate[std::size_t(n)] = ee.modes()[std::size_t(n)].xi;
            }
            auto residual = [&](double t) {
                double acc = 0.0;
                for (int n = 0; n < n_terms; ++n) {
                    double e = rate[std::size_t(n)] * t;
                    if (e > 45.0) break;  // rates ascend; the rest is noise
                    acc += amp[std::size_t(n)] * std::exp(-e);
                }
                return acc;
            };
            double T = 40.0 / xi1;
            for (int k = 1; k <= 5; ++k) {
                double scale = 1.0;  // rough moment magnitude, k!/xi1^k
                for (int i = 1; i <= k; ++i) scale *= i / xi1;
                auto integrand = [&](double t) {
                    return k * std::pow(t, k - 1) * residual(t);
                };
                // geometric panels keep the quadrature honest on [0, T]
                double quad = 0.0, hi = T;
                for (int j = 0; j < 60 && hi > 1e-14 * T; ++j) {
                    double lo = 0.5 * hi;
                    if (j == 59) lo = 0.0;
                    quad += adaptive_simpson(integrand, lo, hi, 1e-12 * scale);
                    hi = lo;
                }
                double analytic = moment_at(ms, k, x);
                CHECK(quad == doctest::Approx(analytic).epsilon(1e-8));
            }
        }
    }
}

TEST_CASE("moment growth: k M_{k-1} / M_k converges as k grows") {
    auto a = case_a<Rational>();
    auto ms = compute_moments(a, solve_steady(a), 12).to_double();
    double prev_ratio = 0.0, prev_diff = 1e300;
    for (int k = 2; k <= 12; ++k) {
        double ratio = k * moment_at(ms, k - 1, 1.0) / moment_at(ms, k, 1.0);
        if (k > 2) {
            double diff = std::fabs(ratio - prev_ratio);
            CHECK(diff < prev_diff);
            prev_diff = diff;
        }
        prev_ratio = ratio;
    }
    // the limit is the leading eigenrate
    CHECK(prev_ratio == doctest::Approx(std::pow(std::acos(-1.0) / 2.0, 2)).epsilon(1e-6));
}

TEST_CASE("compute_moments rejects q < 1 and dumps audit JSON") {
    auto a = case_a<Rational>();
    auto ss = solve_steady(a);
    CHECK_THROWS_AS(compute_moments(a, ss, 0), DomainError);
    auto ms = compute_moments(a, ss, 2);
    auto j = moments_to_json(ms);
    CHECK(j.size() == 3);
    CHECK(j[1]["c2"] == "1");
}
