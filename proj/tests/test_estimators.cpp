#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "cases.hpp"
#include "steadytime/estimators.hpp"

using namespace steadytime;
using namespace steadytime::testing;

namespace {

struct CaseData {
    MomentSet<double> ms;
    ActiveRegion region;
};

CaseData prepare(const std::string& name, int q = 12) {
    auto spec = load_case<Rational>(name);
    auto ss = solve_steady(spec);
    return {compute_moments(spec, ss, q).to_double(), active_region(spec, ss)};
}

} // namespace

TEST_CASE("mean action time") {
    auto a = prepare("case_a");
    CHECK(mat(a.ms, 1.0).t == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(mat(a.ms, 0.5).t == doctest::Approx(0.375).epsilon(1e-14));

    auto g = global_sup(a.ms, a.region, Method::MAT);
    CHECK(g.t_hat == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(g.argmax_x == doctest::Approx(1.0).epsilon(1e-9));

    // near the Case C punctures the estimate stays finite and small
    auto c = prepare("case_c");
    double eta = 1e-7;
    double near = mat(c.ms, 0.25 + eta).t;
    CHECK(near > 0.0);
    CHECK(near < 1e-3);
}

TEST_CASE("mean plus standard deviation of action time") {
    auto a = prepare("case_a");
    double expect = 0.5 * (1.0 + std::sqrt(6.0) / 3.0);
    CHECK(mat_sd(a.ms, 1.0).t == doctest::Approx(expect).epsilon(1e-14));
    // dominates the mean everywhere
    for (double x : {0.1, 0.3, 0.6, 0.9, 1.0})
        CHECK(mat_sd(a.ms, x).t >= mat(a.ms, x).t);
}

TEST_CASE("alpha/beta surrogate parameters") {
    auto a = prepare("case_a");
    auto ab1 = alpha_beta(a.ms, 1, 1.0);
    CHECK(ab1.alpha == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(ab1.beta == doctest::Approx(2.0).epsilon(1e-14));

    auto ab2 = alpha_beta(a.ms, 2, 1.0);
    CHECK(ab2.alpha == doctest::Approx(1.2).epsilon(1e-13));
    CHECK(ab2.beta == doctest::Approx(2.4).epsilon(1e-13));

    // k = 10 approaches the leading-mode limits 4/pi and pi^2/4
    const double pi = std::acos(-1.0);
    auto ab10 = alpha_beta(a.ms, 10, 1.0);
    CHECK(ab10.alpha == doctest::Approx(4.0 / pi).epsilon(1e-7));
    CHECK(ab10.beta == doctest::Approx(pi * pi / 4.0).epsilon(1e-8));
}

TEST_CASE("t3 local estimate and slope") {
    auto a = prepare("case_a");
    CHECK(t3_local(a.ms, 2, 1e-2, 1.0).t ==
          doctest::Approx(5.0 / 12.0 * std::log(120.0)).epsilon(1e-13));
    CHECK(t3_local(a.ms, 2, 1e-2, 1.0).t == doctest::Approx(1.9948).epsilon(5e-5));
    CHECK(t3_local(a.ms, 1, 1e-1, 1.0).t ==
          doctest::Approx(0.5 * std::log(10.0)).epsilon(1e-14));

    // delta = alpha collapses the estimate to zero (picking an abscissa
    // where alpha is inside the (0,1) tolerance range)
    double alpha2 = alpha_beta(a.ms, 2, 0.1).alpha;
    REQUIRE(alpha2 < 1.0);
    CHECK(t3_local(a.ms, 2, alpha2, 0.1).t == doctest::Approx(0.0));

    // alpha < delta flags the estimate invalid
    auto bad = t3_local(a.ms, 2, std::min(0.99, 1.5 * alpha2), 0.1);
    CHECK_FALSE(bad.valid);
    CHECK(bad.t == 0.0);

    CHECK_THROWS_AS(t3_local(a.ms, 2, 1.5, 0.5), DomainError);

    CHECK(t3_slope(a.ms, 2, 1.0) == doctest::Approx(std::log(10.0) / 2.4).epsilon(1e-13));
    CHECK(t3_slope(a.ms, 2, 1.0) == doctest::Approx(2.9542 - 1.9948).epsilon(5e-4));
    CHECK(t3_slope(a.ms, 1, 0.7) ==
          doctest::Approx(mat(a.ms, 0.7).t * std::log(10.0)).epsilon(1e-13));
}

TEST_CASE("t3 invariants: delta monotonicity, slope identity, k=1 closed form") {
    auto b = prepare("case_b");
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> xs(0.02, 0.98);
    for (int i = 0; i < 40; ++i) {
        double x = xs(rng);
        for (int k : {1, 2, 5, 10}) {
            double t2 = t3_local(b.ms, k, 1e-2, x).t;
            double t3 = t3_local(b.ms, k, 1e-3, x).t;
            double t4 = t3_local(b.ms, k, 1e-4, x).t;
            CHECK(t3 > t2);
            double slope = t3_slope(b.ms, k, x);
            CHECK(t3 - t2 == doctest::Approx(slope).epsilon(1e-12));
            CHECK(t4 - t3 == doctest::Approx(slope).epsilon(1e-12));
        }
        CHECK(t3_local(b.ms, 1, 1e-3, x).t ==
              doctest::Approx(mat(b.ms, x).t * std::log(1e3)).epsilon(1e-14));
    }
}

TEST_CASE("global suprema against tabulated values") {
    auto a = prepare("case_a");
    CHECK(global_sup(a.ms, a.region, Method::Asymptotic, 10, 1e-6).t_hat ==
          doctest::Approx(5.6971).epsilon(2e-5));
    CHECK(global_sup(a.ms, a.region, Method::Asymptotic, 1, 1e-1).t_hat ==
          doctest::Approx(1.1513).epsilon(2e-5));

    auto c = prepare("case_c");
    CHECK(global_sup(c.ms, c.region, Method::Asymptotic, 2, 1e-2).t_hat ==
          doctest::Approx(1.2467).epsilon(2e-5));

    // Case C mean action time is multimodal with equal peaks at 0, 1/2, 1
    auto g1 = global_sup(c.ms, c.region, Method::MAT);
    CHECK(g1.t_hat == doctest::Approx(0.3125).epsilon(1e-12));
    CHECK(g1.argmax_x == doctest::Approx(0.0));  // tie broken to the smallest x
    for (double x : {0.0, 0.5, 1.0})
        CHECK(mat(c.ms, x).t == doctest::Approx(g1.t_hat).epsilon(1e-12));
}

TEST_CASE("sup dominates random local evaluations") {
    auto b = prepare("case_b");
    auto g = global_sup(b.ms, b.region, Method::Asymptotic, 5, 1e-3);
    std::mt19937 rng(99);
    std::uniform_real_distribution<double> xs(1e-6, 1.0 - 1e-6);
    for (int i = 0; i < 1000; ++i) {
        double t = t3_local(b.ms, 5, 1e-3, xs(rng)).t;
        CHECK(g.t_hat >= t - 1e-12 * std::max(1.0, g.t_hat));
    }
}

TEST_CASE("degenerate inputs") {
    auto a = prepare("case_a");
    CHECK_THROWS_AS(alpha_beta(a.ms, 0, 0.5), DomainError);
    CHECK_THROWS_AS(factorial(21), DomainError);
    CHECK(factorial(10) == 3628800.0);
}
