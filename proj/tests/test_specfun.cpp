#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "mmwsec/specfun.hpp"

using namespace mmwsec;

TEST_CASE("upper incomplete gamma basics") {
    CHECK(upper_incomplete_gamma_int(1, 0.0) == doctest::Approx(1.0));
    CHECK(upper_incomplete_gamma_int(1, std::log(2.0)) ==
          doctest::Approx(0.5).epsilon(1e-12));
    CHECK_THROWS(upper_incomplete_gamma_int(0, 1.0));
    CHECK_THROWS(upper_incomplete_gamma_int(3, -0.1));
}

TEST_CASE("upper incomplete gamma vs quadrature") {
    const double direct = adaptive_quad(
        [](double t) { return std::pow(t, 4) * std::exp(-t); }, 3.7, kInf);
    CHECK(upper_incomplete_gamma_int(5, 3.7) ==
          doctest::Approx(direct).epsilon(1e-10));
}

TEST_CASE("upper incomplete gamma recurrence and regularization") {
    for (int n = 1; n <= 50; n += 7) {
        for (double x : {0.0, 0.3, 2.0, 11.0, 47.0, 100.0}) {
            const double lhs = upper_incomplete_gamma_int(n + 1, x);
            const double rhs = n * upper_incomplete_gamma_int(n, x) +
                               std::pow(x, n) * std::exp(-x);
            CHECK(lhs == doctest::Approx(rhs).epsilon(1e-10));
            const double q = regularized_gamma_q_int(n, x);
            CHECK(q >= 0.0);
            CHECK(q <= 1.0);
            if (x > 0.0)  // complementary CDF decreases in x
                CHECK(regularized_gamma_q_int(n, x * 1.5) <= q + 1e-15);
        }
    }
}

TEST_CASE("exponential integral") {
    const double direct = adaptive_quad(
        [](double t) { return std::exp(-t) / t; }, 1.0, kInf);
    CHECK(exp_integral_neg(1.0) == doctest::Approx(direct).epsilon(1e-10));
    CHECK(exp_integral_neg(0.5) > exp_integral_neg(1.0));
    CHECK(exp_integral_neg(700.0) < 1e-300);
    CHECK_THROWS(exp_integral_neg(0.0));
    CHECK_THROWS(exp_integral_neg(-1.0));
}

TEST_CASE("scaled exponential integral") {
    for (double x : {0.1, 1.0, 5.0, 30.0}) {
        CHECK(exp_e1_scaled(x) ==
              doctest::Approx(std::exp(x) * exp_integral_neg(x)).epsilon(1e-10));
    }
    // asymptotic envelope 1/(x+1) < e^x E1(x) < 1/x
    for (double x : {1e3, 1e6, 1e12}) {
        CHECK(exp_e1_scaled(x) <= 1.0 / x);
        CHECK(exp_e1_scaled(x) >= 1.0 / (x + 1.0));
    }
}

namespace {

double v_aux_quadrature(double x, int m) {
    double lg = std::lgamma(m);
    return adaptive_quad(
        [&](double t) {
            return std::log2(1.0 + x * t) *
                   std::exp((m - 1) * std::log(t) - t - lg);
        },
        0.0, kInf);
}

}  // namespace

TEST_CASE("v_aux definition and oracle") {
    CHECK(v_aux(3.7, 0) == 0.0);
    CHECK(v_aux(1.0, 1) > 0.0);
    CHECK(std::isfinite(v_aux(1.0, 1)));
    CHECK_THROWS(v_aux(0.0, 1));
    CHECK_THROWS(v_aux(-2.0, 3));
    for (auto [x, m] : {std::pair{2.0, 3}, {0.5, 5}, {1e-4, 2}, {1e6, 2},
                        {40.0, 12}, {1e8, 20}}) {
        CHECK(v_aux(x, m) ==
              doctest::Approx(v_aux_quadrature(x, m)).epsilon(1e-7));
    }
}

namespace {

// Euler integral: 2F1(a,b;c;z) = B(b, c-b)^{-1} int_0^1 t^{b-1}(1-t)^{c-b-1}
// (1-zt)^{-a} dt, valid for c > b > 0.
double hyp2f1_euler(double a, double b, double c, double z) {
    const double norm =
        std::exp(std::lgamma(c) - std::lgamma(b) - std::lgamma(c - b));
    auto integrand = [&](double t) {
        return std::pow(t, b - 1.0) * std::pow(1.0 - t, c - b - 1.0) *
               std::pow(1.0 - z * t, -a);
    };
    // split off the O(1/|z|) boundary layer so the quadrature resolves it
    const double split = std::min(1.0, 100.0 / (1.0 - z));
    return norm * (adaptive_quad(integrand, 0.0, split) +
                   adaptive_quad(integrand, split, 1.0));
}

}  // namespace

TEST_CASE("gauss hypergeometric at nonpositive argument") {
    CHECK(gauss_2f1_neg(1.3, 0.4, 2.2, 0.0) == 1.0);
    CHECK(gauss_2f1_neg(1.0, 1.0, 2.0, -1.0) ==
          doctest::Approx(std::log(2.0)).epsilon(1e-12));
    CHECK(gauss_2f1_neg(3.0, 1.5, 9.5, -40.0) ==
          doctest::Approx(hyp2f1_euler(3.0, 1.5, 9.5, -40.0)).epsilon(1e-8));
    // argument-swap symmetry
    for (double z : {-0.3, -1.7, -25.0, -4000.0}) {
        CHECK(gauss_2f1_neg(2.25, 0.5, 7.5, z) ==
              doctest::Approx(gauss_2f1_neg(0.5, 2.25, 7.5, z))
                  .epsilon(1e-12));
    }
    // deep-negative argument against the Euler oracle
    for (double z : {-10.0, -1e3, -1e6}) {
        CHECK(gauss_2f1_neg(5.0, 0.5, 8.0, z) ==
              doctest::Approx(hyp2f1_euler(5.0, 0.5, 8.0, z)).epsilon(1e-8));
    }
    CHECK_THROWS(gauss_2f1_neg(1.0, 1.0, 0.0, -1.0));
    CHECK_THROWS(gauss_2f1_neg(1.0, 1.0, -3.0, -1.0));
}

TEST_CASE("adaptive quadrature") {
    CHECK(adaptive_quad([](double t) { return std::exp(-t); }, 0.0, kInf) ==
          doctest::Approx(1.0).epsilon(1e-10));
    CHECK(adaptive_quad([](double t) { return 1.0 / std::sqrt(t); }, 0.0,
                        1.0) == doctest::Approx(2.0).epsilon(1e-8));
    // linearity on smooth integrands
    auto f = [](double t) { return std::exp(-t) * std::cos(t); };
    auto g = [](double t) { return std::exp(-2.0 * t); };
    const double qf = adaptive_quad(f, 0.0, kInf);
    const double qg = adaptive_quad(g, 0.0, kInf);
    const double qc = adaptive_quad(
        [&](double t) { return 3.0 * f(t) - 2.0 * g(t); }, 0.0, kInf);
    CHECK(qc == doctest::Approx(3.0 * qf - 2.0 * qg).epsilon(1e-9));
}

TEST_CASE("leakage-kernel integral vs Gauss-Laguerre") {
    // int_b^inf y^{-(L_e-L_c)} (y-b)^{L_e+2/alpha-1} e^{-y} dy
    // with b=0.5, L_e=4, L_c=2, alpha=4; substitute t = y - b
    const double b = 0.5;
    const double p = 4.0 + 0.5 - 1.0;  // L_e + 2/alpha - 1
    const int nv = 2;                  // L_e - L_c
    const double direct = adaptive_quad(
        [&](double y) {
            return std::pow(y, -nv) * std::pow(y - b, p) * std::exp(-y);
        },
        b, kInf);
    const GaussLaguerreRule rule = gauss_laguerre(200);
    double gl = 0.0;
    for (size_t i = 0; i < rule.nodes.size(); ++i) {
        const double t = rule.nodes[i];
        gl += rule.weights[i] * std::pow(t, p) * std::pow(t + b, -nv);
    }
    gl *= std::exp(-b);
    CHECK(direct == doctest::Approx(gl).epsilon(1e-8));
}

TEST_CASE("Gauss-Laguerre rule moments") {
    const GaussLaguerreRule rule = gauss_laguerre(32);
    double m0 = 0.0, m1 = 0.0, m5 = 0.0;
    for (size_t i = 0; i < rule.nodes.size(); ++i) {
        m0 += rule.weights[i];
        m1 += rule.weights[i] * rule.nodes[i];
        m5 += rule.weights[i] * std::pow(rule.nodes[i], 5);
    }
    CHECK(m0 == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(m1 == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(m5 == doctest::Approx(120.0).epsilon(1e-11));
}
