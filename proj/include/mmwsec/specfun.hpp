#ifndef MMWSEC_SPECFUN_HPP
#define MMWSEC_SPECFUN_HPP

#include <functional>
#include <limits>
#include <vector>

namespace mmwsec {

struct QuadratureSettings {
    double rel_tol = 1e-8;
    double abs_tol = 1e-12;
    int max_subdivisions = 2000;
};

// Upper incomplete gamma Gamma(n, x) for integer shape n >= 1.
double upper_incomplete_gamma_int(int n, double x);

// Regularized version Q(n, x) = Gamma(n, x) / Gamma(n), in [0, 1].
double regularized_gamma_q_int(int n, double x);

// E1(x) = int_x^inf e^{-t}/t dt for x > 0 (the notation Ei(-x) maps to -E1(x)
// under the standard sign convention; this returns the positive integral).
double exp_integral_neg(double x);

// e^x * E1(x), stable for large x where the two factors over/underflow.
double exp_e1_scaled(double x);

// V(x) auxiliary: (1/ln 2) * sum_{j=0}^{m-1} G_j(1/x) / j!  with
// G_j(w) = int_0^inf t^j e^{-t} / (t + w) dt.  Equals
// (1/(m-1)!) int_0^inf log2(1+x y) y^{m-1} e^{-y} dy; m = 0 gives 0.
double v_aux(double x, int m);

// Gauss hypergeometric 2F1(a, b; c; z) for z <= 0, stable for large |z|.
// Requires b - a non-integer when z < -1 (the connection formula used there
// has poles at integer differences); all in-library call sites satisfy this.
double gauss_2f1_neg(double a, double b, double c, double z);

// Adaptive Gauss-Kronrod (G7/K15) quadrature.  `upper` may be
// +infinity (handled by a rational substitution).
double adaptive_quad(const std::function<double(double)>& f, double lower,
                     double upper, QuadratureSettings settings = {});

// Gauss-Laguerre nodes/weights for int_0^inf f(t) e^{-t} dt ~ sum w_i f(x_i).
struct GaussLaguerreRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};
GaussLaguerreRule gauss_laguerre(int n);

inline constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace mmwsec

#endif
