#include "frac_iga/special_functions.hpp"

#include <cmath>

namespace frac_iga {

namespace {

// Lanczos coefficients, g = 7, 9 terms.
constexpr double kLanczos[9] = {
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
};

double gamma_lanczos(double x) {
    // valid for x >= 0.5
    const double g = 7.0;
    double a = kLanczos[0];
    double t = x + g - 0.5;
    for (int i = 1; i < 9; ++i) {
        a += kLanczos[i] / (x - 1.0 + i);
    }
    return std::sqrt(2.0 * M_PI) * std::pow(t, x - 0.5) * std::exp(-t) * a;
}

}  // namespace

double gamma(double x) {
    if (x <= 0.0 && x == std::floor(x)) {
        throw std::domain_error("gamma pole at non-positive integer");
    }
    if (x < 0.5) {
        // reflection: Gamma(x) Gamma(1-x) = pi / sin(pi x)
        return M_PI / (std::sin(M_PI * x) * gamma_lanczos(1.0 - x));
    }
    return gamma_lanczos(x);
}

double erfc(double x) { return std::erfc(x); }

double normalization_constant(FractionalOrder s) {
    const double sv = s.value();
    return std::pow(2.0, 2.0 * sv) * sv * gamma(1.0 + sv) / (M_PI * gamma(1.0 - sv));
}

double jacobi_p(int n, double alpha, double beta, double x) {
    if (n < 0) throw std::domain_error("jacobi_p: negative degree");
    if (alpha <= -1.0 || beta <= -1.0) {
        throw std::domain_error("jacobi_p requires alpha, beta > -1");
    }
    if (n == 0) return 1.0;
    double pm1 = 1.0;
    double p = 0.5 * (alpha - beta) + 0.5 * (alpha + beta + 2.0) * x;
    for (int k = 2; k <= n; ++k) {
        const double apb = alpha + beta;
        const double a1 = 2.0 * k * (k + apb) * (2.0 * k + apb - 2.0);
        const double a2 = (2.0 * k + apb - 1.0) * (alpha * alpha - beta * beta);
        const double a3 = (2.0 * k + apb - 1.0) * (2.0 * k + apb) * (2.0 * k + apb - 2.0);
        const double a4 = 2.0 * (k + alpha - 1.0) * (k + beta - 1.0) * (2.0 * k + apb);
        const double next = ((a2 + a3 * x) * p - a4 * pm1) / a1;
        pm1 = p;
        p = next;
    }
    return p;
}

double window_rho(double r, double a) {
    const double t = r / a;
    if (t >= 1.0) return 0.0;
    const double t4 = t * t * t * t;
    return 1.0 + t4 * (-35.0 + t * (84.0 + t * (-70.0 + t * 20.0)));
}

double window_moment(double a, FractionalOrder s) {
    const double sv = s.value();
    const double e = 2.0 - 2.0 * sv;
    return std::pow(a, e) * (1.0 / e - 35.0 / (e + 4.0) + 84.0 / (e + 5.0)
                             - 70.0 / (e + 6.0) + 20.0 / (e + 7.0));
}

}  // namespace frac_iga
