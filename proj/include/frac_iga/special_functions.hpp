#pragma once

#include <stdexcept>

namespace frac_iga {

/// Fractional order s of the operator (-Delta)^s, restricted to (0,1).
class FractionalOrder {
public:
    explicit FractionalOrder(double s) : s_(s) {
        if (!(s > 0.0 && s < 1.0)) {
            throw std::domain_error("fractional order must lie strictly in (0,1)");
        }
    }
    double value() const { return s_; }

private:
    double s_;
};

/// Gamma function on the real line, accurate to ~1e-12 relative on (0,30).
/// Uses a Lanczos approximation with reflection for arguments below 1/2.
/// Throws std::domain_error at the poles (non-positive integers).
double gamma(double x);

/// Complementary error function.
double erfc(double x);

/// Normalization constant of the 2D fractional Laplacian,
///   c_{s,2} = 2^{2s} Gamma(1+s) / (pi |Gamma(-s)|),
/// evaluated through the pole-free form 2^{2s} s Gamma(1+s) / (pi Gamma(1-s)).
double normalization_constant(FractionalOrder s);

/// Jacobi polynomial P_n^{(alpha,beta)}(x) by the three-term recurrence.
/// Requires alpha, beta > -1.
double jacobi_p(int n, double alpha, double beta, double x);

/// Window function used in the singularity subtraction: a degree-7 polynomial
/// in r/a that is 1 - O(r^4) at the origin and C^3 at the cutoff r = a,
/// identically zero for r >= a.
double window_rho(double r, double a);

/// Closed form of the radial moment integral
///   int_0^a rho(r) r^{1-2s} dr.
double window_moment(double a, FractionalOrder s);

}  // namespace frac_iga
