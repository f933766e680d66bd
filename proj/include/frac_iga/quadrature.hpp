#pragma once

#include <vector>

#include "frac_iga/special_functions.hpp"

namespace frac_iga {

struct GaussRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

/// n-point Gauss-Legendre rule on [lo, hi]. Nodes are Legendre roots found by
/// Newton iteration from the standard asymptotic initial guesses; exact for
/// polynomials of degree <= 2n-1.
GaussRule gauss_legendre(int n, double lo, double hi);

/// Polar quadrature on the disk of radius R: Gauss-Legendre radially on
/// [0,R], uniform angles sigma_j = (cos(2*pi*j/m), sin(2*pi*j/m)), j = 1..m.
/// Offsets are xi_ij = r_i sigma_j with combined weights 2*pi*w_i*r_i/m.
class PolarQuadrature {
public:
    PolarQuadrature(GaussRule radial, int angular_count, double truncation_radius);

    const std::vector<double>& radial_nodes() const { return radial_.nodes; }
    const std::vector<double>& radial_weights() const { return radial_.weights; }
    int angular_count() const { return m_; }
    double truncation_radius() const { return radius_; }
    /// cos/sin of the j-th direction, j = 0..m-1 (angle 2*pi*(j+1)/m).
    double direction_x(int j) const { return cos_[j]; }
    double direction_y(int j) const { return sin_[j]; }
    double combined_weight(int i, int j) const;

private:
    GaussRule radial_;
    int m_;
    double radius_;
    std::vector<double> cos_, sin_;
};

/// Builds the polar rule with n radial and m angular points. Requires
/// n >= 1, m >= 3, R > 0.
PolarQuadrature polar_rule(int n, int m, double truncation_radius);

/// A = 2*pi * sum_i w_i / r_i^{1+2s}. Purely radial; independent of m.
double coefficient_A(const PolarQuadrature& rule, FractionalOrder s);

/// B = pi * sum_i w_i rho(r_i) r_i^{1-2s} - pi * window_moment(a, s).
/// Requires a <= R.
double coefficient_B(const PolarQuadrature& rule, FractionalOrder s, double window_a);

}  // namespace frac_iga
