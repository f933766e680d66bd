#pragma once

#include <functional>
#include <span>
#include <vector>

#include "frac_iga/operator_assembly.hpp"

namespace frac_iga {

/// Eigenpair of the fractional Laplacian on the unit disk:
///   lambda_n = 2^{2s} Gamma(s+n+1)^2 / (n!)^2,
///   phi_n(x) = (-1)^n P_n^{(s,0)}(2|x|^2 - 1),
/// with exact solution (1-|x|^2)^s phi_n(x), extended by zero outside.
struct EigenPair {
    double lambda;
    std::function<double(Point2)> phi;
    std::function<double(Point2)> exact;
};

EigenPair eigen_pair(int mode, FractionalOrder s);

/// Root-mean-square error over matching vectors.
double rmse(std::span<const double> numerical, std::span<const double> exact);
double rmse(std::span<const double> numerical, std::span<const double> exact, int total);

struct ConvergenceRecord {
    int level = 0;
    int dof = 0;           // total collocation count
    int interior_dof = 0;  // interior collocation count (the paper counts these)
    double error = 0.0;
    double seconds = 0.0;
};

struct ConvergenceStudy {
    std::vector<ConvergenceRecord> records;
    double fitted_slope = 0.0;  // log error vs log dof over the pre-saturation range
};

/// Dyadically refines the unit disk, solves the eigen benchmark at each level
/// with f = lambda_n phi_n, and records the collocation RMSE against the
/// exact solution. The slope is fitted over the levels whose error exceeds
/// three times the final-level error.
ConvergenceStudy convergence_study(int mode, const DiscretizationParams& params,
                                   int levels, int threads = 0);

/// Least-squares slope of log(error) vs log(dof) over the pre-saturation
/// range (records with error > 3x the final error).
double fitted_slope(const std::vector<ConvergenceRecord>& records);

/// Exact center value of the fractional heat benchmark (m = 1, s = 1/2,
/// Gaussian data): u(0,t) = 1 - 10 sqrt(pi t^2) e^{100 t^2} erfc(10 t).
double heat_exact_origin(double t);

}  // namespace frac_iga
