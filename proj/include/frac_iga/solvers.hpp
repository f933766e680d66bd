#pragma once

#include <functional>
#include <vector>

#include "frac_iga/operator_assembly.hpp"

namespace frac_iga {

/// Thrown when a time integration blows up.
class StabilityError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct PoissonSolution {
    std::vector<double> values;        // M c, at all collocation points (vec order)
    std::vector<double> coefficients;  // c
    double residual = 0.0;             // relative residual of the linear solve
};

/// Fractional Poisson solve with homogeneous exterior condition: samples f,
/// zeroes it on the boundary set, overwrites the boundary rows of L with the
/// matching rows of M, solves L c = f, and returns M c.
PoissonSolution solve_poisson(const OperatorPair& ops,
                              const std::function<double(Point2)>& f);

/// Convenience overload that assembles the operators first.
PoissonSolution solve_poisson(const NurbsSurface& surface,
                              const std::function<double(Point2)>& f,
                              const DiscretizationParams& params, int threads = 0);

/// Interior restrictions M* = M[I_L,I_L] and L* = L[I_L,I_L], with M*
/// factorized once. Applies K v = L* (M*^{-1} v).
class InteriorOperators {
public:
    explicit InteriorOperators(const OperatorPair& ops);

    int size() const { return laplacian_.rows(); }
    /// M*^{-1} v: interior coefficients from interior collocation values.
    std::vector<double> coefficients(std::span<const double> values) const;
    /// L* M*^{-1} v.
    std::vector<double> apply(std::span<const double> values) const;

private:
    DenseMatrix laplacian_;
    LuFactorization interp_lu_;
};

/// State of the linearized Crank-Nicolson stepper for the porous-medium
/// equation: interior collocation values at the current and previous step.
struct PorousState {
    std::vector<double> u_prev;
    std::vector<double> u_curr;
    int step = 1;  // time t = (step-1)*dt
    double dt = 1e-4;
    double m_exp = 1.0;
};

/// One linearized Crank-Nicolson step:
///   u^{n+1} = u^n - (m dt/2) K(u^{m-1} (u^n - u^{n-1})) - dt K(u^m),
/// with K = L* M*^{-1}. The first step runs from u_prev = 0.
PorousState porous_step(const PorousState& state, const InteriorOperators& ops);

struct PorousResult {
    std::vector<double> times;                      // n_steps + 1 entries
    std::vector<std::vector<double>> trajectories;  // [probe][step]
    std::vector<double> final_interior;             // interior field after the last step
    std::vector<Point2> interior_points;
};

/// Runs n_steps of the porous stepper from u = f0 at the interior collocation
/// points, recording probe values each step by interpolation. Aborts with
/// StabilityError if any value exceeds 1e3 in magnitude.
PorousResult simulate_porous(const NurbsSurface& surface,
                             const std::function<double(Point2)>& f0, double m_exp,
                             const DiscretizationParams& params, double dt, int n_steps,
                             const std::vector<Point2>& probes, int threads = 0);

/// As above with preassembled operators.
PorousResult simulate_porous(const NurbsSurface& surface, const OperatorPair& ops,
                             const std::function<double(Point2)>& f0, double m_exp,
                             double dt, int n_steps, const std::vector<Point2>& probes);

}  // namespace frac_iga
