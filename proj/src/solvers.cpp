#include "frac_iga/solvers.hpp"

#include <cmath>

namespace frac_iga {

namespace {

DenseMatrix densify_rows(const std::vector<SparseRow>& rows, int cols) {
    DenseMatrix out(static_cast<int>(rows.size()), cols);
    for (size_t i = 0; i < rows.size(); ++i) {
        for (size_t k = 0; k < rows[i].cols.size(); ++k) {
            out(static_cast<int>(i), rows[i].cols[k]) = rows[i].vals[k];
        }
    }
    return out;
}

// signed power |u|^{m-1} u, matching the porous-medium nonlinearity
double signed_pow(double u, double m) {
    if (m == 1.0) return u;
    return std::copysign(std::pow(std::abs(u), m), u);
}

}  // namespace

PoissonSolution solve_poisson(const OperatorPair& ops,
                              const std::function<double(Point2)>& f) {
    const int n = ops.points.count();
    std::vector<double> rhs(n);
    for (int k = 0; k < n; ++k) rhs[k] = f(ops.points.points[k]);
    for (int k : ops.points.boundary) rhs[k] = 0.0;

    DenseMatrix system = ops.laplacian;
    for (int k : ops.points.boundary) {
        auto row = system.row(k);
        std::fill(row.begin(), row.end(), 0.0);
        const SparseRow& m_row = ops.interpolation[k];
        for (size_t j = 0; j < m_row.cols.size(); ++j) row[m_row.cols[j]] = m_row.vals[j];
    }

    PoissonSolution sol;
    sol.coefficients = lu_solve(system, rhs);
    sol.values = sparse_matvec(ops.interpolation, sol.coefficients);

    const std::vector<double> applied = system.matvec(sol.coefficients);
    double num = 0.0, den = 0.0;
    for (int k = 0; k < n; ++k) {
        num += (applied[k] - rhs[k]) * (applied[k] - rhs[k]);
        den += rhs[k] * rhs[k];
    }
    sol.residual = den > 0.0 ? std::sqrt(num / den) : std::sqrt(num);
    return sol;
}

PoissonSolution solve_poisson(const NurbsSurface& surface,
                              const std::function<double(Point2)>& f,
                              const DiscretizationParams& params, int threads) {
    const CollocationSet points = collocation_points(surface);
    const OperatorPair ops = fractional_laplacian_matrix(surface, points, params, threads);
    return solve_poisson(ops, f);
}

InteriorOperators::InteriorOperators(const OperatorPair& ops)
    : laplacian_(static_cast<int>(ops.points.interior.size()),
                 static_cast<int>(ops.points.interior.size())),
      interp_lu_([&ops]() {
          const auto& interior = ops.points.interior;
          const int ni = static_cast<int>(interior.size());
          DenseMatrix m_star(ni, ni);
          std::vector<int> col_of(ops.points.count(), -1);
          for (int c = 0; c < ni; ++c) col_of[interior[c]] = c;
          for (int r = 0; r < ni; ++r) {
              const SparseRow& row = ops.interpolation[interior[r]];
              for (size_t k = 0; k < row.cols.size(); ++k) {
                  const int c = col_of[row.cols[k]];
                  if (c >= 0) m_star(r, c) = row.vals[k];
              }
          }
          return LuFactorization(std::move(m_star));
      }()) {
    const auto& interior = ops.points.interior;
    const int ni = static_cast<int>(interior.size());
    std::vector<int> col_of(ops.points.count(), -1);
    for (int c = 0; c < ni; ++c) col_of[interior[c]] = c;
    for (int r = 0; r < ni; ++r) {
        const auto src = ops.laplacian.row(interior[r]);
        for (int c = 0; c < ni; ++c) laplacian_(r, c) = src[interior[c]];
    }
}

std::vector<double> InteriorOperators::coefficients(std::span<const double> values) const {
    return interp_lu_.solve(values);
}

std::vector<double> InteriorOperators::apply(std::span<const double> values) const {
    return laplacian_.matvec(interp_lu_.solve(values));
}

PorousState porous_step(const PorousState& state, const InteriorOperators& ops) {
    const size_t n = state.u_curr.size();
    const double m = state.m_exp;
    std::vector<double> lin(n), power(n);
    for (size_t i = 0; i < n; ++i) {
        const double u = state.u_curr[i];
        const double factor = (m == 1.0) ? 1.0 : std::pow(std::abs(u), m - 1.0);
        lin[i] = factor * (u - state.u_prev[i]);
        power[i] = signed_pow(u, m);
    }
    const std::vector<double> k_lin = ops.apply(lin);
    const std::vector<double> k_pow = ops.apply(power);

    PorousState next;
    next.dt = state.dt;
    next.m_exp = state.m_exp;
    next.step = state.step + 1;
    next.u_prev = state.u_curr;
    next.u_curr.resize(n);
    for (size_t i = 0; i < n; ++i) {
        next.u_curr[i] = state.u_curr[i] - 0.5 * m * state.dt * k_lin[i] - state.dt * k_pow[i];
    }
    return next;
}

PorousResult simulate_porous(const NurbsSurface& surface, const OperatorPair& ops,
                             const std::function<double(Point2)>& f0, double m_exp,
                             double dt, int n_steps, const std::vector<Point2>& probes) {
    if (!(m_exp >= 1.0)) throw std::domain_error("porous exponent must be >= 1");
    if (!(dt > 0.0)) throw std::domain_error("time step must be positive");
    if (n_steps < 0) throw std::domain_error("negative step count");

    const auto& interior = ops.points.interior;
    const int ni = static_cast<int>(interior.size());
    const InteriorOperators restricted(ops);

    // probe interpolation rows, restricted to interior columns (boundary
    // coefficients are zero under the exterior condition)
    std::vector<int> col_of(ops.points.count(), -1);
    for (int c = 0; c < ni; ++c) col_of[interior[c]] = c;
    std::vector<SparseRow> probe_rows;
    for (const Point2& p : probes) {
        if (!surface.contains(p)) {
            throw std::domain_error("probe point lies outside the domain");
        }
        const SparseRow full = basis_row(surface, p);
        SparseRow restricted_row;
        for (size_t k = 0; k < full.cols.size(); ++k) {
            const int c = col_of[full.cols[k]];
            if (c >= 0) {
                restricted_row.cols.push_back(c);
                restricted_row.vals.push_back(full.vals[k]);
            }
        }
        probe_rows.push_back(std::move(restricted_row));
    }

    PorousState state;
    state.dt = dt;
    state.m_exp = m_exp;
    state.u_prev.assign(ni, 0.0);
    state.u_curr.resize(ni);
    for (int i = 0; i < ni; ++i) state.u_curr[i] = f0(ops.points.points[interior[i]]);

    PorousResult result;
    result.trajectories.resize(probes.size());
    result.times.push_back(0.0);
    // the initial field is known exactly; record f0 at the probes directly
    for (size_t p = 0; p < probes.size(); ++p) {
        result.trajectories[p].push_back(f0(probes[p]));
    }

    for (int step = 0; step < n_steps; ++step) {
        state = porous_step(state, restricted);
        for (double v : state.u_curr) {
            if (!(std::abs(v) <= 1e3)) {
                throw StabilityError("porous simulation diverged at step " +
                                     std::to_string(step + 1));
            }
        }
        result.times.push_back((state.step - 1) * dt);
        const std::vector<double> coeffs = restricted.coefficients(state.u_curr);
        for (size_t p = 0; p < probes.size(); ++p) {
            result.trajectories[p].push_back(probe_rows[p].dot(coeffs));
        }
    }

    result.final_interior = state.u_curr;
    result.interior_points.reserve(ni);
    for (int i = 0; i < ni; ++i) result.interior_points.push_back(ops.points.points[interior[i]]);
    return result;
}

PorousResult simulate_porous(const NurbsSurface& surface,
                             const std::function<double(Point2)>& f0, double m_exp,
                             const DiscretizationParams& params, double dt, int n_steps,
                             const std::vector<Point2>& probes, int threads) {
    const CollocationSet points = collocation_points(surface);
    const OperatorPair ops = fractional_laplacian_matrix(surface, points, params, threads);
    return simulate_porous(surface, ops, f0, m_exp, dt, n_steps, probes);
}

}  // namespace frac_iga
