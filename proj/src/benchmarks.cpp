#include "frac_iga/benchmarks.hpp"

#include <chrono>
#include <cmath>
#include <stdexcept>

#include "frac_iga/solvers.hpp"

namespace frac_iga {

EigenPair eigen_pair(int mode, FractionalOrder s) {
    if (mode < 0) throw std::domain_error("eigen mode must be nonnegative");
    const double sv = s.value();
    double factorial = 1.0;
    for (int k = 2; k <= mode; ++k) factorial *= k;
    const double g = gamma(sv + mode + 1.0);
    EigenPair pair;
    pair.lambda = std::pow(2.0, 2.0 * sv) * g * g / (factorial * factorial);
    const double sign = (mode % 2 == 0) ? 1.0 : -1.0;
    pair.phi = [mode, sv, sign](Point2 x) {
        const double r2 = x.x * x.x + x.y * x.y;
        return sign * jacobi_p(mode, sv, 0.0, 2.0 * r2 - 1.0);
    };
    pair.exact = [phi = pair.phi, sv](Point2 x) {
        const double r2 = x.x * x.x + x.y * x.y;
        if (r2 >= 1.0) return 0.0;
        return std::pow(1.0 - r2, sv) * phi(x);
    };
    return pair;
}

double rmse(std::span<const double> numerical, std::span<const double> exact) {
    if (numerical.size() != exact.size()) {
        throw std::domain_error("rmse: length mismatch");
    }
    return rmse(numerical, exact, static_cast<int>(numerical.size()));
}

double rmse(std::span<const double> numerical, std::span<const double> exact, int total) {
    if (numerical.size() != exact.size()) {
        throw std::domain_error("rmse: length mismatch");
    }
    if (total <= 0) throw std::domain_error("rmse: nonpositive point count");
    double acc = 0.0;
    for (size_t k = 0; k < numerical.size(); ++k) {
        const double d = numerical[k] - exact[k];
        acc += d * d;
    }
    return std::sqrt(acc / total);
}

double fitted_slope(const std::vector<ConvergenceRecord>& records) {
    if (records.size() < 2) return 0.0;
    const double cutoff = 3.0 * records.back().error;
    std::vector<double> lx, ly;
    for (const auto& r : records) {
        if (r.error > cutoff) {
            lx.push_back(std::log(double(r.dof)));
            ly.push_back(std::log(r.error));
        }
    }
    if (lx.size() < 2) {
        // degenerate pre-saturation range; fall back to the first segment
        lx = {std::log(double(records[0].dof)), std::log(double(records[1].dof))};
        ly = {std::log(records[0].error), std::log(records[1].error)};
    }
    double mx = 0.0, my = 0.0;
    for (size_t i = 0; i < lx.size(); ++i) { mx += lx[i]; my += ly[i]; }
    mx /= lx.size();
    my /= lx.size();
    double sxy = 0.0, sxx = 0.0;
    for (size_t i = 0; i < lx.size(); ++i) {
        sxy += (lx[i] - mx) * (ly[i] - my);
        sxx += (lx[i] - mx) * (lx[i] - mx);
    }
    return sxy / sxx;
}

ConvergenceStudy convergence_study(int mode, const DiscretizationParams& params,
                                   int levels, int threads) {
    if (levels < 2) throw std::domain_error("convergence study needs at least 2 levels");
    const EigenPair pair = eigen_pair(mode, params.s);
    const NurbsSurface base = unit_disk();

    ConvergenceStudy study;
    for (int level = 1; level <= levels; ++level) {
        const auto t0 = std::chrono::steady_clock::now();
        const NurbsSurface surface = refine_dyadic(base, level);
        const CollocationSet points = collocation_points(surface);
        const OperatorPair ops = fractional_laplacian_matrix(surface, points, params, threads);
        const PoissonSolution sol = solve_poisson(
            ops, [&pair](Point2 x) { return pair.lambda * pair.phi(x); });

        std::vector<double> exact(points.count());
        for (int k = 0; k < points.count(); ++k) exact[k] = pair.exact(points.points[k]);

        ConvergenceRecord rec;
        rec.level = level;
        rec.dof = points.count();
        rec.interior_dof = static_cast<int>(points.interior.size());
        rec.error = rmse(sol.values, exact);
        rec.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        study.records.push_back(rec);
    }
    study.fitted_slope = fitted_slope(study.records);
    return study;
}

double heat_exact_origin(double t) {
    if (t < 0.0) throw std::domain_error("time must be nonnegative");
    if (t == 0.0) return 1.0;
    return 1.0 - 10.0 * std::sqrt(M_PI * t * t) * std::exp(100.0 * t * t) * erfc(10.0 * t);
}

}  // namespace frac_iga
