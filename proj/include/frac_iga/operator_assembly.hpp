#pragma once

#include <array>
#include <stdexcept>
#include <vector>

#include "frac_iga/linear_algebra.hpp"
#include "frac_iga/nurbs_geometry.hpp"
#include "frac_iga/quadrature.hpp"

namespace frac_iga {

/// Thrown when a point the membership test accepts cannot be located in the
/// parameter space during assembly.
class AssemblyError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Greville tensor-product collocation points in vec order (u index fastest),
/// split into the boundary set (extremal index in either direction) and the
/// interior set.
struct CollocationSet {
    std::vector<Point2> params;
    std::vector<Point2> points;
    std::vector<int> interior;
    std::vector<int> boundary;
    int count_u = 0;
    int count_v = 0;

    int count() const { return static_cast<int>(points.size()); }
};

/// Parameters of the discretized fractional Laplacian.
struct DiscretizationParams {
    FractionalOrder s;
    double window_a = 0.1;       // singularity-subtraction window size
    double stencil_h = 0.001;    // step of the fourth-order Laplacian stencil
    double truncation_R = 20.0;  // radial truncation of the quadrature
    int n_radial = 1000;
    int m_angular = 20;

    void validate() const {
        if (!(window_a > 0.0)) throw std::domain_error("window size must be positive");
        if (!(stencil_h > 0.0)) throw std::domain_error("stencil step must be positive");
        if (!(truncation_R > window_a)) throw std::domain_error("R must exceed the window size");
        if (n_radial < 1) throw std::domain_error("radial quadrature count must be >= 1");
        if (m_angular < 3) throw std::domain_error("angular quadrature count must be >= 3");
    }
};

/// Interpolation matrix M (sparse rows) and discrete fractional Laplacian L
/// (dense; boundary rows left zero until the solver imposes them).
struct OperatorPair {
    std::vector<SparseRow> interpolation;
    DenseMatrix laplacian;
    CollocationSet points;
};

CollocationSet collocation_points(const NurbsSurface& surface);

/// Row of basis values at the physical point x, vec-ordered columns. Points
/// outside the domain give an empty (zero) row: the solution extends by zero.
/// Throws AssemblyError if the membership test accepts x but inversion fails.
SparseRow basis_row(const NurbsSurface& surface, Point2 x);

std::vector<SparseRow> interpolation_matrix(const NurbsSurface& surface,
                                            const CollocationSet& points);

struct StencilPoint {
    Point2 point;
    double coefficient;
};

/// Evaluation points and coefficients of the fourth-order Laplacian stencil:
/// per axis (-1/12, 4/3, -5/2, 4/3, -1/12)/h^2 with the center terms merged.
std::array<StencilPoint, 9> stencil_points(Point2 x, double h);

/// Dense operator row at x: c_{s,2} (A r(x) - sum_ij w_ij r(x+xi_ij) + B Dh r),
/// with r(.) the basis row. Requires x inside the domain.
std::vector<double> fractional_laplacian_row(const NurbsSurface& surface, Point2 x,
                                             const DiscretizationParams& params,
                                             const PolarQuadrature& rule);

/// Assembles M and L over the collocation set. L rows are filled at interior
/// points only; boundary rows stay zero. Row-parallel with a fixed per-row
/// summation order, so the result is independent of the thread count.
/// threads = 0 picks FRAC_IGA_THREADS or the hardware concurrency.
OperatorPair fractional_laplacian_matrix(const NurbsSurface& surface,
                                         const CollocationSet& points,
                                         const DiscretizationParams& params,
                                         int threads = 0);

/// Resolves a requested thread count: explicit value, else the
/// FRAC_IGA_THREADS environment variable, else the hardware concurrency.
int resolve_thread_count(int requested);

}  // namespace frac_iga
