#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "frac_iga/splines.hpp"

namespace frac_iga {

struct Point2 {
    double x = 0.0;
    double y = 0.0;
};

inline Point2 operator+(Point2 a, Point2 b) { return {a.x + b.x, a.y + b.y}; }
inline Point2 operator-(Point2 a, Point2 b) { return {a.x - b.x, a.y - b.y}; }
inline Point2 operator*(double c, Point2 a) { return {c * a.x, c * a.y}; }
double norm(Point2 a);

/// 2x2 matrix [[a, b], [c, d]].
struct Mat2 {
    double a = 0.0, b = 0.0, c = 0.0, d = 0.0;
    double det() const { return a * d - b * c; }
    /// Solves M z = rhs (by Cramer's rule); caller checks det beforehand.
    Point2 solve(Point2 rhs) const;
};

enum class MembershipHint { none, disk_radius_1, square_half_width };

/// The (p+1)(q+1) potentially nonzero rational basis values at a parameter
/// point. Entry (a,b) of the local patch maps to global basis (iu0+a, iv0+b)
/// and is stored at index a*nv_local + b.
struct SurfaceBasis {
    int iu0 = 0, iv0 = 0;
    int nu_local = 0, nv_local = 0;
    std::array<double, (kMaxDegree + 1) * (kMaxDegree + 1)> values{};
};

struct SurfaceBasisGradient : SurfaceBasis {
    std::array<double, (kMaxDegree + 1) * (kMaxDegree + 1)> du{};
    std::array<double, (kMaxDegree + 1) * (kMaxDegree + 1)> dv{};
};

/// Bivariate NURBS surface mapping the parameter square [0,1]^2 onto a planar
/// domain. Control points and weights are stored row-major with the u index
/// major: entry (i,j) lives at i*control_count_v() + j. Immutable after
/// construction; all evaluations are pure and thread-safe.
class NurbsSurface {
public:
    NurbsSurface(KnotVector kv_u, KnotVector kv_v,
                 std::vector<Point2> control_points, std::vector<double> weights,
                 MembershipHint hint = MembershipHint::none, double half_width = 0.0);

    const KnotVector& knots_u() const { return kv_u_; }
    const KnotVector& knots_v() const { return kv_v_; }
    int degree_u() const { return kv_u_.degree(); }
    int degree_v() const { return kv_v_.degree(); }
    int control_count_u() const { return nu_; }
    int control_count_v() const { return nv_; }
    Point2 control_point(int i, int j) const { return points_[size_t(i) * nv_ + j]; }
    double weight(int i, int j) const { return weights_[size_t(i) * nv_ + j]; }
    MembershipHint membership_hint() const { return hint_; }
    double half_width() const { return half_width_; }

    /// Rational basis values at (u,v); they sum to 1.
    SurfaceBasis basis(double u, double v) const;

    /// Values plus partial derivatives (quotient rule).
    SurfaceBasisGradient basis_gradient(double u, double v) const;

    /// The map F from parameter space to physical space.
    Point2 map_to_physical(double u, double v) const;

    /// Jacobian of F: columns are dF/du and dF/dv.
    Mat2 jacobian(double u, double v) const;

    /// Gauss-Newton point inversion: finds (u,v) in [0,1]^2 with
    /// |F(u,v) - x| <= tol, starting from (0.5,0.5) with iterates clamped to
    /// the unit square. On stall (iteration budget, near-singular Jacobian)
    /// it restarts once from the best point of a 5x5 parameter grid.
    /// Returns nullopt when the point cannot be located.
    std::optional<Point2> inverse_map(Point2 x, double tol = 1e-10, int budget = 50) const;

    /// True iff x lies in the (closed) domain. Uses the analytic membership
    /// hint when present, otherwise inverse_map success.
    bool contains(Point2 x) const;

    /// Knot insertion in one direction; the mapped geometry is unchanged.
    NurbsSurface insert_knot_u(double ubar) const;
    NurbsSurface insert_knot_v(double vbar) const;

private:
    KnotVector kv_u_, kv_v_;
    int nu_, nv_;
    std::vector<Point2> points_;
    std::vector<double> weights_;
    MembershipHint hint_;
    double half_width_;
};

/// The exact single-patch biquadratic unit disk: 3x3 control net with corner
/// points on the circle, edge midpoints at the tangent intersections with
/// weight sqrt(2)/2, and the center at the origin.
NurbsSurface unit_disk();

/// Axis-aligned square [-hw, hw]^2 of degree (2,2) with control points at
/// scaled Greville positions, so F is exactly affine.
NurbsSurface square(double half_width);

/// Uniform dyadic refinement: inserts the interior knots j/2^level in both
/// directions (skipping knots already present).
NurbsSurface refine_dyadic(const NurbsSurface& s, int level);

nlohmann::json surface_to_json(const NurbsSurface& s);
NurbsSurface surface_from_json(const nlohmann::json& j);

}  // namespace frac_iga
