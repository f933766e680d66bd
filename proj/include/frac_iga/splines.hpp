#pragma once

#include <array>
#include <span>
#include <utility>
#include <vector>

namespace frac_iga {

/// Highest supported spline degree; evaluation buffers are sized for it.
inline constexpr int kMaxDegree = 8;

/// Nonzero basis values over one knot span: functions first..first+count-1.
struct BasisSpan {
    int first = 0;
    int count = 0;
    std::array<double, kMaxDegree + 1> values{};
};

struct BasisSpanDerivatives {
    int first = 0;
    int count = 0;
    std::array<double, kMaxDegree + 1> values{};
    std::array<double, kMaxDegree + 1> derivatives{};
};

/// Open knot vector on [0,1] with its degree. Immutable after construction.
class KnotVector {
public:
    /// Validates the open-knot-vector invariants: non-decreasing entries in
    /// [0,1], degree+1 repeated knots at both ends, at least one basis function.
    KnotVector(std::vector<double> knots, int degree);

    int degree() const { return degree_; }
    const std::vector<double>& knots() const { return knots_; }
    /// Number of basis functions (l - p for a knot vector of size l+1).
    int basis_count() const { return static_cast<int>(knots_.size()) - degree_ - 1; }

    /// Knot span index i with knots[i] <= u < knots[i+1]; u = 1 maps to the
    /// last nonempty span so boundary evaluation is well defined.
    /// Throws std::domain_error for u outside [0,1].
    int find_span(double u) const;

    /// All degree+1 potentially nonzero basis values at u in one pass
    /// (Cox-de Boor, with 0/0 terms evaluating to 0).
    BasisSpan evaluate(double u) const;

    /// Values and first derivatives in one pass; one-sided at u = 0, 1.
    BasisSpanDerivatives evaluate_derivatives(double u) const;

    /// Single basis value B_{i,p}(u); a view into evaluate(). 0-based i.
    double basis(int i, double u) const;

    /// First derivative B'_{i,p}(u). 0-based i.
    double basis_derivative(int i, double u) const;

    /// Greville abscissae (one per basis function). Requires degree >= 1.
    std::vector<double> greville_abscissae() const;

private:
    std::vector<double> knots_;
    int degree_;
};

/// Control point in projective coordinates [w*x, w*y, w].
struct ProjectivePoint {
    double wx = 0.0;
    double wy = 0.0;
    double w = 1.0;
};

/// Inserts the knot ubar into kv, returning the refined knot vector and the
/// new projective control points. The represented curve is unchanged.
/// Throws std::invalid_argument if ubar is outside (0,1) or already present
/// at full multiplicity.
std::pair<KnotVector, std::vector<ProjectivePoint>> insert_knot(
    const KnotVector& kv, std::span<const ProjectivePoint> points, double ubar);

}  // namespace frac_iga
