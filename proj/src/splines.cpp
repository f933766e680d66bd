#include "frac_iga/splines.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace frac_iga {

KnotVector::KnotVector(std::vector<double> knots, int degree)
    : knots_(std::move(knots)), degree_(degree) {
    if (degree_ < 0 || degree_ > kMaxDegree) {
        throw std::invalid_argument("knot vector degree out of supported range");
    }
    const int l = static_cast<int>(knots_.size()) - 1;
    if (l - degree_ < 1) {
        throw std::invalid_argument("knot vector too short for its degree");
    }
    if (!std::is_sorted(knots_.begin(), knots_.end())) {
        throw std::invalid_argument("knots must be non-decreasing");
    }
    for (int i = 0; i <= degree_; ++i) {
        if (knots_[i] != 0.0 || knots_[l - i] != 1.0) {
            throw std::invalid_argument("knot vector must be open on [0,1]");
        }
    }
}

int KnotVector::find_span(double u) const {
    if (!(u >= 0.0 && u <= 1.0)) {
        throw std::domain_error("parameter outside [0,1]");
    }
    const int last = static_cast<int>(knots_.size()) - degree_ - 2;
    if (u >= 1.0) {
        int i = last;
        while (knots_[i] == knots_[i + 1]) --i;
        return i;
    }
    auto it = std::upper_bound(knots_.begin(), knots_.end(), u);
    int span = static_cast<int>(it - knots_.begin()) - 1;
    return std::clamp(span, degree_, last);
}

BasisSpan KnotVector::evaluate(double u) const {
    const int span = find_span(u);
    BasisSpan out;
    out.first = span - degree_;
    out.count = degree_ + 1;
    double left[kMaxDegree + 1];
    double right[kMaxDegree + 1];
    out.values[0] = 1.0;
    for (int j = 1; j <= degree_; ++j) {
        left[j] = u - knots_[span + 1 - j];
        right[j] = knots_[span + j] - u;
        double saved = 0.0;
        for (int r = 0; r < j; ++r) {
            const double tmp = out.values[r] / (right[r + 1] + left[j - r]);
            out.values[r] = saved + right[r + 1] * tmp;
            saved = left[j - r] * tmp;
        }
        out.values[j] = saved;
    }
    return out;
}

BasisSpanDerivatives KnotVector::evaluate_derivatives(double u) const {
    const int p = degree_;
    const int span = find_span(u);
    BasisSpanDerivatives out;
    out.first = span - p;
    out.count = p + 1;

    const BasisSpan vals = evaluate(u);
    out.values = vals.values;
    if (p == 0) return out;

    // degree p-1 values on the same span: B_{span-p+1..span, p-1}
    double low[kMaxDegree + 1];
    double left[kMaxDegree + 1];
    double right[kMaxDegree + 1];
    low[0] = 1.0;
    for (int j = 1; j <= p - 1; ++j) {
        left[j] = u - knots_[span + 1 - j];
        right[j] = knots_[span + j] - u;
        double saved = 0.0;
        for (int r = 0; r < j; ++r) {
            const double tmp = low[r] / (right[r + 1] + left[j - r]);
            low[r] = saved + right[r + 1] * tmp;
            saved = left[j - r] * tmp;
        }
        low[j] = saved;
    }

    // B'_{i,p} = p/(u_{i+p}-u_i) B_{i,p-1} - p/(u_{i+p+1}-u_{i+1}) B_{i+1,p-1}
    for (int k = 0; k <= p; ++k) {
        const int i = out.first + k;
        double d = 0.0;
        const double den1 = knots_[i + p] - knots_[i];
        if (den1 > 0.0 && k >= 1) d += p / den1 * low[k - 1];
        const double den2 = knots_[i + p + 1] - knots_[i + 1];
        if (den2 > 0.0 && k <= p - 1) d -= p / den2 * low[k];
        out.derivatives[k] = d;
    }
    return out;
}

double KnotVector::basis(int i, double u) const {
    if (i < 0 || i >= basis_count()) {
        throw std::domain_error("basis index out of range");
    }
    const BasisSpan s = evaluate(u);
    const int k = i - s.first;
    return (k >= 0 && k < s.count) ? s.values[k] : 0.0;
}

double KnotVector::basis_derivative(int i, double u) const {
    if (i < 0 || i >= basis_count()) {
        throw std::domain_error("basis index out of range");
    }
    const BasisSpanDerivatives s = evaluate_derivatives(u);
    const int k = i - s.first;
    return (k >= 0 && k < s.count) ? s.derivatives[k] : 0.0;
}

std::vector<double> KnotVector::greville_abscissae() const {
    if (degree_ < 1) {
        throw std::domain_error("Greville abscissae need degree >= 1");
    }
    std::vector<double> out(basis_count());
    for (int i = 0; i < basis_count(); ++i) {
        out[i] = std::accumulate(knots_.begin() + i + 1,
                                 knots_.begin() + i + 1 + degree_, 0.0) / degree_;
    }
    return out;
}

std::pair<KnotVector, std::vector<ProjectivePoint>> insert_knot(
    const KnotVector& kv, std::span<const ProjectivePoint> points, double ubar) {
    if (!(ubar > 0.0 && ubar < 1.0)) {
        throw std::invalid_argument("knot insertion requires ubar in (0,1)");
    }
    const auto& U = kv.knots();
    const int p = kv.degree();
    if (static_cast<int>(points.size()) != kv.basis_count()) {
        throw std::invalid_argument("control point count does not match knot vector");
    }
    if (std::count(U.begin(), U.end(), ubar) >= p) {
        throw std::invalid_argument("knot already present at full multiplicity");
    }

    const int k = kv.find_span(ubar);
    std::vector<double> newknots(U);
    newknots.insert(std::upper_bound(newknots.begin(), newknots.end(), ubar), ubar);

    const int nb = kv.basis_count();
    std::vector<ProjectivePoint> out(nb + 1);
    for (int i = 0; i < nb + 1; ++i) {
        double alpha;
        if (i <= k - p) {
            alpha = 1.0;
        } else if (i <= k) {
            alpha = (ubar - U[i]) / (U[i + p] - U[i]);
        } else {
            alpha = 0.0;
        }
        const ProjectivePoint a = (alpha != 0.0) ? points[i] : ProjectivePoint{};
        const ProjectivePoint b = (alpha != 1.0) ? points[i - 1] : ProjectivePoint{};
        out[i] = {alpha * a.wx + (1.0 - alpha) * b.wx,
                  alpha * a.wy + (1.0 - alpha) * b.wy,
                  alpha * a.w + (1.0 - alpha) * b.w};
    }
    return {KnotVector(std::move(newknots), p), std::move(out)};
}

}  // namespace frac_iga
