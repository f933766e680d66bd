#include "frac_iga/nurbs_geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace frac_iga {

namespace {

constexpr double kMembershipTol = 1e-12;

bool param_in_unit_square(double u, double v) {
    return u >= 0.0 && u <= 1.0 && v >= 0.0 && v <= 1.0;
}

}  // namespace

double norm(Point2 a) { return std::hypot(a.x, a.y); }

Point2 Mat2::solve(Point2 rhs) const {
    const double inv = 1.0 / det();
    return {inv * (d * rhs.x - b * rhs.y), inv * (a * rhs.y - c * rhs.x)};
}

NurbsSurface::NurbsSurface(KnotVector kv_u, KnotVector kv_v,
                           std::vector<Point2> control_points, std::vector<double> weights,
                           MembershipHint hint, double half_width)
    : kv_u_(std::move(kv_u)), kv_v_(std::move(kv_v)),
      nu_(kv_u_.basis_count()), nv_(kv_v_.basis_count()),
      points_(std::move(control_points)), weights_(std::move(weights)),
      hint_(hint), half_width_(half_width) {
    if (points_.size() != size_t(nu_) * nv_ || weights_.size() != points_.size()) {
        throw std::invalid_argument("control net size does not match knot vectors");
    }
    for (double w : weights_) {
        if (!(w > 0.0)) throw std::invalid_argument("weights must be strictly positive");
    }
    if (hint_ == MembershipHint::square_half_width && !(half_width_ > 0.0)) {
        throw std::invalid_argument("square membership hint needs a positive half width");
    }
}

SurfaceBasis NurbsSurface::basis(double u, double v) const {
    if (!param_in_unit_square(u, v)) {
        throw std::domain_error("parameter outside the unit square");
    }
    const BasisSpan bu = kv_u_.evaluate(u);
    const BasisSpan bv = kv_v_.evaluate(v);
    SurfaceBasis out;
    out.iu0 = bu.first;
    out.iv0 = bv.first;
    out.nu_local = bu.count;
    out.nv_local = bv.count;
    double denom = 0.0;
    for (int a = 0; a < bu.count; ++a) {
        for (int b = 0; b < bv.count; ++b) {
            const double w = weights_[size_t(bu.first + a) * nv_ + (bv.first + b)];
            const double t = w * bu.values[a] * bv.values[b];
            out.values[a * bv.count + b] = t;
            denom += t;
        }
    }
    const double inv = 1.0 / denom;
    for (int k = 0; k < bu.count * bv.count; ++k) out.values[k] *= inv;
    return out;
}

SurfaceBasisGradient NurbsSurface::basis_gradient(double u, double v) const {
    if (!param_in_unit_square(u, v)) {
        throw std::domain_error("parameter outside the unit square");
    }
    const BasisSpanDerivatives bu = kv_u_.evaluate_derivatives(u);
    const BasisSpanDerivatives bv = kv_v_.evaluate_derivatives(v);
    SurfaceBasisGradient out;
    out.iu0 = bu.first;
    out.iv0 = bv.first;
    out.nu_local = bu.count;
    out.nv_local = bv.count;
    double s = 0.0, su = 0.0, sv = 0.0;
    for (int a = 0; a < bu.count; ++a) {
        for (int b = 0; b < bv.count; ++b) {
            const int k = a * bv.count + b;
            const double w = weights_[size_t(bu.first + a) * nv_ + (bv.first + b)];
            const double wbb = w * bu.values[a] * bv.values[b];
            const double wdb = w * bu.derivatives[a] * bv.values[b];
            const double wbd = w * bu.values[a] * bv.derivatives[b];
            out.values[k] = wbb;
            out.du[k] = wdb;
            out.dv[k] = wbd;
            s += wbb;
            su += wdb;
            sv += wbd;
        }
    }
    const double inv = 1.0 / s;
    const double inv2 = inv * inv;
    for (int k = 0; k < bu.count * bv.count; ++k) {
        const double n = out.values[k];
        out.du[k] = out.du[k] * inv - n * su * inv2;
        out.dv[k] = out.dv[k] * inv - n * sv * inv2;
        out.values[k] = n * inv;
    }
    return out;
}

Point2 NurbsSurface::map_to_physical(double u, double v) const {
    const SurfaceBasis nb = basis(u, v);
    Point2 out{};
    for (int a = 0; a < nb.nu_local; ++a) {
        for (int b = 0; b < nb.nv_local; ++b) {
            const Point2 p = points_[size_t(nb.iu0 + a) * nv_ + (nb.iv0 + b)];
            const double n = nb.values[a * nb.nv_local + b];
            out.x += n * p.x;
            out.y += n * p.y;
        }
    }
    return out;
}

Mat2 NurbsSurface::jacobian(double u, double v) const {
    const SurfaceBasisGradient g = basis_gradient(u, v);
    Mat2 j{};
    for (int a = 0; a < g.nu_local; ++a) {
        for (int b = 0; b < g.nv_local; ++b) {
            const int k = a * g.nv_local + b;
            const Point2 p = points_[size_t(g.iu0 + a) * nv_ + (g.iv0 + b)];
            j.a += g.du[k] * p.x;
            j.b += g.dv[k] * p.x;
            j.c += g.du[k] * p.y;
            j.d += g.dv[k] * p.y;
        }
    }
    return j;
}

std::optional<Point2> NurbsSurface::inverse_map(Point2 x, double tol, int budget) const {
    if (!(tol > 0.0)) throw std::domain_error("inverse_map: tolerance must be positive");
    Point2 uv{0.5, 0.5};
    for (int attempt = 0; attempt < 2; ++attempt) {
        if (attempt == 1) {
            // restart from the best of a coarse 5x5 parameter grid
            static constexpr double grid[5] = {0.1, 0.3, 0.5, 0.7, 0.9};
            double best = std::numeric_limits<double>::infinity();
            for (double gu : grid) {
                for (double gv : grid) {
                    const double d = norm(map_to_physical(gu, gv) - x);
                    if (d < best) {
                        best = d;
                        uv = {gu, gv};
                    }
                }
            }
        }
        for (int it = 0; it < budget; ++it) {
            const Point2 r = map_to_physical(uv.x, uv.y) - x;
            if (norm(r) <= tol) return uv;
            const Mat2 j = jacobian(uv.x, uv.y);
            if (std::abs(j.det()) < 1e-14) break;
            const Point2 d = j.solve(r);
            uv.x = std::clamp(uv.x - d.x, 0.0, 1.0);
            uv.y = std::clamp(uv.y - d.y, 0.0, 1.0);
        }
        if (norm(map_to_physical(uv.x, uv.y) - x) <= tol) return uv;
    }
    return std::nullopt;
}

bool NurbsSurface::contains(Point2 x) const {
    switch (hint_) {
        case MembershipHint::disk_radius_1:
            return x.x * x.x + x.y * x.y <= 1.0 + kMembershipTol;
        case MembershipHint::square_half_width:
            return std::max(std::abs(x.x), std::abs(x.y)) <= half_width_ + kMembershipTol;
        case MembershipHint::none:
            return inverse_map(x).has_value();
    }
    return false;
}

namespace {

// Splits the control net into projective curves along one direction, inserts
// the knot into each, and reassembles.
NurbsSurface insert_direction(const NurbsSurface& s, double ubar, bool u_direction) {
    const int nu = s.control_count_u();
    const int nv = s.control_count_v();
    const KnotVector& kv = u_direction ? s.knots_u() : s.knots_v();
    const int n_lines = u_direction ? nv : nu;
    const int n_pts = u_direction ? nu : nv;

    KnotVector new_kv = kv;
    std::vector<std::vector<ProjectivePoint>> new_lines(n_lines);
    for (int line = 0; line < n_lines; ++line) {
        std::vector<ProjectivePoint> pts(n_pts);
        for (int k = 0; k < n_pts; ++k) {
            const int i = u_direction ? k : line;
            const int j = u_direction ? line : k;
            const Point2 p = s.control_point(i, j);
            const double w = s.weight(i, j);
            pts[k] = {w * p.x, w * p.y, w};
        }
        auto [kv2, out] = insert_knot(kv, pts, ubar);
        new_kv = std::move(kv2);
        new_lines[line] = std::move(out);
    }

    const int new_n = n_pts + 1;
    const int new_nu = u_direction ? new_n : nu;
    const int new_nv = u_direction ? nv : new_n;
    std::vector<Point2> points(size_t(new_nu) * new_nv);
    std::vector<double> weights(points.size());
    for (int line = 0; line < n_lines; ++line) {
        for (int k = 0; k < new_n; ++k) {
            const int i = u_direction ? k : line;
            const int j = u_direction ? line : k;
            const ProjectivePoint& pp = new_lines[line][k];
            points[size_t(i) * new_nv + j] = {pp.wx / pp.w, pp.wy / pp.w};
            weights[size_t(i) * new_nv + j] = pp.w;
        }
    }
    return u_direction
               ? NurbsSurface(std::move(new_kv), s.knots_v(), std::move(points),
                              std::move(weights), s.membership_hint(), s.half_width())
               : NurbsSurface(s.knots_u(), std::move(new_kv), std::move(points),
                              std::move(weights), s.membership_hint(), s.half_width());
}

}  // namespace

NurbsSurface NurbsSurface::insert_knot_u(double ubar) const {
    return insert_direction(*this, ubar, true);
}

NurbsSurface NurbsSurface::insert_knot_v(double vbar) const {
    return insert_direction(*this, vbar, false);
}

NurbsSurface unit_disk() {
    const double c = std::sqrt(2.0) / 2.0;
    const double s2 = std::sqrt(2.0);
    KnotVector kv({0, 0, 0, 1, 1, 1}, 2);
    // index (i,j): i along u, j along v
    std::vector<Point2> pts = {
        {-c, -c}, {-s2, 0.0}, {-c, c},
        {0.0, -s2}, {0.0, 0.0}, {0.0, s2},
        {c, -c}, {s2, 0.0}, {c, c},
    };
    std::vector<double> w = {1.0, c, 1.0, c, 1.0, c, 1.0, c, 1.0};
    return NurbsSurface(kv, kv, std::move(pts), std::move(w),
                        MembershipHint::disk_radius_1);
}

NurbsSurface square(double half_width) {
    if (!(half_width > 0.0)) throw std::domain_error("square: half width must be positive");
    KnotVector kv({0, 0, 0, 1, 1, 1}, 2);
    const std::vector<double> g = kv.greville_abscissae();
    std::vector<Point2> pts(9);
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            pts[size_t(i) * 3 + j] = {(2.0 * g[i] - 1.0) * half_width,
                                      (2.0 * g[j] - 1.0) * half_width};
        }
    }
    return NurbsSurface(kv, kv, std::move(pts), std::vector<double>(9, 1.0),
                        MembershipHint::square_half_width, half_width);
}

NurbsSurface refine_dyadic(const NurbsSurface& s, int level) {
    if (level < 0) throw std::domain_error("refinement level must be nonnegative");
    NurbsSurface out = s;
    const int denom = 1 << level;
    for (int j = 1; j < denom; ++j) {
        const double knot = double(j) / denom;
        const auto& ku = out.knots_u().knots();
        if (std::find(ku.begin(), ku.end(), knot) == ku.end()) {
            out = out.insert_knot_u(knot);
        }
        const auto& kvv = out.knots_v().knots();
        if (std::find(kvv.begin(), kvv.end(), knot) == kvv.end()) {
            out = out.insert_knot_v(knot);
        }
    }
    return out;
}

namespace {

std::string hint_name(MembershipHint h) {
    switch (h) {
        case MembershipHint::disk_radius_1: return "disk-radius-1";
        case MembershipHint::square_half_width: return "square-halfwidth";
        case MembershipHint::none: return "none";
    }
    return "none";
}

MembershipHint hint_from_name(const std::string& name) {
    if (name == "disk-radius-1") return MembershipHint::disk_radius_1;
    if (name == "square-halfwidth") return MembershipHint::square_half_width;
    if (name == "none") return MembershipHint::none;
    throw std::invalid_argument("unknown membership hint: " + name);
}

}  // namespace

nlohmann::json surface_to_json(const NurbsSurface& s) {
    nlohmann::json j;
    j["degrees"] = {s.degree_u(), s.degree_v()};
    j["knots_u"] = s.knots_u().knots();
    j["knots_v"] = s.knots_v().knots();
    nlohmann::json cps = nlohmann::json::array();
    nlohmann::json ws = nlohmann::json::array();
    for (int i = 0; i < s.control_count_u(); ++i) {
        for (int jj = 0; jj < s.control_count_v(); ++jj) {
            const Point2 p = s.control_point(i, jj);
            cps.push_back({p.x, p.y});
            ws.push_back(s.weight(i, jj));
        }
    }
    j["control_points"] = std::move(cps);
    j["weights"] = std::move(ws);
    j["membership_hint"] = hint_name(s.membership_hint());
    if (s.membership_hint() == MembershipHint::square_half_width) {
        j["half_width"] = s.half_width();
    }
    return j;
}

NurbsSurface surface_from_json(const nlohmann::json& j) {
    const int p = j.at("degrees").at(0).get<int>();
    const int q = j.at("degrees").at(1).get<int>();
    KnotVector ku(j.at("knots_u").get<std::vector<double>>(), p);
    KnotVector kvv(j.at("knots_v").get<std::vector<double>>(), q);
    std::vector<Point2> pts;
    for (const auto& cp : j.at("control_points")) {
        pts.push_back({cp.at(0).get<double>(), cp.at(1).get<double>()});
    }
    std::vector<double> ws = j.at("weights").get<std::vector<double>>();
    const MembershipHint hint = hint_from_name(j.value("membership_hint", "none"));
    const double hw = j.value("half_width", 0.0);
    return NurbsSurface(std::move(ku), std::move(kvv), std::move(pts), std::move(ws), hint, hw);
}

}  // namespace frac_iga
