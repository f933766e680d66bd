#include "frac_iga/operator_assembly.hpp"

#include <cmath>
#include <cstdlib>
#include <exception>
#include <thread>
#include <unordered_map>

namespace frac_iga {

namespace {

// Inverse-map cache quantum: queried points are snapped to this grid before
// inversion, making the cached map a pure function of the key.
constexpr double kCacheQuantum = 1e-13;

struct CacheKey {
    long long qx;
    long long qy;
    bool operator==(const CacheKey&) const = default;
};

struct CacheKeyHash {
    size_t operator()(const CacheKey& k) const {
        uint64_t h = uint64_t(k.qx) * 0x9e3779b97f4a7c15ull;
        h ^= uint64_t(k.qy) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
        return size_t(h);
    }
};

using InverseCache = std::unordered_map<CacheKey, Point2, CacheKeyHash>;

// Bounding circle of the domain, from the hint when available and from the
// control-net bounding box (convex hull property) otherwise.
struct BoundingCircle {
    Point2 center;
    double radius;
};

BoundingCircle domain_bound(const NurbsSurface& s) {
    switch (s.membership_hint()) {
        case MembershipHint::disk_radius_1:
            return {{0.0, 0.0}, 1.0};
        case MembershipHint::square_half_width:
            return {{0.0, 0.0}, s.half_width() * std::sqrt(2.0)};
        case MembershipHint::none:
            break;
    }
    double xlo = s.control_point(0, 0).x, xhi = xlo;
    double ylo = s.control_point(0, 0).y, yhi = ylo;
    for (int i = 0; i < s.control_count_u(); ++i) {
        for (int j = 0; j < s.control_count_v(); ++j) {
            const Point2 p = s.control_point(i, j);
            xlo = std::min(xlo, p.x); xhi = std::max(xhi, p.x);
            ylo = std::min(ylo, p.y); yhi = std::max(yhi, p.y);
        }
    }
    const Point2 c{0.5 * (xlo + xhi), 0.5 * (ylo + yhi)};
    return {c, 0.5 * std::hypot(xhi - xlo, yhi - ylo)};
}

// Accumulates coef * basis_row(x) into the dense row. Points outside the
// domain contribute nothing. Inversion results are cached per assembly
// thread, keyed by coordinates snapped to the cache quantum.
void accumulate_point(const NurbsSurface& s, Point2 x, double coef,
                      std::vector<double>& row, InverseCache* cache) {
    if (!s.contains(x)) return;
    Point2 param;
    if (cache != nullptr) {
        const CacheKey key{std::llround(x.x / kCacheQuantum), std::llround(x.y / kCacheQuantum)};
        auto it = cache->find(key);
        if (it != cache->end()) {
            param = it->second;
        } else {
            const Point2 snapped{key.qx * kCacheQuantum, key.qy * kCacheQuantum};
            const auto inv = s.inverse_map(snapped);
            if (!inv) {
                throw AssemblyError("inverse map failed at (" + std::to_string(x.x) +
                                    ", " + std::to_string(x.y) + ")");
            }
            param = *inv;
            cache->emplace(key, param);
        }
    } else {
        const auto inv = s.inverse_map(x);
        if (!inv) {
            throw AssemblyError("inverse map failed at (" + std::to_string(x.x) +
                                ", " + std::to_string(x.y) + ")");
        }
        param = *inv;
    }
    const SurfaceBasis nb = s.basis(param.x, param.y);
    const int nu = s.control_count_u();
    for (int a = 0; a < nb.nu_local; ++a) {
        for (int b = 0; b < nb.nv_local; ++b) {
            row[size_t(nb.iv0 + b) * nu + (nb.iu0 + a)] += coef * nb.values[a * nb.nv_local + b];
        }
    }
}

void accumulate_param(const NurbsSurface& s, Point2 param, double coef,
                      std::vector<double>& row) {
    const SurfaceBasis nb = s.basis(param.x, param.y);
    const int nu = s.control_count_u();
    for (int a = 0; a < nb.nu_local; ++a) {
        for (int b = 0; b < nb.nv_local; ++b) {
            row[size_t(nb.iv0 + b) * nu + (nb.iu0 + a)] += coef * nb.values[a * nb.nv_local + b];
        }
    }
}

// Shared core of the operator row: A term at the (known) center parameter,
// then the windowed stencil, then the quadrature sum in (i,j) order.
void operator_row(const NurbsSurface& s, Point2 x, Point2 center_param,
                  const DiscretizationParams& params, const PolarQuadrature& rule,
                  double coef_a, double coef_b, double c_norm,
                  const BoundingCircle& bound, std::vector<double>& row,
                  InverseCache* cache) {
    accumulate_param(s, center_param, coef_a, row);

    for (const StencilPoint& sp : stencil_points(x, params.stencil_h)) {
        accumulate_point(s, sp.point, coef_b * sp.coefficient, row, cache);
    }

    const double reach = norm(x - bound.center) + bound.radius;
    const double expo = 1.0 + 2.0 * params.s.value();
    const auto& r = rule.radial_nodes();
    const auto& w = rule.radial_weights();
    const int m = rule.angular_count();
    for (size_t i = 0; i < r.size(); ++i) {
        if (r[i] > reach) break;
        const double coef = -2.0 * M_PI * w[i] / (m * std::pow(r[i], expo));
        for (int j = 0; j < m; ++j) {
            const Point2 y{x.x + r[i] * rule.direction_x(j), x.y + r[i] * rule.direction_y(j)};
            accumulate_point(s, y, coef, row, cache);
        }
    }

    for (double& v : row) v *= c_norm;
}

SparseRow compress(const std::vector<double>& row) {
    SparseRow out;
    for (size_t j = 0; j < row.size(); ++j) {
        if (row[j] != 0.0) {
            out.cols.push_back(static_cast<int>(j));
            out.vals.push_back(row[j]);
        }
    }
    return out;
}

}  // namespace

CollocationSet collocation_points(const NurbsSurface& surface) {
    const std::vector<double> gu = surface.knots_u().greville_abscissae();
    const std::vector<double> gv = surface.knots_v().greville_abscissae();
    const int nu = static_cast<int>(gu.size());
    const int nv = static_cast<int>(gv.size());
    CollocationSet set;
    set.count_u = nu;
    set.count_v = nv;
    set.params.reserve(size_t(nu) * nv);
    set.points.reserve(size_t(nu) * nv);
    for (int j = 0; j < nv; ++j) {
        for (int i = 0; i < nu; ++i) {
            set.params.push_back({gu[i], gv[j]});
            set.points.push_back(surface.map_to_physical(gu[i], gv[j]));
            const int k = j * nu + i;
            if (i == 0 || i == nu - 1 || j == 0 || j == nv - 1) {
                set.boundary.push_back(k);
            } else {
                set.interior.push_back(k);
            }
        }
    }
    return set;
}

SparseRow basis_row(const NurbsSurface& surface, Point2 x) {
    const int n = surface.control_count_u() * surface.control_count_v();
    if (!surface.contains(x)) return SparseRow{};
    std::vector<double> dense(n, 0.0);
    accumulate_point(surface, x, 1.0, dense, nullptr);
    return compress(dense);
}

std::vector<SparseRow> interpolation_matrix(const NurbsSurface& surface,
                                            const CollocationSet& points) {
    const int n = points.count();
    std::vector<SparseRow> rows(n);
    std::vector<double> dense(size_t(surface.control_count_u()) * surface.control_count_v());
    for (int k = 0; k < n; ++k) {
        std::fill(dense.begin(), dense.end(), 0.0);
        // the collocation parameter is known by construction; no inversion
        accumulate_param(surface, points.params[k], 1.0, dense);
        rows[k] = compress(dense);
    }
    return rows;
}

std::array<StencilPoint, 9> stencil_points(Point2 x, double h) {
    if (!(h > 0.0)) throw std::domain_error("stencil step must be positive");
    const double inv_h2 = 1.0 / (h * h);
    const double c1 = 4.0 / 3.0 * inv_h2;
    const double c2 = -1.0 / 12.0 * inv_h2;
    return {{
        {x, -5.0 * inv_h2},
        {{x.x + h, x.y}, c1},
        {{x.x - h, x.y}, c1},
        {{x.x + 2.0 * h, x.y}, c2},
        {{x.x - 2.0 * h, x.y}, c2},
        {{x.x, x.y + h}, c1},
        {{x.x, x.y - h}, c1},
        {{x.x, x.y + 2.0 * h}, c2},
        {{x.x, x.y - 2.0 * h}, c2},
    }};
}

std::vector<double> fractional_laplacian_row(const NurbsSurface& surface, Point2 x,
                                             const DiscretizationParams& params,
                                             const PolarQuadrature& rule) {
    params.validate();
    if (!surface.contains(x)) {
        throw std::domain_error("fractional_laplacian_row requires a point inside the domain");
    }
    const auto inv = surface.inverse_map(x);
    if (!inv) {
        throw AssemblyError("inverse map failed at the evaluation point");
    }
    const double a = coefficient_A(rule, params.s);
    const double b = coefficient_B(rule, params.s, params.window_a);
    const double c = normalization_constant(params.s);
    const BoundingCircle bound = domain_bound(surface);
    std::vector<double> row(size_t(surface.control_count_u()) * surface.control_count_v(), 0.0);
    InverseCache cache;
    operator_row(surface, x, *inv, params, rule, a, b, c, bound, row, &cache);
    return row;
}

OperatorPair fractional_laplacian_matrix(const NurbsSurface& surface,
                                         const CollocationSet& points,
                                         const DiscretizationParams& params,
                                         int threads) {
    params.validate();
    const PolarQuadrature rule =
        polar_rule(params.n_radial, params.m_angular, params.truncation_R);
    const double a = coefficient_A(rule, params.s);
    const double b = coefficient_B(rule, params.s, params.window_a);
    const double c = normalization_constant(params.s);
    const BoundingCircle bound = domain_bound(surface);

    OperatorPair ops;
    ops.points = points;
    ops.interpolation = interpolation_matrix(surface, points);
    const int n = points.count();
    ops.laplacian = DenseMatrix(n, n);

    const int n_workers = std::min(resolve_thread_count(threads),
                                   std::max(1, static_cast<int>(points.interior.size())));
    std::vector<std::thread> workers;
    std::vector<std::exception_ptr> errors(n_workers);
    const size_t total = points.interior.size();
    for (int t = 0; t < n_workers; ++t) {
        const size_t lo = total * t / n_workers;
        const size_t hi = total * (t + 1) / n_workers;
        workers.emplace_back([&, lo, hi, t]() {
            try {
                InverseCache cache;
                std::vector<double> row(n);
                for (size_t idx = lo; idx < hi; ++idx) {
                    const int k = points.interior[idx];
                    std::fill(row.begin(), row.end(), 0.0);
                    operator_row(surface, points.points[k], points.params[k], params, rule,
                                 a, b, c, bound, row, &cache);
                    std::copy(row.begin(), row.end(), ops.laplacian.row(k).begin());
                }
            } catch (...) {
                errors[t] = std::current_exception();
            }
        });
    }
    for (auto& w : workers) w.join();
    for (const auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
    return ops;
}

int resolve_thread_count(int requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("FRAC_IGA_THREADS")) {
        const int v = std::atoi(env);
        if (v > 0) return v;
    }
    const unsigned hc = std::thread::hardware_concurrency();
    return hc > 0 ? static_cast<int>(hc) : 1;
}

}  // namespace frac_iga
