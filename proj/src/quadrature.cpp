#include "frac_iga/quadrature.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace frac_iga {

GaussRule gauss_legendre(int n, double lo, double hi) {
    if (n < 1) throw std::domain_error("gauss_legendre: n must be >= 1");
    if (n > 1000000) throw std::length_error("gauss_legendre: rule too large");
    if (!(lo < hi)) throw std::domain_error("gauss_legendre: empty interval");

    GaussRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    const double mid = 0.5 * (hi + lo);
    const double half = 0.5 * (hi - lo);
    const int half_count = (n + 1) / 2;
    for (int i = 0; i < half_count; ++i) {
        double z = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        double dz;
        do {
            double p1 = 1.0, p2 = 0.0;
            for (int j = 1; j <= n; ++j) {
                const double p3 = p2;
                p2 = p1;
                p1 = ((2.0 * j - 1.0) * z * p2 - (j - 1.0) * p3) / j;
            }
            pp = n * (z * p1 - p2) / (z * z - 1.0);
            dz = -p1 / pp;
            z += dz;
        } while (std::abs(dz) > std::numeric_limits<double>::epsilon());
        rule.nodes[i] = mid - half * z;
        rule.nodes[n - 1 - i] = mid + half * z;
        const double w = 2.0 * half / ((1.0 - z * z) * pp * pp);
        rule.weights[i] = w;
        rule.weights[n - 1 - i] = w;
    }
    return rule;
}

PolarQuadrature::PolarQuadrature(GaussRule radial, int angular_count, double truncation_radius)
    : radial_(std::move(radial)), m_(angular_count), radius_(truncation_radius) {
    cos_.resize(m_);
    sin_.resize(m_);
    for (int j = 0; j < m_; ++j) {
        const double ang = 2.0 * M_PI * (j + 1) / m_;
        cos_[j] = std::cos(ang);
        sin_[j] = std::sin(ang);
    }
}

double PolarQuadrature::combined_weight(int i, int j) const {
    (void)j;  // uniform in the angle
    return 2.0 * M_PI * radial_.weights[i] * radial_.nodes[i] / m_;
}

PolarQuadrature polar_rule(int n, int m, double truncation_radius) {
    if (n < 1) throw std::domain_error("polar_rule: radial count must be >= 1");
    if (m < 3) throw std::domain_error("polar_rule: angular count must be >= 3");
    if (!(truncation_radius > 0.0)) throw std::domain_error("polar_rule: R must be positive");
    return PolarQuadrature(gauss_legendre(n, 0.0, truncation_radius), m, truncation_radius);
}

double coefficient_A(const PolarQuadrature& rule, FractionalOrder s) {
    const double e = 1.0 + 2.0 * s.value();
    const auto& r = rule.radial_nodes();
    const auto& w = rule.radial_weights();
    double acc = 0.0;
    for (size_t i = 0; i < r.size(); ++i) acc += w[i] / std::pow(r[i], e);
    return 2.0 * M_PI * acc;
}

double coefficient_B(const PolarQuadrature& rule, FractionalOrder s, double window_a) {
    if (window_a > rule.truncation_radius()) {
        throw std::domain_error("window size exceeds the truncation radius");
    }
    const double e = 1.0 - 2.0 * s.value();
    const auto& r = rule.radial_nodes();
    const auto& w = rule.radial_weights();
    double acc = 0.0;
    for (size_t i = 0; i < r.size(); ++i) {
        acc += w[i] * window_rho(r[i], window_a) * std::pow(r[i], e);
    }
    return M_PI * acc - M_PI * window_moment(window_a, s);
}

}  // namespace frac_iga
