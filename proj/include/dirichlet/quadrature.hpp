#pragma once

#include <cmath>
#include <cstdint>
#include <cstring>
#include <functional>
#include <map>
#include <mutex>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace dirichlet {

/// How to evaluate integrals against the probability weight
/// mu_alpha ~ sigma^alpha e^{-2 sigma} d sigma on (0, inf).
enum class QuadratureScheme {
    laguerre, ///< generalized Gauss-Laguerre with a node-doubling check
    adaptive  ///< adaptive composite rule on (0, 40]
};

struct QuadratureSpec {
    int nodes = 64;
    QuadratureScheme scheme = QuadratureScheme::laguerre;
    double rel_tol = 1e-10;
};

/// One generalized Gauss-Laguerre rule: nodes t_i and *normalized* weights
/// summing to 1, so that integral of g against t^alpha e^{-t} / Gamma(alpha+1)
/// is sum w_i g(t_i).
struct LaguerreRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

namespace detail {

// Implicit-QL eigenvalue iteration for a symmetric tridiagonal matrix,
// tracking only the first row of the eigenvector matrix (Golub-Welsch).
// d: diagonal, e: subdiagonal (e[0] unused slot convention: e has size n,
// e[n-1] ignored), z: initialized to (1,0,...,0).
inline void tridiagonal_first_components(std::vector<double>& d, std::vector<double>& e,
                                         std::vector<double>& z) {
    const int n = static_cast<int>(d.size());
    if (n == 1) return;
    const double eps = 2.220446049250313e-16;
    e[n - 1] = 0.0;

    for (int l = 0; l < n; ++l) {
        int iter = 0;
        for (;;) {
            int m;
            for (m = l; m < n - 1; ++m) {
                double dd = std::fabs(d[m]) + std::fabs(d[m + 1]);
                if (std::fabs(e[m]) <= eps * dd) break;
            }
            if (m == l) break;
            if (++iter > 50)
                throw std::runtime_error("laguerre rule: eigenvalue iteration failed");

            double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            double r = std::hypot(g, 1.0);
            double sgn = (g >= 0.0) ? 1.0 : -1.0;
            g = d[m] - d[l] + e[l] / (g + sgn * r);
            double s = 1.0, c = 1.0, p = 0.0;
            bool underflow = false;

            for (int i = m - 1; i >= l; --i) {
                double f = s * e[i];
                double b = c * e[i];
                r = std::hypot(f, g);
                e[i + 1] = r;
                if (r == 0.0) {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    underflow = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
                // rotate the tracked first components
                f = z[i + 1];
                z[i + 1] = s * z[i] + c * f;
                z[i] = c * z[i] - s * f;
            }
            if (underflow) continue;
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }

    // sort nodes ascending, carrying the first components along
    for (int i = 0; i < n - 1; ++i) {
        int k = i;
        for (int j = i + 1; j < n; ++j)
            if (d[j] < d[k]) k = j;
        if (k != i) {
            std::swap(d[i], d[k]);
            std::swap(z[i], z[k]);
        }
    }
}

inline LaguerreRule build_laguerre_rule(int n, double alpha) {
    if (n < 1) throw std::domain_error("laguerre rule: node count must be >= 1");
    if (alpha <= -1.0) throw std::domain_error("laguerre rule: alpha must be > -1");
    std::vector<double> d(n), e(n, 0.0), z(n, 0.0);
    for (int k = 0; k < n; ++k) {
        d[k] = 2.0 * k + 1.0 + alpha;
        if (k + 1 < n) e[k] = std::sqrt((k + 1.0) * (k + 1.0 + alpha));
    }
    z[0] = 1.0;
    tridiagonal_first_components(d, e, z);
    LaguerreRule rule;
    rule.nodes = std::move(d);
    rule.weights.resize(n);
    // normalized weights: squared first eigenvector components sum to 1
    for (int i = 0; i < n; ++i) rule.weights[i] = z[i] * z[i];
    return rule;
}

inline const LaguerreRule& cached_laguerre_rule(int n, double alpha) {
    static std::mutex mu;
    static std::map<std::pair<int, long long>, LaguerreRule> cache;
    std::lock_guard<std::mutex> lock(mu);
    // key alpha by its bit pattern; alpha values come from user parameters
    long long bits;
    static_assert(sizeof(bits) == sizeof(alpha));
    std::memcpy(&bits, &alpha, sizeof(bits));
    auto key = std::make_pair(n, bits);
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, build_laguerre_rule(n, alpha)).first;
    return it->second;
}

// Adaptive Simpson on [a, b] with absolute tolerance.
inline double adaptive_simpson(const std::function<double(double)>& h, double a, double b,
                               double fa, double fm, double fb, double tol, int depth) {
    double m = 0.5 * (a + b);
    double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    double flm = h(lm), frm = h(rm);
    double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    double delta = left + right - whole;
    if (depth <= 0 || std::fabs(delta) <= 15.0 * tol)
        return left + right + delta / 15.0;
    return adaptive_simpson(h, a, m, fa, flm, fm, 0.5 * tol, depth - 1) +
           adaptive_simpson(h, m, b, fm, frm, fb, 0.5 * tol, depth - 1);
}

} // namespace detail

/// Integral of g against the probability measure
/// d mu_alpha(sigma) = 2^{alpha+1}/Gamma(alpha+1) sigma^alpha e^{-2 sigma} d sigma.
///
/// The Laguerre path substitutes t = 2 sigma, reducing to the weight
/// t^alpha e^{-t}; the rule's weights are normalized so a constant
/// integrates to exactly 1. When estimates at n and 2n nodes disagree
/// beyond spec.rel_tol, falls back to an adaptive composite rule on
/// (0, 40] (the weight's mass beyond 40 is below 1e-30 for all alpha
/// of interest).
inline double mu_alpha_integral(const std::function<double(double)>& g, double alpha,
                                const QuadratureSpec& spec = {},
                                double* error_estimate = nullptr) {
    if (alpha <= -1.0) throw std::domain_error("mu_alpha_integral: alpha must be > -1");

    auto eval_rule = [&](int n) {
        const LaguerreRule& rule = detail::cached_laguerre_rule(n, alpha);
        double acc = 0.0;
        for (int i = 0; i < n; ++i) {
            double sigma = 0.5 * rule.nodes[i];
            double v = g(sigma);
            if (!std::isfinite(v))
                throw std::runtime_error("mu_alpha_integral: non-finite integrand at sigma=" +
                                         std::to_string(sigma));
            acc += rule.weights[i] * v;
        }
        return acc;
    };

    if (spec.scheme == QuadratureScheme::laguerre) {
        double coarse = eval_rule(spec.nodes);
        double fine = eval_rule(2 * spec.nodes);
        double diff = std::fabs(fine - coarse);
        double scale = std::max(std::fabs(fine), 1e-300);
        if (diff <= spec.rel_tol * scale) {
            if (error_estimate) *error_estimate = diff;
            return fine;
        }
        // fall through to the adaptive rule
    }

    // Adaptive path: substitute sigma = u^m to flatten the sigma^alpha
    // endpoint, then integrate g * weight over u on geometric panels so the
    // mass near 0 cannot be stepped over.
    const double norm = std::pow(2.0, alpha + 1.0) / std::tgamma(alpha + 1.0);
    const int m = (alpha >= 1.0) ? 1 : static_cast<int>(std::ceil(2.0 / (alpha + 1.0)));
    auto h = [&](double u) {
        double sigma = std::pow(u, m);
        if (sigma <= 0.0) return 0.0;
        double v = g(sigma);
        if (!std::isfinite(v))
            throw std::runtime_error("mu_alpha_integral: non-finite integrand at sigma=" +
                                     std::to_string(sigma));
        double jac = m * std::pow(u, m - 1.0);
        return v * norm * std::pow(sigma, alpha) * std::exp(-2.0 * sigma) * jac;
    };

    std::vector<double> breaks{0.0};
    for (int k = 14; k >= 0; --k) breaks.push_back(std::pow(40.0 * std::pow(2.0, -k), 1.0 / m));

    // rough composite pass fixes the absolute tolerance scale
    double rough = 0.0;
    for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
        double a = breaks[i], b = breaks[i + 1];
        rough += (b - a) / 6.0 * (h(a) + 4.0 * h(0.5 * (a + b)) + h(b));
    }
    double tol_abs = spec.rel_tol * std::max(std::fabs(rough), 1e-300);

    double result = 0.0;
    for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
        double a = breaks[i], b = breaks[i + 1];
        double fa = h(a), fb = h(b), fm = h(0.5 * (a + b));
        result += detail::adaptive_simpson(h, a, b, fa, fm, fb,
                                           tol_abs / static_cast<double>(breaks.size()), 40);
    }
    if (error_estimate) *error_estimate = tol_abs;
    return result;
}

} // namespace dirichlet
