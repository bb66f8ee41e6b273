#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "dirichlet/parallel.hpp"
#include "dirichlet/polynomial.hpp"
#include "dirichlet/quadrature.hpp"
#include "dirichlet/random.hpp"

namespace dirichlet {

/// q == infinity selects the plain Hardy space; alpha is ignored then.
inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Parameters (p, q, alpha) of a mixed norm space. (p, inf, *) is the Hardy
/// space of exponent p, (p, p, alpha) the Bergman space.
struct SpaceParams {
    double p = 2.0;
    double q = kInf;
    double alpha = 0.0;

    bool isHardy() const { return std::isinf(q); }

    void validate() const {
        if (!(p > 0.0)) throw std::domain_error("SpaceParams: p must be > 0");
        if (!(q > 0.0)) throw std::domain_error("SpaceParams: q must be > 0");
        if (!isHardy() && !(alpha > -1.0))
            throw std::domain_error("SpaceParams: alpha must be > -1");
    }

    static SpaceParams hardy(double p) { return {p, kInf, 0.0}; }
    static SpaceParams bergman(double p, double alpha) { return {p, p, alpha}; }
};

enum class NormMethod { exact, quadrature, monte_carlo };

inline std::string to_string(NormMethod m) {
    switch (m) {
        case NormMethod::exact: return "exact";
        case NormMethod::quadrature: return "quadrature";
        case NormMethod::monte_carlo: return "monte-carlo";
    }
    return "?";
}

/// A norm value together with how it was obtained and how far off it may be:
/// one standard error for Monte Carlo, a quadrature error estimate otherwise.
struct NormEstimate {
    double value = 0.0;
    NormMethod method = NormMethod::exact;
    double error = 0.0;
    std::uint64_t n = 0; // samples (MC) or quadrature nodes
};

/// Inner-norm strategy for mixed norms.
enum class InnerNorm { automatic, exact_even, monte_carlo };

/// Monte Carlo controls shared by the sampling-based norms.
struct McParams {
    std::uint64_t trials = 10000;
    std::uint64_t seed = 1;
    unsigned threads = 0; // 0: resolve from environment
};

/// l2 norm of the coefficients: the Hardy-2 norm.
inline double h2_norm_squared(const DirichletPolynomial& f) {
    double acc = 0.0;
    for (const auto& [n, a] : f.terms()) acc += std::norm(a);
    return acc;
}

inline double h2_norm(const DirichletPolynomial& f) { return std::sqrt(h2_norm_squared(f)); }

inline Rational h2_norm_squared(const RationalPolynomial& f) {
    Rational acc(0);
    for (const auto& [n, a] : f.terms()) acc += a * a;
    return acc;
}

/// Hardy norm for even exponent p = 2k, computed exactly as
/// ||f^k||_{H^2}^{1/k}. Index growth can overflow; that throws.
inline double hp_norm_exact_even(const DirichletPolynomial& f, unsigned k) {
    if (k == 0) throw std::domain_error("hp_norm_exact_even: k must be >= 1");
    if (k == 1) return h2_norm(f);
    return std::pow(h2_norm_squared(power(f, k)), 1.0 / (2.0 * k));
}

namespace detail {

/// Sanctioned even-exponent check: p == 2k for integer k >= 1 within
/// a tight relative tolerance on user-provided doubles.
inline bool even_exponent(double p, unsigned* k_out = nullptr) {
    if (!(p > 0.0) || std::isinf(p)) return false;
    double k = p / 2.0;
    double rounded = std::round(k);
    if (rounded < 1.0 || std::fabs(k - rounded) > 1e-12 * std::max(1.0, k)) return false;
    if (k_out) *k_out = static_cast<unsigned>(rounded);
    return true;
}

/// Compressed Bohr-lift view of a polynomial for torus sampling: per term,
/// the exponents over the support's own prime list.
struct TorusView {
    std::vector<std::complex<double>> coeffs;
    std::vector<std::vector<std::uint32_t>> exponents; // [term][dim]
    std::size_t dims = 0;
};

inline TorusView make_torus_view(const DirichletPolynomial& f) {
    TorusView view;
    std::vector<std::size_t> ranks = support_prime_ranks(f);
    view.dims = ranks.size();
    std::vector<std::size_t> rank_to_dim;
    if (!ranks.empty()) {
        rank_to_dim.assign(ranks.back() + 1, SIZE_MAX);
        for (std::size_t d = 0; d < ranks.size(); ++d) rank_to_dim[ranks[d]] = d;
    }
    for (const auto& [n, a] : f.terms()) {
        MultiIndex nu = factorize(n);
        std::vector<std::uint32_t> row(view.dims, 0);
        for (std::size_t j = 0; j < nu.size(); ++j)
            if (nu[j] > 0) row[rank_to_dim[j]] = nu[j];
        view.coeffs.push_back(a);
        view.exponents.push_back(std::move(row));
    }
    return view;
}

inline std::complex<double> torus_eval(const TorusView& view,
                                       const std::vector<std::complex<double>>& z) {
    std::complex<double> acc(0.0, 0.0);
    for (std::size_t t = 0; t < view.coeffs.size(); ++t) {
        std::complex<double> term = view.coeffs[t];
        for (std::size_t d = 0; d < view.dims; ++d) {
            std::uint32_t e = view.exponents[t][d];
            std::complex<double> base = z[d];
            while (e) { // exponents are tiny; plain square-and-multiply
                if (e & 1) term *= base;
                base *= base;
                e >>= 1;
            }
        }
        acc += term;
    }
    return acc;
}

/// Delta-method standard error of mean^{1/p} given the mean of X = |F|^p
/// and the standard error of that mean.
inline double root_mean_error(double mean, double se, double p) {
    if (mean <= 0.0) return 0.0;
    return se * std::pow(mean, 1.0 / p - 1.0) / p;
}

} // namespace detail

/// Monte Carlo Hardy-p norm: the p-mean of |Bohr lift| over the finite torus
/// spanned by the primes actually dividing the support. Deterministic for a
/// fixed seed at any thread count.
inline NormEstimate hp_norm_mc(const DirichletPolynomial& f, double p, const McParams& mc) {
    if (!(p > 0.0)) throw std::domain_error("hp_norm_mc: p must be > 0");
    if (mc.trials == 0) throw std::domain_error("hp_norm_mc: trials must be >= 1");
    if (f.isZero()) return {0.0, NormMethod::monte_carlo, 0.0, mc.trials};

    const detail::TorusView view = detail::make_torus_view(f);
    std::vector<double> powers(mc.trials);
    parallel_for_index(mc.trials, mc.threads, [&](std::size_t i) {
        const std::uint64_t s = derive_seed(mc.seed, i);
        std::vector<std::complex<double>> z(view.dims);
        for (std::size_t d = 0; d < view.dims; ++d) {
            double theta = 2.0 * std::numbers::pi * rng::uniform_at(s, d);
            z[d] = {std::cos(theta), std::sin(theta)};
        }
        powers[i] = std::pow(std::abs(detail::torus_eval(view, z)), p);
    });

    double mean = 0.0;
    for (double v : powers) mean += v;
    mean /= static_cast<double>(mc.trials);
    double var = 0.0;
    for (double v : powers) var += (v - mean) * (v - mean);
    var = mc.trials > 1 ? var / (static_cast<double>(mc.trials) - 1.0) : 0.0;
    double se = std::sqrt(var / static_cast<double>(mc.trials));

    NormEstimate est;
    est.value = std::pow(mean, 1.0 / p);
    est.method = NormMethod::monte_carlo;
    est.error = detail::root_mean_error(mean, se, p);
    est.n = mc.trials;
    return est;
}

/// Hardy-p norm dispatch: exact for p = 2 and even integers, Monte Carlo
/// otherwise.
inline NormEstimate hardy_norm(const DirichletPolynomial& f, double p, InnerNorm inner,
                               const McParams& mc) {
    unsigned k = 0;
    bool even = detail::even_exponent(p, &k);
    if (inner == InnerNorm::exact_even && !even)
        throw std::domain_error("hardy_norm: exact-even inner norm needs p in {2,4,6,...}");
    if (inner != InnerNorm::monte_carlo && even)
        return {hp_norm_exact_even(f, k), NormMethod::exact, 0.0, 0};
    return hp_norm_mc(f, p, mc);
}

/// Integral of sigma -> g(sigma) against mu_alpha, wrapped as an estimate.
inline NormEstimate mu_alpha_estimate(const std::function<double(double)>& g, double alpha,
                                      const QuadratureSpec& spec) {
    double err = 0.0;
    double value = mu_alpha_integral(g, alpha, spec, &err);
    return {value, NormMethod::quadrature, err, static_cast<std::uint64_t>(spec.nodes)};
}

/// Mixed norm ||f||_{p,q,alpha}: the L^q(mu_alpha) average of the Hardy-p
/// norms of the translates f_sigma. For q = inf this is the Hardy-p norm.
/// For p = 2 the translate norm has the closed form
/// (sum |a_n|^2 n^{-2 sigma})^{1/2}; for even p the convolution power is
/// computed once and translated through its own coefficients.
inline NormEstimate mixed_norm(const DirichletPolynomial& f, const SpaceParams& space,
                               const QuadratureSpec& spec = {},
                               InnerNorm inner = InnerNorm::automatic, const McParams& mc = {}) {
    space.validate();
    if (space.isHardy()) return hardy_norm(f, space.p, inner, mc);
    if (f.isZero()) return {0.0, NormMethod::exact, 0.0, 0};

    const double q = space.q;
    unsigned k = 0;
    const bool even = detail::even_exponent(space.p, &k);
    if (inner == InnerNorm::exact_even && !even)
        throw std::domain_error("mixed_norm: exact-even inner norm needs p in {2,4,6,...}");
    const bool use_exact_inner = (inner != InnerNorm::monte_carlo) && even;

    if (use_exact_inner) {
        // Translation commutes with products, so translate f^k instead:
        // ||f_sigma||_{2k}^{2k} = sum_m |(f^k)_m|^2 m^{-2 sigma}.
        const DirichletPolynomial fk = power(f, k);
        std::vector<double> weight, logn;
        for (const auto& [m, c] : fk.terms()) {
            weight.push_back(std::norm(c));
            logn.push_back(std::log(static_cast<double>(m)));
        }
        const double qk = q / (2.0 * k);
        auto integrand = [&weight, &logn, qk](double sigma) {
            double s = 0.0;
            for (std::size_t i = 0; i < weight.size(); ++i)
                s += weight[i] * std::exp(-2.0 * sigma * logn[i]);
            return std::pow(s, qk);
        };
        double err = 0.0;
        double raw = mu_alpha_integral(integrand, space.alpha, spec, &err);
        NormEstimate est;
        est.value = std::pow(raw, 1.0 / q);
        est.method = NormMethod::quadrature;
        est.error = raw > 0.0 ? err * std::pow(raw, 1.0 / q - 1.0) / q : 0.0;
        est.n = static_cast<std::uint64_t>(spec.nodes);
        return est;
    }

    // Monte Carlo inner norms: a node-doubling consistency check would only
    // measure sampling noise, so integrate on the plain Laguerre rule and
    // propagate the per-node standard errors instead.
    const LaguerreRule& rule = detail::cached_laguerre_rule(spec.nodes, space.alpha);
    double raw = 0.0, raw_err = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        double sigma = 0.5 * rule.nodes[i];
        McParams node_mc{mc.trials, derive_seed(mc.seed, i), mc.threads};
        NormEstimate inner_est = hp_norm_mc(translate(f, sigma), space.p, node_mc);
        double v = std::pow(inner_est.value, q);
        raw += rule.weights[i] * v;
        if (inner_est.value > 0.0)
            raw_err += rule.weights[i] * q * std::pow(inner_est.value, q - 1.0) * inner_est.error;
    }
    NormEstimate est;
    est.value = std::pow(raw, 1.0 / q);
    est.method = NormMethod::monte_carlo;
    est.error = raw > 0.0 ? raw_err * std::pow(raw, 1.0 / q - 1.0) / q : 0.0;
    est.n = mc.trials;
    return est;
}

/// The membership functional of the symbol space of (p, q, alpha):
/// N -> integral of (sum_{n<=N} |a_n|^2 n^{-2 sigma})^{q/2} d mu_alpha,
/// evaluated along ascending truncations of a coefficient stream.
/// Bounded values are evidence of membership in the (2, q, alpha) space,
/// divergence is evidence of non-membership.
inline std::vector<double> h2q_membership_functional(
    const std::function<std::complex<double>(std::uint64_t)>& coeff, double q, double alpha,
    const QuadratureSpec& spec, const std::vector<std::uint64_t>& truncations) {
    if (!(q > 0.0) || std::isinf(q))
        throw std::domain_error("h2q_membership_functional: q must be finite and > 0");
    if (!(alpha > -1.0)) throw std::domain_error("h2q_membership_functional: alpha > -1 required");
    for (std::size_t i = 1; i < truncations.size(); ++i)
        if (truncations[i] <= truncations[i - 1])
            throw std::domain_error("h2q_membership_functional: truncations must ascend");

    const LaguerreRule& rule = detail::cached_laguerre_rule(spec.nodes, alpha);
    std::vector<double> tails(rule.nodes.size(), 0.0); // per-node running sum
    std::vector<double> out;
    out.reserve(truncations.size());
    std::uint64_t n = 1;
    for (std::uint64_t N : truncations) {
        for (; n <= N; ++n) {
            double an2 = std::norm(coeff(n));
            if (an2 == 0.0) continue;
            double logn = std::log(static_cast<double>(n));
            for (std::size_t i = 0; i < rule.nodes.size(); ++i)
                tails[i] += an2 * std::exp(-rule.nodes[i] * logn); // 2*sigma = node
        }
        double acc = 0.0;
        for (std::size_t i = 0; i < rule.nodes.size(); ++i)
            acc += rule.weights[i] * std::pow(tails[i], 0.5 * q);
        out.push_back(acc);
    }
    return out;
}

inline std::vector<double> h2q_membership_functional(const DirichletPolynomial& f, double q,
                                                     double alpha, const QuadratureSpec& spec,
                                                     const std::vector<std::uint64_t>& truncations) {
    return h2q_membership_functional(
        [&f](std::uint64_t n) { return f.coefficient(n); }, q, alpha, spec, truncations);
}

/// Point-evaluation growth factor B(s) = (Re s / (2 Re s - 1))^{1/p + (alpha+1)/q}
/// on the half-plane Re s > 1/2. Point values satisfy |f(s)| <= C B(s) ||f||
/// for a constant depending only on the space.
inline double point_eval_bound(const SpaceParams& space, std::complex<double> s) {
    space.validate();
    double re = s.real();
    if (!(re > 0.5)) throw std::domain_error("point_eval_bound: Re s must be > 1/2");
    double expo = 1.0 / space.p + (space.isHardy() ? 0.0 : (space.alpha + 1.0) / space.q);
    return std::pow(re / (2.0 * re - 1.0), expo);
}

/// Explicit translate growth constant: for every f in the (p, q, alpha)
/// space, ||f_sigma||_{H^p} <= bound(sigma, kappa) * ||f||_{p,q,alpha}.
inline double mean_growth_bound(const SpaceParams& space, double sigma, double kappa) {
    space.validate();
    if (space.isHardy()) throw std::domain_error("mean_growth_bound: q must be finite");
    if (!(sigma > 0.0)) throw std::domain_error("mean_growth_bound: sigma must be > 0");
    if (!(kappa > 0.0 && kappa <= 1.0))
        throw std::domain_error("mean_growth_bound: kappa must lie in (0, 1]");
    const double a1 = space.alpha + 1.0;
    const double q = space.q;
    return std::pow(std::tgamma(space.alpha + 2.0) / std::pow(2.0, a1), 1.0 / q) *
           std::pow(kappa, -a1 / q) * std::pow(sigma, -a1 / q) *
           std::exp(2.0 * kappa * sigma / q);
}

} // namespace dirichlet
