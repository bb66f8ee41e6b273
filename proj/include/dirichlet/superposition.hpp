#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <optional>
#include <vector>

#include "dirichlet/norms.hpp"
#include "dirichlet/polynomial.hpp"
#include "dirichlet/regions.hpp"

namespace dirichlet {

/// Polynomial in one complex variable, by ascending coefficients.
struct ScalarPolynomial {
    std::vector<std::complex<double>> coeffs;

    /// Largest index with a nonzero coefficient; empty for the zero polynomial.
    std::optional<unsigned> degree() const {
        for (std::size_t i = coeffs.size(); i > 0; --i)
            if (!is_zero(coeffs[i - 1])) return static_cast<unsigned>(i - 1);
        return std::nullopt;
    }
};

/// Composition phi(f) = sum_k c_k f^k, computed exactly term by term.
/// The caller truncates f first if the index growth maxIndex(f)^deg would
/// overflow; nothing is truncated silently here.
inline DirichletPolynomial apply_superposition(const ScalarPolynomial& phi,
                                               const DirichletPolynomial& f) {
    auto deg = phi.degree();
    if (!deg) return DirichletPolynomial();

    // overflow pre-check on the final index bound
    std::uint64_t bound = 1;
    for (unsigned i = 0; i < *deg; ++i)
        if (__builtin_mul_overflow(bound, std::max<std::uint64_t>(f.maxIndex(), 1), &bound))
            throw std::overflow_error(
                "apply_superposition: index bound overflows 64 bits; truncate f first");

    DirichletPolynomial acc;
    DirichletPolynomial fk = DirichletPolynomial::one();
    for (unsigned k = 0; k <= *deg; ++k) {
        if (k > 0) fk = multiply(fk, f);
        if (!is_zero(phi.coeffs[k])) acc = acc + phi.coeffs[k] * fk;
    }
    return acc;
}

/// Degree bound for superposition between mixed norm spaces
/// (p, q, alpha) -> (u, v, beta): monomial degree N acts iff
///   alpha <= beta: N <= min(p/u, q(beta+1)/(v(alpha+1)))  (both closed)
///   alpha >  beta: N <= p/u and N < q(beta+1)/(v(alpha+1)) (second strict).
/// N = 0 (constants) always acts. The closed/strict switch is exactly the
/// closed/open tail-index boundary of the inclusion region.
inline RegionVerdict superposition_decide(unsigned N, double p, double q, double alpha, double u,
                                          double v, double beta) {
    detail::require_exponent(p, "p");
    detail::require_exponent(q, "q");
    detail::require_exponent(u, "u");
    detail::require_exponent(v, "v");
    detail::require_weight(alpha, "alpha");
    detail::require_weight(beta, "beta");
    if (N == 0) return {true, "sup-const"};

    const double nd = static_cast<double>(N);
    const double lead = p / u;
    const double tail = q * (beta + 1.0) / (v * (alpha + 1.0));
    detail::Cmp lead_cmp = detail::fuzzy_compare(nd, lead);
    detail::Cmp tail_cmp = detail::fuzzy_compare(nd, tail);

    if (lead_cmp == detail::Cmp::greater) return {false, "sup-none"};
    if (detail::fuzzy_compare(alpha, beta) != detail::Cmp::greater) {
        // alpha <= beta: closed bound in both coordinates
        if (tail_cmp != detail::Cmp::greater) return {true, "sup-i"};
        return {false, "sup-none"};
    }
    // alpha > beta: the tail bound is strict
    if (tail_cmp == detail::Cmp::less) return {true, "sup-ii"};
    if (tail_cmp == detail::Cmp::equal) return {false, "boundary"};
    return {false, "sup-none"};
}

/// Exact-rational variant: when the space parameters are rationals the
/// closed/strict boundary comparisons need no tolerance at all.
inline RegionVerdict superposition_decide(unsigned N, const Rational& p, const Rational& q,
                                          const Rational& alpha, const Rational& u,
                                          const Rational& v, const Rational& beta) {
    auto positive = [](const Rational& x) { return x.num() > 0; };
    auto weight_ok = [](const Rational& x) { return (x + Rational(1)).num() > 0; };
    if (!positive(p) || !positive(q) || !positive(u) || !positive(v))
        throw std::domain_error("exponents must be > 0");
    if (!weight_ok(alpha) || !weight_ok(beta)) throw std::domain_error("weights must be > -1");
    if (N == 0) return {true, "sup-const"};

    const Rational nd(static_cast<std::int64_t>(N));
    auto leq = [](const Rational& a, const Rational& b) {
        return (b - a).num() >= 0; // exact sign test
    };
    if (!leq(nd * u, p)) return {false, "sup-none"};
    const Rational lhs = nd * v * (alpha + Rational(1)); // N <= q(beta+1)/(v(alpha+1))
    const Rational rhs = q * (beta + Rational(1));
    if (leq(alpha, beta)) {
        if (leq(lhs, rhs)) return {true, "sup-i"};
        return {false, "sup-none"};
    }
    if (lhs == rhs) return {false, "boundary"};
    if (leq(lhs, rhs)) return {true, "sup-ii"};
    return {false, "sup-none"};
}

/// Superposition between a Hardy space and a mixed norm space:
/// Hardy -> mixed admits degrees N <= p/u; mixed -> Hardy admits only
/// constants.
inline RegionVerdict superposition_hardy_decide(unsigned N, double p, double u, double v,
                                                double alpha, Direction direction) {
    detail::require_exponent(p, "p");
    detail::require_exponent(u, "u");
    detail::require_exponent(v, "v");
    detail::require_weight(alpha, "alpha");
    if (direction == Direction::mixed_to_hardy)
        return N == 0 ? RegionVerdict{true, "sh-const"} : RegionVerdict{false, "sh-none"};
    if (N == 0) return {true, "sh-const"};
    if (detail::fuzzy_compare(static_cast<double>(N), p / u) != detail::Cmp::greater)
        return {true, "sh-i"};
    return {false, "sh-none"};
}

/// Report of the exact power identity ||f^N||_{H^{2k}} = ||f||^N_{H^{2kN}}:
/// both routes and their relative deviation. Exact arithmetic makes the
/// deviation vanish; floating point keeps it near rounding level.
struct PowerIdentityReport {
    double lhs = 0.0; // ||f^N||_{H^{2k}}
    double rhs = 0.0; // ||f||^N_{H^{2kN}}
    double relative_deviation = 0.0;
};

inline PowerIdentityReport prop_nn_check(const DirichletPolynomial& f, unsigned N, unsigned k) {
    if (N == 0 || k == 0) throw std::domain_error("prop_nn_check: N and k must be >= 1");
    PowerIdentityReport report;
    report.lhs = hp_norm_exact_even(power(f, N), k);
    report.rhs = std::pow(hp_norm_exact_even(f, k * N), static_cast<double>(N));
    double scale = std::max({std::fabs(report.lhs), std::fabs(report.rhs), 1e-300});
    report.relative_deviation = std::fabs(report.lhs - report.rhs) / scale;
    return report;
}

/// Rational-mode version: both routes reduce to the same exact rational
/// square sum, so the comparison is equality of rationals.
struct RationalPowerIdentityReport {
    Rational lhs_power_sum{0};   // ||f^N||_{H^{2k}}^{2k} as h2^2 of (f^N)^k
    Rational rhs_power_sum{0};   // ||f||_{H^{2kN}}^{2kN} as h2^2 of f^{kN}
    bool equal = false;
};

inline RationalPowerIdentityReport prop_nn_check_exact(const RationalPolynomial& f, unsigned N,
                                                       unsigned k) {
    if (N == 0 || k == 0) throw std::domain_error("prop_nn_check_exact: N and k must be >= 1");
    RationalPowerIdentityReport report;
    report.lhs_power_sum = h2_norm_squared(power(power(f, N), k));
    report.rhs_power_sum = h2_norm_squared(power(f, k * N));
    report.equal = report.lhs_power_sum == report.rhs_power_sum;
    return report;
}

} // namespace dirichlet
