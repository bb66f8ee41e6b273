#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "dirichlet/primes.hpp"
#include "dirichlet/rational.hpp"

namespace dirichlet {

inline double abs_squared(const std::complex<double>& z) { return std::norm(z); }
inline bool is_zero(const std::complex<double>& z) { return z.real() == 0.0 && z.imag() == 0.0; }

/// Finite Dirichlet series sum a_n n^{-s}, stored as an ordered map from
/// index n >= 1 to its coefficient. Exact-zero coefficients are pruned on
/// construction, so polynomials differing only in explicit zeros compare
/// equal. Immutable in spirit: all operations return new values.
template <typename Coeff>
class PolynomialT {
public:
    using coeff_type = Coeff;
    using term_map = std::map<std::uint64_t, Coeff>;

    PolynomialT() = default;

    explicit PolynomialT(term_map terms) : terms_(std::move(terms)) { prune(); }

    PolynomialT(std::initializer_list<std::pair<std::uint64_t, Coeff>> init) {
        for (const auto& [n, a] : init) addTerm(n, a);
        prune();
    }

    /// The monomial c * n^{-s}.
    static PolynomialT monomial(std::uint64_t n, Coeff c) {
        PolynomialT f;
        f.addTerm(n, c);
        f.prune();
        return f;
    }

    /// Multiplicative unit 1^{-s}.
    static PolynomialT one() { return monomial(1, Coeff(1)); }

    const term_map& terms() const { return terms_; }
    bool isZero() const { return terms_.empty(); }
    std::size_t termCount() const { return terms_.size(); }

    /// Largest index with nonzero coefficient; 0 for the zero polynomial.
    std::uint64_t maxIndex() const { return terms_.empty() ? 0 : terms_.rbegin()->first; }

    Coeff coefficient(std::uint64_t n) const {
        auto it = terms_.find(n);
        return it == terms_.end() ? Coeff(0) : it->second;
    }

    friend bool operator==(const PolynomialT& a, const PolynomialT& b) {
        return a.terms_ == b.terms_;
    }

    friend PolynomialT operator+(const PolynomialT& a, const PolynomialT& b) {
        term_map out = a.terms_;
        for (const auto& [n, c] : b.terms_) {
            auto [it, inserted] = out.emplace(n, c);
            if (!inserted) it->second += c;
        }
        return PolynomialT(std::move(out));
    }

    friend PolynomialT operator-(const PolynomialT& a, const PolynomialT& b) {
        term_map out = a.terms_;
        for (const auto& [n, c] : b.terms_) {
            auto [it, inserted] = out.emplace(n, -c);
            if (!inserted) it->second -= c;
        }
        return PolynomialT(std::move(out));
    }

    friend PolynomialT operator*(const Coeff& c, const PolynomialT& f) {
        term_map out;
        for (const auto& [n, a] : f.terms_) out.emplace(n, c * a);
        return PolynomialT(std::move(out));
    }

private:
    void addTerm(std::uint64_t n, const Coeff& c) {
        if (n == 0) throw std::domain_error("DirichletPolynomial: index must be >= 1");
        auto [it, inserted] = terms_.emplace(n, c);
        if (!inserted) it->second += c;
    }

    void prune() {
        if (!terms_.empty() && terms_.begin()->first == 0)
            throw std::domain_error("DirichletPolynomial: index must be >= 1");
        for (auto it = terms_.begin(); it != terms_.end();) {
            if (is_zero(it->second))
                it = terms_.erase(it);
            else
                ++it;
        }
    }

    term_map terms_;
};

using DirichletPolynomial = PolynomialT<std::complex<double>>;
using RationalPolynomial = PolynomialT<Rational>;

/// Multiplicative convolution: coefficient of f*g at m is
/// sum over d | m of f[d] * g[m/d]. Index overflow throws.
template <typename C>
PolynomialT<C> multiply(const PolynomialT<C>& f, const PolynomialT<C>& g) {
    if (f.isZero() || g.isZero()) return PolynomialT<C>();

    std::uint64_t bound;
    if (__builtin_mul_overflow(f.maxIndex(), g.maxIndex(), &bound))
        throw std::overflow_error("multiply: product index exceeds 64 bits");

    // Dense accumulation when the index range is small relative to the work;
    // otherwise accumulate into a hash map keyed by product index.
    if (bound <= (1u << 22)) {
        std::vector<C> acc(bound + 1, C(0));
        for (const auto& [n1, a1] : f.terms())
            for (const auto& [n2, a2] : g.terms()) acc[n1 * n2] += a1 * a2;
        typename PolynomialT<C>::term_map out;
        auto hint = out.end();
        for (std::uint64_t m = 1; m <= bound; ++m)
            if (!is_zero(acc[m])) hint = out.emplace_hint(hint, m, acc[m]);
        return PolynomialT<C>(std::move(out));
    }

    std::unordered_map<std::uint64_t, C> acc;
    acc.reserve(f.termCount() * g.termCount());
    for (const auto& [n1, a1] : f.terms())
        for (const auto& [n2, a2] : g.terms()) {
            std::uint64_t m = n1 * n2; // cannot overflow: both <= maxIndex, product <= bound
            auto [it, inserted] = acc.emplace(m, a1 * a2);
            if (!inserted) it->second += a1 * a2;
        }
    typename PolynomialT<C>::term_map out(acc.begin(), acc.end());
    return PolynomialT<C>(std::move(out));
}

/// f^N by repeated convolution; power(f, 0) is the unit 1^{-s}.
template <typename C>
PolynomialT<C> power(const PolynomialT<C>& f, unsigned exponent) {
    PolynomialT<C> result = PolynomialT<C>::one();
    for (unsigned i = 0; i < exponent; ++i) result = multiply(result, f);
    return result;
}

/// Horizontal translation f(s + sigma): a_n -> a_n * n^{-sigma}.
/// Negative sigma is allowed (it amplifies high indices).
inline DirichletPolynomial translate(const DirichletPolynomial& f, double sigma) {
    DirichletPolynomial::term_map out;
    for (const auto& [n, a] : f.terms())
        out.emplace(n, a * std::exp(-sigma * std::log(static_cast<double>(n))));
    return DirichletPolynomial(std::move(out));
}

/// Partial sum S_N: keep indices n <= N.
template <typename C>
PolynomialT<C> partial_sum(const PolynomialT<C>& f, std::uint64_t N) {
    if (N == 0) throw std::domain_error("partial_sum: N must be >= 1");
    typename PolynomialT<C>::term_map out;
    for (const auto& [n, a] : f.terms()) {
        if (n > N) break;
        out.emplace(n, a);
    }
    return PolynomialT<C>(std::move(out));
}

/// Abschnitt A_d: keep indices whose prime factors are among the first d
/// primes (index 1 always survives).
template <typename C>
PolynomialT<C> abschnitt(const PolynomialT<C>& f, std::size_t d) {
    if (d == 0) throw std::domain_error("abschnitt: d must be >= 1");
    std::uint64_t pd = PrimeTable::instance().nth(d - 1);
    typename PolynomialT<C>::term_map out;
    for (const auto& [n, a] : f.terms())
        if (largest_prime_factor(n) <= pd) out.emplace(n, a);
    return PolynomialT<C>(std::move(out));
}

/// Pointwise value sum a_n n^{-s} with n^{-s} = exp(-s log n).
inline std::complex<double> evaluate(const DirichletPolynomial& f, std::complex<double> s) {
    std::complex<double> acc(0.0, 0.0);
    for (const auto& [n, a] : f.terms())
        acc += a * std::exp(-s * std::log(static_cast<double>(n)));
    return acc;
}

/// Bohr lift: re-index by prime exponent vectors. The coefficient at
/// nu(n) is a_n; term count is preserved.
template <typename C>
std::map<MultiIndex, C> bohr_lift(const PolynomialT<C>& f) {
    std::map<MultiIndex, C> out;
    for (const auto& [n, a] : f.terms()) out.emplace(factorize(n), a);
    return out;
}

/// Distinct primes dividing any support index, as 0-based ranks.
/// This is the minimal torus dimension for Monte Carlo norms.
template <typename C>
std::vector<std::size_t> support_prime_ranks(const PolynomialT<C>& f) {
    std::vector<bool> seen;
    for (const auto& [n, a] : f.terms()) {
        MultiIndex nu = factorize(n);
        if (nu.size() > seen.size()) seen.resize(nu.size(), false);
        for (std::size_t j = 0; j < nu.size(); ++j)
            if (nu[j] > 0) seen[j] = true;
    }
    std::vector<std::size_t> ranks;
    for (std::size_t j = 0; j < seen.size(); ++j)
        if (seen[j]) ranks.push_back(j);
    return ranks;
}

/// Convert a rational-coefficient polynomial to floating point.
inline DirichletPolynomial to_double(const RationalPolynomial& f) {
    DirichletPolynomial::term_map out;
    for (const auto& [n, a] : f.terms()) out.emplace(n, std::complex<double>(a.toDouble(), 0.0));
    return DirichletPolynomial(std::move(out));
}

} // namespace dirichlet
