#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "dirichlet/norms.hpp"
#include "dirichlet/polynomial.hpp"

namespace dirichlet {

/// Decision plus the clause that produced it, so boundary cells can be
/// rendered open or closed faithfully.
struct RegionVerdict {
    bool included = false;
    std::string rule;
};

namespace detail {

enum class Cmp { less, equal, greater };

/// Three-way comparison with relative tolerance 1e-12; infinities compare
/// exactly.
inline Cmp fuzzy_compare(double a, double b) {
    if (a == b) return Cmp::equal;
    double scale = std::max({std::fabs(a), std::fabs(b), 1e-300});
    if (std::isinf(scale)) return a < b ? Cmp::less : Cmp::greater;
    if (std::fabs(a - b) <= 1e-12 * scale) return Cmp::equal;
    return a < b ? Cmp::less : Cmp::greater;
}

/// (alpha+1)/q extended to the Hardy case q = inf, where it vanishes.
inline double tail_index(double q, double alpha) {
    return std::isinf(q) ? 0.0 : (alpha + 1.0) / q;
}

inline void require_exponent(double x, const char* name) {
    if (!(x > 0.0)) throw std::domain_error(std::string(name) + " must be > 0");
}

inline void require_weight(double a, const char* name) {
    if (!(a > -1.0)) throw std::domain_error(std::string(name) + " must be > -1");
}

/// Shared clause arithmetic for the inclusion-shaped regions: given that the
/// leading exponents already compare as p >= u, decide on the tail indices
/// (alpha+1)/q vs (beta+1)/v with the closed edge q <= v.
inline RegionVerdict tail_clause(double q, double alpha, double v, double beta,
                                 const char* prefix) {
    Cmp c = fuzzy_compare(tail_index(q, alpha), tail_index(v, beta));
    if (c == Cmp::less) return {true, std::string(prefix) + "-i"};
    if (c == Cmp::equal) {
        if (fuzzy_compare(q, v) != Cmp::greater) return {true, std::string(prefix) + "-ii"};
        return {false, "boundary"};
    }
    return {false, std::string(prefix) + "-none"};
}

} // namespace detail

/// Inclusion of the mixed norm space (p, q, alpha) into (u, v, beta):
/// included iff p >= u together with a strict tail-index inequality
/// (rule "em-i") or tail-index equality with q <= v (rule "em-ii").
/// Excluded points on the equality edge are tagged "boundary".
/// q = inf or v = inf encode Hardy spaces on either side; the extended
/// arithmetic reproduces the Hardy/mixed inclusion rules.
inline RegionVerdict inclusion_decide(double p, double q, double alpha, double u, double v,
                                      double beta) {
    detail::require_exponent(p, "p");
    detail::require_exponent(q, "q");
    detail::require_exponent(u, "u");
    detail::require_exponent(v, "v");
    if (!std::isinf(q)) detail::require_weight(alpha, "alpha");
    if (!std::isinf(v)) detail::require_weight(beta, "beta");

    if (detail::fuzzy_compare(p, u) == detail::Cmp::less) return {false, "em-none"};
    return detail::tail_clause(q, alpha, v, beta, "em");
}

/// Almost-sure random embedding of (p, q, alpha) into (u, v, beta):
/// the symbol space of the target is (2, v, beta), so the leading-exponent
/// requirement becomes p >= 2 and u drops out. Hardy spaces on either side
/// are handled through q = inf / v = inf.
inline RegionVerdict random_embedding_decide(const SpaceParams& source,
                                             const SpaceParams& target) {
    source.validate();
    target.validate();
    if (detail::fuzzy_compare(source.p, 2.0) == detail::Cmp::less) return {false, "rem-none"};
    return detail::tail_clause(source.q, source.alpha, target.q, target.alpha, "rem");
}

/// Hardy vs mixed inclusions: the forward direction holds iff p >= u,
/// the reverse direction never holds.
enum class Direction { hardy_to_mixed, mixed_to_hardy };

inline RegionVerdict hardy_mixed_inclusion_decide(double p, double u, double v, double alpha,
                                                  Direction direction) {
    detail::require_exponent(p, "p");
    detail::require_exponent(u, "u");
    detail::require_exponent(v, "v");
    detail::require_weight(alpha, "alpha");
    if (direction == Direction::hardy_to_mixed)
        return inclusion_decide(p, kInf, 0.0, u, v, alpha);
    return {false, "em-none"};
}

/// Reference region: almost-sure randomization between Bergman spaces over
/// the unit disk. Included iff 0 < p < 2 with 1/q - 2/p + 1/2 > 0 (strict,
/// rule "disk-i") or p >= 2 with q <= p (closed, rule "disk-ii").
inline RegionVerdict littlewood_disk_decide(double p, double q) {
    detail::require_exponent(p, "p");
    detail::require_exponent(q, "q");
    if (detail::fuzzy_compare(p, 2.0) == detail::Cmp::less) {
        double margin = 1.0 / q - 2.0 / p + 0.5;
        detail::Cmp c = detail::fuzzy_compare(margin, 0.0);
        if (c == detail::Cmp::greater) return {true, "disk-i"};
        if (c == detail::Cmp::equal) return {false, "boundary"};
        return {false, "disk-none"};
    }
    detail::Cmp c = detail::fuzzy_compare(q, p);
    if (c != detail::Cmp::greater) return {true, "disk-ii"};
    return {false, "disk-none"};
}

// ---------------------------------------------------------------------------
// Witness families certifying sharpness of the excluded regions.
// All three live on the double-exponential lacunary indices 2^(2^n), which
// leave 64-bit range at level 6.

inline constexpr unsigned kMaxLacunaryLevel = 5;

/// Index of lacunary level n, i.e. 2^(2^n). Levels above 5 overflow.
inline std::uint64_t lacunary_index(unsigned level) {
    if (level > kMaxLacunaryLevel)
        throw std::overflow_error("lacunary index overflows 64 bits beyond level 5");
    return 1ull << (1ull << level);
}

/// Level of a lacunary index, if the index is one.
inline bool lacunary_level_of(std::uint64_t n, unsigned* level_out) {
    if (n < 2 || (n & (n - 1)) != 0) return false;
    unsigned log2n = static_cast<unsigned>(__builtin_ctzll(n));
    if ((log2n & (log2n - 1)) != 0) return false; // log2 must itself be a power of two
    unsigned level = static_cast<unsigned>(__builtin_ctz(log2n));
    if (level_out) *level_out = level;
    return true;
}

/// Witness against a strictly larger target tail index: coefficients
/// 2^{(beta+1) n / v} at lacunary levels n = 0..L. Its proxy is summable in
/// any (q, alpha) with (alpha+1)/q > (beta+1)/v and divergent in (v, beta).
inline DirichletPolynomial witness_f1(double beta, double v, unsigned level) {
    detail::require_exponent(v, "v");
    detail::require_weight(beta, "beta");
    if (level < 1) throw std::domain_error("witness_f1: level must be >= 1");
    if (level > kMaxLacunaryLevel)
        throw std::overflow_error("witness_f1: indices overflow 64 bits beyond level " +
                                  std::to_string(kMaxLacunaryLevel));
    DirichletPolynomial::term_map terms;
    for (unsigned n = 0; n <= level; ++n)
        terms.emplace(lacunary_index(n),
                      std::complex<double>(std::pow(2.0, (beta + 1.0) * n / v), 0.0));
    return DirichletPolynomial(std::move(terms));
}

/// Witness for the equality edge with q > v: coefficients
/// 2^{(alpha+1) n / q} n^{-1/v} at lacunary levels n = 1..L.
inline DirichletPolynomial witness_f2(double alpha, double q, double v, unsigned level) {
    detail::require_exponent(q, "q");
    detail::require_exponent(v, "v");
    detail::require_weight(alpha, "alpha");
    if (level < 1) throw std::domain_error("witness_f2: level must be >= 1");
    if (level > kMaxLacunaryLevel)
        throw std::overflow_error("witness_f2: indices overflow 64 bits beyond level " +
                                  std::to_string(kMaxLacunaryLevel));
    DirichletPolynomial::term_map terms;
    for (unsigned n = 1; n <= level; ++n)
        terms.emplace(lacunary_index(n),
                      std::complex<double>(std::pow(2.0, (alpha + 1.0) * n / q) *
                                               std::pow(static_cast<double>(n), -1.0 / v),
                                           0.0));
    return DirichletPolynomial(std::move(terms));
}

/// Witness for p < u: truncated Euler product over the first k primes with
/// binomial-series coefficients of exponent eta. Coefficient at
/// n = prod p_j^{e_j} is prod C(e_j + eta - 1, e_j); support is the
/// p_k-smooth integers up to max_index.
inline DirichletPolynomial witness_f3(unsigned k, double eta, std::uint64_t max_index) {
    if (k < 1) throw std::domain_error("witness_f3: k must be >= 1");
    if (max_index < 1) throw std::domain_error("witness_f3: max_index must be >= 1");
    auto binom = [eta](std::uint32_t e) {
        double c = 1.0;
        for (std::uint32_t i = 1; i <= e; ++i) c *= (eta + i - 1.0) / i;
        return c;
    };
    DirichletPolynomial::term_map terms;
    for (std::uint64_t n : smooth_numbers(k, max_index)) {
        MultiIndex nu = factorize(n);
        double c = 1.0;
        for (std::size_t j = 0; j < nu.size(); ++j) c *= binom(nu[j]);
        terms.emplace(n, std::complex<double>(c, 0.0));
    }
    return DirichletPolynomial(std::move(terms));
}

/// The k for witness_f3 prescribed by the sharpness argument:
/// floor(u (beta+1) / ((u eta - 1) v)) + 1 for 1/u < eta.
inline unsigned witness_f3_prime_count(double u, double v, double beta, double eta) {
    if (!(eta * u > 1.0)) throw std::domain_error("witness_f3_prime_count: need eta > 1/u");
    return static_cast<unsigned>(std::floor(u * (beta + 1.0) / ((u * eta - 1.0) * v))) + 1;
}

/// Proxy of a lacunary coefficient profile |a_n| over levels 0..levels-1:
/// sum of 2^{-(alpha+1) n} |a_n|^q. Levels beyond the 64-bit index ceiling
/// are only reachable through this form.
inline double lacunary_proxy_profile(const std::function<double(unsigned)>& coeff_abs,
                                     unsigned levels, double q, double alpha) {
    detail::require_exponent(q, "q");
    detail::require_weight(alpha, "alpha");
    double acc = 0.0;
    for (unsigned n = 0; n < levels; ++n)
        acc += std::pow(2.0, -(alpha + 1.0) * static_cast<double>(n)) *
               std::pow(std::fabs(coeff_abs(n)), q);
    return acc;
}

/// Summed lacunary proxy: sum over levels n of 2^{-(alpha+1) n} |a_n|^q.
/// Two-sided comparable to the q-th power of the (p, q, alpha) mixed norm
/// for every p, with constants independent of the truncation level.
inline double lacunary_proxy(const DirichletPolynomial& f, double q, double alpha) {
    detail::require_exponent(q, "q");
    detail::require_weight(alpha, "alpha");
    double acc = 0.0;
    for (const auto& [n, a] : f.terms()) {
        unsigned level = 0;
        if (!lacunary_level_of(n, &level))
            throw std::domain_error("lacunary_proxy: support must lie on indices 2^(2^n)");
        acc += std::pow(2.0, -(alpha + 1.0) * static_cast<double>(level)) *
               std::pow(std::abs(a), q);
    }
    return acc;
}

// ---------------------------------------------------------------------------
// Region grids (figure reproduction)

/// Axis spec "min:max:steps" -> steps+1 equally spaced values.
struct GridAxis {
    double min = 0.0;
    double max = 0.0;
    unsigned steps = 0;

    std::vector<double> values() const {
        std::vector<double> out;
        for (unsigned i = 0; i <= steps; ++i)
            out.push_back(min + (max - min) * static_cast<double>(i) / steps);
        return out;
    }
};

inline GridAxis parse_axis(const std::string& text) {
    std::size_t c1 = text.find(':');
    std::size_t c2 = text.find(':', c1 + 1);
    if (c1 == std::string::npos || c2 == std::string::npos)
        throw std::domain_error("grid axis: expected min:max:steps");
    GridAxis axis;
    axis.min = std::stod(text.substr(0, c1));
    axis.max = std::stod(text.substr(c1 + 1, c2 - c1 - 1));
    axis.steps = static_cast<unsigned>(std::stoul(text.substr(c2 + 1)));
    if (!(axis.min > 0.0) || !(axis.max > axis.min) || axis.steps == 0)
        throw std::domain_error("grid axis: need 0 < min < max and steps >= 1");
    return axis;
}

/// Grid spec "pmin:pmax:steps,qmin:qmax:steps".
inline std::pair<GridAxis, GridAxis> parse_grid(const std::string& text) {
    std::size_t comma = text.find(',');
    if (comma == std::string::npos)
        throw std::domain_error("grid: expected paxis,qaxis");
    return {parse_axis(text.substr(0, comma)), parse_axis(text.substr(comma + 1))};
}

/// CSV rows "p,q,included,rule" for a (p, q) grid of any decider. Row order
/// follows the grid spec: p outer ascending, q inner ascending.
inline std::string region_grid_csv(const std::function<RegionVerdict(double, double)>& decide,
                                   const GridAxis& p_axis, const GridAxis& q_axis) {
    std::ostringstream out;
    out << "p,q,included,rule\n";
    char buf[64];
    for (double p : p_axis.values())
        for (double q : q_axis.values()) {
            RegionVerdict v = decide(p, q);
            std::snprintf(buf, sizeof(buf), "%.17g,%.17g,", p, q);
            out << buf << (v.included ? 1 : 0) << ',' << v.rule << '\n';
        }
    return out.str();
}

/// Named grid deciders. "random-bergman" scans source/target Bergman
/// exponents at fixed weights (the fig3/fig4/fig5 presets); "random-hardy"
/// scans Hardy exponents; "littlewood-disk" is the unit-disk reference;
/// "inclusion" scans the source (p, q) against a fixed target.
inline std::function<RegionVerdict(double, double)> grid_decider(
    const std::string& tag, double alpha, double beta, double u = 2.0, double v = 2.0) {
    if (tag == "random-bergman")
        return [alpha, beta](double p, double q) {
            return random_embedding_decide(SpaceParams::bergman(p, alpha),
                                           SpaceParams::bergman(q, beta));
        };
    if (tag == "random-hardy")
        return [](double p, double q) {
            return random_embedding_decide(SpaceParams::hardy(p), SpaceParams::hardy(q));
        };
    if (tag == "littlewood-disk")
        return [](double p, double q) { return littlewood_disk_decide(p, q); };
    if (tag == "inclusion")
        return [alpha, beta, u, v](double p, double q) {
            return inclusion_decide(p, q, alpha, u, v, beta);
        };
    throw std::domain_error("unknown region decider: " + tag);
}

} // namespace dirichlet
