#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "dirichlet/norms.hpp"
#include "dirichlet/parallel.hpp"
#include "dirichlet/polynomial.hpp"
#include "dirichlet/random.hpp"

namespace dirichlet {

enum class Verdict { stabilizing, diverging, inconclusive };

inline std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::stabilizing: return "stabilizing";
        case Verdict::diverging: return "diverging";
        case Verdict::inconclusive: return "inconclusive";
    }
    return "?";
}

/// Classify a trajectory of non-negative statistics along an ascending
/// truncation schedule. "stabilizing": the last two values agree within 5%
/// relative. "diverging": the last value exceeds 10x the first and the last
/// four points are monotone increasing. Anything else is reported honestly
/// as inconclusive.
inline Verdict classify_trajectory(const std::vector<double>& stats) {
    if (stats.size() < 2) return Verdict::inconclusive;
    double last = stats.back();
    double prev = stats[stats.size() - 2];
    if (std::fabs(last - prev) <= 0.05 * std::max(std::fabs(last), 1e-300) ||
        (last == 0.0 && prev == 0.0))
        return Verdict::stabilizing;
    if (stats.size() >= 4 && last > 10.0 * stats.front()) {
        bool monotone = true;
        for (std::size_t i = stats.size() - 4; i + 1 < stats.size(); ++i)
            if (stats[i + 1] <= stats[i]) monotone = false;
        if (monotone) return Verdict::diverging;
    }
    return Verdict::inconclusive;
}

/// Outcome of a membership or partial-sum experiment: the schedule, the
/// statistic at each schedule point, and the dichotomy verdict.
struct ExperimentReport {
    std::string mode;          // "symbol" or "partial-sum"
    std::string model;         // model name, or "none" for symbol runs
    SpaceParams space;
    std::vector<std::uint64_t> schedule;
    std::vector<double> stats;
    Verdict verdict = Verdict::inconclusive;
    std::uint64_t seed = 0;
    std::uint64_t trials = 0;
};

/// Truncation schedules: either an explicit comma list "8,64,512" or a
/// geometric spec "start:factor:count".
inline std::vector<std::uint64_t> parse_schedule(const std::string& text) {
    std::vector<std::uint64_t> out;
    if (text.find(':') != std::string::npos) {
        std::size_t c1 = text.find(':');
        std::size_t c2 = text.find(':', c1 + 1);
        if (c2 == std::string::npos)
            throw std::domain_error("schedule: expected start:factor:count");
        std::uint64_t start = std::stoull(text.substr(0, c1));
        std::uint64_t factor = std::stoull(text.substr(c1 + 1, c2 - c1 - 1));
        std::uint64_t count = std::stoull(text.substr(c2 + 1));
        if (start == 0 || factor < 2 || count == 0)
            throw std::domain_error("schedule: expected start:factor:count with factor >= 2");
        std::uint64_t n = start;
        for (std::uint64_t i = 0; i < count; ++i) {
            out.push_back(n);
            if (i + 1 < count && __builtin_mul_overflow(n, factor, &n))
                throw std::overflow_error("schedule: truncation exceeds 64 bits");
        }
        return out;
    }
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t next = text.find(',', pos);
        if (next == std::string::npos) next = text.size();
        out.push_back(std::stoull(text.substr(pos, next - pos)));
        pos = next + 1;
    }
    for (std::size_t i = 0; i + 1 < out.size(); ++i)
        if (out[i + 1] <= out[i]) throw std::domain_error("schedule: must be strictly increasing");
    if (out.empty()) throw std::domain_error("schedule: empty");
    return out;
}

/// Monte Carlo moment of the randomized norm: (E ||R f||^t)^{1/t} with the
/// delta-method standard error. The inner norm is exact whenever the space
/// allows it (p = 2 or even), Monte Carlo otherwise.
inline NormEstimate expected_norm_mc(const DirichletPolynomial& f, const SpaceParams& space,
                                     RandomKind kind, std::uint64_t trials, double t,
                                     std::uint64_t master_seed, unsigned threads = 0,
                                     const QuadratureSpec& spec = {},
                                     std::uint64_t inner_mc_trials = 4096) {
    space.validate();
    if (trials < 2) throw std::domain_error("expected_norm_mc: trials must be >= 2");
    if (!(t > 0.0)) throw std::domain_error("expected_norm_mc: t must be > 0");

    std::vector<double> values(trials);
    parallel_for_index(trials, threads, [&](std::size_t i) {
        std::uint64_t sub = derive_seed(master_seed, i);
        DirichletPolynomial sample = randomize(f, {kind, sub});
        McParams inner_mc{inner_mc_trials, derive_seed(sub, 0x6d63), 1};
        values[i] = mixed_norm(sample, space, spec, InnerNorm::automatic, inner_mc).value;
    });

    double mean = 0.0;
    for (double v : values) mean += std::pow(v, t);
    mean /= static_cast<double>(trials);
    double var = 0.0;
    for (double v : values) {
        double d = std::pow(v, t) - mean;
        var += d * d;
    }
    var /= static_cast<double>(trials) - 1.0;
    double se = std::sqrt(var / static_cast<double>(trials));

    NormEstimate est;
    est.value = std::pow(mean, 1.0 / t);
    est.method = NormMethod::monte_carlo;
    est.error = mean > 0.0 ? se * std::pow(mean, 1.0 / t - 1.0) / t : 0.0;
    est.n = trials;
    return est;
}

/// Khintchine-type moment ratio (E ||R f||_{H^p}^p)^{1/p} / ||f||_{H^2}.
/// Classical moment comparison keeps this in a band depending only on
/// (p, model); unimodular models give exactly 1 at p = 2.
inline double khintchine_ratio(const DirichletPolynomial& f, double p, RandomKind kind,
                               std::uint64_t trials, std::uint64_t seed, unsigned threads = 0,
                               std::uint64_t inner_mc_trials = 4096) {
    if (f.isZero()) throw std::invalid_argument("khintchine_ratio: zero polynomial");
    if (!(p > 0.0)) throw std::domain_error("khintchine_ratio: p must be > 0");
    if (trials == 0) throw std::domain_error("khintchine_ratio: trials must be >= 1");

    unsigned k = 0;
    const bool even = detail::even_exponent(p, &k);
    std::vector<double> powers(trials);
    parallel_for_index(trials, threads, [&](std::size_t i) {
        std::uint64_t sub = derive_seed(seed, i);
        DirichletPolynomial sample = randomize(f, {kind, sub});
        if (even) {
            powers[i] = k == 1 ? h2_norm_squared(sample)
                               : h2_norm_squared(power(sample, k)); // = ||.||_{2k}^{2k}
        } else {
            NormEstimate est = hp_norm_mc(sample, p, {inner_mc_trials, derive_seed(sub, 0x6d63), 1});
            powers[i] = std::pow(est.value, p);
        }
    });
    double mean = 0.0;
    for (double v : powers) mean += v;
    mean /= static_cast<double>(trials);
    return std::pow(mean, 1.0 / p) / h2_norm(f);
}

/// Tail report for the randomized norm distribution: empirical quantiles of
/// ||R f||^r over independent randomizations. Exponential integrability of
/// the norm is not testable at this scale, so the report carries no
/// pass/fail semantics; it is descriptive output only.
inline std::vector<double> randomized_norm_tail(const DirichletPolynomial& f,
                                                const SpaceParams& space, RandomKind kind,
                                                std::uint64_t trials, double r,
                                                std::uint64_t master_seed,
                                                const std::vector<double>& quantiles,
                                                unsigned threads = 0,
                                                const QuadratureSpec& spec = {}) {
    space.validate();
    if (trials == 0) throw std::domain_error("randomized_norm_tail: trials must be >= 1");
    if (!(r > 0.0)) throw std::domain_error("randomized_norm_tail: r must be > 0");
    std::vector<double> values(trials);
    parallel_for_index(trials, threads, [&](std::size_t i) {
        std::uint64_t sub = derive_seed(master_seed, i);
        DirichletPolynomial sample = randomize(f, {kind, sub});
        McParams inner_mc{4096, derive_seed(sub, 0x6d63), 1};
        values[i] = std::pow(mixed_norm(sample, space, spec, InnerNorm::automatic, inner_mc).value, r);
    });
    std::sort(values.begin(), values.end());
    std::vector<double> out;
    for (double q : quantiles) {
        if (!(q >= 0.0 && q <= 1.0))
            throw std::domain_error("randomized_norm_tail: quantiles lie in [0, 1]");
        std::size_t idx = static_cast<std::size_t>(q * (trials - 1) + 0.5);
        out.push_back(values[idx]);
    }
    return out;
}

/// Deterministic symbol-space test: evaluates the membership functional of
/// (2, q, alpha) along truncations of the coefficient stream (for Hardy
/// targets, the plain coefficient square sum). Stabilizing values predict
/// that the randomized series lies in the space almost surely; divergence
/// predicts almost-sure non-membership.
inline ExperimentReport symbol_membership(
    const std::function<std::complex<double>(std::uint64_t)>& coeff, const SpaceParams& space,
    const std::vector<std::uint64_t>& truncations, const QuadratureSpec& spec = {}) {
    space.validate();
    for (std::size_t i = 1; i < truncations.size(); ++i)
        if (truncations[i] <= truncations[i - 1])
            throw std::domain_error("symbol_membership: truncations must ascend");
    ExperimentReport report;
    report.mode = "symbol";
    report.model = "none";
    report.space = space;
    report.schedule = truncations;
    if (space.isHardy()) {
        double acc = 0.0;
        std::uint64_t n = 1;
        for (std::uint64_t N : truncations) {
            for (; n <= N; ++n) acc += std::norm(coeff(n));
            report.stats.push_back(acc);
        }
    } else {
        report.stats = h2q_membership_functional(coeff, space.q, space.alpha, spec, truncations);
    }
    report.verdict = classify_trajectory(report.stats);
    return report;
}

/// Randomized partial-sum experiment: per truncation N, the median over
/// trials of ||S_N(R f)|| in the target space. Stabilizing medians
/// corroborate almost-sure membership.
inline ExperimentReport partial_sum_experiment(
    const std::function<std::complex<double>(std::uint64_t)>& coeff, const SpaceParams& space,
    RandomKind kind, const std::vector<std::uint64_t>& truncations, std::uint64_t trials,
    std::uint64_t master_seed, unsigned threads = 0, const QuadratureSpec& spec = {},
    std::uint64_t inner_mc_trials = 4096) {
    space.validate();
    if (trials == 0) throw std::domain_error("partial_sum_experiment: trials must be >= 1");
    for (std::size_t i = 0; i + 1 < truncations.size(); ++i)
        if (truncations[i + 1] <= truncations[i])
            throw std::domain_error("partial_sum_experiment: truncations must ascend");

    ExperimentReport report;
    report.mode = "partial-sum";
    report.model = to_string(kind);
    report.space = space;
    report.schedule = truncations;
    report.seed = master_seed;
    report.trials = trials;

    // materialize the largest truncation once
    DirichletPolynomial::term_map terms;
    for (std::uint64_t n = 1; n <= truncations.back(); ++n) {
        std::complex<double> a = coeff(n);
        if (!is_zero(a)) terms.emplace(n, a);
    }
    DirichletPolynomial full(std::move(terms));

    for (std::uint64_t N : truncations) {
        DirichletPolynomial fN = partial_sum(full, N);
        std::vector<double> values(trials);
        parallel_for_index(trials, threads, [&](std::size_t i) {
            std::uint64_t sub = derive_seed(master_seed, i);
            DirichletPolynomial sample = randomize(fN, {kind, sub});
            McParams inner_mc{inner_mc_trials, derive_seed(sub, 0x6d63), 1};
            values[i] = mixed_norm(sample, space, spec, InnerNorm::automatic, inner_mc).value;
        });
        std::sort(values.begin(), values.end());
        double median = (trials % 2 == 1)
                            ? values[trials / 2]
                            : 0.5 * (values[trials / 2 - 1] + values[trials / 2]);
        report.stats.push_back(median);
    }
    report.verdict = classify_trajectory(report.stats);
    return report;
}

/// Named coefficient streams used by the CLI and the test harness.
inline std::function<std::complex<double>(std::uint64_t)> named_generator(const std::string& name) {
    if (name == "harmonic")
        return [](std::uint64_t n) { return std::complex<double>(1.0 / static_cast<double>(n), 0.0); };
    if (name == "inverse-sqrt")
        return [](std::uint64_t n) {
            return std::complex<double>(1.0 / std::sqrt(static_cast<double>(n)), 0.0);
        };
    if (name == "constant")
        return [](std::uint64_t) { return std::complex<double>(1.0, 0.0); };
    if (name == "zero")
        return [](std::uint64_t) { return std::complex<double>(0.0, 0.0); };
    throw std::domain_error("unknown generator: " + name);
}

} // namespace dirichlet
