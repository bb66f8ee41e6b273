#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "dirichlet/polynomial.hpp"

namespace dirichlet {

enum class RandomKind { bernoulli, steinhaus, gaussian };

inline std::string to_string(RandomKind k) {
    switch (k) {
        case RandomKind::bernoulli: return "bernoulli";
        case RandomKind::steinhaus: return "steinhaus";
        case RandomKind::gaussian: return "gaussian";
    }
    return "?";
}

inline RandomKind random_kind_from_string(const std::string& s) {
    if (s == "bernoulli") return RandomKind::bernoulli;
    if (s == "steinhaus") return RandomKind::steinhaus;
    if (s == "gaussian") return RandomKind::gaussian;
    throw std::domain_error("unknown random model: " + s);
}

/// One of the three standard coefficient models plus its seed.
struct RandomModel {
    RandomKind kind = RandomKind::bernoulli;
    std::uint64_t seed = 0;
};

namespace rng {

// splitmix64 finalizer; the whole RNG is counter-based so that the draw at
// index n depends on (seed, n) only. That gives random access, prefix
// stability, and order-independent parallel sampling for free.
inline std::uint64_t mix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

/// Raw 64 random bits for (seed, counter, lane).
inline std::uint64_t bits_at(std::uint64_t seed, std::uint64_t counter, std::uint64_t lane = 0) {
    std::uint64_t h = mix64(seed);
    h = mix64(h ^ (counter * 0xD6E8FEB86659FD93ULL));
    h = mix64(h ^ (lane * 0xA0761D6478BD642FULL));
    return h;
}

/// Uniform in [0, 1), 53-bit resolution.
inline double uniform_at(std::uint64_t seed, std::uint64_t counter, std::uint64_t lane = 0) {
    return static_cast<double>(bits_at(seed, counter, lane) >> 11) * 0x1.0p-53;
}

/// Uniform in (0, 1], safe as a log argument.
inline double uniform_pos_at(std::uint64_t seed, std::uint64_t counter, std::uint64_t lane = 0) {
    return (static_cast<double>(bits_at(seed, counter, lane) >> 11) + 1.0) * 0x1.0p-53;
}

} // namespace rng

/// Sub-stream seed for trial i of a master seed. This is the single mixing
/// function used everywhere; trials are reproducible for any execution order
/// or degree of parallelism.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t trial) {
    return rng::mix64(rng::mix64(master) ^ (0x9E3779B97F4A7C15ULL * (trial + 1)));
}

/// The n-th draw of the model, n >= 1. Bernoulli draws are +-1, Steinhaus
/// draws are unimodular, Gaussian draws are real N(0,1) (Box-Muller).
inline std::complex<double> model_draw(const RandomModel& model, std::uint64_t n) {
    switch (model.kind) {
        case RandomKind::bernoulli:
            return {(rng::bits_at(model.seed, n) >> 63) ? 1.0 : -1.0, 0.0};
        case RandomKind::steinhaus: {
            double theta = 2.0 * std::numbers::pi * rng::uniform_at(model.seed, n);
            return {std::cos(theta), std::sin(theta)};
        }
        case RandomKind::gaussian: {
            double u1 = rng::uniform_pos_at(model.seed, n, 0);
            double u2 = rng::uniform_at(model.seed, n, 1);
            return {std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2), 0.0};
        }
    }
    return {0.0, 0.0};
}

/// Draws X_1..X_N. A longer request reproduces any shorter one as a prefix.
inline std::vector<std::complex<double>> sample_sequence(const RandomModel& model, std::uint64_t count) {
    if (count == 0) throw std::domain_error("sample_sequence: count must be >= 1");
    std::vector<std::complex<double>> out;
    out.reserve(count);
    for (std::uint64_t n = 1; n <= count; ++n) out.push_back(model_draw(model, n));
    return out;
}

/// Coefficientwise randomization: a_n -> a_n X_n. Draws are indexed by n
/// itself, not by support rank, so randomize commutes with partial_sum.
inline DirichletPolynomial randomize(const DirichletPolynomial& f, const RandomModel& model) {
    DirichletPolynomial::term_map out;
    for (const auto& [n, a] : f.terms()) out.emplace(n, a * model_draw(model, n));
    return DirichletPolynomial(std::move(out));
}

} // namespace dirichlet
