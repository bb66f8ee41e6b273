#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>

#include "dirichlet/norms.hpp"
#include "dirichlet/random.hpp"
#include "oracles.hpp"

using namespace dirichlet;
using C = std::complex<double>;

TEST_CASE("bernoulli draws are signs, roughly balanced") {
    auto xs = sample_sequence({RandomKind::bernoulli, 42}, 10000);
    double sum = 0.0;
    for (const auto& x : xs) {
        CHECK((x == C(1, 0) || x == C(-1, 0)));
        sum += x.real();
    }
    CHECK(std::fabs(sum) <= 4.0 * std::sqrt(10000.0)); // 4 sigma
}

TEST_CASE("steinhaus draws are unimodular and angle-uniform") {
    auto xs = sample_sequence({RandomKind::steinhaus, 7}, 10000);
    double re = 0.0;
    for (const auto& x : xs) {
        CHECK(std::fabs(std::abs(x) - 1.0) <= 1e-12);
        re += x.real();
    }
    CHECK(std::fabs(re) <= 4.0 * std::sqrt(0.5 * 10000.0));
}

TEST_CASE("gaussian draws have the right first two moments") {
    const std::size_t N = 1000000;
    auto xs = sample_sequence({RandomKind::gaussian, 314159}, N);
    double mean = 0.0, sq = 0.0;
    for (const auto& x : xs) {
        CHECK(x.imag() == 0.0);
        mean += x.real();
        sq += x.real() * x.real();
    }
    mean /= N;
    sq /= N;
    CHECK(std::fabs(mean) <= 4.0 / std::sqrt(static_cast<double>(N)));
    CHECK(sq == doctest::Approx(1.0).epsilon(0.01));
}

TEST_CASE("sequences are deterministic and prefix-stable") {
    for (auto kind : {RandomKind::bernoulli, RandomKind::steinhaus, RandomKind::gaussian}) {
        RandomModel model{kind, 2024};
        auto a = sample_sequence(model, 50);
        auto b = sample_sequence(model, 200);
        for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i] == b[i]);
        auto again = sample_sequence(model, 50);
        CHECK(a == again);
    }
    CHECK_THROWS_AS(sample_sequence({RandomKind::bernoulli, 1}, 0), std::domain_error);
}

TEST_CASE("derived sub-seeds differ") {
    CHECK(derive_seed(1, 0) != derive_seed(1, 1));
    CHECK(derive_seed(1, 0) != derive_seed(2, 0));
    CHECK(derive_seed(5, 3) == derive_seed(5, 3));
}

TEST_CASE("randomize multiplies coefficientwise by the draws") {
    DirichletPolynomial f{{1, C(2, 0)}};
    RandomModel model{RandomKind::gaussian, 99};
    auto g = randomize(f, model);
    CHECK(g.coefficient(1) == C(2, 0) * model_draw(model, 1));

    // unimodular models preserve the coefficient l2 norm exactly
    auto corpus = oracles::random_corpus(10, 808);
    for (const auto& h : corpus) {
        for (auto kind : {RandomKind::bernoulli, RandomKind::steinhaus}) {
            auto r = randomize(h, {kind, 5});
            CHECK(h2_norm(r) == doctest::Approx(h2_norm(h)).epsilon(1e-14));
        }
        // determinism
        CHECK(randomize(h, {RandomKind::steinhaus, 11}) ==
              randomize(h, {RandomKind::steinhaus, 11}));
    }
}

TEST_CASE("randomize is scale-equivariant and commutes with partial sums") {
    auto corpus = oracles::random_corpus(6, 303);
    RandomModel model{RandomKind::steinhaus, 17};
    for (const auto& f : corpus) {
        C c(0.5, -2.0);
        auto left = randomize(c * f, model);
        auto right = c * randomize(f, model);
        for (const auto& [n, a] : right.terms())
            CHECK(std::abs(left.coefficient(n) - a) <= 1e-15 * std::max(1.0, std::abs(a)));

        // draws are indexed by n, so truncation before or after agrees
        if (f.maxIndex() >= 4) {
            auto a = partial_sum(randomize(f, model), 4);
            auto b = randomize(partial_sum(f, 4), model);
            CHECK(a == b);
        }
    }
}
