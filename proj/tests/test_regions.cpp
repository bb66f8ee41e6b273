#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>
#include <sstream>

#include "dirichlet/norms.hpp"
#include "dirichlet/regions.hpp"
#include "oracles.hpp"

using namespace dirichlet;
using C = std::complex<double>;

TEST_CASE("disk randomization region truth table") {
    auto v = littlewood_disk_decide(1.0, 1.0);
    CHECK_FALSE(v.included); // 1 - 2 + 1/2 < 0

    CHECK(littlewood_disk_decide(1.0, 0.5).included);
    CHECK(littlewood_disk_decide(1.0, 0.5).rule == "disk-i");

    CHECK(littlewood_disk_decide(4.0, 4.0).included);
    CHECK(littlewood_disk_decide(4.0, 4.0).rule == "disk-ii");
    CHECK(littlewood_disk_decide(2.0, 2.0).included);

    CHECK_FALSE(littlewood_disk_decide(4.0, 5.0).included);

    // exactly on the small-p critical curve: excluded, flagged boundary
    auto b = littlewood_disk_decide(1.0, 2.0 / 3.0);
    CHECK_FALSE(b.included);
    CHECK(b.rule == "boundary");

    CHECK_THROWS_AS(littlewood_disk_decide(0.0, 1.0), std::domain_error);
}

TEST_CASE("random Hardy-to-Hardy embedding needs p >= 2") {
    CHECK_FALSE(random_embedding_decide(SpaceParams::hardy(1.0), SpaceParams::hardy(4.0)).included);
    CHECK_FALSE(random_embedding_decide(SpaceParams::hardy(1.9), SpaceParams::hardy(0.5)).included);
    CHECK(random_embedding_decide(SpaceParams::hardy(2.0), SpaceParams::hardy(0.5)).included);
    CHECK(random_embedding_decide(SpaceParams::hardy(2.0), SpaceParams::hardy(100.0)).included);
    CHECK(random_embedding_decide(SpaceParams::hardy(5.0), SpaceParams::hardy(5.0)).included);
}

TEST_CASE("random Bergman-to-Bergman embedding: three weight regimes") {
    auto decide = [](double p, double alpha, double q, double beta) {
        return random_embedding_decide(SpaceParams::bergman(p, alpha),
                                       SpaceParams::bergman(q, beta));
    };

    SUBCASE("alpha < beta (boundary line q = 2p, closed)") {
        CHECK(decide(4.0, 0.0, 4.0, 1.0).included);   // below the line
        CHECK(decide(2.0, 0.0, 1.0, 1.0).included);   // q < p also fine
        CHECK_FALSE(decide(2.0, 0.0, 5.0, 1.0).included); // above the line
        auto on_line = decide(2.0, 0.0, 4.0, 1.0);
        CHECK(on_line.included);
        CHECK(on_line.rule == "rem-ii");
        CHECK_FALSE(decide(1.0, 0.0, 1.0, 1.0).included); // p < 2 kills everything
    }

    SUBCASE("alpha = beta (diagonal q = p, closed)") {
        auto diag = decide(2.0, 0.0, 2.0, 0.0);
        CHECK(diag.included);
        CHECK(diag.rule == "rem-ii");
        CHECK(decide(4.0, 0.0, 2.0, 0.0).included);
        CHECK_FALSE(decide(2.0, 0.0, 4.0, 0.0).included);
        CHECK_FALSE(decide(1.0, 0.0, 0.5, 0.0).included);
    }

    SUBCASE("alpha > beta (line q = p/2, open)") {
        auto on_line = decide(4.0, 1.0, 2.0, 0.0);
        CHECK_FALSE(on_line.included);
        CHECK(on_line.rule == "boundary");
        CHECK(decide(4.0, 1.0, 1.9, 0.0).included);
        CHECK_FALSE(decide(4.0, 1.0, 2.1, 0.0).included);
        // open corner at p = 2
        auto corner = decide(2.0, 1.0, 1.0, 0.0);
        CHECK_FALSE(corner.included);
        CHECK(corner.rule == "boundary");
    }
}

TEST_CASE("random embeddings between Hardy and mixed spaces") {
    // Hardy source into any mixed target: p >= 2 is all that matters
    CHECK(random_embedding_decide(SpaceParams::hardy(2.0), {7.0, 0.25, 3.0}).included);
    CHECK_FALSE(random_embedding_decide(SpaceParams::hardy(1.5), {7.0, 0.25, 3.0}).included);

    // mixed source into a Hardy target: never
    for (double p : {0.5, 2.0, 9.0})
        for (double q : {1.0, 4.0})
            CHECK_FALSE(
                random_embedding_decide({p, q, 0.0}, SpaceParams::hardy(2.0)).included);
}

TEST_CASE("mixed-norm inclusion truth table") {
    auto a = inclusion_decide(4, 4, 0, 2, 4, 1);
    CHECK(a.included);
    CHECK(a.rule == "em-i");

    auto b = inclusion_decide(2, 2, 0, 2, 4, 1);
    CHECK(b.included);
    CHECK(b.rule == "em-ii");

    auto c = inclusion_decide(1, 2, 0, 2, 2, 0);
    CHECK_FALSE(c.included);
    CHECK(c.rule == "em-none");

    auto d = inclusion_decide(2, 4, 1, 2, 2, 0);
    CHECK_FALSE(d.included);
    CHECK(d.rule == "boundary"); // tail equality but q > v

    // tail strictly worse
    CHECK_FALSE(inclusion_decide(4, 1, 0, 2, 4, 0).included);

    // Hardy encodings through q = inf
    CHECK(inclusion_decide(4, kInf, 0, 2, kInf, 0).included);       // H^4 in H^2
    CHECK_FALSE(inclusion_decide(1, kInf, 0, 2, kInf, 0).included); // p < u

    CHECK_THROWS_AS(inclusion_decide(2, 2, -1.5, 2, 2, 0), std::domain_error);
}

TEST_CASE("region monotonicity in p and v") {
    // once included, raising the source integrability p or relaxing the
    // target outer exponent v (downwards: smaller v is a weaker norm) keeps
    // the inclusion
    for (double p : {1.0, 2.0, 3.0})
        for (double q : {0.5, 1.0, 4.0})
            for (double v : {0.5, 2.0, 8.0}) {
                RegionVerdict base = inclusion_decide(p, q, 0.3, 1.0, v, 0.7);
                if (!base.included) continue;
                CHECK(inclusion_decide(p + 1.0, q, 0.3, 1.0, v, 0.7).included);
                CHECK(inclusion_decide(p, q, 0.3, 1.0, 0.5 * v, 0.7).included);
            }
    // and the opposite direction genuinely fails somewhere
    CHECK(inclusion_decide(2, 4, 0, 2, 2, 0).included);
    CHECK_FALSE(inclusion_decide(2, 4, 0, 2, 8, 0).included);
}

TEST_CASE("hardy/mixed inclusions") {
    CHECK(hardy_mixed_inclusion_decide(2, 2, 3, 0.5, Direction::hardy_to_mixed).included);
    CHECK_FALSE(hardy_mixed_inclusion_decide(1, 2, 3, 0.5, Direction::hardy_to_mixed).included);
    for (double p : {0.5, 2.0, 40.0})
        CHECK_FALSE(hardy_mixed_inclusion_decide(p, 2, 3, 0.5, Direction::mixed_to_hardy).included);
}

TEST_CASE("random Bergman embedding reduces to the inclusion region") {
    for (double p : {0.5, 1.0, 2.0, 2.5, 4.0})
        for (double q : {0.5, 1.0, 2.0, 4.0, 8.0})
            for (double alpha : {-0.5, 0.0, 1.0})
                for (double beta : {-0.5, 0.0, 1.0}) {
                    bool direct = random_embedding_decide(SpaceParams::bergman(p, alpha),
                                                          SpaceParams::bergman(q, beta))
                                      .included;
                    bool reduced = inclusion_decide(p, p, alpha, 2.0, q, beta).included;
                    CHECK(direct == reduced);
                }
}

TEST_CASE("witness f1: construction and proxy behavior") {
    // levels 0..1 with beta = 0, v = 1: coefficients 2^n at indices 2^(2^n)
    DirichletPolynomial f = witness_f1(0.0, 1.0, 1);
    CHECK(f.termCount() == 2);
    CHECK(f.coefficient(2) == C(1, 0));
    CHECK(f.coefficient(4) == C(2, 0));

    // proxy summable where the tail index is strictly larger
    double prev = 0.0;
    for (unsigned L = 1; L <= 5; ++L) {
        double v = lacunary_proxy(witness_f1(0.0, 1.0, L), 1.0, 1.0);
        CHECK(v > prev);
        prev = v;
    }
    CHECK(prev < 2.0); // partial sums of sum 2^{-n}

    // proxy in the witness's own parameters counts the levels
    for (unsigned L = 1; L <= 5; ++L)
        CHECK(lacunary_proxy(witness_f1(0.0, 1.0, L), 1.0, 0.0) ==
              doctest::Approx(L + 1.0).epsilon(1e-12));

    CHECK_THROWS_AS(witness_f1(0.0, 1.0, 6), std::overflow_error);
}

TEST_CASE("witness f2: construction and proxy behavior") {
    double alpha = 1.0, q = 4.0, v = 2.0;
    DirichletPolynomial f = witness_f2(alpha, q, v, 1);
    CHECK(f.termCount() == 1);
    CHECK(f.coefficient(4).real() ==
          doctest::Approx(std::pow(2.0, (alpha + 1.0) / q)).epsilon(1e-14));

    // proxy in (q, alpha): partial sums of sum n^{-q/v} = n^{-2}
    double want = 0.0;
    for (unsigned n = 1; n <= 5; ++n) want += std::pow(n, -q / v);
    CHECK(lacunary_proxy(witness_f2(alpha, q, v, 5), q, alpha) ==
          doctest::Approx(want).epsilon(1e-12));

    // proxy in (v, beta) on the equality edge: harmonic numbers
    double beta = (alpha + 1.0) * v / q - 1.0; // (beta+1)/v == (alpha+1)/q
    double harmonic = 0.0;
    for (unsigned n = 1; n <= 5; ++n) harmonic += 1.0 / n;
    CHECK(lacunary_proxy(witness_f2(alpha, q, v, 5), v, beta) ==
          doctest::Approx(harmonic).epsilon(1e-12));

    // proxy space reaches far beyond the 64-bit index ceiling
    double deep = lacunary_proxy_profile(
        [&](unsigned n) {
            return n == 0 ? 0.0
                          : std::pow(2.0, (alpha + 1.0) * n / q) * std::pow(n, -1.0 / v);
        },
        40, v, beta);
    double h40 = 0.0;
    for (unsigned n = 1; n < 40; ++n) h40 += 1.0 / n;
    CHECK(deep == doctest::Approx(h40).epsilon(1e-10));
}

TEST_CASE("witness f3: Euler product truncations") {
    DirichletPolynomial geo = witness_f3(1, 1.0, 8);
    CHECK(geo.termCount() == 4);
    for (std::uint64_t n : {1ull, 2ull, 4ull, 8ull}) CHECK(geo.coefficient(n) == C(1, 0));

    DirichletPolynomial half = witness_f3(1, 0.5, 4);
    CHECK(half.coefficient(1) == C(1, 0));
    CHECK(half.coefficient(2).real() == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(half.coefficient(4).real() == doctest::Approx(0.375).epsilon(1e-14));
    CHECK(half.coefficient(2).real() ==
          doctest::Approx(oracles::binomial_series_coeff(0.5, 1)).epsilon(1e-14));
    CHECK(half.coefficient(4).real() ==
          doctest::Approx(oracles::binomial_series_coeff(0.5, 2)).epsilon(1e-14));

    DirichletPolynomial two = witness_f3(2, 1.0, 6);
    CHECK(two.termCount() == 5); // 3-smooth numbers up to 6
    for (std::uint64_t n : {1ull, 2ull, 3ull, 4ull, 6ull}) CHECK(two.coefficient(n) == C(1, 0));

    CHECK(witness_f3_prime_count(4.0, 2.0, 0.0, 0.4) == 4);
}

TEST_CASE("lacunary proxy rejects non-lacunary support") {
    DirichletPolynomial f{{8, C(1, 0)}};
    CHECK_THROWS_AS(lacunary_proxy(f, 2.0, 0.0), std::domain_error);
    CHECK(lacunary_proxy(DirichletPolynomial(), 2.0, 0.0) == 0.0);
}

TEST_CASE("lacunary proxy tracks the mixed norm across truncation levels") {
    // ten coefficient profiles including both witness families
    struct Profile {
        double q, alpha;
        std::function<double(unsigned)> coeff;
    };
    std::vector<Profile> profiles;
    profiles.push_back({1.0, 1.0, [](unsigned n) { return std::pow(2.0, n); }});        // f1
    profiles.push_back({2.0, 0.0, [](unsigned n) { return std::pow(2.0, 0.5 * n); }});  // f1
    profiles.push_back({4.0, 1.0, [](unsigned n) {
                            return n == 0 ? 0.0
                                          : std::pow(2.0, 0.5 * n) / std::sqrt(n);
                        }});                                                             // f2
    profiles.push_back({2.0, 0.5, [](unsigned n) {
                            return n == 0 ? 0.0 : std::pow(2.0, 0.75 * n) / n;
                        }});                                                             // f2-like
    profiles.push_back({2.0, 0.0, [](unsigned) { return 1.0; }});
    profiles.push_back({1.0, 0.0, [](unsigned n) { return 1.0 / (n + 1.0); }});
    profiles.push_back({4.0, 0.0, [](unsigned n) { return std::pow(0.5, n); }});
    profiles.push_back({2.0, 1.0, [](unsigned n) { return std::pow(2.0, n) / (n + 1.0); }});
    profiles.push_back({3.0, 0.0, [](unsigned n) { return std::pow(2.0, n / 3.0); }});
    profiles.push_back({2.0, -0.5, [](unsigned n) { return std::pow(2.0, 0.25 * n); }});

    for (const auto& prof : profiles) {
        double lo = 1e300, hi = 0.0;
        for (unsigned L = 2; L <= 5; ++L) {
            DirichletPolynomial::term_map terms;
            for (unsigned n = 0; n <= L; ++n) {
                double a = prof.coeff(n);
                if (a != 0.0) terms.emplace(lacunary_index(n), C(a, 0));
            }
            DirichletPolynomial f(std::move(terms));
            double proxy = lacunary_proxy(f, prof.q, prof.alpha);
            double nrm = mixed_norm(f, {2.0, prof.q, prof.alpha}).value;
            double ratio = proxy / std::pow(nrm, prof.q);
            CHECK(std::isfinite(ratio));
            lo = std::min(lo, ratio);
            hi = std::max(hi, ratio);
        }
        CHECK(hi / lo <= 10.0);
    }
}

TEST_CASE("witnesses certify excluded boundary-adjacent pairs") {
    // tail-index failure: (2,1,1) does not include into (2,2,0)
    REQUIRE_FALSE(inclusion_decide(2, 1, 1, 2, 2, 0).included);
    {
        std::vector<double> src, tgt;
        for (unsigned L = 1; L <= 5; ++L) {
            DirichletPolynomial f = witness_f1(0.0, 2.0, L);
            src.push_back(lacunary_proxy(f, 1.0, 1.0)); // terms 2^{-3n/2}
            tgt.push_back(lacunary_proxy(f, 2.0, 0.0));
        }
        CHECK(src.back() < 1.0 / (1.0 - std::pow(2.0, -1.5))); // geometric ceiling
        CHECK(src.back() - src[src.size() - 2] < 0.05 * src.back());
        for (std::size_t i = 1; i < tgt.size(); ++i)
            CHECK(tgt[i] == doctest::Approx(tgt[i - 1] + 1.0).epsilon(1e-9)); // +1 per level
    }

    // equality edge with q > v: (2,4,1) vs (2,2,0)
    REQUIRE(inclusion_decide(2, 4, 1, 2, 2, 0).rule == "boundary");
    {
        std::vector<double> src, tgt;
        for (unsigned L = 2; L <= 5; ++L) {
            DirichletPolynomial f = witness_f2(1.0, 4.0, 2.0, L);
            src.push_back(lacunary_proxy(f, 4.0, 1.0));
            tgt.push_back(lacunary_proxy(f, 2.0, 0.0));
        }
        CHECK(src.back() < 1.645); // below zeta(2)
        for (std::size_t i = 1; i < tgt.size(); ++i) CHECK(tgt[i] > tgt[i - 1]);
        // harmonic growth per level
        CHECK(tgt.back() - tgt.front() ==
              doctest::Approx(1.0 / 3 + 1.0 / 4 + 1.0 / 5).epsilon(1e-9));
    }

    // leading-exponent failure p < u: f3 stays under its H^2 ceiling while
    // the (4, 2, 0) mixed functional keeps growing with the truncation depth
    REQUIRE_FALSE(inclusion_decide(2, 2, 0, 4, 2, 0).included);
    {
        const double eta = 0.4;
        unsigned k = witness_f3_prime_count(4.0, 2.0, 0.0, eta);
        REQUIRE(k == 4);

        // the untruncated coefficient square sum factors per prime:
        // (sum_e binom(e)^2)^k, a finite ceiling since 2*eta < 1
        double per_prime = 0.0;
        double c = 1.0;
        for (unsigned e = 0; e <= 2000000; ++e) {
            if (e > 0) c *= (eta + e - 1.0) / e;
            per_prime += c * c;
        }
        const double ceiling = std::pow(per_prime, static_cast<double>(k));

        std::vector<double> src, tgt;
        for (std::uint64_t M : {1u << 8, 1u << 10, 1u << 12, 1u << 14}) {
            DirichletPolynomial f = witness_f3(k, eta, M);
            src.push_back(h2_norm_squared(f));
            tgt.push_back(mixed_norm(f, {4.0, 2.0, 0.0}).value);
        }
        for (std::size_t i = 0; i < src.size(); ++i) CHECK(src[i] < ceiling);
        // source increments shrink (convergent), target keeps climbing
        CHECK(src[3] - src[2] < src[1] - src[0]);
        for (std::size_t i = 1; i < tgt.size(); ++i) CHECK(tgt[i] > tgt[i - 1]);
        CHECK(tgt.back() > 1.05 * tgt.front());
    }
}

TEST_CASE("included pairs keep bounded norm ratios across the corpus") {
    struct Pair {
        double p, q, alpha, u, v, beta;
    };
    // one representative per inclusion clause
    std::vector<Pair> pairs{
        {4, 4, 0, 2, 4, 1}, // strict tail inequality
        {2, 2, 0, 2, 4, 1}, // tail equality with q <= v
        {4, 2, 0, 2, 1, 0}, // relaxing both exponents
    };
    auto corpus = oracles::random_corpus(20, 1717);
    for (const auto& pr : pairs) {
        REQUIRE(inclusion_decide(pr.p, pr.q, pr.alpha, pr.u, pr.v, pr.beta).included);
        double worst = 0.0;
        for (const auto& f : corpus) {
            if (f.isZero()) continue;
            double src = mixed_norm(f, {pr.p, pr.q, pr.alpha}).value;
            double tgt = mixed_norm(f, {pr.u, pr.v, pr.beta}).value;
            CHECK(std::isfinite(tgt / src));
            worst = std::max(worst, tgt / src);
        }
        CHECK(worst <= 10.0); // bounded embedding, generous cap
    }
}

TEST_CASE("f3 translate norms follow the one-prime endpoint scaling") {
    // k = 1: ||(f3)_sigma||_{H^4}^4 should scale like (1 - 2^{-2 sigma})^{1-4 eta}
    for (double eta : {0.65, 0.75, 0.85}) {
        DirichletPolynomial f = witness_f3(1, eta, 1ull << 31);
        double lo = 1e300, hi = 0.0;
        for (double sigma : {0.05, 0.08, 0.12, 0.16, 0.2}) {
            double nrm4 = std::pow(hp_norm_exact_even(translate(f, sigma), 2), 4.0);
            double scale = std::pow(1.0 - std::pow(2.0, -2.0 * sigma), 1.0 - 4.0 * eta);
            double ratio = nrm4 / scale;
            lo = std::min(lo, ratio);
            hi = std::max(hi, ratio);
        }
        CHECK(hi / lo < 2.0);

        // deep-truncation oracle reaches smaller sigma without index
        // arithmetic: convolve the one-variable coefficient sequence directly
        const unsigned E = 4096;
        std::vector<double> c(E + 1);
        for (unsigned e = 0; e <= E; ++e) c[e] = oracles::binomial_series_coeff(eta, e);
        double olo = 1e300, ohi = 0.0;
        for (double sigma : {0.01, 0.02, 0.05, 0.1, 0.2}) {
            std::vector<double> cs(E + 1);
            for (unsigned e = 0; e <= E; ++e) cs[e] = c[e] * std::pow(2.0, -sigma * e);
            // squared-polynomial l2 norm: sum over m of (sum_{i+j=m} cs_i cs_j)^2
            std::vector<double> conv(2 * E + 1, 0.0);
            for (unsigned i = 0; i <= E; ++i)
                for (unsigned j = 0; j <= E; ++j) conv[i + j] += cs[i] * cs[j];
            double nrm4 = 0.0;
            for (double v : conv) nrm4 += v * v;
            double scale = std::pow(1.0 - std::pow(2.0, -2.0 * sigma), 1.0 - 4.0 * eta);
            double ratio = nrm4 / scale;
            olo = std::min(olo, ratio);
            ohi = std::max(ohi, ratio);
        }
        CHECK(ohi / olo < 2.0);
    }
}

TEST_CASE("region grid reproduces the three figure presets exactly") {
    GridAxis p_axis{0.5, 4.0, 14}; // quarter steps
    GridAxis q_axis{0.5, 8.0, 30};

    SUBCASE("alpha < beta: closed line q = 2p") {
        auto decide = grid_decider("random-bergman", 0.0, 1.0);
        for (double p : p_axis.values())
            for (double q : q_axis.values()) {
                RegionVerdict v = decide(p, q);
                bool want = p >= 2.0 && q <= 2.0 * p; // closed boundary
                CHECK(v.included == want);
                if (p >= 2.0 && q == 2.0 * p) CHECK(v.rule == "rem-ii");
            }
    }

    SUBCASE("alpha = beta: closed diagonal") {
        auto decide = grid_decider("random-bergman", 0.5, 0.5);
        for (double p : p_axis.values())
            for (double q : q_axis.values()) {
                RegionVerdict v = decide(p, q);
                bool want = p >= 2.0 && q <= p;
                CHECK(v.included == want);
            }
    }

    SUBCASE("alpha > beta: open line q = p/2") {
        auto decide = grid_decider("random-bergman", 1.0, 0.0);
        for (double p : p_axis.values())
            for (double q : q_axis.values()) {
                RegionVerdict v = decide(p, q);
                bool want = p >= 2.0 && q < 0.5 * p; // strict
                CHECK(v.included == want);
                if (p >= 2.0 && q == 0.5 * p) CHECK(v.rule == "boundary");
            }
    }
}

TEST_CASE("grid CSV output format") {
    auto csv = region_grid_csv(grid_decider("littlewood-disk", 0, 0), {1.0, 2.0, 1}, {1.0, 2.0, 1});
    std::istringstream in(csv);
    std::string line;
    std::getline(in, line);
    CHECK(line == "p,q,included,rule");
    std::getline(in, line);
    CHECK(line == "1,1,0,disk-none");
    int rows = 2;
    while (std::getline(in, line)) ++rows;
    CHECK(rows == 5); // header + 2x2 grid

    CHECK_THROWS_AS(parse_grid("nope"), std::domain_error);
    auto [pa, qa] = parse_grid("0.5:4:14,1:8:28");
    CHECK(pa.steps == 14);
    CHECK(qa.max == 8.0);
}
