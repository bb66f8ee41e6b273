#pragma once

#include <algorithm>
#include <cstdint>
#include <mutex>
#include <stdexcept>
#include <vector>

namespace dirichlet {

/// Exponent vector over the ordered primes: exponents[j] is the power of the
/// (j+1)-th prime (2, 3, 5, ...). Trailing zeros are stripped, so two
/// representations of the same monomial compare equal.
class MultiIndex {
public:
    MultiIndex() = default;
    explicit MultiIndex(std::vector<std::uint32_t> exps) : exps_(std::move(exps)) { trim(); }

    const std::vector<std::uint32_t>& exponents() const { return exps_; }
    std::size_t size() const { return exps_.size(); }
    std::uint32_t operator[](std::size_t j) const { return j < exps_.size() ? exps_[j] : 0; }
    bool empty() const { return exps_.empty(); }

    friend bool operator==(const MultiIndex& a, const MultiIndex& b) { return a.exps_ == b.exps_; }
    friend bool operator<(const MultiIndex& a, const MultiIndex& b) { return a.exps_ < b.exps_; }

    MultiIndex operator+(const MultiIndex& o) const {
        std::vector<std::uint32_t> out(std::max(exps_.size(), o.exps_.size()), 0);
        for (std::size_t j = 0; j < out.size(); ++j) out[j] = (*this)[j] + o[j];
        return MultiIndex(std::move(out));
    }

private:
    void trim() {
        while (!exps_.empty() && exps_.back() == 0) exps_.pop_back();
    }
    std::vector<std::uint32_t> exps_;
};

/// Shared ascending prime list, grown on demand by sieving to twice the
/// requested bound. Thread-safe.
class PrimeTable {
public:
    static PrimeTable& instance() {
        static PrimeTable table;
        return table;
    }

    /// The j-th prime, 0-based (nth(0) == 2).
    std::uint64_t nth(std::size_t j) {
        std::lock_guard<std::mutex> lock(mu_);
        while (primes_.size() <= j) growLocked(2 * sieved_bound_);
        return primes_[j];
    }

    /// All primes <= bound, as a snapshot.
    std::vector<std::uint64_t> upTo(std::uint64_t bound) {
        std::lock_guard<std::mutex> lock(mu_);
        if (sieved_bound_ < bound) growLocked(2 * bound);
        std::vector<std::uint64_t> out;
        for (std::uint64_t p : primes_) {
            if (p > bound) break;
            out.push_back(p);
        }
        return out;
    }

    /// 0-based rank of a prime; throws if p is not prime.
    std::size_t rankOf(std::uint64_t p) {
        std::lock_guard<std::mutex> lock(mu_);
        if (p > kMaxSieve)
            throw std::overflow_error("PrimeTable: prime too large for rank lookup");
        if (sieved_bound_ < p) growLocked(2 * p);
        auto it = std::lower_bound(primes_.begin(), primes_.end(), p);
        if (it == primes_.end() || *it != p) throw std::domain_error("rankOf: not a prime");
        return static_cast<std::size_t>(it - primes_.begin());
    }

private:
    static constexpr std::uint64_t kMaxSieve = 200'000'000;

    PrimeTable() { growLocked(64); }

    void growLocked(std::uint64_t bound) {
        if (bound < 4) bound = 4;
        if (bound > kMaxSieve) bound = kMaxSieve;
        std::vector<bool> composite(bound + 1, false);
        primes_.clear();
        for (std::uint64_t i = 2; i <= bound; ++i) {
            if (composite[i]) continue;
            primes_.push_back(i);
            for (std::uint64_t k = i * i; k <= bound; k += i) composite[k] = true;
        }
        sieved_bound_ = bound;
    }

    std::mutex mu_;
    std::vector<std::uint64_t> primes_;
    std::uint64_t sieved_bound_ = 0;
};

/// Prime factorization of n as an exponent vector. factorize(1) is empty.
inline MultiIndex factorize(std::uint64_t n) {
    if (n == 0) throw std::domain_error("factorize: index must be >= 1");
    std::vector<std::uint32_t> exps;
    auto& table = PrimeTable::instance();
    std::size_t j = 0;
    while (n > 1) {
        std::uint64_t p = table.nth(j);
        if (p * p > n) {
            // remainder is prime
            std::size_t rank = table.rankOf(n);
            if (exps.size() <= rank) exps.resize(rank + 1, 0);
            exps[rank] += 1;
            break;
        }
        std::uint32_t e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        if (e > 0) {
            if (exps.size() <= j) exps.resize(j + 1, 0);
            exps[j] = e;
        }
        ++j;
    }
    return MultiIndex(std::move(exps));
}

/// Inverse of factorize: the integer with the given prime exponents.
inline std::uint64_t reconstruct(const MultiIndex& nu) {
    auto& table = PrimeTable::instance();
    std::uint64_t n = 1;
    for (std::size_t j = 0; j < nu.size(); ++j) {
        std::uint64_t p = table.nth(j);
        for (std::uint32_t e = 0; e < nu[j]; ++e) {
            if (__builtin_mul_overflow(n, p, &n))
                throw std::overflow_error("reconstruct: index exceeds 64 bits");
        }
    }
    return n;
}

/// Largest prime factor of n (1 for n == 1).
inline std::uint64_t largest_prime_factor(std::uint64_t n) {
    if (n == 0) throw std::domain_error("largest_prime_factor: n must be >= 1");
    std::uint64_t best = 1;
    auto& table = PrimeTable::instance();
    std::size_t j = 0;
    while (n > 1) {
        std::uint64_t p = table.nth(j);
        if (p * p > n) return n; // remainder is the largest prime factor
        while (n % p == 0) {
            n /= p;
            best = p;
        }
        ++j;
    }
    return best;
}

/// All n <= bound whose prime factors lie among the first k primes,
/// ascending. Includes 1.
inline std::vector<std::uint64_t> smooth_numbers(std::size_t k, std::uint64_t bound) {
    std::vector<std::uint64_t> out{1};
    auto& table = PrimeTable::instance();
    for (std::size_t j = 0; j < k; ++j) {
        std::uint64_t p = table.nth(j);
        if (p > bound) break;
        std::size_t existing = out.size();
        for (std::size_t i = 0; i < existing; ++i) {
            std::uint64_t m = out[i];
            while (m <= bound / p) {
                m *= p;
                out.push_back(m);
            }
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace dirichlet
