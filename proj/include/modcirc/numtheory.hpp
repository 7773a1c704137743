#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace modcirc {

using BigInt = boost::multiprecision::cpp_int;

struct PrimePower {
  std::uint64_t prime;
  unsigned exponent;

  bool operator==(const PrimePower &) const = default;
};

/// Prime factorization of a modulus m >= 2, primes ascending.
struct Factorization {
  std::uint64_t modulus = 0;
  std::vector<PrimePower> primes;

  std::size_t distinct_primes() const { return primes.size(); }
  std::vector<std::uint64_t> prime_list() const;
  bool is_prime_power() const { return primes.size() == 1; }
};

bool is_prime(std::uint64_t n);

Factorization factorize(std::uint64_t m);

/// base^exp, or nullopt when the result exceeds UINT64_MAX.
std::optional<std::uint64_t> checked_pow(std::uint64_t base, unsigned exp);

/// floor(n^(1/r)) by exact integer search.
std::uint64_t integer_root(std::uint64_t n, unsigned r);

/// Smallest k with k^r >= n.
std::uint64_t integer_root_ceil(std::uint64_t n, unsigned r);

/// floor(log_base(x)) for x >= 1, base >= 2, via repeated multiplication.
unsigned floor_log(std::uint64_t base, std::uint64_t x);

BigInt binomial(std::uint64_t n, std::uint64_t k);

std::uint64_t binomial_mod(std::uint64_t n, std::uint64_t k, std::uint64_t m);

/// Minimal period of n -> binom(n, x) mod m:
/// m * prod_i p_i^floor(log_{p_i} x).
std::uint64_t binomial_period_formula(std::uint64_t m, std::uint64_t x);

/// Smallest l with binom(n, x) == binom(n + l, x) (mod m) for every
/// n in [0, horizon - l]; nullopt if no l <= horizon / 2 works.
std::optional<std::uint64_t> binomial_period_bruteforce(std::uint64_t m,
                                                        std::uint64_t x,
                                                        std::uint64_t horizon);

/// Per-gate period bound q(m, s) = m * prod_i p_i^floor(log_{p_i} s).
/// A support bound of zero contributes the empty product.
std::uint64_t gate_period_bound(std::uint64_t m, std::uint64_t s);

/// Every length of the form m * prod_i p_i^{c_i} with c_i <= floor(log_{p_i} s),
/// plus the trivial length 1. Sorted ascending.
std::vector<std::uint64_t> structured_periods(std::uint64_t m, std::uint64_t s);

/// Binomial coefficients mod a small modulus for all n <= max_n, via Pascal.
class BinomialTable {
 public:
  BinomialTable(std::size_t max_n, std::uint64_t modulus);

  std::uint64_t operator()(std::size_t n, std::size_t k) const {
    if (k > n || n > max_n_) return 0;
    return rows_[n][k];
  }

  std::size_t max_n() const { return max_n_; }

 private:
  std::size_t max_n_;
  std::vector<std::vector<std::uint64_t>> rows_;
};

}  // namespace modcirc
