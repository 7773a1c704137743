#include "modcirc/numtheory.hpp"

#include <algorithm>
#include <limits>

#include "modcirc/error.hpp"

namespace modcirc {

std::vector<std::uint64_t> Factorization::prime_list() const {
  std::vector<std::uint64_t> out;
  out.reserve(primes.size());
  for (const auto &pp : primes) out.push_back(pp.prime);
  return out;
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

Factorization factorize(std::uint64_t m) {
  if (m < 2) {
    throw Error(ErrorCode::InvalidModulus,
                "modulus must be >= 2, got " + std::to_string(m));
  }
  Factorization f;
  f.modulus = m;
  std::uint64_t rest = m;
  for (std::uint64_t d = 2; d * d <= rest; ++d) {
    if (rest % d != 0) continue;
    unsigned e = 0;
    while (rest % d == 0) {
      rest /= d;
      ++e;
    }
    f.primes.push_back({d, e});
  }
  if (rest > 1) f.primes.push_back({rest, 1});
  return f;
}

std::optional<std::uint64_t> checked_pow(std::uint64_t base, unsigned exp) {
  std::uint64_t acc = 1;
  for (unsigned i = 0; i < exp; ++i) {
    if (base != 0 && acc > std::numeric_limits<std::uint64_t>::max() / base) {
      return std::nullopt;
    }
    acc *= base;
  }
  return acc;
}

namespace {

// k^r <= n, without overflow.
bool pow_le(std::uint64_t k, unsigned r, std::uint64_t n) {
  auto v = checked_pow(k, r);
  return v && *v <= n;
}

}  // namespace

std::uint64_t integer_root(std::uint64_t n, unsigned r) {
  if (r == 0) throw Error(ErrorCode::InvalidArgument, "root index must be >= 1");
  if (r == 1 || n < 2) return n;
  std::uint64_t lo = 1, hi = 1;
  while (pow_le(hi, r, n)) {
    lo = hi;
    hi *= 2;
  }
  // invariant: lo^r <= n < hi^r
  while (hi - lo > 1) {
    std::uint64_t mid = lo + (hi - lo) / 2;
    if (pow_le(mid, r, n)) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return lo;
}

std::uint64_t integer_root_ceil(std::uint64_t n, unsigned r) {
  std::uint64_t k = integer_root(n, r);
  if (pow_le(k, r, n) && checked_pow(k, r) == n) return k;
  return k + 1;
}

unsigned floor_log(std::uint64_t base, std::uint64_t x) {
  if (base < 2) throw Error(ErrorCode::InvalidArgument, "log base must be >= 2");
  if (x == 0) throw Error(ErrorCode::InvalidArgument, "log of zero");
  unsigned e = 0;
  std::uint64_t power = base;
  while (power <= x) {
    ++e;
    if (power > std::numeric_limits<std::uint64_t>::max() / base) break;
    power *= base;
  }
  return e;
}

BigInt binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  if (k > n - k) k = n - k;
  BigInt acc = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    acc *= (n - k + i);
    acc /= i;
  }
  return acc;
}

std::uint64_t binomial_mod(std::uint64_t n, std::uint64_t k, std::uint64_t m) {
  if (m < 2) throw Error(ErrorCode::InvalidModulus, "modulus must be >= 2");
  BigInt v = binomial(n, k) % m;
  return v.convert_to<std::uint64_t>();
}

std::uint64_t binomial_period_formula(std::uint64_t m, std::uint64_t x) {
  if (x == 0) {
    throw Error(ErrorCode::InvalidArgument,
                "period formula needs x >= 1 (binom(n,0) is constant)");
  }
  auto f = factorize(m);
  std::uint64_t len = m;
  for (const auto &pp : f.primes) {
    len *= *checked_pow(pp.prime, floor_log(pp.prime, x));
  }
  return len;
}

std::optional<std::uint64_t> binomial_period_bruteforce(std::uint64_t m,
                                                        std::uint64_t x,
                                                        std::uint64_t horizon) {
  if (m < 2) throw Error(ErrorCode::InvalidModulus, "modulus must be >= 2");
  // column[j] = binom(n, j) mod m for j <= x, advanced one row at a time
  std::vector<std::uint64_t> column(x + 1, 0);
  std::vector<std::uint64_t> seq;
  seq.reserve(horizon + 1);
  column[0] = 1 % m;
  for (std::uint64_t n = 0; n <= horizon; ++n) {
    if (n > 0) {
      for (std::uint64_t j = std::min<std::uint64_t>(n, x); j >= 1; --j) {
        column[j] = (column[j] + column[j - 1]) % m;
      }
    }
    seq.push_back(column[x]);
  }
  for (std::uint64_t len = 1; len <= horizon / 2; ++len) {
    bool ok = true;
    for (std::uint64_t n = 0; n + len <= horizon; ++n) {
      if (seq[n] != seq[n + len]) {
        ok = false;
        break;
      }
    }
    if (ok) return len;
  }
  return std::nullopt;
}

std::uint64_t gate_period_bound(std::uint64_t m, std::uint64_t s) {
  auto f = factorize(m);
  std::uint64_t bound = m;
  if (s == 0) return bound;
  for (const auto &pp : f.primes) {
    bound *= *checked_pow(pp.prime, floor_log(pp.prime, s));
  }
  return bound;
}

std::vector<std::uint64_t> structured_periods(std::uint64_t m, std::uint64_t s) {
  auto f = factorize(m);
  std::vector<std::uint64_t> out{m};
  if (s > 0) {
    for (const auto &pp : f.primes) {
      unsigned cap = floor_log(pp.prime, s);
      std::vector<std::uint64_t> next;
      for (std::uint64_t base : out) {
        std::uint64_t v = base;
        for (unsigned c = 0; c <= cap; ++c) {
          next.push_back(v);
          v *= pp.prime;
        }
      }
      out = std::move(next);
    }
  }
  out.push_back(1);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

BinomialTable::BinomialTable(std::size_t max_n, std::uint64_t modulus)
    : max_n_(max_n), rows_(max_n + 1) {
  for (std::size_t n = 0; n <= max_n; ++n) {
    rows_[n].assign(n + 1, 0);
    rows_[n][0] = 1 % modulus;
    rows_[n][n] = 1 % modulus;
    for (std::size_t k = 1; k < n; ++k) {
      rows_[n][k] = (rows_[n - 1][k - 1] + rows_[n - 1][k]) % modulus;
    }
  }
}

}  // namespace modcirc
