#pragma once

// Independent reference computations used by the tests. None of these call
// into the library's algorithms beyond plain data access.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <vector>

#include "modcirc/circuit.hpp"

namespace oracle {

inline std::vector<std::uint8_t> and_table(std::size_t n) {
  std::vector<std::uint8_t> t(std::size_t{1} << n, 0);
  t.back() = 1;
  return t;
}

/// Pascal's triangle mod m, rows 0..max_n.
inline std::vector<std::vector<std::uint64_t>> pascal(std::size_t max_n, std::uint64_t m) {
  std::vector<std::vector<std::uint64_t>> rows(max_n + 1);
  for (std::size_t n = 0; n <= max_n; ++n) {
    rows[n].assign(n + 1, 1 % m);
    for (std::size_t k = 1; k < n; ++k) rows[n][k] = (rows[n - 1][k - 1] + rows[n - 1][k]) % m;
  }
  return rows;
}

/// Smallest l such that binom(n, x) mod m repeats with shift l over [0, horizon].
inline std::optional<std::uint64_t> binomial_period(std::uint64_t m, std::uint64_t x,
                                                    std::size_t horizon) {
  auto rows = pascal(horizon, m);
  auto value = [&](std::size_t n) { return x > n ? 0 : rows[n][x]; };
  for (std::uint64_t l = 1; l <= horizon / 2; ++l) {
    bool ok = true;
    for (std::size_t n = 0; n + l <= horizon && ok; ++n) ok = value(n) == value(n + l);
    if (ok) return l;
  }
  return std::nullopt;
}

/// Direct recursive evaluation of every gate (memoised), independent of Evaluator.
inline std::vector<std::uint8_t> evaluate_naive(const modcirc::Circuit &c,
                                                const std::vector<std::uint8_t> &bits) {
  std::vector<int> memo(c.gate_count(), -1);
  auto rec = [&](auto &self, modcirc::GateId g) -> int {
    if (memo[g] >= 0) return memo[g];
    const auto &gate = c.gate(g);
    int v;
    if (gate.is_input()) {
      v = bits[gate.var];
    } else {
      std::uint64_t sum = 0;
      for (const auto &e : gate.children) sum += e.mult * static_cast<std::uint64_t>(self(self, e.child));
      v = std::binary_search(gate.accept.begin(), gate.accept.end(), sum % c.modulus()) ? 1 : 0;
    }
    return memo[g] = v;
  };
  std::vector<std::uint8_t> out(c.gate_count());
  for (modcirc::GateId g = 0; g < c.gate_count(); ++g) out[g] = static_cast<std::uint8_t>(rec(rec, g));
  return out;
}

inline std::vector<std::uint8_t> bits_of(std::uint64_t index, std::size_t n) {
  std::vector<std::uint8_t> a(n);
  for (std::size_t i = 0; i < n; ++i) a[i] = (index >> (n - 1 - i)) & 1u;
  return a;
}

inline std::vector<std::uint8_t> truth_table_naive(const modcirc::Circuit &c) {
  std::vector<std::uint8_t> t;
  for (std::uint64_t i = 0; i < (std::uint64_t{1} << c.arity()); ++i) {
    t.push_back(evaluate_naive(c, bits_of(i, c.arity()))[*c.root()]);
  }
  return t;
}

/// All permutations of {0..n-1} fixing `fixed` pointwise.
inline std::vector<std::vector<std::size_t>> stabilizer(std::size_t n,
                                                        const std::vector<std::size_t> &fixed) {
  std::vector<std::size_t> movable;
  for (std::size_t i = 0; i < n; ++i) {
    if (std::find(fixed.begin(), fixed.end(), i) == fixed.end()) movable.push_back(i);
  }
  std::vector<std::vector<std::size_t>> out;
  auto images = movable;
  do {
    std::vector<std::size_t> p(n);
    std::iota(p.begin(), p.end(), std::size_t{0});
    for (std::size_t i = 0; i < movable.size(); ++i) p[movable[i]] = images[i];
    out.push_back(std::move(p));
  } while (std::next_permutation(images.begin(), images.end()));
  return out;
}

inline std::uint64_t factorial(std::uint64_t n) { return n <= 1 ? 1 : n * factorial(n - 1); }

}  // namespace oracle
