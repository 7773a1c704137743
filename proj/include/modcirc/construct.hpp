#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "modcirc/circuit.hpp"
#include "modcirc/groups.hpp"
#include "modcirc/numtheory.hpp"

namespace modcirc {

/// alpha * b(beta . x + c mod p), with b(0) = 0 and b(nonzero) = 1.
struct ZpqTerm {
  std::uint64_t alpha = 0;          // in Z_q
  std::vector<std::uint64_t> beta;  // in Z_p^n
  std::uint64_t c = 0;              // in Z_p

  bool operator==(const ZpqTerm &) const = default;
};

/// Z_q-linear combination of b(linear form mod p) terms.
struct ZpqExpression {
  std::uint64_t p = 2;
  std::uint64_t q = 3;
  std::size_t arity = 0;
  std::vector<ZpqTerm> terms;
  /// Set by builders that promise coefficients constant on Sym_n-orbits.
  bool symmetric_scheme = false;

  bool operator==(const ZpqExpression &) const = default;
};

std::uint64_t eval_zpq(const ZpqExpression &e, std::span<const std::uint8_t> bits);

/// Sums coefficients of equal (beta, c) in Z_q and drops zero aggregates.
/// Terms with beta = 0 are constants: c != 0 is rewritten to c = 1, c = 0 dropped.
ZpqExpression aggregate(const ZpqExpression &e);

/// True iff equal-multiset (beta, c) pairs carry equal coefficients and every
/// orbit is present in full.
bool has_symmetric_coefficients(const ZpqExpression &e);

/// Depth-2 realisation of output type q: one MOD_m gate per (beta, c).
OpenCircuit compile_zpq(const ZpqExpression &e, std::uint64_t m);

/// A Sym_n-orbit of terms: beta has residue_counts[a-1] entries equal to a
/// (a = 1..p-1) and zeros elsewhere; every member carries coefficient alpha.
struct TermOrbit {
  std::vector<std::size_t> residue_counts;
  std::uint64_t c = 0;
  std::uint64_t alpha = 0;

  std::size_t support() const;
  bool operator==(const TermOrbit &) const = default;
};

/// Orbit-compressed expression; expands to a ZpqExpression.
struct SymmetricZpq {
  std::uint64_t p = 2;
  std::uint64_t q = 3;
  std::size_t arity = 0;
  std::vector<TermOrbit> orbits;

  /// Number of (beta, c) terms after expansion.
  BigInt term_count() const;
  /// Largest number of nonzero entries of any beta.
  std::size_t max_support() const;
  ZpqExpression expand(std::uint64_t term_cap = 5'000'000) const;
};

/// Number of distinct vectors with the given nonzero residue counts.
BigInt orbit_size(std::size_t arity, std::span<const std::size_t> residue_counts);

/// t_{q^nu}: 0 when q^nu divides the number of zero inputs, 1 otherwise.
/// The result is {0,1}-valued on every Boolean input.
SymmetricZpq build_tq_orbits(std::uint64_t p, std::uint64_t q, unsigned nu,
                             std::size_t arity);
ZpqExpression build_tq(std::uint64_t p, std::uint64_t q, unsigned nu,
                       std::size_t arity);

/// Smallest nu >= 1 with p^(r*(nu-1)) <= n < p^(r*nu).
unsigned choose_nu(std::uint64_t prime, unsigned r, std::uint64_t n);

/// Everything the depth-2 AND_n construction needs, before materialisation.
struct AndDepth2Plan {
  struct Part {
    std::uint64_t prime;      // p_j: output type of t_{p_j^nu_j}
    unsigned nu;
    std::uint64_t aux_prime;  // inner prime of the expression
    SymmetricZpq expression;
  };

  std::uint64_t modulus = 0;
  std::size_t arity = 0;
  Factorization factorization;
  std::vector<Part> parts;

  /// "strict": every t part is {0,1}-valued.
  std::string contract() const { return "strict"; }
  BigInt planned_gate_count() const;
  /// Exact size of the materialised circuit, without building it.
  BigInt planned_size() const;
};

AndDepth2Plan plan_and_depth2(std::uint64_t m, std::size_t n);

/// Emits the plan's gates over the given child gates (one per variable) and
/// returns the top MOD_m^{0} gate.
GateId instantiate_and_depth2(CircuitBuilder &builder, const AndDepth2Plan &plan,
                              std::span<const GateId> inputs);

Circuit build_and_depth2(std::uint64_t m, std::size_t n);

/// Nested AND: a depth-2 AND per block of the tree, composed level by level.
Circuit build_and_nested(std::uint64_t m, const BlockTree &tree);

}  // namespace modcirc
