#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "modcirc/circuit.hpp"
#include "modcirc/construct.hpp"
#include "modcirc/groups.hpp"
#include "modcirc/numtheory.hpp"
#include "modcirc/symmetry.hpp"

namespace modcirc {

/// Smallest l in [1, len-1] with t[x] == t[x+l] wherever both exist.
std::optional<std::uint64_t> minimal_period(std::span<const std::uint8_t> table);

/// Smallest l in [1, len-1] that is a period of every table (equal lengths).
std::optional<std::uint64_t> common_period(const std::vector<std::vector<std::uint8_t>> &tables);

/// True iff l is a period of t (vacuously so when l >= len).
bool has_period(std::span<const std::uint8_t> t, std::uint64_t l);

/// Values at 1^w 0^(n-w), w = 0..n; no symmetry check.
std::vector<std::uint8_t> weight_table_unchecked(const Circuit &c);
/// Throws PreconditionFailed unless c is Sym_n-symmetric.
std::vector<std::uint8_t> weight_table(const Circuit &c);

struct PeriodReport {
  std::string subject;
  /// nullopt: no period shorter than the table.
  std::optional<std::uint64_t> minimal_period;
  std::uint64_t table_length = 0;
  std::uint64_t bound = 0;
  /// A period of length <= bound exists on the finite domain: the minimal
  /// period is within the bound, or the table is no longer than the bound.
  bool satisfied = false;
  /// Some length in {1} u {m prod p_i^c_i} is a period of every table.
  bool structured = true;
  std::optional<std::uint64_t> structured_witness;
};

struct SupportSummary {
  std::vector<SupportReport> gates;  // indexed by GateId
  std::size_t max_support = 0;
  bool all_unique = true;
};

/// Supports of every gate, computed once per Sym_n-orbit and transported
/// along the orbit.
SupportSummary compute_supports(SymmetryContext &ctx, std::size_t exhaustive_cap = 12);

/// Per-alpha tables of g over the count of ones outside its support.
PeriodReport gate_period_report(SymmetryContext &ctx, GateId g, const SupportReport &support,
                                std::size_t max_support, std::size_t support_cap = 6);

/// Reports for one gate per Sym_n-orbit (the rest agree by symmetry).
std::vector<PeriodReport> all_gate_period_reports(SymmetryContext &ctx,
                                                  const SupportSummary &supports,
                                                  std::size_t support_cap = 6);

/// Weight-table period against m * maxSup^r.
PeriodReport root_period_check(SymmetryContext &ctx, std::size_t max_support);

/// Max blockwise support size over all gates for block b.
std::size_t max_block_support(SymmetryContext &ctx, const BlockTree &t, const Block &b,
                              std::size_t exhaustive_cap = 12);

/// B-period of the root: tables over |x|_1^B for outside all-0 and all-1,
/// reporting their smallest common period against m * maxSup_B^r.
PeriodReport block_period(SymmetryContext &ctx, const BlockTree &t, const Block &b,
                          std::size_t max_block_support);

struct LowerBound {
  std::uint64_t n = 0;  // n, or k_max for the nested bound
  std::uint64_t k = 0;  // floor((n/m)^(1/r))
  BigInt bound;         // binom(n, k)
  std::uint64_t k_ceil = 0;
  BigInt bound_ceil;
  /// Nested bound only: every branching factor exceeds 8.
  bool hypothesis_met = true;
};

/// Throws UnsupportedModulus for prime-power m.
LowerBound size_lower_bound(std::uint64_t n, std::uint64_t m);
LowerBound nested_size_lower_bound(const BlockTree &t, std::uint64_t m);

/// Ordered factorizations of n into h factors, each >= 2.
std::vector<std::vector<std::size_t>> factorizations(std::size_t n, std::size_t h);

/// Hash-consing builder that keeps the generator action on every gate so whole
/// orbits of template gates can be added.
class SymmetricBuilder {
 public:
  SymmetricBuilder(std::uint64_t modulus, const GeneratorSet &gens);
  /// Starts from an existing circuit whose gates are closed under gens.
  SymmetricBuilder(const Circuit &partial, const GeneratorSet &gens);

  GateId input(std::size_t var) const { return builder_.input(var); }
  /// Adds the orbit of the template gate; returns the orbit, template first.
  std::vector<GateId> add_orbit(const std::vector<std::uint64_t> &accept,
                                const std::vector<Edge> &children, std::size_t cap = 100'000);
  const Circuit &peek() const { return builder_.peek(); }
  /// Builder id of gate g of the circuit passed to the importing constructor.
  GateId imported(GateId g) const { return imported_.at(g); }
  Circuit finish(std::optional<GateId> root) { return builder_.finish(root); }

 private:
  std::vector<Edge> image(std::size_t gen, const std::vector<Edge> &edges) const;

  GeneratorSet gens_;
  CircuitBuilder builder_;
  std::vector<std::vector<GateId>> action_;  // action_[generator][gate]
  std::vector<GateId> imported_;
};

/// Adds the orbit of template gate g (which must have no parents) under gens.
Circuit symmetrize_template(const Circuit &partial, GateId g, const GeneratorSet &gens);

struct RandomCircuitOptions {
  std::uint64_t modulus = 6;
  std::size_t min_arity = 4;
  std::size_t max_arity = 8;
  std::size_t max_anchor = 3;
  std::size_t layers = 2;
};

/// Seeded random rigid Sym_n-symmetric circuit of depth <= layers + 1.
Circuit random_symmetric_circuit(std::mt19937_64 &rng, const RandomCircuitOptions &opts = {});

/// Random expression with n <= max_arity; p, q distinct primes dividing m.
ZpqExpression random_zpq_expression(std::mt19937_64 &rng, std::uint64_t m,
                                    std::size_t max_arity = 8, std::size_t max_terms = 12);

/// g(delta) == sigma_pi(g)(delta') with delta'[pi(i)] = delta[i], for every gate.
bool check_equivariance(SymmetryContext &ctx, const Permutation &pi, const Assignment &delta);
/// supp(pi(g)) == pi(supp(g)).
bool check_support_movement(SymmetryContext &ctx, const Permutation &pi, GateId g);

Permutation random_permutation(std::mt19937_64 &rng, std::size_t n);

enum class VerifyMode { Exhaustive, Weight, Sample };

struct VerifyResult {
  bool pass = false;
  VerifyMode mode = VerifyMode::Exhaustive;
  bool exhaustive = true;
  std::uint64_t checked = 0;
  std::optional<Assignment> counterexample;
};

VerifyMode parse_verify_mode(const std::string &s);
std::string to_string(VerifyMode mode);

/// Checks that c computes AND_n. Weight mode verifies Sym_n-symmetry first.
VerifyResult verify_and(const Circuit &c, VerifyMode mode, std::uint64_t seed = 1,
                        std::size_t samples = 1000);

}  // namespace modcirc
