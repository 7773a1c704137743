#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "modcirc/circuit.hpp"
#include "modcirc/groups.hpp"

namespace modcirc {

/// A gate bijection preserving kinds, accepting sets, multiplicities and the
/// root, whose action on input gates is induced by a variable permutation.
struct CircuitAutomorphism {
  std::vector<GateId> gate_map;

  GateId operator()(GateId g) const { return gate_map[g]; }
  bool operator==(const CircuitAutomorphism &) const = default;
};

/// Checks every automorphism invariant of `sigma` against `pi`.
bool is_automorphism(const Circuit &c, const CircuitAutomorphism &sigma, const Permutation &pi);

/// Partition refinement on (kind, accept, input label, child and parent
/// signatures) followed by individualisation and backtracking.
/// nullopt when pi does not extend. Throws TooLarge once `node_cap` search
/// nodes have been spent.
std::optional<CircuitAutomorphism> extend_to_automorphism(const Circuit &c, const Permutation &pi,
                                                          std::size_t node_cap = 100'000);

bool is_symmetric(const Circuit &c, const GeneratorSet &gens);

/// True iff the only input-fixing automorphism is the identity.
bool is_rigid(const Circuit &c, std::size_t gate_cap = 200'000);

/// Merges gates with identical (kind, accept, child multiplicity map) to a
/// fixpoint, sums parent multiplicities of merged gates mod m, and drops gates
/// that no longer reach the root.
Circuit rigidify(const Circuit &c);

/// True iff no two gates share (kind, label, accept, children). Such circuits
/// are rigid and admit bottom-up automorphism extension.
bool has_unique_gate_keys(const Circuit &c);

enum class SupportMethod { GreedyTransposition, ExhaustiveSubsets };

struct SupportReport {
  GateId gate = 0;
  /// The unique minimal support, or (when !unique) the lexicographically
  /// first support of minimum cardinality.
  std::vector<std::size_t> support;
  SupportMethod method = SupportMethod::GreedyTransposition;
  bool unique = true;
  /// Every minimum-cardinality support when there are several and the
  /// exhaustive search ran.
  std::vector<std::vector<std::size_t>> alternatives;
};

/// Caches automorphisms of one rigid circuit.
class SymmetryContext {
 public:
  /// Throws NotRigid unless the circuit is rigid.
  explicit SymmetryContext(Circuit c);

  const Circuit &circuit() const { return circuit_; }

  /// The unique automorphism extending pi, or nullopt.
  const std::optional<CircuitAutomorphism> &extension(const Permutation &pi);
  /// As extension(), but throws PreconditionFailed when pi does not extend.
  const CircuitAutomorphism &automorphism(const Permutation &pi);

  /// pi(g) in the induced action.
  GateId act(const Permutation &pi, GateId g) { return automorphism(pi)(g); }

  bool is_symmetric(const GeneratorSet &gens);

  std::set<GateId> gate_orbit(GateId g, const GeneratorSet &gens);
  /// Orbit id per gate under the generated group.
  std::vector<std::size_t> orbit_partition(const GeneratorSet &gens);
  std::size_t max_orbit(const GeneratorSet &gens);

  /// True iff every permutation fixing `fixed` pointwise fixes g.
  bool is_support(GateId g, const std::vector<std::size_t> &fixed);
  /// Requires Sym_n-symmetry; exhaustive fallback up to `exhaustive_cap` variables.
  SupportReport minimal_support(GateId g, std::size_t exhaustive_cap = 12);

  bool is_block_support(GateId g, const BlockTree &t, const Block &b,
                        const std::vector<NodeId> &fixed);
  /// Requires Aut(T)-symmetry; members reported as tree node ids.
  SupportReport blockwise_support(GateId g, const BlockTree &t, const Block &b,
                                  std::size_t exhaustive_cap = 12);

 private:
  Circuit circuit_;
  bool unique_keys_;
  std::vector<GateId> order_;
  std::map<std::vector<std::uint64_t>, GateId> index_;
  std::map<std::vector<std::size_t>, std::optional<CircuitAutomorphism>> cache_;
};

/// Rigidifies when needed; `warning` receives a note when it did.
Circuit ensure_rigid(const Circuit &c, std::string *warning = nullptr);

}  // namespace modcirc
