#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace modcirc {

using GateId = std::uint32_t;

/// Boolean input vector; entry i is the value of variable x_{i+1}.
using Assignment = std::vector<std::uint8_t>;

enum class GateKind : std::uint8_t { Input, Mod };

/// One wire record into a gate. Parallel wires are folded into `mult`.
struct Edge {
  GateId child;
  std::uint64_t mult;

  bool operator==(const Edge &) const = default;
};

struct Gate {
  GateKind kind = GateKind::Mod;
  std::size_t var = 0;                 // Input: 0-based variable index
  std::vector<std::uint64_t> accept;   // Mod: sorted accepting residues
  std::vector<Edge> children;          // sorted by child id, mult >= 1

  bool is_input() const { return kind == GateKind::Input; }
  bool operator==(const Gate &) const = default;
};

/// A MOD_m circuit: gates indexed densely by GateId, wires stored on the
/// receiving gate, at most one record per (child, parent) pair.
class Circuit {
 public:
  Circuit() = default;
  Circuit(std::uint64_t modulus, std::size_t arity);

  /// Creates x_1..x_n as gates 0..n-1.
  static Circuit with_inputs(std::uint64_t modulus, std::size_t arity);

  GateId add_input(std::size_t var);
  GateId add_mod(std::vector<std::uint64_t> accept, std::vector<Edge> children);
  void set_root(GateId g);
  void clear_root() { root_.reset(); }

  std::uint64_t modulus() const { return modulus_; }
  std::size_t arity() const { return arity_; }
  std::size_t gate_count() const { return gates_.size(); }
  const Gate &gate(GateId g) const { return gates_.at(g); }
  Gate &mutable_gate(GateId g) { return gates_.at(g); }
  const std::vector<Gate> &gates() const { return gates_; }
  std::optional<GateId> root() const { return root_; }
  GateId root_or_throw() const;

  /// Input gate labelled with variable index `var` (0-based).
  GateId input_gate(std::size_t var) const;

  /// Checks structural invariants; throws MalformedCircuit.
  void validate() const;

  /// Children-before-parents order; throws MalformedCircuit on a cycle.
  std::vector<GateId> topological_order() const;

  /// parents[g] = list of (parent, mult).
  std::vector<std::vector<Edge>> parent_lists() const;

  bool operator==(const Circuit &) const = default;

 private:
  std::uint64_t modulus_ = 2;
  std::size_t arity_ = 0;
  std::vector<Gate> gates_;
  std::optional<GateId> root_;
  std::vector<std::optional<GateId>> input_of_var_;
};

struct OutputWire {
  GateId gate;
  std::uint64_t mult;

  bool operator==(const OutputWire &) const = default;
};

/// Depth-accounted circuit whose designated output wires are summed mod q.
struct OpenCircuit {
  Circuit body;
  std::vector<OutputWire> outputs;
  std::uint64_t output_modulus = 2;

  bool operator==(const OpenCircuit &) const = default;
};

/// Flattened evaluator; build once, evaluate many assignments.
class Evaluator {
 public:
  explicit Evaluator(const Circuit &c);

  /// Value of every gate, indexed by GateId.
  std::vector<std::uint8_t> evaluate_all(std::span<const std::uint8_t> bits) const;
  std::uint8_t evaluate(std::span<const std::uint8_t> bits) const;

 private:
  const Circuit *circuit_;
  std::vector<GateId> order_;
  std::vector<std::uint8_t> accept_lut_;  // gate * modulus + residue
};

std::uint8_t evaluate(const Circuit &c, std::span<const std::uint8_t> bits);
std::vector<std::uint8_t> evaluate_all(const Circuit &c,
                                       std::span<const std::uint8_t> bits);
std::uint64_t evaluate_open(const OpenCircuit &oc,
                            std::span<const std::uint8_t> bits);

/// Longest input-to-root edge count (to any sink when there is no root).
std::size_t depth(const Circuit &c);
/// Longest input-to-output-gate edge count plus the output-wire layer.
std::size_t depth(const OpenCircuit &oc);

/// Gates plus wires counted with multiplicity.
std::uint64_t size(const Circuit &c);
std::uint64_t size(const OpenCircuit &oc);

Circuit normalize_multiplicities(const Circuit &c);

/// Drops non-input gates with no path to the root, renumbering densely.
Circuit prune(const Circuit &c);

/// Default exhaustive cap, read from MODCIRC_MAX_N when set.
std::size_t default_exhaustive_cap();

/// Bits of assignment number `index` in lexicographic order (x_1 most significant).
Assignment assignment_from_index(std::uint64_t index, std::size_t arity);

std::vector<std::uint8_t> truth_table(const Circuit &c,
                                      std::optional<std::size_t> cap = std::nullopt);

/// Hash-consing construction: identical (accept, children) requests return the
/// existing gate.
class CircuitBuilder {
 public:
  CircuitBuilder(std::uint64_t modulus, std::size_t arity);

  GateId input(std::size_t var) const { return circuit_.input_gate(var); }
  GateId mod_gate(std::vector<std::uint64_t> accept, std::vector<Edge> children);
  std::size_t gate_count() const { return circuit_.gate_count(); }
  const Circuit &peek() const { return circuit_; }

  Circuit finish(std::optional<GateId> root);

 private:
  Circuit circuit_;
  std::unordered_map<std::string, GateId> index_;
};

/// Sorts edges by child and merges duplicates, reducing multiplicities mod m
/// and dropping zero ones.
std::vector<Edge> canonical_edges(std::vector<Edge> edges, std::uint64_t modulus);

}  // namespace modcirc
