#include "modcirc/circuit.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>

#include "modcirc/error.hpp"

namespace modcirc {

Circuit::Circuit(std::uint64_t modulus, std::size_t arity)
    : modulus_(modulus), arity_(arity), input_of_var_(arity) {
  if (modulus < 2) {
    throw Error(ErrorCode::InvalidModulus, "modulus must be >= 2");
  }
}

Circuit Circuit::with_inputs(std::uint64_t modulus, std::size_t arity) {
  Circuit c(modulus, arity);
  for (std::size_t v = 0; v < arity; ++v) c.add_input(v);
  return c;
}

GateId Circuit::add_input(std::size_t var) {
  if (var >= arity_) {
    throw Error(ErrorCode::MalformedCircuit,
                "input variable " + std::to_string(var + 1) + " exceeds arity");
  }
  if (input_of_var_[var]) {
    throw Error(ErrorCode::MalformedCircuit,
                "duplicate input gate for x_" + std::to_string(var + 1));
  }
  Gate g;
  g.kind = GateKind::Input;
  g.var = var;
  auto id = static_cast<GateId>(gates_.size());
  gates_.push_back(std::move(g));
  input_of_var_[var] = id;
  return id;
}

GateId Circuit::add_mod(std::vector<std::uint64_t> accept, std::vector<Edge> children) {
  std::sort(accept.begin(), accept.end());
  accept.erase(std::unique(accept.begin(), accept.end()), accept.end());
  for (auto r : accept) {
    if (r >= modulus_) {
      throw Error(ErrorCode::MalformedCircuit,
                  "accepting residue " + std::to_string(r) + " outside Z_m");
    }
  }
  std::sort(children.begin(), children.end(),
            [](const Edge &a, const Edge &b) { return a.child < b.child; });
  for (std::size_t i = 0; i < children.size(); ++i) {
    if (children[i].mult == 0) {
      throw Error(ErrorCode::MalformedCircuit, "wire multiplicity must be >= 1");
    }
    if (i > 0 && children[i].child == children[i - 1].child) {
      throw Error(ErrorCode::MalformedCircuit, "duplicate wire record");
    }
  }
  Gate g;
  g.kind = GateKind::Mod;
  g.accept = std::move(accept);
  g.children = std::move(children);
  auto id = static_cast<GateId>(gates_.size());
  gates_.push_back(std::move(g));
  return id;
}

void Circuit::set_root(GateId g) {
  if (g >= gates_.size()) {
    throw Error(ErrorCode::MalformedCircuit, "root id out of range");
  }
  root_ = g;
}

GateId Circuit::root_or_throw() const {
  if (!root_) throw Error(ErrorCode::MalformedCircuit, "circuit has no root");
  return *root_;
}

GateId Circuit::input_gate(std::size_t var) const {
  if (var >= arity_ || !input_of_var_[var]) {
    throw Error(ErrorCode::MalformedCircuit,
                "no input gate for x_" + std::to_string(var + 1));
  }
  return *input_of_var_[var];
}

void Circuit::validate() const {
  for (std::size_t v = 0; v < arity_; ++v) {
    if (!input_of_var_[v]) {
      throw Error(ErrorCode::MalformedCircuit,
                  "missing input gate for x_" + std::to_string(v + 1));
    }
  }
  for (const auto &g : gates_) {
    if (g.is_input() && !g.children.empty()) {
      throw Error(ErrorCode::MalformedCircuit, "input gate with incoming wires");
    }
    for (const auto &e : g.children) {
      if (e.child >= gates_.size()) {
        throw Error(ErrorCode::MalformedCircuit, "wire from unknown gate");
      }
    }
  }
  if (root_ && gates_.at(*root_).is_input() && arity_ > 0) {
    // An input root is legal as a DAG but not as a closed MOD circuit.
    throw Error(ErrorCode::MalformedCircuit, "root must be a MOD gate");
  }
  (void)topological_order();
}

std::vector<GateId> Circuit::topological_order() const {
  const std::size_t n = gates_.size();
  std::vector<std::uint32_t> pending(n, 0);
  std::vector<std::vector<GateId>> parents(n);
  for (GateId g = 0; g < n; ++g) {
    pending[g] = static_cast<std::uint32_t>(gates_[g].children.size());
    for (const auto &e : gates_[g].children) parents.at(e.child).push_back(g);
  }
  std::vector<GateId> order;
  order.reserve(n);
  for (GateId g = 0; g < n; ++g) {
    if (pending[g] == 0) order.push_back(g);
  }
  for (std::size_t head = 0; head < order.size(); ++head) {
    for (GateId p : parents[order[head]]) {
      if (--pending[p] == 0) order.push_back(p);
    }
  }
  if (order.size() != n) {
    throw Error(ErrorCode::MalformedCircuit, "wiring contains a cycle");
  }
  return order;
}

std::vector<std::vector<Edge>> Circuit::parent_lists() const {
  std::vector<std::vector<Edge>> parents(gates_.size());
  for (GateId g = 0; g < gates_.size(); ++g) {
    for (const auto &e : gates_[g].children) parents[e.child].push_back({g, e.mult});
  }
  return parents;
}

Evaluator::Evaluator(const Circuit &c)
    : circuit_(&c), order_(c.topological_order()) {
  const auto m = c.modulus();
  accept_lut_.assign(c.gate_count() * m, 0);
  for (GateId g = 0; g < c.gate_count(); ++g) {
    for (auto r : c.gate(g).accept) accept_lut_[g * m + r] = 1;
  }
}

std::vector<std::uint8_t> Evaluator::evaluate_all(
    std::span<const std::uint8_t> bits) const {
  const Circuit &c = *circuit_;
  if (bits.size() != c.arity()) {
    throw Error(ErrorCode::InvalidAssignment,
                "assignment has length " + std::to_string(bits.size()) +
                    ", circuit arity is " + std::to_string(c.arity()));
  }
  const auto m = c.modulus();
  std::vector<std::uint8_t> value(c.gate_count(), 0);
  for (GateId g : order_) {
    const Gate &gate = c.gate(g);
    if (gate.is_input()) {
      value[g] = bits[gate.var] ? 1 : 0;
      continue;
    }
    std::uint64_t sum = 0;
    for (const auto &e : gate.children) {
      if (value[e.child]) sum = (sum + e.mult % m) % m;
    }
    value[g] = accept_lut_[g * m + sum];
  }
  return value;
}

std::uint8_t Evaluator::evaluate(std::span<const std::uint8_t> bits) const {
  return evaluate_all(bits)[circuit_->root_or_throw()];
}

std::uint8_t evaluate(const Circuit &c, std::span<const std::uint8_t> bits) {
  return Evaluator(c).evaluate(bits);
}

std::vector<std::uint8_t> evaluate_all(const Circuit &c,
                                       std::span<const std::uint8_t> bits) {
  return Evaluator(c).evaluate_all(bits);
}

std::uint64_t evaluate_open(const OpenCircuit &oc, std::span<const std::uint8_t> bits) {
  if (oc.outputs.empty()) {
    if (bits.size() != oc.body.arity()) {
      throw Error(ErrorCode::InvalidAssignment, "assignment length mismatch");
    }
    return 0;
  }
  auto values = evaluate_all(oc.body, bits);
  std::uint64_t sum = 0;
  const auto q = oc.output_modulus;
  for (const auto &w : oc.outputs) {
    if (values.at(w.gate)) sum = (sum + w.mult % q) % q;
  }
  return sum;
}

namespace {

std::vector<std::size_t> heights(const Circuit &c) {
  std::vector<std::size_t> h(c.gate_count(), 0);
  for (GateId g : c.topological_order()) {
    for (const auto &e : c.gate(g).children) h[g] = std::max(h[g], h[e.child] + 1);
  }
  return h;
}

}  // namespace

std::size_t depth(const Circuit &c) {
  auto h = heights(c);
  if (c.root()) return h[*c.root()];
  std::size_t best = 0;
  for (auto v : h) best = std::max(best, v);
  return best;
}

std::size_t depth(const OpenCircuit &oc) {
  if (oc.outputs.empty()) return 0;
  auto h = heights(oc.body);
  std::size_t best = 0;
  for (const auto &w : oc.outputs) best = std::max(best, h.at(w.gate));
  return best + 1;
}

std::uint64_t size(const Circuit &c) {
  std::uint64_t total = c.gate_count();
  for (const auto &g : c.gates()) {
    for (const auto &e : g.children) total += e.mult;
  }
  return total;
}

std::uint64_t size(const OpenCircuit &oc) {
  std::uint64_t total = size(oc.body);
  for (const auto &w : oc.outputs) total += w.mult;
  return total;
}

std::vector<Edge> canonical_edges(std::vector<Edge> edges, std::uint64_t modulus) {
  std::sort(edges.begin(), edges.end(),
            [](const Edge &a, const Edge &b) { return a.child < b.child; });
  std::vector<Edge> out;
  out.reserve(edges.size());
  for (const auto &e : edges) {
    if (!out.empty() && out.back().child == e.child) {
      out.back().mult = (out.back().mult + e.mult % modulus) % modulus;
    } else {
      out.push_back({e.child, e.mult % modulus});
    }
  }
  std::erase_if(out, [](const Edge &e) { return e.mult == 0; });
  return out;
}

Circuit normalize_multiplicities(const Circuit &c) {
  Circuit out = c;
  for (GateId g = 0; g < out.gate_count(); ++g) {
    auto &gate = out.mutable_gate(g);
    gate.children = canonical_edges(std::move(gate.children), c.modulus());
  }
  return out;
}

Circuit prune(const Circuit &c) {
  const auto root = c.root_or_throw();
  std::vector<std::uint8_t> live(c.gate_count(), 0);
  std::vector<GateId> stack{root};
  live[root] = 1;
  while (!stack.empty()) {
    GateId g = stack.back();
    stack.pop_back();
    for (const auto &e : c.gate(g).children) {
      if (!live[e.child]) {
        live[e.child] = 1;
        stack.push_back(e.child);
      }
    }
  }
  Circuit out(c.modulus(), c.arity());
  std::vector<GateId> remap(c.gate_count(), 0);
  for (GateId g : c.topological_order()) {
    const Gate &gate = c.gate(g);
    if (gate.is_input()) {
      remap[g] = out.add_input(gate.var);
    } else if (live[g]) {
      std::vector<Edge> kids;
      for (const auto &e : gate.children) kids.push_back({remap[e.child], e.mult});
      remap[g] = out.add_mod(gate.accept, std::move(kids));
    }
  }
  out.set_root(remap[root]);
  return out;
}

std::size_t default_exhaustive_cap() {
  if (const char *env = std::getenv("MODCIRC_MAX_N")) {
    try {
      return static_cast<std::size_t>(std::stoul(env));
    } catch (const std::exception &) {
      throw Error(ErrorCode::InvalidArgument, "MODCIRC_MAX_N is not a number");
    }
  }
  return 20;
}

Assignment assignment_from_index(std::uint64_t index, std::size_t arity) {
  Assignment a(arity, 0);
  for (std::size_t i = 0; i < arity; ++i) {
    a[i] = static_cast<std::uint8_t>((index >> (arity - 1 - i)) & 1u);
  }
  return a;
}

std::vector<std::uint8_t> truth_table(const Circuit &c, std::optional<std::size_t> cap) {
  const std::size_t limit = cap.value_or(default_exhaustive_cap());
  if (c.arity() > limit) {
    throw Error(ErrorCode::TooLarge, "arity " + std::to_string(c.arity()) +
                                         " exceeds exhaustive cap " +
                                         std::to_string(limit));
  }
  Evaluator ev(c);
  const auto root = c.root_or_throw();
  const std::uint64_t rows = std::uint64_t{1} << c.arity();
  std::vector<std::uint8_t> table(rows);
  for (std::uint64_t i = 0; i < rows; ++i) {
    table[i] = ev.evaluate_all(assignment_from_index(i, c.arity()))[root];
  }
  return table;
}

CircuitBuilder::CircuitBuilder(std::uint64_t modulus, std::size_t arity)
    : circuit_(Circuit::with_inputs(modulus, arity)) {}

GateId CircuitBuilder::mod_gate(std::vector<std::uint64_t> accept,
                                std::vector<Edge> children) {
  std::sort(accept.begin(), accept.end());
  accept.erase(std::unique(accept.begin(), accept.end()), accept.end());
  children = canonical_edges(std::move(children), circuit_.modulus());
  std::string key;
  key.reserve(16 * (accept.size() + 2 * children.size()) + 8);
  for (auto r : accept) key += std::to_string(r) + ',';
  key += '|';
  for (const auto &e : children) {
    key += std::to_string(e.child) + ':' + std::to_string(e.mult) + ',';
  }
  if (auto it = index_.find(key); it != index_.end()) return it->second;
  GateId id = circuit_.add_mod(std::move(accept), std::move(children));
  index_.emplace(std::move(key), id);
  return id;
}

Circuit CircuitBuilder::finish(std::optional<GateId> root) {
  if (root) circuit_.set_root(*root);
  index_.clear();
  return std::move(circuit_);
}

}  // namespace modcirc
