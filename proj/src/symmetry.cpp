#include "modcirc/symmetry.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_map>

#include <boost/container_hash/hash.hpp>

#include "modcirc/error.hpp"

namespace modcirc {

namespace {

using Key = std::vector<std::uint64_t>;

struct KeyHash {
  std::size_t operator()(const Key &k) const { return boost::hash_range(k.begin(), k.end()); }
};

constexpr std::uint64_t kSeparator = ~std::uint64_t{0};

Key gate_key(const Gate &g, const std::vector<GateId> *relabel) {
  Key key;
  if (g.is_input()) {
    key = {0, g.var};
    return key;
  }
  key.reserve(2 + g.accept.size() + 2 * g.children.size());
  key.push_back(1);
  key.insert(key.end(), g.accept.begin(), g.accept.end());
  key.push_back(kSeparator);
  std::vector<Edge> kids = g.children;
  if (relabel) {
    for (auto &e : kids) e.child = (*relabel)[e.child];
    std::sort(kids.begin(), kids.end(),
              [](const Edge &a, const Edge &b) { return a.child < b.child; });
  }
  for (const auto &e : kids) {
    key.push_back(e.child);
    key.push_back(e.mult);
  }
  return key;
}

// Joint colour refinement of two labellings of the same circuit. Colours are
// drawn from one dictionary per round, so equal colours are comparable
// across the two sides.
class PairRefiner {
 public:
  explicit PairRefiner(const Circuit &c) : c_(c), parents_(c.parent_lists()) {}

  // Initial colouring; `label_left[v]`/`label_right[v]` are the labels of the
  // input gate for variable v on each side.
  void initial(const std::vector<std::size_t> &label_left,
               const std::vector<std::size_t> &label_right, std::vector<std::uint32_t> &left,
               std::vector<std::uint32_t> &right) const {
    std::unordered_map<Key, std::uint32_t, KeyHash> dict;
    const auto root = c_.root();
    auto colour = [&](GateId g, const std::vector<std::size_t> &labels) {
      const Gate &gate = c_.gate(g);
      Key k;
      if (gate.is_input()) {
        k = {0, labels[gate.var]};
      } else {
        k = {1, root && *root == g ? 1u : 0u};
        k.insert(k.end(), gate.accept.begin(), gate.accept.end());
      }
      auto [it, inserted] = dict.try_emplace(std::move(k), static_cast<std::uint32_t>(dict.size()));
      return it->second;
    };
    left.resize(c_.gate_count());
    right.resize(c_.gate_count());
    for (GateId g = 0; g < c_.gate_count(); ++g) {
      left[g] = colour(g, label_left);
      right[g] = colour(g, label_right);
    }
  }

  // Refines to a stable partition; false when the two sides diverge.
  bool refine(std::vector<std::uint32_t> &left, std::vector<std::uint32_t> &right) const {
    if (!same_histogram(left, right)) return false;
    std::size_t classes = distinct(left);
    std::unordered_map<Key, std::uint32_t, KeyHash> dict;
    std::vector<std::uint32_t> next_left(left.size()), next_right(right.size());
    for (;;) {
      dict.clear();
      for (GateId g = 0; g < c_.gate_count(); ++g) {
        next_left[g] = lookup(dict, signature(g, left));
        next_right[g] = lookup(dict, signature(g, right));
      }
      if (!same_histogram(next_left, next_right)) return false;
      left.swap(next_left);
      right.swap(next_right);
      std::size_t now = distinct(left);
      if (now == classes) return true;
      classes = now;
    }
  }

 private:
  static std::uint32_t lookup(std::unordered_map<Key, std::uint32_t, KeyHash> &dict, Key k) {
    auto [it, inserted] = dict.try_emplace(std::move(k), static_cast<std::uint32_t>(dict.size()));
    return it->second;
  }

  Key signature(GateId g, const std::vector<std::uint32_t> &colour) const {
    Key k{colour[g]};
    std::vector<std::pair<std::uint64_t, std::uint64_t>> buf;
    for (const auto &e : c_.gate(g).children) buf.emplace_back(colour[e.child], e.mult);
    std::sort(buf.begin(), buf.end());
    for (auto [col, mult] : buf) {
      k.push_back(col);
      k.push_back(mult);
    }
    k.push_back(kSeparator);
    buf.clear();
    for (const auto &e : parents_[g]) buf.emplace_back(colour[e.child], e.mult);
    std::sort(buf.begin(), buf.end());
    for (auto [col, mult] : buf) {
      k.push_back(col);
      k.push_back(mult);
    }
    return k;
  }

  static bool same_histogram(std::vector<std::uint32_t> a, std::vector<std::uint32_t> b) {
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    return a == b;
  }

  static std::size_t distinct(std::vector<std::uint32_t> a) {
    std::sort(a.begin(), a.end());
    return static_cast<std::size_t>(std::unique(a.begin(), a.end()) - a.begin());
  }

  const Circuit &c_;
  std::vector<std::vector<Edge>> parents_;
};

// Backtracking over individualisations of a refined colouring pair.
class AutomorphismSearch {
 public:
  AutomorphismSearch(const Circuit &c, const PairRefiner &refiner, const Permutation &pi,
                     std::size_t node_cap)
      : c_(c), refiner_(refiner), pi_(pi), node_cap_(node_cap) {}

  std::optional<CircuitAutomorphism> run(std::vector<std::uint32_t> left,
                                         std::vector<std::uint32_t> right) {
    if (++nodes_ > node_cap_) {
      throw Error(ErrorCode::TooLarge, "automorphism search exceeded node cap");
    }
    if (!refiner_.refine(left, right)) return std::nullopt;

    // smallest non-singleton cell
    std::unordered_map<std::uint32_t, std::size_t> count;
    for (auto col : left) ++count[col];
    std::uint32_t target = 0;
    std::size_t best = 0;
    for (GateId g = 0; g < left.size(); ++g) {
      auto n = count[left[g]];
      if (n > 1 && (best == 0 || n < best)) {
        best = n;
        target = left[g];
      }
    }
    if (best == 0) return leaf(left, right);

    GateId v = 0;
    while (left[v] != target) ++v;
    std::uint32_t fresh = 1 + std::max(*std::max_element(left.begin(), left.end()),
                                       *std::max_element(right.begin(), right.end()));
    for (GateId w = 0; w < right.size(); ++w) {
      if (right[w] != target) continue;
      auto l = left, r = right;
      l[v] = fresh;
      r[w] = fresh;
      if (auto found = run(std::move(l), std::move(r))) return found;
    }
    return std::nullopt;
  }

 private:
  std::optional<CircuitAutomorphism> leaf(const std::vector<std::uint32_t> &left,
                                          const std::vector<std::uint32_t> &right) const {
    std::unordered_map<std::uint32_t, GateId> by_colour;
    for (GateId g = 0; g < right.size(); ++g) by_colour[right[g]] = g;
    CircuitAutomorphism sigma;
    sigma.gate_map.resize(left.size());
    for (GateId g = 0; g < left.size(); ++g) sigma.gate_map[g] = by_colour.at(left[g]);
    if (!is_automorphism(c_, sigma, pi_)) return std::nullopt;
    return sigma;
  }

  const Circuit &c_;
  const PairRefiner &refiner_;
  const Permutation &pi_;
  std::size_t node_cap_;
  std::size_t nodes_ = 0;
};

std::vector<std::size_t> identity_labels(std::size_t n) {
  std::vector<std::size_t> v(n);
  std::iota(v.begin(), v.end(), std::size_t{0});
  return v;
}

}  // namespace

bool is_automorphism(const Circuit &c, const CircuitAutomorphism &sigma, const Permutation &pi) {
  const std::size_t n = c.gate_count();
  if (sigma.gate_map.size() != n || pi.degree() != c.arity()) return false;
  std::vector<std::uint8_t> hit(n, 0);
  for (auto img : sigma.gate_map) {
    if (img >= n || hit[img]) return false;
    hit[img] = 1;
  }
  if (c.root() && sigma(*c.root()) != *c.root()) return false;
  for (GateId g = 0; g < n; ++g) {
    const Gate &a = c.gate(g);
    const Gate &b = c.gate(sigma(g));
    if (a.kind != b.kind) return false;
    if (a.is_input()) {
      if (b.var != pi(a.var)) return false;
      continue;
    }
    if (a.accept != b.accept) return false;
    std::vector<Edge> mapped = a.children;
    for (auto &e : mapped) e.child = sigma(e.child);
    std::sort(mapped.begin(), mapped.end(),
              [](const Edge &x, const Edge &y) { return x.child < y.child; });
    if (mapped != b.children) return false;
  }
  return true;
}

std::optional<CircuitAutomorphism> extend_to_automorphism(const Circuit &c, const Permutation &pi,
                                                          std::size_t node_cap) {
  if (pi.degree() != c.arity()) {
    throw Error(ErrorCode::InvalidArgument, "permutation degree differs from circuit arity");
  }
  PairRefiner refiner(c);
  std::vector<std::uint32_t> left, right;
  refiner.initial(pi.images(), identity_labels(c.arity()), left, right);
  AutomorphismSearch search(c, refiner, pi, node_cap);
  return search.run(std::move(left), std::move(right));
}

bool is_symmetric(const Circuit &c, const GeneratorSet &gens) {
  if (gens.degree != c.arity()) return false;
  if (has_unique_gate_keys(c)) {
    SymmetryContext ctx(c);
    return ctx.is_symmetric(gens);
  }
  for (const auto &g : gens.generators) {
    if (!extend_to_automorphism(c, g)) return false;
  }
  return true;
}

bool has_unique_gate_keys(const Circuit &c) {
  std::unordered_map<Key, GateId, KeyHash> seen;
  for (GateId g = 0; g < c.gate_count(); ++g) {
    if (!seen.try_emplace(gate_key(c.gate(g), nullptr), g).second) return false;
  }
  return true;
}

bool is_rigid(const Circuit &c, std::size_t gate_cap) {
  if (c.gate_count() > gate_cap) {
    throw Error(ErrorCode::TooLarge, "rigidity search over " + std::to_string(c.gate_count()) +
                                         " gates exceeds cap");
  }
  if (has_unique_gate_keys(c)) return true;

  const Permutation id(c.arity());
  PairRefiner refiner(c);
  std::vector<std::uint32_t> left, right;
  auto labels = identity_labels(c.arity());
  refiner.initial(labels, labels, left, right);
  for (;;) {
    refiner.refine(left, right);
    std::unordered_map<std::uint32_t, std::vector<GateId>> cells;
    for (GateId g = 0; g < left.size(); ++g) cells[left[g]].push_back(g);
    const std::vector<GateId> *cell = nullptr;
    for (const auto &[col, members] : cells) {
      if (members.size() > 1 && (!cell || members.size() < cell->size())) cell = &members;
    }
    if (!cell) return true;
    const GateId v = cell->front();
    std::uint32_t fresh = 1 + *std::max_element(left.begin(), left.end());
    // Any non-trivial automorphism either moves v somewhere in its cell or fixes it.
    for (GateId w : *cell) {
      if (w == v) continue;
      auto l = left, r = right;
      l[v] = fresh;
      r[w] = fresh;
      AutomorphismSearch search(c, refiner, id, 100'000);
      if (search.run(std::move(l), std::move(r))) return false;
    }
    left[v] = fresh;
    right[v] = fresh;
  }
}

Circuit rigidify(const Circuit &c) {
  CircuitBuilder builder(c.modulus(), c.arity());
  std::vector<GateId> rep(c.gate_count(), 0);
  for (GateId g : c.topological_order()) {
    const Gate &gate = c.gate(g);
    if (gate.is_input()) {
      rep[g] = builder.input(gate.var);
      continue;
    }
    std::vector<Edge> kids;
    kids.reserve(gate.children.size());
    for (const auto &e : gate.children) kids.push_back({rep[e.child], e.mult});
    rep[g] = builder.mod_gate(gate.accept, std::move(kids));
  }
  if (!c.root()) return builder.finish(std::nullopt);
  return prune(builder.finish(rep[*c.root()]));
}

SymmetryContext::SymmetryContext(Circuit c)
    : circuit_(std::move(c)), unique_keys_(has_unique_gate_keys(circuit_)) {
  if (!unique_keys_ && !is_rigid(circuit_)) {
    throw Error(ErrorCode::NotRigid, "circuit has a non-trivial input-fixing automorphism");
  }
  if (unique_keys_) {
    order_ = circuit_.topological_order();
    for (GateId g = 0; g < circuit_.gate_count(); ++g) {
      index_.emplace(gate_key(circuit_.gate(g), nullptr), g);
    }
  }
}

const std::optional<CircuitAutomorphism> &SymmetryContext::extension(const Permutation &pi) {
  if (auto it = cache_.find(pi.images()); it != cache_.end()) return it->second;
  if (pi.degree() != circuit_.arity()) {
    throw Error(ErrorCode::InvalidArgument, "permutation degree differs from circuit arity");
  }
  std::optional<CircuitAutomorphism> result;
  if (unique_keys_) {
    CircuitAutomorphism sigma;
    sigma.gate_map.assign(circuit_.gate_count(), 0);
    bool ok = true;
    for (GateId g : order_) {
      const Gate &gate = circuit_.gate(g);
      if (gate.is_input()) {
        sigma.gate_map[g] = circuit_.input_gate(pi(gate.var));
        continue;
      }
      auto it = index_.find(gate_key(gate, &sigma.gate_map));
      if (it == index_.end()) {
        ok = false;
        break;
      }
      sigma.gate_map[g] = it->second;
    }
    if (ok && circuit_.root() && sigma(*circuit_.root()) != *circuit_.root()) ok = false;
    if (ok) result = std::move(sigma);
  } else {
    result = extend_to_automorphism(circuit_, pi);
  }
  return cache_.emplace(pi.images(), std::move(result)).first->second;
}

const CircuitAutomorphism &SymmetryContext::automorphism(const Permutation &pi) {
  const auto &ext = extension(pi);
  if (!ext) {
    throw Error(ErrorCode::PreconditionFailed,
                "permutation " + pi.to_string() + " does not extend to an automorphism");
  }
  return *ext;
}

bool SymmetryContext::is_symmetric(const GeneratorSet &gens) {
  if (gens.degree != circuit_.arity()) return false;
  for (const auto &g : gens.generators) {
    if (!extension(g)) return false;
  }
  return true;
}

std::set<GateId> SymmetryContext::gate_orbit(GateId g, const GeneratorSet &gens) {
  std::vector<const CircuitAutomorphism *> auts;
  for (const auto &p : gens.generators) auts.push_back(&automorphism(p));
  std::set<GateId> seen{g};
  std::vector<GateId> frontier{g};
  while (!frontier.empty()) {
    GateId cur = frontier.back();
    frontier.pop_back();
    for (const auto *a : auts) {
      if (seen.insert((*a)(cur)).second) frontier.push_back((*a)(cur));
    }
  }
  return seen;
}

std::vector<std::size_t> SymmetryContext::orbit_partition(const GeneratorSet &gens) {
  const std::size_t n = circuit_.gate_count();
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto &p : gens.generators) {
    const auto &a = automorphism(p);
    for (GateId g = 0; g < n; ++g) {
      auto ra = find(g), rb = find(a(g));
      if (ra != rb) parent[std::max(ra, rb)] = std::min(ra, rb);
    }
  }
  for (std::size_t g = 0; g < n; ++g) parent[g] = find(g);
  return parent;
}

std::size_t SymmetryContext::max_orbit(const GeneratorSet &gens) {
  auto part = orbit_partition(gens);
  std::vector<std::size_t> count(part.size(), 0);
  std::size_t best = 0;
  for (auto r : part) best = std::max(best, ++count[r]);
  return best;
}

bool SymmetryContext::is_support(GateId g, const std::vector<std::size_t> &fixed) {
  for (const auto &p : pointwise_stabilizer_generators(circuit_.arity(), fixed).generators) {
    if (automorphism(p)(g) != g) return false;
  }
  return true;
}

namespace {

// Smallest members of an upward-closed family over `ground`.
template <typename Test>
std::vector<std::vector<std::size_t>> smallest_sets(const std::vector<std::size_t> &ground,
                                                   Test is_member) {
  const std::size_t k = ground.size();
  std::vector<std::vector<std::size_t>> found;
  for (std::size_t size = 0; size <= k && found.empty(); ++size) {
    std::vector<std::uint8_t> pick(k, 0);
    std::fill(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(size), 1);
    do {
      std::vector<std::size_t> subset;
      for (std::size_t i = 0; i < k; ++i) {
        if (pick[i]) subset.push_back(ground[i]);
      }
      if (is_member(subset)) found.push_back(std::move(subset));
    } while (std::prev_permutation(pick.begin(), pick.end()));
  }
  return found;
}

template <typename Test>
SupportReport descend(GateId g, const std::vector<std::size_t> &ground, std::size_t exhaustive_cap,
                      Test is_member) {
  SupportReport report;
  report.gate = g;
  std::vector<std::size_t> current = ground;
  for (auto x : ground) {
    std::vector<std::size_t> trial;
    for (auto y : current) {
      if (y != x) trial.push_back(y);
    }
    if (trial.size() < current.size() && is_member(trial)) current = std::move(trial);
  }
  report.support = current;
  if (2 * current.size() < ground.size()) return report;

  if (ground.size() > exhaustive_cap) {
    report.unique = false;
    return report;
  }
  report.method = SupportMethod::ExhaustiveSubsets;
  auto minimal = smallest_sets(ground, is_member);
  if (minimal.size() == 1) {
    report.support = minimal.front();
    return report;
  }
  report.unique = false;
  report.support = minimal.front();
  report.alternatives = std::move(minimal);
  return report;
}

}  // namespace

SupportReport SymmetryContext::minimal_support(GateId g, std::size_t exhaustive_cap) {
  return descend(g, identity_labels(circuit_.arity()), exhaustive_cap,
                 [&](const std::vector<std::size_t> &s) { return is_support(g, s); });
}

bool SymmetryContext::is_block_support(GateId g, const BlockTree &t, const Block &b,
                                       const std::vector<NodeId> &fixed) {
  for (const auto &p : block_sibling_generators(t, b, fixed).generators) {
    if (automorphism(p)(g) != g) return false;
  }
  return true;
}

SupportReport SymmetryContext::blockwise_support(GateId g, const BlockTree &t, const Block &b,
                                                 std::size_t exhaustive_cap) {
  if (!t.is_block(b)) throw Error(ErrorCode::InvalidBlock, "not a sibling block of the tree");
  if (t.leaf_count() != circuit_.arity()) {
    throw Error(ErrorCode::InvalidArgument, "tree leaf count differs from circuit arity");
  }
  return descend(g, b.members, exhaustive_cap,
                 [&](const std::vector<NodeId> &s) { return is_block_support(g, t, b, s); });
}

Circuit ensure_rigid(const Circuit &c, std::string *warning) {
  if (is_rigid(c)) return c;
  if (warning) *warning = "circuit was not rigid; supports and orbits refer to its rigidification";
  return rigidify(c);
}

}  // namespace modcirc
