#pragma once

#include <cstdint>
#include <deque>
#include <functional>
#include <initializer_list>
#include <set>
#include <string>
#include <vector>

#include "modcirc/error.hpp"

namespace modcirc {

/// Bijection on {0, ..., n-1}; images[i] is the image of i.
class Permutation {
 public:
  Permutation() = default;
  explicit Permutation(std::size_t degree);  // identity
  explicit Permutation(std::vector<std::size_t> images);

  /// Builds from 1-based cycles, e.g. {{1, 3}, {2, 4}}.
  static Permutation from_cycles(std::size_t degree,
                                 std::initializer_list<std::initializer_list<std::size_t>> cycles);
  static Permutation transposition(std::size_t degree, std::size_t a, std::size_t b);

  std::size_t degree() const { return images_.size(); }
  std::size_t operator()(std::size_t i) const { return images_[i]; }
  const std::vector<std::size_t> &images() const { return images_; }

  bool is_identity() const;
  Permutation inverse() const;
  /// (*this * other)(x) = (*this)(other(x)).
  Permutation operator*(const Permutation &other) const;

  /// 1-based cycle notation, "()" for the identity.
  std::string to_string() const;

  auto operator<=>(const Permutation &) const = default;

 private:
  std::vector<std::size_t> images_;
};

enum class GroupKind { FullSymmetric, TreeAutomorphism, PointwiseStabilizer, Custom };

struct GeneratorSet {
  std::size_t degree = 0;
  std::vector<Permutation> generators;
  GroupKind kind = GroupKind::Custom;
};

using NodeId = std::size_t;

/// A sibling block: all children of `parent`.
struct Block {
  NodeId parent = 0;
  std::size_t level = 0;  // level of the members
  std::vector<NodeId> members;

  bool operator==(const Block &) const = default;
};

/// The symmetric tree with branching (k_1, ..., k_h), k_1 = leaf-block size.
/// Node ids: level 0 (the leaves, ids 0..n-1 = variables) first, then each
/// level in turn; the root is the last id.
class BlockTree {
 public:
  explicit BlockTree(std::vector<std::size_t> branching);

  std::size_t height() const { return branching_.size(); }
  std::size_t leaf_count() const { return leaves_; }
  const std::vector<std::size_t> &branching() const { return branching_; }
  std::size_t k_max() const;
  std::size_t k_min() const;
  /// The size lower bounds assume every k_i > 8.
  bool meets_size_hypothesis() const { return k_min() > 8; }

  std::size_t level_size(std::size_t level) const;
  NodeId node(std::size_t level, std::size_t index) const;
  std::size_t level_of(NodeId v) const;
  std::size_t index_of(NodeId v) const;
  NodeId root() const { return node(height(), 0); }
  std::size_t node_count() const { return offsets_.back(); }

  std::vector<NodeId> children(NodeId v) const;
  /// Leaves (0-based variable indices) of the subtree rooted at v, ascending.
  std::vector<std::size_t> leaves_of(NodeId v) const;
  /// L_0(W): leaves with an ancestor in W.
  std::vector<std::size_t> leaves_under(const std::vector<NodeId> &nodes) const;

  Block block_of_children(NodeId parent) const;
  /// Every sibling block, lowest level first.
  std::vector<Block> blocks() const;
  bool is_block(const Block &b) const;

  /// Leaf permutation exchanging the subtrees rooted at siblings a and b.
  Permutation subtree_swap(NodeId a, NodeId b) const;

 private:
  std::vector<std::size_t> branching_;
  std::size_t leaves_ = 1;
  std::vector<std::size_t> offsets_;  // first id of each level, plus end
  std::vector<std::size_t> span_;     // leaves per node at each level
};

/// Parses "k1,k2,...,kh".
BlockTree parse_blocks(const std::string &text);

GeneratorSet sym_generators(std::size_t n);
GeneratorSet tree_aut_generators(const BlockTree &t);
/// Transposition chain over the complement of `fixed` (0-based), ascending.
GeneratorSet pointwise_stabilizer_generators(std::size_t n, const std::vector<std::size_t> &fixed);
/// Subtree swaps realising Stab^pointwise_{Sym(B)}(fixed) for fixed within B.
GeneratorSet block_sibling_generators(const BlockTree &t, const Block &b,
                                      const std::vector<NodeId> &fixed);

/// Closure of {start} under the generators via BFS.
template <typename T, typename Action>
std::set<T> orbit(const T &start, const std::vector<Permutation> &gens, Action action,
                  std::size_t cap = 100'000) {
  std::set<T> seen{start};
  std::deque<T> frontier{start};
  while (!frontier.empty()) {
    T cur = std::move(frontier.front());
    frontier.pop_front();
    for (const auto &g : gens) {
      T next = action(g, cur);
      if (seen.insert(next).second) {
        if (seen.size() > cap) {
          throw Error(ErrorCode::TooLarge, "orbit exceeds cap " + std::to_string(cap));
        }
        frontier.push_back(std::move(next));
      }
    }
  }
  return seen;
}

/// Orbit of a point under the natural action.
std::set<std::size_t> point_orbit(std::size_t point, const GeneratorSet &gens);
/// Orbit of a sorted point set under the induced action on subsets.
std::set<std::vector<std::size_t>> set_orbit(const std::vector<std::size_t> &points,
                                             const GeneratorSet &gens,
                                             std::size_t cap = 100'000);

/// All group elements; throws TooLarge past `cap` (default 10,000).
std::vector<Permutation> enumerate_group(const GeneratorSet &gens, std::size_t cap = 10'000);

/// Image of a sorted point set, re-sorted.
std::vector<std::size_t> apply_to_set(const Permutation &p, const std::vector<std::size_t> &s);

}  // namespace modcirc
