#include "modcirc/groups.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace modcirc {

Permutation::Permutation(std::size_t degree) : images_(degree) {
  std::iota(images_.begin(), images_.end(), std::size_t{0});
}

Permutation::Permutation(std::vector<std::size_t> images) : images_(std::move(images)) {
  std::vector<std::uint8_t> hit(images_.size(), 0);
  for (auto v : images_) {
    if (v >= images_.size() || hit[v]) {
      throw Error(ErrorCode::InvalidArgument, "images do not form a permutation");
    }
    hit[v] = 1;
  }
}

Permutation Permutation::from_cycles(
    std::size_t degree,
    std::initializer_list<std::initializer_list<std::size_t>> cycles) {
  std::vector<std::size_t> img(degree);
  std::iota(img.begin(), img.end(), std::size_t{0});
  for (const auto &cyc : cycles) {
    std::vector<std::size_t> pts(cyc);
    for (std::size_t i = 0; i < pts.size(); ++i) {
      std::size_t from = pts[i], to = pts[(i + 1) % pts.size()];
      if (from < 1 || from > degree || to < 1 || to > degree) {
        throw Error(ErrorCode::InvalidArgument, "cycle point out of range");
      }
      img[from - 1] = to - 1;
    }
  }
  return Permutation(std::move(img));
}

Permutation Permutation::transposition(std::size_t degree, std::size_t a, std::size_t b) {
  Permutation p(degree);
  std::swap(p.images_.at(a), p.images_.at(b));
  return p;
}

bool Permutation::is_identity() const {
  for (std::size_t i = 0; i < images_.size(); ++i) {
    if (images_[i] != i) return false;
  }
  return true;
}

Permutation Permutation::inverse() const {
  std::vector<std::size_t> inv(images_.size());
  for (std::size_t i = 0; i < images_.size(); ++i) inv[images_[i]] = i;
  Permutation p;
  p.images_ = std::move(inv);
  return p;
}

Permutation Permutation::operator*(const Permutation &other) const {
  if (other.degree() != degree()) {
    throw Error(ErrorCode::InvalidArgument, "degree mismatch in composition");
  }
  Permutation p;
  p.images_.resize(images_.size());
  for (std::size_t i = 0; i < images_.size(); ++i) p.images_[i] = images_[other.images_[i]];
  return p;
}

std::string Permutation::to_string() const {
  std::ostringstream out;
  std::vector<std::uint8_t> seen(images_.size(), 0);
  for (std::size_t i = 0; i < images_.size(); ++i) {
    if (seen[i] || images_[i] == i) continue;
    out << '(';
    std::size_t j = i;
    bool first = true;
    while (!seen[j]) {
      seen[j] = 1;
      if (!first) out << ' ';
      out << j + 1;
      first = false;
      j = images_[j];
    }
    out << ')';
  }
  auto s = out.str();
  return s.empty() ? "()" : s;
}

BlockTree::BlockTree(std::vector<std::size_t> branching) : branching_(std::move(branching)) {
  if (branching_.empty()) {
    throw Error(ErrorCode::InvalidArgument, "block tree needs at least one level");
  }
  for (auto k : branching_) {
    if (k < 2) throw Error(ErrorCode::InvalidArgument, "branching factors must be >= 2");
    leaves_ *= k;
  }
  span_.push_back(1);
  for (auto k : branching_) span_.push_back(span_.back() * k);
  offsets_.push_back(0);
  for (std::size_t level = 0; level <= height(); ++level) {
    offsets_.push_back(offsets_.back() + leaves_ / span_[level]);
  }
}

std::size_t BlockTree::k_max() const {
  return *std::max_element(branching_.begin(), branching_.end());
}

std::size_t BlockTree::k_min() const {
  return *std::min_element(branching_.begin(), branching_.end());
}

std::size_t BlockTree::level_size(std::size_t level) const {
  return leaves_ / span_.at(level);
}

NodeId BlockTree::node(std::size_t level, std::size_t index) const {
  if (level > height() || index >= level_size(level)) {
    throw Error(ErrorCode::InvalidArgument, "tree node out of range");
  }
  return offsets_[level] + index;
}

std::size_t BlockTree::level_of(NodeId v) const {
  if (v >= node_count()) throw Error(ErrorCode::InvalidArgument, "unknown tree node");
  auto it = std::upper_bound(offsets_.begin(), offsets_.end(), v);
  return static_cast<std::size_t>(it - offsets_.begin()) - 1;
}

std::size_t BlockTree::index_of(NodeId v) const { return v - offsets_[level_of(v)]; }

std::vector<NodeId> BlockTree::children(NodeId v) const {
  std::size_t level = level_of(v);
  if (level == 0) return {};
  std::size_t k = branching_[level - 1];
  std::size_t base = index_of(v) * k;
  std::vector<NodeId> out;
  for (std::size_t i = 0; i < k; ++i) out.push_back(node(level - 1, base + i));
  return out;
}

std::vector<std::size_t> BlockTree::leaves_of(NodeId v) const {
  std::size_t level = level_of(v);
  std::size_t first = index_of(v) * span_[level];
  std::vector<std::size_t> out(span_[level]);
  std::iota(out.begin(), out.end(), first);
  return out;
}

std::vector<std::size_t> BlockTree::leaves_under(const std::vector<NodeId> &nodes) const {
  std::vector<std::size_t> out;
  for (auto v : nodes) {
    auto l = leaves_of(v);
    out.insert(out.end(), l.begin(), l.end());
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

Block BlockTree::block_of_children(NodeId parent) const {
  std::size_t level = level_of(parent);
  if (level == 0) throw Error(ErrorCode::InvalidBlock, "leaves have no children");
  return Block{parent, level - 1, children(parent)};
}

std::vector<Block> BlockTree::blocks() const {
  std::vector<Block> out;
  for (std::size_t level = 1; level <= height(); ++level) {
    for (std::size_t i = 0; i < level_size(level); ++i) {
      out.push_back(block_of_children(node(level, i)));
    }
  }
  return out;
}

bool BlockTree::is_block(const Block &b) const {
  if (b.parent >= node_count() || level_of(b.parent) == 0) return false;
  return block_of_children(b.parent) == b;
}

Permutation BlockTree::subtree_swap(NodeId a, NodeId b) const {
  if (level_of(a) != level_of(b)) {
    throw Error(ErrorCode::InvalidArgument, "subtree swap across levels");
  }
  auto la = leaves_of(a), lb = leaves_of(b);
  Permutation p(leaves_);
  std::vector<std::size_t> img = p.images();
  for (std::size_t i = 0; i < la.size(); ++i) {
    img[la[i]] = lb[i];
    img[lb[i]] = la[i];
  }
  return Permutation(std::move(img));
}

BlockTree parse_blocks(const std::string &text) {
  std::vector<std::size_t> ks;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      std::size_t used = 0;
      auto v = std::stoul(item, &used);
      if (used != item.size()) throw std::invalid_argument(item);
      ks.push_back(v);
    } catch (const std::exception &) {
      throw Error(ErrorCode::InvalidArgument, "bad --blocks entry '" + item + "'");
    }
  }
  return BlockTree(std::move(ks));
}

GeneratorSet sym_generators(std::size_t n) {
  GeneratorSet gs{n, {}, GroupKind::FullSymmetric};
  if (n < 2) return gs;
  gs.generators.push_back(Permutation::transposition(n, 0, 1));
  if (n > 2) {
    std::vector<std::size_t> cyc(n);
    for (std::size_t i = 0; i < n; ++i) cyc[i] = (i + 1) % n;
    gs.generators.emplace_back(std::move(cyc));
  }
  return gs;
}

GeneratorSet tree_aut_generators(const BlockTree &t) {
  GeneratorSet gs{t.leaf_count(), {}, GroupKind::TreeAutomorphism};
  for (const auto &b : t.blocks()) {
    for (std::size_t i = 0; i + 1 < b.members.size(); ++i) {
      gs.generators.push_back(t.subtree_swap(b.members[i], b.members[i + 1]));
    }
  }
  return gs;
}

GeneratorSet pointwise_stabilizer_generators(std::size_t n,
                                             const std::vector<std::size_t> &fixed) {
  std::vector<std::uint8_t> in_s(n, 0);
  for (auto s : fixed) {
    if (s >= n) throw Error(ErrorCode::InvalidArgument, "fixed point out of range");
    in_s[s] = 1;
  }
  GeneratorSet gs{n, {}, GroupKind::PointwiseStabilizer};
  std::size_t prev = n;
  for (std::size_t i = 0; i < n; ++i) {
    if (in_s[i]) continue;
    if (prev != n) gs.generators.push_back(Permutation::transposition(n, prev, i));
    prev = i;
  }
  return gs;
}

GeneratorSet block_sibling_generators(const BlockTree &t, const Block &b,
                                      const std::vector<NodeId> &fixed) {
  if (!t.is_block(b)) throw Error(ErrorCode::InvalidBlock, "not a sibling block of the tree");
  for (auto v : fixed) {
    if (std::find(b.members.begin(), b.members.end(), v) == b.members.end()) {
      throw Error(ErrorCode::InvalidArgument, "fixed node outside the block");
    }
  }
  GeneratorSet gs{t.leaf_count(), {}, GroupKind::Custom};
  std::vector<NodeId> free;
  for (auto v : b.members) {
    if (std::find(fixed.begin(), fixed.end(), v) == fixed.end()) free.push_back(v);
  }
  for (std::size_t i = 0; i + 1 < free.size(); ++i) {
    gs.generators.push_back(t.subtree_swap(free[i], free[i + 1]));
  }
  return gs;
}

std::set<std::size_t> point_orbit(std::size_t point, const GeneratorSet &gens) {
  return orbit(point, gens.generators,
               [](const Permutation &g, std::size_t x) { return g(x); });
}

std::vector<std::size_t> apply_to_set(const Permutation &p, const std::vector<std::size_t> &s) {
  std::vector<std::size_t> out;
  out.reserve(s.size());
  for (auto x : s) out.push_back(p(x));
  std::sort(out.begin(), out.end());
  return out;
}

std::set<std::vector<std::size_t>> set_orbit(const std::vector<std::size_t> &points,
                                             const GeneratorSet &gens, std::size_t cap) {
  auto start = points;
  std::sort(start.begin(), start.end());
  return orbit(start, gens.generators, apply_to_set, cap);
}

std::vector<Permutation> enumerate_group(const GeneratorSet &gens, std::size_t cap) {
  auto elems = orbit(Permutation(gens.degree), gens.generators,
                     [](const Permutation &g, const Permutation &x) { return g * x; }, cap);
  return {elems.begin(), elems.end()};
}

}  // namespace modcirc
