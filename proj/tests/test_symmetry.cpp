#include <gtest/gtest.h>

#include <random>

#include "modcirc/analysis.hpp"
#include "modcirc/construct.hpp"
#include "modcirc/symmetry.hpp"
#include "oracles.hpp"

using namespace modcirc;

namespace {

// A circuit with two structurally identical middle gates: symmetric under
// Sym_2 but with a non-trivial input-fixing automorphism.
Circuit duplicated_gates() {
  auto c = Circuit::with_inputs(6, 2);
  GateId a = c.add_mod({0}, {{0, 1}, {1, 1}});
  GateId b = c.add_mod({0}, {{0, 1}, {1, 1}});
  c.set_root(c.add_mod({2}, {{a, 1}, {b, 1}}));
  return c;
}

// Threshold-style circuit, not symmetric under swapping x1 and x2.
Circuit lopsided() {
  auto c = Circuit::with_inputs(6, 3);
  GateId a = c.add_mod({1}, {{0, 1}});
  c.set_root(c.add_mod({1}, {{a, 1}, {1, 1}, {2, 1}}));
  return c;
}

// Brute force: the minimum-cardinality sets S whose full pointwise stabilizer
// fixes g.
std::vector<std::vector<std::size_t>> minimal_supports_by_definition(SymmetryContext &ctx,
                                                                     GateId g) {
  const std::size_t n = ctx.circuit().arity();
  std::vector<std::vector<std::size_t>> supports;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    std::vector<std::size_t> s;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask >> i & 1u) s.push_back(i);
    }
    bool fixes = true;
    for (const auto &images : oracle::stabilizer(n, s)) {
      Permutation pi(images);
      const auto &sigma = ctx.automorphism(pi);
      EXPECT_TRUE(is_automorphism(ctx.circuit(), sigma, pi));
      if (sigma(g) != g) {
        fixes = false;
        break;
      }
    }
    if (fixes) supports.push_back(s);
  }
  std::size_t smallest = n;
  for (const auto &s : supports) smallest = std::min(smallest, s.size());
  std::vector<std::vector<std::size_t>> minimal;
  for (const auto &s : supports) {
    if (s.size() == smallest) minimal.push_back(s);
  }
  std::sort(minimal.begin(), minimal.end());
  return minimal;
}

}  // namespace

TEST(Symmetry, AndCircuitIsSymmetricAndRigid) {
  for (std::size_t n : {3u, 5u, 8u}) {
    const auto c = build_and_depth2(6, n);
    EXPECT_TRUE(is_symmetric(c, sym_generators(n)));
    EXPECT_TRUE(has_unique_gate_keys(c));
    EXPECT_TRUE(is_rigid(c));
  }
}

TEST(Symmetry, ExtensionsAreVerifiedAutomorphisms) {
  const auto c = build_and_depth2(6, 6);
  std::mt19937_64 rng(3);
  for (int i = 0; i < 10; ++i) {
    auto pi = random_permutation(rng, 6);
    auto fast = SymmetryContext(c).extension(pi);
    auto slow = extend_to_automorphism(c, pi);
    ASSERT_TRUE(fast && slow);
    EXPECT_TRUE(is_automorphism(c, *fast, pi));
    EXPECT_EQ(*fast, *slow);  // rigid circuits have one extension
  }
}

TEST(Symmetry, NonExtendablePermutation) {
  const auto c = lopsided();
  EXPECT_FALSE(extend_to_automorphism(c, Permutation::transposition(3, 0, 1)).has_value());
  EXPECT_TRUE(extend_to_automorphism(c, Permutation::transposition(3, 1, 2)).has_value());
  EXPECT_FALSE(is_symmetric(c, sym_generators(3)));
  SymmetryContext ctx(c);
  EXPECT_THROW(ctx.automorphism(Permutation::transposition(3, 0, 1)), Error);
}

TEST(Symmetry, RefinementHandlesDuplicateGates) {
  const auto c = duplicated_gates();
  EXPECT_FALSE(has_unique_gate_keys(c));
  auto sigma = extend_to_automorphism(c, Permutation::transposition(2, 0, 1));
  ASSERT_TRUE(sigma.has_value());
  EXPECT_TRUE(is_automorphism(c, *sigma, Permutation::transposition(2, 0, 1)));
  EXPECT_TRUE(is_symmetric(c, sym_generators(2)));
  EXPECT_FALSE(is_rigid(c));
  EXPECT_THROW(SymmetryContext{c}, Error);
}

TEST(Symmetry, RigidifyMergesAndPreservesFunction) {
  const auto c = duplicated_gates();
  const auto r = rigidify(c);
  EXPECT_TRUE(is_rigid(r));
  EXPECT_EQ(truth_table(r), truth_table(c));
  EXPECT_LE(size(r), size(c));
  EXPECT_EQ(r.gate_count(), 4u);
  EXPECT_EQ(r.gate(*r.root()).children, (std::vector<Edge>{{2, 2}}));
  std::string warning;
  ensure_rigid(c, &warning);
  EXPECT_FALSE(warning.empty());
}

TEST(Symmetry, RigidityFoundBySearchOnSharedKeysFreeCircuit) {
  // Distinct keys everywhere except two leaves' parents that differ only by
  // their (distinct) children: still rigid.
  auto c = Circuit::with_inputs(6, 2);
  GateId a = c.add_mod({1}, {{0, 1}});
  GateId b = c.add_mod({1}, {{1, 1}});
  c.set_root(c.add_mod({0}, {{a, 1}, {b, 1}}));
  EXPECT_TRUE(is_rigid(c));
}

TEST(Symmetry, GreedySupportMatchesDefinition) {
  std::mt19937_64 rng(11);
  RandomCircuitOptions opts;
  opts.max_arity = 6;
  for (int i = 0; i < 6; ++i) {
    const auto c = random_symmetric_circuit(rng, opts);
    SymmetryContext ctx(c);
    for (GateId g = 0; g < c.gate_count(); ++g) {
      const auto minimal = minimal_supports_by_definition(ctx, g);
      const auto got = ctx.minimal_support(g);
      ASSERT_EQ(minimal.size(), 1u) << "gate " << g;
      EXPECT_TRUE(got.unique);
      EXPECT_EQ(got.support, minimal.front()) << "gate " << g;
    }
  }
}

TEST(Symmetry, InputAndTopSupports) {
  const auto c = build_and_depth2(6, 5);
  SymmetryContext ctx(c);
  EXPECT_EQ(ctx.minimal_support(c.input_gate(3)).support, (std::vector<std::size_t>{3}));
  EXPECT_TRUE(ctx.minimal_support(*c.root()).support.empty());
}

TEST(Symmetry, NonUniqueMinimalSupportIsReportedWithAlternatives) {
  // A gate reading exactly half of the variables has two minimal supports.
  SymmetricBuilder sb(6, sym_generators(4));
  auto orbit = sb.add_orbit({0}, {{0, 1}, {1, 1}});
  std::vector<Edge> top;
  for (auto g : orbit) top.push_back({g, 1});
  GateId root = sb.add_orbit({1}, top).front();
  const auto c = sb.finish(root);
  SymmetryContext ctx(c);
  const auto r = ctx.minimal_support(orbit.front());
  EXPECT_FALSE(r.unique);
  EXPECT_EQ(r.method, SupportMethod::ExhaustiveSubsets);
  ASSERT_EQ(r.alternatives.size(), 2u);
  EXPECT_EQ(r.alternatives[0], (std::vector<std::size_t>{0, 1}));
  EXPECT_EQ(r.alternatives[1], (std::vector<std::size_t>{2, 3}));
  EXPECT_EQ(r.support, r.alternatives[0]);
  EXPECT_EQ(minimal_supports_by_definition(ctx, orbit.front()), r.alternatives);
}

TEST(Symmetry, OrbitsOfAndCircuit) {
  const auto c = build_and_depth2(6, 4);
  SymmetryContext ctx(c);
  const auto gens = sym_generators(4);
  EXPECT_EQ(ctx.gate_orbit(c.input_gate(0), gens).size(), 4u);
  EXPECT_EQ(ctx.gate_orbit(*c.root(), gens).size(), 1u);
  auto part = ctx.orbit_partition(gens);
  for (GateId g = 0; g < c.gate_count(); ++g) {
    EXPECT_EQ(ctx.gate_orbit(g, gens).size(),
              static_cast<std::size_t>(std::count(part.begin(), part.end(), part[g])));
  }
}

TEST(Symmetry, BlockwiseSupportsOfNestedAnd) {
  BlockTree t({3, 2});
  const auto c = build_and_nested(6, t);
  SymmetryContext ctx(c);
  EXPECT_TRUE(ctx.is_symmetric(tree_aut_generators(t)));
  EXPECT_FALSE(ctx.is_symmetric(sym_generators(6)));
  const auto top = t.block_of_children(t.root());
  EXPECT_TRUE(ctx.blockwise_support(*c.root(), t, top).support.empty());
  const auto leaf_block = t.block_of_children(t.node(1, 0));
  const auto r = ctx.blockwise_support(c.input_gate(1), t, leaf_block);
  EXPECT_EQ(r.support, (std::vector<NodeId>{1}));
  EXPECT_TRUE(r.unique);
  // In a block of two siblings, fixing either one fixes both.
  BlockTree pairs({2, 2});
  const auto d = build_and_nested(6, pairs);
  SymmetryContext dctx(d);
  const auto two = dctx.blockwise_support(d.input_gate(1), pairs,
                                          pairs.block_of_children(pairs.node(1, 0)));
  EXPECT_FALSE(two.unique);
  EXPECT_EQ(two.alternatives, (std::vector<std::vector<std::size_t>>{{0}, {1}}));
  EXPECT_THROW(ctx.blockwise_support(0, t, Block{t.root(), 0, {0, 1}}), Error);
}
