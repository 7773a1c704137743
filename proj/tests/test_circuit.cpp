#include <gtest/gtest.h>

#include <cstdlib>

#include "modcirc/circuit.hpp"
#include "modcirc/error.hpp"
#include "oracles.hpp"

using namespace modcirc;

namespace {

ErrorCode code_of(const std::function<void()> &fn) {
  try {
    fn();
  } catch (const Error &e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::Undefined;
}

}  // namespace

TEST(Circuit, ModGateSumsWithMultiplicity) {
  auto c = Circuit::with_inputs(6, 2);
  GateId g = c.add_mod({0}, {{0, 3}, {1, 3}});
  c.set_root(g);
  EXPECT_EQ(evaluate(c, Assignment{0, 0}), 1);
  EXPECT_EQ(evaluate(c, Assignment{1, 0}), 0);
  EXPECT_EQ(evaluate(c, Assignment{0, 1}), 0);
  EXPECT_EQ(evaluate(c, Assignment{1, 1}), 1);
}

TEST(Circuit, SizeCountsMultiplicitiesAndDepthCountsEdges) {
  auto c = Circuit::with_inputs(6, 3);
  GateId a = c.add_mod({1}, {{0, 2}, {1, 1}});
  GateId b = c.add_mod({0, 3}, {{a, 4}, {2, 1}});
  c.set_root(b);
  EXPECT_EQ(size(c), 5u + 2 + 1 + 4 + 1);
  EXPECT_EQ(depth(c), 2u);

  OpenCircuit oc{c, {{a, 2}, {b, 1}}, 3};
  oc.body.clear_root();
  EXPECT_EQ(depth(oc), 3u);
  EXPECT_EQ(size(oc), size(c) + 3);
  EXPECT_EQ(depth(OpenCircuit{Circuit::with_inputs(6, 2), {}, 3}), 0u);
}

TEST(Circuit, OpenCircuitSumsOutputsModQ) {
  auto body = Circuit::with_inputs(6, 1);
  GateId yes = body.add_mod({1}, {{0, 1}});
  GateId no = body.add_mod({0}, {{0, 1}});
  OpenCircuit oc{body, {{yes, 2}, {no, 1}}, 3};
  EXPECT_EQ(evaluate_open(oc, Assignment{1}), 2u);
  EXPECT_EQ(evaluate_open(oc, Assignment{0}), 1u);
}

TEST(Circuit, StructuralErrors) {
  EXPECT_EQ(code_of([] { Circuit(1, 2); }), ErrorCode::InvalidModulus);
  auto c = Circuit::with_inputs(6, 2);
  EXPECT_EQ(code_of([&] { c.add_mod({6}, {{0, 1}}); }), ErrorCode::MalformedCircuit);
  EXPECT_EQ(code_of([&] { c.add_mod({0}, {{0, 0}}); }), ErrorCode::MalformedCircuit);
  EXPECT_EQ(code_of([&] { c.add_mod({0}, {{0, 1}, {0, 2}}); }), ErrorCode::MalformedCircuit);
  EXPECT_EQ(code_of([&] { c.add_input(1); }), ErrorCode::MalformedCircuit);
  EXPECT_EQ(code_of([&] { c.root_or_throw(); }), ErrorCode::MalformedCircuit);

  GateId a = c.add_mod({0}, {{0, 1}});
  GateId b = c.add_mod({0}, {{a, 1}});
  c.mutable_gate(a).children.push_back({b, 1});
  EXPECT_EQ(code_of([&] { c.validate(); }), ErrorCode::MalformedCircuit);
}

TEST(Circuit, AssignmentLengthIsChecked) {
  auto c = Circuit::with_inputs(6, 2);
  c.set_root(c.add_mod({0}, {{0, 1}}));
  EXPECT_EQ(code_of([&] { evaluate(c, Assignment{1}); }), ErrorCode::InvalidAssignment);
}

TEST(Circuit, AssignmentOrderIsLexicographic) {
  EXPECT_EQ(assignment_from_index(1, 3), (Assignment{0, 0, 1}));
  EXPECT_EQ(assignment_from_index(4, 3), (Assignment{1, 0, 0}));
}

TEST(Circuit, TruthTableRespectsCap) {
  auto c = Circuit::with_inputs(6, 5);
  c.set_root(c.add_mod({0}, {{0, 1}}));
  EXPECT_EQ(truth_table(c).size(), 32u);
  EXPECT_EQ(code_of([&] { truth_table(c, 4); }), ErrorCode::TooLarge);
}

TEST(Circuit, EnvironmentOverridesExhaustiveCap) {
  ::setenv("MODCIRC_MAX_N", "7", 1);
  EXPECT_EQ(default_exhaustive_cap(), 7u);
  ::unsetenv("MODCIRC_MAX_N");
  EXPECT_EQ(default_exhaustive_cap(), 20u);
}

TEST(Circuit, EvaluatorAgreesWithNaiveEvaluation) {
  auto c = Circuit::with_inputs(6, 4);
  GateId a = c.add_mod({1, 2}, {{0, 1}, {1, 5}, {3, 2}});
  GateId b = c.add_mod({0}, {{a, 3}, {2, 1}});
  GateId d = c.add_mod({3, 4, 5}, {{a, 1}, {b, 2}, {0, 7}});
  c.set_root(d);
  EXPECT_EQ(truth_table(c), oracle::truth_table_naive(c));
}

TEST(Circuit, CanonicalEdgesMergeAndReduce) {
  auto e = canonical_edges({{3, 4}, {1, 2}, {3, 5}, {2, 6}}, 6);
  EXPECT_EQ(e, (std::vector<Edge>{{1, 2}, {3, 3}}));
}

TEST(Circuit, NormalizingMultiplicitiesPreservesFunction) {
  auto c = Circuit::with_inputs(6, 3);
  GateId a = c.add_mod({0, 1}, {{0, 7}, {1, 12}, {2, 3}});
  c.set_root(c.add_mod({1}, {{a, 13}, {2, 1}}));
  auto n = normalize_multiplicities(c);
  EXPECT_EQ(truth_table(n), truth_table(c));
  EXPECT_LT(size(n), size(c));
}

TEST(Circuit, PruneDropsDeadGatesAndKeepsInputs) {
  auto c = Circuit::with_inputs(6, 3);
  c.add_mod({0}, {{0, 1}});
  GateId live = c.add_mod({1}, {{1, 1}});
  c.set_root(c.add_mod({1}, {{live, 1}}));
  auto p = prune(c);
  EXPECT_EQ(p.gate_count(), 5u);
  EXPECT_EQ(truth_table(p), truth_table(c));
}

TEST(Circuit, BuilderHashConses) {
  CircuitBuilder b(6, 2);
  GateId x = b.mod_gate({1, 0}, {{1, 2}, {0, 1}});
  GateId y = b.mod_gate({0, 1}, {{0, 1}, {1, 2}});
  GateId z = b.mod_gate({0, 1}, {{0, 7}, {1, 2}});
  EXPECT_EQ(x, y);
  EXPECT_EQ(x, z);
  EXPECT_NE(x, b.mod_gate({0}, {{0, 1}, {1, 2}}));
  EXPECT_EQ(b.gate_count(), 4u);
}
