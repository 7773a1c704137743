#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "modcirc/analysis.hpp"
#include "modcirc/construct.hpp"
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

ZpqExpression single(std::uint64_t c) { return {2, 3, 2, {{1, {1, 1}, c}}, false}; }

std::size_t zeros(const Assignment &a) {
  return static_cast<std::size_t>(std::count(a.begin(), a.end(), 0));
}

}  // namespace

TEST(Zpq, EvaluationExamples) {
  EXPECT_EQ(eval_zpq(single(0), Assignment{1, 1}), 0u);
  EXPECT_EQ(eval_zpq(single(0), Assignment{1, 0}), 1u);
  EXPECT_EQ(eval_zpq(single(1), Assignment{1, 0}), 0u);
  EXPECT_EQ(code_of([] { eval_zpq(single(0), Assignment{1}); }), ErrorCode::InvalidAssignment);
}

TEST(Zpq, CompileSingleTerm) {
  auto oc = compile_zpq(single(0), 6);
  ASSERT_EQ(oc.outputs.size(), 1u);
  const Gate &g = oc.body.gate(oc.outputs[0].gate);
  EXPECT_EQ(g.accept, (std::vector<std::uint64_t>{3}));
  EXPECT_EQ(g.children, (std::vector<Edge>{{0, 3}, {1, 3}}));
  EXPECT_EQ(oc.output_modulus, 3u);
  EXPECT_EQ(depth(oc), 2u);
}

TEST(Zpq, CompileEmptyExpression) {
  auto oc = compile_zpq(ZpqExpression{2, 3, 3, {}, false}, 6);
  EXPECT_EQ(oc.body.gate_count(), 3u);
  EXPECT_TRUE(oc.outputs.empty());
  EXPECT_EQ(evaluate_open(oc, Assignment{1, 0, 1}), 0u);
}

TEST(Zpq, CompileRejectsIncompatibleModulus) {
  EXPECT_EQ(code_of([] { compile_zpq(single(0), 10); }), ErrorCode::IncompatibleModulus);
  EXPECT_EQ(code_of([] { compile_zpq(ZpqExpression{4, 3, 1, {}, false}, 12); }),
            ErrorCode::InvalidArgument);
}

TEST(Zpq, AggregationSumsAndDropsZeros) {
  ZpqExpression e{3, 2, 2, {{1, {1, 2}, 0}, {1, {4, 5}, 3}, {1, {0, 0}, 2}, {1, {0, 0}, 0}}, false};
  auto a = aggregate(e);
  ASSERT_EQ(a.terms.size(), 1u);
  EXPECT_EQ(a.terms[0].beta, (std::vector<std::uint64_t>{0, 0}));
  EXPECT_EQ(a.terms[0].c, 1u);
}

TEST(Zpq, CompiledCircuitAgreesWithExpression) {
  std::mt19937_64 rng(2024);
  for (int i = 0; i < 150; ++i) {
    const std::uint64_t m = std::array<std::uint64_t, 4>{6, 10, 15, 30}[i % 4];
    auto e = random_zpq_expression(rng, m, 7);
    auto oc = compile_zpq(e, m);
    EXPECT_EQ(depth(oc), oc.outputs.empty() ? 0u : 2u);
    for (std::uint64_t x = 0; x < (std::uint64_t{1} << e.arity); ++x) {
      auto a = assignment_from_index(x, e.arity);
      ASSERT_EQ(evaluate_open(oc, a), eval_zpq(e, a)) << "expression " << i;
    }
  }
}

TEST(Tq, SpecExamples) {
  auto e = build_tq(3, 2, 1, 2);
  EXPECT_EQ(eval_zpq(e, Assignment{1, 1}), 0u);
  EXPECT_NE(eval_zpq(e, Assignment{0, 1}), 0u);
  EXPECT_NE(eval_zpq(e, Assignment{1, 0}), 0u);
  EXPECT_EQ(eval_zpq(e, Assignment{0, 0}), 0u);
}

TEST(Tq, StrictDivisibilityTestExhaustive) {
  struct Case {
    std::uint64_t p, q;
    unsigned nu;
  };
  for (Case k : {Case{2, 3, 1}, Case{3, 2, 1}, Case{3, 2, 2}, Case{2, 3, 2}, Case{5, 2, 2},
                 Case{2, 5, 1}, Case{5, 3, 1}, Case{3, 5, 1}}) {
    for (std::size_t n = 1; n <= 10; ++n) {
      const auto sym = build_tq_orbits(k.p, k.q, k.nu, n);
      const auto e = sym.expand();
      EXPECT_TRUE(has_symmetric_coefficients(e));
      std::uint64_t qnu = 1;
      for (unsigned i = 0; i < k.nu; ++i) qnu *= k.q;
      for (std::uint64_t x = 0; x < (std::uint64_t{1} << n); ++x) {
        auto a = assignment_from_index(x, n);
        const auto want = zeros(a) % qnu == 0 ? 0u : 1u;
        ASSERT_EQ(eval_zpq(e, a), want)
            << "p=" << k.p << " q=" << k.q << " nu=" << k.nu << " n=" << n << " x=" << x;
      }
    }
  }
}

TEST(Tq, TermCountWithinExponentialEnvelope) {
  // Fitted-constant check: log2(terms) <= K * q^nu * log2(n + 1) with one K.
  double worst = 0;
  for (std::size_t n = 2; n <= 12; ++n) {
    for (unsigned nu = 1; nu <= 2; ++nu) {
      const auto sym = build_tq_orbits(3, 2, nu, n);
      const double terms = sym.term_count().convert_to<double>();
      if (terms < 2) continue;
      worst = std::max(worst, std::log2(terms) / ((1u << nu) * std::log2(n + 1.0)));
    }
  }
  EXPECT_GT(worst, 0);
  EXPECT_LT(worst, 2.0);
}

TEST(Tq, RejectsBadPrimes) {
  EXPECT_EQ(code_of([] { build_tq(2, 2, 1, 3); }), ErrorCode::InvalidArgument);
  EXPECT_EQ(code_of([] { build_tq(4, 3, 1, 3); }), ErrorCode::InvalidArgument);
  EXPECT_EQ(code_of([] { build_tq(2, 3, 0, 3); }), ErrorCode::InvalidArgument);
}

TEST(AndDepth2, NuSelectionExamples) {
  auto four = plan_and_depth2(6, 4);
  EXPECT_EQ(four.parts[0].nu, 2u);
  EXPECT_EQ(four.parts[1].nu, 1u);
  auto nine = plan_and_depth2(6, 9);
  EXPECT_EQ(nine.parts[0].nu, 2u);
  EXPECT_EQ(nine.parts[1].nu, 2u);
  EXPECT_EQ(four.parts[0].aux_prime, 3u);
  EXPECT_EQ(four.parts[1].aux_prime, 2u);
}

TEST(AndDepth2, NuSelectionBracketsRoot) {
  for (std::uint64_t m : {6u, 10u, 30u}) {
    const auto primes = factorize(m).prime_list();
    const unsigned r = static_cast<unsigned>(primes.size());
    for (std::uint64_t n = 1; n <= 300; ++n) {
      BigInt product = 1;
      for (auto p : primes) {
        const unsigned nu = choose_nu(p, r, n);
        EXPECT_LE(boost::multiprecision::pow(BigInt(p), r * (nu - 1)), n);
        EXPECT_GT(boost::multiprecision::pow(BigInt(p), r * nu), n);
        product *= boost::multiprecision::pow(BigInt(p), nu);
      }
      EXPECT_GT(product, n);
    }
  }
}

TEST(AndDepth2, ComputesAndForSmallArities) {
  for (std::size_t n = 2; n <= 12; ++n) {
    const auto c = build_and_depth2(6, n);
    EXPECT_EQ(truth_table(c), oracle::and_table(n)) << n;
    EXPECT_EQ(depth(c), 2u);
    EXPECT_EQ(c.gate(*c.root()).accept, (std::vector<std::uint64_t>{0}));
  }
}

TEST(AndDepth2, NaiveEvaluationAgrees) {
  const auto c = build_and_depth2(10, 7);
  EXPECT_EQ(oracle::truth_table_naive(c), oracle::and_table(7));
}

TEST(AndDepth2, PlannedSizeEqualsBuiltSize) {
  for (std::uint64_t m : {6u, 10u, 12u, 15u, 30u}) {
    for (std::size_t n = 1; n <= 10; ++n) {
      const auto plan = plan_and_depth2(m, n);
      const auto c = build_and_depth2(m, n);
      EXPECT_EQ(plan.planned_size(), BigInt(size(c))) << m << " " << n;
      EXPECT_EQ(plan.planned_gate_count(), BigInt(c.gate_count())) << m << " " << n;
    }
  }
}

TEST(AndDepth2, PrimePowerModulusIsUnsupported) {
  EXPECT_EQ(code_of([] { build_and_depth2(8, 4); }), ErrorCode::UnsupportedModulus);
  EXPECT_EQ(code_of([] { build_and_depth2(9, 4); }), ErrorCode::UnsupportedModulus);
}

TEST(AndNested, SpecBranchings) {
  for (const auto &k : std::vector<std::vector<std::size_t>>{{3, 3}, {2, 2, 2}, {4, 2}, {2, 4}}) {
    BlockTree t(k);
    const auto c = build_and_nested(6, t);
    EXPECT_EQ(truth_table(c), oracle::and_table(t.leaf_count()));
    EXPECT_EQ(depth(c), 2 * t.height());
    EXPECT_TRUE(is_symmetric(c, tree_aut_generators(t)));
  }
}

TEST(AndNested, SingleLevelIsTheDepth2Circuit) {
  EXPECT_EQ(build_and_nested(6, BlockTree({5})), build_and_depth2(6, 5));
}
