#include "modcirc/analysis.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <numeric>
#include <set>

#include "modcirc/error.hpp"

namespace modcirc {

namespace {

std::uint64_t uniform(std::mt19937_64 &rng, std::uint64_t lo, std::uint64_t hi) {
  return std::uniform_int_distribution<std::uint64_t>(lo, hi)(rng);
}

std::uint64_t saturating(const BigInt &v) {
  if (v > std::numeric_limits<std::uint64_t>::max()) {
    return std::numeric_limits<std::uint64_t>::max();
  }
  return v.convert_to<std::uint64_t>();
}

// m * s^r with r the number of distinct primes of m.
std::uint64_t root_bound(std::uint64_t m, std::size_t s) {
  const auto r = static_cast<unsigned>(factorize(m).distinct_primes());
  return saturating(BigInt(m) * boost::multiprecision::pow(BigInt(s), r));
}

void finish_report(PeriodReport &report) {
  report.satisfied = report.minimal_period ? *report.minimal_period <= report.bound
                                           : report.table_length <= report.bound;
}

void require_sym(SymmetryContext &ctx) {
  if (!ctx.is_symmetric(sym_generators(ctx.circuit().arity()))) {
    throw Error(ErrorCode::PreconditionFailed, "circuit is not Sym_n-symmetric");
  }
}

// Orbit of g under gens together with a permutation carrying g to each member.
std::map<GateId, Permutation> transport(SymmetryContext &ctx, GateId g, const GeneratorSet &gens) {
  std::map<GateId, Permutation> reach;
  reach.emplace(g, Permutation(gens.degree));
  std::vector<GateId> frontier{g};
  while (!frontier.empty()) {
    GateId cur = frontier.back();
    frontier.pop_back();
    for (const auto &s : gens.generators) {
      GateId next = ctx.act(s, cur);
      if (reach.count(next)) continue;
      reach.emplace(next, s * reach.at(cur));
      frontier.push_back(next);
    }
  }
  return reach;
}

PeriodReport gate_report_with(const Evaluator &ev, SymmetryContext &ctx, GateId g,
                              const SupportReport &support, std::size_t max_support,
                              std::size_t support_cap) {
  const Circuit &c = ctx.circuit();
  const std::size_t n = c.arity();
  const auto &s = support.support;
  if (s.size() > support_cap) {
    throw Error(ErrorCode::TooLarge, "support of gate " + std::to_string(g) + " has " +
                                         std::to_string(s.size()) + " > " +
                                         std::to_string(support_cap) + " elements");
  }
  if (n - s.size() < 1) {
    throw Error(ErrorCode::PreconditionFailed, "gate support covers every variable");
  }
  std::vector<std::size_t> free;
  for (std::size_t i = 0; i < n; ++i) {
    if (!std::binary_search(s.begin(), s.end(), i)) free.push_back(i);
  }

  std::vector<std::vector<std::uint8_t>> tables;
  for (std::uint64_t alpha = 0; alpha < (std::uint64_t{1} << s.size()); ++alpha) {
    std::vector<std::uint8_t> table;
    for (std::size_t ones = 0; ones <= free.size(); ++ones) {
      Assignment a(n, 0);
      for (std::size_t i = 0; i < s.size(); ++i) a[s[i]] = (alpha >> i) & 1u;
      for (std::size_t i = 0; i < ones; ++i) a[free[i]] = 1;
      table.push_back(ev.evaluate_all(a)[g]);
    }
    tables.push_back(std::move(table));
  }

  PeriodReport report;
  report.subject = "gate " + std::to_string(g);
  report.table_length = free.size() + 1;
  report.bound = gate_period_bound(c.modulus(), max_support);
  bool vacuous = false;
  std::uint64_t worst = 0;
  for (const auto &t : tables) {
    auto p = minimal_period(t);
    if (!p) vacuous = true;
    else worst = std::max(worst, *p);
  }
  if (!vacuous) report.minimal_period = worst;
  finish_report(report);

  report.structured = false;
  for (auto l : structured_periods(c.modulus(), max_support)) {
    bool all = std::all_of(tables.begin(), tables.end(),
                           [&](const std::vector<std::uint8_t> &t) { return has_period(t, l); });
    if (all) {
      report.structured = true;
      report.structured_witness = l;
      break;
    }
  }
  return report;
}

}  // namespace

std::optional<std::uint64_t> minimal_period(std::span<const std::uint8_t> table) {
  for (std::uint64_t l = 1; l < table.size(); ++l) {
    if (has_period(table, l)) return l;
  }
  return std::nullopt;
}

bool has_period(std::span<const std::uint8_t> t, std::uint64_t l) {
  for (std::uint64_t x = 0; x + l < t.size(); ++x) {
    if (t[x] != t[x + l]) return false;
  }
  return true;
}

std::optional<std::uint64_t> common_period(const std::vector<std::vector<std::uint8_t>> &tables) {
  if (tables.empty()) return std::nullopt;
  const std::size_t len = tables.front().size();
  for (std::uint64_t l = 1; l < len; ++l) {
    bool all = std::all_of(tables.begin(), tables.end(),
                           [&](const std::vector<std::uint8_t> &t) { return has_period(t, l); });
    if (all) return l;
  }
  return std::nullopt;
}

std::vector<std::uint8_t> weight_table_unchecked(const Circuit &c) {
  Evaluator ev(c);
  std::vector<std::uint8_t> table;
  for (std::size_t w = 0; w <= c.arity(); ++w) {
    Assignment a(c.arity(), 0);
    std::fill(a.begin(), a.begin() + static_cast<std::ptrdiff_t>(w), 1);
    table.push_back(ev.evaluate(a));
  }
  return table;
}

std::vector<std::uint8_t> weight_table(const Circuit &c) {
  if (!is_symmetric(c, sym_generators(c.arity()))) {
    throw Error(ErrorCode::PreconditionFailed, "weight table needs a Sym_n-symmetric circuit");
  }
  return weight_table_unchecked(c);
}

SupportSummary compute_supports(SymmetryContext &ctx, std::size_t exhaustive_cap) {
  const Circuit &c = ctx.circuit();
  const auto gens = sym_generators(c.arity());
  SupportSummary out;
  out.gates.resize(c.gate_count());
  std::vector<std::uint8_t> done(c.gate_count(), 0);
  for (GateId g = 0; g < c.gate_count(); ++g) {
    if (done[g]) continue;
    const SupportReport rep = ctx.minimal_support(g, exhaustive_cap);
    for (const auto &[h, pi] : transport(ctx, g, gens)) {
      SupportReport moved = rep;
      moved.gate = h;
      moved.support = apply_to_set(pi, rep.support);
      for (auto &alt : moved.alternatives) alt = apply_to_set(pi, alt);
      std::sort(moved.alternatives.begin(), moved.alternatives.end(),
                [](const auto &a, const auto &b) {
                  return a.size() != b.size() ? a.size() < b.size() : a < b;
                });
      if (!moved.alternatives.empty()) moved.support = moved.alternatives.front();
      out.gates[h] = std::move(moved);
      done[h] = 1;
    }
  }
  for (const auto &r : out.gates) {
    out.max_support = std::max(out.max_support, r.support.size());
    out.all_unique = out.all_unique && r.unique;
  }
  return out;
}

PeriodReport gate_period_report(SymmetryContext &ctx, GateId g, const SupportReport &support,
                                std::size_t max_support, std::size_t support_cap) {
  require_sym(ctx);
  Evaluator ev(ctx.circuit());
  return gate_report_with(ev, ctx, g, support, max_support, support_cap);
}

std::vector<PeriodReport> all_gate_period_reports(SymmetryContext &ctx,
                                                  const SupportSummary &supports,
                                                  std::size_t support_cap) {
  require_sym(ctx);
  const auto orbits = ctx.orbit_partition(sym_generators(ctx.circuit().arity()));
  Evaluator ev(ctx.circuit());
  std::vector<PeriodReport> out;
  for (GateId g = 0; g < ctx.circuit().gate_count(); ++g) {
    if (orbits[g] != g) continue;
    out.push_back(gate_report_with(ev, ctx, g, supports.gates.at(g), supports.max_support,
                                   support_cap));
  }
  return out;
}

PeriodReport root_period_check(SymmetryContext &ctx, std::size_t max_support) {
  require_sym(ctx);
  const auto table = weight_table_unchecked(ctx.circuit());
  PeriodReport report;
  report.subject = "root";
  report.minimal_period = minimal_period(table);
  report.table_length = table.size();
  report.bound = root_bound(ctx.circuit().modulus(), max_support);
  finish_report(report);
  return report;
}

std::size_t max_block_support(SymmetryContext &ctx, const BlockTree &t, const Block &b,
                              std::size_t exhaustive_cap) {
  std::size_t best = 0;
  for (GateId g = 0; g < ctx.circuit().gate_count(); ++g) {
    best = std::max(best, ctx.blockwise_support(g, t, b, exhaustive_cap).support.size());
  }
  return best;
}

PeriodReport block_period(SymmetryContext &ctx, const BlockTree &t, const Block &b,
                          std::size_t max_block_support) {
  if (!t.is_block(b)) throw Error(ErrorCode::InvalidBlock, "not a sibling block of the tree");
  if (!ctx.is_symmetric(tree_aut_generators(t))) {
    throw Error(ErrorCode::PreconditionFailed, "circuit is not Aut(T)-symmetric");
  }
  const Circuit &c = ctx.circuit();
  Evaluator ev(c);
  const auto inside = t.leaves_under(b.members);
  std::vector<std::vector<std::uint8_t>> tables;
  for (std::uint8_t outside : {0, 1}) {
    std::vector<std::uint8_t> table;
    for (std::size_t j = 0; j <= b.members.size(); ++j) {
      Assignment a(c.arity(), outside);
      for (auto leaf : inside) a[leaf] = 0;
      for (std::size_t i = 0; i < j; ++i) {
        for (auto leaf : t.leaves_of(b.members[i])) a[leaf] = 1;
      }
      table.push_back(ev.evaluate(a));
    }
    tables.push_back(std::move(table));
  }
  PeriodReport report;
  report.subject = "block under node " + std::to_string(b.parent);
  report.minimal_period = common_period(tables);
  report.table_length = b.members.size() + 1;
  report.bound = root_bound(c.modulus(), max_block_support);
  finish_report(report);
  return report;
}

LowerBound size_lower_bound(std::uint64_t n, std::uint64_t m) {
  const auto fac = factorize(m);
  if (fac.is_prime_power()) {
    throw Error(ErrorCode::UnsupportedModulus, "m=" + std::to_string(m) + " is a prime power");
  }
  const auto r = static_cast<unsigned>(fac.distinct_primes());
  LowerBound lb;
  lb.n = n;
  lb.k = integer_root(n / m, r);
  lb.bound = binomial(n, lb.k);
  lb.k_ceil = integer_root_ceil((n + m - 1) / m, r);
  lb.bound_ceil = binomial(n, lb.k_ceil);
  return lb;
}

LowerBound nested_size_lower_bound(const BlockTree &t, std::uint64_t m) {
  LowerBound lb = size_lower_bound(t.k_max(), m);
  lb.hypothesis_met = t.meets_size_hypothesis();
  return lb;
}

std::vector<std::vector<std::size_t>> factorizations(std::size_t n, std::size_t h) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> cur;
  auto rec = [&](auto &self, std::size_t left, std::size_t parts) -> void {
    if (parts == 1) {
      if (left >= 2) {
        cur.push_back(left);
        out.push_back(cur);
        cur.pop_back();
      }
      return;
    }
    for (std::size_t d = 2; d <= left; ++d) {
      if (left % d) continue;
      cur.push_back(d);
      self(self, left / d, parts - 1);
      cur.pop_back();
    }
  };
  if (h >= 1) rec(rec, n, h);
  return out;
}

SymmetricBuilder::SymmetricBuilder(std::uint64_t modulus, const GeneratorSet &gens)
    : gens_(gens), builder_(modulus, gens.degree) {
  for (const auto &s : gens_.generators) {
    std::vector<GateId> act(gens_.degree);
    for (std::size_t v = 0; v < gens_.degree; ++v) act[builder_.input(v)] = builder_.input(s(v));
    action_.push_back(std::move(act));
  }
}

SymmetricBuilder::SymmetricBuilder(const Circuit &partial, const GeneratorSet &gens)
    : SymmetricBuilder(partial.modulus(), gens) {
  if (partial.arity() != gens.degree) {
    throw Error(ErrorCode::InvalidArgument, "generator degree differs from circuit arity");
  }
  imported_.assign(partial.gate_count(), 0);
  for (GateId g : partial.topological_order()) {
    const Gate &gate = partial.gate(g);
    if (gate.is_input()) {
      imported_[g] = builder_.input(gate.var);
      continue;
    }
    std::vector<Edge> kids;
    for (const auto &e : gate.children) kids.push_back({imported_[e.child], e.mult});
    imported_[g] = add_orbit(gate.accept, kids).front();
  }
  if (builder_.gate_count() > partial.gate_count()) {
    throw Error(ErrorCode::PreconditionFailed, "partial circuit is not closed under gens");
  }
}

std::vector<Edge> SymmetricBuilder::image(std::size_t gen, const std::vector<Edge> &edges) const {
  std::vector<Edge> out;
  out.reserve(edges.size());
  for (const auto &e : edges) out.push_back({action_[gen].at(e.child), e.mult});
  return canonical_edges(std::move(out), builder_.peek().modulus());
}

std::vector<GateId> SymmetricBuilder::add_orbit(const std::vector<std::uint64_t> &accept,
                                                const std::vector<Edge> &children,
                                                std::size_t cap) {
  const auto start = canonical_edges(children, builder_.peek().modulus());
  std::vector<std::vector<Edge>> states{start};
  std::map<std::vector<std::pair<GateId, std::uint64_t>>, std::size_t> seen;
  auto key = [](const std::vector<Edge> &edges) {
    std::vector<std::pair<GateId, std::uint64_t>> k;
    for (const auto &e : edges) k.emplace_back(e.child, e.mult);
    return k;
  };
  seen.emplace(key(start), 0);
  // succ[state][gen] = index of the image state
  std::vector<std::vector<std::size_t>> succ;
  for (std::size_t head = 0; head < states.size(); ++head) {
    succ.emplace_back();
    for (std::size_t s = 0; s < gens_.generators.size(); ++s) {
      auto img = image(s, states[head]);
      auto [it, inserted] = seen.emplace(key(img), states.size());
      if (inserted) {
        if (states.size() >= cap) {
          throw Error(ErrorCode::TooLarge, "template orbit exceeds cap " + std::to_string(cap));
        }
        states.push_back(std::move(img));
      }
      succ[head].push_back(it->second);
    }
  }
  std::vector<GateId> gates;
  for (const auto &st : states) gates.push_back(builder_.mod_gate(accept, st));
  for (auto &act : action_) {
    if (act.size() < builder_.gate_count()) act.resize(builder_.gate_count(), 0);
  }
  for (std::size_t i = 0; i < states.size(); ++i) {
    for (std::size_t s = 0; s < gens_.generators.size(); ++s) {
      action_[s][gates[i]] = gates[succ[i][s]];
    }
  }
  return gates;
}

Circuit symmetrize_template(const Circuit &partial, GateId g, const GeneratorSet &gens) {
  const Gate &tmpl = partial.gate(g);
  if (tmpl.is_input()) throw Error(ErrorCode::InvalidArgument, "template must be a MOD gate");
  for (const auto &ps : partial.parent_lists()[g]) {
    (void)ps;
    throw Error(ErrorCode::InvalidArgument, "template gate must have no parents");
  }
  // Rebuild everything but the template, then add the template's orbit.
  Circuit rest(partial.modulus(), partial.arity());
  std::vector<GateId> remap(partial.gate_count(), 0);
  for (GateId h : partial.topological_order()) {
    if (h == g) continue;
    const Gate &gate = partial.gate(h);
    if (gate.is_input()) {
      remap[h] = rest.add_input(gate.var);
      continue;
    }
    std::vector<Edge> kids;
    for (const auto &e : gate.children) kids.push_back({remap[e.child], e.mult});
    remap[h] = rest.add_mod(gate.accept, std::move(kids));
  }
  SymmetricBuilder sb(rest, gens);
  std::vector<Edge> kids;
  for (const auto &e : tmpl.children) kids.push_back({sb.imported(remap[e.child]), e.mult});
  sb.add_orbit(tmpl.accept, kids);
  std::optional<GateId> root;
  if (partial.root() && *partial.root() != g) root = sb.imported(remap[*partial.root()]);
  return sb.finish(root);
}

Circuit random_symmetric_circuit(std::mt19937_64 &rng, const RandomCircuitOptions &opts) {
  const std::uint64_t m = opts.modulus;
  const std::size_t n = uniform(rng, opts.min_arity, opts.max_arity);
  const std::size_t max_anchor = std::max<std::size_t>(1, std::min(opts.max_anchor, (n - 1) / 2));
  SymmetricBuilder sb(m, sym_generators(n));

  struct Made {
    GateId gate;
    std::vector<std::size_t> anchor;
  };
  std::vector<Made> pool;
  std::map<GateId, std::vector<std::size_t>> anchor_of;
  for (std::size_t v = 0; v < n; ++v) {
    pool.push_back({sb.input(v), {v}});
    anchor_of[sb.input(v)] = {v};
  }

  auto random_accept = [&] {
    std::vector<std::uint64_t> accept;
    while (accept.empty() || accept.size() == m) {
      accept.clear();
      for (std::uint64_t r = 0; r < m; ++r) {
        if (uniform(rng, 0, 1)) accept.push_back(r);
      }
    }
    return accept;
  };

  std::vector<std::vector<GateId>> orbits;
  for (std::size_t layer = 0; layer < opts.layers; ++layer) {
    const std::size_t templates = uniform(rng, 1, 3);
    std::vector<Made> added;
    for (std::size_t t = 0; t < templates; ++t) {
      std::vector<std::size_t> all(n);
      std::iota(all.begin(), all.end(), std::size_t{0});
      std::shuffle(all.begin(), all.end(), rng);
      std::vector<std::size_t> anchor(all.begin(),
                                      all.begin() + static_cast<std::ptrdiff_t>(
                                                        uniform(rng, 1, max_anchor)));
      std::sort(anchor.begin(), anchor.end());
      std::vector<GateId> candidates;
      for (const auto &made : pool) {
        if (std::includes(anchor.begin(), anchor.end(), made.anchor.begin(), made.anchor.end())) {
          candidates.push_back(made.gate);
        }
      }
      std::shuffle(candidates.begin(), candidates.end(), rng);
      const std::size_t k = uniform(rng, 1, std::min<std::size_t>(3, candidates.size()));
      std::vector<Edge> kids;
      for (std::size_t i = 0; i < k; ++i) kids.push_back({candidates[i], uniform(rng, 1, m - 1)});
      auto orbit = sb.add_orbit(random_accept(), kids);
      for (GateId g : orbit) {
        if (anchor_of.count(g)) continue;
        std::set<std::size_t> a;
        for (const auto &e : sb.peek().gate(g).children) {
          a.insert(anchor_of.at(e.child).begin(), anchor_of.at(e.child).end());
        }
        anchor_of[g] = {a.begin(), a.end()};
        added.push_back({g, anchor_of[g]});
      }
      orbits.push_back(std::move(orbit));
    }
    pool.insert(pool.end(), added.begin(), added.end());
  }

  std::shuffle(orbits.begin(), orbits.end(), rng);
  const std::size_t picks = uniform(rng, 1, std::min<std::size_t>(3, orbits.size()));
  std::vector<Edge> top;
  for (std::size_t i = 0; i < picks; ++i) {
    const std::uint64_t mult = uniform(rng, 1, m - 1);
    for (GateId g : orbits[i]) top.push_back({g, mult});
  }
  const GateId root = sb.add_orbit(random_accept(), top).front();
  return rigidify(sb.finish(root));
}

ZpqExpression random_zpq_expression(std::mt19937_64 &rng, std::uint64_t m,
                                    std::size_t max_arity, std::size_t max_terms) {
  auto primes = factorize(m).prime_list();
  if (primes.size() < 2) throw Error(ErrorCode::UnsupportedModulus, "need two primes");
  std::shuffle(primes.begin(), primes.end(), rng);
  ZpqExpression e;
  e.p = primes[0];
  e.q = primes[1];
  e.arity = uniform(rng, 1, max_arity);
  const std::size_t terms = uniform(rng, 0, max_terms);
  for (std::size_t t = 0; t < terms; ++t) {
    ZpqTerm term;
    term.alpha = uniform(rng, 1, e.q - 1);
    for (std::size_t i = 0; i < e.arity; ++i) term.beta.push_back(uniform(rng, 0, e.p - 1));
    term.c = uniform(rng, 0, e.p - 1);
    e.terms.push_back(std::move(term));
  }
  return e;
}

bool check_equivariance(SymmetryContext &ctx, const Permutation &pi, const Assignment &delta) {
  const Circuit &c = ctx.circuit();
  Assignment moved(delta.size());
  for (std::size_t i = 0; i < delta.size(); ++i) moved[pi(i)] = delta[i];
  Evaluator ev(c);
  const auto before = ev.evaluate_all(delta);
  const auto after = ev.evaluate_all(moved);
  const auto &sigma = ctx.automorphism(pi);
  for (GateId g = 0; g < c.gate_count(); ++g) {
    if (before[g] != after[sigma(g)]) return false;
  }
  return true;
}

bool check_support_movement(SymmetryContext &ctx, const Permutation &pi, GateId g) {
  const auto here = ctx.minimal_support(g);
  const auto there = ctx.minimal_support(ctx.act(pi, g));
  if (here.unique != there.unique) return false;
  if (here.unique) return apply_to_set(pi, here.support) == there.support;
  std::set<std::vector<std::size_t>> a, b(there.alternatives.begin(), there.alternatives.end());
  for (const auto &alt : here.alternatives) a.insert(apply_to_set(pi, alt));
  return a == b;
}

Permutation random_permutation(std::mt19937_64 &rng, std::size_t n) {
  std::vector<std::size_t> img(n);
  std::iota(img.begin(), img.end(), std::size_t{0});
  std::shuffle(img.begin(), img.end(), rng);
  return Permutation(std::move(img));
}

VerifyMode parse_verify_mode(const std::string &s) {
  if (s == "exhaustive") return VerifyMode::Exhaustive;
  if (s == "weight") return VerifyMode::Weight;
  if (s == "sample") return VerifyMode::Sample;
  throw Error(ErrorCode::InvalidArgument, "unknown verify mode '" + s + "'");
}

std::string to_string(VerifyMode mode) {
  switch (mode) {
    case VerifyMode::Exhaustive: return "exhaustive";
    case VerifyMode::Weight: return "weight";
    case VerifyMode::Sample: return "sample";
  }
  return "unknown";
}

VerifyResult verify_and(const Circuit &c, VerifyMode mode, std::uint64_t seed,
                        std::size_t samples) {
  const std::size_t n = c.arity();
  const GateId root = c.root_or_throw();
  VerifyResult result;
  result.mode = mode;
  result.exhaustive = mode != VerifyMode::Sample;
  Evaluator ev(c);
  auto check = [&](const Assignment &a) {
    ++result.checked;
    const bool all_ones = std::all_of(a.begin(), a.end(), [](std::uint8_t b) { return b; });
    if (ev.evaluate_all(a)[root] != (all_ones ? 1 : 0)) {
      result.counterexample = a;
      return false;
    }
    return true;
  };

  switch (mode) {
    case VerifyMode::Exhaustive: {
      const std::size_t cap = default_exhaustive_cap();
      if (n > cap) {
        throw Error(ErrorCode::TooLarge, "arity " + std::to_string(n) +
                                             " exceeds exhaustive cap " + std::to_string(cap));
      }
      for (std::uint64_t i = 0; i < (std::uint64_t{1} << n); ++i) {
        if (!check(assignment_from_index(i, n))) return result;
      }
      break;
    }
    case VerifyMode::Weight: {
      if (!is_symmetric(c, sym_generators(n))) {
        throw Error(ErrorCode::PreconditionFailed, "weight mode needs a Sym_n-symmetric circuit");
      }
      for (std::size_t w = 0; w <= n; ++w) {
        Assignment a(n, 0);
        std::fill(a.begin(), a.begin() + static_cast<std::ptrdiff_t>(w), 1);
        if (!check(a)) return result;
      }
      break;
    }
    case VerifyMode::Sample: {
      if (!check(Assignment(n, 1))) return result;
      std::mt19937_64 rng(seed);
      for (std::size_t s = 0; s < samples && n > 0; ++s) {
        Assignment a(n);
        do {
          for (auto &b : a) b = static_cast<std::uint8_t>(uniform(rng, 0, 1));
        } while (std::all_of(a.begin(), a.end(), [](std::uint8_t b) { return b; }));
        if (!check(a)) return result;
      }
      break;
    }
  }
  result.pass = true;
  return result;
}

}  // namespace modcirc
