#include "modcirc/commands.hpp"

#include <chrono>
#include <fstream>
#include <functional>
#include <optional>
#include <random>

#include "CLI11.hpp"

#include "modcirc/analysis.hpp"
#include "modcirc/construct.hpp"
#include "modcirc/error.hpp"
#include "modcirc/io.hpp"
#include "modcirc/symmetry.hpp"

namespace modcirc::cli {

namespace {

struct Outcome {
  int code = kPass;
  Json results = Json::object();
  std::optional<std::uint64_t> seed;
  std::vector<std::string> warnings;
};

std::string bits_string(const Assignment &a) {
  std::string s;
  for (auto b : a) s += b ? '1' : '0';
  return s;
}

Json one_based(const std::vector<std::size_t> &s) {
  Json j = Json::array();
  for (auto v : s) j.push_back(v + 1);
  return j;
}

std::string big(const BigInt &v) { return v.str(); }

Circuit load_circuit(const std::string &path) { return circuit_from_json(read_json_file(path)); }

Json size_fields(const Circuit &c) {
  return {{"gates", c.gate_count()},
          {"size", size(c)},
          {"size_normalized", size(normalize_multiplicities(c))},
          {"depth", depth(c)}};
}

void write_or_embed(Outcome &o, const std::string &path, const Json &artifact) {
  if (path.empty()) {
    o.results["artifact"] = artifact;
  } else {
    write_json_file(path, artifact);
    o.results["output"] = path;
  }
}

Json plan_metadata(const AndDepth2Plan &plan) {
  Json parts = Json::array();
  for (const auto &p : plan.parts) {
    parts.push_back({{"prime", p.prime},
                     {"nu", p.nu},
                     {"aux_prime", p.aux_prime},
                     {"orbits", p.expression.orbits.size()},
                     {"terms", big(p.expression.term_count())},
                     {"max_term_support", p.expression.max_support()}});
  }
  return {{"construction", "and-depth2"},
          {"contract", plan.contract()},
          {"arity", plan.arity},
          {"parts", parts}};
}

Outcome build_and2(std::uint64_t m, std::size_t n, const std::string &out_path) {
  Outcome o;
  const auto plan = plan_and_depth2(m, n);
  CircuitBuilder builder(m, n);
  std::vector<GateId> inputs(n);
  for (std::size_t i = 0; i < n; ++i) inputs[i] = builder.input(i);
  Circuit c = builder.finish(instantiate_and_depth2(builder, plan, inputs));
  Json artifact = circuit_to_json(c);
  artifact["metadata"] = plan_metadata(plan);
  o.results = size_fields(c);
  o.results["planned_size"] = big(plan.planned_size());
  o.results["metadata"] = artifact["metadata"];
  o.results["top_accept"] = c.gate(c.root_or_throw()).accept;
  write_or_embed(o, out_path, artifact);
  return o;
}

Outcome build_nested(std::uint64_t m, const std::string &blocks, const std::string &out_path) {
  Outcome o;
  const auto tree = parse_blocks(blocks);
  Circuit c = build_and_nested(m, tree);
  Json artifact = circuit_to_json(c);
  artifact["metadata"] = {{"construction", "and-nested"},
                          {"contract", "strict"},
                          {"branching", tree.branching()}};
  o.results = size_fields(c);
  o.results["branching"] = tree.branching();
  o.results["height"] = tree.height();
  write_or_embed(o, out_path, artifact);
  return o;
}

Outcome build_tq_cmd(std::uint64_t p, std::uint64_t q, unsigned nu, std::size_t n,
                     const std::string &out_path) {
  Outcome o;
  const auto sym = build_tq_orbits(p, q, nu, n);
  Json artifact = expression_to_json(sym.expand());
  artifact["metadata"] = {{"construction", "tq"}, {"contract", "strict"}, {"nu", nu}};
  o.results = {{"terms", big(sym.term_count())},
               {"orbits", sym.orbits.size()},
               {"max_term_support", sym.max_support()},
               {"contract", "strict"}};
  write_or_embed(o, out_path, artifact);
  return o;
}

Outcome verify_cmd(const std::string &path, const std::string &function,
                   const std::string &mode, std::uint64_t seed, std::size_t samples) {
  if (function != "and") {
    throw Error(ErrorCode::InvalidArgument, "only --function and is supported");
  }
  Outcome o;
  const Circuit c = load_circuit(path);
  const auto vm = parse_verify_mode(mode);
  const auto r = verify_and(c, vm, seed, samples);
  o.results = {{"function", "and"},
               {"mode", to_string(r.mode)},
               {"exhaustive", r.exhaustive},
               {"checked", r.checked},
               {"pass", r.pass}};
  if (r.counterexample) o.results["counterexample"] = bits_string(*r.counterexample);
  if (vm == VerifyMode::Sample) o.seed = seed;
  o.code = r.pass ? kPass : kViolated;
  return o;
}

Circuit rigid_view(const Circuit &c, Outcome &o) {
  std::string warning;
  Circuit r = ensure_rigid(c, &warning);
  if (!warning.empty()) o.warnings.push_back(warning);
  return r;
}

Json support_json(const SupportReport &r) {
  Json j = {{"gate", r.gate},
            {"support", one_based(r.support)},
            {"unique", r.unique},
            {"method", r.method == SupportMethod::ExhaustiveSubsets ? "exhaustive" : "greedy"}};
  if (!r.alternatives.empty()) {
    Json alts = Json::array();
    for (const auto &a : r.alternatives) alts.push_back(one_based(a));
    j["alternatives"] = alts;
  }
  return j;
}

Json period_json(const PeriodReport &r) {
  Json j = {{"subject", r.subject},
            {"minimal_period", r.minimal_period ? Json(*r.minimal_period) : Json(nullptr)},
            {"table_length", r.table_length},
            {"bound", r.bound},
            {"satisfied", r.satisfied}};
  if (r.subject.rfind("gate", 0) == 0) {
    j["structured"] = r.structured;
    if (r.structured_witness) j["structured_witness"] = *r.structured_witness;
  }
  return j;
}

Outcome analyze_cmd(const std::string &what, const std::string &path, const std::string &blocks,
                    std::optional<GateId> gate) {
  Outcome o;
  const Circuit loaded = load_circuit(path);
  std::optional<BlockTree> tree;
  if (!blocks.empty()) {
    tree = parse_blocks(blocks);
    if (tree->leaf_count() != loaded.arity()) {
      throw Error(ErrorCode::InvalidBlock, "tree has " + std::to_string(tree->leaf_count()) +
                                               " leaves but circuit arity is " +
                                               std::to_string(loaded.arity()));
    }
  }
  const std::size_t n = loaded.arity();

  if (what == "symmetry") {
    const bool sym = is_symmetric(loaded, sym_generators(n));
    o.results["sym_n"] = sym;
    bool ok = sym;
    if (tree) {
      const bool aut = is_symmetric(loaded, tree_aut_generators(*tree));
      o.results["aut_tree"] = aut;
      ok = aut;
    }
    o.code = ok ? kPass : kViolated;
    return o;
  }
  if (what == "rigidity") {
    const bool rigid = is_rigid(loaded);
    o.results["rigid"] = rigid;
    o.results["unique_gate_keys"] = has_unique_gate_keys(loaded);
    if (!rigid) o.results["rigidified"] = size_fields(rigidify(loaded));
    o.code = rigid ? kPass : kViolated;
    return o;
  }

  const Circuit c = rigid_view(loaded, o);
  SymmetryContext ctx(c);

  if (what == "orbits") {
    const auto gens = tree ? tree_aut_generators(*tree) : sym_generators(n);
    const auto part = ctx.orbit_partition(gens);
    std::map<std::size_t, std::size_t> sizes;
    for (auto r : part) ++sizes[r];
    Json list = Json::array();
    std::size_t largest = 0;
    for (auto [rep, count] : sizes) {
      list.push_back({{"representative", rep}, {"size", count}});
      largest = std::max(largest, count);
    }
    o.results = {{"group", tree ? "aut_tree" : "sym_n"},
                 {"orbit_count", sizes.size()},
                 {"max_orbit", largest},
                 {"orbits", list}};
    return o;
  }

  const auto r = static_cast<unsigned>(factorize(c.modulus()).distinct_primes());
  if (what == "supports") {
    if (tree) {
      Json per_block = Json::array();
      for (const auto &b : tree->blocks()) {
        std::size_t best = 0;
        for (GateId g = 0; g < c.gate_count(); ++g) {
          best = std::max(best, ctx.blockwise_support(g, *tree, b).support.size());
        }
        per_block.push_back({{"parent", b.parent},
                             {"members", b.members},
                             {"max_support", best},
                             {"floor_bound", integer_root(b.members.size() / c.modulus(), r)}});
      }
      o.results["blocks"] = per_block;
      return o;
    }
    const auto summary = compute_supports(ctx);
    Json gates = Json::array();
    for (const auto &s : summary.gates) gates.push_back(support_json(s));
    const auto k = integer_root(n / c.modulus(), r);
    o.results = {{"gates", gates},
                 {"max_support", summary.max_support},
                 {"all_unique", summary.all_unique},
                 {"floor_bound", k}};
    if (verify_and(c, VerifyMode::Weight).pass) {
      const bool holds = summary.max_support >= k;
      o.results["computes_and"] = true;
      o.results["and_bound_holds"] = holds;
      if (!holds) o.code = kViolated;
    }
    return o;
  }
  if (what == "period") {
    bool ok = true;
    if (tree) {
      Json reports = Json::array();
      for (const auto &b : tree->blocks()) {
        const auto rep = block_period(ctx, *tree, b, max_block_support(ctx, *tree, b));
        ok = ok && rep.satisfied;
        reports.push_back(period_json(rep));
      }
      o.results["blocks"] = reports;
      o.code = ok ? kPass : kViolated;
      return o;
    }
    const auto summary = compute_supports(ctx);
    if (gate) {
      if (*gate >= c.gate_count()) throw Error(ErrorCode::InvalidArgument, "unknown gate id");
      const auto rep = gate_period_report(ctx, *gate, summary.gates[*gate], summary.max_support);
      o.results["gate"] = period_json(rep);
      o.code = rep.satisfied && rep.structured ? kPass : kViolated;
      return o;
    }
    const auto root = root_period_check(ctx, summary.max_support);
    ok = root.satisfied;
    o.results["root"] = period_json(root);
    o.results["max_support"] = summary.max_support;
    Json gates = Json::array();
    for (const auto &rep : all_gate_period_reports(ctx, summary)) {
      ok = ok && rep.satisfied && rep.structured;
      gates.push_back(period_json(rep));
    }
    o.results["gates"] = gates;
    o.code = ok ? kPass : kViolated;
    return o;
  }
  throw Error(ErrorCode::InvalidArgument, "unknown analysis '" + what + "'");
}

Json bound_json(const LowerBound &lb) {
  return {{"n", lb.n},
          {"k", lb.k},
          {"bound", big(lb.bound)},
          {"k_ceil", lb.k_ceil},
          {"bound_ceil", big(lb.bound_ceil)},
          {"hypothesis_met", lb.hypothesis_met}};
}

Outcome bounds_cmd(std::uint64_t m, std::optional<std::size_t> n, const std::string &blocks,
                   const std::string &path) {
  Outcome o;
  std::optional<BlockTree> tree;
  if (!blocks.empty()) tree = parse_blocks(blocks);
  if (!n && tree) n = tree->leaf_count();
  if (!n) throw Error(ErrorCode::InvalidArgument, "--n or --blocks is required");
  const auto flat = size_lower_bound(*n, m);
  o.results["depth2"] = bound_json(flat);
  BigInt applicable = flat.bound;
  if (tree) {
    const auto nested = nested_size_lower_bound(*tree, m);
    o.results["nested"] = bound_json(nested);
    o.results["nested"]["k_max"] = nested.n;
    applicable = nested.bound;
    if (!nested.hypothesis_met) {
      o.warnings.push_back("branching factors <= 8: the nested bound is outside its hypothesis");
    }
  }
  if (!path.empty()) {
    const Circuit c = load_circuit(path);
    const bool ok = BigInt(size(c)) >= applicable;
    o.results["measured"] = size_fields(c);
    o.results["bound_below_measured"] = ok;
    o.code = ok ? kPass : kViolated;
  }
  return o;
}

Outcome sweep_cmd(std::uint64_t seed, std::size_t count, std::uint64_t m) {
  Outcome o;
  o.seed = seed;
  std::mt19937_64 rng(seed);
  RandomCircuitOptions opts;
  opts.modulus = m;
  std::size_t rigid = 0, root_ok = 0, gates_ok = 0, and_ok = 0, equiv_ok = 0, rigidify_ok = 0;
  for (std::size_t i = 0; i < count; ++i) {
    const Circuit c = random_symmetric_circuit(rng, opts);
    if (is_rigid(c)) ++rigid;
    const Circuit again = rigidify(c);
    if (truth_table(again) == truth_table(c) && size(again) <= size(c)) ++rigidify_ok;
    SymmetryContext ctx(c);
    const auto summary = compute_supports(ctx);
    const auto root = root_period_check(ctx, summary.max_support);
    if (root.satisfied) ++root_ok;
    bool gates = true;
    for (const auto &rep : all_gate_period_reports(ctx, summary)) {
      gates = gates && rep.satisfied && rep.structured;
    }
    if (gates) ++gates_ok;
    const auto r = static_cast<unsigned>(factorize(m).distinct_primes());
    const bool is_and = verify_and(c, VerifyMode::Weight).pass;
    if (!is_and || summary.max_support >= integer_root(c.arity() / m, r)) ++and_ok;
    const auto pi = random_permutation(rng, c.arity());
    Assignment delta(c.arity());
    for (auto &b : delta) b = static_cast<std::uint8_t>(rng() & 1u);
    if (check_equivariance(ctx, pi, delta)) ++equiv_ok;
  }
  o.results = {{"count", count},
               {"rigid", rigid},
               {"rigidify_preserves", rigidify_ok},
               {"root_period_within_bound", root_ok},
               {"gate_periods_within_bound", gates_ok},
               {"and_support_bound", and_ok},
               {"equivariance", equiv_ok}};
  const bool all = rigid == count && rigidify_ok == count && root_ok == count &&
                   gates_ok == count && and_ok == count && equiv_ok == count;
  o.code = all ? kPass : kViolated;
  return o;
}

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotRigid:
    case ErrorCode::PreconditionFailed: return kViolated;
    default: return kUsage;
  }
}

}  // namespace

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
  CLI::App app{"Symmetric MOD_m circuit toolkit", "modcirc"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  std::function<Outcome()> action;
  std::string command;
  Json params = Json::object();
  std::string output;

  // build
  auto *build = app.add_subcommand("build", "Build a construction");
  build->require_subcommand(1);
  std::uint64_t m = 6, p = 3, q = 2;
  std::size_t n = 0;
  unsigned nu = 1;
  std::string blocks;
  auto *and2 = build->add_subcommand("and2", "Depth-2 AND_n circuit");
  and2->add_option("--m", m, "modulus")->required();
  and2->add_option("--n", n, "arity")->required();
  and2->add_option("-o,--output", output, "output file");
  and2->callback([&] {
    command = "build and2";
    params = {{"m", m}, {"n", n}};
    action = [&] { return build_and2(m, n, output); };
  });
  auto *nested = build->add_subcommand("and-nested", "Nested block-symmetric AND circuit");
  nested->add_option("--m", m, "modulus")->required();
  nested->add_option("--blocks", blocks, "branching k1,...,kh")->required();
  nested->add_option("-o,--output", output, "output file");
  nested->callback([&] {
    command = "build and-nested";
    params = {{"m", m}, {"blocks", blocks}};
    action = [&] { return build_nested(m, blocks, output); };
  });
  auto *tq = build->add_subcommand("tq", "Expression for the divisibility test t");
  tq->add_option("--p", p, "inner prime")->required();
  tq->add_option("--q", q, "outer prime")->required();
  tq->add_option("--nu", nu, "exponent")->required();
  tq->add_option("--n", n, "arity")->required();
  tq->add_option("-o,--output", output, "output file");
  tq->callback([&] {
    command = "build tq";
    params = {{"p", p}, {"q", q}, {"nu", nu}, {"n", n}};
    action = [&] { return build_tq_cmd(p, q, nu, n, output); };
  });

  // verify
  std::string circuit_path, function = "and", mode = "exhaustive";
  std::uint64_t seed = 1;
  std::size_t samples = 1000;
  auto *verify = app.add_subcommand("verify", "Check that a circuit computes a function");
  verify->add_option("--circuit", circuit_path, "circuit file")->required();
  verify->add_option("--function", function, "function (and)");
  verify->add_option("--mode", mode, "exhaustive | weight | sample");
  verify->add_option("--seed", seed, "seed for sample mode");
  verify->add_option("--samples", samples, "random inputs in sample mode");
  verify->callback([&] {
    command = "verify";
    params = {{"circuit", circuit_path}, {"function", function}, {"mode", mode}};
    action = [&] { return verify_cmd(circuit_path, function, mode, seed, samples); };
  });

  // analyze
  std::string what;
  std::optional<GateId> gate;
  auto *analyze = app.add_subcommand("analyze", "Symmetry, support and period analysis");
  analyze->add_option("what", what, "symmetry | rigidity | supports | period | orbits")
      ->required()
      ->check(CLI::IsMember({"symmetry", "rigidity", "supports", "period", "orbits"}));
  analyze->add_option("--circuit", circuit_path, "circuit file")->required();
  analyze->add_option("--blocks", blocks, "branching k1,...,kh");
  analyze->add_option("--gate", gate, "gate id");
  analyze->callback([&] {
    command = "analyze " + what;
    params = {{"circuit", circuit_path}, {"blocks", blocks}};
    if (gate) params["gate"] = *gate;
    action = [&] { return analyze_cmd(what, circuit_path, blocks, gate); };
  });

  // bounds
  std::optional<std::size_t> bound_n;
  auto *bounds = app.add_subcommand("bounds", "Size lower bounds");
  bounds->add_option("--m", m, "modulus")->required();
  bounds->add_option("--n", bound_n, "arity");
  bounds->add_option("--blocks", blocks, "branching k1,...,kh");
  bounds->add_option("--circuit", circuit_path, "compare with a circuit's size");
  bounds->callback([&] {
    command = "bounds";
    params = {{"m", m}, {"blocks", blocks}};
    if (bound_n) params["n"] = *bound_n;
    action = [&] { return bounds_cmd(m, bound_n, blocks, circuit_path); };
  });

  // export
  std::string format;
  auto *exp = app.add_subcommand("export", "Export a circuit");
  exp->add_option("format", format, "dot")->required()->check(CLI::IsMember({"dot"}));
  exp->add_option("--circuit", circuit_path, "circuit file")->required();
  exp->add_option("-o,--output", output, "output file");
  bool exported = false;
  exp->callback([&] { exported = true; });

  // sweep
  std::size_t count = 100;
  auto *sweep = app.add_subcommand("sweep", "Random symmetric circuit property sweep");
  sweep->add_option("--seed", seed, "seed (default 1)");
  sweep->add_option("--count", count, "number of circuits");
  sweep->add_option("--m", m, "modulus");
  sweep->callback([&] {
    command = "sweep";
    params = {{"seed", seed}, {"count", count}, {"m", m}};
    action = [&] { return sweep_cmd(seed, count, m); };
  });

  std::vector<const char *> argv{"modcirc"};
  for (const auto &a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError &e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kPass : kUsage;
  }

  const auto started = std::chrono::steady_clock::now();
  try {
    if (exported) {
      const std::string dot = to_dot(load_circuit(circuit_path));
      if (output.empty()) {
        out << dot;
      } else {
        std::ofstream f(output);
        if (!f) throw Error(ErrorCode::InvalidArgument, "cannot write '" + output + "'");
        f << dot;
      }
      return kPass;
    }
    Outcome o = action();
    const auto elapsed = std::chrono::duration<double, std::milli>(
                             std::chrono::steady_clock::now() - started)
                             .count();
    Json report = {{"command", command},
                   {"parameters", params},
                   {"results", o.results},
                   {"elapsed_ms", elapsed},
                   {"version", kVersion}};
    if (o.seed) report["seed"] = *o.seed;
    if (!o.warnings.empty()) {
      report["warnings"] = o.warnings;
      for (const auto &w : o.warnings) err << "warning: " << w << '\n';
    }
    out << report.dump(2) << '\n';
    return o.code;
  } catch (const Error &e) {
    err << Json{{"error", std::string(to_string(e.code()))}, {"message", e.what()}}.dump()
        << '\n';
    return exit_code_for(e.code());
  }
}

}  // namespace modcirc::cli
