#include "modcirc/io.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

#include "modcirc/error.hpp"

namespace modcirc {

namespace {

template <typename Fn>
auto guarded(Fn &&fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const Json::exception &e) {
    throw Error(ErrorCode::ParseError, e.what());
  }
}

Json body_to_json(const Circuit &c) {
  Json gates = Json::array();
  Json wires = Json::array();
  for (GateId g = 0; g < c.gate_count(); ++g) {
    const Gate &gate = c.gate(g);
    if (gate.is_input()) {
      gates.push_back({{"id", g}, {"kind", "input"}, {"var", gate.var + 1}});
      continue;
    }
    gates.push_back({{"id", g}, {"kind", "mod"}, {"accept", gate.accept}});
    for (const auto &e : gate.children) {
      wires.push_back({{"from", e.child}, {"to", g}, {"mult", e.mult}});
    }
  }
  return {{"modulus", c.modulus()}, {"arity", c.arity()}, {"gates", gates}, {"wires", wires}};
}

// Reads gates and wires; returns the circuit and the file-id -> dense-id map.
std::pair<Circuit, std::map<std::int64_t, GateId>> body_from_json(const Json &j) {
  const auto m = j.at("modulus").get<std::uint64_t>();
  const auto n = j.at("arity").get<std::size_t>();
  Circuit c(m, n);

  std::vector<std::int64_t> ids;
  for (const auto &g : j.at("gates")) ids.push_back(g.at("id").get<std::int64_t>());
  std::sort(ids.begin(), ids.end());
  std::map<std::int64_t, GateId> dense;
  for (auto id : ids) {
    if (!dense.emplace(id, static_cast<GateId>(dense.size())).second) {
      throw Error(ErrorCode::MalformedCircuit, "duplicate gate id " + std::to_string(id));
    }
  }
  auto lookup = [&](std::int64_t id) {
    auto it = dense.find(id);
    if (it == dense.end()) {
      throw Error(ErrorCode::MalformedCircuit, "wire references unknown gate " +
                                                   std::to_string(id));
    }
    return it->second;
  };

  std::map<GateId, const Json *> by_id;
  for (const auto &g : j.at("gates")) by_id[lookup(g.at("id").get<std::int64_t>())] = &g;
  std::vector<std::vector<Edge>> children(ids.size());
  if (j.contains("wires")) {
    for (const auto &w : j.at("wires")) {
      const GateId to = lookup(w.at("to").get<std::int64_t>());
      const GateId from = lookup(w.at("from").get<std::int64_t>());
      const auto mult = w.contains("mult") ? w.at("mult").get<std::uint64_t>() : 1;
      children[to].push_back({from, mult});
    }
  }
  for (const auto &[id, g] : by_id) {
    const auto kind = g->at("kind").get<std::string>();
    if (kind == "input") {
      const auto var = g->at("var").get<std::size_t>();
      if (var == 0) throw Error(ErrorCode::MalformedCircuit, "input variables are 1-based");
      if (!children[id].empty()) {
        throw Error(ErrorCode::MalformedCircuit, "input gate with incoming wires");
      }
      c.add_input(var - 1);
    } else if (kind == "mod") {
      c.add_mod(g->at("accept").get<std::vector<std::uint64_t>>(), std::move(children[id]));
    } else {
      throw Error(ErrorCode::MalformedCircuit, "unknown gate kind '" + kind + "'");
    }
  }
  return {std::move(c), std::move(dense)};
}

}  // namespace

Json circuit_to_json(const Circuit &c) {
  Json j = body_to_json(c);
  if (c.root()) j["root"] = *c.root();
  return j;
}

Circuit circuit_from_json(const Json &j) {
  return guarded([&] {
    auto [c, dense] = body_from_json(j);
    if (j.contains("root")) {
      auto it = dense.find(j.at("root").get<std::int64_t>());
      if (it == dense.end()) throw Error(ErrorCode::MalformedCircuit, "unknown root gate");
      c.set_root(it->second);
    }
    c.validate();
    return c;
  });
}

Json open_circuit_to_json(const OpenCircuit &oc) {
  Json j = body_to_json(oc.body);
  Json outs = Json::array();
  for (const auto &w : oc.outputs) outs.push_back({{"gate", w.gate}, {"mult", w.mult}});
  j["outputs"] = outs;
  j["output_modulus"] = oc.output_modulus;
  return j;
}

OpenCircuit open_circuit_from_json(const Json &j) {
  return guarded([&] {
    auto [c, dense] = body_from_json(j);
    c.validate();
    OpenCircuit oc{std::move(c), {}, j.at("output_modulus").get<std::uint64_t>()};
    for (const auto &w : j.at("outputs")) {
      auto it = dense.find(w.at("gate").get<std::int64_t>());
      if (it == dense.end()) throw Error(ErrorCode::MalformedCircuit, "unknown output gate");
      oc.outputs.push_back({it->second, w.at("mult").get<std::uint64_t>()});
    }
    return oc;
  });
}

Json expression_to_json(const ZpqExpression &e) {
  Json terms = Json::array();
  for (const auto &t : e.terms) {
    terms.push_back({{"alpha", t.alpha}, {"beta", t.beta}, {"c", t.c}});
  }
  return {{"p", e.p}, {"q", e.q}, {"arity", e.arity}, {"terms", terms}};
}

ZpqExpression expression_from_json(const Json &j) {
  return guarded([&] {
    ZpqExpression e;
    e.p = j.at("p").get<std::uint64_t>();
    e.q = j.at("q").get<std::uint64_t>();
    e.arity = j.at("arity").get<std::size_t>();
    for (const auto &t : j.at("terms")) {
      ZpqTerm term{t.at("alpha").get<std::uint64_t>(),
                   t.at("beta").get<std::vector<std::uint64_t>>(),
                   t.value("c", std::uint64_t{0})};
      if (term.beta.size() != e.arity) {
        throw Error(ErrorCode::ParseError, "beta length differs from arity");
      }
      e.terms.push_back(std::move(term));
    }
    return e;
  });
}

std::string to_dot(const Circuit &c) {
  std::ostringstream out;
  out << "digraph circuit {\n  rankdir=BT;\n";
  for (GateId g = 0; g < c.gate_count(); ++g) {
    const Gate &gate = c.gate(g);
    out << "  g" << g << " [label=\"";
    if (gate.is_input()) {
      out << "x_" << gate.var + 1 << "\", shape=box";
    } else {
      out << "MOD_" << c.modulus() << "^{";
      for (std::size_t i = 0; i < gate.accept.size(); ++i) {
        out << (i ? "," : "") << gate.accept[i];
      }
      out << "}\"";
      if (c.root() && *c.root() == g) out << ", peripheries=2";
    }
    out << "];\n";
  }
  for (GateId g = 0; g < c.gate_count(); ++g) {
    for (const auto &e : c.gate(g).children) {
      out << "  g" << e.child << " -> g" << g << " [label=\"×" << e.mult << "\"];\n";
    }
  }
  out << "}\n";
  return out.str();
}

Json read_json_file(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::InvalidArgument, "cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const Json::exception &e) {
    throw Error(ErrorCode::ParseError, path + ": " + e.what());
  }
}

void write_json_file(const std::string &path, const Json &j) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::InvalidArgument, "cannot write '" + path + "'");
  out << j.dump(2) << '\n';
}

}  // namespace modcirc
