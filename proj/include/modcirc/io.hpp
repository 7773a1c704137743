#pragma once

#include <string>

#include "json.hpp"

#include "modcirc/circuit.hpp"
#include "modcirc/construct.hpp"

namespace modcirc {

using Json = nlohmann::json;

// Circuit files: gate ids are written densely; input "var" is 1-based.
Json circuit_to_json(const Circuit &c);
Circuit circuit_from_json(const Json &j);

Json open_circuit_to_json(const OpenCircuit &oc);
OpenCircuit open_circuit_from_json(const Json &j);

Json expression_to_json(const ZpqExpression &e);
ZpqExpression expression_from_json(const Json &j);

/// Graphviz rendering with nodes in ascending gate id order.
std::string to_dot(const Circuit &c);

Json read_json_file(const std::string &path);
void write_json_file(const std::string &path, const Json &j);

}  // namespace modcirc
