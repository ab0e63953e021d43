#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "ppp/bigint.hpp"

namespace ppp {

enum class GateKind : std::uint8_t { Id, Not, And, Or, Xor, Nand, Nor, Const1 };

const char* gate_kind_name(GateKind k);
GateKind gate_kind_from_name(const std::string& name);
bool gate_kind_is_binary(GateKind k);

struct Gate {
  GateKind kind;
  int pred1 = -1;  // node id; -1 when absent (Const1)
  int pred2 = -1;  // node id; -1 for unary kinds and Const1
};

// DAG of gates over `num_inputs` source nodes. Node ids: inputs occupy
// 0..num_inputs-1, gate t has id num_inputs + t. The gate list is required to
// be a topological order (predecessors have strictly smaller ids).
struct Circuit {
  int num_inputs = 0;
  std::vector<Gate> gates;
  std::vector<int> outputs;

  int size() const { return static_cast<int>(gates.size()); }
  int num_nodes() const { return num_inputs + size(); }
  int num_outputs() const { return static_cast<int>(outputs.size()); }
};

using Bits = std::vector<std::uint8_t>;

// Evaluates all nodes into `values` (resized to num_nodes) and returns the
// output bits. Reusing `values` across calls avoids reallocation in
// enumeration loops.
Bits evaluate_with_scratch(const Circuit& c, std::span<const std::uint8_t> input, Bits& values);
Bits evaluate(const Circuit& c, std::span<const std::uint8_t> input);

struct Violation {
  bool ok = true;
  int node = -1;
  std::string message;
};

Violation validate(const Circuit& c);
void require_valid(const Circuit& c, const char* where);

// Rewrites Id/Not so only the five binary kinds {And, Or, Xor, Nand, Nor}
// remain: Not(x) -> Nand(x, x), Id(x) -> Or(x, x). Errors on Const1.
Circuit normalize_indegree2(const Circuit& c);

// Rewrites any circuit over the seven pointwise kinds into the {Xor, Or,
// Const1} basis, e.g. Nor(x, y) -> Xor(Or(x, y), Const1).
Circuit rewrite_to_xor_or_basis(const Circuit& c);

// Builds C' from a {Xor, Or, Const1} circuit: prepends z = x_1 v ... v x_n and
// redirects every Const1 use to z. C'(x) = C(x) for x != 0 and C'(0) = 0. The
// chain is prepended even when no Const1 is present, so downstream assembly is
// uniform.
Circuit eliminate_const1(const Circuit& c);

// Builds C'' from a {Xor, Or} circuit: one extra output equal to the Or of all
// inputs.
Circuit append_nonzero_flag(const Circuit& c);

// bc / bd on bit strings, most-significant-first: bc(x) = sum x_{k-i} 2^i.
Int bc(std::span<const std::uint8_t> bits);
Bits bd(const Int& value, int width);
std::uint64_t bc_u64(std::span<const std::uint8_t> bits);
Bits bd_u64(std::uint64_t value, int width);

std::string bits_to_string(std::span<const std::uint8_t> bits);
Bits bits_from_string(const std::string& s);

}  // namespace ppp
