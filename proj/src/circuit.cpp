#include "ppp/circuit.hpp"

#include <algorithm>

namespace ppp {

const char* gate_kind_name(GateKind k) {
  switch (k) {
    case GateKind::Id: return "ID";
    case GateKind::Not: return "NOT";
    case GateKind::And: return "AND";
    case GateKind::Or: return "OR";
    case GateKind::Xor: return "XOR";
    case GateKind::Nand: return "NAND";
    case GateKind::Nor: return "NOR";
    case GateKind::Const1: return "CONST1";
  }
  throw Error("unknown gate kind");
}

GateKind gate_kind_from_name(const std::string& name) {
  if (name == "ID") return GateKind::Id;
  if (name == "NOT") return GateKind::Not;
  if (name == "AND") return GateKind::And;
  if (name == "OR") return GateKind::Or;
  if (name == "XOR") return GateKind::Xor;
  if (name == "NAND") return GateKind::Nand;
  if (name == "NOR") return GateKind::Nor;
  if (name == "CONST1") return GateKind::Const1;
  throw Error("unknown gate kind: " + name);
}

bool gate_kind_is_binary(GateKind k) {
  return k == GateKind::And || k == GateKind::Or || k == GateKind::Xor || k == GateKind::Nand ||
         k == GateKind::Nor;
}

static std::uint8_t apply_gate(GateKind k, std::uint8_t a, std::uint8_t b) {
  switch (k) {
    case GateKind::Id: return a;
    case GateKind::Not: return a ^ 1;
    case GateKind::And: return a & b;
    case GateKind::Or: return a | b;
    case GateKind::Xor: return a ^ b;
    case GateKind::Nand: return (a & b) ^ 1;
    case GateKind::Nor: return (a | b) ^ 1;
    case GateKind::Const1: return 1;
  }
  throw Error("unknown gate kind");
}

Bits evaluate_with_scratch(const Circuit& c, std::span<const std::uint8_t> input, Bits& values) {
  if (static_cast<int>(input.size()) != c.num_inputs)
    throw Error("evaluate: input has " + std::to_string(input.size()) + " bits, circuit expects " +
                std::to_string(c.num_inputs));
  values.resize(c.num_nodes());
  std::copy(input.begin(), input.end(), values.begin());
  for (int t = 0; t < c.size(); ++t) {
    const Gate& g = c.gates[t];
    const std::uint8_t a = g.pred1 >= 0 ? values[g.pred1] : 0;
    const std::uint8_t b = g.pred2 >= 0 ? values[g.pred2] : 0;
    values[c.num_inputs + t] = apply_gate(g.kind, a, b);
  }
  Bits out(c.outputs.size());
  for (std::size_t i = 0; i < c.outputs.size(); ++i) out[i] = values[c.outputs[i]];
  return out;
}

Bits evaluate(const Circuit& c, std::span<const std::uint8_t> input) {
  Bits scratch;
  return evaluate_with_scratch(c, input, scratch);
}

Violation validate(const Circuit& c) {
  auto fail = [](int node, std::string msg) {
    return Violation{false, node, std::move(msg)};
  };
  if (c.num_inputs < 0) return fail(-1, "negative input count");
  for (int t = 0; t < c.size(); ++t) {
    const Gate& g = c.gates[t];
    const int id = c.num_inputs + t;
    const bool unary = g.kind == GateKind::Id || g.kind == GateKind::Not;
    const bool nullary = g.kind == GateKind::Const1;
    if (nullary) {
      if (g.pred1 != -1 || g.pred2 != -1) return fail(id, "CONST1 with predecessors");
      continue;
    }
    if (g.pred1 < 0 || g.pred1 >= id) return fail(id, "pred1 not an earlier node (cycle)");
    if (unary) {
      if (g.pred2 != -1) return fail(id, "unary gate with two predecessors");
    } else {
      if (g.pred2 < 0 || g.pred2 >= id) return fail(id, "pred2 not an earlier node (cycle)");
    }
  }
  for (int out : c.outputs) {
    if (out < 0 || out >= c.num_nodes()) return fail(out, "bad output id");
  }
  return Violation{};
}

void require_valid(const Circuit& c, const char* where) {
  Violation v = validate(c);
  if (!v.ok) throw Error(std::string(where) + ": invalid circuit at node " +
                         std::to_string(v.node) + ": " + v.message);
}

Circuit normalize_indegree2(const Circuit& c) {
  require_valid(c, "normalize_indegree2");
  Circuit out;
  out.num_inputs = c.num_inputs;
  out.gates.reserve(c.gates.size());
  for (const Gate& g : c.gates) {
    switch (g.kind) {
      case GateKind::Not:
        out.gates.push_back({GateKind::Nand, g.pred1, g.pred1});
        break;
      case GateKind::Id:
        out.gates.push_back({GateKind::Or, g.pred1, g.pred1});
        break;
      case GateKind::Const1:
        throw Error("normalize_indegree2: CONST1 unsupported; use rewrite_to_xor_or_basis");
      default:
        out.gates.push_back(g);
    }
  }
  out.outputs = c.outputs;
  return out;
}

Circuit rewrite_to_xor_or_basis(const Circuit& c) {
  require_valid(c, "rewrite_to_xor_or_basis");
  Circuit out;
  out.num_inputs = c.num_inputs;
  std::vector<int> remap(c.num_nodes());
  for (int i = 0; i < c.num_inputs; ++i) remap[i] = i;
  int one = -1;
  auto emit = [&out](GateKind k, int a, int b) {
    out.gates.push_back({k, a, b});
    return out.num_inputs + out.size() - 1;
  };
  auto const1 = [&]() {
    if (one < 0) one = emit(GateKind::Const1, -1, -1);
    return one;
  };
  for (int t = 0; t < c.size(); ++t) {
    const Gate& g = c.gates[t];
    const int a = g.pred1 >= 0 ? remap[g.pred1] : -1;
    const int b = g.pred2 >= 0 ? remap[g.pred2] : -1;
    int node;
    switch (g.kind) {
      case GateKind::Xor: node = emit(GateKind::Xor, a, b); break;
      case GateKind::Or: node = emit(GateKind::Or, a, b); break;
      case GateKind::Const1: node = const1(); break;
      case GateKind::Id: node = emit(GateKind::Or, a, a); break;
      case GateKind::Not: node = emit(GateKind::Xor, a, const1()); break;
      case GateKind::Nor: node = emit(GateKind::Xor, emit(GateKind::Or, a, b), const1()); break;
      case GateKind::Nand:
        node = emit(GateKind::Or, emit(GateKind::Xor, a, const1()), emit(GateKind::Xor, b, const1()));
        break;
      case GateKind::And: {
        const int nor = emit(GateKind::Or, emit(GateKind::Xor, a, const1()),
                             emit(GateKind::Xor, b, const1()));
        node = emit(GateKind::Xor, nor, const1());
        break;
      }
      default: throw Error("rewrite_to_xor_or_basis: unexpected kind");
    }
    remap[c.num_inputs + t] = node;
  }
  out.outputs.reserve(c.outputs.size());
  for (int o : c.outputs) {
    if (o < c.num_inputs) {
      out.outputs.push_back(o);
    } else {
      out.outputs.push_back(remap[o]);
    }
  }
  return out;
}

Circuit eliminate_const1(const Circuit& c) {
  require_valid(c, "eliminate_const1");
  for (const Gate& g : c.gates) {
    if (g.kind != GateKind::Xor && g.kind != GateKind::Or && g.kind != GateKind::Const1)
      throw Error("eliminate_const1: circuit not in {XOR, OR, CONST1} basis");
  }
  if (c.num_inputs < 1) throw Error("eliminate_const1: needs at least one input");
  Circuit out;
  out.num_inputs = c.num_inputs;
  // z = x_1 v x_2 v ... v x_n, as a chain prepended before the original gates
  out.gates.push_back({GateKind::Or, 0, 0});
  for (int i = 1; i < c.num_inputs; ++i) {
    out.gates.push_back({GateKind::Or, out.num_inputs + out.size() - 1, i});
  }
  const int z = out.num_inputs + out.size() - 1;
  std::vector<int> remap(c.num_nodes());
  for (int i = 0; i < c.num_inputs; ++i) remap[i] = i;
  for (int t = 0; t < c.size(); ++t) {
    const Gate& g = c.gates[t];
    if (g.kind == GateKind::Const1) {
      remap[c.num_inputs + t] = z;
      continue;
    }
    out.gates.push_back({g.kind, remap[g.pred1], remap[g.pred2]});
    remap[c.num_inputs + t] = out.num_inputs + out.size() - 1;
  }
  out.outputs.reserve(c.outputs.size());
  for (int o : c.outputs) out.outputs.push_back(remap[o]);
  return out;
}

Circuit append_nonzero_flag(const Circuit& c) {
  require_valid(c, "append_nonzero_flag");
  for (const Gate& g : c.gates) {
    if (g.kind != GateKind::Xor && g.kind != GateKind::Or)
      throw Error("append_nonzero_flag: circuit not in {XOR, OR} basis");
  }
  if (c.num_inputs < 1) throw Error("append_nonzero_flag: needs at least one input");
  Circuit out = c;
  out.gates.push_back({GateKind::Or, 0, 0});
  for (int i = 1; i < c.num_inputs; ++i) {
    out.gates.push_back({GateKind::Or, out.num_inputs + out.size() - 1, i});
  }
  out.outputs.push_back(out.num_inputs + out.size() - 1);
  return out;
}

Int bc(std::span<const std::uint8_t> bits) {
  Int v = 0;
  for (std::uint8_t b : bits) {
    v <<= 1;
    v |= Int(b & 1);
  }
  return v;
}

Bits bd(const Int& value, int width) {
  if (value < 0) throw Error("bd: negative value");
  if (width < 0 || (value >> width) != 0)
    throw Error("bd: value does not fit in " + std::to_string(width) + " bits");
  Bits out(width);
  for (int i = 0; i < width; ++i) {
    out[width - 1 - i] = static_cast<std::uint8_t>(boost::multiprecision::bit_test(value, i));
  }
  return out;
}

std::uint64_t bc_u64(std::span<const std::uint8_t> bits) {
  if (bits.size() > 64) throw Error("bc_u64: too wide");
  std::uint64_t v = 0;
  for (std::uint8_t b : bits) v = (v << 1) | (b & 1);
  return v;
}

Bits bd_u64(std::uint64_t value, int width) {
  if (width < 64 && (value >> width) != 0) throw Error("bd_u64: value does not fit");
  Bits out(width);
  for (int i = 0; i < width; ++i) out[width - 1 - i] = (value >> i) & 1;
  return out;
}

std::string bits_to_string(std::span<const std::uint8_t> bits) {
  std::string s(bits.size(), '0');
  for (std::size_t i = 0; i < bits.size(); ++i) s[i] = bits[i] ? '1' : '0';
  return s;
}

Bits bits_from_string(const std::string& s) {
  Bits out(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] != '0' && s[i] != '1') throw Error("bits_from_string: non-binary character");
    out[i] = s[i] == '1';
  }
  return out;
}

}  // namespace ppp
