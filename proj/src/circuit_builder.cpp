#include "ppp/circuit_builder.hpp"

#include <algorithm>

namespace ppp {

CircuitBuilder::CircuitBuilder(int num_inputs) {
  if (num_inputs < 1) throw Error("CircuitBuilder: needs at least one input");
  circuit_.num_inputs = num_inputs;
  known_.assign(num_inputs, -1);
}

int CircuitBuilder::input(int i) const {
  if (i < 0 || i >= circuit_.num_inputs) throw Error("CircuitBuilder: input out of range");
  return i;
}

std::optional<bool> CircuitBuilder::known(int wire) const {
  if (known_[wire] < 0) return std::nullopt;
  return known_[wire] != 0;
}

int CircuitBuilder::emit(GateKind k, int a, int b) {
  if (!gate_kind_is_binary(k)) throw Error("CircuitBuilder: binary kinds only");
  const auto ka = known(a);
  const auto kb = known(b);
  auto fold = [&](bool va, bool vb) {
    switch (k) {
      case GateKind::And: return va && vb;
      case GateKind::Or: return va || vb;
      case GateKind::Xor: return va != vb;
      case GateKind::Nand: return !(va && vb);
      case GateKind::Nor: return !(va || vb);
      default: throw Error("unreachable");
    }
  };
  if (ka && kb) return const_bit(fold(*ka, *kb));
  if (ka || kb) {
    const bool v = ka ? *ka : *kb;
    const int other = ka ? b : a;
    switch (k) {
      case GateKind::And:
        if (!v) return zero();
        return other;
      case GateKind::Or:
        if (v) return one();
        return other;
      case GateKind::Xor:
        if (!v) return other;
        break;  // Not(other), no shortcut wire
      case GateKind::Nand:
        if (!v) return one();
        break;
      case GateKind::Nor:
        if (v) return zero();
        break;
      default: break;
    }
  }
  if (a == b) {
    switch (k) {
      case GateKind::And:
      case GateKind::Or: return a;
      default: break;
    }
  }
  circuit_.gates.push_back({k, a, b});
  known_.push_back(-1);
  return circuit_.num_nodes() - 1;
}

int CircuitBuilder::zero() {
  if (zero_ < 0) {
    circuit_.gates.push_back({GateKind::Xor, 0, 0});
    known_.push_back(0);
    zero_ = circuit_.num_nodes() - 1;
  }
  return zero_;
}

int CircuitBuilder::one() {
  if (one_ < 0) {
    const int z = zero();
    circuit_.gates.push_back({GateKind::Nor, z, z});
    known_.push_back(1);
    one_ = circuit_.num_nodes() - 1;
  }
  return one_;
}

int CircuitBuilder::mux_bit(int sel, int a, int b) {
  // b ^ (sel & (a ^ b))
  return lxor(b, land(sel, lxor(a, b)));
}

Word CircuitBuilder::word_const(const Int& v, int width) {
  if (v < 0 || (v >> width) != 0) throw Error("word_const: value does not fit");
  Word w(width);
  for (int i = 0; i < width; ++i) w[i] = const_bit(boost::multiprecision::bit_test(v, i));
  return w;
}

Word CircuitBuilder::word_from_msb(std::span<const int> wires) const {
  Word w(wires.rbegin(), wires.rend());
  return w;
}

std::vector<int> CircuitBuilder::word_to_msb(const Word& w) const {
  return std::vector<int>(w.rbegin(), w.rend());
}

Word CircuitBuilder::truncate(Word w, int width) const {
  if (static_cast<int>(w.size()) < width) throw Error("truncate: word too narrow");
  w.resize(width);
  return w;
}

Word CircuitBuilder::zero_extend(const Word& w, int width) {
  Word out = w;
  while (static_cast<int>(out.size()) < width) out.push_back(zero());
  return out;
}

Word CircuitBuilder::add(const Word& a, const Word& b, int out_width) {
  Word out;
  out.reserve(out_width);
  int carry = -1;
  for (int i = 0; i < out_width; ++i) {
    const int ai = i < static_cast<int>(a.size()) ? a[i] : zero();
    const int bi = i < static_cast<int>(b.size()) ? b[i] : zero();
    if (carry < 0) {
      out.push_back(lxor(ai, bi));
      carry = land(ai, bi);
    } else {
      const int axb = lxor(ai, bi);
      out.push_back(lxor(axb, carry));
      carry = lor(land(ai, bi), land(carry, axb));
    }
  }
  return out;
}

Word CircuitBuilder::add_const(const Word& a, const Int& c, int out_width) {
  return add(a, word_const(mod_floor(c, Int(1) << out_width), out_width), out_width);
}

Word CircuitBuilder::sub_wrap(const Word& a, const Word& b, int out_width) {
  // a + ~b + 1 over out_width bits
  Word nb;
  nb.reserve(out_width);
  for (int i = 0; i < out_width; ++i) {
    const int bi = i < static_cast<int>(b.size()) ? b[i] : zero();
    nb.push_back(lnot(bi));
  }
  Word sum = add(a, nb, out_width);
  return add_const(sum, 1, out_width);
}

Word CircuitBuilder::sub_const_wrap(const Word& a, const Int& c, int out_width) {
  const Int m = Int(1) << out_width;
  return add_const(a, mod_floor(-c, m), out_width);
}

Word CircuitBuilder::const_sub_wrap(const Int& c, const Word& a, int out_width) {
  Word w = word_const(mod_floor(c, Int(1) << out_width), out_width);
  return sub_wrap(w, a, out_width);
}

int CircuitBuilder::geq(const Word& a, const Word& b) {
  // no-borrow test of a - b
  const int width = static_cast<int>(std::max(a.size(), b.size()));
  int borrow = zero();
  for (int i = 0; i < width; ++i) {
    const int ai = i < static_cast<int>(a.size()) ? a[i] : zero();
    const int bi = i < static_cast<int>(b.size()) ? b[i] : zero();
    // borrow' = (~a & b) | (borrow & ~(a ^ b))
    const int axb = lxor(ai, bi);
    borrow = lor(land(lnot(ai), bi), land(borrow, lnot(axb)));
  }
  return lnot(borrow);
}

int CircuitBuilder::geq_const(const Word& a, const Int& c) {
  if (c <= 0) return one();
  const int width = static_cast<int>(a.size());
  if ((c >> width) != 0) return zero();
  return geq(a, word_const(c, width));
}

int CircuitBuilder::equal_const(const Word& a, const Int& c) {
  if (c < 0 || (c >> a.size()) != 0) return zero();
  int acc = one();
  for (std::size_t i = 0; i < a.size(); ++i) {
    const int want = boost::multiprecision::bit_test(c, static_cast<unsigned>(i)) ? a[i] : lnot(a[i]);
    acc = land(acc, want);
  }
  return acc;
}

Word CircuitBuilder::mux(int sel, const Word& a, const Word& b) {
  if (a.size() != b.size()) throw Error("mux: width mismatch");
  Word out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = mux_bit(sel, a[i], b[i]);
  return out;
}

Word CircuitBuilder::cond_add_const_mod(const Word& acc, const Int& c, const Int& m, int bit) {
  if (m < 2) throw Error("cond_add_const_mod: modulus < 2");
  const int width = width_for(m - 1);
  const Int cr = mod_floor(c, m);
  Word cur = zero_extend(acc, width);
  if (cr == 0) return cur;
  if ((m & (m - 1)) == 0) {
    // power of two: wrap-around is the reduction
    Word added = add_const(cur, cr, width);
    return mux(bit, added, cur);
  }
  Word wide = add_const(zero_extend(cur, width + 1), cr, width + 1);
  const int over = geq_const(wide, m);
  Word reduced = mux(over, sub_const_wrap(wide, m, width + 1), wide);
  return mux(bit, truncate(reduced, width), cur);
}

Word CircuitBuilder::dot_mod(std::span<const Int> constants, std::span<const Word> operands,
                             const Int& m) {
  if (constants.size() != operands.size()) throw Error("dot_mod: arity mismatch");
  const int width = width_for(m - 1);
  Word acc = word_const(0, width);
  for (std::size_t i = 0; i < constants.size(); ++i) {
    Int weight = mod_floor(constants[i], m);
    for (std::size_t t = 0; t < operands[i].size(); ++t) {
      acc = cond_add_const_mod(acc, (weight << t) % m, m, operands[i][t]);
    }
  }
  return acc;
}

Word CircuitBuilder::dot_bits_mod(std::span<const Int> constants, std::span<const int> bits,
                                  const Int& m, const Int& init) {
  if (constants.size() != bits.size()) throw Error("dot_bits_mod: arity mismatch");
  const int width = width_for(m - 1);
  Word acc = word_const(mod_floor(init, m), width);
  for (std::size_t i = 0; i < constants.size(); ++i) {
    acc = cond_add_const_mod(acc, constants[i], m, bits[i]);
  }
  return acc;
}

Word CircuitBuilder::mul(const Word& a, const Word& b, int out_width) {
  Word acc = word_const(0, out_width);
  for (std::size_t i = 0; i < b.size() && i < static_cast<std::size_t>(out_width); ++i) {
    Word term(out_width, zero());
    for (std::size_t j = 0; j < a.size() && i + j < static_cast<std::size_t>(out_width); ++j) {
      term[i + j] = land(a[j], b[i]);
    }
    acc = add(acc, term, out_width);
  }
  return acc;
}

std::pair<Word, Word> CircuitBuilder::divmod_const(const Word& a, const Int& c) {
  if (c < 1) throw Error("divmod_const: divisor < 1");
  if (c == 1) return {a, Word{zero()}};
  const int rw = width_for(c - 1);
  Word rem = word_const(0, rw);
  Word quot(a.size());
  for (int i = static_cast<int>(a.size()) - 1; i >= 0; --i) {
    Word shifted;
    shifted.reserve(rw + 1);
    shifted.push_back(a[i]);
    shifted.insert(shifted.end(), rem.begin(), rem.end());
    const int over = geq_const(shifted, c);
    Word reduced = mux(over, sub_const_wrap(shifted, c, rw + 1), shifted);
    rem = truncate(reduced, rw);
    quot[i] = over;
  }
  return {quot, rem};
}

Word CircuitBuilder::abs_diff_const(const Word& a, const Int& y) {
  const int width = static_cast<int>(a.size());
  const int over = geq_const(a, y);
  Word d1 = sub_const_wrap(a, y, width);
  Word d2 = const_sub_wrap(y, a, width);
  return mux(over, d1, d2);
}

std::vector<int> CircuitBuilder::embed(const Circuit& sub, std::span<const int> sub_inputs) {
  require_valid(sub, "embed");
  if (static_cast<int>(sub_inputs.size()) != sub.num_inputs)
    throw Error("embed: wrong number of input wires");
  std::vector<int> remap(sub.num_nodes());
  std::copy(sub_inputs.begin(), sub_inputs.end(), remap.begin());
  for (int t = 0; t < sub.size(); ++t) {
    const Gate& g = sub.gates[t];
    int wire;
    switch (g.kind) {
      case GateKind::Const1: wire = one(); break;
      case GateKind::Id: wire = remap[g.pred1]; break;
      case GateKind::Not: wire = lnot(remap[g.pred1]); break;
      default: wire = emit(g.kind, remap[g.pred1], remap[g.pred2]);
    }
    remap[sub.num_inputs + t] = wire;
  }
  std::vector<int> out;
  out.reserve(sub.outputs.size());
  for (int o : sub.outputs) out.push_back(remap[o]);
  return out;
}

Circuit CircuitBuilder::build(std::span<const int> output_wires) const {
  Circuit out = circuit_;
  out.outputs.assign(output_wires.begin(), output_wires.end());
  require_valid(out, "CircuitBuilder::build");
  return out;
}

int CircuitBuilder::width_for(const Int& max_value) {
  if (max_value < 0) throw Error("width_for: negative");
  return std::max(1, bit_width_int(max_value));
}

Circuit gadget_dot_product_mod(std::span<const Int> constants, int width, const Int& q) {
  if (q < 2) throw Error("dot_product_mod: q must be >= 2");
  if (width < 1) throw Error("dot_product_mod: zero-width operand");
  if (constants.empty()) throw Error("dot_product_mod: no operands");
  CircuitBuilder b(static_cast<int>(constants.size()) * width);
  std::vector<Word> ops;
  ops.reserve(constants.size());
  for (std::size_t i = 0; i < constants.size(); ++i) {
    std::vector<int> msb(width);
    for (int j = 0; j < width; ++j) msb[j] = b.input(static_cast<int>(i) * width + j);
    ops.push_back(b.word_from_msb(msb));
  }
  Word acc = b.dot_mod(constants, ops, q);
  return b.build(b.word_to_msb(acc));
}

Circuit gadget_mixed_radix_index(std::span<const Int> radices) {
  if (radices.empty()) throw Error("mixed_radix_index: no radices");
  Int total = 1;
  std::vector<int> widths;
  for (const Int& r : radices) {
    if (r <= 0) throw Error("mixed_radix_index: radices must be positive");
    total *= r;
    widths.push_back(CircuitBuilder::width_for(r - 1));
  }
  int in_bits = 0;
  for (int w : widths) in_bits += w;
  CircuitBuilder b(in_bits);
  const int out_width = CircuitBuilder::width_for(total - 1);
  Word acc = b.word_const(0, out_width);
  int offset = 0;
  for (std::size_t i = 0; i < radices.size(); ++i) {
    Int weight = 1;
    for (std::size_t j = i + 1; j < radices.size(); ++j) weight *= radices[j];
    std::vector<int> msb(widths[i]);
    for (int j = 0; j < widths[i]; ++j) msb[j] = b.input(offset + j);
    offset += widths[i];
    Word coord = b.word_from_msb(msb);
    for (std::size_t t = 0; t < coord.size(); ++t) {
      Word term = b.word_const(0, out_width);
      const Int shifted = weight << t;
      if ((shifted >> out_width) == 0) term = b.word_const(shifted, out_width);
      // out-of-range coordinates may wrap; indices are only defined on the box
      Word added = b.add(acc, term, out_width);
      acc = b.mux(coord[t], added, acc);
    }
  }
  return b.build(b.word_to_msb(acc));
}

Circuit gadget_compare_const(int width, const Int& c) {
  if (width < 1) throw Error("compare_const: zero width");
  CircuitBuilder b(width);
  std::vector<int> msb(width);
  for (int j = 0; j < width; ++j) msb[j] = b.input(j);
  const int r = b.geq_const(b.word_from_msb(msb), c);
  const int out[1] = {r};
  return b.build(out);
}

Circuit gadget_mux(int width) {
  if (width < 1) throw Error("mux: zero width");
  CircuitBuilder b(1 + 2 * width);
  std::vector<int> a(width), c(width);
  for (int j = 0; j < width; ++j) {
    a[j] = b.input(1 + j);
    c[j] = b.input(1 + width + j);
  }
  Word sel_a = b.word_from_msb(a);
  Word sel_b = b.word_from_msb(c);
  Word out = b.mux(b.input(0), sel_a, sel_b);
  return b.build(b.word_to_msb(out));
}

Circuit gadget_abs_diff(const Int& y, int width) {
  if (width < 1) throw Error("abs_diff: zero width");
  CircuitBuilder b(width);
  std::vector<int> msb(width);
  for (int j = 0; j < width; ++j) msb[j] = b.input(j);
  Word out = b.abs_diff_const(b.word_from_msb(msb), y);
  return b.build(b.word_to_msb(out));
}

Circuit gadget_mod_const(int width, const Int& c) {
  if (width < 1) throw Error("mod_const: zero width");
  CircuitBuilder b(width);
  std::vector<int> msb(width);
  for (int j = 0; j < width; ++j) msb[j] = b.input(j);
  Word out = b.mod_const_word(b.word_from_msb(msb), c);
  return b.build(b.word_to_msb(out));
}

}  // namespace ppp
