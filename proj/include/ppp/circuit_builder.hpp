#pragma once

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "ppp/bigint.hpp"
#include "ppp/circuit.hpp"

namespace ppp {

// Wires of a little-endian binary number: word[0] is the 2^0 bit. Circuit-level
// input/output bit strings stay most-significant-first; the converters below
// are the only crossing points.
using Word = std::vector<int>;

// Emits combinational circuits over the five binary kinds. Gates fed constant
// wires are folded, so gadgets built from partially-constant operands stay
// small.
class CircuitBuilder {
 public:
  explicit CircuitBuilder(int num_inputs);

  int input(int i) const;
  int num_inputs() const { return circuit_.num_inputs; }

  int emit(GateKind k, int a, int b);
  int zero();
  int one();
  int const_bit(bool b) { return b ? one() : zero(); }
  int lnot(int a) { return emit(GateKind::Nand, a, a); }
  int land(int a, int b) { return emit(GateKind::And, a, b); }
  int lor(int a, int b) { return emit(GateKind::Or, a, b); }
  int lxor(int a, int b) { return emit(GateKind::Xor, a, b); }
  int mux_bit(int sel, int a, int b);  // sel ? a : b

  Word word_const(const Int& v, int width);
  // Wires holding a number most-significant-first (e.g. circuit inputs) -> Word.
  Word word_from_msb(std::span<const int> wires) const;
  std::vector<int> word_to_msb(const Word& w) const;

  Word truncate(Word w, int width) const;
  Word zero_extend(const Word& w, int width);

  // (a + b) mod 2^out_width
  Word add(const Word& a, const Word& b, int out_width);
  Word add_const(const Word& a, const Int& c, int out_width);
  // (a - b) mod 2^out_width; exact when a >= b and the difference fits
  Word sub_wrap(const Word& a, const Word& b, int out_width);
  Word sub_const_wrap(const Word& a, const Int& c, int out_width);
  Word const_sub_wrap(const Int& c, const Word& a, int out_width);

  int geq(const Word& a, const Word& b);  // [a >= b]
  int geq_const(const Word& a, const Int& c);
  int equal_const(const Word& a, const Int& c);

  Word mux(int sel, const Word& a, const Word& b);  // sel ? a : b

  // (acc + c*bit) mod m for acc in [0, m); bit truncation when m is a power of
  // two, compare-and-subtract otherwise.
  Word cond_add_const_mod(const Word& acc, const Int& c, const Int& m, int bit);

  // sum_i constants[i] * operands[i] mod m, as a width(m-1) word
  Word dot_mod(std::span<const Int> constants, std::span<const Word> operands, const Int& m);

  // (init + sum_i constants[i] * bit_i) mod m over single-bit operands
  Word dot_bits_mod(std::span<const Int> constants, std::span<const int> bits, const Int& m,
                    const Int& init);

  Word mul(const Word& a, const Word& b, int out_width);
  std::pair<Word, Word> divmod_const(const Word& a, const Int& c);
  Word mod_const_word(const Word& a, const Int& c) { return divmod_const(a, c).second; }
  Word abs_diff_const(const Word& a, const Int& y);

  // Splices `sub` into this circuit with its inputs driven by `sub_inputs`;
  // returns the wires carrying sub's outputs. Id collapses to its predecessor,
  // Not becomes Nand(x, x), Const1 becomes the shared one() wire, so the host
  // stays in the binary basis.
  std::vector<int> embed(const Circuit& sub, std::span<const int> sub_inputs);

  Circuit build(std::span<const int> output_wires) const;

  static int width_for(const Int& max_value);  // bits to hold values in [0, max_value]

 private:
  std::optional<bool> known(int wire) const;

  Circuit circuit_;
  std::vector<std::int8_t> known_;  // -1 unknown, 0/1 constant
  int zero_ = -1;
  int one_ = -1;
};

// Standalone gadget circuits. Numbers cross the interface most-significant-
// first; operand i of dot_product_mod occupies inputs [i*width, (i+1)*width).
Circuit gadget_dot_product_mod(std::span<const Int> constants, int width, const Int& q);
Circuit gadget_mixed_radix_index(std::span<const Int> radices);
Circuit gadget_compare_const(int width, const Int& c);
Circuit gadget_mux(int width);  // inputs: sel, a, b; output a when sel=1
Circuit gadget_abs_diff(const Int& y, int width);
Circuit gadget_mod_const(int width, const Int& c);

}  // namespace ppp
