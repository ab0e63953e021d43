#include "ppp/reductions.hpp"

#include <algorithm>
#include <numeric>

#include "ppp/circuit_builder.hpp"

namespace ppp {

int CsisFromCircuitLayout::d() const {
  return std::accumulate(block_sizes.begin(), block_sizes.end(), 0);
}

Bits CsisFromCircuitLayout::input_bits(const Bits& witness) const {
  if (static_cast<int>(witness.size()) != m())
    throw Error("layout: witness has wrong length");
  Bits x(n);
  for (int j = 0; j < n; ++j) x[j] = witness[input_col(j)];
  return x;
}

namespace {

// Redirects outputs that point at input nodes through Or(x, x) wrappers so
// every block has an output gate.
Circuit wrap_input_outputs(const Circuit& c) {
  Circuit out = c;
  for (int& o : out.outputs) {
    if (o < c.num_inputs) {
      out.gates.push_back({GateKind::Or, o, o});
      o = out.num_inputs + out.size() - 1;
    }
  }
  return out;
}

std::vector<int> cone_of(const Circuit& c, int output_gate) {
  std::vector<char> mark(c.num_nodes(), 0);
  std::vector<int> stack{output_gate};
  mark[output_gate] = 1;
  while (!stack.empty()) {
    const int node = stack.back();
    stack.pop_back();
    if (node < c.num_inputs) continue;
    const Gate& g = c.gates[node - c.num_inputs];
    for (int pred : {g.pred1, g.pred2}) {
      if (pred >= c.num_inputs && !mark[pred]) {
        mark[pred] = 1;
        stack.push_back(pred);
      }
    }
  }
  std::vector<int> cone;
  for (int id = c.num_inputs; id < c.num_nodes(); ++id) {
    if (mark[id]) cone.push_back(id);
  }
  return cone;  // ascending node id = topological order of the cone
}

struct GateEquation {
  Int b;
  bool value_first;  // xor places the value variable on the gadget-1 column
  Int pred_coeff;    // coefficient of both predecessor value columns
};

GateEquation gate_equation(GateKind kind) {
  switch (kind) {
    case GateKind::Nand: return {2, false, -1};
    case GateKind::Nor: return {3, false, -1};
    case GateKind::Xor: return {0, true, -1};
    case GateKind::And: return {0, false, -1};
    case GateKind::Or: return {0, false, 1};
    default: throw Error("encode_circuit_csis: gate kind has no modular equation");
  }
}

}  // namespace

CircuitCsisEncoding encode_circuit_csis(const Circuit& circuit, int ell) {
  require_valid(circuit, "encode_circuit_csis");
  if (ell < 2) throw Error("encode_circuit_csis: ell must be >= 2");
  for (const Gate& g : circuit.gates) {
    if (!gate_kind_is_binary(g.kind))
      throw Error("encode_circuit_csis: circuit not normalized to the five binary kinds");
  }
  const Circuit c = wrap_input_outputs(circuit);
  const int n = c.num_inputs;
  const int n_out = c.num_outputs();
  if (n < 1 || n_out < 1) throw Error("encode_circuit_csis: empty circuit");
  const Int q = Int(1) << ell;

  CsisFromCircuitLayout layout;
  layout.n = n;
  layout.n_out = n_out;
  layout.ell = ell;

  std::vector<std::vector<int>> cones(n_out);
  for (int i = 0; i < n_out; ++i) {
    cones[i] = cone_of(c, c.outputs[i]);
    layout.block_sizes.push_back(static_cast<int>(cones[i].size()));
  }
  const int d = layout.d();
  const int m = layout.m();

  IntMat g_entries = IntMat::Zero(d, m);
  IntVec b(d);
  IntMat a_entries = IntMat::Zero(n_out, m);

  int row_base = 0;
  for (int i = 0; i < n_out; ++i) {
    const std::vector<int>& cone = cones[i];
    const int sz = static_cast<int>(cone.size());
    // reverse topological: position 0 is the output gate
    std::vector<int> pos_of(c.num_nodes(), -1);
    for (int p = 0; p < sz; ++p) pos_of[cone[sz - 1 - p]] = p;
    auto value_col = [&](int node) {
      const int p = pos_of[node];
      const bool value_first = c.gates[node - c.num_inputs].kind == GateKind::Xor;
      return ell * (row_base + p) + (value_first ? 0 : 1);
    };
    for (int p = 0; p < sz; ++p) {
      const int node = cone[sz - 1 - p];
      const Gate& gate = c.gates[node - c.num_inputs];
      const GateEquation eq = gate_equation(gate.kind);
      const int row = row_base + p;
      for (int j = 0; j < ell; ++j) g_entries(row, ell * row + j) = Int(1) << j;
      for (int pred : {gate.pred1, gate.pred2}) {
        const int col = pred < n ? layout.input_col(pred) : value_col(pred);
        g_entries(row, col) += eq.pred_coeff;
      }
      b(row) = eq.b;
    }
    layout.k_cols.push_back(value_col(c.outputs[i]));
    a_entries(i, layout.k_cols.back()) = 1;
    row_base += sz;
  }
  // doubling blocks on the auxiliary input columns
  for (int t = 2; t <= ell; ++t) {
    for (int i = 0; i < n_out; ++i) {
      a_entries(i, ell * d + n * (t - 1) + i) = Int(1) << (t - 1);
    }
  }

  CircuitCsisEncoding enc{
      make_binary_invertible(make_zq_matrix(q, std::move(g_entries)), GadgetShape{d, ell, ell * n}),
      make_zq_matrix(q, std::move(a_entries)), std::move(b), std::move(layout)};
  return enc;
}

PigeonholeToCsis reduce_pigeonhole_to_csis(const PigeonholeCircuitInstance& src, int ell) {
  check_instance(Instance(src));
  CircuitCsisEncoding enc = encode_circuit_csis(src.circuit, ell);
  CsisInstance target{std::move(enc.a), std::move(enc.g), std::move(enc.b), ell};
  check_instance(Instance(target));
  return PigeonholeToCsis{std::move(target), std::move(enc.layout)};
}

Solution back_pigeonhole_to_csis(const CsisFromCircuitLayout& layout, const Solution& target_sol) {
  if (target_sol.kind == Solution::Kind::Preimage) {
    return Solution::preimage(layout.input_bits(target_sol.x));
  }
  if (target_sol.kind == Solution::Kind::CollisionPair) {
    Bits x1 = layout.input_bits(target_sol.x);
    Bits x2 = layout.input_bits(target_sol.y);
    if (x1 == x2)
      throw Error("back_pigeonhole_to_csis: witnesses share input bits; uniqueness violated");
    return Solution::collision_pair(std::move(x1), std::move(x2));
  }
  throw Error("back_pigeonhole_to_csis: unexpected solution kind");
}

namespace {

// Wires for the backward-substitution circuit: fills gadget columns from the
// free columns, mirroring backsolve exactly.
std::vector<int> backsolve_wires(CircuitBuilder& bld, const ZqMatrix& g, const GadgetShape& shape,
                                 const IntVec* b, std::vector<int> free_wires) {
  const Int& q = g.q;
  const int d = shape.d;
  const int ell = shape.ell;
  std::vector<int> wires(shape.cols(), -1);
  for (int j = 0; j < shape.k; ++j) wires[d * ell + j] = free_wires[j];
  for (int t = d - 1; t >= 0; --t) {
    std::vector<Int> coeffs;
    std::vector<int> bits;
    for (int c = (t + 1) * ell; c < shape.cols(); ++c) {
      const Int& e = g.entries(t, c);
      if (e == 0) continue;
      coeffs.push_back(q - e);  // subtraction as addition of the negation
      bits.push_back(wires[c]);
    }
    Word val = bld.dot_bits_mod(coeffs, bits, q, b ? (*b)(t) : Int(0));
    for (int j = 0; j < ell; ++j) {
      wires[t * ell + j] = j < static_cast<int>(val.size()) ? val[j] : bld.zero();
    }
  }
  return wires;
}

// One output word per row of a: bd(a . wires mod q), each ell bits.
std::vector<int> matmul_output_wires(CircuitBuilder& bld, const ZqMatrix& a, int ell,
                                     const std::vector<int>& wires) {
  std::vector<int> out;
  for (int r = 0; r < a.rows(); ++r) {
    std::vector<Int> coeffs;
    std::vector<int> bits;
    for (int c = 0; c < a.cols(); ++c) {
      const Int& e = a.entries(r, c);
      if (e == 0) continue;
      coeffs.push_back(e);
      bits.push_back(wires[c]);
    }
    Word val = bld.dot_bits_mod(coeffs, bits, a.q, 0);
    Word padded = bld.zero_extend(val, ell);
    auto msb = bld.word_to_msb(padded);
    out.insert(out.end(), msb.begin(), msb.end());
  }
  return out;
}

}  // namespace

CsisToPigeonhole reduce_csis_to_pigeonhole(const CsisInstance& src) {
  check_instance(Instance(src));
  const int n = src.a.rows();
  const int ell = src.ell;
  const int in_bits = n * ell;
  CircuitBuilder bld(in_bits);
  std::vector<int> free_wires(src.g.shape.k);
  for (int j = 0; j < src.g.shape.k; ++j) {
    free_wires[j] = j < in_bits ? bld.input(j) : bld.zero();
  }
  std::vector<int> wires =
      backsolve_wires(bld, src.g.matrix, src.g.shape, &src.b, std::move(free_wires));
  std::vector<int> outs = matmul_output_wires(bld, src.a, ell, wires);
  PigeonholeCircuitInstance target{bld.build(outs)};
  check_instance(Instance(target));
  return CsisToPigeonhole{std::move(target)};
}

Solution back_csis_to_pigeonhole(const CsisInstance& src, const Solution& target_sol) {
  const int kf = src.g.shape.k;
  const int in_bits = src.a.rows() * src.ell;
  auto witness = [&](const Bits& x) {
    Bits free(kf, 0);
    std::copy(x.begin(), x.end(), free.begin());
    return csis_witness_from_free_part(src, free);
  };
  if (target_sol.kind == Solution::Kind::Preimage) {
    if (static_cast<int>(target_sol.x.size()) != in_bits)
      throw Error("back_csis_to_pigeonhole: wrong preimage width");
    return Solution::preimage(witness(target_sol.x));
  }
  if (target_sol.kind == Solution::Kind::CollisionPair) {
    return Solution::collision_pair(witness(target_sol.x), witness(target_sol.y));
  }
  throw Error("back_csis_to_pigeonhole: unexpected solution kind");
}

PigeonholeToBlichfeldt reduce_pigeonhole_to_blichfeldt(const PigeonholeCircuitInstance& src) {
  check_instance(Instance(src));
  const int n = src.circuit.num_inputs;
  IntMat a = IntMat::Zero(n, 2 * n);
  for (int i = 0; i < n; ++i) a(i, n + i) = 1;
  IntMat basis = qary_basis(make_zq_matrix(2, std::move(a)));
  Circuit value_fn = src.circuit;
  std::vector<int> outputs;
  for (int i = 0; i < n; ++i) outputs.push_back(i);
  outputs.insert(outputs.end(), src.circuit.outputs.begin(), src.circuit.outputs.end());
  value_fn.outputs = std::move(outputs);
  BlichfeldtInstance target{std::move(basis), Int(1) << n, std::move(value_fn)};
  check_instance(Instance(target));
  return PigeonholeToBlichfeldt{std::move(target)};
}

Solution back_pigeonhole_to_blichfeldt(const PigeonholeCircuitInstance& src,
                                       const Solution& target_sol) {
  const int n = src.circuit.num_inputs;
  auto prefix_bits = [&](const IntVec& v) {
    if (v.size() != 2 * n) throw Error("back_pigeonhole_to_blichfeldt: wrong dimension");
    Bits x(n);
    for (int i = 0; i < n; ++i) {
      if (v(i) != 0 && v(i) != 1)
        throw Error("back_pigeonhole_to_blichfeldt: set element is not binary");
      x[i] = static_cast<std::uint8_t>(v(i));
    }
    return x;
  };
  switch (target_sol.kind) {
    case Solution::Kind::LatticePoint: return Solution::preimage(prefix_bits(target_sol.v));
    case Solution::Kind::LatticePair: {
      Bits x1 = prefix_bits(target_sol.v);
      Bits x2 = prefix_bits(target_sol.w);
      if (x1 == x2) throw Error("back_pigeonhole_to_blichfeldt: pair shares its input prefix");
      return Solution::collision_pair(std::move(x1), std::move(x2));
    }
    default:
      throw Error("back_pigeonhole_to_blichfeldt: the constructed set admits no such solution");
  }
}

BlichfeldtToPigeonhole reduce_blichfeldt_to_pigeonhole(const BlichfeldtInstance& src) {
  check_instance(Instance(src));
  BlichfeldtToPigeonhole fwd;
  fwd.det = abs_int(det_exact(src.basis));
  if (src.s < fwd.det) {
    fwd.short_circuit = BlichfeldtToPigeonhole::Short::TrivialZero;
    return fwd;
  }
  if (fwd.det == 1) {
    fwd.short_circuit = BlichfeldtToPigeonhole::Short::DetOne;
    return fwd;
  }
  const int ell = ceil_log2(fwd.det);
  fwd.ell = ell;
  const CosetIndexer ix = make_coset_indexer(src.basis);
  const int n = src.dimension();
  const int w = src.coord_width();
  const int mv = src.value_fn.num_inputs;

  CircuitBuilder bld(ell);
  std::vector<int> x_msb(ell);
  for (int i = 0; i < ell; ++i) x_msb[i] = bld.input(i);
  // value function on the index, padded with zero high bits
  std::vector<int> vin(mv, bld.zero());
  for (int i = 0; i < ell; ++i) vin[mv - ell + i] = x_msb[i];
  std::vector<int> element = bld.embed(src.value_fn, vin);
  // residues (U^{-1} v) mod radices, then their mixed-radix rank
  Word rank = bld.word_const(0, ell);
  std::vector<Int> weights(n);
  {
    Int acc = 1;
    for (int i = n - 1; i >= 0; --i) {
      weights[i] = acc;
      acc *= ix.radices[i];
    }
  }
  for (int i = 0; i < n; ++i) {
    if (ix.radices[i] == 1) continue;  // residue is always zero
    std::vector<Int> coeffs;
    std::vector<int> bits;
    for (int j = 0; j < n; ++j) {
      const Int cj = mod_floor(ix.decomposition.u_inverse(i, j), ix.radices[i]);
      for (int t = 0; t < w; ++t) {
        coeffs.push_back(mod_floor(cj << (w - 1 - t), ix.radices[i]));
        bits.push_back(element[static_cast<std::size_t>(j) * w + t]);
      }
    }
    Word residue = bld.dot_bits_mod(coeffs, bits, ix.radices[i], 0);
    for (std::size_t t = 0; t < residue.size(); ++t) {
      Word shifted = bld.add_const(rank, mod_floor(weights[i] << t, Int(1) << ell), ell);
      rank = bld.mux(residue[t], shifted, rank);
    }
  }
  Word xw = bld.word_from_msb(x_msb);
  Word out = rank;
  if (fwd.det < (Int(1) << ell)) {
    const int pass = bld.geq_const(xw, fwd.det);
    out = bld.mux(pass, xw, rank);
  }
  PigeonholeCircuitInstance target{bld.build(bld.word_to_msb(out))};
  check_instance(Instance(target));
  fwd.target = std::move(target);
  return fwd;
}

Solution back_blichfeldt_to_pigeonhole(const BlichfeldtInstance& src,
                                       const BlichfeldtToPigeonhole& fwd,
                                       const Solution& target_sol) {
  if (fwd.short_circuit == BlichfeldtToPigeonhole::Short::TrivialZero)
    return Solution::trivial_zero();
  if (fwd.short_circuit == BlichfeldtToPigeonhole::Short::DetOne)
    return Solution::lattice_point(blichfeldt_element(src, 0));
  const CosetIndexer ix = make_coset_indexer(src.basis);
  auto index_of = [&](const Bits& bits) {
    Int z = bc(bits);
    if (z >= fwd.det)
      throw Error("back_blichfeldt_to_pigeonhole: passthrough index cannot solve the instance");
    return z;
  };
  if (target_sol.kind == Solution::Kind::Preimage) {
    Int z = index_of(target_sol.x);
    IntVec v = blichfeldt_element(src, z);
    if (coset_index(ix, v) != 0)
      throw Error("back_blichfeldt_to_pigeonhole: circuit and native coset index disagree");
    return Solution::lattice_point(std::move(v));
  }
  if (target_sol.kind == Solution::Kind::CollisionPair) {
    Int z1 = index_of(target_sol.x);
    Int z2 = index_of(target_sol.y);
    IntVec v1 = blichfeldt_element(src, z1);
    IntVec v2 = blichfeldt_element(src, z2);
    if (v1 == v2) return Solution::invalid_witness(std::move(z1), std::move(z2));
    return Solution::lattice_pair(std::move(v1), std::move(v2));
  }
  throw Error("back_blichfeldt_to_pigeonhole: unexpected solution kind");
}

namespace {

// Zero-pads circuit outputs to exactly `width` outputs.
Circuit pad_outputs(const Circuit& c, int width) {
  if (c.num_outputs() > width) throw Error("pad_outputs: circuit already wider");
  if (c.num_outputs() == width) return c;
  Circuit out = c;
  out.gates.push_back({GateKind::Xor, 0, 0});
  const int zero = out.num_inputs + out.size() - 1;
  while (out.num_outputs() < width) out.outputs.push_back(zero);
  return out;
}

}  // namespace

CollisionShrink reduce_collision_shrink(const CollisionInstance& src) {
  check_instance(Instance(src));
  const int n = src.circuit.num_inputs;
  const Circuit padded = pad_outputs(src.circuit, n - 1);
  CircuitBuilder bld(n + 1);
  std::vector<int> first_in(n);
  for (int i = 0; i < n; ++i) first_in[i] = bld.input(i);
  std::vector<int> mid = bld.embed(padded, first_in);
  mid.push_back(bld.input(n));
  std::vector<int> outs = bld.embed(padded, mid);
  CollisionInstance target{bld.build(outs)};
  check_instance(Instance(target));
  return CollisionShrink{std::move(target)};
}

Solution back_collision_shrink(const CollisionInstance& src, const Solution& target_sol) {
  if (target_sol.kind != Solution::Kind::CollisionPair)
    throw Error("back_collision_shrink: unexpected solution kind");
  const int n = src.circuit.num_inputs;
  const Circuit padded = pad_outputs(src.circuit, n - 1);
  auto split = [&](const Bits& y) {
    if (static_cast<int>(y.size()) != n + 1) throw Error("back_collision_shrink: wrong width");
    Bits x(y.begin(), y.begin() + n);
    return std::make_pair(std::move(x), y[n]);
  };
  auto [x1, b1] = split(target_sol.x);
  auto [x2, b2] = split(target_sol.y);
  Bits m1 = evaluate(padded, x1);
  Bits m2 = evaluate(padded, x2);
  if (b1 == b2 && m1 == m2) return Solution::collision_pair(std::move(x1), std::move(x2));
  // otherwise the composed middle values collide under the padded circuit
  Bits u1 = m1;
  u1.push_back(b1);
  Bits u2 = m2;
  u2.push_back(b2);
  if (u1 == u2) throw Error("back_collision_shrink: degenerate pair");
  return Solution::collision_pair(std::move(u1), std::move(u2));
}

CollisionToWeakCsis reduce_collision_to_weakcsis(const CollisionInstance& src, int ell) {
  check_instance(Instance(src));
  const int n = src.circuit.num_inputs;
  if (src.circuit.num_outputs() != n - 2)
    throw Error("reduce_collision_to_weakcsis: needs exactly n-2 outputs (run the shrink first)");
  Circuit basis = rewrite_to_xor_or_basis(src.circuit);
  Circuit prime = eliminate_const1(basis);
  Circuit flagged = append_nonzero_flag(prime);
  CircuitCsisEncoding enc = encode_circuit_csis(flagged, ell);
  for (Eigen::Index i = 0; i < enc.b.size(); ++i) {
    if (enc.b(i) != 0)
      throw Error("reduce_collision_to_weakcsis: xor/or encoding produced a nonzero b");
  }
  WeakCsisInstance target{std::move(enc.a), std::move(enc.g)};
  check_instance(Instance(target));
  return CollisionToWeakCsis{std::move(target), std::move(enc.layout)};
}

Solution back_collision_to_weakcsis(const CsisFromCircuitLayout& layout,
                                    const Solution& target_sol) {
  if (target_sol.kind != Solution::Kind::CollisionPair)
    throw Error("back_collision_to_weakcsis: unexpected solution kind");
  const int k = layout.ell * layout.n;
  if (static_cast<int>(target_sol.x.size()) != k || static_cast<int>(target_sol.y.size()) != k)
    throw Error("back_collision_to_weakcsis: wrong hash input width");
  auto slice = [&](const Bits& xs) {
    // hash inputs fill the free columns in order x_n..x_1, then the auxiliary
    // input groups
    Bits x(layout.n);
    for (int j = 0; j < layout.n; ++j) x[j] = xs[layout.n - 1 - j];
    return x;
  };
  Bits x1 = slice(target_sol.x);
  Bits x2 = slice(target_sol.y);
  auto nonzero = [](const Bits& b) {
    return std::any_of(b.begin(), b.end(), [](std::uint8_t v) { return v != 0; });
  };
  if (!nonzero(x1) || !nonzero(x2))
    throw Error("back_collision_to_weakcsis: zero input mapped back; the flag output is broken");
  if (x1 == x2)
    throw Error("back_collision_to_weakcsis: equal inputs mapped back; uniqueness violated");
  return Solution::collision_pair(std::move(x1), std::move(x2));
}

WeakCsisToCollision reduce_weakcsis_to_collision(const WeakCsisInstance& src) {
  check_instance(Instance(src));
  const int k = src.k();
  CircuitBuilder bld(k);
  std::vector<int> free_wires(k);
  for (int j = 0; j < k; ++j) free_wires[j] = bld.input(j);
  std::vector<int> wires =
      backsolve_wires(bld, src.g.matrix, src.g.shape, nullptr, std::move(free_wires));
  std::vector<int> outs = matmul_output_wires(bld, src.a, src.ell(), wires);
  CollisionInstance target{bld.build(outs)};
  check_instance(Instance(target));
  return WeakCsisToCollision{std::move(target)};
}

Solution back_weakcsis_to_collision(const Solution& target_sol) {
  if (target_sol.kind != Solution::Kind::CollisionPair)
    throw Error("back_weakcsis_to_collision: unexpected solution kind");
  return target_sol;
}

MinkowskiToBlichfeldt reduce_minkowski_to_blichfeldt(const MinkowskiInstance& src) {
  check_instance(Instance(src));
  const int n = static_cast<int>(src.basis.rows());
  const Int det = abs_int(det_exact(src.basis));
  const Int side = iroot(det, n);
  std::vector<Int> sides(n, side);
  const Circuit box = cube_value_circuit(sides);
  const Int s = cube_size(sides) - 1;  // box minus the origin
  const int in_bits = std::max(1, ceil_log2(s));
  CircuitBuilder bld(in_bits);
  std::vector<int> x_msb(in_bits);
  for (int i = 0; i < in_bits; ++i) x_msb[i] = bld.input(i);
  Word idx = bld.zero_extend(bld.word_from_msb(x_msb), in_bits + 1);
  Word shifted = bld.add_const(idx, 1, in_bits + 1);
  Word fitted = box.num_inputs <= in_bits + 1 ? bld.truncate(shifted, box.num_inputs)
                                              : bld.zero_extend(shifted, box.num_inputs);
  std::vector<int> outs = bld.embed(box, bld.word_to_msb(fitted));
  BlichfeldtInstance target{src.basis, s, bld.build(outs)};
  check_instance(Instance(target));
  return MinkowskiToBlichfeldt{std::move(target), side};
}

Solution back_minkowski_to_blichfeldt(const MinkowskiInstance& src, const Solution& target_sol) {
  const int n = static_cast<int>(src.basis.rows());
  auto nonzero = [&](const IntVec& v) {
    for (int i = 0; i < n; ++i)
      if (v(i) != 0) return true;
    return false;
  };
  if (target_sol.kind == Solution::Kind::LatticePoint) {
    if (!nonzero(target_sol.v))
      throw Error("back_minkowski_to_blichfeldt: zero vector escaped the punctured box");
    return Solution::lattice_point(target_sol.v);
  }
  if (target_sol.kind == Solution::Kind::LatticePair) {
    IntVec diff = target_sol.v - target_sol.w;
    if (!nonzero(diff)) throw Error("back_minkowski_to_blichfeldt: degenerate pair");
    return Solution::lattice_point(std::move(diff));
  }
  throw Error("back_minkowski_to_blichfeldt: the box set admits no such solution");
}

DlogToPigeonhole reduce_dlog_to_pigeonhole(const DlogInstance& src) {
  check_instance(Instance(src));
  const int w = src.width();
  CircuitBuilder bld(w);
  std::vector<int> x_msb(w);
  for (int i = 0; i < w; ++i) x_msb[i] = bld.input(i);
  const std::vector<int> g_msb = bld.word_to_msb(bld.word_const(src.g, w));
  std::vector<int> cur = bld.word_to_msb(bld.word_const(src.id, w));
  for (int i = 0; i < w; ++i) {
    std::vector<int> sq_in(cur);
    sq_in.insert(sq_in.end(), cur.begin(), cur.end());
    std::vector<int> squared = bld.embed(src.f, sq_in);
    std::vector<int> mul_in(squared);
    mul_in.insert(mul_in.end(), g_msb.begin(), g_msb.end());
    std::vector<int> multiplied = bld.embed(src.f, mul_in);
    Word selected = bld.mux(x_msb[i], bld.word_from_msb(multiplied), bld.word_from_msb(squared));
    cur = bld.word_to_msb(selected);
  }
  Word diff = bld.abs_diff_const(bld.word_from_msb(cur), src.y);
  Word out = diff;
  if (src.s < (Int(1) << w)) {
    Word xw = bld.word_from_msb(x_msb);
    const int pass = bld.geq_const(xw, src.s);
    out = bld.mux(pass, xw, diff);
  }
  PigeonholeCircuitInstance target{bld.build(bld.word_to_msb(out))};
  check_instance(Instance(target));
  return DlogToPigeonhole{std::move(target)};
}

Solution back_dlog_to_pigeonhole(const DlogInstance& src, const Solution& target_sol) {
  auto exponent = [&](const Bits& bits) {
    Int e = bc(bits);
    if (e >= src.s) throw Error("back_dlog_to_pigeonhole: passthrough exponent cannot occur");
    return e;
  };
  if (target_sol.kind == Solution::Kind::Preimage) {
    Int e = exponent(target_sol.x);
    if (dlog_power_index(src, e) != src.y)
      throw Error("back_dlog_to_pigeonhole: circuit and native exponentiation disagree");
    return target_sol;
  }
  if (target_sol.kind == Solution::Kind::CollisionPair) {
    Int e1 = exponent(target_sol.x);
    Int e2 = exponent(target_sol.y);
    if (dlog_power_index(src, e1) == dlog_power_index(src, e2)) return target_sol;
    // |a - y| = |b - y| with a != b: the absolute-difference encoding cannot
    // certify anything about the group; report instead of guessing
    throw Error(
        "back_dlog_to_pigeonhole: collision has distinct indices equidistant from the target");
  }
  throw Error("back_dlog_to_pigeonhole: unexpected solution kind");
}

Bits weakcsis_hash_bits(const WeakCsisInstance& key, std::span<const std::uint8_t> x) {
  return hash_eval(key, x);
}

}  // namespace ppp
