#pragma once

#include <optional>
#include <vector>

#include "ppp/instances.hpp"

namespace ppp {

// Column/row bookkeeping of the circuit-to-matrix encoding. One block of
// ell*block_sizes[i] gadget columns per output (reverse topological (aux,
// value, carries...) column groups per gate), then the shared input value
// columns x_n..x_1, then ell-1 groups of n auxiliary input columns.
struct CsisFromCircuitLayout {
  int n = 0;      // circuit inputs
  int n_out = 0;  // circuit outputs = blocks
  int ell = 2;
  std::vector<int> block_sizes;  // gates per output cone
  std::vector<int> k_cols;       // value column of each output gate (0-indexed)

  int d() const;
  int m() const { return ell * (d() + n); }
  int input_col(int input_index) const { return ell * d() + (n - 1 - input_index); }
  Bits input_bits(const Bits& witness) const;  // x_1..x_n slice of a witness
};

// The gate-equation encoding: G binary invertible, b per gate kind, A picking
// each output's value column plus the doubling blocks on the auxiliary input
// columns. Gates must be among the five binary kinds; q = 2^ell.
struct CircuitCsisEncoding {
  BinaryInvertible g;
  ZqMatrix a;
  IntVec b;
  CsisFromCircuitLayout layout;
};

CircuitCsisEncoding encode_circuit_csis(const Circuit& circuit, int ell);

struct PigeonholeToCsis {
  CsisInstance target;
  CsisFromCircuitLayout layout;
};
PigeonholeToCsis reduce_pigeonhole_to_csis(const PigeonholeCircuitInstance& src, int ell);
Solution back_pigeonhole_to_csis(const CsisFromCircuitLayout& layout, const Solution& target_sol);

struct CsisToPigeonhole {
  PigeonholeCircuitInstance target;
};
CsisToPigeonhole reduce_csis_to_pigeonhole(const CsisInstance& src);
Solution back_csis_to_pigeonhole(const CsisInstance& src, const Solution& target_sol);

struct PigeonholeToBlichfeldt {
  BlichfeldtInstance target;
};
PigeonholeToBlichfeldt reduce_pigeonhole_to_blichfeldt(const PigeonholeCircuitInstance& src);
Solution back_pigeonhole_to_blichfeldt(const PigeonholeCircuitInstance& src,
                                       const Solution& target_sol);

struct BlichfeldtToPigeonhole {
  enum class Short { None, TrivialZero, DetOne };
  Short short_circuit = Short::None;
  std::optional<PigeonholeCircuitInstance> target;
  Int det;
  int ell = 0;
};
BlichfeldtToPigeonhole reduce_blichfeldt_to_pigeonhole(const BlichfeldtInstance& src);
Solution back_blichfeldt_to_pigeonhole(const BlichfeldtInstance& src,
                                       const BlichfeldtToPigeonhole& fwd,
                                       const Solution& target_sol);

struct CollisionShrink {
  CollisionInstance target;  // n+1 inputs, n-1 outputs
};
CollisionShrink reduce_collision_shrink(const CollisionInstance& src);
Solution back_collision_shrink(const CollisionInstance& src, const Solution& target_sol);

struct CollisionToWeakCsis {
  WeakCsisInstance target;
  CsisFromCircuitLayout layout;
};
CollisionToWeakCsis reduce_collision_to_weakcsis(const CollisionInstance& src, int ell);
Solution back_collision_to_weakcsis(const CsisFromCircuitLayout& layout,
                                    const Solution& target_sol);

struct WeakCsisToCollision {
  CollisionInstance target;
};
WeakCsisToCollision reduce_weakcsis_to_collision(const WeakCsisInstance& src);
Solution back_weakcsis_to_collision(const Solution& target_sol);

struct MinkowskiToBlichfeldt {
  BlichfeldtInstance target;
  Int box_side;  // floor(det^{1/n})
};
MinkowskiToBlichfeldt reduce_minkowski_to_blichfeldt(const MinkowskiInstance& src);
Solution back_minkowski_to_blichfeldt(const MinkowskiInstance& src, const Solution& target_sol);

struct DlogToPigeonhole {
  PigeonholeCircuitInstance target;
};
DlogToPigeonhole reduce_dlog_to_pigeonhole(const DlogInstance& src);
Solution back_dlog_to_pigeonhole(const DlogInstance& src, const Solution& target_sol);

// Native value the emitted hash circuit must agree with.
Bits weakcsis_hash_bits(const WeakCsisInstance& key, std::span<const std::uint8_t> x);

}  // namespace ppp
