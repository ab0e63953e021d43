#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "ppp/bigint.hpp"
#include "ppp/circuit.hpp"
#include "ppp/crhash.hpp"
#include "ppp/lattice.hpp"
#include "ppp/zq.hpp"

namespace ppp {

inline constexpr std::uint64_t kDefaultBudget = std::uint64_t(1) << 22;

struct PigeonholeCircuitInstance {
  Circuit circuit;  // n inputs, n outputs
};

struct CollisionInstance {
  Circuit circuit;  // n inputs, m outputs, m < n
};

// S is the image of value_fn on indices [s]; elements are n coordinates of
// equal width value_fn.num_outputs / n, most-significant-first.
struct BlichfeldtInstance {
  IntMat basis;
  Int s = 0;
  Circuit value_fn;

  int dimension() const { return static_cast<int>(basis.rows()); }
  int coord_width() const { return value_fn.num_outputs() / dimension(); }
};

struct CsisInstance {
  ZqMatrix a;          // n x m
  BinaryInvertible g;  // d x m
  IntVec b;            // length d
  int ell = 2;         // q <= 2^ell
};

using WeakCsisInstance = HashKey;

struct MinkowskiInstance {
  IntMat basis;
  int p = 0;  // 0 encodes the infinity norm, otherwise p >= 1
};

// General-group discrete log: elements are their indices in [s]; f acts on
// index space, so the index function is the identity on this encoding.
struct DlogInstance {
  Int s = 0;  // group order
  Int g = 0;  // index of the generator
  Int id = 0; // index of the identity
  Circuit f;  // 2w inputs, w outputs, w = ceil(log2 s)
  Int y = 0;  // target index

  int width() const { return std::max(1, ceil_log2(s)); }
};

using Instance =
    std::variant<PigeonholeCircuitInstance, CollisionInstance, BlichfeldtInstance, CsisInstance,
                 WeakCsisInstance, MinkowskiInstance, DlogInstance>;

const char* problem_tag(const Instance& inst);

// Throws Error on any type-invariant violation.
void check_instance(const Instance& inst);

struct Solution {
  enum class Kind { Preimage, CollisionPair, LatticePoint, LatticePair, TrivialZero, InvalidWitness };

  Kind kind = Kind::TrivialZero;
  Bits x, y;    // Preimage / CollisionPair
  IntVec v, w;  // LatticePoint / LatticePair
  Int z1, z2;   // InvalidWitness indices into [s]

  static Solution preimage(Bits bits);
  static Solution collision_pair(Bits a, Bits b);
  static Solution lattice_point(IntVec v);
  static Solution lattice_pair(IntVec a, IntVec b);
  static Solution trivial_zero();
  static Solution invalid_witness(Int z, Int w);
};

const char* solution_kind_tag(Solution::Kind k);

struct VerifyResult {
  bool accepted = false;
  std::string reason;  // empty on accept
};

// Accepts exactly the solutions meeting the problem's output clause. Blichfeldt
// set-membership checks enumerate [s] and therefore respect `budget`.
VerifyResult verify(const Instance& inst, const Solution& sol,
                    std::uint64_t budget = kDefaultBudget);

// Exhaustive ground truth. Scans the full enumeration space (throwing
// BudgetExceeded if it exceeds `budget`); zero-preimage solutions take
// precedence over collisions, with ties broken by canonical enumeration order,
// so the result is deterministic and thread-count independent.
Solution brute_force(const Instance& inst, std::uint64_t budget = kDefaultBudget, int threads = 1);

// Native mirrors used by oracles, verifiers and reduction back-maps.
Bits csis_witness_from_free_part(const CsisInstance& inst, std::span<const std::uint8_t> free_bits);
Int dlog_power_index(const DlogInstance& inst, const Int& exponent);  // index of g^e
IntVec blichfeldt_element(const BlichfeldtInstance& inst, const Int& index);

struct GenParams {
  int n = 3;          // circuit inputs / csis rows
  int m = 2;          // collision outputs
  int gates = 8;      // random circuit gate count
  int ell = 2;        // gadget bit width
  int d = 2;          // gadget blocks
  int r = 1;          // hash output blocks
  int k = 8;          // hash input bits
  int dim = 2;        // lattice dimension
  Int det_max = 16;   // |det| bound for random bases
  int p_norm = 0;     // minkowski norm (0 = infinity)
  Int prime = 11;     // dlog group Z_p^*
};

Instance gen_random(const std::string& kind, const GenParams& params, std::uint64_t seed);

Circuit gen_random_circuit(int num_inputs, int num_outputs, int gates, Rng& rng);
IntMat gen_random_basis(int dim, const Int& det_max, Rng& rng);

// f(x, y) = (x+1)(y+1) - 1 mod p on w-bit indices, the Z_p^* encoding.
Circuit zp_star_op_circuit(const Int& p, int width);

}  // namespace ppp
