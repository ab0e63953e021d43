#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "ppp/bigint.hpp"
#include "ppp/circuit.hpp"
#include "ppp/zq.hpp"

namespace ppp {

struct HashParams {
  int k = 8;    // input bits
  int ell = 2;  // q = 2^ell, ell >= 2
  int d = 2;    // gadget blocks
  int r = 1;    // output blocks; r*ell < k

  Int q() const { return Int(1) << ell; }
};

// Key (A, G) of one H_cSIS function {0,1}^k -> {0,1}^{r*ell}. Doubles as the
// weak-cSIS instance type: both are exactly this pair with q = 2^ell.
struct HashKey {
  ZqMatrix a;          // r x (ell*d + k)
  BinaryInvertible g;  // d x (ell*d + k)

  int k() const { return g.shape.k; }
  int d() const { return g.shape.d; }
  int ell() const { return g.shape.ell; }
  int r() const { return a.rows(); }
  int output_bits() const { return r() * ell(); }
  HashParams params() const { return HashParams{k(), ell(), d(), r()}; }
};

void check_hash_key(const HashKey& key);  // throws on any invariant violation

HashKey keygen(const HashParams& params, std::uint64_t seed);

// bd(A [u; x] mod q) where u is the unique binary vector with G [u; x] = 0.
Bits hash_eval(const HashKey& key, std::span<const std::uint8_t> x);

// The full cSIS witness [u; x] behind hash_eval.
Bits hash_witness(const HashKey& key, std::span<const std::uint8_t> x);

struct SisWitness {
  IntVec z;  // entries in {-1, 0, 1}, nonzero, A z = 0 and G z = 0 (mod q)
};

SisWitness extract_sis_witness(const HashKey& key, std::span<const std::uint8_t> x1,
                               std::span<const std::uint8_t> x2);

// Concatenation combiner over a common input width; collides only when every
// member collides.
struct CombinedHash {
  std::vector<HashKey> members;

  int input_bits() const { return members.empty() ? 0 : members.front().k(); }
  int output_bits() const;
};

CombinedHash combine(std::vector<HashKey> keys);
Bits combined_eval(const CombinedHash& h, std::span<const std::uint8_t> x);

// Merkle-Damgard domain extension over hash_eval: zero IV, 1-then-zeros
// padding plus a 64-bit length block. Fixed-input-length eval above is what
// the completeness reductions use; this wrapper is a convenience only.
Bits md_hash(const HashKey& key, std::span<const std::uint8_t> message_bits);

}  // namespace ppp
