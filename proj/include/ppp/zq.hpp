#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "ppp/bigint.hpp"
#include "ppp/circuit.hpp"
#include "ppp/rng.hpp"

namespace ppp {

// Dense exact matrix over Z_q. Entries are kept reduced to [0, q).
struct ZqMatrix {
  Int q;
  IntMat entries;

  int rows() const { return static_cast<int>(entries.rows()); }
  int cols() const { return static_cast<int>(entries.cols()); }
};

struct ZqVector {
  Int q;
  IntVec entries;

  int size() const { return static_cast<int>(entries.size()); }
};

ZqMatrix make_zq_matrix(const Int& q, IntMat entries);  // reduces mod q
ZqVector make_zq_vector(const Int& q, IntVec entries);

// Block structure of a binary invertible matrix: d gadget blocks of ell
// columns each, then k free columns, with q <= 2^ell.
struct GadgetShape {
  int d = 0;
  int ell = 1;
  int k = 0;

  int cols() const { return d * ell + k; }
};

struct BinaryInvertible {
  ZqMatrix matrix;
  GadgetShape shape;
};

// True iff the block diagonal equals the gadget vector (1, 2, ..., 2^{ell-1})
// per block and the gadget part is zero on and below the (ell+1)-diagonal.
// Throws on dimension mismatch.
bool is_binary_invertible(const ZqMatrix& m, const GadgetShape& shape);

BinaryInvertible make_binary_invertible(ZqMatrix m, GadgetShape shape);  // validates

// I_d (x) gamma_ell^T with k = 0.
BinaryInvertible gadget_matrix(int d, int ell, const Int& q);

// Draws every entry strictly above the (ell+1)-diagonal of the gadget part and
// every free-column entry independently uniform in Z_q.
BinaryInvertible sample_binary_invertible(const GadgetShape& shape, const Int& q, Rng& rng);

// Backward substitution of Proposition bInv: returns r in {0,1}^{d*ell} with
// G [r; r_free] = b (mod q). Each ell-bit part is least-significant-first
// against the gadget vector. Unique when q = 2^ell.
Bits backsolve(const BinaryInvertible& g, std::span<const Int> r_free, std::span<const Int> b);

ZqVector matvec_mod(const ZqMatrix& m, const IntVec& v);

// int64 mirror of a ZqMatrix for enumeration loops; requires q < 2^31.
struct SmallZq {
  std::int64_t q = 0;
  int rows = 0;
  int cols = 0;
  std::vector<std::int64_t> e;  // row-major

  std::int64_t at(int r, int c) const { return e[static_cast<std::size_t>(r) * cols + c]; }
};

SmallZq to_small(const ZqMatrix& m);

// backsolve against a SmallZq gadget matrix with binary free part. Writes the
// d*ell gadget bits into x[0..d*ell) given the free bits already stored in
// x[d*ell..). An empty b means the zero vector.
void backsolve_small(const SmallZq& g, int d, int ell, std::span<const std::int64_t> b,
                     std::span<std::uint8_t> x);

}  // namespace ppp
