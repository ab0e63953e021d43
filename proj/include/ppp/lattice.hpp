#pragma once

#include <span>
#include <vector>

#include "ppp/bigint.hpp"
#include "ppp/circuit.hpp"
#include "ppp/zq.hpp"

namespace ppp {

// U * D * V = input, |det U| = |det V| = 1, D diagonal with d_{i+1,i+1}
// dividing d_{i,i} (descending chain) and positive diagonal for nonsingular
// input. u_inverse is maintained alongside so callers never invert.
struct SnfDecomposition {
  IntMat u;
  IntMat d;
  IntMat v;
  IntMat u_inverse;
};

SnfDecomposition snf(const IntMat& m);

Int det_exact(const IntMat& m);  // Bareiss fraction-free elimination

IntMat adjugate(const IntMat& m);  // adj(m) * m = det(m) * I

// Canonical lower-triangular basis (positive diagonal, left-of-diagonal
// entries reduced) of the lattice generated by the columns of `generators`.
// Requires the columns to span a full-rank lattice.
IntMat hnf(const IntMat& generators);

// Basis of { x : m x = 0 } as matrix columns (possibly 0 columns).
IntMat kernel_basis(const IntMat& m);

// Square basis B with L(B) = { x : a x = 0 (mod q) }.
IntMat qary_basis(const ZqMatrix& a);

// Exact membership test: v in L(basis)?
bool lattice_contains(const IntMat& basis, const IntVec& v);

struct CosetIndexer {
  IntMat basis;
  SnfDecomposition decomposition;
  std::vector<Int> radices;  // diagonal of D
  Int det;                   // product of radices = |det basis|
};

CosetIndexer make_coset_indexer(const IntMat& basis);

// Mixed-radix rank of (U^{-1} x mod radices); equal exactly on cosets of the
// lattice. Range [0, det).
Int coset_index(const CosetIndexer& ix, const IntVec& x);

// Componentwise residue (U^{-1} x mod radices) feeding the rank above.
IntVec coset_coordinates(const CosetIndexer& ix, const IntVec& x);

// Succinct representations of ([0, L_1] x ... x [0, L_n]) intersect Z^n.
// Coordinates cross circuit boundaries most-significant-first with widths
// cube_coord_width(L_i); indices use ceil(log2 prod(L_i + 1)) bits.
int cube_coord_width(const Int& li);
Int cube_size(std::span<const Int> l);
Circuit cube_value_circuit(std::span<const Int> l);
Circuit cube_index_circuit(std::span<const Int> l);
Circuit cube_characteristic_circuit(std::span<const Int> l);

// Native mirrors of the cube circuits, for oracles and cross-checks.
std::vector<Int> cube_value_native(std::span<const Int> l, const Int& index);
Int cube_index_native(std::span<const Int> l, std::span<const Int> point);

}  // namespace ppp
