#include "ppp/crhash.hpp"

#include <algorithm>

#include "ppp/rng.hpp"

namespace ppp {

void check_hash_key(const HashKey& key) {
  const GadgetShape& sh = key.g.shape;
  if (sh.ell < 2) throw Error("hash key: ell must be >= 2 (ell = 1 collisions are trivial)");
  if (key.a.q != key.g.matrix.q) throw Error("hash key: mixed moduli");
  if (key.a.q != (Int(1) << sh.ell)) throw Error("hash key: q must equal 2^ell");
  if (key.a.cols() != sh.cols()) throw Error("hash key: A and G column mismatch");
  if (!is_binary_invertible(key.g.matrix, sh)) throw Error("hash key: G not binary invertible");
  if (static_cast<long long>(key.r()) * sh.ell >= sh.k)
    throw Error("hash key: not shrinking (needs r*ell < k)");
}

HashKey keygen(const HashParams& params, std::uint64_t seed) {
  if (params.k < 1 || params.d < 1 || params.r < 1) throw Error("keygen: bad dimensions");
  if (params.ell < 2) throw Error("keygen: ell must be >= 2");
  if (static_cast<long long>(params.r) * params.ell >= params.k)
    throw Error("keygen: not shrinking (needs r*ell < k)");
  Rng rng(seed);
  const Int q = params.q();
  const GadgetShape shape{params.d, params.ell, params.k};
  BinaryInvertible g = sample_binary_invertible(shape, q, rng);
  IntMat a(params.r, shape.cols());
  for (int r = 0; r < params.r; ++r)
    for (int c = 0; c < shape.cols(); ++c) a(r, c) = rng.below_int(q);
  HashKey key{make_zq_matrix(q, std::move(a)), std::move(g)};
  check_hash_key(key);
  return key;
}

Bits hash_witness(const HashKey& key, std::span<const std::uint8_t> x) {
  if (static_cast<int>(x.size()) != key.k()) throw Error("hash: input has wrong length");
  std::vector<Int> r_free(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) r_free[i] = x[i] ? 1 : 0;
  std::vector<Int> b(key.d(), Int(0));
  Bits u = backsolve(key.g, r_free, b);
  Bits witness;
  witness.reserve(u.size() + x.size());
  witness.insert(witness.end(), u.begin(), u.end());
  witness.insert(witness.end(), x.begin(), x.end());
  return witness;
}

Bits hash_eval(const HashKey& key, std::span<const std::uint8_t> x) {
  Bits w = hash_witness(key, x);
  IntVec v(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) v(static_cast<Eigen::Index>(i)) = w[i];
  ZqVector out = matvec_mod(key.a, v);
  Bits digest;
  digest.reserve(key.output_bits());
  for (int i = 0; i < out.size(); ++i) {
    Bits coord = bd(out.entries(i), key.ell());
    digest.insert(digest.end(), coord.begin(), coord.end());
  }
  return digest;
}

SisWitness extract_sis_witness(const HashKey& key, std::span<const std::uint8_t> x1,
                               std::span<const std::uint8_t> x2) {
  if (x1.size() != x2.size()) throw Error("extract_sis_witness: length mismatch");
  if (std::equal(x1.begin(), x1.end(), x2.begin()))
    throw Error("extract_sis_witness: inputs are equal, not a collision");
  Bits h1 = hash_eval(key, x1);
  Bits h2 = hash_eval(key, x2);
  if (h1 != h2) throw Error("extract_sis_witness: inputs do not collide");
  Bits w1 = hash_witness(key, x1);
  Bits w2 = hash_witness(key, x2);
  IntVec z(w1.size());
  for (std::size_t i = 0; i < w1.size(); ++i)
    z(static_cast<Eigen::Index>(i)) = Int(static_cast<int>(w1[i]) - static_cast<int>(w2[i]));
  return SisWitness{std::move(z)};
}

int CombinedHash::output_bits() const {
  int total = 0;
  for (const HashKey& m : members) total += m.output_bits();
  return total;
}

CombinedHash combine(std::vector<HashKey> keys) {
  if (keys.empty()) throw Error("combine: no members");
  const int k = keys.front().k();
  int total_out = 0;
  for (const HashKey& key : keys) {
    check_hash_key(key);
    if (key.k() != k) throw Error("combine: members disagree on input width");
    total_out += key.output_bits();
  }
  if (total_out >= k) throw Error("combine: concatenation does not shrink");
  return CombinedHash{std::move(keys)};
}

Bits combined_eval(const CombinedHash& h, std::span<const std::uint8_t> x) {
  if (h.members.empty()) throw Error("combined_eval: no members");
  Bits out;
  out.reserve(h.output_bits());
  for (const HashKey& m : h.members) {
    Bits part = hash_eval(m, x);
    out.insert(out.end(), part.begin(), part.end());
  }
  return out;
}

Bits md_hash(const HashKey& key, std::span<const std::uint8_t> message_bits) {
  check_hash_key(key);
  const int chain = key.output_bits();
  const int block = key.k() - chain;
  if (block < 1) throw Error("md_hash: key does not shrink");
  Bits padded(message_bits.begin(), message_bits.end());
  padded.push_back(1);
  while (padded.size() % block != 0) padded.push_back(0);
  Bits length = bd_u64(message_bits.size(), 64);
  Bits len_block(length.begin(), length.end());
  len_block.insert(len_block.begin(), 1);  // domain-separate the length chunk
  while (len_block.size() % block != 0) len_block.push_back(0);
  padded.insert(padded.end(), len_block.begin(), len_block.end());

  Bits state(chain, 0);
  Bits input(key.k());
  for (std::size_t off = 0; off < padded.size(); off += block) {
    std::copy(state.begin(), state.end(), input.begin());
    std::copy(padded.begin() + off, padded.begin() + off + block, input.begin() + chain);
    state = hash_eval(key, input);
  }
  return state;
}

}  // namespace ppp
