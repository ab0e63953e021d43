#include "ppp/zq.hpp"

namespace ppp {

ZqMatrix make_zq_matrix(const Int& q, IntMat entries) {
  if (q < 2) throw Error("ZqMatrix: q must be >= 2");
  for (Eigen::Index r = 0; r < entries.rows(); ++r)
    for (Eigen::Index c = 0; c < entries.cols(); ++c) entries(r, c) = mod_floor(entries(r, c), q);
  return ZqMatrix{q, std::move(entries)};
}

ZqVector make_zq_vector(const Int& q, IntVec entries) {
  if (q < 2) throw Error("ZqVector: q must be >= 2");
  for (Eigen::Index i = 0; i < entries.size(); ++i) entries(i) = mod_floor(entries(i), q);
  return ZqVector{q, std::move(entries)};
}

static Int gamma_entry(int j, const Int& q) { return mod_floor(Int(1) << j, q); }

bool is_binary_invertible(const ZqMatrix& m, const GadgetShape& shape) {
  if (shape.d < 0 || shape.ell < 1 || shape.k < 0) throw Error("is_binary_invertible: bad shape");
  if (m.rows() != shape.d || m.cols() != shape.cols())
    throw Error("is_binary_invertible: dimensions do not match shape");
  if (m.q > (Int(1) << shape.ell)) return false;  // needs q <= 2^ell
  for (int t = 0; t < shape.d; ++t) {
    for (int c = 0; c < shape.d * shape.ell; ++c) {
      if (c < t * shape.ell) {
        if (m.entries(t, c) != 0) return false;
      } else if (c < (t + 1) * shape.ell) {
        if (m.entries(t, c) != gamma_entry(c - t * shape.ell, m.q)) return false;
      }
      // entries right of the own block are the free U part
    }
  }
  return true;
}

BinaryInvertible make_binary_invertible(ZqMatrix m, GadgetShape shape) {
  if (!is_binary_invertible(m, shape)) throw Error("matrix is not binary invertible");
  return BinaryInvertible{std::move(m), shape};
}

BinaryInvertible gadget_matrix(int d, int ell, const Int& q) {
  if (d < 1 || ell < 1) throw Error("gadget_matrix: d, ell must be positive");
  IntMat m = IntMat::Zero(d, d * ell);
  for (int t = 0; t < d; ++t)
    for (int j = 0; j < ell; ++j) m(t, t * ell + j) = gamma_entry(j, q);
  return make_binary_invertible(make_zq_matrix(q, std::move(m)), GadgetShape{d, ell, 0});
}

BinaryInvertible sample_binary_invertible(const GadgetShape& shape, const Int& q, Rng& rng) {
  if (shape.d < 1 || shape.ell < 1 || shape.k < 0)
    throw Error("sample_binary_invertible: bad shape");
  if (q > (Int(1) << shape.ell)) throw Error("sample_binary_invertible: q > 2^ell");
  IntMat m = IntMat::Zero(shape.d, shape.cols());
  for (int t = 0; t < shape.d; ++t) {
    for (int j = 0; j < shape.ell; ++j) m(t, t * shape.ell + j) = gamma_entry(j, q);
    for (int c = (t + 1) * shape.ell; c < shape.d * shape.ell; ++c) m(t, c) = rng.below_int(q);
    for (int c = 0; c < shape.k; ++c) m(t, shape.d * shape.ell + c) = rng.below_int(q);
  }
  return make_binary_invertible(make_zq_matrix(q, std::move(m)), shape);
}

Bits backsolve(const BinaryInvertible& g, std::span<const Int> r_free, std::span<const Int> b) {
  const int d = g.shape.d;
  const int ell = g.shape.ell;
  const int k = g.shape.k;
  if (static_cast<int>(r_free.size()) != k) throw Error("backsolve: r_free has wrong length");
  if (static_cast<int>(b.size()) != d) throw Error("backsolve: b has wrong length");
  const Int& q = g.matrix.q;
  Bits r(static_cast<std::size_t>(d) * ell, 0);
  std::vector<Int> part_value(d);  // gamma^T r_t as an integer in [0, q)
  for (int t = d - 1; t >= 0; --t) {
    Int acc = b[t];
    for (int u = t + 1; u < d; ++u) {
      for (int j = 0; j < ell; ++j) {
        if (r[static_cast<std::size_t>(u) * ell + j])
          acc -= g.matrix.entries(t, u * ell + j);
      }
    }
    for (int c = 0; c < k; ++c) acc -= g.matrix.entries(t, d * ell + c) * r_free[c];
    acc = mod_floor(acc, q);
    part_value[t] = acc;
    for (int j = 0; j < ell; ++j) {
      r[static_cast<std::size_t>(t) * ell + j] =
          static_cast<std::uint8_t>(boost::multiprecision::bit_test(acc, j));
    }
  }
  return r;
}

ZqVector matvec_mod(const ZqMatrix& m, const IntVec& v) {
  if (m.cols() != static_cast<int>(v.size())) throw Error("matvec_mod: dimension mismatch");
  IntVec out(m.rows());
  for (int r = 0; r < m.rows(); ++r) {
    Int acc = 0;
    for (int c = 0; c < m.cols(); ++c) acc += m.entries(r, c) * v(c);
    out(r) = mod_floor(acc, m.q);
  }
  return ZqVector{m.q, std::move(out)};
}

SmallZq to_small(const ZqMatrix& m) {
  if (m.q >= (Int(1) << 31)) throw Error("to_small: q too large for int64 mirror");
  SmallZq s;
  s.q = static_cast<std::int64_t>(m.q);
  s.rows = m.rows();
  s.cols = m.cols();
  s.e.resize(static_cast<std::size_t>(s.rows) * s.cols);
  for (int r = 0; r < s.rows; ++r)
    for (int c = 0; c < s.cols; ++c)
      s.e[static_cast<std::size_t>(r) * s.cols + c] = static_cast<std::int64_t>(m.entries(r, c));
  return s;
}

void backsolve_small(const SmallZq& g, int d, int ell, std::span<const std::int64_t> b,
                     std::span<std::uint8_t> x) {
  if (static_cast<int>(x.size()) != g.cols) throw Error("backsolve_small: bad width");
  for (int t = d - 1; t >= 0; --t) {
    std::int64_t acc = b.empty() ? 0 : b[t];
    const std::int64_t* row = &g.e[static_cast<std::size_t>(t) * g.cols];
    for (int c = (t + 1) * ell; c < g.cols; ++c) {
      if (x[c]) acc -= row[c];
    }
    std::int64_t val = acc % g.q;
    if (val < 0) val += g.q;
    for (int j = 0; j < ell; ++j) x[static_cast<std::size_t>(t) * ell + j] = (val >> j) & 1;
  }
}

}  // namespace ppp
