#include "ppp/lattice.hpp"

#include <algorithm>

#include "ppp/circuit_builder.hpp"

namespace ppp {

namespace {

Int floor_div(const Int& a, const Int& b) {
  Int q = a / b;
  if (a % b != 0 && ((a < 0) != (b < 0))) q -= 1;
  return q;
}

struct Xgcd {
  Int g, s, t;  // g = s*a + t*b
};

Xgcd xgcd(Int a, Int b) {
  Int s0 = 1, s1 = 0, t0 = 0, t1 = 1;
  while (b != 0) {
    Int q = a / b;
    Int r = a - q * b;
    a = b;
    b = r;
    Int s2 = s0 - q * s1;
    s0 = s1;
    s1 = s2;
    Int t2 = t0 - q * t1;
    t0 = t1;
    t1 = t2;
  }
  if (a < 0) {
    a = -a;
    s0 = -s0;
    t0 = -t0;
  }
  return {a, s0, t0};
}

}  // namespace

SnfDecomposition snf(const IntMat& m) {
  if (m.rows() != m.cols()) throw Error("snf: square matrix required");
  const int n = static_cast<int>(m.rows());
  IntMat d = m;
  IntMat u = IntMat::Identity(n, n);
  IntMat uinv = IntMat::Identity(n, n);
  IntMat v = IntMat::Identity(n, n);

  // invariant: m = u * d * v and uinv = u^{-1}
  auto swap_rows = [&](int a, int b) {
    if (a == b) return;
    d.row(a).swap(d.row(b));
    uinv.row(a).swap(uinv.row(b));
    u.col(a).swap(u.col(b));
  };
  auto swap_cols = [&](int a, int b) {
    if (a == b) return;
    d.col(a).swap(d.col(b));
    v.row(a).swap(v.row(b));
  };
  auto row_axpy = [&](int dst, int src, const Int& f) {
    // row dst of d -= f * row src
    for (int c = 0; c < n; ++c) d(dst, c) -= f * d(src, c);
    for (int c = 0; c < n; ++c) uinv(dst, c) -= f * uinv(src, c);
    for (int r = 0; r < n; ++r) u(r, src) += f * u(r, dst);
  };
  auto col_axpy = [&](int dst, int src, const Int& f) {
    // col dst of d -= f * col src
    for (int r = 0; r < n; ++r) d(r, dst) -= f * d(r, src);
    for (int c = 0; c < n; ++c) v(src, c) += f * v(dst, c);
  };

  for (int i = 0; i < n; ++i) {
    for (;;) {
      int pr = -1, pc = -1;
      Int best = 0;
      for (int r = i; r < n; ++r) {
        for (int c = i; c < n; ++c) {
          if (d(r, c) == 0) continue;
          Int a = abs_int(d(r, c));
          if (pr < 0 || a < best) {
            best = a;
            pr = r;
            pc = c;
          }
        }
      }
      if (pr < 0) break;  // all-zero trailing block
      swap_rows(i, pr);
      swap_cols(i, pc);
      bool reduced = true;
      for (int r = i + 1; r < n; ++r) {
        if (d(r, i) != 0) {
          Int f = d(r, i) / d(i, i);  // truncated: |remainder| < |pivot|
          row_axpy(r, i, f);
          if (d(r, i) != 0) reduced = false;
        }
      }
      for (int c = i + 1; c < n; ++c) {
        if (d(i, c) != 0) {
          Int f = d(i, c) / d(i, i);
          col_axpy(c, i, f);
          if (d(i, c) != 0) reduced = false;
        }
      }
      if (!reduced) continue;
      bool lone = true;
      for (int r = i + 1; r < n && lone; ++r) lone = d(r, i) == 0;
      for (int c = i + 1; c < n && lone; ++c) lone = d(i, c) == 0;
      if (!lone) continue;
      // pivot settled; force divisibility of the trailing block
      int br = -1, bcol = -1;
      for (int r = i + 1; r < n && br < 0; ++r) {
        for (int c = i + 1; c < n; ++c) {
          if (d(r, c) % d(i, i) != 0) {
            br = r;
            bcol = c;
            break;
          }
        }
      }
      if (br < 0) break;
      row_axpy(i, br, Int(-1));  // fold the offending row in and re-reduce
    }
  }

  for (int i = 0; i < n; ++i) {
    if (d(i, i) < 0) {
      for (int c = 0; c < n; ++c) d(i, c) = -d(i, c);
      for (int c = 0; c < n; ++c) uinv(i, c) = -uinv(i, c);
      for (int r = 0; r < n; ++r) u(r, i) = -u(r, i);
    }
  }

  // ascending chain -> the paper's descending orientation
  auto reverse_cols = [n](IntMat& a) {
    for (int c = 0; c < n / 2; ++c) a.col(c).swap(a.col(n - 1 - c));
  };
  auto reverse_rows = [n](IntMat& a) {
    for (int r = 0; r < n / 2; ++r) a.row(r).swap(a.row(n - 1 - r));
  };
  reverse_cols(u);
  reverse_rows(uinv);
  reverse_rows(v);
  reverse_rows(d);
  reverse_cols(d);
  return SnfDecomposition{std::move(u), std::move(d), std::move(v), std::move(uinv)};
}

Int det_exact(const IntMat& m) {
  if (m.rows() != m.cols()) throw Error("det_exact: square matrix required");
  const int n = static_cast<int>(m.rows());
  if (n == 0) return 1;
  IntMat a = m;
  int sign = 1;
  Int prev = 1;
  for (int k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      int piv = -1;
      for (int r = k + 1; r < n; ++r) {
        if (a(r, k) != 0) {
          piv = r;
          break;
        }
      }
      if (piv < 0) return 0;
      a.row(k).swap(a.row(piv));
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i) {
      for (int j = k + 1; j < n; ++j) {
        a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / prev;
      }
      a(i, k) = 0;
    }
    prev = a(k, k);
  }
  return sign > 0 ? a(n - 1, n - 1) : Int(-a(n - 1, n - 1));
}

IntMat adjugate(const IntMat& m) {
  if (m.rows() != m.cols()) throw Error("adjugate: square matrix required");
  const int n = static_cast<int>(m.rows());
  IntMat adj(n, n);
  if (n == 1) {
    adj(0, 0) = 1;
    return adj;
  }
  IntMat minor(n - 1, n - 1);
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) {
      for (int i = 0, mi = 0; i < n; ++i) {
        if (i == r) continue;
        for (int j = 0, mj = 0; j < n; ++j) {
          if (j == c) continue;
          minor(mi, mj) = m(i, j);
          ++mj;
        }
        ++mi;
      }
      Int cof = det_exact(minor);
      adj(c, r) = ((r + c) % 2 == 0) ? cof : Int(-cof);
    }
  }
  return adj;
}

namespace {

// Column elimination to lower-triangular form; returns rank. If w is non-null
// the same column operations are applied to it.
int column_echelon(IntMat& h, IntMat* w) {
  const int rows = static_cast<int>(h.rows());
  const int cols = static_cast<int>(h.cols());
  int front = 0;
  for (int row = 0; row < rows && front < cols; ++row) {
    for (int j = front + 1; j < cols; ++j) {
      if (h(row, j) == 0) continue;
      if (h(row, front) == 0) {
        h.col(front).swap(h.col(j));
        if (w) w->col(front).swap(w->col(j));
        continue;
      }
      Xgcd e = xgcd(h(row, front), h(row, j));
      const Int a = h(row, front) / e.g;
      const Int b = h(row, j) / e.g;
      for (int r = 0; r < rows; ++r) {
        Int cf = h(r, front), cj = h(r, j);
        h(r, front) = e.s * cf + e.t * cj;
        h(r, j) = a * cj - b * cf;
      }
      if (w) {
        for (int r = 0; r < static_cast<int>(w->rows()); ++r) {
          Int cf = (*w)(r, front), cj = (*w)(r, j);
          (*w)(r, front) = e.s * cf + e.t * cj;
          (*w)(r, j) = a * cj - b * cf;
        }
      }
    }
    if (h(row, front) == 0) continue;
    if (h(row, front) < 0) {
      h.col(front) = -h.col(front);
      if (w) w->col(front) = -w->col(front);
    }
    for (int j = 0; j < front; ++j) {
      Int f = floor_div(h(row, j), h(row, front));
      if (f == 0) continue;
      h.col(j) -= f * h.col(front);
      if (w) w->col(j) -= f * w->col(front);
    }
    ++front;
  }
  return front;
}

}  // namespace

IntMat hnf(const IntMat& generators) {
  IntMat h = generators;
  const int rank = column_echelon(h, nullptr);
  if (rank != static_cast<int>(h.rows()))
    throw Error("hnf: columns do not span a full-rank lattice");
  return h.leftCols(rank);
}

IntMat kernel_basis(const IntMat& m) {
  IntMat h = m;
  IntMat w = IntMat::Identity(m.cols(), m.cols());
  const int rank = column_echelon(h, &w);
  return w.rightCols(m.cols() - rank);
}

IntMat qary_basis(const ZqMatrix& a) {
  const int n = a.rows();
  const int m = a.cols();
  if (m < 1) throw Error("qary_basis: empty matrix");
  // x in the lattice iff [a | -qI] [x; y] = 0 for some integer y; that kernel
  // projects bijectively onto the x block.
  IntMat stacked = IntMat::Zero(n, m + n);
  stacked.leftCols(m) = a.entries;
  for (int i = 0; i < n; ++i) stacked(i, m + i) = -a.q;
  IntMat k = kernel_basis(stacked);
  if (static_cast<int>(k.cols()) != m) throw Error("qary_basis: unexpected kernel rank");
  IntMat b0 = k.topRows(m);
  return hnf(b0);
}

bool lattice_contains(const IntMat& basis, const IntVec& v) {
  if (basis.rows() != v.size()) throw Error("lattice_contains: dimension mismatch");
  const Int det = det_exact(basis);
  if (det == 0) throw Error("lattice_contains: singular basis");
  IntVec y = adjugate(basis) * v;  // basis^{-1} v = y / det
  for (Eigen::Index i = 0; i < y.size(); ++i) {
    if (y(i) % det != 0) return false;
  }
  return true;
}

CosetIndexer make_coset_indexer(const IntMat& basis) {
  if (basis.rows() != basis.cols()) throw Error("make_coset_indexer: square basis required");
  SnfDecomposition dec = snf(basis);
  const int n = static_cast<int>(basis.rows());
  CosetIndexer ix;
  ix.basis = basis;
  ix.radices.reserve(n);
  Int det = 1;
  for (int i = 0; i < n; ++i) {
    Int di = dec.d(i, i);
    if (di == 0) throw Error("make_coset_indexer: singular basis");
    ix.radices.push_back(di);
    det *= di;
  }
  ix.det = det;
  ix.decomposition = std::move(dec);
  return ix;
}

IntVec coset_coordinates(const CosetIndexer& ix, const IntVec& x) {
  if (x.size() != ix.basis.rows()) throw Error("coset_coordinates: dimension mismatch");
  IntVec w = ix.decomposition.u_inverse * x;
  for (Eigen::Index i = 0; i < w.size(); ++i) w(i) = mod_floor(w(i), ix.radices[i]);
  return w;
}

Int coset_index(const CosetIndexer& ix, const IntVec& x) {
  IntVec w = coset_coordinates(ix, x);
  Int rank = 0;
  for (Eigen::Index i = 0; i < w.size(); ++i) {
    rank = rank * ix.radices[i] + w(i);
  }
  return rank;
}

int cube_coord_width(const Int& li) { return CircuitBuilder::width_for(li); }

Int cube_size(std::span<const Int> l) {
  Int s = 1;
  for (const Int& li : l) {
    if (li < 0) throw Error("cube_size: negative side");
    s *= li + 1;
  }
  return s;
}

Circuit cube_value_circuit(std::span<const Int> l) {
  if (l.empty()) throw Error("cube_value_circuit: empty box");
  const Int s = cube_size(l);
  const int in_bits = std::max(1, ceil_log2(s));
  CircuitBuilder b(in_bits);
  std::vector<int> idx_msb(in_bits);
  for (int i = 0; i < in_bits; ++i) idx_msb[i] = b.input(i);
  Word rest = b.word_from_msb(idx_msb);
  std::vector<int> outputs;
  for (std::size_t i = 0; i < l.size(); ++i) {
    Int weight = 1;
    for (std::size_t j = i + 1; j < l.size(); ++j) weight *= l[j] + 1;
    auto [quot, rem] = b.divmod_const(rest, weight);
    Word coord = b.truncate(b.zero_extend(quot, cube_coord_width(l[i])), cube_coord_width(l[i]));
    auto msb = b.word_to_msb(coord);
    outputs.insert(outputs.end(), msb.begin(), msb.end());
    rest = rem;
  }
  return b.build(outputs);
}

Circuit cube_index_circuit(std::span<const Int> l) {
  if (l.empty()) throw Error("cube_index_circuit: empty box");
  std::vector<Int> radices;
  radices.reserve(l.size());
  for (const Int& li : l) radices.push_back(li + 1);
  return gadget_mixed_radix_index(radices);
}

Circuit cube_characteristic_circuit(std::span<const Int> l) {
  if (l.empty()) throw Error("cube_characteristic_circuit: empty box");
  int in_bits = 0;
  for (const Int& li : l) in_bits += cube_coord_width(li);
  CircuitBuilder b(in_bits);
  int acc = b.one();
  int offset = 0;
  for (const Int& li : l) {
    const int w = cube_coord_width(li);
    std::vector<int> msb(w);
    for (int j = 0; j < w; ++j) msb[j] = b.input(offset + j);
    offset += w;
    Word coord = b.word_from_msb(msb);
    const int le = b.lnot(b.geq_const(coord, li + 1));
    acc = b.land(acc, le);
  }
  const int out[1] = {acc};
  return b.build(out);
}

std::vector<Int> cube_value_native(std::span<const Int> l, const Int& index) {
  Int rest = index;
  std::vector<Int> out;
  out.reserve(l.size());
  for (std::size_t i = 0; i < l.size(); ++i) {
    Int weight = 1;
    for (std::size_t j = i + 1; j < l.size(); ++j) weight *= l[j] + 1;
    out.push_back(rest / weight);
    rest %= weight;
  }
  return out;
}

Int cube_index_native(std::span<const Int> l, std::span<const Int> point) {
  if (l.size() != point.size()) throw Error("cube_index_native: dimension mismatch");
  Int rank = 0;
  for (std::size_t i = 0; i < l.size(); ++i) {
    rank = rank * (l[i] + 1) + point[i];
  }
  return rank;
}

}  // namespace ppp
