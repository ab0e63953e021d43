#include "ppp/instances.hpp"

#include <algorithm>
#include <map>
#include <thread>
#include <unordered_map>

#include "ppp/circuit_builder.hpp"

namespace ppp {

const char* problem_tag(const Instance& inst) {
  struct Visitor {
    const char* operator()(const PigeonholeCircuitInstance&) const { return "pigeonhole"; }
    const char* operator()(const CollisionInstance&) const { return "collision"; }
    const char* operator()(const BlichfeldtInstance&) const { return "blichfeldt"; }
    const char* operator()(const CsisInstance&) const { return "csis"; }
    const char* operator()(const WeakCsisInstance&) const { return "weakcsis"; }
    const char* operator()(const MinkowskiInstance&) const { return "minkowski"; }
    const char* operator()(const DlogInstance&) const { return "dlog"; }
  };
  return std::visit(Visitor{}, inst);
}

static void check_csis(const CsisInstance& inst) {
  if (inst.ell < 1) throw Error("csis: ell must be positive");
  if (inst.a.rows() < 1 || inst.g.shape.d < 1) throw Error("csis: empty system");
  if (inst.a.q != inst.g.matrix.q) throw Error("csis: mixed moduli");
  if (inst.a.q > (Int(1) << inst.ell)) throw Error("csis: q must be <= 2^ell");
  if (inst.g.shape.ell != inst.ell) throw Error("csis: gadget shape disagrees on ell");
  if (inst.a.cols() != inst.g.shape.cols()) throw Error("csis: A and G column mismatch");
  if (static_cast<int>(inst.b.size()) != inst.g.shape.d) throw Error("csis: b has wrong length");
  const long long m = inst.a.cols();
  const long long need = static_cast<long long>(inst.a.rows() + inst.g.shape.d) * inst.ell;
  if (m < need) throw Error("csis: m >= (n + d) * ell violated");
  if (!is_binary_invertible(inst.g.matrix, inst.g.shape))
    throw Error("csis: G is not binary invertible");
}

void check_instance(const Instance& inst) {
  struct Visitor {
    void operator()(const PigeonholeCircuitInstance& i) const {
      require_valid(i.circuit, "pigeonhole instance");
      if (i.circuit.num_inputs < 1) throw Error("pigeonhole: needs at least one input");
      if (i.circuit.num_outputs() != i.circuit.num_inputs)
        throw Error("pigeonhole: output arity must equal input arity");
    }
    void operator()(const CollisionInstance& i) const {
      require_valid(i.circuit, "collision instance");
      if (i.circuit.num_outputs() < 1) throw Error("collision: needs at least one output");
      if (i.circuit.num_outputs() >= i.circuit.num_inputs)
        throw Error("collision: needs m < n (strict shrinking)");
    }
    void operator()(const BlichfeldtInstance& i) const {
      require_valid(i.value_fn, "blichfeldt value function");
      if (i.basis.rows() != i.basis.cols() || i.basis.rows() < 1)
        throw Error("blichfeldt: basis must be square");
      if (det_exact(i.basis) == 0) throw Error("blichfeldt: singular basis");
      if (i.s < 1) throw Error("blichfeldt: s must be positive");
      if (i.value_fn.num_inputs < std::max(1, ceil_log2(i.s)))
        throw Error("blichfeldt: value function has too few inputs for s");
      if (i.value_fn.num_outputs() % i.dimension() != 0)
        throw Error("blichfeldt: output width not divisible by dimension");
      if (i.value_fn.num_outputs() < i.dimension())
        throw Error("blichfeldt: output width below dimension");
    }
    void operator()(const CsisInstance& i) const { check_csis(i); }
    void operator()(const WeakCsisInstance& i) const { check_hash_key(i); }
    void operator()(const MinkowskiInstance& i) const {
      if (i.basis.rows() != i.basis.cols() || i.basis.rows() < 1)
        throw Error("minkowski: basis must be square");
      if (det_exact(i.basis) == 0) throw Error("minkowski: singular basis");
      if (i.p < 0) throw Error("minkowski: bad norm");
    }
    void operator()(const DlogInstance& i) const {
      require_valid(i.f, "dlog operation circuit");
      if (i.s < 2) throw Error("dlog: group order must be >= 2");
      if (i.g < 0 || i.g >= i.s || i.id < 0 || i.id >= i.s || i.y < 0 || i.y >= i.s)
        throw Error("dlog: g, id, y must lie in [s]");
      const int w = i.width();
      if (i.f.num_inputs != 2 * w || i.f.num_outputs() != w)
        throw Error("dlog: operation circuit must map 2w bits to w bits");
    }
  };
  std::visit(Visitor{}, inst);
}

Solution Solution::preimage(Bits bits) {
  Solution s;
  s.kind = Kind::Preimage;
  s.x = std::move(bits);
  return s;
}
Solution Solution::collision_pair(Bits a, Bits b) {
  Solution s;
  s.kind = Kind::CollisionPair;
  s.x = std::move(a);
  s.y = std::move(b);
  return s;
}
Solution Solution::lattice_point(IntVec v) {
  Solution s;
  s.kind = Kind::LatticePoint;
  s.v = std::move(v);
  return s;
}
Solution Solution::lattice_pair(IntVec a, IntVec b) {
  Solution s;
  s.kind = Kind::LatticePair;
  s.v = std::move(a);
  s.w = std::move(b);
  return s;
}
Solution Solution::trivial_zero() {
  Solution s;
  s.kind = Kind::TrivialZero;
  return s;
}
Solution Solution::invalid_witness(Int z, Int w) {
  Solution s;
  s.kind = Kind::InvalidWitness;
  s.z1 = std::move(z);
  s.z2 = std::move(w);
  return s;
}

const char* solution_kind_tag(Solution::Kind k) {
  switch (k) {
    case Solution::Kind::Preimage: return "preimage";
    case Solution::Kind::CollisionPair: return "collision_pair";
    case Solution::Kind::LatticePoint: return "lattice_point";
    case Solution::Kind::LatticePair: return "lattice_pair";
    case Solution::Kind::TrivialZero: return "trivial_zero";
    case Solution::Kind::InvalidWitness: return "invalid_witness";
  }
  throw Error("unknown solution kind");
}

namespace {

VerifyResult accept() { return VerifyResult{true, ""}; }
VerifyResult reject(std::string reason) { return VerifyResult{false, std::move(reason)}; }

bool is_binary_bits(const Bits& b) {
  return std::all_of(b.begin(), b.end(), [](std::uint8_t v) { return v <= 1; });
}

bool all_zero(const Bits& b) {
  return std::all_of(b.begin(), b.end(), [](std::uint8_t v) { return v == 0; });
}

IntVec bits_to_vec(const Bits& b) {
  IntVec v(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) v(static_cast<Eigen::Index>(i)) = b[i];
  return v;
}

VerifyResult verify_pigeonhole(const PigeonholeCircuitInstance& inst, const Solution& sol) {
  const int n = inst.circuit.num_inputs;
  if (sol.kind == Solution::Kind::Preimage) {
    if (static_cast<int>(sol.x.size()) != n || !is_binary_bits(sol.x))
      return reject("preimage has wrong shape");
    if (!all_zero(evaluate(inst.circuit, sol.x))) return reject("C(x) != 0");
    return accept();
  }
  if (sol.kind == Solution::Kind::CollisionPair) {
    if (static_cast<int>(sol.x.size()) != n || static_cast<int>(sol.y.size()) != n ||
        !is_binary_bits(sol.x) || !is_binary_bits(sol.y))
      return reject("collision pair has wrong shape");
    if (sol.x == sol.y) return reject("collision pair is not distinct");
    if (evaluate(inst.circuit, sol.x) != evaluate(inst.circuit, sol.y))
      return reject("C(x) != C(y)");
    return accept();
  }
  return reject("solution kind not applicable to pigeonhole");
}

VerifyResult verify_collision(const CollisionInstance& inst, const Solution& sol) {
  const int n = inst.circuit.num_inputs;
  if (sol.kind != Solution::Kind::CollisionPair)
    return reject("collision expects a collision pair");
  if (static_cast<int>(sol.x.size()) != n || static_cast<int>(sol.y.size()) != n ||
      !is_binary_bits(sol.x) || !is_binary_bits(sol.y))
    return reject("collision pair has wrong shape");
  if (sol.x == sol.y) return reject("collision pair is not distinct");
  if (evaluate(inst.circuit, sol.x) != evaluate(inst.circuit, sol.y))
    return reject("C(x) != C(y)");
  return accept();
}

// Membership in S = image of the value function, by bounded enumeration.
bool in_set(const BlichfeldtInstance& inst, const IntVec& v, std::uint64_t budget) {
  if (inst.s > budget) throw BudgetExceeded("blichfeldt verify: s exceeds budget");
  for (Int z = 0; z < inst.s; ++z) {
    IntVec el = blichfeldt_element(inst, z);
    if (el == v) return true;
  }
  return false;
}

VerifyResult verify_blichfeldt(const BlichfeldtInstance& inst, const Solution& sol,
                               std::uint64_t budget) {
  const Int det = abs_int(det_exact(inst.basis));
  if (inst.s < det) {
    if (sol.kind == Solution::Kind::TrivialZero) return accept();
    return reject("s < det(L): the zero vector is the only admissible output");
  }
  switch (sol.kind) {
    case Solution::Kind::TrivialZero:
      return reject("s >= det(L): trivial zero not admissible");
    case Solution::Kind::InvalidWitness: {
      if (sol.z1 < 0 || sol.z1 >= inst.s || sol.z2 < 0 || sol.z2 >= inst.s)
        return reject("witness indices out of [s]");
      if (sol.z1 == sol.z2) return reject("witness indices equal");
      if (blichfeldt_element(inst, sol.z1) != blichfeldt_element(inst, sol.z2))
        return reject("V_S(z) != V_S(w): no non-injectivity exhibited");
      return accept();
    }
    case Solution::Kind::LatticePoint: {
      if (sol.v.size() != inst.dimension()) return reject("vector has wrong dimension");
      if (!in_set(inst, sol.v, budget)) return reject("vector not in S");
      if (!lattice_contains(inst.basis, sol.v)) return reject("vector not in the lattice");
      return accept();
    }
    case Solution::Kind::LatticePair: {
      if (sol.v.size() != inst.dimension() || sol.w.size() != inst.dimension())
        return reject("vectors have wrong dimension");
      if (sol.v == sol.w) return reject("vectors are equal");
      if (!in_set(inst, sol.v, budget) || !in_set(inst, sol.w, budget))
        return reject("vector not in S");
      IntVec diff = sol.v - sol.w;
      if (!lattice_contains(inst.basis, diff)) return reject("difference not in the lattice");
      return accept();
    }
    default: return reject("solution kind not applicable to blichfeldt");
  }
}

VerifyResult verify_csis(const CsisInstance& inst, const Solution& sol) {
  const int m = inst.a.cols();
  auto check_g = [&](const Bits& x) {
    IntVec xv = bits_to_vec(x);
    ZqVector gx = matvec_mod(inst.g.matrix, xv);
    for (int i = 0; i < gx.size(); ++i) {
      if (gx.entries(i) != mod_floor(inst.b(i), inst.a.q)) return false;
    }
    return true;
  };
  auto a_maps_to_zero = [&](const IntVec& v) {
    ZqVector av = matvec_mod(inst.a, v);
    for (int i = 0; i < av.size(); ++i)
      if (av.entries(i) != 0) return false;
    return true;
  };
  if (sol.kind == Solution::Kind::Preimage) {
    if (static_cast<int>(sol.x.size()) != m || !is_binary_bits(sol.x))
      return reject("witness has wrong shape");
    if (!a_maps_to_zero(bits_to_vec(sol.x))) return reject("A x != 0 (mod q)");
    if (!check_g(sol.x)) return reject("G x != b (mod q)");
    return accept();
  }
  if (sol.kind == Solution::Kind::CollisionPair) {
    if (static_cast<int>(sol.x.size()) != m || static_cast<int>(sol.y.size()) != m ||
        !is_binary_bits(sol.x) || !is_binary_bits(sol.y))
      return reject("witness pair has wrong shape");
    if (sol.x == sol.y) return reject("witness pair is not distinct");
    IntVec diff = bits_to_vec(sol.x) - bits_to_vec(sol.y);
    if (!a_maps_to_zero(diff)) return reject("A (x - y) != 0 (mod q)");
    if (!check_g(sol.x) || !check_g(sol.y)) return reject("G x != b or G y != b (mod q)");
    return accept();
  }
  return reject("solution kind not applicable to csis");
}

VerifyResult verify_weakcsis(const WeakCsisInstance& inst, const Solution& sol) {
  if (sol.kind != Solution::Kind::CollisionPair)
    return reject("weak-csis expects a collision pair");
  if (static_cast<int>(sol.x.size()) != inst.k() || static_cast<int>(sol.y.size()) != inst.k() ||
      !is_binary_bits(sol.x) || !is_binary_bits(sol.y))
    return reject("collision pair has wrong shape");
  if (sol.x == sol.y) return reject("collision pair is not distinct");
  if (hash_eval(inst, sol.x) != hash_eval(inst, sol.y)) return reject("H(x) != H(y)");
  return accept();
}

VerifyResult verify_minkowski(const MinkowskiInstance& inst, const Solution& sol) {
  if (sol.kind != Solution::Kind::LatticePoint) return reject("minkowski expects a lattice point");
  const int n = static_cast<int>(inst.basis.rows());
  if (sol.v.size() != n) return reject("vector has wrong dimension");
  bool nonzero = false;
  for (int i = 0; i < n; ++i) nonzero = nonzero || sol.v(i) != 0;
  if (!nonzero) return reject("vector is zero");
  if (!lattice_contains(inst.basis, sol.v)) return reject("vector not in the lattice");
  const Int det = abs_int(det_exact(inst.basis));
  if (inst.p == 0) {
    Int maxc = 0;
    for (int i = 0; i < n; ++i) maxc = std::max(maxc, abs_int(sol.v(i)));
    if (boost::multiprecision::pow(maxc, n) > det)
      return reject("infinity norm exceeds det^(1/n)");
    return accept();
  }
  // ||v||_p <= n^{1/p} det^{1/n}  <=>  (sum |v_i|^p)^n <= n^n det^p
  Int sum = 0;
  for (int i = 0; i < n; ++i) sum += boost::multiprecision::pow(abs_int(sol.v(i)), inst.p);
  if (boost::multiprecision::pow(sum, n) >
      boost::multiprecision::pow(Int(n), n) * boost::multiprecision::pow(det, inst.p))
    return reject("p-norm exceeds n^(1/p) det^(1/n)");
  return accept();
}

VerifyResult verify_dlog(const DlogInstance& inst, const Solution& sol) {
  const int w = inst.width();
  if (sol.kind == Solution::Kind::Preimage) {
    if (static_cast<int>(sol.x.size()) != w || !is_binary_bits(sol.x))
      return reject("exponent has wrong shape");
    Int e = bc(sol.x);
    if (e >= inst.s) return reject("exponent out of [s]");
    if (dlog_power_index(inst, e) != inst.y) return reject("I(g^x) != y");
    return accept();
  }
  if (sol.kind == Solution::Kind::CollisionPair) {
    if (static_cast<int>(sol.x.size()) != w || static_cast<int>(sol.y.size()) != w ||
        !is_binary_bits(sol.x) || !is_binary_bits(sol.y))
      return reject("exponent pair has wrong shape");
    Int e1 = bc(sol.x);
    Int e2 = bc(sol.y);
    if (e1 == e2) return reject("exponents are equal");
    if (e1 >= inst.s || e2 >= inst.s) return reject("exponent out of [s]");
    if (dlog_power_index(inst, e1) != dlog_power_index(inst, e2))
      return reject("I(g^x) != I(g^y): not an invalid-group certificate");
    return accept();
  }
  return reject("solution kind not applicable to dlog");
}

}  // namespace

VerifyResult verify(const Instance& inst, const Solution& sol, std::uint64_t budget) {
  check_instance(inst);
  struct Visitor {
    const Solution& sol;
    std::uint64_t budget;
    VerifyResult operator()(const PigeonholeCircuitInstance& i) const {
      return verify_pigeonhole(i, sol);
    }
    VerifyResult operator()(const CollisionInstance& i) const { return verify_collision(i, sol); }
    VerifyResult operator()(const BlichfeldtInstance& i) const {
      return verify_blichfeldt(i, sol, budget);
    }
    VerifyResult operator()(const CsisInstance& i) const { return verify_csis(i, sol); }
    VerifyResult operator()(const WeakCsisInstance& i) const { return verify_weakcsis(i, sol); }
    VerifyResult operator()(const MinkowskiInstance& i) const { return verify_minkowski(i, sol); }
    VerifyResult operator()(const DlogInstance& i) const { return verify_dlog(i, sol); }
  };
  return std::visit(Visitor{sol, budget}, inst);
}

namespace {

// Deterministic scan over all inputs of a circuit: the smallest zero-preimage
// index wins outright; otherwise the collision with the smallest second index
// (then smallest first index). Thread partitioning cannot change the result.
struct ScanOutcome {
  std::optional<std::uint64_t> preimage;
  std::optional<std::pair<std::uint64_t, std::uint64_t>> collision;
};

ScanOutcome scan_chunk(const Circuit& c, int n, std::uint64_t begin, std::uint64_t end,
                       bool want_preimage,
                       std::unordered_map<std::uint64_t, std::pair<std::uint64_t, std::uint64_t>>& seen) {
  ScanOutcome out;
  Bits scratch;
  Bits input(n);
  constexpr std::uint64_t kNone = UINT64_MAX;
  for (std::uint64_t x = begin; x < end; ++x) {
    for (int i = 0; i < n; ++i) input[n - 1 - i] = (x >> i) & 1;
    Bits val = evaluate_with_scratch(c, input, scratch);
    const std::uint64_t key = bc_u64(val);
    if (want_preimage && key == 0) {
      out.preimage = x;
      return out;  // minimal preimage in this chunk; it beats everything after
    }
    auto [it, inserted] = seen.try_emplace(key, std::pair<std::uint64_t, std::uint64_t>{x, kNone});
    if (!inserted && it->second.second == kNone) {
      it->second.second = x;
      if (!want_preimage) {
        out.collision = {it->second.first, x};
        return out;
      }
    }
  }
  return out;
}

Solution scan_circuit(const Circuit& c, bool want_preimage, std::uint64_t budget, int threads) {
  const int n = c.num_inputs;
  if (n > 62) throw BudgetExceeded("enumeration space exceeds 2^62");
  const std::uint64_t space = std::uint64_t(1) << n;
  if (space > budget) throw BudgetExceeded("enumeration space " + std::to_string(space) +
                                           " exceeds budget " + std::to_string(budget));
  threads = std::max(1, std::min<int>(threads, 64));
  constexpr std::uint64_t kNone = UINT64_MAX;

  std::vector<ScanOutcome> outcomes(threads);
  std::vector<std::unordered_map<std::uint64_t, std::pair<std::uint64_t, std::uint64_t>>> maps(threads);
  if (threads == 1) {
    outcomes[0] = scan_chunk(c, n, 0, space, want_preimage, maps[0]);
  } else {
    std::vector<std::thread> pool;
    const std::uint64_t chunk = (space + threads - 1) / threads;
    for (int t = 0; t < threads; ++t) {
      const std::uint64_t begin = std::min<std::uint64_t>(space, chunk * t);
      const std::uint64_t end = std::min<std::uint64_t>(space, begin + chunk);
      pool.emplace_back([&, t, begin, end] {
        outcomes[t] = scan_chunk(c, n, begin, end, want_preimage, maps[t]);
      });
    }
    for (auto& th : pool) th.join();
  }

  std::optional<std::uint64_t> best_preimage;
  for (const ScanOutcome& o : outcomes) {
    if (o.preimage && (!best_preimage || *o.preimage < *best_preimage)) best_preimage = o.preimage;
  }
  if (best_preimage) return Solution::preimage(bd_u64(*best_preimage, n));

  // merge per-chunk first/second occurrences into global ones
  std::unordered_map<std::uint64_t, std::pair<std::uint64_t, std::uint64_t>> merged;
  auto feed = [&](std::uint64_t key, std::uint64_t idx) {
    if (idx == kNone) return;
    auto [it, inserted] = merged.try_emplace(key, std::pair<std::uint64_t, std::uint64_t>{idx, kNone});
    if (inserted) return;
    auto& [a, b] = it->second;
    if (idx < a) {
      b = a;
      a = idx;
    } else if (idx != a && idx < b) {
      b = idx;
    }
  };
  for (auto& m : maps) {
    for (auto& [key, pair] : m) {
      feed(key, pair.first);
      feed(key, pair.second);
    }
  }
  std::optional<std::pair<std::uint64_t, std::uint64_t>> best;
  for (auto& [key, pair] : merged) {
    if (pair.second == kNone) continue;
    if (!best || pair.second < best->second ||
        (pair.second == best->second && pair.first < best->first)) {
      best = pair;
    }
  }
  if (!best) throw Error("scan found no solution; instance violates totality");
  return Solution::collision_pair(bd_u64(best->first, n), bd_u64(best->second, n));
}

Solution brute_force_blichfeldt(const BlichfeldtInstance& inst, std::uint64_t budget) {
  const Int det = abs_int(det_exact(inst.basis));
  if (inst.s < det) return Solution::trivial_zero();
  if (inst.s > budget) throw BudgetExceeded("blichfeldt: s exceeds budget");
  CosetIndexer ix = make_coset_indexer(inst.basis);
  std::map<Int, std::pair<Int, IntVec>> seen;
  for (Int z = 0; z < inst.s; ++z) {
    IntVec v = blichfeldt_element(inst, z);
    Int idx = coset_index(ix, v);
    if (idx == 0) return Solution::lattice_point(std::move(v));
    auto it = seen.find(idx);
    if (it != seen.end()) {
      if (it->second.second == v) return Solution::invalid_witness(it->second.first, z);
      return Solution::lattice_pair(it->second.second, std::move(v));
    }
    seen.emplace(idx, std::make_pair(z, std::move(v)));
  }
  throw Error("blichfeldt oracle found nothing: value function must be oversized");
}

Solution brute_force_csis(const CsisInstance& inst, std::uint64_t budget) {
  const int m = inst.a.cols();
  const int d = inst.g.shape.d;
  const int ell = inst.g.shape.ell;
  const int kf = inst.g.shape.k;
  const Int q = inst.a.q;
  const bool pow2 = q == (Int(1) << ell);
  const int n_out = inst.a.rows() * ell;
  if (n_out > 62) throw BudgetExceeded("csis: digest too wide to tabulate");

  const SmallZq ga = to_small(inst.a);
  const SmallZq gg = to_small(inst.g.matrix);
  std::vector<std::int64_t> b64(d);
  for (int i = 0; i < d; ++i) b64[i] = static_cast<std::int64_t>(mod_floor(inst.b(i), q));

  auto digest_of = [&](const std::vector<std::uint8_t>& x) {
    std::uint64_t key = 0;
    for (int r = 0; r < ga.rows; ++r) {
      std::int64_t acc = 0;
      const std::int64_t* row = &ga.e[static_cast<std::size_t>(r) * ga.cols];
      for (int c = 0; c < ga.cols; ++c)
        if (x[c]) acc += row[c];
      key = (key << ell) | static_cast<std::uint64_t>(acc % ga.q);
    }
    return key;
  };

  if (pow2) {
    // every solution of G x = b splits as a binary free part plus its unique
    // gadget completion, so the free part enumerates the whole solution set
    if (kf > 62) throw BudgetExceeded("csis: free part exceeds 2^62");
    const std::uint64_t space = std::uint64_t(1) << kf;
    if (space > budget) throw BudgetExceeded("csis: free-part space exceeds budget");
    std::vector<std::uint8_t> x(m);
    std::unordered_map<std::uint64_t, std::uint64_t> seen;
    std::optional<std::uint64_t> first_preimage;
    std::optional<std::pair<std::uint64_t, std::uint64_t>> first_coll;
    for (std::uint64_t fc = 0; fc < space; ++fc) {
      for (int j = 0; j < kf; ++j) x[d * ell + j] = (fc >> (kf - 1 - j)) & 1;
      backsolve_small(gg, d, ell, b64, x);
      const std::uint64_t key = digest_of(x);
      if (key == 0) {
        first_preimage = fc;
        break;
      }
      if (!first_coll) {
        auto [it, inserted] = seen.try_emplace(key, fc);
        if (!inserted) first_coll = {it->second, fc};
      }
    }
    auto witness = [&](std::uint64_t fc) {
      Bits free(kf);
      for (int j = 0; j < kf; ++j) free[j] = (fc >> (kf - 1 - j)) & 1;
      return csis_witness_from_free_part(inst, free);
    };
    if (first_preimage) return Solution::preimage(witness(*first_preimage));
    if (first_coll) return Solution::collision_pair(witness(first_coll->first), witness(first_coll->second));
    throw Error("csis oracle found nothing; instance violates totality");
  }

  // general q: enumerate binary witnesses directly
  if (m > 62) throw BudgetExceeded("csis: witness space exceeds 2^62");
  const std::uint64_t space = std::uint64_t(1) << m;
  if (space > budget) throw BudgetExceeded("csis: witness space exceeds budget");
  std::vector<std::uint8_t> x(m);
  std::unordered_map<std::uint64_t, std::uint64_t> seen;
  std::optional<std::uint64_t> first_preimage;
  std::optional<std::pair<std::uint64_t, std::uint64_t>> first_coll;
  auto fill = [&](std::uint64_t w) {
    for (int j = 0; j < m; ++j) x[j] = (w >> (m - 1 - j)) & 1;
  };
  for (std::uint64_t w = 0; w < space; ++w) {
    fill(w);
    bool g_ok = true;
    for (int r = 0; r < d && g_ok; ++r) {
      std::int64_t acc = 0;
      const std::int64_t* row = &gg.e[static_cast<std::size_t>(r) * gg.cols];
      for (int c = 0; c < m; ++c)
        if (x[c]) acc += row[c];
      g_ok = acc % gg.q == b64[r];
    }
    if (!g_ok) continue;
    const std::uint64_t key = digest_of(x);
    if (key == 0) {
      first_preimage = w;
      break;
    }
    if (!first_coll) {
      auto [it, inserted] = seen.try_emplace(key, w);
      if (!inserted) first_coll = {it->second, w};
    }
  }
  auto witness = [&](std::uint64_t w) {
    Bits bits(m);
    for (int j = 0; j < m; ++j) bits[j] = (w >> (m - 1 - j)) & 1;
    return bits;
  };
  if (first_preimage) return Solution::preimage(witness(*first_preimage));
  if (first_coll) return Solution::collision_pair(witness(first_coll->first), witness(first_coll->second));
  throw Error("csis oracle found nothing; instance violates totality");
}

Solution brute_force_weakcsis(const WeakCsisInstance& inst, std::uint64_t budget) {
  const int k = inst.k();
  const int d = inst.d();
  const int ell = inst.ell();
  const int out_bits = inst.output_bits();
  if (k > 62) throw BudgetExceeded("weakcsis: input space exceeds 2^62");
  if (out_bits > 62) throw BudgetExceeded("weakcsis: digest too wide to tabulate");
  const std::uint64_t space = std::uint64_t(1) << k;
  if (space > budget) throw BudgetExceeded("weakcsis: input space exceeds budget");
  const SmallZq ga = to_small(inst.a);
  const SmallZq gg = to_small(inst.g.matrix);
  std::vector<std::uint8_t> x(ga.cols);
  std::unordered_map<std::uint64_t, std::uint64_t> seen;
  for (std::uint64_t in = 0; in < space; ++in) {
    for (int j = 0; j < k; ++j) x[d * ell + j] = (in >> (k - 1 - j)) & 1;
    backsolve_small(gg, d, ell, {}, x);
    std::uint64_t key = 0;
    for (int r = 0; r < ga.rows; ++r) {
      std::int64_t acc = 0;
      const std::int64_t* row = &ga.e[static_cast<std::size_t>(r) * ga.cols];
      for (int c = 0; c < ga.cols; ++c)
        if (x[c]) acc += row[c];
      key = (key << ell) | static_cast<std::uint64_t>(acc % ga.q);
    }
    auto [it, inserted] = seen.try_emplace(key, in);
    if (!inserted) {
      Bits x1 = bd_u64(it->second, k);
      Bits x2 = bd_u64(in, k);
      return Solution::collision_pair(std::move(x1), std::move(x2));
    }
  }
  throw Error("weakcsis oracle found nothing despite shrinkage");
}

Solution brute_force_minkowski(const MinkowskiInstance& inst, std::uint64_t budget) {
  const int n = static_cast<int>(inst.basis.rows());
  const Int det = abs_int(det_exact(inst.basis));
  const Int c = iroot(det, n);
  const Int side = 2 * c + 1;
  Int space = 1;
  for (int i = 0; i < n; ++i) space *= side;
  if (space > budget) throw BudgetExceeded("minkowski: box exceeds budget");
  const IntMat adj = adjugate(inst.basis);
  const Int sdet = det_exact(inst.basis);
  IntVec v(n);
  std::vector<Int> coord(n, -c);
  for (;;) {
    bool zero = true;
    for (int i = 0; i < n; ++i) {
      v(i) = coord[i];
      zero = zero && coord[i] == 0;
    }
    if (!zero) {
      IntVec y = adj * v;
      bool member = true;
      for (int i = 0; i < n && member; ++i) member = y(i) % sdet == 0;
      if (member) return Solution::lattice_point(std::move(v));
    }
    int pos = n - 1;
    while (pos >= 0) {
      coord[pos] += 1;
      if (coord[pos] <= c) break;
      coord[pos] = -c;
      --pos;
    }
    if (pos < 0) break;
  }
  throw Error("minkowski oracle found no vector; box search is incomplete");
}

Solution brute_force_dlog(const DlogInstance& inst, std::uint64_t budget) {
  if (inst.s > budget) throw BudgetExceeded("dlog: order exceeds budget");
  const int w = inst.width();
  std::unordered_map<std::uint64_t, std::uint64_t> seen;
  std::optional<std::pair<std::uint64_t, std::uint64_t>> first_coll;
  const std::uint64_t s = static_cast<std::uint64_t>(inst.s);
  for (std::uint64_t e = 0; e < s; ++e) {
    const Int val = dlog_power_index(inst, Int(e));
    if (val == inst.y) return Solution::preimage(bd_u64(e, w));
    if (!first_coll) {
      const std::uint64_t key = static_cast<std::uint64_t>(val);
      auto [it, inserted] = seen.try_emplace(key, e);
      if (!inserted) first_coll = {it->second, e};
    }
  }
  if (first_coll)
    return Solution::collision_pair(bd_u64(first_coll->first, w), bd_u64(first_coll->second, w));
  throw Error("dlog oracle: neither a discrete log nor an invalid-group certificate exists");
}

}  // namespace

Solution brute_force(const Instance& inst, std::uint64_t budget, int threads) {
  check_instance(inst);
  struct Visitor {
    std::uint64_t budget;
    int threads;
    Solution operator()(const PigeonholeCircuitInstance& i) const {
      return scan_circuit(i.circuit, /*want_preimage=*/true, budget, threads);
    }
    Solution operator()(const CollisionInstance& i) const {
      return scan_circuit(i.circuit, /*want_preimage=*/false, budget, threads);
    }
    Solution operator()(const BlichfeldtInstance& i) const {
      return brute_force_blichfeldt(i, budget);
    }
    Solution operator()(const CsisInstance& i) const { return brute_force_csis(i, budget); }
    Solution operator()(const WeakCsisInstance& i) const {
      return brute_force_weakcsis(i, budget);
    }
    Solution operator()(const MinkowskiInstance& i) const {
      return brute_force_minkowski(i, budget);
    }
    Solution operator()(const DlogInstance& i) const { return brute_force_dlog(i, budget); }
  };
  return std::visit(Visitor{budget, threads}, inst);
}

Bits csis_witness_from_free_part(const CsisInstance& inst, std::span<const std::uint8_t> free_bits) {
  if (static_cast<int>(free_bits.size()) != inst.g.shape.k)
    throw Error("csis witness: free part has wrong length");
  std::vector<Int> rf(free_bits.size());
  for (std::size_t i = 0; i < free_bits.size(); ++i) rf[i] = free_bits[i] ? 1 : 0;
  std::vector<Int> b(inst.g.shape.d);
  for (int i = 0; i < inst.g.shape.d; ++i) b[i] = inst.b(i);
  Bits r = backsolve(inst.g, rf, b);
  Bits witness;
  witness.reserve(r.size() + free_bits.size());
  witness.insert(witness.end(), r.begin(), r.end());
  witness.insert(witness.end(), free_bits.begin(), free_bits.end());
  return witness;
}

Int dlog_power_index(const DlogInstance& inst, const Int& exponent) {
  const int w = inst.width();
  Bits scratch;
  Bits in(2 * w);
  auto apply = [&](const Int& a, const Int& b) {
    Bits ab = bd(a, w);
    Bits bb = bd(b, w);
    std::copy(ab.begin(), ab.end(), in.begin());
    std::copy(bb.begin(), bb.end(), in.begin() + w);
    return bc(evaluate_with_scratch(inst.f, in, scratch));
  };
  // fixed-width square-and-multiply; the emitted circuit mirrors this exactly
  Bits ebits = bd(exponent, w);
  Int cur = inst.id;
  for (int i = 0; i < w; ++i) {
    cur = apply(cur, cur);
    if (ebits[i]) cur = apply(cur, inst.g);
  }
  return cur;
}

IntVec blichfeldt_element(const BlichfeldtInstance& inst, const Int& index) {
  if (index < 0 || index >= inst.s) throw Error("blichfeldt_element: index out of [s]");
  Bits in = bd(index, inst.value_fn.num_inputs);
  Bits out = evaluate(inst.value_fn, in);
  const int n = inst.dimension();
  const int w = inst.coord_width();
  IntVec v(n);
  for (int i = 0; i < n; ++i) {
    v(i) = bc(std::span<const std::uint8_t>(out).subspan(static_cast<std::size_t>(i) * w, w));
  }
  return v;
}

Circuit gen_random_circuit(int num_inputs, int num_outputs, int gates, Rng& rng) {
  if (num_inputs < 1 || num_outputs < 1 || gates < 1)
    throw Error("gen_random_circuit: sizes must be positive");
  static constexpr GateKind kKinds[5] = {GateKind::And, GateKind::Or, GateKind::Xor,
                                         GateKind::Nand, GateKind::Nor};
  Circuit c;
  c.num_inputs = num_inputs;
  for (int t = 0; t < gates; ++t) {
    const int limit = num_inputs + t;
    const GateKind k = kKinds[rng.below(5)];
    const int p1 = static_cast<int>(rng.below(limit));
    const int p2 = static_cast<int>(rng.below(limit));
    c.gates.push_back({k, p1, p2});
  }
  for (int i = 0; i < num_outputs; ++i)
    c.outputs.push_back(static_cast<int>(rng.below(c.num_nodes())));
  return c;
}

IntMat gen_random_basis(int dim, const Int& det_max, Rng& rng) {
  if (dim < 1) throw Error("gen_random_basis: dimension must be positive");
  if (det_max < 1) throw Error("gen_random_basis: det bound must be positive");
  for (int attempt = 0; attempt < 100000; ++attempt) {
    IntMat b(dim, dim);
    for (int r = 0; r < dim; ++r)
      for (int c = 0; c < dim; ++c) b(r, c) = Int(static_cast<std::int64_t>(rng.below(7))) - 3;
    Int d = det_exact(b);
    if (d != 0 && abs_int(d) <= det_max) return b;
  }
  throw Error("gen_random_basis: could not hit the det bound");
}

Circuit zp_star_op_circuit(const Int& p, int width) {
  if (p < 3) throw Error("zp_star_op_circuit: p must be >= 3");
  CircuitBuilder b(2 * width);
  std::vector<int> xm(width), ym(width);
  for (int i = 0; i < width; ++i) {
    xm[i] = b.input(i);
    ym[i] = b.input(width + i);
  }
  Word x = b.word_from_msb(xm);
  Word y = b.word_from_msb(ym);
  Word a1 = b.add_const(b.zero_extend(x, width + 1), 1, width + 1);
  Word b1 = b.add_const(b.zero_extend(y, width + 1), 1, width + 1);
  Word prod = b.mul(a1, b1, 2 * width + 2);
  Word rem = b.mod_const_word(prod, p);
  Word dec = b.sub_const_wrap(rem, 1, static_cast<int>(rem.size()));
  Word out = b.truncate(b.zero_extend(dec, width), width);
  return b.build(b.word_to_msb(out));
}

namespace {

bool is_prime_int(const Int& p) {
  if (p < 2) return false;
  for (Int f = 2; f * f <= p; ++f)
    if (p % f == 0) return false;
  return true;
}

Int find_generator(const Int& p) {
  const Int order = p - 1;
  std::vector<Int> factors;
  Int rest = order;
  for (Int f = 2; f * f <= rest; ++f) {
    if (rest % f == 0) {
      factors.push_back(f);
      while (rest % f == 0) rest /= f;
    }
  }
  if (rest > 1) factors.push_back(rest);
  for (Int c = 2; c < p; ++c) {
    bool ok = true;
    for (const Int& f : factors) {
      if (boost::multiprecision::powm(c, order / f, p) == 1) {
        ok = false;
        break;
      }
    }
    if (ok) return c;
  }
  throw Error("find_generator: no generator (p not prime?)");
}

Instance gen_blichfeldt(const GenParams& params, Rng& rng) {
  IntMat basis = gen_random_basis(params.dim, params.det_max, rng);
  const Int det = abs_int(det_exact(basis));
  const int variant = static_cast<int>(rng.below(4));
  if (variant == 2) {
    // a plain random circuit as the value function: likely non-injective,
    // exercising the invalid-witness path
    const int inputs = 2 + static_cast<int>(rng.below(3));
    const int w = 1 + static_cast<int>(rng.below(2));
    Circuit f = gen_random_circuit(inputs, params.dim * w, 6 + static_cast<int>(rng.below(8)), rng);
    return BlichfeldtInstance{std::move(basis), Int(1) << inputs, std::move(f)};
  }
  const Int box = iroot(det, params.dim);
  std::vector<Int> sides(params.dim, box);
  Circuit cube = cube_value_circuit(sides);
  Int s = cube_size(sides);
  if (variant == 3) s = det;  // exercise s = det exactly
  if (variant == 1) {
    // injective tweak: xor the element bits with a constant mask
    CircuitBuilder b(cube.num_inputs);
    std::vector<int> in(cube.num_inputs);
    for (int i = 0; i < cube.num_inputs; ++i) in[i] = b.input(i);
    std::vector<int> out = b.embed(cube, in);
    for (int& wire : out) {
      if (rng.coin()) wire = b.lxor(wire, b.one());
    }
    cube = b.build(out);
  }
  return BlichfeldtInstance{std::move(basis), std::move(s), std::move(cube)};
}

}  // namespace

Instance gen_random(const std::string& kind, const GenParams& params, std::uint64_t seed) {
  Rng rng(seed);
  Instance out;
  if (kind == "pigeonhole") {
    out = PigeonholeCircuitInstance{gen_random_circuit(params.n, params.n, params.gates, rng)};
  } else if (kind == "collision") {
    if (params.m >= params.n) throw Error("gen_random: collision needs m < n");
    out = CollisionInstance{gen_random_circuit(params.n, params.m, params.gates, rng)};
  } else if (kind == "blichfeldt") {
    out = gen_blichfeldt(params, rng);
  } else if (kind == "csis") {
    if (params.n < 1 || params.d < 1 || params.ell < 1)
      throw Error("gen_random: csis needs positive n, d, ell");
    const Int q = Int(1) << params.ell;
    const GadgetShape shape{params.d, params.ell, params.n * params.ell};
    BinaryInvertible g = sample_binary_invertible(shape, q, rng);
    IntMat a(params.n, shape.cols());
    for (int r = 0; r < params.n; ++r)
      for (int c = 0; c < shape.cols(); ++c) a(r, c) = rng.below_int(q);
    IntVec b(params.d);
    for (int i = 0; i < params.d; ++i) b(i) = rng.below_int(q);
    out = CsisInstance{make_zq_matrix(q, std::move(a)), std::move(g), std::move(b), params.ell};
  } else if (kind == "weakcsis") {
    out = keygen(HashParams{params.k, params.ell, params.d, params.r}, rng.next());
  } else if (kind == "minkowski") {
    out = MinkowskiInstance{gen_random_basis(params.dim, params.det_max, rng), params.p_norm};
  } else if (kind == "dlog") {
    if (!is_prime_int(params.prime) || params.prime < 3)
      throw Error("gen_random: dlog needs an odd prime");
    const Int s = params.prime - 1;
    const Int c = find_generator(params.prime);
    DlogInstance inst;
    inst.s = s;
    inst.g = c - 1;
    inst.id = 0;
    inst.f = zp_star_op_circuit(params.prime, std::max(1, ceil_log2(s)));
    inst.y = rng.below_int(s);
    out = inst;
  } else {
    throw Error("gen_random: unknown problem kind: " + kind);
  }
  check_instance(out);
  return out;
}

}  // namespace ppp
