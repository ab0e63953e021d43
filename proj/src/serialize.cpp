#include "ppp/serialize.hpp"

#include <fstream>

namespace ppp {

Json int_to_json(const Int& v) {
  static const Int lo = Int(std::numeric_limits<std::int64_t>::min());
  static const Int hi = Int(std::numeric_limits<std::int64_t>::max());
  if (v >= lo && v <= hi) return Json(static_cast<std::int64_t>(v));
  return Json(v.str());
}

Int int_from_json(const Json& j) {
  if (j.is_number_integer()) return Int(j.get<std::int64_t>());
  if (j.is_string()) return Int(j.get<std::string>());
  throw Error("expected an integer or a decimal string");
}

Json circuit_to_json(const Circuit& c) {
  Json nodes = Json::array();
  for (const Gate& g : c.gates) {
    Json node;
    node["kind"] = gate_kind_name(g.kind);
    if (g.pred1 >= 0) node["pred1"] = g.pred1;
    if (g.pred2 >= 0) node["pred2"] = g.pred2;
    nodes.push_back(std::move(node));
  }
  return Json{{"num_inputs", c.num_inputs}, {"nodes", std::move(nodes)}, {"outputs", c.outputs}};
}

Circuit circuit_from_json(const Json& j) {
  Circuit c;
  c.num_inputs = j.at("num_inputs").get<int>();
  for (const Json& node : j.at("nodes")) {
    Gate g;
    g.kind = gate_kind_from_name(node.at("kind").get<std::string>());
    g.pred1 = node.value("pred1", -1);
    g.pred2 = node.value("pred2", -1);
    c.gates.push_back(g);
  }
  c.outputs = j.at("outputs").get<std::vector<int>>();
  require_valid(c, "circuit_from_json");
  return c;
}

static Json entries_to_json(const IntMat& m) {
  Json entries = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c) entries.push_back(int_to_json(m(r, c)));
  return entries;
}

static IntMat entries_from_json(const Json& j, int rows, int cols) {
  if (static_cast<int>(j.size()) != rows * cols) throw Error("matrix entries have wrong count");
  IntMat m(rows, cols);
  int i = 0;
  for (const Json& e : j) {
    m(i / cols, i % cols) = int_from_json(e);
    ++i;
  }
  return m;
}

Json basis_to_json(const IntMat& b) {
  return Json{{"n", static_cast<int>(b.rows())}, {"entries", entries_to_json(b)}};
}

IntMat basis_from_json(const Json& j) {
  const int n = j.at("n").get<int>();
  return entries_from_json(j.at("entries"), n, n);
}

Json zq_matrix_to_json(const ZqMatrix& m) {
  return Json{{"q", int_to_json(m.q)},
              {"rows", m.rows()},
              {"cols", m.cols()},
              {"entries", entries_to_json(m.entries)}};
}

ZqMatrix zq_matrix_from_json(const Json& j) {
  const int rows = j.at("rows").get<int>();
  const int cols = j.at("cols").get<int>();
  return make_zq_matrix(int_from_json(j.at("q")), entries_from_json(j.at("entries"), rows, cols));
}

Json binary_invertible_to_json(const BinaryInvertible& g) {
  Json j = zq_matrix_to_json(g.matrix);
  j["d"] = g.shape.d;
  j["ell"] = g.shape.ell;
  j["k"] = g.shape.k;
  return j;
}

BinaryInvertible binary_invertible_from_json(const Json& j) {
  GadgetShape shape{j.at("d").get<int>(), j.at("ell").get<int>(), j.at("k").get<int>()};
  return make_binary_invertible(zq_matrix_from_json(j), shape);
}

Json snf_to_json(const SnfDecomposition& s) {
  auto mat = [](const IntMat& m) {
    return Json{{"rows", static_cast<int>(m.rows())},
                {"cols", static_cast<int>(m.cols())},
                {"entries", entries_to_json(m)}};
  };
  return Json{{"u", mat(s.u)}, {"d", mat(s.d)}, {"v", mat(s.v)}};
}

Json hash_key_to_json(const HashKey& k) {
  Json params{{"k", k.k()}, {"ell", k.ell()}, {"d", k.d()}, {"r", k.r()}};
  return Json{{"params", std::move(params)},
              {"A", zq_matrix_to_json(k.a)},
              {"G", binary_invertible_to_json(k.g)}};
}

HashKey hash_key_from_json(const Json& j) {
  HashKey key{zq_matrix_from_json(j.at("A")), binary_invertible_from_json(j.at("G"))};
  check_hash_key(key);
  if (j.contains("params")) {
    const Json& p = j.at("params");
    if (p.at("k").get<int>() != key.k() || p.at("ell").get<int>() != key.ell() ||
        p.at("d").get<int>() != key.d() || p.at("r").get<int>() != key.r())
      throw Error("hash key: params disagree with matrices");
  }
  return key;
}

static Json intvec_to_json(const IntVec& v) {
  Json a = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(int_to_json(v(i)));
  return a;
}

static IntVec intvec_from_json(const Json& j) {
  IntVec v(j.size());
  Eigen::Index i = 0;
  for (const Json& e : j) v(i++) = int_from_json(e);
  return v;
}

Json instance_to_json(const Instance& inst) {
  struct Visitor {
    Json operator()(const PigeonholeCircuitInstance& i) const {
      return Json{{"circuit", circuit_to_json(i.circuit)}};
    }
    Json operator()(const CollisionInstance& i) const {
      return Json{{"circuit", circuit_to_json(i.circuit)}};
    }
    Json operator()(const BlichfeldtInstance& i) const {
      return Json{{"basis", basis_to_json(i.basis)},
                  {"s", int_to_json(i.s)},
                  {"value_fn", circuit_to_json(i.value_fn)}};
    }
    Json operator()(const CsisInstance& i) const {
      return Json{{"A", zq_matrix_to_json(i.a)},
                  {"G", binary_invertible_to_json(i.g)},
                  {"b", intvec_to_json(i.b)},
                  {"ell", i.ell}};
    }
    Json operator()(const WeakCsisInstance& i) const { return hash_key_to_json(i); }
    Json operator()(const MinkowskiInstance& i) const {
      Json p = i.p == 0 ? Json("inf") : Json(i.p);
      return Json{{"basis", basis_to_json(i.basis)}, {"p", std::move(p)}};
    }
    Json operator()(const DlogInstance& i) const {
      return Json{{"s", int_to_json(i.s)},
                  {"g", int_to_json(i.g)},
                  {"id", int_to_json(i.id)},
                  {"f", circuit_to_json(i.f)},
                  {"y", int_to_json(i.y)}};
    }
  };
  return Json{{"problem", problem_tag(inst)}, {"payload", std::visit(Visitor{}, inst)}};
}

Instance instance_from_json(const Json& j) {
  const std::string tag = j.at("problem").get<std::string>();
  const Json& p = j.at("payload");
  Instance inst;
  if (tag == "pigeonhole") {
    inst = PigeonholeCircuitInstance{circuit_from_json(p.at("circuit"))};
  } else if (tag == "collision") {
    inst = CollisionInstance{circuit_from_json(p.at("circuit"))};
  } else if (tag == "blichfeldt") {
    inst = BlichfeldtInstance{basis_from_json(p.at("basis")), int_from_json(p.at("s")),
                              circuit_from_json(p.at("value_fn"))};
  } else if (tag == "csis") {
    inst = CsisInstance{zq_matrix_from_json(p.at("A")), binary_invertible_from_json(p.at("G")),
                        intvec_from_json(p.at("b")), p.at("ell").get<int>()};
  } else if (tag == "weakcsis") {
    inst = hash_key_from_json(p);
  } else if (tag == "minkowski") {
    int pn = 0;
    if (!p.at("p").is_string()) pn = p.at("p").get<int>();
    inst = MinkowskiInstance{basis_from_json(p.at("basis")), pn};
  } else if (tag == "dlog") {
    DlogInstance d;
    d.s = int_from_json(p.at("s"));
    d.g = int_from_json(p.at("g"));
    d.id = int_from_json(p.at("id"));
    d.f = circuit_from_json(p.at("f"));
    d.y = int_from_json(p.at("y"));
    inst = d;
  } else {
    throw Error("unknown problem tag: " + tag);
  }
  check_instance(inst);
  return inst;
}

Json solution_to_json(const Solution& sol) {
  Json j{{"kind", solution_kind_tag(sol.kind)}};
  switch (sol.kind) {
    case Solution::Kind::Preimage: j["x"] = bits_to_string(sol.x); break;
    case Solution::Kind::CollisionPair:
      j["x"] = bits_to_string(sol.x);
      j["y"] = bits_to_string(sol.y);
      break;
    case Solution::Kind::LatticePoint: j["v"] = intvec_to_json(sol.v); break;
    case Solution::Kind::LatticePair:
      j["v"] = intvec_to_json(sol.v);
      j["w"] = intvec_to_json(sol.w);
      break;
    case Solution::Kind::TrivialZero: break;
    case Solution::Kind::InvalidWitness:
      j["z"] = int_to_json(sol.z1);
      j["w"] = int_to_json(sol.z2);
      break;
  }
  return j;
}

Solution solution_from_json(const Json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "preimage")
    return Solution::preimage(bits_from_string(j.at("x").get<std::string>()));
  if (kind == "collision_pair")
    return Solution::collision_pair(bits_from_string(j.at("x").get<std::string>()),
                                    bits_from_string(j.at("y").get<std::string>()));
  if (kind == "lattice_point") return Solution::lattice_point(intvec_from_json(j.at("v")));
  if (kind == "lattice_pair")
    return Solution::lattice_pair(intvec_from_json(j.at("v")), intvec_from_json(j.at("w")));
  if (kind == "trivial_zero") return Solution::trivial_zero();
  if (kind == "invalid_witness")
    return Solution::invalid_witness(int_from_json(j.at("z")), int_from_json(j.at("w")));
  throw Error("unknown solution kind: " + kind);
}

Json layout_to_json(const CsisFromCircuitLayout& l) {
  return Json{{"n", l.n},
              {"n_out", l.n_out},
              {"ell", l.ell},
              {"block_sizes", l.block_sizes},
              {"k_cols", l.k_cols}};
}

CsisFromCircuitLayout layout_from_json(const Json& j) {
  CsisFromCircuitLayout l;
  l.n = j.at("n").get<int>();
  l.n_out = j.at("n_out").get<int>();
  l.ell = j.at("ell").get<int>();
  l.block_sizes = j.at("block_sizes").get<std::vector<int>>();
  l.k_cols = j.at("k_cols").get<std::vector<int>>();
  return l;
}

std::vector<std::pair<std::string, std::string>> reduction_pairs() {
  return {
      {"pigeonhole", "csis"},     {"csis", "pigeonhole"},    {"pigeonhole", "blichfeldt"},
      {"blichfeldt", "pigeonhole"}, {"collision", "collision"}, {"collision", "weakcsis"},
      {"weakcsis", "collision"},  {"minkowski", "blichfeldt"}, {"dlog", "pigeonhole"},
  };
}

ReductionBundle run_forward(const std::string& from, const std::string& to, const Instance& src,
                            int ell) {
  ReductionBundle b;
  b.from = from;
  b.to = to;
  b.source = src;
  b.meta = Json::object();
  if (from == "pigeonhole" && to == "csis") {
    auto r = reduce_pigeonhole_to_csis(std::get<PigeonholeCircuitInstance>(src), ell);
    b.target = Instance(std::move(r.target));
    b.meta["layout"] = layout_to_json(r.layout);
  } else if (from == "csis" && to == "pigeonhole") {
    auto r = reduce_csis_to_pigeonhole(std::get<CsisInstance>(src));
    b.target = Instance(std::move(r.target));
  } else if (from == "pigeonhole" && to == "blichfeldt") {
    auto r = reduce_pigeonhole_to_blichfeldt(std::get<PigeonholeCircuitInstance>(src));
    b.target = Instance(std::move(r.target));
  } else if (from == "blichfeldt" && to == "pigeonhole") {
    auto r = reduce_blichfeldt_to_pigeonhole(std::get<BlichfeldtInstance>(src));
    if (r.target) b.target = Instance(std::move(*r.target));
    const char* sc = r.short_circuit == BlichfeldtToPigeonhole::Short::None ? "none"
                     : r.short_circuit == BlichfeldtToPigeonhole::Short::TrivialZero
                         ? "trivial_zero"
                         : "det_one";
    b.meta["short"] = sc;
    b.meta["det"] = int_to_json(r.det);
    b.meta["ell"] = r.ell;
  } else if (from == "collision" && to == "collision") {
    auto r = reduce_collision_shrink(std::get<CollisionInstance>(src));
    b.target = Instance(std::move(r.target));
  } else if (from == "collision" && to == "weakcsis") {
    auto r = reduce_collision_to_weakcsis(std::get<CollisionInstance>(src), ell);
    b.target = Instance(std::move(r.target));
    b.meta["layout"] = layout_to_json(r.layout);
  } else if (from == "weakcsis" && to == "collision") {
    auto r = reduce_weakcsis_to_collision(std::get<WeakCsisInstance>(src));
    b.target = Instance(std::move(r.target));
  } else if (from == "minkowski" && to == "blichfeldt") {
    auto r = reduce_minkowski_to_blichfeldt(std::get<MinkowskiInstance>(src));
    b.target = Instance(std::move(r.target));
    b.meta["box_side"] = int_to_json(r.box_side);
  } else if (from == "dlog" && to == "pigeonhole") {
    auto r = reduce_dlog_to_pigeonhole(std::get<DlogInstance>(src));
    b.target = Instance(std::move(r.target));
  } else {
    throw Error("no reduction from " + from + " to " + to);
  }
  return b;
}

Solution run_back(const ReductionBundle& bundle, const Solution& target_sol) {
  const std::string& from = bundle.from;
  const std::string& to = bundle.to;
  if (from == "pigeonhole" && to == "csis")
    return back_pigeonhole_to_csis(layout_from_json(bundle.meta.at("layout")), target_sol);
  if (from == "csis" && to == "pigeonhole")
    return back_csis_to_pigeonhole(std::get<CsisInstance>(bundle.source), target_sol);
  if (from == "pigeonhole" && to == "blichfeldt")
    return back_pigeonhole_to_blichfeldt(std::get<PigeonholeCircuitInstance>(bundle.source),
                                         target_sol);
  if (from == "blichfeldt" && to == "pigeonhole") {
    BlichfeldtToPigeonhole fwd;
    const std::string sc = bundle.meta.at("short").get<std::string>();
    fwd.short_circuit = sc == "none"           ? BlichfeldtToPigeonhole::Short::None
                        : sc == "trivial_zero" ? BlichfeldtToPigeonhole::Short::TrivialZero
                                               : BlichfeldtToPigeonhole::Short::DetOne;
    fwd.det = int_from_json(bundle.meta.at("det"));
    fwd.ell = bundle.meta.at("ell").get<int>();
    return back_blichfeldt_to_pigeonhole(std::get<BlichfeldtInstance>(bundle.source), fwd,
                                         target_sol);
  }
  if (from == "collision" && to == "collision")
    return back_collision_shrink(std::get<CollisionInstance>(bundle.source), target_sol);
  if (from == "collision" && to == "weakcsis")
    return back_collision_to_weakcsis(layout_from_json(bundle.meta.at("layout")), target_sol);
  if (from == "weakcsis" && to == "collision") return back_weakcsis_to_collision(target_sol);
  if (from == "minkowski" && to == "blichfeldt")
    return back_minkowski_to_blichfeldt(std::get<MinkowskiInstance>(bundle.source), target_sol);
  if (from == "dlog" && to == "pigeonhole")
    return back_dlog_to_pigeonhole(std::get<DlogInstance>(bundle.source), target_sol);
  throw Error("no reduction from " + from + " to " + to);
}

Json bundle_to_json(const ReductionBundle& b) {
  Json j{{"from", b.from},
         {"to", b.to},
         {"source", instance_to_json(b.source)},
         {"meta", b.meta}};
  j["target"] = b.target ? instance_to_json(*b.target) : Json();
  return j;
}

ReductionBundle bundle_from_json(const Json& j) {
  ReductionBundle b;
  b.from = j.at("from").get<std::string>();
  b.to = j.at("to").get<std::string>();
  b.source = instance_from_json(j.at("source"));
  if (!j.at("target").is_null()) b.target = instance_from_json(j.at("target"));
  b.meta = j.at("meta");
  return b;
}

Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  Json j;
  in >> j;
  return j;
}

void save_json_file(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  out << j.dump(2) << "\n";
}

}  // namespace ppp
