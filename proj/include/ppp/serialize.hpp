#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "ppp/instances.hpp"
#include "ppp/reductions.hpp"

namespace ppp {

using Json = nlohmann::json;

// Integers are written as JSON numbers when they fit in 64 bits and as
// decimal strings otherwise; readers accept both.
Json int_to_json(const Int& v);
Int int_from_json(const Json& j);

Json circuit_to_json(const Circuit& c);
Circuit circuit_from_json(const Json& j);

Json basis_to_json(const IntMat& b);  // {n, entries}
IntMat basis_from_json(const Json& j);

Json zq_matrix_to_json(const ZqMatrix& m);  // {q, rows, cols, entries}
ZqMatrix zq_matrix_from_json(const Json& j);

Json binary_invertible_to_json(const BinaryInvertible& g);  // adds {d, ell, k}
BinaryInvertible binary_invertible_from_json(const Json& j);

Json snf_to_json(const SnfDecomposition& s);  // witness file {u, d, v}

Json hash_key_to_json(const HashKey& k);  // {params, A, G}
HashKey hash_key_from_json(const Json& j);

Json instance_to_json(const Instance& inst);  // {problem, payload}
Instance instance_from_json(const Json& j);

Json solution_to_json(const Solution& sol);
Solution solution_from_json(const Json& j);

Json layout_to_json(const CsisFromCircuitLayout& l);
CsisFromCircuitLayout layout_from_json(const Json& j);

// Forward/back dispatch over every reduction, carrying enough metadata in the
// bundle that back-mapping works in a separate process.
struct ReductionBundle {
  std::string from;
  std::string to;
  Instance source;
  std::optional<Instance> target;
  Json meta;
};

ReductionBundle run_forward(const std::string& from, const std::string& to, const Instance& src,
                            int ell);
Solution run_back(const ReductionBundle& bundle, const Solution& target_sol);

Json bundle_to_json(const ReductionBundle& b);
ReductionBundle bundle_from_json(const Json& j);

std::vector<std::pair<std::string, std::string>> reduction_pairs();

Json load_json_file(const std::string& path);
void save_json_file(const std::string& path, const Json& j);

}  // namespace ppp
