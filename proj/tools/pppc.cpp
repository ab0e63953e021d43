#include <CLI11.hpp>
#include <iostream>
#include <string>

#include "ppp/selftest.hpp"
#include "ppp/serialize.hpp"

namespace {

using namespace ppp;

struct SizeFlags {
  GenParams params;
  std::string p_norm = "inf";
  bool m_given = false;

  void attach(CLI::App* cmd) {
    cmd->add_option("--n", params.n, "circuit inputs / csis rows");
    cmd->add_option("--m", params.m, "collision outputs")->each([this](const std::string&) {
      m_given = true;
    });
    cmd->add_option("--gates", params.gates, "random circuit gate count");
    cmd->add_option("--ell", params.ell, "gadget bit width (q = 2^ell)");
    cmd->add_option("--d", params.d, "gadget blocks");
    cmd->add_option("--r", params.r, "hash output blocks");
    cmd->add_option("--k", params.k, "hash input bits");
    cmd->add_option("--dim", params.dim, "lattice dimension");
    cmd->add_option("--det-max", [this](const CLI::results_t& res) {
      params.det_max = Int(res[0]);
      return true;
    }, "determinant bound for random bases");
    cmd->add_option("--p", p_norm, "minkowski norm: inf or an integer >= 1");
    cmd->add_option("--prime", [this](const CLI::results_t& res) {
      params.prime = Int(res[0]);
      return true;
    }, "dlog group Z_p^*");
  }

  GenParams resolve(const std::string& kind, const std::string& to = "") {
    GenParams p = params;
    p.p_norm = p_norm == "inf" ? 0 : std::stoi(p_norm);
    if (kind == "collision" && !m_given) {
      p.m = to == "weakcsis" ? p.n - 2 : p.n - 1;
    }
    return p;
  }
};

Instance load_instance(const std::string& path) { return instance_from_json(load_json_file(path)); }

int cmd_gen(const std::string& problem, SizeFlags& sizes, std::uint64_t seed,
            const std::string& out) {
  Instance inst = gen_random(problem, sizes.resolve(problem), seed);
  save_json_file(out, instance_to_json(inst));
  std::cout << "wrote " << problem << " instance to " << out << "\n";
  return 0;
}

int cmd_reduce(const std::string& from, const std::string& to, const std::string& in,
               const std::string& out, int ell) {
  Instance src = load_instance(in);
  if (problem_tag(src) != from) throw Error("input instance is " + std::string(problem_tag(src)) +
                                            ", expected " + from);
  ReductionBundle bundle = run_forward(from, to, src, ell);
  save_json_file(out, bundle_to_json(bundle));
  std::cout << "wrote reduction bundle to " << out;
  if (!bundle.target) std::cout << " (short-circuited: no target instance)";
  std::cout << "\n";
  return 0;
}

int cmd_solve(const std::string& in, const std::string& out, const std::string& target_out,
              std::uint64_t budget, int threads) {
  Json j = load_json_file(in);
  if (j.contains("problem")) {
    Instance inst = instance_from_json(j);
    Solution sol = brute_force(inst, budget, threads);
    save_json_file(out, solution_to_json(sol));
    std::cout << "wrote " << solution_kind_tag(sol.kind) << " solution to " << out << "\n";
    return 0;
  }
  // a reduction bundle: solve the target, then back-map to the source
  ReductionBundle bundle = bundle_from_json(j);
  Solution tsol = Solution::trivial_zero();
  if (bundle.target) tsol = brute_force(*bundle.target, budget, threads);
  if (!target_out.empty() && bundle.target) save_json_file(target_out, solution_to_json(tsol));
  Solution ssol = run_back(bundle, tsol);
  save_json_file(out, solution_to_json(ssol));
  std::cout << "wrote back-mapped " << solution_kind_tag(ssol.kind) << " solution to " << out
            << "\n";
  return 0;
}

int cmd_verify(const std::string& in, const std::string& solution, std::uint64_t budget) {
  Instance inst = load_instance(in);
  Solution sol = solution_from_json(load_json_file(solution));
  VerifyResult res = verify(inst, sol, budget);
  if (res.accepted) {
    std::cout << "accept\n";
    return 0;
  }
  std::cout << "reject: " << res.reason << "\n";
  return 1;
}

int cmd_roundtrip(const std::string& from, const std::string& to, SizeFlags& sizes,
                  std::uint64_t seed, std::uint64_t budget, int threads, int ell) {
  Instance src = gen_random(from, sizes.resolve(from, to), seed);
  ReductionBundle bundle = run_forward(from, to, src, ell);
  Solution tsol = Solution::trivial_zero();
  if (bundle.target) {
    tsol = brute_force(*bundle.target, budget, threads);
    std::cout << "target solution: " << solution_kind_tag(tsol.kind) << "\n";
  } else {
    std::cout << "reduction short-circuited without a target instance\n";
  }
  Solution ssol = run_back(bundle, tsol);
  VerifyResult res = verify(src, ssol, budget);
  std::cout << "back-mapped solution: " << solution_kind_tag(ssol.kind) << " -> "
            << (res.accepted ? "accept" : "reject: " + res.reason) << "\n";
  return res.accepted ? 0 : 1;
}

Bits hex_to_bits(const std::string& hex, int width) {
  Int v = 0;
  for (char c : hex) {
    int digit;
    if (c >= '0' && c <= '9') digit = c - '0';
    else if (c >= 'a' && c <= 'f') digit = c - 'a' + 10;
    else if (c >= 'A' && c <= 'F') digit = c - 'A' + 10;
    else throw Error("bad hex digit");
    v = (v << 4) | digit;
  }
  if ((v >> width) != 0) throw Error("hex value does not fit the key's input width");
  return bd(v, width);
}

std::string bits_to_hex(const Bits& bits) {
  Int v = bc(bits);
  const int digits = (static_cast<int>(bits.size()) + 3) / 4;
  std::string out(digits, '0');
  for (int i = digits - 1; i >= 0; --i) {
    out[i] = "0123456789abcdef"[static_cast<int>(v & 0xf)];
    v >>= 4;
  }
  return out;
}

int cmd_hash_keygen(int k, int ell, int d, int r, std::uint64_t seed, const std::string& out) {
  HashKey key = keygen(HashParams{k, ell, d, r}, seed);
  save_json_file(out, hash_key_to_json(key));
  std::cout << "wrote hash key to " << out << "\n";
  return 0;
}

int cmd_hash_eval(const std::string& key_path, const std::string& input_hex) {
  HashKey key = hash_key_from_json(load_json_file(key_path));
  Bits x = hex_to_bits(input_hex, key.k());
  std::cout << bits_to_hex(hash_eval(key, x)) << "\n";
  return 0;
}

int cmd_hash_attack(const std::string& key_path, std::uint64_t budget, const std::string& out) {
  HashKey key = hash_key_from_json(load_json_file(key_path));
  Solution sol = brute_force(Instance(key), budget);
  SisWitness witness = extract_sis_witness(key, sol.x, sol.y);
  std::cout << "collision: " << bits_to_hex(sol.x) << " " << bits_to_hex(sol.y) << "\n";
  std::cout << "sis witness:";
  for (Eigen::Index i = 0; i < witness.z.size(); ++i) std::cout << " " << witness.z(i);
  std::cout << "\n";
  if (!out.empty()) {
    Json j = solution_to_json(sol);
    Json zs = Json::array();
    for (Eigen::Index i = 0; i < witness.z.size(); ++i) zs.push_back(int_to_json(witness.z(i)));
    j["sis_witness"] = std::move(zs);
    save_json_file(out, j);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"toolkit for pigeonhole-style total search problems: instance generation, "
               "reductions, brute-force solving, verification, and the gadget-based hash family"};
  app.require_subcommand(1);

  std::string problem, in, out = "out.json", target_out, solution, from, to, key_path, input_hex;
  std::uint64_t seed = 0, budget = kDefaultBudget;
  int threads = 1, ell = 2;
  int hk = 8, hell = 2, hd = 2, hr = 1;

  SizeFlags gen_sizes, rt_sizes;

  auto* gen = app.add_subcommand("gen", "generate a random instance");
  gen->add_option("--problem", problem, "pigeonhole|collision|blichfeldt|csis|weakcsis|minkowski|dlog")
      ->required();
  gen->add_option("--out", out, "output instance file");
  gen->add_option("--seed", seed, "rng seed");
  gen_sizes.attach(gen);

  auto* reduce = app.add_subcommand("reduce", "apply a Karp reduction, writing a bundle");
  reduce->add_option("--from", from)->required();
  reduce->add_option("--to", to)->required();
  reduce->add_option("--in", in)->required();
  reduce->add_option("--out", out, "output bundle file");
  reduce->add_option("--ell", ell, "gadget bit width for circuit encodings");

  auto* solve = app.add_subcommand(
      "solve", "brute-force an instance file, or a bundle's target with back-mapping");
  solve->add_option("--in", in)->required();
  solve->add_option("--out", out, "solution file");
  solve->add_option("--target-out", target_out, "also write the target solution (bundles)");
  solve->add_option("--budget", budget, "oracle evaluation budget");
  solve->add_option("--threads", threads, "oracle scan threads");

  auto* verify_cmd = app.add_subcommand("verify", "check a solution file against an instance");
  verify_cmd->add_option("--in", in)->required();
  verify_cmd->add_option("--solution", solution)->required();
  verify_cmd->add_option("--budget", budget, "set-membership enumeration budget");

  auto* roundtrip = app.add_subcommand("roundtrip", "gen -> reduce -> solve -> back-map -> verify");
  roundtrip->add_option("--from", from)->required();
  roundtrip->add_option("--to", to)->required();
  roundtrip->add_option("--seed", seed, "rng seed");
  roundtrip->add_option("--budget", budget, "oracle evaluation budget");
  roundtrip->add_option("--threads", threads, "oracle scan threads");
  roundtrip->add_option("--ell", ell, "gadget bit width for circuit encodings");
  rt_sizes.attach(roundtrip);

  auto* hash = app.add_subcommand("hash", "gadget hash family operations");
  hash->require_subcommand(1);
  auto* keygen_cmd = hash->add_subcommand("keygen", "sample a key");
  keygen_cmd->add_option("--k", hk, "input bits");
  keygen_cmd->add_option("--ell", hell, "q = 2^ell");
  keygen_cmd->add_option("--d", hd, "gadget blocks");
  keygen_cmd->add_option("--r", hr, "output blocks");
  keygen_cmd->add_option("--seed", seed, "rng seed");
  keygen_cmd->add_option("--out", out, "key file");
  auto* eval_cmd = hash->add_subcommand("eval", "evaluate on a hex input");
  eval_cmd->add_option("--key", key_path)->required();
  eval_cmd->add_option("--input", input_hex, "input bits as hex, most-significant-first")
      ->required();
  auto* attack_cmd = hash->add_subcommand("attack", "birthday-search a collision and extract the"
                                                    " short lattice witness");
  attack_cmd->add_option("--key", key_path)->required();
  attack_cmd->add_option("--budget", budget, "enumeration budget");
  attack_cmd->add_option("--out", out, "optional collision + witness file");

  auto* selftest = app.add_subcommand("selftest", "run the acceptance suite");

  try {
    app.parse(argc, argv);
    if (gen->parsed()) return cmd_gen(problem, gen_sizes, seed, out);
    if (reduce->parsed()) return cmd_reduce(from, to, in, out, ell);
    if (solve->parsed()) return cmd_solve(in, out, target_out, budget, threads);
    if (verify_cmd->parsed()) return cmd_verify(in, solution, budget);
    if (roundtrip->parsed()) return cmd_roundtrip(from, to, rt_sizes, seed, budget, threads, ell);
    if (hash->parsed()) {
      if (keygen_cmd->parsed()) return cmd_hash_keygen(hk, hell, hd, hr, seed, out);
      if (eval_cmd->parsed()) return cmd_hash_eval(key_path, input_hex);
      if (attack_cmd->parsed()) return cmd_hash_attack(key_path, budget, out);
    }
    if (selftest->parsed()) return run_selftest(std::cout) == 0 ? 0 : 1;
    return 2;
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return 2;
  } catch (const BudgetExceeded& e) {
    std::cerr << "budget exceeded: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
