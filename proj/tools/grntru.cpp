// Command-line front end: key generation, encryption, the two lattice
// attacks and the experiment runner. Results go to stdout as JSON or CSV;
// failures print {"error": kind, "message": ...} on stderr and exit nonzero.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "grntru.hpp"
#include "grntru/serialize.hpp"

using namespace grntru;

namespace {

struct ReductionFlags {
  std::string algo = "lll";
  double delta = 0.99;
  double eta = 0.501;
  int beta = 10;
  int max_tours = 8;

  void attach(CLI::App* cmd) {
    cmd->add_option("--algo", algo, "lll or bkz")->capture_default_str();
    cmd->add_option("--delta", delta, "Lovasz parameter")->capture_default_str();
    cmd->add_option("--eta", eta, "size-reduction parameter")->capture_default_str();
    cmd->add_option("--beta", beta, "BKZ block size")->capture_default_str();
    cmd->add_option("--max-tours", max_tours, "BKZ tour limit")->capture_default_str();
  }
  ReductionConfig config() const {
    ReductionConfig c;
    c.algorithm = parse_algorithm(algo);
    c.delta = delta;
    c.eta = eta;
    c.beta = beta;
    c.max_tours = max_tours;
    return c;
  }
};

GroupSpec make_group(const std::string& kind, int N) {
  if (kind == "dihedral") return GroupSpec::dihedral(N);
  if (kind == "cyclic") return GroupSpec::cyclic(N);
  throw UnsupportedGroup("unknown group '" + kind + "'");
}

IntVector parse_list(const std::string& s) {
  std::string t = s;
  for (char& c : t)
    if (c == ',' || c == '[' || c == ']') c = ' ';
  std::istringstream is(t);
  IntVector v;
  Int x;
  while (is >> x) v.push_back(x);
  if (!is.eof()) throw ParameterError("not a list of integers: " + s);
  return v;
}

void emit(const json& j, const std::string& out) {
  if (out.empty()) std::cout << j.dump(2) << '\n';
  else write_json_file(out, j);
}

struct LoadedKey {
  NtruParams prm;
  json doc;
};

LoadedKey load_key(const std::string& path) {
  json doc = read_json_file(path);
  return {params_from_json(doc.at("params")), doc};
}

int fail(const std::string& kind, const std::string& message, int code = 1) {
  std::cerr << json{{"error", kind}, {"message", message}}.dump() << '\n';
  return code;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Group-ring NTRU over dihedral groups: scheme, lattices and key-recovery attacks"};
  app.require_subcommand(1);

  // params
  auto* params_cmd = app.add_subcommand("params", "derive p, q, d for a group");
  int N = 7;
  std::string group = "dihedral";
  params_cmd->add_option("--N", N, "group parameter (D_N has order 2N)")->required();
  params_cmd->add_option("--group", group, "dihedral or cyclic")->capture_default_str();

  // keygen
  auto* keygen_cmd = app.add_subcommand("keygen", "generate a key pair");
  std::uint64_t seed = 1;
  std::string out_path, f_list, g_list;
  keygen_cmd->add_option("--N", N, "group parameter")->required();
  keygen_cmd->add_option("--group", group, "dihedral or cyclic")->capture_default_str();
  keygen_cmd->add_option("--seed", seed, "RNG seed")->capture_default_str();
  keygen_cmd->add_option("--f", f_list, "explicit private f (comma separated)");
  keygen_cmd->add_option("--g", g_list, "explicit private g (comma separated)");
  keygen_cmd->add_option("-o,--out", out_path, "output file (default stdout)");

  // encrypt
  auto* encrypt_cmd = app.add_subcommand("encrypt", "encrypt a ternary message");
  std::string key_path, m_list, r_list;
  encrypt_cmd->add_option("--key", key_path, "key file from keygen")->required();
  encrypt_cmd->add_option("--m", m_list, "message (default: random)");
  encrypt_cmd->add_option("--r", r_list, "blinding element (default: random in P(d,d))");
  encrypt_cmd->add_option("--seed", seed, "RNG seed for random m or r")->capture_default_str();
  encrypt_cmd->add_option("-o,--out", out_path, "output file (default stdout)");

  // decrypt
  auto* decrypt_cmd = app.add_subcommand("decrypt", "decrypt a ciphertext");
  std::string ct_path;
  decrypt_cmd->add_option("--key", key_path, "key file with f (and optionally f_p)")->required();
  decrypt_cmd->add_option("--ciphertext", ct_path, "ciphertext file")->required();

  // attack
  auto* attack_cmd = app.add_subcommand("attack", "recover a decryption key from a public key");
  std::string attack_name;
  double threshold = 0;
  std::string ct_check;
  ReductionFlags attack_red;
  attack_cmd->add_option("kind", attack_name, "naive or pullback")->required();
  attack_cmd->add_option("--key", key_path, "file with params and h")->required();
  attack_cmd->add_option("--threshold", threshold, "norm bound as a multiple of the key norm (default 4 naive, 2 pullback)");
  attack_cmd->add_option("--ciphertext", ct_check, "also decrypt this ciphertext with the recovered keys");
  attack_red.attach(attack_cmd);

  // lattice
  auto* lattice_cmd = app.add_subcommand("lattice", "print a lattice basis as plain text");
  std::string which = "full";
  lattice_cmd->add_option("--key", key_path, "file with params and h")->required();
  lattice_cmd->add_option("--which", which, "full, sum or diff")->capture_default_str();

  // reduce
  auto* reduce_cmd = app.add_subcommand("reduce", "reduce a plain-text basis; rows printed shortest first");
  std::string in_path;
  ReductionFlags reduce_red;
  reduce_cmd->add_option("--in", in_path, "matrix file (default stdin)");
  reduce_red.attach(reduce_cmd);

  // experiment
  auto* experiment_cmd = app.add_subcommand("experiment", "run an attack campaign from a config file");
  std::string config_path;
  int workers = 0;
  experiment_cmd->add_option("--config", config_path, "key = value config file")->required();
  experiment_cmd->add_option("--workers", workers, "override the worker count");
  experiment_cmd->add_option("--output", out_path, "override the output directory");

  // baseline
  auto* baseline_cmd = app.add_subcommand("baseline", "naive attack over C_N next to the pull-back attack over D_N");
  int trials = 20;
  ReductionFlags baseline_red;
  baseline_cmd->add_option("--N", N, "prime N")->required();
  baseline_cmd->add_option("--trials", trials, "trials per group")->capture_default_str();
  baseline_cmd->add_option("--seed", seed, "master seed")->capture_default_str();
  baseline_cmd->add_option("--workers", workers, "worker threads");
  baseline_cmd->add_option("--output", out_path, "also write baseline.csv into this directory");
  baseline_red.attach(baseline_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return fail("UsageError", e.what(), 2);
  }

  try {
    if (*params_cmd) {
      emit(to_json(derive_params(make_group(group, N))), "");
    } else if (*keygen_cmd) {
      const NtruParams prm = derive_params(make_group(group, N));
      KeyPair kp;
      if (!f_list.empty() || !g_list.empty()) {
        if (f_list.empty() || g_list.empty()) throw ParameterError("--f and --g must be given together");
        kp = keypair_from(GroupRingElement(parse_list(f_list)), GroupRingElement(parse_list(g_list)), prm);
      } else {
        Rng rng(seed);
        kp = keygen(prm, rng);
      }
      emit(to_json(kp, prm), out_path);
    } else if (*encrypt_cmd) {
      const auto key = load_key(key_path);
      const NtruParams& prm = key.prm;
      Rng rng(seed);
      const auto h = element_from_json(key.doc.at("h"), prm, "h");
      json j;
      GroupRingElement m = m_list.empty() ? sample_message(prm.n(), rng, prm.p) : GroupRingElement(parse_list(m_list));
      GroupRingElement r = r_list.empty() ? sample_ternary(prm.d, prm.d, prm.n(), rng) : GroupRingElement(parse_list(r_list));
      j = to_json(encrypt(h, m, r, prm));
      if (m_list.empty()) j["m"] = m.coeffs();
      if (r_list.empty()) j["r"] = r.coeffs();
      emit(j, out_path);
    } else if (*decrypt_cmd) {
      const auto key = load_key(key_path);
      const NtruParams& prm = key.prm;
      const auto f = element_from_json(key.doc.at("f"), prm, "f");
      const auto fp = key.doc.contains("f_p") ? element_from_json(key.doc.at("f_p"), prm, "f_p")
                                              : invert_mod(f, prm.p, prm.group);
      const Ciphertext ct{element_from_json(read_json_file(ct_path).at("c"), prm, "c")};
      emit(json{{"m", decrypt_with(f, fp, ct, prm).coeffs()}}, "");
    } else if (*attack_cmd) {
      const auto key = load_key(key_path);
      const NtruParams& prm = key.prm;
      const auto h = element_from_json(key.doc.at("h"), prm, "h");
      const AttackKind kind = parse_attack_kind(attack_name);
      const double mult = threshold > 0 ? threshold : (kind == AttackKind::naive ? 4.0 : 2.0);
      const AttackOutcome o = run_attack(kind, h, prm, mult * prm.key_norm(), attack_red.config());
      json j = to_json(o, prm.key_norm());
      if (!ct_check.empty()) {
        const Ciphertext ct{element_from_json(read_json_file(ct_check).at("c"), prm, "c")};
        for (const auto* name : {"k", "k1", "k2"}) {
          const auto& v = std::string(name) == "k" ? o.k : (std::string(name) == "k1" ? o.k1 : o.k2);
          if (v) j["decrypted"][name] = decrypt_with_key(*v, ct, prm).coeffs();
        }
      }
      emit(j, "");
      if (o.failure()) return 3;
    } else if (*lattice_cmd) {
      const auto key = load_key(key_path);
      const NtruParams& prm = key.prm;
      const auto h = element_from_json(key.doc.at("h"), prm, "h");
      if (which == "full") {
        write_matrix(std::cout, build_ntru_lattice(h, prm).basis);
      } else if (which == "sum" || which == "diff") {
        const Sublattices subs = build_sublattices(split_public_key(h, prm.group), prm.q);
        write_matrix(std::cout, (which == "sum" ? subs.sum : subs.diff).basis);
      } else {
        throw ParameterError("--which must be full, sum or diff");
      }
    } else if (*reduce_cmd) {
      IntMatrix b;
      if (in_path.empty()) {
        b = read_matrix(std::cin);
      } else {
        std::ifstream in(in_path);
        if (!in) throw IoError("cannot open " + in_path);
        b = read_matrix(in);
      }
      write_matrix(std::cout, reduce(b, reduce_red.config()).sorted_rows());
    } else if (*experiment_cmd) {
      ExperimentConfig cfg = load_config(config_path);
      if (workers > 0) cfg.workers = workers;
      if (!out_path.empty()) cfg.output = out_path;
      const ExperimentResult res = run_experiment(cfg);
      write_summary_csv(std::cout, res.summary);
      std::cerr << "wrote " << (res.directory / "trials.csv").string() << '\n';
    } else if (*baseline_cmd) {
      ExperimentConfig cfg;
      cfg.seed = seed;
      cfg.reduction = baseline_red.config();
      if (workers > 0) cfg.workers = workers;
      if (!is_prime(N) || N < 3) throw ConfigError("N must be an odd prime");
      const auto rows = compare_cyclic_baseline(N, trials, cfg);
      write_baseline_csv(std::cout, rows);
      if (!out_path.empty()) {
        std::filesystem::create_directories(out_path);
        std::ostringstream os;
        write_baseline_csv(os, rows);
        write_text(std::filesystem::path(out_path) / "baseline.csv", os.str());
      }
    }
  } catch (const Error& e) {
    return fail(e.kind(), e.what());
  } catch (const json::exception& e) {
    return fail("IoError", e.what());
  } catch (const std::exception& e) {
    return fail("InternalError", e.what());
  }
  return 0;
}
