#pragma once

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <map>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "grntru/attack.hpp"

namespace grntru {

struct ExperimentConfig {
  std::vector<int> Ns{13, 17, 19, 23};
  int trials = 20;
  std::vector<AttackKind> attacks{AttackKind::naive};
  ReductionConfig reduction{};
  double naive_threshold = 4.0;     // multiples of the key norm
  double pullback_threshold = 2.0;  // multiples of the key norm
  std::uint64_t seed = 1;
  std::string output;  // directory; empty means default_output_dir()
  int workers = 1;
  GroupKind group = GroupKind::dihedral;

  GroupSpec group_for(int N) const { return group == GroupKind::dihedral ? GroupSpec::dihedral(N) : GroupSpec::cyclic(N); }

  void validate() const {
    if (trials < 1) throw ConfigError("trials must be at least 1");
    if (Ns.empty()) throw ConfigError("N list is empty");
    for (int N : Ns)
      if (N < 3 || !is_prime(N)) throw ConfigError("N = " + std::to_string(N) + " is not an odd prime");
    if (attacks.empty()) throw ConfigError("no attack selected");
    if (workers < 1) throw ConfigError("workers must be at least 1");
    if (!(naive_threshold > 0) || !(pullback_threshold > 0)) throw ConfigError("thresholds must be positive");
    for (AttackKind a : attacks)
      if (a == AttackKind::pullback && group != GroupKind::dihedral)
        throw ConfigError("the pull-back attack needs the dihedral group");
    reduction.validate(static_cast<std::size_t>(2 * *std::min_element(Ns.begin(), Ns.end())));
  }
};

inline std::string default_output_dir() {
  if (const char* env = std::getenv("GRNTRU_OUTPUT_DIR"); env && *env) return env;
  return "results";
}

namespace detail {

inline std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

template <typename T>
T parse_number(const std::string& key, const std::string& value) {
  std::istringstream is(value);
  T x{};
  if (!(is >> x) || !(is >> std::ws).eof()) throw ConfigError("bad value for '" + key + "': " + value);
  return x;
}

} // namespace detail

/// Key-value text: one `key = value` per line, `#` starts a comment.
/// Lists (N) are comma or space separated.
inline ExperimentConfig parse_config(std::istream& is) {
  ExperimentConfig cfg;
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = detail::trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
    const std::string key = detail::trim(line.substr(0, eq));
    const std::string value = detail::trim(line.substr(eq + 1));
    if (key == "N") {
      cfg.Ns.clear();
      std::string v = value;
      std::replace(v.begin(), v.end(), ',', ' ');
      std::istringstream ls(v);
      std::string tok;
      while (ls >> tok) cfg.Ns.push_back(detail::parse_number<int>(key, tok));
    } else if (key == "trials") {
      cfg.trials = detail::parse_number<int>(key, value);
    } else if (key == "attack") {
      if (value == "both") cfg.attacks = {AttackKind::naive, AttackKind::pullback};
      else cfg.attacks = {parse_attack_kind(value)};
    } else if (key == "reducer") {
      cfg.reduction.algorithm = parse_algorithm(value);
    } else if (key == "delta") {
      cfg.reduction.delta = detail::parse_number<double>(key, value);
    } else if (key == "eta") {
      cfg.reduction.eta = detail::parse_number<double>(key, value);
    } else if (key == "beta") {
      cfg.reduction.beta = detail::parse_number<int>(key, value);
    } else if (key == "max_tours") {
      cfg.reduction.max_tours = detail::parse_number<int>(key, value);
    } else if (key == "naive_threshold") {
      cfg.naive_threshold = detail::parse_number<double>(key, value);
    } else if (key == "pullback_threshold") {
      cfg.pullback_threshold = detail::parse_number<double>(key, value);
    } else if (key == "seed") {
      cfg.seed = detail::parse_number<std::uint64_t>(key, value);
    } else if (key == "output") {
      cfg.output = value;
    } else if (key == "workers") {
      cfg.workers = detail::parse_number<int>(key, value);
    } else if (key == "group") {
      if (value == "dihedral") cfg.group = GroupKind::dihedral;
      else if (value == "cyclic") cfg.group = GroupKind::cyclic;
      else throw ConfigError("unknown group '" + value + "'");
    } else {
      throw ConfigError("unknown key '" + key + "'");
    }
  }
  cfg.validate();
  return cfg;
}

inline ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file " + path);
  return parse_config(in);
}

struct TrialRecord {
  std::string group;
  int N = 0;
  Int p = 0, q = 0;
  int d = 0;
  int trial = 0;
  std::uint64_t seed = 0;
  AttackKind attack = AttackKind::naive;
  Algorithm reducer = Algorithm::lll;
  bool success_k = false, success_k1 = false, success_k2 = false;
  double norm_key = 0;
  double norm_k1 = 0;  // naive: norm of k; pull-back: norm of k1; 0 if none
  double time_s = 0;
  std::string error;   // set when the trial threw; not part of the CSV
};

inline const char* csv_header() {
  return "group,N,p,q,d,trial,seed,attack,reducer,success_k,success_k1,success_k2,norm_key,norm_k1,time_s";
}

inline void write_csv_row(std::ostream& os, const TrialRecord& r) {
  os << r.group << ',' << r.N << ',' << r.p << ',' << r.q << ',' << r.d << ',' << r.trial << ',' << r.seed << ','
     << to_string(r.attack) << ',' << to_string(r.reducer) << ',' << int(r.success_k) << ',' << int(r.success_k1)
     << ',' << int(r.success_k2) << ',' << std::fixed << std::setprecision(6) << r.norm_key << ',' << r.norm_k1
     << ',' << r.time_s << std::defaultfloat << '\n';
}

inline void write_csv(std::ostream& os, const std::vector<TrialRecord>& rows) {
  os << csv_header() << '\n';
  for (const auto& r : rows) write_csv_row(os, r);
}

namespace detail {

/// A returned key must lie in L_h and decrypt this trial's ciphertext.
inline bool verify_key(const std::optional<IntVector>& key, const GroupRingElement& h, const Ciphertext& ct,
                       const GroupRingElement& m, const NtruParams& prm) {
  if (!key) return false;
  const auto pair = LatticeVectorPair::split(*key);
  if (!membership_check(pair, h, prm.q, prm.group)) return false;
  try {
    return decrypt_with_key(*key, ct, prm) == m;
  } catch (const NotInvertible&) {
    return false;
  }
}

} // namespace detail

/// One trial: keygen, encryption of a random message, the attacks, and the
/// re-verification of every returned key. Errors end up in `error` rather
/// than propagating.
inline std::vector<TrialRecord> run_trial(const ExperimentConfig& cfg, int N, int trial) {
  const std::uint64_t seed = derive_seed(cfg.seed, static_cast<std::uint64_t>(N), static_cast<std::uint64_t>(trial));
  const NtruParams prm = derive_params(cfg.group_for(N));
  std::vector<TrialRecord> out;
  TrialRecord base;
  base.group = prm.group.name().substr(0, 1);
  base.N = N;
  base.p = prm.p;
  base.q = prm.q;
  base.d = prm.d;
  base.trial = trial;
  base.seed = seed;
  base.reducer = cfg.reduction.algorithm;

  Rng rng(seed);
  std::optional<KeyPair> kp;
  GroupRingElement m, r;
  Ciphertext ct;
  std::string setup_error;
  try {
    kp = keygen(prm, rng);
    m = sample_message(prm.n(), rng, prm.p);
    r = sample_ternary(static_cast<std::size_t>(prm.d), static_cast<std::size_t>(prm.d), prm.n(), rng);
    ct = encrypt(kp->h, m, r, prm);
    base.norm_key = std::sqrt(static_cast<double>(norm2(kp->f.coeffs()) + norm2(kp->g.coeffs())));
  } catch (const std::exception& e) {
    setup_error = e.what();
  }

  for (AttackKind kind : cfg.attacks) {
    TrialRecord rec = base;
    rec.attack = kind;
    if (!kp) {
      rec.error = setup_error;
      out.push_back(rec);
      continue;
    }
    try {
      const double mult = kind == AttackKind::naive ? cfg.naive_threshold : cfg.pullback_threshold;
      const AttackOutcome o = run_attack(kind, kp->h, prm, mult * prm.key_norm(), cfg.reduction);
      const AttackSuccess s = evaluate_success(o, prm.key_norm());
      rec.success_k = s.k && detail::verify_key(o.k, kp->h, ct, m, prm);
      rec.success_k1 = s.k1 && detail::verify_key(o.k1, kp->h, ct, m, prm);
      rec.success_k2 = s.k2 && detail::verify_key(o.k2, kp->h, ct, m, prm);
      rec.norm_k1 = kind == AttackKind::naive ? AttackOutcome::norm(o.k) : AttackOutcome::norm(o.k1);
      rec.time_s = o.time_s;
    } catch (const std::exception& e) {
      rec.error = e.what();
    }
    out.push_back(rec);
  }
  return out;
}

/// Runs every (N, trial) on `cfg.workers` threads; the result is ordered by
/// (N, trial, attack) whatever the completion order.
inline std::vector<TrialRecord> run_trials(const ExperimentConfig& cfg) {
  cfg.validate();
  std::vector<std::pair<int, int>> tasks;
  for (int N : cfg.Ns)
    for (int t = 0; t < cfg.trials; ++t) tasks.emplace_back(N, t);
  std::vector<std::vector<TrialRecord>> results(tasks.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < tasks.size();)
      results[i] = run_trial(cfg, tasks[i].first, tasks[i].second);
  };
  const auto nthreads = static_cast<std::size_t>(std::max(1, cfg.workers));
  if (nthreads == 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < std::min(nthreads, tasks.size()); ++t) pool.emplace_back(work);
  }
  std::vector<TrialRecord> rows;
  for (auto& r : results)
    for (auto& x : r) rows.push_back(std::move(x));
  return rows;
}

struct SummaryRow {
  std::string group;
  int N = 0;
  AttackKind attack = AttackKind::naive;
  Algorithm reducer = Algorithm::lll;
  int trials = 0;
  int dim = 0;  // dimension of the lattice(s) reduced
  double pct_k = 0, pct_k1 = 0, pct_k2 = 0;
  double mean_norm_key = 0;
  double mean_norm_k1 = 0;  // over trials that returned a key
  double mean_time_s = 0;
  int errors = 0;
};

/// Aggregates per (group, N, attack, reducer), in first-appearance order.
inline std::vector<SummaryRow> summarize(const std::vector<TrialRecord>& rows) {
  std::vector<SummaryRow> out;
  std::map<std::tuple<std::string, int, int, int>, std::size_t> index;
  std::vector<int> returned;
  for (const auto& r : rows) {
    const auto key = std::make_tuple(r.group, r.N, static_cast<int>(r.attack), static_cast<int>(r.reducer));
    auto [it, inserted] = index.try_emplace(key, out.size());
    if (inserted) {
      SummaryRow s;
      s.group = r.group;
      s.N = r.N;
      s.attack = r.attack;
      s.reducer = r.reducer;
      const int order = r.group == "D" ? 2 * r.N : r.N;
      s.dim = r.attack == AttackKind::naive ? 2 * order : order;
      out.push_back(s);
      returned.push_back(0);
    }
    SummaryRow& s = out[it->second];
    ++s.trials;
    s.pct_k += r.success_k;
    s.pct_k1 += r.success_k1;
    s.pct_k2 += r.success_k2;
    s.mean_norm_key += r.norm_key;
    if (r.norm_k1 > 0) {
      s.mean_norm_k1 += r.norm_k1;
      ++returned[it->second];
    }
    s.mean_time_s += r.time_s;
    s.errors += !r.error.empty();
  }
  for (std::size_t i = 0; i < out.size(); ++i) {
    SummaryRow& s = out[i];
    const double t = s.trials;
    s.pct_k *= 100.0 / t;
    s.pct_k1 *= 100.0 / t;
    s.pct_k2 *= 100.0 / t;
    s.mean_norm_key /= t;
    s.mean_time_s /= t;
    s.mean_norm_k1 = returned[i] ? s.mean_norm_k1 / returned[i] : 0.0;
  }
  return out;
}

inline void write_summary_csv(std::ostream& os, const std::vector<SummaryRow>& rows) {
  os << "group,N,attack,reducer,dim,trials,pct_k,pct_k1,pct_k2,mean_norm_key,mean_norm_k1,mean_time_s,errors\n";
  for (const auto& s : rows)
    os << s.group << ',' << s.N << ',' << to_string(s.attack) << ',' << to_string(s.reducer) << ',' << s.dim << ','
       << s.trials << ',' << std::fixed << std::setprecision(2) << s.pct_k << ',' << s.pct_k1 << ',' << s.pct_k2
       << ',' << std::setprecision(4) << s.mean_norm_key << ',' << s.mean_norm_k1 << ',' << std::setprecision(6)
       << s.mean_time_s << std::defaultfloat << ',' << s.errors << '\n';
}

/// gnuplot data: one block per (attack, reducer), separated by two blank
/// lines so `index` selects a series.
inline void write_gnuplot(std::ostream& os, const std::vector<SummaryRow>& rows) {
  std::vector<std::pair<int, int>> series;
  for (const auto& s : rows) {
    const std::pair<int, int> key{static_cast<int>(s.attack), static_cast<int>(s.reducer)};
    if (std::find(series.begin(), series.end(), key) == series.end()) series.push_back(key);
  }
  bool first = true;
  for (const auto& [a, red] : series) {
    if (!first) os << "\n\n";
    first = false;
    os << "# " << to_string(static_cast<AttackKind>(a)) << ' ' << to_string(static_cast<Algorithm>(red)) << '\n';
    os << "# N pct_k pct_k1 pct_k2 mean_norm_key mean_norm_k1 mean_time_s\n";
    for (const auto& s : rows) {
      if (static_cast<int>(s.attack) != a || static_cast<int>(s.reducer) != red) continue;
      os << s.N << ' ' << s.pct_k << ' ' << s.pct_k1 << ' ' << s.pct_k2 << ' ' << s.mean_norm_key << ' '
         << s.mean_norm_k1 << ' ' << s.mean_time_s << '\n';
    }
  }
}

struct ExperimentResult {
  std::vector<TrialRecord> trials;
  std::vector<SummaryRow> summary;
  std::filesystem::path directory;  // empty when nothing was written
};

inline void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  out << text;
  if (!out) throw IoError("write failed for " + path.string());
}

/// Runs the campaign and writes trials.csv, summary.csv and summary.dat into
/// the output directory. Timing is per attack call (lattice construction,
/// reduction and scan), excluding keygen and key verification.
inline ExperimentResult run_experiment(const ExperimentConfig& cfg, bool write_files = true) {
  ExperimentResult res;
  res.trials = run_trials(cfg);
  res.summary = summarize(res.trials);
  if (write_files) {
    res.directory = cfg.output.empty() ? default_output_dir() : cfg.output;
    std::error_code ec;
    std::filesystem::create_directories(res.directory, ec);
    if (ec) throw IoError("cannot create " + res.directory.string() + ": " + ec.message());
    std::ostringstream t, s, g;
    write_csv(t, res.trials);
    write_summary_csv(s, res.summary);
    write_gnuplot(g, res.summary);
    write_text(res.directory / "trials.csv", t.str());
    write_text(res.directory / "summary.csv", s.str());
    write_text(res.directory / "summary.dat", g.str());
  }
  return res;
}

/// Naive attack on GR-NTRU over C_N (one 2N-dimensional lattice) next to the
/// pull-back attack over D_N (two 2N-dimensional lattices).
struct BaselineRow {
  std::string group;
  int N = 0;
  std::string attack;
  int lattice_dim = 0;
  int trials = 0;
  double success_pct = 0;  // C: k within 4x key norm; D: k1 or k2 counted
  double mean_norm_key = 0;
  double mean_time_s = 0;
};

inline std::vector<BaselineRow> compare_cyclic_baseline(int N, int trials, const ExperimentConfig& base) {
  ExperimentConfig c = base;
  c.Ns = {N};
  c.trials = trials;
  c.group = GroupKind::cyclic;
  c.attacks = {AttackKind::naive};
  ExperimentConfig d = base;
  d.Ns = {N};
  d.trials = trials;
  d.group = GroupKind::dihedral;
  d.attacks = {AttackKind::pullback};

  std::vector<BaselineRow> out;
  for (const ExperimentConfig* cfg : {&c, &d}) {
    const auto rows = run_trials(*cfg);
    BaselineRow b;
    b.group = cfg->group == GroupKind::cyclic ? "C" : "D";
    b.N = N;
    b.attack = to_string(cfg->attacks.front());
    b.lattice_dim = 2 * N;
    b.trials = static_cast<int>(rows.size());
    for (const auto& r : rows) {
      const bool ok = r.attack == AttackKind::naive ? r.success_k : (r.success_k1 || r.success_k2);
      b.success_pct += ok;
      b.mean_norm_key += r.norm_key;
      b.mean_time_s += r.time_s;
    }
    b.success_pct *= 100.0 / b.trials;
    b.mean_norm_key /= b.trials;
    b.mean_time_s /= b.trials;
    out.push_back(b);
  }
  return out;
}

inline void write_baseline_csv(std::ostream& os, const std::vector<BaselineRow>& rows) {
  os << "group,N,attack,lattice_dim,trials,success_pct,mean_norm_key,mean_time_s\n";
  for (const auto& b : rows)
    os << b.group << ',' << b.N << ',' << b.attack << ',' << b.lattice_dim << ',' << b.trials << ',' << std::fixed
       << std::setprecision(2) << b.success_pct << ',' << std::setprecision(4) << b.mean_norm_key << ','
       << std::setprecision(6) << b.mean_time_s << std::defaultfloat << '\n';
}

} // namespace grntru
