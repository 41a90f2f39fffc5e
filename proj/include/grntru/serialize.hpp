#pragma once

#include <fstream>
#include <string>

#include <json.hpp>

#include "grntru/attack.hpp"
#include "grntru/ntru.hpp"

namespace grntru {

using json = nlohmann::json;

inline json to_json(const GroupSpec& g) {
  if (g.is_dihedral()) return {{"kind", "dihedral"}, {"N", g.parameter()}};
  return {{"kind", "cyclic"}, {"n", g.parameter()}};
}

inline GroupSpec group_from_json(const json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "dihedral") return GroupSpec::dihedral(j.at("N").get<int>());
  if (kind == "cyclic") return GroupSpec::cyclic(j.at("n").get<int>());
  throw UnsupportedGroup("unknown group kind '" + kind + "'");
}

inline json to_json(const NtruParams& prm) {
  return {{"N", prm.N}, {"p", prm.p}, {"q", prm.q}, {"d", prm.d}, {"group", to_json(prm.group)}};
}

inline NtruParams params_from_json(const json& j) {
  const GroupSpec g = j.contains("group") ? group_from_json(j.at("group")) : GroupSpec::dihedral(j.at("N").get<int>());
  NtruParams prm = make_params(g, j.at("p").get<Int>(), j.at("q").get<Int>(), j.at("d").get<int>());
  validate_params(prm);
  return prm;
}

inline json to_json(const GroupRingElement& a) { return a.coeffs(); }

inline GroupRingElement element_from_json(const json& j, const NtruParams& prm, const char* what) {
  if (!j.is_array()) throw DimensionError(std::string(what) + " must be an array");
  GroupRingElement a(j.get<IntVector>());
  if (a.size() != prm.n())
    throw DimensionError(std::string(what) + " has length " + std::to_string(a.size()) + ", expected " +
                         std::to_string(prm.n()));
  return a;
}

/// Private-key file; also carries h so it doubles as the public key.
inline json to_json(const KeyPair& k, const NtruParams& prm) {
  return {{"params", to_json(prm)}, {"f", to_json(k.f)}, {"g", to_json(k.g)}, {"f_p", to_json(k.f_p)},
          {"h", to_json(k.h)}};
}

inline json to_json(const Ciphertext& c) { return {{"c", to_json(c.c)}}; }

inline json to_json(const AttackOutcome& o, double key_norm) {
  json j;
  j["attack"] = to_string(o.kind);
  j["threshold"] = o.threshold;
  auto opt = [](const std::optional<IntVector>& v) { return v ? json(*v) : json(nullptr); };
  if (o.kind == AttackKind::naive) {
    j["k"] = opt(o.k);
    j["norm_k"] = AttackOutcome::norm(o.k);
  } else {
    j["k1"] = opt(o.k1);
    j["k2"] = opt(o.k2);
    j["norm_k1"] = AttackOutcome::norm(o.k1);
    j["norm_k2"] = AttackOutcome::norm(o.k2);
  }
  j["rows_scanned"] = o.rows_scanned;
  j["time_s"] = o.time_s;
  const AttackSuccess s = evaluate_success(o, key_norm);
  j["success"] = {{"k", s.k}, {"k1", s.k1}, {"k2", s.k2}, {"failure", o.failure()}};
  return j;
}

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw IoError(path + ": " + e.what());
  }
}

inline void write_json_file(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path);
  out << j.dump(2) << '\n';
}

} // namespace grntru
