#pragma once

// Family file format (one JSON document):
//
//   {"N": 3, "label": "...", "p": 2,              // "p" optional
//    "members": [{"nu": [[re, im], ...],
//                 "L1Ad": 1.23,
//                 "coefficients": {"0,1": [re, im], ...},   // optional
//                 "satake": {"2": [[re, im], ...], ...}}]}  // optional
//
// Coefficient keys are comma-joined l-vectors, Satake keys decimal primes.
// "p" names the prime the coefficient tables belong to. Unknown fields are
// rejected.

#include <cstdint>
#include <fstream>
#include <set>
#include <sstream>
#include <string>

#include <json.hpp>

#include "satotate/error.hpp"
#include "satotate/family_harness.hpp"

namespace satotate {

namespace detail {

inline bool is_prime(std::uint64_t p) {
  if (p < 2) return false;
  for (std::uint64_t d = 2; d * d <= p; ++d) {
    if (p % d == 0) return false;
  }
  return true;
}

inline void reject_unknown(const nlohmann::json& obj, const std::set<std::string>& allowed,
                           const std::string& where, std::optional<std::size_t> member) {
  for (const auto& [key, value] : obj.items()) {
    if (!allowed.count(key)) throw FamilyError(where + "unknown field \"" + key + "\"", member);
  }
}

inline Complex complex_from_json(const nlohmann::json& v, const std::string& where,
                                 std::optional<std::size_t> member) {
  if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number()) {
    throw FamilyError(where + "complex numbers are written as [re, im]", member);
  }
  return {v[0].get<double>(), v[1].get<double>()};
}

inline std::vector<Complex> complex_vector_from_json(const nlohmann::json& v, const std::string& where,
                                                     std::optional<std::size_t> member) {
  if (!v.is_array()) throw FamilyError(where + "expected an array of [re, im] pairs", member);
  std::vector<Complex> out;
  for (const auto& x : v) out.push_back(complex_from_json(x, where, member));
  return out;
}

inline nlohmann::json complex_to_json(Complex z) { return nlohmann::json::array({z.real(), z.imag()}); }

inline CoefficientIndex parse_index_key(const std::string& key, int n, const std::string& where,
                                        std::size_t member) {
  std::vector<int> l;
  std::stringstream ss(key);
  std::string part;
  while (std::getline(ss, part, ',')) {
    try {
      std::size_t used = 0;
      const int v = std::stoi(part, &used);
      if (used != part.size()) throw std::invalid_argument(part);
      l.push_back(v);
    } catch (const std::exception&) {
      throw FamilyError(where + "bad coefficient key \"" + key + "\"", member);
    }
  }
  try {
    return CoefficientIndex(n, std::move(l));
  } catch (const Error& e) {
    throw FamilyError(where + "coefficient key \"" + key + "\": " + e.what(), member);
  }
}

inline std::uint64_t parse_prime_key(const std::string& key, const std::string& where,
                                     std::optional<std::size_t> member) {
  std::uint64_t p = 0;
  if (key.empty() || key.find_first_not_of("0123456789") != std::string::npos) {
    throw FamilyError(where + "Satake key \"" + key + "\" is not a decimal prime", member);
  }
  try {
    p = std::stoull(key);
  } catch (const std::exception&) {
    throw FamilyError(where + "Satake key \"" + key + "\" is not a decimal prime", member);
  }
  if (!is_prime(p)) throw FamilyError(where + "Satake key \"" + key + "\" is not prime", member);
  return p;
}

}  // namespace detail

/// Structural parse of a family document. Does not run validate().
inline Family family_from_json(const nlohmann::json& doc) {
  if (!doc.is_object()) throw FamilyError("family document must be a JSON object");
  detail::reject_unknown(doc, {"N", "label", "members", "p"}, "family: ", std::nullopt);
  if (!doc.contains("N") || !doc["N"].is_number_integer()) throw FamilyError("family: \"N\" must be an integer");
  if (!doc.contains("members") || !doc["members"].is_array()) throw FamilyError("family: \"members\" must be an array");

  Family f;
  f.n = doc["N"].get<int>();
  if (f.n < 2) throw FamilyError("family: N must be >= 2");
  if (doc.contains("label")) {
    if (!doc["label"].is_string()) throw FamilyError("family: \"label\" must be a string");
    f.label = doc["label"].get<std::string>();
  }
  if (doc.contains("p")) {
    if (!doc["p"].is_number_unsigned() || !detail::is_prime(doc["p"].get<std::uint64_t>())) {
      throw FamilyError("family: \"p\" must be a prime");
    }
    f.coefficient_prime = doc["p"].get<std::uint64_t>();
  }

  const auto& members = doc["members"];
  f.members.reserve(members.size());
  for (std::size_t j = 0; j < members.size(); ++j) {
    const auto& mj = members[j];
    const std::string where = "member " + std::to_string(j) + ": ";
    if (!mj.is_object()) throw FamilyError(where + "must be an object", j);
    detail::reject_unknown(mj, {"nu", "L1Ad", "coefficients", "satake"}, where, j);
    if (!mj.contains("nu")) throw FamilyError(where + "missing \"nu\"", j);
    if (!mj.contains("L1Ad") || !mj["L1Ad"].is_number()) throw FamilyError(where + "\"L1Ad\" must be a number", j);

    auto nu = detail::complex_vector_from_json(mj["nu"], where + "nu: ", j);
    if (nu.size() != static_cast<std::size_t>(f.n - 1)) {
      throw FamilyError(where + "nu needs " + std::to_string(f.n - 1) + " entries", j);
    }
    FamilyMember m{SpectralParameter(f.n, std::move(nu)), mj["L1Ad"].get<double>(), {}, {}};

    if (mj.contains("coefficients")) {
      if (!mj["coefficients"].is_object()) throw FamilyError(where + "\"coefficients\" must be an object", j);
      for (const auto& [key, value] : mj["coefficients"].items()) {
        m.coefficients.insert_or_assign(detail::parse_index_key(key, f.n, where, j),
                                        detail::complex_from_json(value, where + "coefficients: ", j));
      }
    }
    if (mj.contains("satake")) {
      if (!mj["satake"].is_object()) throw FamilyError(where + "\"satake\" must be an object", j);
      for (const auto& [key, value] : mj["satake"].items()) {
        const std::uint64_t p = detail::parse_prime_key(key, where, j);
        auto raw = detail::complex_vector_from_json(value, where + "satake: ", j);
        if (raw.size() != static_cast<std::size_t>(f.n)) {
          throw FamilyError(where + "Satake parameter needs " + std::to_string(f.n) + " entries", j);
        }
        try {
          m.satake.insert_or_assign(p, canonicalize(raw).with_p_hint(static_cast<double>(p)));
        } catch (const Error& e) {
          throw FamilyError(where + "Satake parameter at p=" + key + ": " + e.what(), j);
        }
      }
    }
    f.members.push_back(std::move(m));
  }
  return f;
}

inline nlohmann::json family_to_json(const Family& f) {
  nlohmann::json doc;
  doc["N"] = f.n;
  doc["label"] = f.label;
  if (f.coefficient_prime) doc["p"] = *f.coefficient_prime;
  auto& members = doc["members"] = nlohmann::json::array();
  for (const FamilyMember& m : f.members) {
    nlohmann::json mj;
    mj["nu"] = nlohmann::json::array();
    for (const Complex& z : m.nu.nu()) mj["nu"].push_back(detail::complex_to_json(z));
    mj["L1Ad"] = m.l1_adjoint;
    if (!m.coefficients.empty()) {
      auto& c = mj["coefficients"] = nlohmann::json::object();
      for (const auto& [idx, a] : m.coefficients) c[idx.str()] = detail::complex_to_json(a);
    }
    if (!m.satake.empty()) {
      auto& s = mj["satake"] = nlohmann::json::object();
      for (const auto& [p, x] : m.satake) {
        auto arr = nlohmann::json::array();
        for (const Complex& z : x.alphas()) arr.push_back(detail::complex_to_json(z));
        s[std::to_string(p)] = std::move(arr);
      }
    }
    members.push_back(std::move(mj));
  }
  return doc;
}

inline Family parse_family(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw FamilyError(std::string("malformed JSON: ") + e.what());
  }
  return family_from_json(doc);
}

/// Reads, parses and validates a family file.
inline Family load_family(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FamilyError("cannot open family file " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  Family f = parse_family(buf.str());
  validate(f);
  return f;
}

inline void save_family(const Family& f, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::invalid_argument, "cannot write family file " + path);
  out << family_to_json(f).dump() << '\n';
}

}  // namespace satotate
