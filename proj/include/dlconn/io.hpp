#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

#include "dlconn/counting.hpp"
#include "dlconn/coxeter.hpp"
#include "dlconn/errors.hpp"
#include "dlconn/flag.hpp"
#include "dlconn/report.hpp"
#include "dlconn/twist.hpp"

namespace dlconn {

using ordered_json = nlohmann::ordered_json;

/// "<Letter><rank>" (A,B,C,D,E,F,G families) or an explicit Coxeter matrix
/// as a JSON array of arrays.
inline DatumPtr parse_datum(const std::string& text) {
  std::string s = text;
  while (!s.empty() && s.front() == ' ') s.erase(s.begin());
  while (!s.empty() && s.back() == ' ') s.pop_back();
  if (s.empty()) fail(ErrorCode::ParseError, "empty group description");
  if (s.front() == '[') {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(s);
    } catch (const std::exception& e) {
      fail(ErrorCode::ParseError, std::string("bad matrix JSON: ") + e.what());
    }
    std::vector<std::vector<int>> m;
    for (const auto& row : j) {
      std::vector<int> r;
      for (const auto& v : row) r.push_back(v.get<int>());
      m.push_back(std::move(r));
    }
    return CoxeterDatum::make(std::move(m));
  }
  return CoxeterDatum::of_type(s);
}

/// Twist text: "1" for the identity, "a>b,c>d" for an explicit permutation
/// (unnamed generators stay fixed), or a shorthand label: 2A<r> is the
/// diagram flip, 2D<r> swaps the fork tips, 3D4 is triality.
inline DiagramAutomorphism parse_twist(const DatumPtr& datum,
                                       const std::string& text) {
  std::string s = text;
  while (!s.empty() && s.front() == ' ') s.erase(s.begin());
  while (!s.empty() && s.back() == ' ') s.pop_back();
  const int n = datum->rank();
  if (s.empty() || s == "1" || s == "id")
    return DiagramAutomorphism::identity(datum);
  std::vector<int> perm(n);
  for (int i = 0; i < n; ++i) perm[i] = i;
  if (s.size() >= 2 && (s[0] == '2' || s[0] == '3') &&
      (s[1] == 'A' || s[1] == 'D' || s[1] == 'E')) {
    int r = 0;
    try {
      r = std::stoi(s.substr(2));
    } catch (const std::exception&) {
      fail(ErrorCode::ParseError, "bad twist label: " + s);
    }
    if (r != n)
      fail(ErrorCode::ParseError,
           "twist label rank does not match the group rank");
    if (s[0] == '2' && s[1] == 'A') {
      for (int i = 0; i < n; ++i) perm[i] = n - 1 - i;
    } else if (s[0] == '2' && s[1] == 'D') {
      if (n < 3) fail(ErrorCode::ParseError, "2D twist needs rank >= 3");
      std::swap(perm[n - 2], perm[n - 1]);
    } else if (s == "3D4") {
      // cycle the three fork tips of D4 (nodes 0, 2, 3 around the center 1)
      perm = {2, 1, 3, 0};
    } else if (s[0] == '2' && s[1] == 'E') {
      if (n != 6) fail(ErrorCode::ParseError, "2E twist is only for E6");
      perm = {4, 3, 2, 1, 0, 5};
    } else {
      fail(ErrorCode::ParseError, "unknown twist label: " + s);
    }
    return DiagramAutomorphism::make(datum, std::move(perm));
  }
  // explicit "a>b" pairs
  std::size_t pos = 0;
  while (pos < s.size()) {
    std::size_t comma = s.find(',', pos);
    std::string tok =
        s.substr(pos, comma == std::string::npos ? comma : comma - pos);
    std::size_t arrow = tok.find('>');
    if (arrow == std::string::npos)
      fail(ErrorCode::ParseError, "expected a>b in twist: " + tok);
    int a = 0, b = 0;
    try {
      a = std::stoi(tok.substr(0, arrow));
      b = std::stoi(tok.substr(arrow + 1));
    } catch (const std::exception&) {
      fail(ErrorCode::ParseError, "bad twist pair: " + tok);
    }
    if (a < 0 || a >= n || b < 0 || b >= n)
      fail(ErrorCode::ParseError, "twist index out of range: " + tok);
    perm[a] = b;
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return DiagramAutomorphism::make(datum, std::move(perm));
}

inline GeneratorSet parse_generator_set(const std::string& text) {
  GeneratorSet out;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t comma = text.find(',', pos);
    std::string tok =
        text.substr(pos, comma == std::string::npos ? comma : comma - pos);
    if (!tok.empty()) {
      try {
        out.insert(std::stoi(tok));
      } catch (const std::exception&) {
        fail(ErrorCode::ParseError, "bad generator index: " + tok);
      }
    }
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return out;
}

/// Realization text: "GL<n>@q=<q>" or "U<n>@q=<q>".
inline RealizationPtr parse_realization(const std::string& text, int max_m = 0,
                                        std::size_t flag_bound = 1000000) {
  RealizationKind kind;
  std::size_t pos = 0;
  if (text.rfind("GL", 0) == 0) {
    kind = RealizationKind::Split;
    pos = 2;
  } else if (text.rfind("U", 0) == 0) {
    kind = RealizationKind::Unitary;
    pos = 1;
  } else {
    fail(ErrorCode::ParseError, "realization must start with GL or U: " + text);
  }
  std::size_t at = text.find("@q=", pos);
  if (at == std::string::npos)
    fail(ErrorCode::ParseError, "realization needs @q=<value>: " + text);
  int n = 0;
  std::uint64_t q = 0;
  try {
    n = std::stoi(text.substr(pos, at - pos));
    q = std::stoull(text.substr(at + 3));
  } catch (const std::exception&) {
    fail(ErrorCode::ParseError, "bad realization numbers: " + text);
  }
  return GroupRealization::make(kind, n, q, max_m, flag_bound);
}

// ---- serialization ----

inline ordered_json poly_to_json(const IntPolynomial& p) {
  ordered_json arr = ordered_json::array();
  for (const BigInt& c : p.coeffs()) {
    if (c.fits_int64())
      arr.push_back(c.to_int64());
    else
      arr.push_back(c.to_string());
  }
  return arr;
}

inline ordered_json bigint_to_json(const BigInt& v) {
  if (v.fits_int64()) return ordered_json(v.to_int64());
  return ordered_json(v.to_string());
}

/// Matrix of coefficient vectors over F_p, rows = canonical basis vectors.
/// Trailing zero coefficients are trimmed (a bare zero stays "[0]").
inline ordered_json flag_to_json(const Flag& f) {
  const auto& tower = *f.realization()->tower();
  ordered_json rows = ordered_json::array();
  for (int i = 0; i < f.n(); ++i) {
    ordered_json row = ordered_json::array();
    for (int k = 0; k < f.n(); ++k) {
      auto v = tower.decode(f.rows()[i * 4 + k]);
      while (v.size() > 1 && v.back() == 0) v.pop_back();
      row.push_back(v);
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

inline ordered_json report_to_json(const VerificationReport& r) {
  ordered_json j;
  j["schema"] = VerificationReport::kSchema;
  j["check"] = r.check_name;
  j["statement"] = r.statement;
  ordered_json params = ordered_json::object();
  for (const auto& [k, v] : r.parameters) params[k] = v;
  j["parameters"] = std::move(params);
  j["verdict"] = verdict_name(r.verdict);
  j["witnesses"] = r.witnesses;
  j["runtime_ms"] = r.runtime_ms;
  return j;
}

inline std::string report_to_tsv(const VerificationReport& r) {
  std::string params;
  for (const auto& [k, v] : r.parameters) {
    if (!params.empty()) params.push_back(';');
    params += k + "=" + v;
  }
  std::string wit;
  for (const auto& w : r.witnesses) {
    if (!wit.empty()) wit.push_back('|');
    wit += w;
  }
  return r.check_name + "\t" + verdict_name(r.verdict) + "\t" +
         std::to_string(r.runtime_ms) + "\t" + params + "\t" + wit;
}

}  // namespace dlconn
