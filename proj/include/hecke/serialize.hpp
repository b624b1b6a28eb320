#pragma once

// JSON forms of ids, structure constants and reports. Objects are
// nlohmann::json with sorted keys, so dumps are byte-for-byte stable.

#include <string>

#include <json.hpp>

#include "hecke/cosets.hpp"
#include "hecke/prop_hecke.hpp"
#include "hecke/report.hpp"

namespace hecke::io {

using nlohmann::json;

/// Rows of residue codes (0..q-1; for q = 4 the code of a + b x is a + 2b).
inline json to_json(const ResMatrix& m) {
  json rows = json::array();
  for (int i = 0; i < m.n(); ++i) {
    json row = json::array();
    for (int j = 0; j < m.n(); ++j) row.push_back(static_cast<int>(m(i, j)));
    rows.push_back(row);
  }
  return rows;
}

inline json to_json(const DoubleCosetId& id) {
  return {{"cartan", id.cartan}, {"left", to_json(id.left)}, {"right", to_json(id.right)}};
}

inline ResMatrix res_matrix_from_json(const json& j, const GaloisField& f, int n) {
  if (!j.is_array() || static_cast<int>(j.size()) != n) throw ConfigError("residue matrix must have " + std::to_string(n) + " rows");
  std::vector<std::vector<int>> rows;
  for (const auto& r : j) {
    if (!r.is_array()) throw ConfigError("residue matrix rows must be arrays");
    std::vector<int> row;
    for (const auto& x : r) {
      if (!x.is_number_integer() || x.get<int>() < 0 || x.get<int>() >= f.q())
        throw ConfigError("residue entries must be integers in 0.." + std::to_string(f.q() - 1));
      row.push_back(x.get<int>());
    }
    rows.push_back(std::move(row));
  }
  try {
    return ResMatrix::from_rows(f, rows);
  } catch (const InvalidArgument& e) {
    throw ConfigError(e.what());
  }
}

/// The double coset named by {"cartan", "left", "right"}, re-canonicalized
/// so that any representative data is accepted.
inline DoubleCosetId id_from_json(const json& j, const LocalConfig& cfg) {
  if (!j.is_object() || !j.contains("cartan")) throw ConfigError("a double coset needs a \"cartan\" field");
  const auto& f = cfg.field();
  const auto a = j.at("cartan").get<std::vector<int>>();
  if (static_cast<int>(a.size()) != cfg.n) throw ConfigError("cartan exponents must have length n");
  const ResMatrix l = j.contains("left") ? res_matrix_from_json(j.at("left"), f, cfg.n) : ResMatrix::identity(f, cfg.n);
  const ResMatrix r = j.contains("right") ? res_matrix_from_json(j.at("right"), f, cfg.n) : ResMatrix::identity(f, cfg.n);
  if (!l.invertible() || !r.invertible()) throw ConfigError("left and right residue matrices must be invertible");
  return canonical(GroupElement::lift(l) * GroupElement::diagonal_powers(f, a) * GroupElement::lift(r), cfg);
}

inline json structure_constants_json(HeckeEngine& e, const DoubleCosetId& a, const DoubleCosetId& b) {
  const auto& cfg = e.config();
  json terms = json::array();
  for (const auto& [d, c] : e.structure_constants(a, b)) terms.push_back({{"coset", to_json(d)}, {"value", c.to_string()}});
  json out{{"n", cfg.n}, {"q", cfg.q}, {"coeff", e.field().name()}, {"a", to_json(a)}, {"b", to_json(b)}, {"terms", terms}};
  if (!e.field().is_rational()) out["ell"] = e.field().characteristic();
  return out;
}

inline json to_json(const Report& r) {
  json checks = json::array();
  for (const auto& c : r.checks()) checks.push_back({{"name", c.name}, {"status", c.pass ? "pass" : "fail"}, {"detail", c.detail}});
  return checks;
}

inline json report_json(const std::string& task, const json& params, const Report& r) {
  return {{"task", task}, {"params", params}, {"checks", to_json(r)}};
}

inline std::string dump(const json& j) { return j.dump(2) + "\n"; }

}  // namespace hecke::io
