#include <fstream>
#include <sstream>

#include <json.hpp>

#include "jacobi/lattice.hpp"

namespace jacobi {

namespace {

using nlohmann::json;

Complex complex_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw ConfigError("profile config: complex entries must be [re, im] pairs");
  return Complex(j[0].get<double>(), j[1].get<double>());
}

json complex_to_json(Complex c) { return json::array({c.real(), c.imag()}); }

CMat matrix_from_json(const json& j, int q, const std::string& where) {
  if (!j.is_array() || static_cast<int>(j.size()) != q)
    throw ConfigError("profile config: " + where + " must be a " + std::to_string(q) + "-row matrix");
  CMat m(q, q);
  for (int r = 0; r < q; ++r) {
    const json& row = j[static_cast<size_t>(r)];
    if (!row.is_array() || static_cast<int>(row.size()) != q)
      throw ConfigError("profile config: " + where + " row " + std::to_string(r) +
                        " must have " + std::to_string(q) + " entries");
    for (int c = 0; c < q; ++c) m(r, c) = complex_from_json(row[static_cast<size_t>(c)]);
  }
  return m;
}

json matrix_to_json(const CMat& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(complex_to_json(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

SiteMap sites_from_json(const json& doc, const char* key, int q) {
  SiteMap out;
  if (!doc.contains(key)) return out;
  const json& block = doc.at(key);
  if (!block.is_object())
    throw ConfigError(std::string("profile config: '") + key + "' must map site -> matrix");
  for (auto it = block.begin(); it != block.end(); ++it) {
    int n = 0;
    try {
      size_t pos = 0;
      n = std::stoi(it.key(), &pos);
      if (pos != it.key().size()) throw std::invalid_argument("trailing characters");
    } catch (const std::exception&) {
      throw ConfigError(std::string("profile config: '") + key + "' key '" + it.key() +
                        "' is not an integer site");
    }
    out.emplace(n, matrix_from_json(it.value(), q, std::string(key) + "[" + it.key() + "]"));
  }
  return out;
}

}  // namespace

ProfileConfig parse_profile_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("profile config: invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ConfigError("profile config: top level must be an object");
  if (!doc.contains("q") || !doc.at("q").is_number_integer())
    throw ConfigError("profile config: missing integer field 'q'");
  const int q = doc.at("q").get<int>();
  if (q < 1) throw ConfigError("profile config: q must be positive");

  Tail tail;
  if (!doc.contains("tail") || !doc.at("tail").is_object())
    throw ConfigError("profile config: missing object field 'tail'");
  const json& jt = doc.at("tail");
  for (const char* field : {"a_inf", "b_inf", "w_inf"})
    if (!jt.contains(field) || !jt.at(field).is_number())
      throw ConfigError(std::string("profile config: tail requires numeric '") + field + "'");
  tail.a_inf = jt.at("a_inf").get<double>();
  tail.b_inf = jt.at("b_inf").get<double>();
  tail.w_inf = jt.at("w_inf").get<double>();

  int n_min = 0, n_max = -1;
  if (doc.contains("window")) {
    const json& jw = doc.at("window");
    if (!jw.is_object() || !jw.contains("n_min") || !jw.contains("n_max") ||
        !jw.at("n_min").is_number_integer() || !jw.at("n_max").is_number_integer())
      throw ConfigError("profile config: window requires integer n_min, n_max");
    n_min = jw.at("n_min").get<int>();
    n_max = jw.at("n_max").get<int>();
  }

  SiteMap a = sites_from_json(doc, "a", q);
  SiteMap b = sites_from_json(doc, "b", q);
  SiteMap w = sites_from_json(doc, "w", q);

  bool expect_unequal = false;
  if (doc.contains("expect_unequal_det")) {
    if (!doc.at("expect_unequal_det").is_boolean())
      throw ConfigError("profile config: expect_unequal_det must be a boolean");
    expect_unequal = doc.at("expect_unequal_det").get<bool>();
  }

  try {
    return ProfileConfig{
        CoefficientProfile(q, n_min, n_max, std::move(a), std::move(b), std::move(w), tail),
        expect_unequal};
  } catch (const Error& e) {
    throw ConfigError(std::string("profile config: ") + e.what());
  }
}

ProfileConfig load_profile_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("profile config: cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_profile_json(buf.str());
}

std::string profile_to_json(const CoefficientProfile& p, bool expect_unequal_det) {
  json doc;
  doc["q"] = p.q();
  doc["tail"] = {{"a_inf", p.tail().a_inf}, {"b_inf", p.tail().b_inf}, {"w_inf", p.tail().w_inf}};
  if (!p.window_empty()) doc["window"] = {{"n_min", p.n_min()}, {"n_max", p.n_max()}};
  auto emit = [&](const char* key, const SiteMap& sites) {
    if (sites.empty()) return;
    json block = json::object();
    for (const auto& [n, m] : sites) block[std::to_string(n)] = matrix_to_json(m);
    doc[key] = std::move(block);
  };
  emit("a", p.a_sites());
  emit("b", p.b_sites());
  emit("w", p.w_sites());
  if (expect_unequal_det) doc["expect_unequal_det"] = true;
  return doc.dump(2) + "\n";
}

void save_profile_file(const std::string& path, const CoefficientProfile& p,
                       bool expect_unequal_det) {
  std::ofstream out(path);
  if (!out) throw ConfigError("profile config: cannot write '" + path + "'");
  out << profile_to_json(p, expect_unequal_det);
}

}  // namespace jacobi
