#include "problem_file.hpp"

#include <fstream>
#include <set>
#include <sstream>

namespace cstar::cli {

using nlohmann::json;

namespace {

void only_keys(const json& obj, std::initializer_list<const char*> allowed, const std::string& where) {
  if (!obj.is_object()) throw ParseError(where + ": expected an object");
  std::set<std::string> ok(allowed.begin(), allowed.end());
  for (const auto& [key, _] : obj.items()) {
    if (!ok.count(key)) throw ParseError(where + ": unknown field '" + key + "'");
  }
}

const json& field(const json& obj, const char* key, const std::string& where) {
  const auto it = obj.find(key);
  if (it == obj.end()) throw ParseError(where + ": missing field '" + key + "'");
  return *it;
}

double number(const json& j, const std::string& where) {
  if (!j.is_number()) throw ParseError(where + ": expected a number");
  return j.get<double>();
}

Complex entry(const json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 2) throw ParseError(where + ": expected [re, im]");
  return {number(j[0], where), number(j[1], where)};
}

std::vector<int> int_list(const json& j, const std::string& where) {
  if (!j.is_array()) throw ParseError(where + ": expected an array");
  std::vector<int> out;
  for (const auto& v : j) {
    if (!v.is_number_integer()) throw ParseError(where + ": expected integers");
    out.push_back(v.get<int>());
  }
  return out;
}

}  // namespace

const Element& ProblemFile::element(const std::string& name) const {
  const auto it = elements.find(name);
  if (it == elements.end()) throw ParseError("no element named '" + name + "'");
  return it->second;
}

Element element_from_json(const BlockAlgebra& algebra, const json& j) {
  const std::string where = "element";
  if (!j.is_array() || static_cast<int>(j.size()) != algebra.num_blocks()) {
    throw ParseError(where + ": expected " + std::to_string(algebra.num_blocks()) + " blocks");
  }
  std::vector<Matrix> blocks;
  for (int b = 0; b < algebra.num_blocks(); ++b) {
    const int n = algebra.block_dim(b);
    const json& rows = j[static_cast<std::size_t>(b)];
    const std::string wb = where + " block " + std::to_string(b);
    if (!rows.is_array() || static_cast<int>(rows.size()) != n) throw ParseError(wb + ": expected " + std::to_string(n) + " rows");
    Matrix m(n, n);
    for (int r = 0; r < n; ++r) {
      const json& row = rows[static_cast<std::size_t>(r)];
      if (!row.is_array() || static_cast<int>(row.size()) != n) throw ParseError(wb + ": row size mismatch");
      for (int c = 0; c < n; ++c) m(r, c) = entry(row[static_cast<std::size_t>(c)], wb);
    }
    blocks.push_back(std::move(m));
  }
  return Element(algebra, std::move(blocks));
}

json vector_to_json(const CVector& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back({v(i).real(), v(i).imag()});
  return out;
}

json element_to_json(const Element& x) {
  json out = json::array();
  for (const Matrix& m : x.blocks()) {
    json rows = json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      json row = json::array();
      for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back({m(r, c).real(), m(r, c).imag()});
      rows.push_back(std::move(row));
    }
    out.push_back(std::move(rows));
  }
  return out;
}

ProblemFile parse_problem(const json& doc) {
  only_keys(doc, {"algebra", "elements", "subalgebra"}, "file");
  const json& alg = field(doc, "algebra", "file");
  only_keys(alg, {"blocks"}, "algebra");
  const std::vector<int> dims = int_list(field(alg, "blocks", "algebra"), "algebra.blocks");
  if (dims.empty()) throw ParseError("algebra.blocks: empty");
  for (int d : dims) {
    if (d < 1) throw ParseError("algebra.blocks: sizes must be positive");
  }
  const BlockAlgebra algebra(dims);

  std::map<std::string, Element> elements;
  const json& els = field(doc, "elements", "file");
  if (!els.is_object()) throw ParseError("elements: expected an object");
  for (const auto& [name, lit] : els.items()) {
    try {
      elements.emplace(name, element_from_json(algebra, lit));
    } catch (const ParseError& e) {
      throw ParseError("elements." + name + ": " + e.what());
    }
  }

  const json& sub = field(doc, "subalgebra", "file");
  only_keys(sub, {"kind", "params", "generators"}, "subalgebra");
  std::optional<Subalgebra> s;
  try {
    if (sub.contains("generators")) {
      if (sub.contains("kind") || sub.contains("params")) throw ParseError("subalgebra: give either kind or generators");
      const json& g = sub["generators"];
      if (!g.is_array()) throw ParseError("subalgebra.generators: expected an array of names");
      std::vector<Element> gens;
      for (const auto& name : g) {
        if (!name.is_string()) throw ParseError("subalgebra.generators: expected names");
        const auto it = elements.find(name.get<std::string>());
        if (it == elements.end()) throw ParseError("subalgebra.generators: unknown element '" + name.get<std::string>() + "'");
        gens.push_back(it->second);
      }
      s = build_subalgebra(algebra, gens);
    } else {
      const json& kind = field(sub, "kind", "subalgebra");
      if (!kind.is_string()) throw ParseError("subalgebra.kind: expected a string");
      const auto k = parse_subalgebra_kind(kind.get<std::string>());
      if (!k) throw ParseError("subalgebra.kind: unknown kind '" + kind.get<std::string>() + "'");
      SubalgebraParams params;
      if (sub.contains("params")) {
        only_keys(sub["params"], {"partition"}, "subalgebra.params");
        if (sub["params"].contains("partition")) params.partition = int_list(sub["params"]["partition"], "subalgebra.params.partition");
      }
      s = standard_subalgebra(algebra, *k, params);
    }
  } catch (const Error& e) {
    throw ParseError(std::string("subalgebra: ") + e.what());
  }
  return ProblemFile{algebra, std::move(elements), std::move(*s)};
}

ProblemFile parse_problem_text(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(e.what());
  }
  return parse_problem(doc);
}

ProblemFile load_problem(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_problem_text(buf.str());
}

}  // namespace cstar::cli
