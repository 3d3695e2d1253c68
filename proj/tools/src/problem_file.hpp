#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "cstar/algebra.hpp"
#include "cstar/subalgebra.hpp"

namespace cstar::cli {

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ProblemFile {
  BlockAlgebra algebra;
  std::map<std::string, Element> elements;
  Subalgebra subalgebra;

  const Element& element(const std::string& name) const;
};

/// Strict: unknown keys, wrong shapes, non-numeric entries and unknown generator names all throw ParseError.
ProblemFile parse_problem(const nlohmann::json& doc);
ProblemFile parse_problem_text(const std::string& text);
ProblemFile load_problem(const std::string& path);

/// Blocks as rows of [re, im] pairs; the inverse of the element reader.
nlohmann::json element_to_json(const Element& x);
Element element_from_json(const BlockAlgebra& algebra, const nlohmann::json& j);
nlohmann::json vector_to_json(const CVector& v);

}  // namespace cstar::cli
