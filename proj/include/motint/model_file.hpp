#pragma once

#include "motint/total_fn.hpp"

namespace motint {

/// Gluing request: parts[k] is restricted to cover[k] before gluing.
struct GluingSpec {
  std::string name;
  std::string family;
  std::vector<std::string> cover;
  std::vector<std::string> parts;
  bool expect_failure = false;
};

struct NamedOpen {
  std::string family;
  OpenSet open;
};

struct NamedFn {
  std::string family;
  PermFn fn;
};

struct NamedTotal {
  std::string family;
  TotalFn fn;
  std::size_t sum = 0; // trailing indices summed by integrate
};

/// Everything declared in one model file. Names keep declaration order.
struct ModelFile {
  std::string path;
  ModelPtr model;
  std::vector<std::pair<std::string, Sieve>> sieves;
  std::vector<std::pair<std::string, SimplicialFamily>> families;
  std::vector<std::pair<std::string, NamedOpen>> opens;
  std::vector<std::pair<std::string, NamedFn>> functions;
  std::vector<std::pair<std::string, NamedTotal>> totals;
  std::vector<GluingSpec> gluings;

  const Sieve& sieve(const std::string& name) const;
  const SimplicialFamily& family(const std::string& name) const;
  const NamedOpen& open(const std::string& name) const;
  const NamedFn& function(const std::string& name) const;
  const NamedTotal& total(const std::string& name) const;
};

/// Loads and validates a model document. Errors carry "path:line:col: ".
ModelFile load_model_file(const std::string& path);
ModelFile load_model_text(const std::string& text, const std::string& path = "<model>");

/// "i + 2*j >= 3", "i < j", "i == 0", "i + j mod 3 == 1" over the names.
Region parse_constraints(const std::vector<std::string>& lines, const std::vector<std::string>& names);
Affine parse_affine(const std::string& text, const std::vector<std::string>& names);
MultiPoly parse_multi_poly(const std::string& text, const std::vector<std::string>& names);

} // namespace motint
