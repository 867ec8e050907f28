#pragma once

#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "catalog.hpp"
#include "spectral_core.hpp"

namespace sharpineq {

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& msg, int line, std::string field)
      : std::runtime_error(msg), line_(line), field_(std::move(field)) {}
  int line() const { return line_; }
  const std::string& field() const { return field_; }

 private:
  int line_;
  std::string field_;
};

struct BuiltModel {
  std::string name;
  std::string family;
  int dimension = 1;
  FunctionalKind functional = FunctionalKind::Point;
  std::unique_ptr<SpectralModel> model;  // null for the R^d family
  std::optional<RdModel> rd;
  std::optional<CrossSpace> cross;
  TailPolicy policy;
  bool rel_given = false;
  std::vector<double> h;
  std::vector<double> lambda;
  int split = 1;
  std::vector<std::string> warnings;
  std::size_t num_b() const;
};

// Parses and builds a model document. `origin` names the source in diagnostics.
BuiltModel parse_model(const std::string& text, const std::string& origin = "<model>");
BuiltModel load_model(const std::string& path);

struct Preset {
  const char* name;
  const char* summary;
  const char* json;
};
const std::vector<Preset>& presets();
const Preset* find_preset(const std::string& name);

}  // namespace sharpineq
