#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "crtype/error.hpp"
#include "crtype/typing.hpp"
#include "json.hpp"

namespace crtype {

/// Malformed expression text; column is 1-based.
class ParseError : public InputError {
 public:
  ParseError(std::size_t column, const std::string& message)
      : InputError("column " + std::to_string(column) + ": " + message), column_(column), message_(message) {}
  std::size_t column() const { return column_; }
  const std::string& detail() const { return message_; }

 private:
  std::size_t column_;
  std::string message_;
};

struct Expr {
  enum class Kind { Number, ImagUnit, Var, Neg, Add, Sub, Mul, Div, Pow, Conj, Re, Im, Abs };
  Kind kind;
  std::size_t column;  // 1-based start of the node
  std::string text;    // Number: digits; Var: name
  unsigned exponent = 0;
  std::vector<std::unique_ptr<Expr>> args;
};

std::unique_ptr<Expr> parse_expr(std::string_view text);
/// Resolves names and desugars Re, Im, |e|^(2k), postfix ~.
Poly lower(const Expr& e, const VarTablePtr& table);

Poly parse_poly(std::string_view text, const VarTablePtr& table);
/// Components keyed by variable name; unspecified components are zero.
VField parse_field(const std::map<std::string, std::string>& components, const VarTablePtr& table,
                   bool require_type_1_0 = false);

/// Canonical text: parse_poly(to_text(f)) == f.
std::string to_text(const Poly& f);
/// Nonzero components keyed by variable name.
std::map<std::string, std::string> to_components(const VField& x);

// ---------------------------------------------------------------------------
// Job files

inline constexpr const char* job_schema = "crtype-job/1";

using CurveSpec = Curve;

struct SystemSpec {
  std::string mode;  // "real" or "cr"
  std::vector<std::string> generators;
  std::optional<Weights> weights;
};

struct TaskSpec {
  std::string type;
  nlohmann::ordered_json params;
};

struct JobFile {
  VarTablePtr table;
  Point point;
  std::optional<Hypersurface> hypersurface;
  std::vector<std::pair<std::string, VField>> fields;
  std::vector<std::string> frame;
  std::optional<SystemSpec> system;
  std::vector<CurveSpec> curves;
  std::vector<TaskSpec> tasks;
  std::optional<std::string> rho_text;

  const VField& field(const std::string& name) const;
  const CurveSpec& curve(const std::string& name) const;
};

JobFile parse_job(const nlohmann::ordered_json& doc);
JobFile load_job(const std::string& path);

/// Builds a variable table from the "variables" object of a job file.
VarTablePtr parse_variables(const nlohmann::ordered_json& vars);
/// Assigns "name": "expr" values (constant expressions); unlisted
/// variables are zero.
Point parse_point(const nlohmann::ordered_json& values, const VarTablePtr& table);

}  // namespace crtype
