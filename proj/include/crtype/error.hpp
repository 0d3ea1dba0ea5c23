#pragma once

#include <stdexcept>
#include <string>

namespace crtype {

/// Bad user input: unknown names, malformed expressions, invalid frames.
/// The CLI maps these to exit code 2.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An internal consistency check failed (e.g. a certificate did not
/// re-verify). The CLI maps these to exit code 3.
class InvariantError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class VariableNotFound : public InputError {
 public:
  explicit VariableNotFound(const std::string& name)
      : InputError("unknown variable '" + name + "'"), name_(name) {}
  const std::string& name() const { return name_; }

 private:
  std::string name_;
};

class TableMismatch : public InputError {
 public:
  TableMismatch() : InputError("operands use different variable tables") {}
};

class IncompletePoint : public InputError {
 public:
  explicit IncompletePoint(const std::string& name)
      : InputError("point assigns no value to '" + name + "'") {}
};

}  // namespace crtype
