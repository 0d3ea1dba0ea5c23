#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace crtype {

enum class VarKind { Holomorphic, Antiholomorphic, Real };

using VarIndex = std::size_t;

struct Variable {
  std::string name;
  VarKind kind;
};

/// Ordered set of coordinates shared by every Poly and VField of a session.
/// Holomorphic variables are declared together with their antiholomorphic
/// partner ("z1" and "z1bar"); the pairing is an involution that fixes
/// real variables.
class VarTable {
 public:
  class Builder {
   public:
    /// Adds `name` and its partner `name + "bar"`.
    Builder& holomorphic(const std::string& name);
    Builder& real(const std::string& name);
    std::shared_ptr<const VarTable> build();

   private:
    std::vector<Variable> vars_;
    std::vector<VarIndex> pair_;
  };

  std::size_t size() const { return vars_.size(); }
  const Variable& var(VarIndex i) const { return vars_.at(i); }
  const std::string& name(VarIndex i) const { return vars_.at(i).name; }
  VarKind kind(VarIndex i) const { return vars_.at(i).kind; }
  VarIndex partner(VarIndex i) const { return pair_.at(i); }

  std::optional<VarIndex> find(std::string_view name) const;
  /// Throws VariableNotFound.
  VarIndex index(std::string_view name) const;

  /// Holomorphic variables in declaration order.
  std::vector<VarIndex> holomorphic() const;

  /// Text form used by the printer: antiholomorphic variables print as
  /// conj(z).
  std::string display(VarIndex i) const;

  friend bool operator==(const VarTable& a, const VarTable& b);

 private:
  std::vector<Variable> vars_;
  std::vector<VarIndex> pair_;
  std::map<std::string, VarIndex, std::less<>> index_;
};

using VarTablePtr = std::shared_ptr<const VarTable>;

/// Same pointer or structurally equal.
bool compatible(const VarTablePtr& a, const VarTablePtr& b);

}  // namespace crtype
