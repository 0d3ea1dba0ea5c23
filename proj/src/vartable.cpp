#include "crtype/vartable.hpp"

#include "crtype/error.hpp"

namespace crtype {

VarTable::Builder& VarTable::Builder::holomorphic(const std::string& name) {
  VarIndex z = vars_.size();
  vars_.push_back({name, VarKind::Holomorphic});
  vars_.push_back({name + "bar", VarKind::Antiholomorphic});
  pair_.push_back(z + 1);
  pair_.push_back(z);
  return *this;
}

VarTable::Builder& VarTable::Builder::real(const std::string& name) {
  pair_.push_back(vars_.size());
  vars_.push_back({name, VarKind::Real});
  return *this;
}

std::shared_ptr<const VarTable> VarTable::Builder::build() {
  auto table = std::make_shared<VarTable>();
  for (VarIndex i = 0; i < vars_.size(); ++i) {
    const auto& n = vars_[i].name;
    if (n.empty()) throw InputError("empty variable name");
    if (n == "i" || n == "conj" || n == "Re" || n == "Im")
      throw InputError("'" + n + "' is reserved and cannot name a variable");
    if (!table->index_.emplace(n, i).second) throw InputError("duplicate variable '" + n + "'");
  }
  table->vars_ = std::move(vars_);
  table->pair_ = std::move(pair_);
  return table;
}

std::optional<VarIndex> VarTable::find(std::string_view name) const {
  auto it = index_.find(name);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

VarIndex VarTable::index(std::string_view name) const {
  auto i = find(name);
  if (!i) throw VariableNotFound(std::string(name));
  return *i;
}

std::vector<VarIndex> VarTable::holomorphic() const {
  std::vector<VarIndex> out;
  for (VarIndex i = 0; i < vars_.size(); ++i)
    if (vars_[i].kind == VarKind::Holomorphic) out.push_back(i);
  return out;
}

std::string VarTable::display(VarIndex i) const {
  if (kind(i) == VarKind::Antiholomorphic) return "conj(" + name(partner(i)) + ")";
  return name(i);
}

bool operator==(const VarTable& a, const VarTable& b) {
  if (a.vars_.size() != b.vars_.size()) return false;
  for (VarIndex i = 0; i < a.vars_.size(); ++i)
    if (a.vars_[i].name != b.vars_[i].name || a.vars_[i].kind != b.vars_[i].kind) return false;
  return true;
}

bool compatible(const VarTablePtr& a, const VarTablePtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  return *a == *b;
}

}  // namespace crtype
