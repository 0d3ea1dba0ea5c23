#pragma once

#include <map>
#include <string>

#include "crtype/exprlang.hpp"
#include "crtype/models.hpp"
#include "crtype/typing.hpp"
#include "doctest.h"

namespace testing {

using namespace crtype;

inline VarTablePtr c3() { return VarTable::Builder().holomorphic("z1").holomorphic("z2").holomorphic("w").build(); }
inline VarTablePtr c2() { return VarTable::Builder().holomorphic("z1").holomorphic("w").build(); }
inline VarTablePtr r3() { return VarTable::Builder().real("x").real("y").real("s").build(); }

inline Poly P(const std::string& text, const VarTablePtr& t) { return parse_poly(text, t); }
inline VField F(const std::map<std::string, std::string>& comps, const VarTablePtr& t) {
  return parse_field(comps, t);
}

inline Hypersurface surface(const std::string& rho, const VarTablePtr& t) {
  return Hypersurface::make(P(rho, t), Point::origin(t));
}

inline Frame frame1(const std::string& rho, const std::map<std::string, std::string>& l, const VarTablePtr& t) {
  return Frame::make(surface(rho, t), {F(l, t)}, {"L"});
}

// Paper examples in C^3.
inline const char* bloom_rho = "2*Re(w) + (z2 + conj(z2) + |z1|^2)^2";
inline const std::map<std::string, std::string> bloom_l{{"z1", "1"}, {"z2", "-conj(z1)"}};
inline const char* inf_rho = "-(w+conj(w)) + |z1|^4 + z1*conj(z2) + z2*conj(z1)";
inline const std::map<std::string, std::string> inf_l{{"z1", "1"}, {"z2", "-|z1|^2"}, {"w", "conj(z2) + z1*conj(z1)^2"}};
inline const char* six_rho = "-(w+conj(w)) + |z1|^4 + z1*conj(z2) + z2*conj(z1) + |z2|^2";
inline const std::map<std::string, std::string> six_l{
    {"z1", "1"}, {"z2", "-|z1|^2"}, {"w", "conj(z2) + z1*conj(z1)^2 - |z1|^2*conj(z2)"}};

inline std::vector<VarIndex> all_vars(const VarTablePtr& t) {
  std::vector<VarIndex> v;
  for (VarIndex i = 0; i < t->size(); ++i) v.push_back(i);
  return v;
}

inline std::vector<VarIndex> holo_vars(const VarTablePtr& t) { return t->holomorphic(); }

}  // namespace testing
