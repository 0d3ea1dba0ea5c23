#include "crtype/result.hpp"

namespace crtype {

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Finite:
      return "finite";
    case Verdict::AtLeast:
      return "at-least";
    case Verdict::InfiniteDefinitive:
      return "infinite-definitive";
  }
  return "at-least";
}

std::vector<std::string> OrderResult::witness_letters() const {
  std::vector<std::string> out;
  out.reserve(witness.size());
  for (auto i : witness) out.push_back(alphabet.at(i));
  return out;
}

}  // namespace crtype
