#pragma once

#include <map>
#include <utility>

#include "crtype/rational.hpp"

namespace crtype {

template <class Key>
using SparseVector = std::map<Key, CRat>;

/// Incremental row-echelon basis of a subspace of sparse vectors over the
/// Gaussian rationals. Each stored row has pivot coefficient 1 at its
/// smallest key.
template <class Key>
class LinearSpan {
 public:
  using Vector = SparseVector<Key>;

  /// Remainder of v after eliminating every pivot; empty iff v is in the span.
  Vector reduce(Vector v) const {
    auto it = v.begin();
    while (it != v.end()) {
      auto row = rows_.find(it->first);
      if (row == rows_.end()) {
        ++it;
        continue;
      }
      const Key pivot = it->first;
      const CRat factor = it->second;
      for (const auto& [key, val] : row->second) {
        auto [slot, inserted] = v.try_emplace(key, -(factor * val));
        if (!inserted) {
          slot->second -= factor * val;
          if (slot->second.is_zero()) v.erase(slot);
        }
      }
      it = v.lower_bound(pivot);
    }
    return v;
  }

  bool contains(const Vector& v) const { return reduce(v).empty(); }

  /// Adds v; returns true if the span grew.
  bool insert(const Vector& v) {
    Vector r = reduce(v);
    if (r.empty()) return false;
    const CRat lead = r.begin()->second;
    for (auto& [key, val] : r) val /= lead;
    Key pivot = r.begin()->first;
    rows_.emplace(std::move(pivot), std::move(r));
    return true;
  }

  std::size_t rank() const { return rows_.size(); }

 private:
  std::map<Key, Vector> rows_;
};

}  // namespace crtype
