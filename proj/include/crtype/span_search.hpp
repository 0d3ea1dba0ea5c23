#pragma once

#include <cstddef>
#include <functional>
#include <utility>
#include <vector>

#include "crtype/linear_span.hpp"
#include "crtype/vfield.hpp"

namespace crtype {

/// Letter indices, outermost (last applied) first.
using Word = std::vector<std::size_t>;

template <class Item>
struct SearchNode {
  Word word;
  Item item;
};

/// Breadth-first enumeration of words over a finite alphabet, where a word
/// of length m+1 is a letter applied to a kept word of length m. A
/// candidate is kept only if its flattened item is outside the span of all
/// previously kept items. Candidates of one level are produced in
/// lexicographic order of their words (outer letter first, then the inner
/// word), so the first candidate with a linear property is the lex-first
/// word with that property among all words of that length.
template <class Item>
class SpanSearch {
 public:
  using Extend = std::function<Item(std::size_t letter, const Item& inner)>;
  /// Optional filter on (letter, inner word); rejected pairs are skipped.
  using Admit = std::function<bool(std::size_t letter, const Word& inner)>;
  /// Return true to stop the search.
  using Visit = std::function<bool(const SearchNode<Item>&)>;

  SpanSearch(std::size_t letters, Extend extend, Admit admit = {})
      : letters_(letters), extend_(std::move(extend)), admit_(std::move(admit)) {}

  /// Installs the first level. Seeds are visited and inserted in order.
  bool seed(std::vector<SearchNode<Item>> nodes, const Visit& visit) {
    frontier_.clear();
    depth_ = nodes.empty() ? 0 : nodes.front().word.size();
    return consume(std::move(nodes), visit);
  }

  /// Builds the next level from the current frontier.
  bool advance(const Visit& visit) {
    std::vector<SearchNode<Item>> previous = std::move(frontier_);
    frontier_.clear();
    ++depth_;
    all_zero_ = true;
    for (std::size_t a = 0; a < letters_; ++a) {
      for (const auto& inner : previous) {
        if (admit_ && !admit_(a, inner.word)) continue;
        SearchNode<Item> node{Word{a}, extend_(a, inner.item)};
        node.word.insert(node.word.end(), inner.word.begin(), inner.word.end());
        if (visit_and_keep(std::move(node), visit)) return true;
      }
    }
    return false;
  }

  std::size_t depth() const { return depth_; }
  const std::vector<SearchNode<Item>>& frontier() const { return frontier_; }
  /// Every kept node so far, in the order it was kept.
  const std::vector<SearchNode<Item>>& basis() const { return basis_; }
  /// The last level added nothing to the span.
  bool closed() const { return frontier_.empty(); }
  /// Every candidate of the last level was identically zero.
  bool all_zero() const { return all_zero_; }
  const LinearSpan<typename decltype(flatten(std::declval<Item>()))::key_type>& span() const { return span_; }

 private:
  bool consume(std::vector<SearchNode<Item>> nodes, const Visit& visit) {
    all_zero_ = true;
    for (auto& n : nodes)
      if (visit_and_keep(std::move(n), visit)) return true;
    return false;
  }

  bool visit_and_keep(SearchNode<Item> node, const Visit& visit) {
    if (visit && visit(node)) return true;
    auto flat = flatten(node.item);
    if (!flat.empty()) all_zero_ = false;
    if (span_.insert(flat)) {
      frontier_.push_back(node);
      basis_.push_back(std::move(node));
    }
    return false;
  }

  std::size_t letters_;
  Extend extend_;
  Admit admit_;
  std::size_t depth_ = 0;
  bool all_zero_ = true;
  std::vector<SearchNode<Item>> frontier_;
  std::vector<SearchNode<Item>> basis_;
  LinearSpan<typename decltype(flatten(std::declval<Item>()))::key_type> span_;
};

}  // namespace crtype
