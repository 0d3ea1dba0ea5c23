#pragma once

// Independent reference computations for the test suites. Nothing here
// uses the library's search, span or reduction code: words are enumerated
// exhaustively, fields are never reduced modulo rho (values at a point of
// the hypersurface do not depend on it for tangent fields), and ranks come
// from a local Gaussian elimination.

#include <optional>
#include <vector>

#include "crtype/poly.hpp"
#include "crtype/vfield.hpp"

namespace oracle {

using crtype::CRat;
using crtype::Point;
using crtype::Poly;
using crtype::Rat;
using crtype::VField;

using Word = std::vector<std::size_t>;

struct FirstNonzero {
  std::optional<long> length;
  Word witness;  // outermost letter first
  CRat value;
};

/// All words X_{a_m}...X_{a_1} f by increasing m, lex order with the
/// outermost letter most significant.
inline FirstNonzero derivative_search(const std::vector<VField>& gens, const Poly& f, const Point& p, long max_len) {
  struct Item {
    Word word;
    Poly g;
  };
  std::vector<Item> level{{Word{}, f}};
  for (long m = 0;; ++m) {
    for (const auto& it : level) {
      CRat v = crtype::eval(it.g, p);
      if (!v.is_zero()) return {m, it.word, v};
    }
    if (m == max_len) return {};
    std::vector<Item> next;
    for (std::size_t a = 0; a < gens.size(); ++a)
      for (const auto& it : level) {
        Word w{a};
        w.insert(w.end(), it.word.begin(), it.word.end());
        next.push_back({std::move(w), crtype::apply(gens[a], it.g)});
      }
    level = std::move(next);
  }
}

/// Left-normed brackets [Y_m,[...,[Y_2,Y_1]]] with Y_1 < Y_2 (indices),
/// listed outermost first, by increasing length, lex order. Every word of
/// length m is produced.
struct BracketItem {
  Word word;
  VField field;
};

inline std::vector<std::vector<BracketItem>> bracket_levels(const std::vector<VField>& letters, long max_len,
                                                            bool canonical_pairs = true) {
  std::vector<std::vector<BracketItem>> levels(2);
  for (std::size_t a = 0; a < letters.size(); ++a) levels[1].push_back({Word{a}, letters[a]});
  for (long m = 2; m <= max_len; ++m) {
    std::vector<BracketItem> next;
    for (std::size_t a = 0; a < letters.size(); ++a)
      for (const auto& it : levels[m - 1]) {
        if (m == 2 && canonical_pairs && !(it.word.front() < a)) continue;
        Word w{a};
        w.insert(w.end(), it.word.begin(), it.word.end());
        next.push_back({std::move(w), crtype::bracket(letters[a], it.field)});
      }
    levels.push_back(std::move(next));
  }
  return levels;
}

/// First bracket word whose value pairs nontrivially with the covector
/// `drho` (coefficients of the d/dz_j components) at p.
inline FirstNonzero commutator_search(const std::vector<VField>& letters, const std::vector<std::pair<std::size_t, Poly>>& drho,
                                      const Point& p, long max_len) {
  auto levels = bracket_levels(letters, max_len);
  for (long m = 2; m <= max_len; ++m)
    for (const auto& it : levels[m]) {
      CRat v;
      for (const auto& [var, c] : drho) v += crtype::eval(c, p) * crtype::eval(it.field.coeff(var), p);
      if (!v.is_zero()) return {m, it.word, v};
    }
  return {};
}

/// Rank of rational row vectors.
inline std::size_t rank(std::vector<std::vector<Rat>> rows) {
  std::size_t r = 0;
  const std::size_t cols = rows.empty() ? 0 : rows[0].size();
  for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
    std::size_t piv = r;
    while (piv < rows.size() && sgn(rows[piv][c]) == 0) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[piv], rows[r]);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r || sgn(rows[i][c]) == 0) continue;
      Rat k = rows[i][c] / rows[r][c];
      for (std::size_t j = c; j < cols; ++j) rows[i][j] -= k * rows[r][j];
    }
    ++r;
  }
  return r;
}

struct Filtration {
  std::vector<long> numbers;
  std::vector<std::size_t> multiplicities;
  std::size_t final_rank = 0;
};

/// Hormander numbers of a system in real variables: rank of the values of
/// every bracket word of length <= m, for m = 1..max_len.
inline Filtration filtration(const std::vector<VField>& gens, const Point& p, long max_len) {
  const auto levels = bracket_levels(gens, max_len, false);
  const std::size_t n = p.table()->size();
  std::vector<std::vector<Rat>> rows;
  Filtration out;
  std::size_t prev = 0;
  for (long m = 1; m <= max_len; ++m) {
    for (const auto& it : levels[m]) {
      std::vector<Rat> row(n);
      for (std::size_t v = 0; v < n; ++v) row[v] = crtype::eval(it.field.coeff(v), p).re;
      rows.push_back(std::move(row));
    }
    const std::size_t r = rank(rows);
    if (m > 1 && r > prev) {
      out.numbers.push_back(m);
      out.multiplicities.push_back(r - prev);
    }
    prev = r;
    if (r == n) break;
  }
  out.final_rank = prev;
  return out;
}

/// Minimum over terms of sum_v exps[v] * weight[v]; weight < 0 marks an
/// infinite weight. nullopt for the zero polynomial or all-infinite terms.
inline std::optional<long> weighted_order(const Poly& f, const std::vector<long>& weight) {
  std::optional<long> best;
  for (const auto& [m, c] : f.terms()) {
    long d = 0;
    bool inf = false;
    for (std::size_t v = 0; v < m.exps.size(); ++v) {
      if (m.exps[v] == 0) continue;
      if (weight[v] < 0) inf = true;
      d += static_cast<long>(m.exps[v]) * weight[v];
    }
    if (!inf && (!best || d < *best)) best = d;
  }
  return best;
}

}  // namespace oracle
