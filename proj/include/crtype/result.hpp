#pragma once

#include <optional>
#include <string>
#include <vector>

#include "crtype/rational.hpp"
#include "crtype/span_search.hpp"

namespace crtype {

enum class Verdict { Finite, AtLeast, InfiniteDefinitive };

const char* to_string(Verdict v);

/// Evidence that no word of any length ever reaches a nonzero value: the
/// kept items form a set closed (up to span) under every letter, and each
/// of them has value zero at the base point.
struct ClosureCertificate {
  /// Word length of the level that added nothing.
  std::size_t level = 0;
  /// Every candidate at that level was identically zero.
  bool all_zero = false;
  /// Words of the spanning set, in the order they were kept.
  std::vector<Word> basis;
};

/// Result of a first-nonvanishing-length search.
struct OrderResult {
  Verdict verdict = Verdict::AtLeast;
  /// Finite: the order. AtLeast: the lower bound.
  long value = 0;
  /// Finite only: lex-first witness word, outermost letter first.
  Word witness;
  /// Finite only: the witness's value at the base point.
  CRat witness_value;
  /// InfiniteDefinitive only.
  std::optional<ClosureCertificate> certificate;
  /// Letter names indexed like word entries.
  std::vector<std::string> alphabet;

  std::vector<std::string> witness_letters() const;
};

}  // namespace crtype
