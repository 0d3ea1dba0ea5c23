#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "crtype/hypersurface.hpp"
#include "crtype/result.hpp"
#include "crtype/vanishing.hpp"

namespace crtype {

/// (1,0) tangent fields L_1..L_s on a hypersurface whose values at the
/// base point are linearly independent.
class Frame {
 public:
  static Frame make(Hypersurface surface, std::vector<VField> fields, std::vector<std::string> names);

  const Hypersurface& surface() const { return surface_; }
  const std::vector<VField>& fields() const { return fields_; }
  const std::vector<std::string>& names() const { return names_; }
  const Point& base_point() const { return surface_.base_point(); }
  /// Derivative system generated by the frame and its conjugates.
  const VFSystem& system() const { return system_; }

  /// The same frame written around its base point (which becomes 0).
  Frame centered() const;

  /// Bracket letters conj(L_1)..conj(L_s), L_1..L_s and their names.
  std::vector<VField> bracket_letters() const;
  std::vector<std::string> bracket_alphabet() const;

 private:
  Frame(Hypersurface surface, std::vector<VField> fields, std::vector<std::string> names, VFSystem system)
      : surface_(std::move(surface)), fields_(std::move(fields)), names_(std::move(names)), system_(std::move(system)) {}

  Hypersurface surface_;
  std::vector<VField> fields_;
  std::vector<std::string> names_;
  VFSystem system_;
};

/// Left-normed bracket [Y_m, [..., [Y_2, Y_1]...]] of the word's letters
/// (outermost first) over the bracket alphabet.
VField expand_bracket_word(const Frame& frame, const Word& word);

/// Least length m of a left-normed word whose value pairs nontrivially with
/// d rho at p. Witness: lex-first word of that length (letter order
/// conj(L_1) < ... < conj(L_s) < L_1 < ... < L_s, outermost letter first,
/// innermost pair canonical with Y_1 < Y_2).
OrderResult commutator_type(const Frame& frame, long cutoff = 12);

/// Re-expands the certificate: all basis pairings vanish at p and every
/// one-letter extension of every basis element stays in their span.
bool verify_commutator_certificate(const Frame& frame, const ClosureCertificate& cert);

/// 2 + vanishing order of levi_form(L, L) along the frame system. L must be
/// a (1,0) tangent field with L(p) != 0 and L(p) in the span of the frame.
OrderResult levi_type(const Frame& frame, const VField& section, long cutoff = 12);

/// sum_j levi_form(L_j, L_j).
Poly trace_levi(const Frame& frame);

struct BundleLeviType {
  OrderResult type;
  /// The trace formula is valid under pseudoconvexity only; this is the
  /// sampled diagnostic for that hypothesis.
  PseudoconvexityReport diagnostic;
};

BundleLeviType bundle_levi_type(const Frame& frame, long cutoff = 12, std::uint64_t seed = 1,
                                std::size_t samples = 8);

/// Holomorphic parametrization xi -> phi(xi) of a complex submanifold.
struct Curve {
  std::string name;
  VarTablePtr params;
  /// Image of each holomorphic variable, in the order of VarTable::holomorphic().
  std::vector<Poly> map;
};

struct ContactOrder {
  Verdict verdict = Verdict::AtLeast;  // Finite or AtLeast
  long value = 0;
  Poly composition;
};

/// Lowest total degree in (xi, conj xi) of rho o phi among terms of degree
/// <= degree_bound; AtLeast(degree_bound + 1) if there is none.
ContactOrder contact_order(const Hypersurface& h, const Curve& curve, long degree_bound = 16);

struct FullReport {
  OrderResult commutator;
  std::vector<std::pair<std::string, OrderResult>> levi;
  BundleLeviType trace;
  std::vector<std::pair<std::string, ContactOrder>> contact;
};

FullReport full_report(const Frame& frame, const std::vector<Curve>& curves, long cutoff = 12,
                       long degree_bound = 16, std::uint64_t seed = 1);

}  // namespace crtype
