#pragma once

#include <span>
#include <utility>
#include <vector>

#include "crtype/linear_span.hpp"
#include "crtype/poly.hpp"

namespace crtype {

/// Derivation sum_v coeff(v) * d/dv with polynomial coefficients.
class VField {
 public:
  explicit VField(VarTablePtr table);
  /// The coordinate field d/dv.
  static VField coordinate(VarTablePtr table, VarIndex v);

  const VarTablePtr& table() const { return table_; }
  const Poly& coeff(VarIndex v) const { return coeffs_.at(v); }
  void set_coeff(VarIndex v, Poly p);
  bool is_zero() const;

  VField& operator+=(const VField& o);
  VField& operator-=(const VField& o);
  friend VField operator+(VField a, const VField& b) { return a += b; }
  friend VField operator-(VField a, const VField& b) { return a -= b; }
  friend VField operator-(VField a);
  friend VField operator*(const CRat& c, VField a);
  /// Module action g * X.
  friend VField operator*(const Poly& g, const VField& x);
  friend bool operator==(const VField& a, const VField& b);

 private:
  VarTablePtr table_;
  std::vector<Poly> coeffs_;
};

/// X(f) = sum_v X_v * df/dv.
Poly apply(const VField& x, const Poly& f);
/// [X, Y] with component X(Y_v) - Y(X_v).
VField bracket(const VField& x, const VField& y);
/// Component at v is conj of the component at partner(v).
VField conj_field(const VField& x);
/// Coefficient-wise truncate_degree.
VField truncate_degree(const VField& x, long max_degree);
/// Coefficient-wise translate: the same field written around p.
VField translate(const VField& x, const Point& p);

/// All nonzero coefficients sit on holomorphic variables.
bool is_type_1_0(const VField& x);

/// Key of a field coefficient in the flattened coefficient space.
using FieldKey = std::pair<VarIndex, Monomial>;
SparseVector<FieldKey> flatten(const VField& x);
SparseVector<Monomial> flatten(const Poly& f);

/// Value of a field at a point, in the complex coordinate frame.
struct TangentVec {
  VarTablePtr table;
  std::vector<CRat> components;

  bool is_zero() const;
  friend bool operator==(const TangentVec&, const TangentVec&) = default;
};

TangentVec eval_field(const VField& x, const Point& p);

/// Real and imaginary parts of v expressed in the real coordinate frame
/// (u_z, v_z for every holomorphic z; x for every real x). Both vectors are
/// real-valued sparse vectors keyed by real-coordinate index.
std::pair<SparseVector<std::size_t>, SparseVector<std::size_t>> realify(const TangentVec& v);

/// Dimension over R of span{Re v, Im v : v in vs} in the real frame.
std::size_t real_span_rank(std::span<const TangentVec> vs);

}  // namespace crtype
