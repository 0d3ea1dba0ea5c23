#include "crtype/vfield.hpp"

#include <algorithm>

#include "crtype/error.hpp"

namespace crtype {

VField::VField(VarTablePtr table) : table_(std::move(table)) {
  if (!table_) throw InputError("vector field needs a variable table");
  coeffs_.assign(table_->size(), Poly(table_));
}

VField VField::coordinate(VarTablePtr table, VarIndex v) {
  VField x(table);
  x.set_coeff(v, Poly::constant(table, CRat(1)));
  return x;
}

void VField::set_coeff(VarIndex v, Poly p) {
  if (!compatible(table_, p.table())) throw TableMismatch();
  coeffs_.at(v) = std::move(p);
}

bool VField::is_zero() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Poly& p) { return p.is_zero(); });
}

VField& VField::operator+=(const VField& o) {
  if (!compatible(table_, o.table_)) throw TableMismatch();
  for (VarIndex v = 0; v < coeffs_.size(); ++v) coeffs_[v] += o.coeffs_[v];
  return *this;
}

VField& VField::operator-=(const VField& o) {
  if (!compatible(table_, o.table_)) throw TableMismatch();
  for (VarIndex v = 0; v < coeffs_.size(); ++v) coeffs_[v] -= o.coeffs_[v];
  return *this;
}

VField operator-(VField a) {
  for (auto& c : a.coeffs_) c = -c;
  return a;
}

VField operator*(const CRat& c, VField a) {
  for (auto& p : a.coeffs_) p *= c;
  return a;
}

VField operator*(const Poly& g, const VField& x) {
  if (!compatible(g.table(), x.table_)) throw TableMismatch();
  VField out(x.table_);
  for (VarIndex v = 0; v < x.coeffs_.size(); ++v)
    if (!x.coeffs_[v].is_zero()) out.coeffs_[v] = g * x.coeffs_[v];
  return out;
}

bool operator==(const VField& a, const VField& b) {
  return compatible(a.table_, b.table_) && a.coeffs_ == b.coeffs_;
}

Poly apply(const VField& x, const Poly& f) {
  if (!compatible(x.table(), f.table())) throw TableMismatch();
  Poly out(f.table());
  for (VarIndex v = 0; v < x.table()->size(); ++v) {
    const Poly& c = x.coeff(v);
    if (c.is_zero() || !f.depends_on(v)) continue;
    out += c * partial(f, v);
  }
  return out;
}

VField bracket(const VField& x, const VField& y) {
  if (!compatible(x.table(), y.table())) throw TableMismatch();
  VField out(x.table());
  for (VarIndex v = 0; v < x.table()->size(); ++v) {
    Poly c = apply(x, y.coeff(v));
    c -= apply(y, x.coeff(v));
    out.set_coeff(v, std::move(c));
  }
  return out;
}

VField conj_field(const VField& x) {
  VField out(x.table());
  for (VarIndex v = 0; v < x.table()->size(); ++v) out.set_coeff(v, conj(x.coeff(x.table()->partner(v))));
  return out;
}

bool is_type_1_0(const VField& x) {
  for (VarIndex v = 0; v < x.table()->size(); ++v)
    if (!x.coeff(v).is_zero() && x.table()->kind(v) != VarKind::Holomorphic) return false;
  return true;
}

SparseVector<FieldKey> flatten(const VField& x) {
  SparseVector<FieldKey> out;
  for (VarIndex v = 0; v < x.table()->size(); ++v)
    for (const auto& [m, c] : x.coeff(v).terms()) out.emplace(FieldKey{v, m}, c);
  return out;
}

SparseVector<Monomial> flatten(const Poly& f) { return {f.terms().begin(), f.terms().end()}; }

bool TangentVec::is_zero() const {
  return std::all_of(components.begin(), components.end(), [](const CRat& c) { return c.is_zero(); });
}

TangentVec eval_field(const VField& x, const Point& p) {
  TangentVec out{x.table(), {}};
  out.components.reserve(x.table()->size());
  for (VarIndex v = 0; v < x.table()->size(); ++v) out.components.push_back(eval(x.coeff(v), p));
  return out;
}

std::pair<SparseVector<std::size_t>, SparseVector<std::size_t>> realify(const TangentVec& vec) {
  // a d/dz + b d/dzbar = (a+b)/2 d/du + i(b-a)/2 d/dv; the factor 1/2 is
  // dropped since only spans matter.
  const auto& t = *vec.table;
  SparseVector<std::size_t> re, im;
  auto put = [&](std::size_t key, const CRat& c) {
    if (sgn(c.re) != 0) re.emplace(key, CRat(c.re));
    if (sgn(c.im) != 0) im.emplace(key, CRat(c.im));
  };
  for (VarIndex v = 0; v < t.size(); ++v) {
    switch (t.kind(v)) {
      case VarKind::Real:
        put(2 * v, vec.components[v]);
        break;
      case VarKind::Holomorphic: {
        const CRat& a = vec.components[v];
        const CRat& b = vec.components[t.partner(v)];
        put(2 * v, a + b);
        put(2 * v + 1, CRat::imag_unit() * (b - a));
        break;
      }
      case VarKind::Antiholomorphic:
        break;
    }
  }
  return {std::move(re), std::move(im)};
}

std::size_t real_span_rank(std::span<const TangentVec> vs) {
  LinearSpan<std::size_t> span;
  for (const auto& v : vs) {
    auto [re, im] = realify(v);
    span.insert(re);
    span.insert(im);
  }
  return span.rank();
}

}  // namespace crtype

namespace crtype {

VField truncate_degree(const VField& x, long max_degree) {
  VField out(x.table());
  for (VarIndex v = 0; v < x.table()->size(); ++v) out.set_coeff(v, truncate_degree(x.coeff(v), max_degree));
  return out;
}

VField translate(const VField& x, const Point& p) {
  VField out(x.table());
  for (VarIndex v = 0; v < x.table()->size(); ++v)
    if (!x.coeff(v).is_zero()) out.set_coeff(v, translate(x.coeff(v), p));
  return out;
}

}  // namespace crtype
