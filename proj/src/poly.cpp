#include "crtype/poly.hpp"

#include <algorithm>

#include "crtype/error.hpp"

namespace crtype {

std::uint32_t Monomial::total_degree() const {
  std::uint32_t d = 0;
  for (auto e : exps) d += e;
  return d;
}

bool Monomial::is_one() const {
  return std::all_of(exps.begin(), exps.end(), [](auto e) { return e == 0; });
}

std::string to_string(const ExtInt& e) { return e.infinite ? "inf" : std::to_string(e.value); }

// ---------------------------------------------------------------------------

Poly::Poly(VarTablePtr table) : table_(std::move(table)) {
  if (!table_) throw InputError("polynomial needs a variable table");
}

Poly Poly::constant(VarTablePtr table, const CRat& c) {
  Poly p(std::move(table));
  p.add_term(Monomial(p.table_->size()), c);
  return p;
}

Poly Poly::variable(VarTablePtr table, VarIndex v) {
  Poly p(std::move(table));
  Monomial m(p.table_->size());
  m.exps.at(v) = 1;
  p.add_term(m, CRat(1));
  return p;
}

Poly Poly::variable(VarTablePtr table, std::string_view name) {
  VarIndex v = table->index(name);
  return variable(std::move(table), v);
}

bool Poly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_one());
}

CRat Poly::constant_term() const {
  auto it = terms_.find(Monomial(table_->size()));
  return it == terms_.end() ? CRat() : it->second;
}

bool Poly::depends_on(VarIndex v) const {
  for (const auto& [m, c] : terms_)
    if (m.exps[v] != 0) return true;
  return false;
}

void Poly::add_term(const Monomial& m, const CRat& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

void Poly::require_compatible(const Poly& o) const {
  if (!compatible(table_, o.table_)) throw TableMismatch();
}

Poly& Poly::operator+=(const Poly& o) {
  require_compatible(o);
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  require_compatible(o);
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
  a.require_compatible(b);
  Poly out(a.table_);
  Monomial m(a.table_->size());
  for (const auto& [ma, ca] : a.terms_) {
    for (const auto& [mb, cb] : b.terms_) {
      for (std::size_t k = 0; k < m.exps.size(); ++k) m.exps[k] = ma.exps[k] + mb.exps[k];
      out.add_term(m, ca * cb);
    }
  }
  return out;
}

Poly& Poly::operator*=(const Poly& o) { return *this = *this * o; }

Poly& Poly::operator*=(const CRat& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, coeff] : terms_) coeff *= c;
  return *this;
}

Poly operator-(Poly a) {
  for (auto& [m, c] : a.terms_) c = -c;
  return a;
}

bool operator==(const Poly& a, const Poly& b) {
  return compatible(a.table_, b.table_) && a.terms_ == b.terms_;
}

Poly pow(const Poly& f, unsigned n) {
  Poly result = Poly::constant(f.table(), CRat(1));
  Poly base = f;
  while (n > 0) {
    if (n & 1U) result *= base;
    n >>= 1U;
    if (n > 0) base *= base;
  }
  return result;
}

Poly partial(const Poly& f, VarIndex v) {
  if (v >= f.table()->size()) throw InputError("variable index out of range");
  Poly out(f.table());
  for (const auto& [m, c] : f.terms()) {
    auto e = m.exps[v];
    if (e == 0) continue;
    Monomial d = m;
    d.exps[v] = e - 1;
    out.add_term(d, c * CRat(static_cast<long>(e)));
  }
  return out;
}

Poly partial(const Poly& f, std::string_view name) { return partial(f, f.table()->index(name)); }

Poly conj(const Poly& f) {
  const auto& t = *f.table();
  Poly out(f.table());
  Monomial swapped(t.size());
  for (const auto& [m, c] : f.terms()) {
    for (VarIndex v = 0; v < t.size(); ++v) swapped.exps[t.partner(v)] = m.exps[v];
    out.add_term(swapped, c.conj());
  }
  return out;
}

bool is_real(const Poly& f) { return conj(f) == f; }

Poly substitute(const Poly& f, VarIndex v, const Poly& g) {
  if (!compatible(f.table(), g.table())) throw TableMismatch();
  if (v >= f.table()->size()) throw InputError("variable index out of range");
  // f = sum_k f_k v^k
  std::map<std::uint32_t, Poly> by_power;
  for (const auto& [m, c] : f.terms()) {
    Monomial rest = m;
    rest.exps[v] = 0;
    auto [it, _] = by_power.try_emplace(m.exps[v], f.table());
    it->second.add_term(rest, c);
  }
  Poly out(f.table());
  Poly gk = Poly::constant(f.table(), CRat(1));
  std::uint32_t k = 0;
  for (const auto& [power, part] : by_power) {
    while (k < power) {
      gk *= g;
      ++k;
    }
    out += part * gk;
  }
  return out;
}

Poly compose(const Poly& f, const std::vector<std::optional<Poly>>& images, const VarTablePtr& target) {
  const auto n = f.table()->size();
  if (images.size() != n) throw InputError("compose: image list does not match the table");
  for (const auto& img : images)
    if (img && !compatible(img->table(), target)) throw TableMismatch();
  std::map<std::pair<VarIndex, std::uint32_t>, Poly> powers;
  auto power_of = [&](VarIndex v, std::uint32_t e) -> const Poly& {
    if (!images[v]) throw InputError("compose: no image for variable '" + f.table()->name(v) + "'");
    for (std::uint32_t k = 1; k <= e; ++k) {
      auto key = std::make_pair(v, k);
      if (powers.count(key)) continue;
      Poly p = k == 1 ? *images[v] : powers.at({v, k - 1}) * *images[v];
      powers.emplace(key, std::move(p));
    }
    return powers.at({v, e});
  };
  Poly out(target);
  for (const auto& [m, c] : f.terms()) {
    Poly term = Poly::constant(target, c);
    for (VarIndex v = 0; v < n; ++v)
      if (m.exps[v] > 0) term *= power_of(v, m.exps[v]);
    out += term;
  }
  return out;
}

ExtInt min_total_degree(const Poly& f) {
  ExtInt best = ExtInt::inf();
  for (const auto& [m, c] : f.terms()) best = std::min(best, ExtInt::of(m.total_degree()));
  return best;
}

// ---------------------------------------------------------------------------

Point::Point(VarTablePtr table) : table_(std::move(table)), values_(table_->size()) {}

Point Point::origin(VarTablePtr table) {
  Point p(std::move(table));
  for (auto& v : p.values_) v = CRat();
  return p;
}

Point& Point::set(VarIndex v, const CRat& value) {
  switch (table_->kind(v)) {
    case VarKind::Real:
      if (!value.is_real())
        throw InputError("real variable '" + table_->name(v) + "' needs a real value");
      values_.at(v) = value;
      break;
    case VarKind::Holomorphic:
    case VarKind::Antiholomorphic:
      values_.at(v) = value;
      values_.at(table_->partner(v)) = value.conj();
      break;
  }
  return *this;
}

Point& Point::set(std::string_view name, const CRat& value) { return set(table_->index(name), value); }

bool Point::complete() const {
  return std::all_of(values_.begin(), values_.end(), [](const auto& v) { return v.has_value(); });
}

CRat eval(const Poly& f, const Point& p) {
  if (!compatible(f.table(), p.table())) throw TableMismatch();
  CRat sum;
  for (const auto& [m, c] : f.terms()) {
    CRat term = c;
    for (VarIndex v = 0; v < m.exps.size(); ++v) {
      if (m.exps[v] == 0) continue;
      const auto& val = p.value(v);
      if (!val) throw IncompletePoint(f.table()->name(v));
      for (std::uint32_t k = 0; k < m.exps[v]; ++k) term *= *val;
    }
    sum += term;
  }
  return sum;
}

// ---------------------------------------------------------------------------

Weights::Weights(VarTablePtr table, const std::map<std::string, Weight>& by_name)
    : table_(std::move(table)), weights_(table_->size(), Weight::of(1)) {
  for (const auto& [name, w] : by_name) {
    if (!w.infinite && w.value == 0) throw InputError("weight of '" + name + "' must be positive");
    weights_[table_->index(name)] = w;
  }
  if (std::all_of(weights_.begin(), weights_.end(), [](const Weight& w) { return w.infinite; }))
    throw InputError("at least one weight must be finite");
}

ExtInt Weights::degree(const Monomial& m) const {
  long d = 0;
  for (VarIndex v = 0; v < m.exps.size(); ++v) {
    if (m.exps[v] == 0) continue;
    if (weights_[v].infinite) return ExtInt::inf();
    d += static_cast<long>(m.exps[v]) * weights_[v].value;
  }
  return ExtInt::of(d);
}

WeightedComponents weighted_components(const Poly& f, const Weights& w) {
  if (!compatible(f.table(), w.table())) throw TableMismatch();
  WeightedComponents out;
  for (const auto& [m, c] : f.terms()) {
    ExtInt d = w.degree(m);
    if (d.infinite) {
      if (!out.infinite) out.infinite.emplace(f.table());
      out.infinite->add_term(m, c);
    } else {
      out.finite.try_emplace(d.value, f.table()).first->second.add_term(m, c);
    }
  }
  return out;
}

ExtInt weighted_order(const Poly& f, const Weights& w) {
  if (!compatible(f.table(), w.table())) throw TableMismatch();
  ExtInt best = ExtInt::inf();
  for (const auto& [m, c] : f.terms()) best = std::min(best, w.degree(m));
  return best;
}

}  // namespace crtype

namespace crtype {

Poly truncate_degree(const Poly& f, long max_degree) {
  Poly out(f.table());
  for (const auto& [m, c] : f.terms())
    if (static_cast<long>(m.total_degree()) <= max_degree) out.add_term(m, c);
  return out;
}

bool is_origin(const Point& p) {
  for (VarIndex v = 0; v < p.table()->size(); ++v)
    if (!p.value(v) || !p.value(v)->is_zero()) return false;
  return true;
}

Poly translate(const Poly& f, const Point& p) {
  if (!compatible(f.table(), p.table())) throw TableMismatch();
  const auto& t = f.table();
  std::vector<std::optional<Poly>> images(t->size());
  for (VarIndex v = 0; v < t->size(); ++v) {
    if (!p.value(v)) throw IncompletePoint(t->name(v));
    images[v] = Poly::variable(t, v) + Poly::constant(t, *p.value(v));
  }
  return compose(f, images, t);
}

}  // namespace crtype
