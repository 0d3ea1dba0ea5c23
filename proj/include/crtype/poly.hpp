#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "crtype/rational.hpp"
#include "crtype/vartable.hpp"

namespace crtype {

/// Dense exponent vector indexed by the VarTable.
struct Monomial {
  std::vector<std::uint32_t> exps;

  Monomial() = default;
  explicit Monomial(std::size_t n) : exps(n, 0) {}

  std::uint32_t total_degree() const;
  bool is_one() const;
  friend auto operator<=>(const Monomial&, const Monomial&) = default;
  friend bool operator==(const Monomial&, const Monomial&) = default;
};

/// Integer or +infinity.
struct ExtInt {
  bool infinite = false;
  long value = 0;

  static ExtInt inf() { return {true, 0}; }
  static ExtInt of(long v) { return {false, v}; }

  friend bool operator==(const ExtInt&, const ExtInt&) = default;
  friend std::strong_ordering operator<=>(const ExtInt& a, const ExtInt& b) {
    if (a.infinite || b.infinite) return a.infinite <=> b.infinite;
    return a.value <=> b.value;
  }
  friend ExtInt operator+(const ExtInt& a, const ExtInt& b) {
    if (a.infinite || b.infinite) return inf();
    return of(a.value + b.value);
  }
};

std::string to_string(const ExtInt& e);

class Point;

/// Multivariate polynomial with Gaussian-rational coefficients. Paired
/// variables (z, zbar) are independent formal symbols.
class Poly {
 public:
  using TermMap = std::map<Monomial, CRat>;

  explicit Poly(VarTablePtr table);
  static Poly constant(VarTablePtr table, const CRat& c);
  static Poly variable(VarTablePtr table, VarIndex v);
  static Poly variable(VarTablePtr table, std::string_view name);

  const VarTablePtr& table() const { return table_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  CRat constant_term() const;
  std::size_t size() const { return terms_.size(); }
  bool depends_on(VarIndex v) const;

  /// Adds c * m to the polynomial, dropping the term if it cancels.
  void add_term(const Monomial& m, const CRat& c);

  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  Poly& operator*=(const Poly& o);
  Poly& operator*=(const CRat& c);

  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);
  friend Poly operator*(Poly a, const CRat& c) { return a *= c; }
  friend Poly operator*(const CRat& c, Poly a) { return a *= c; }
  friend Poly operator-(Poly a);
  friend bool operator==(const Poly& a, const Poly& b);

 private:
  void require_compatible(const Poly& o) const;

  VarTablePtr table_;
  TermMap terms_;
};

Poly pow(const Poly& f, unsigned n);

/// Formal partial derivative; z and zbar are independent symbols.
Poly partial(const Poly& f, VarIndex v);
Poly partial(const Poly& f, std::string_view name);

/// Conjugates coefficients and swaps paired variables.
Poly conj(const Poly& f);

bool is_real(const Poly& f);

/// Replaces v by g everywhere and expands.
Poly substitute(const Poly& f, VarIndex v, const Poly& g);

/// Simultaneous substitution into a (possibly different) target table.
/// images[v] is the image of variable v; every variable occurring in f
/// must have an image.
Poly compose(const Poly& f, const std::vector<std::optional<Poly>>& images, const VarTablePtr& target);

/// Lowest total degree among the terms of f; infinity for f = 0.
ExtInt min_total_degree(const Poly& f);

/// Terms of total degree <= max_degree (zero if max_degree < 0).
Poly truncate_degree(const Poly& f, long max_degree);

/// Exact assignment of values to variables, conjugation-consistent:
/// the value at zbar is always conj of the value at z.
class Point {
 public:
  explicit Point(VarTablePtr table);
  static Point origin(VarTablePtr table);

  /// Sets v (and its partner, conjugated). Real variables need real values.
  Point& set(VarIndex v, const CRat& value);
  Point& set(std::string_view name, const CRat& value);

  const VarTablePtr& table() const { return table_; }
  const std::optional<CRat>& value(VarIndex v) const { return values_.at(v); }
  bool complete() const;

 private:
  VarTablePtr table_;
  std::vector<std::optional<CRat>> values_;
};

/// f(x + p): recentres f so that p becomes the origin.
Poly translate(const Poly& f, const Point& p);
bool is_origin(const Point& p);

/// Exact evaluation. Throws IncompletePoint if f uses an unassigned
/// variable.
CRat eval(const Poly& f, const Point& p);

/// Weight of a coordinate: positive integer or infinity.
struct Weight {
  bool infinite = false;
  unsigned value = 1;

  static Weight inf() { return {true, 0}; }
  static Weight of(unsigned v) { return {false, v}; }
};

class Weights {
 public:
  /// Unlisted variables get weight 1. Throws InputError if every weight is
  /// infinite or a finite weight is zero.
  Weights(VarTablePtr table, const std::map<std::string, Weight>& by_name);

  const Weight& operator[](VarIndex v) const { return weights_.at(v); }
  const VarTablePtr& table() const { return table_; }

  /// Weighted degree of a monomial; infinite if it contains an
  /// infinite-weight variable.
  ExtInt degree(const Monomial& m) const;

 private:
  VarTablePtr table_;
  std::vector<Weight> weights_;
};

struct WeightedComponents {
  std::map<long, Poly> finite;
  /// Terms containing an infinite-weight variable.
  std::optional<Poly> infinite;
};

WeightedComponents weighted_components(const Poly& f, const Weights& w);
ExtInt weighted_order(const Poly& f, const Weights& w);

}  // namespace crtype
