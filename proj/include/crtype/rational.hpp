#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace crtype {

/// Arbitrary-precision rational, always kept in lowest terms by GMP.
using Rat = mpq_class;

/// Parses "n" or "n/d" (optional leading '-'). Throws InputError.
Rat parse_rat(std::string_view text);
std::string to_string(const Rat& q);

/// Gaussian rational re + i*im.
struct CRat {
  Rat re;
  Rat im;

  CRat() = default;
  CRat(long v) : re(v) {}  // NOLINT(google-explicit-constructor)
  CRat(Rat r) : re(std::move(r)) {}  // NOLINT(google-explicit-constructor)
  CRat(Rat r, Rat i) : re(std::move(r)), im(std::move(i)) {}

  static CRat imag_unit() { return CRat(Rat(0), Rat(1)); }

  bool is_zero() const { return sgn(re) == 0 && sgn(im) == 0; }
  bool is_real() const { return sgn(im) == 0; }
  CRat conj() const { return CRat(re, Rat(-im)); }
  /// |c|^2 as an exact rational.
  Rat norm() const { return Rat(re * re + im * im); }

  CRat& operator+=(const CRat& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  CRat& operator-=(const CRat& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  CRat& operator*=(const CRat& o);
  CRat& operator/=(const CRat& o);

  friend CRat operator+(CRat a, const CRat& b) { return a += b; }
  friend CRat operator-(CRat a, const CRat& b) { return a -= b; }
  friend CRat operator*(CRat a, const CRat& b) { return a *= b; }
  friend CRat operator/(CRat a, const CRat& b) { return a /= b; }
  friend CRat operator-(const CRat& a) { return CRat(Rat(-a.re), Rat(-a.im)); }
  friend bool operator==(const CRat& a, const CRat& b) {
    return a.re == b.re && a.im == b.im;
  }
};

/// Parseable text: "3/4", "-2*i", "(1/2 + 3*i)".
std::string to_string(const CRat& c);

}  // namespace crtype
