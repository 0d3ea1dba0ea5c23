#include "crtype/rational.hpp"

#include <cctype>
#include <stdexcept>

#include "crtype/error.hpp"

namespace crtype {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

}  // namespace

Rat parse_rat(std::string_view text) {
  std::string_view body = text;
  bool negative = false;
  if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }
  auto slash = body.find('/');
  std::string_view num = body.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view("1") : body.substr(slash + 1);
  if (!all_digits(num) || !all_digits(den))
    throw InputError("malformed rational literal '" + std::string(text) + "'");
  mpz_class n(std::string(num), 10);
  mpz_class d(std::string(den), 10);
  if (d == 0) throw InputError("zero denominator in '" + std::string(text) + "'");
  Rat q(n, d);
  q.canonicalize();
  if (negative) q = -q;
  return q;
}

std::string to_string(const Rat& q) { return q.get_str(10); }

CRat& CRat::operator*=(const CRat& o) {
  Rat r = re * o.re - im * o.im;
  Rat i = re * o.im + im * o.re;
  re = std::move(r);
  im = std::move(i);
  return *this;
}

CRat& CRat::operator/=(const CRat& o) {
  Rat d = o.norm();
  if (sgn(d) == 0) throw std::domain_error("division by zero Gaussian rational");
  Rat r = (re * o.re + im * o.im) / d;
  Rat i = (im * o.re - re * o.im) / d;
  re = std::move(r);
  im = std::move(i);
  return *this;
}

std::string to_string(const CRat& c) {
  if (c.is_real()) return to_string(c.re);
  if (sgn(c.re) == 0) {
    if (c.im == 1) return "i";
    if (c.im == -1) return "-i";
    return to_string(c.im) + "*i";
  }
  std::string s = "(" + to_string(c.re);
  Rat mag = abs(c.im);
  s += sgn(c.im) < 0 ? " - " : " + ";
  if (mag != 1) s += to_string(mag) + "*";
  return s + "i)";
}

}  // namespace crtype
