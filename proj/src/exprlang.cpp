#include "crtype/exprlang.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

namespace crtype {

namespace {

// ---------------------------------------------------------------------------
// Lexer

enum class Tok { Number, Ident, Plus, Minus, Star, Slash, Caret, LParen, RParen, Bar, Tilde, End };

struct Token {
  Tok kind;
  std::string text;
  std::size_t column;
};

std::vector<Token> lex(std::string_view s) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    const char c = s[i];
    const std::size_t col = i + 1;
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
      if (j < s.size() && s[j] == '.')
        throw ParseError(col, "decimal literals are not supported; write rationals as n/d");
      out.push_back({Tok::Number, std::string(s.substr(i, j - i)), col});
      i = j;
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_')) ++j;
      out.push_back({Tok::Ident, std::string(s.substr(i, j - i)), col});
      i = j;
      continue;
    }
    Tok k;
    switch (c) {
      case '+': k = Tok::Plus; break;
      case '-': k = Tok::Minus; break;
      case '*': k = Tok::Star; break;
      case '/': k = Tok::Slash; break;
      case '^': k = Tok::Caret; break;
      case '(': k = Tok::LParen; break;
      case ')': k = Tok::RParen; break;
      case '|': k = Tok::Bar; break;
      case '~': k = Tok::Tilde; break;
      default:
        throw ParseError(col, std::string("unexpected character '") + c + "'");
    }
    out.push_back({k, std::string(1, c), col});
    ++i;
  }
  out.push_back({Tok::End, "", s.size() + 1});
  return out;
}

// ---------------------------------------------------------------------------
// Parser

using ExprPtr = std::unique_ptr<Expr>;

ExprPtr node(Expr::Kind k, std::size_t col) {
  auto e = std::make_unique<Expr>();
  e->kind = k;
  e->column = col;
  return e;
}

ExprPtr binary(Expr::Kind k, ExprPtr a, ExprPtr b) {
  auto e = node(k, a->column);
  e->args.push_back(std::move(a));
  e->args.push_back(std::move(b));
  return e;
}

class Parser {
 public:
  explicit Parser(std::string_view text) : toks_(lex(text)) {}

  ExprPtr parse() {
    if (peek().kind == Tok::End) throw ParseError(1, "empty expression");
    ExprPtr e = expr();
    if (peek().kind != Tok::End) throw ParseError(peek().column, "unexpected '" + peek().text + "'");
    return e;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  const Token& take() { return toks_[pos_++]; }
  bool accept(Tok k) {
    if (peek().kind != k) return false;
    ++pos_;
    return true;
  }
  void expect(Tok k, const char* what) {
    if (!accept(k)) {
      const Token& t = peek();
      throw ParseError(t.column, std::string("expected ") + what +
                                     (t.kind == Tok::End ? " before end of input" : ", found '" + t.text + "'"));
    }
  }

  // expr := term (('+' | '-') term)*
  ExprPtr expr() {
    ExprPtr e = term();
    for (;;) {
      if (accept(Tok::Plus)) {
        e = binary(Expr::Kind::Add, std::move(e), term());
      } else if (accept(Tok::Minus)) {
        e = binary(Expr::Kind::Sub, std::move(e), term());
      } else {
        return e;
      }
    }
  }

  // term := unary (('*' | '/') unary)*
  ExprPtr term() {
    ExprPtr e = unary();
    for (;;) {
      if (accept(Tok::Star)) {
        e = binary(Expr::Kind::Mul, std::move(e), unary());
      } else if (peek().kind == Tok::Slash) {
        const std::size_t col = take().column;
        auto d = binary(Expr::Kind::Div, std::move(e), unary());
        d->column = col;
        e = std::move(d);
      } else {
        return e;
      }
    }
  }

  // unary := ('-' | '+') unary | power
  ExprPtr unary() {
    if (peek().kind == Tok::Minus) {
      auto e = node(Expr::Kind::Neg, take().column);
      e->args.push_back(unary());
      return e;
    }
    if (accept(Tok::Plus)) return unary();
    return power();
  }

  // power := postfix ('^' INT)?
  ExprPtr power() {
    ExprPtr base = postfix();
    if (peek().kind != Tok::Caret) return base;
    const std::size_t caret = take().column;
    const Token& t = peek();
    if (t.kind == Tok::Minus) throw ParseError(t.column, "negative exponent");
    if (t.kind != Tok::Number) throw ParseError(t.column, "exponent must be a non-negative integer literal");
    take();
    if (t.text.size() > 6) throw ParseError(t.column, "exponent too large");
    auto e = node(Expr::Kind::Pow, base->column);
    e->exponent = static_cast<unsigned>(std::stoul(t.text));
    e->args.push_back(std::move(base));
    if (peek().kind == Tok::Caret) throw ParseError(peek().column, "chained exponents need parentheses");
    (void)caret;
    return e;
  }

  // postfix := primary '~'*
  ExprPtr postfix() {
    ExprPtr e = primary();
    while (peek().kind == Tok::Tilde) {
      auto c = node(Expr::Kind::Conj, take().column);
      c->args.push_back(std::move(e));
      e = std::move(c);
    }
    return e;
  }

  ExprPtr primary() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::Number: {
        take();
        auto e = node(Expr::Kind::Number, t.column);
        e->text = t.text;
        return e;
      }
      case Tok::Ident: {
        take();
        if (peek().kind == Tok::LParen) {
          Expr::Kind k;
          if (t.text == "conj") {
            k = Expr::Kind::Conj;
          } else if (t.text == "Re") {
            k = Expr::Kind::Re;
          } else if (t.text == "Im") {
            k = Expr::Kind::Im;
          } else {
            throw ParseError(t.column, "unknown function '" + t.text + "'");
          }
          take();
          auto e = node(k, t.column);
          e->args.push_back(expr());
          expect(Tok::RParen, "')'");
          return e;
        }
        if (t.text == "i") return node(Expr::Kind::ImagUnit, t.column);
        auto e = node(Expr::Kind::Var, t.column);
        e->text = t.text;
        return e;
      }
      case Tok::LParen: {
        take();
        ExprPtr e = expr();
        expect(Tok::RParen, "')'");
        return e;
      }
      case Tok::Bar: {
        take();
        auto e = node(Expr::Kind::Abs, t.column);
        e->args.push_back(expr());
        expect(Tok::Bar, "closing '|'");
        return e;
      }
      case Tok::End:
        throw ParseError(t.column, "unexpected end of input");
      default:
        throw ParseError(t.column, "unexpected '" + t.text + "'");
    }
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

}  // namespace

std::unique_ptr<Expr> parse_expr(std::string_view text) { return Parser(text).parse(); }

Poly lower(const Expr& e, const VarTablePtr& table) {
  auto sub = [&](std::size_t i) { return lower(*e.args.at(i), table); };
  switch (e.kind) {
    case Expr::Kind::Number:
      return Poly::constant(table, CRat(parse_rat(e.text)));
    case Expr::Kind::ImagUnit:
      return Poly::constant(table, CRat::imag_unit());
    case Expr::Kind::Var: {
      auto v = table->find(e.text);
      if (!v) throw ParseError(e.column, "unknown variable '" + e.text + "'");
      return Poly::variable(table, *v);
    }
    case Expr::Kind::Neg:
      return -sub(0);
    case Expr::Kind::Add:
      return sub(0) + sub(1);
    case Expr::Kind::Sub:
      return sub(0) - sub(1);
    case Expr::Kind::Mul:
      return sub(0) * sub(1);
    case Expr::Kind::Div: {
      Poly d = sub(1);
      if (!d.is_constant()) throw ParseError(e.column, "division only by constants");
      if (d.is_zero()) throw ParseError(e.column, "division by zero");
      CRat inv = CRat(1) / d.constant_term();
      return sub(0) * inv;
    }
    case Expr::Kind::Pow: {
      const Expr& base = *e.args.at(0);
      if (base.kind == Expr::Kind::Abs) {
        if (e.exponent % 2 != 0) throw ParseError(e.column, "|e| must be raised to an even power");
        Poly inner = lower(*base.args.at(0), table);
        return pow(inner * conj(inner), e.exponent / 2);
      }
      return pow(sub(0), e.exponent);
    }
    case Expr::Kind::Conj:
      return conj(sub(0));
    case Expr::Kind::Re: {
      Poly a = sub(0);
      return (a + conj(a)) * CRat(Rat(1, 2));
    }
    case Expr::Kind::Im: {
      Poly a = sub(0);
      // (a - conj a) / (2i) = -(i/2) (a - conj a)
      return (a - conj(a)) * CRat(Rat(0), Rat(-1, 2));
    }
    case Expr::Kind::Abs:
      throw ParseError(e.column, "|e| must be raised to an even power");
  }
  throw InvariantError("unhandled expression kind");
}

Poly parse_poly(std::string_view text, const VarTablePtr& table) { return lower(*parse_expr(text), table); }

VField parse_field(const std::map<std::string, std::string>& components, const VarTablePtr& table,
                   bool require_type_1_0) {
  VField x(table);
  for (const auto& [name, text] : components) {
    auto v = table->find(name);
    if (!v) throw VariableNotFound(name);
    try {
      x.set_coeff(*v, parse_poly(text, table));
    } catch (const ParseError& err) {
      throw ParseError(err.column(), "component " + name + ": " + err.detail());
    }
  }
  if (require_type_1_0 && !is_type_1_0(x)) throw InputError("field must be of type (1,0)");
  return x;
}

// ---------------------------------------------------------------------------
// Printer

namespace {

bool negative(const CRat& c) { return (sgn(c.im) == 0 && sgn(c.re) < 0) || (sgn(c.re) == 0 && sgn(c.im) < 0); }

std::string monomial_text(const Monomial& m, const VarTable& t) {
  std::string s;
  for (VarIndex v = 0; v < m.exps.size(); ++v) {
    if (m.exps[v] == 0) continue;
    if (!s.empty()) s += "*";
    s += t.display(v);
    if (m.exps[v] > 1) s += "^" + std::to_string(m.exps[v]);
  }
  return s;
}

}  // namespace

std::string to_text(const Poly& f) {
  if (f.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [m, c0] : f.terms()) {
    CRat c = c0;
    if (first) {
      if (negative(c)) {
        out += "-";
        c = -c;
      }
    } else if (negative(c)) {
      out += " - ";
      c = -c;
    } else {
      out += " + ";
    }
    first = false;
    const std::string mono = monomial_text(m, *f.table());
    if (mono.empty()) {
      out += to_string(c);
    } else if (c == CRat(1)) {
      out += mono;
    } else {
      out += to_string(c) + "*" + mono;
    }
  }
  return out;
}

std::map<std::string, std::string> to_components(const VField& x) {
  std::map<std::string, std::string> out;
  for (VarIndex v = 0; v < x.table()->size(); ++v)
    if (!x.coeff(v).is_zero()) out.emplace(x.table()->name(v), to_text(x.coeff(v)));
  return out;
}

// ---------------------------------------------------------------------------
// Job files

namespace {

using Json = nlohmann::ordered_json;

[[noreturn]] void bad(const std::string& path, const std::string& msg) { throw InputError(path + ": " + msg); }

const Json& require(const Json& obj, const char* key, const std::string& path) {
  if (!obj.is_object() || !obj.contains(key)) bad(path, std::string("missing required key '") + key + "'");
  return obj.at(key);
}

std::string string_at(const Json& j, const std::string& path) {
  if (!j.is_string()) bad(path, "expected a string");
  return j.get<std::string>();
}

std::vector<std::string> strings_at(const Json& j, const std::string& path) {
  if (!j.is_array()) bad(path, "expected an array of strings");
  std::vector<std::string> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(string_at(j[i], path + "[" + std::to_string(i) + "]"));
  return out;
}

Poly poly_at(const Json& j, const VarTablePtr& t, const std::string& path) {
  std::string text = j.is_number_integer() ? std::to_string(j.get<long long>()) : string_at(j, path);
  try {
    return parse_poly(text, t);
  } catch (const ParseError& e) {
    bad(path, e.what());
  }
}

VField field_at(const Json& j, const VarTablePtr& t, const std::string& path) {
  if (!j.is_object()) bad(path, "expected an object mapping variable names to expressions");
  VField x(t);
  for (const auto& [name, val] : j.items()) {
    auto v = t->find(name);
    if (!v) bad(path + "." + name, "unknown variable '" + name + "'");
    x.set_coeff(*v, poly_at(val, t, path + "." + name));
  }
  return x;
}

bool f_contains(const JobFile& job, const std::string& name) {
  for (const auto& f : job.fields)
    if (f.first == name) return true;
  return false;
}

}  // namespace

VarTablePtr parse_variables(const Json& vars) {
  VarTable::Builder b;
  if (!vars.is_object()) bad("variables", "expected an object");
  for (const auto& [key, val] : vars.items())
    if (key != "holomorphic" && key != "real") bad("variables." + key, "unknown key");
  if (vars.contains("holomorphic"))
    for (const auto& n : strings_at(vars.at("holomorphic"), "variables.holomorphic")) b.holomorphic(n);
  if (vars.contains("real"))
    for (const auto& n : strings_at(vars.at("real"), "variables.real")) b.real(n);
  return b.build();
}

Point parse_point(const Json& values, const VarTablePtr& table) {
  Point p = Point::origin(table);
  if (values.is_null()) return p;
  if (!values.is_object()) bad("point", "expected an object");
  for (const auto& [name, val] : values.items()) {
    auto v = table->find(name);
    if (!v) bad("point." + name, "unknown variable '" + name + "'");
    if (table->kind(*v) == VarKind::Antiholomorphic) bad("point." + name, "set the holomorphic partner instead");
    Poly c = poly_at(val, table, "point." + name);
    if (!c.is_constant()) bad("point." + name, "value must be a constant");
    try {
      p.set(*v, c.constant_term());
    } catch (const InputError& e) {
      bad("point." + name, e.what());
    }
  }
  return p;
}

const VField& JobFile::field(const std::string& name) const {
  for (const auto& [n, f] : fields)
    if (n == name) return f;
  throw InputError("unknown field '" + name + "'");
}

const CurveSpec& JobFile::curve(const std::string& name) const {
  for (const auto& c : curves)
    if (c.name == name) return c;
  throw InputError("unknown curve '" + name + "'");
}

JobFile parse_job(const Json& doc) {
  if (!doc.is_object()) bad("job", "expected a JSON object");
  const std::string schema = string_at(require(doc, "schema", "job"), "schema");
  if (schema != job_schema) bad("schema", "unsupported schema '" + schema + "', expected '" + job_schema + "'");
  static const char* known[] = {"schema", "variables", "point", "hypersurface", "fields", "frame", "system",
                                "curves", "tasks", "description"};
  for (const auto& [key, val] : doc.items())
    if (std::find(std::begin(known), std::end(known), key) == std::end(known)) bad(key, "unknown key");

  VarTablePtr table = parse_variables(require(doc, "variables", "job"));
  JobFile job{table, parse_point(doc.value("point", Json()), table), std::nullopt, {}, {}, std::nullopt, {}, {},
              std::nullopt};

  if (doc.contains("hypersurface")) {
    const Json& h = doc.at("hypersurface");
    job.rho_text = string_at(require(h, "rho", "hypersurface"), "hypersurface.rho");
    Poly rho = poly_at(h.at("rho"), table, "hypersurface.rho");
    std::optional<RigidGraph> rigid;
    if (h.contains("rigid")) {
      const Json& r = h.at("rigid");
      auto w = table->find(string_at(require(r, "w", "hypersurface.rigid"), "hypersurface.rigid.w"));
      if (!w || table->kind(*w) != VarKind::Holomorphic) bad("hypersurface.rigid.w", "not a holomorphic variable");
      const Json& sign = require(r, "sign", "hypersurface.rigid");
      if (!sign.is_number_integer()) bad("hypersurface.rigid.sign", "expected +1 or -1");
      rigid = RigidGraph{*w, sign.get<int>(), poly_at(require(r, "psi", "hypersurface.rigid"), table,
                                                      "hypersurface.rigid.psi")};
    }
    try {
      job.hypersurface = Hypersurface::make(std::move(rho), job.point, std::move(rigid));
    } catch (const InputError& e) {
      bad("hypersurface", e.what());
    }
  }

  if (doc.contains("fields")) {
    const Json& f = doc.at("fields");
    if (!f.is_object()) bad("fields", "expected an object");
    for (const auto& [name, val] : f.items()) job.fields.emplace_back(name, field_at(val, table, "fields." + name));
  }
  if (doc.contains("frame")) {
    job.frame = strings_at(doc.at("frame"), "frame");
    for (const auto& n : job.frame)
      if (!f_contains(job, n)) bad("frame", "unknown field '" + n + "'");
  }
  if (doc.contains("system")) {
    const Json& s = doc.at("system");
    SystemSpec spec;
    spec.mode = string_at(require(s, "mode", "system"), "system.mode");
    if (spec.mode != "real" && spec.mode != "cr") bad("system.mode", "expected 'real' or 'cr'");
    spec.generators = strings_at(require(s, "generators", "system"), "system.generators");
    for (const auto& n : spec.generators)
      if (!f_contains(job, n)) bad("system.generators", "unknown field '" + n + "'");
    if (s.contains("weights")) {
      std::map<std::string, Weight> w;
      for (const auto& [name, val] : s.at("weights").items()) {
        if (val.is_string() && (val.get<std::string>() == "inf" || val.get<std::string>() == "infinity")) {
          w[name] = Weight::inf();
        } else if (val.is_number_unsigned() && val.get<unsigned>() > 0) {
          w[name] = Weight::of(val.get<unsigned>());
        } else {
          bad("system.weights." + name, "expected a positive integer or \"inf\"");
        }
        if (!table->find(name)) bad("system.weights." + name, "unknown variable '" + name + "'");
      }
      spec.weights = Weights(table, w);
    }
    job.system = std::move(spec);
  }
  if (doc.contains("curves")) {
    const Json& cs = doc.at("curves");
    if (!cs.is_array()) bad("curves", "expected an array");
    for (std::size_t i = 0; i < cs.size(); ++i) {
      const std::string path = "curves[" + std::to_string(i) + "]";
      CurveSpec c;
      c.name = string_at(require(cs[i], "name", path), path + ".name");
      VarTable::Builder pb;
      for (const auto& n : strings_at(require(cs[i], "params", path), path + ".params")) pb.holomorphic(n);
      c.params = pb.build();
      const Json& map = require(cs[i], "map", path);
      if (!map.is_object()) bad(path + ".map", "expected an object");
      for (const auto& [key, val] : map.items()) {
        auto v = table->find(key);
        if (!v || table->kind(*v) != VarKind::Holomorphic) bad(path + ".map." + key, "not a holomorphic variable");
      }
      for (VarIndex z : table->holomorphic()) {
        const std::string& n = table->name(z);
        c.map.push_back(map.contains(n) ? poly_at(map.at(n), c.params, path + ".map." + n) : Poly(c.params));
      }
      job.curves.push_back(std::move(c));
    }
  }
  if (doc.contains("tasks")) {
    const Json& ts = doc.at("tasks");
    if (!ts.is_array()) bad("tasks", "expected an array");
    for (std::size_t i = 0; i < ts.size(); ++i) {
      const std::string path = "tasks[" + std::to_string(i) + "]";
      TaskSpec t{string_at(require(ts[i], "type", path), path + ".type"), ts[i]};
      job.tasks.push_back(std::move(t));
    }
  }
  return job;
}

JobFile load_job(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read job file '" + path + "'");
  Json doc;
  try {
    doc = Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(path + ": " + e.what());
  }
  try {
    return parse_job(doc);
  } catch (const InputError& e) {
    throw InputError(path + ": " + e.what());
  }
}

}  // namespace crtype
