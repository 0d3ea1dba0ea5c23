#include "../oracles/oracles.hpp"
#include "helpers.hpp"

using namespace testing;

TEST_CASE("rationals are exact and canonical") {
  CHECK(parse_rat("2/4") == Rat(1, 2));
  CHECK(to_string(parse_rat("-6/4")) == "-3/2");
  CHECK_THROWS_AS(parse_rat("1/0"), InputError);
  CRat i = CRat::imag_unit();
  CHECK(i * i == CRat(-1));
  CHECK((CRat(1) / i) == -i);
  CHECK(CRat(Rat(1), Rat(2)).conj() == CRat(Rat(1), Rat(-2)));
  CHECK(CRat(Rat(3), Rat(4)).norm() == 25);
}

TEST_CASE("polynomial arithmetic and calculus") {
  auto t = c3();
  Poly z1 = Poly::variable(t, "z1"), z1b = Poly::variable(t, "z1bar");
  CHECK(P("|z1|^2", t) == z1 * z1b);
  CHECK(partial(z1 * z1b, "z1") == z1b);
  CHECK(partial(z1 * z1b, "z1bar") == z1);
  CHECK(partial(P("z2^3*conj(w)", t), "z2") == P("3*z2^2*conj(w)", t));
  CHECK(conj(P("i*z1", t)) == P("-i*conj(z1)", t));
  CHECK(is_real(P("|z1|^2 + z2 + conj(z2)", t)));
  CHECK_FALSE(is_real(P("i*z1", t)));
  CHECK(substitute(P("z1^2", t), t->index("z1"), P("z2 + 1", t)) == P("z2^2 + 2*z2 + 1", t));
  CHECK(pow(P("z1 + 1", t), 3) == P("z1^3 + 3*z1^2 + 3*z1 + 1", t));
  CHECK((P("z1", t) - P("z1", t)).is_zero());
  CHECK(min_total_degree(P("z1*z2 + z1^3", t)) == ExtInt::of(2));
  CHECK(min_total_degree(Poly(t)).infinite);
  CHECK(truncate_degree(P("1 + z1 + z1*z2 + z1^3", t), 1) == P("1 + z1", t));
}

TEST_CASE("evaluation is conjugation-consistent") {
  auto t = c3();
  Point p = Point::origin(t);
  p.set("z1", CRat(Rat(1), Rat(2)));
  CHECK(eval(P("|z1|^2", t), p) == CRat(5));
  CHECK(eval(P("conj(z1)", t), p) == CRat(Rat(1), Rat(-2)));
  CHECK(eval(P("7", t), p) == CRat(7));
}

TEST_CASE("translate moves the base point to the origin") {
  auto t = c3();
  Rng rng(3);
  for (int k = 0; k < 50; ++k) {
    Poly f = random_poly(t, rng, {all_vars(t), 1, 4, 3, 5, false, true});
    Point p = Point::origin(t);
    p.set("z1", CRat(rng.small_rat(3, 2), rng.small_rat(3, 2)));
    p.set("w", CRat(rng.small_rat(3, 2)));
    CHECK(eval(translate(f, p), Point::origin(t)) == eval(f, p));
  }
}

TEST_CASE("weighted order") {
  auto t = VarTable::Builder().real("x").real("s").real("sp").build();
  Weights w(t, {{"s", Weight::of(2)}, {"sp", Weight::inf()}});
  CHECK(weighted_order(P("x^3*s^2", t), w) == ExtInt::of(7));
  CHECK(weighted_order(P("s - x^2", t), w) == ExtInt::of(2));
  CHECK(weighted_order(P("sp", t), w).infinite);
  CHECK(weighted_order(Poly(t), w).infinite);
  auto comps = weighted_components(P("x + s + x*s + sp", t), w);
  CHECK(comps.finite.size() == 3);
  CHECK(comps.finite.at(1) == P("x", t));
  CHECK(comps.finite.at(2) == P("s", t));
  CHECK(comps.finite.at(3) == P("x*s", t));
  REQUIRE(comps.infinite);
  CHECK(*comps.infinite == P("sp", t));
}

TEST_CASE("property: algebra identities on random polynomials") {
  auto t = c3();
  Rng rng(11);
  const auto vars = all_vars(t);
  for (int k = 0; k < 200; ++k) {
    Poly f = random_poly(t, rng, {vars, 1, 4, 2, 4, false, true});
    Poly g = random_poly(t, rng, {vars, 1, 4, 2, 4, false, true});
    VarIndex a = static_cast<VarIndex>(rng.uniform(0, 5)), b = static_cast<VarIndex>(rng.uniform(0, 5));
    CHECK(partial(f * g, a) == partial(f, a) * g + f * partial(g, a));
    CHECK(partial(partial(f, a), b) == partial(partial(f, b), a));
    CHECK(conj(conj(f)) == f);
    CHECK(conj(f * g) == conj(f) * conj(g));
    CHECK(is_real(f * conj(f)));
    CHECK(is_real(f + conj(f)));
    Point p = Point::origin(t);
    p.set("z1", CRat(rng.small_rat(4, 3), rng.small_rat(4, 3)));
    p.set("z2", CRat(rng.small_rat(4, 3)));
    p.set("w", CRat(Rat(0), rng.small_rat(4, 3)));
    CHECK(eval(f * g, p) == eval(f, p) * eval(g, p));
    CHECK(eval(conj(f), p) == eval(f, p).conj());
  }
}

TEST_CASE("property: weighted order agrees with a direct scan") {
  auto t = VarTable::Builder().real("x").real("y").real("s").real("u").build();
  Weights w(t, {{"s", Weight::of(2)}, {"u", Weight::of(3)}});
  Rng rng(5);
  for (int k = 0; k < 200; ++k) {
    Poly f = random_poly(t, rng, {all_vars(t), 1, 5, 3, 8, true, true});
    auto expect = oracle::weighted_order(f, {1, 1, 2, 3});
    ExtInt got = weighted_order(f, w);
    REQUIRE(expect);
    CHECK(got == ExtInt::of(*expect));
  }
}
