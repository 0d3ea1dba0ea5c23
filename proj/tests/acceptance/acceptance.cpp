// Acceptance suite: one PASS/FAIL line per criterion.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "../oracles/oracles.hpp"
#include "crtype/exprlang.hpp"
#include "crtype/models.hpp"
#include "crtype/typing.hpp"

using namespace crtype;

namespace {

// Pinned limits.
constexpr double infinite_commutator_seconds = 1.0;
constexpr double finite_commutator_seconds = 5.0;
constexpr double bloom_seconds = 1.0;
constexpr double generic_first_sample_min = 0.90;
constexpr std::uint64_t seed = 20261015;

const std::string jobs_dir = CRTYPE_SOURCE_DIR "/jobs/";

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " [failed: " << what << "]";
    }
  }
};

// Builders independent of the parser.
struct C3 {
  VarTablePtr t = VarTable::Builder().holomorphic("z1").holomorphic("z2").holomorphic("w").build();
  Poly v(const char* n) const { return Poly::variable(t, n); }
  Poly c(long k) const { return Poly::constant(t, CRat(k)); }
  VarIndex i(const char* n) const { return t->index(n); }
  VField field(std::initializer_list<std::pair<const char*, Poly>> comps) const {
    VField x(t);
    for (const auto& [n, p] : comps) x.set_coeff(i(n), p);
    return x;
  }
};

Frame load_frame(const std::string& file) {
  JobFile job = load_job(jobs_dir + file);
  return Frame::make(*job.hypersurface, {job.field("L")}, {"L"});
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::vector<std::string> letters(const OrderResult& r) { return r.witness_letters(); }

// ---------------------------------------------------------------------------

void infinite_commutator(Outcome& o) {
  const auto t0 = std::chrono::steady_clock::now();
  C3 c;
  const Frame frame = load_frame("levi4_commutator_infinite.json");
  const VField& l = frame.fields().front();
  const VField lb = conj_field(l);
  const Poly z1 = c.v("z1"), z1b = c.v("z1bar");

  o.require(levi_form(frame.surface(), l, l) == c.c(2) * z1 * z1b, "λ(L,L) = 2|z1|^2");
  const VField llb = bracket(l, lb);
  const VField expect_llb =
      c.field({{"z2", z1}, {"z2bar", -z1b}, {"w", -(z1 * z1b)}, {"wbar", z1 * z1b}});
  o.require(llb == expect_llb, "[L,Lbar] matches the displayed field");
  const VField lllb = bracket(l, llb);
  o.require(lllb == c.field({{"z2", c.c(1)}, {"wbar", z1b}}), "[L,[L,Lbar]] = d/dz2 + conj(z1) d/dwbar");
  o.require(bracket(l, lllb).is_zero(), "[L,[L,[L,Lbar]]] = 0");
  o.require(bracket(lb, lllb).is_zero(), "[Lbar,[L,[L,Lbar]]] = 0");

  const OrderResult t = commutator_type(frame, 12);
  o.require(t.verdict == Verdict::InfiniteDefinitive, "t_L infinite-definitive");
  o.require(t.certificate && t.certificate->level == 4 && t.certificate->all_zero, "stabilization at length 4");
  o.require(t.certificate && verify_commutator_certificate(frame, *t.certificate), "certificate re-verifies");
  const OrderResult cl = levi_type(frame, l, 12);
  o.require(cl.verdict == Verdict::Finite && cl.value == 4, "c_L = 4");
  o.require(letters(cl) == std::vector<std::string>{"L", "Lbar"} && cl.witness_value == CRat(2), "L Lbar λ(0) = 2");
  const double s = seconds_since(t0);
  o.require(s < infinite_commutator_seconds, "runtime < 1 s");
  o.detail << "t_L=" << to_string(t.verdict) << " c_L=" << cl.value << " " << s << "s";
}

void finite_commutator(Outcome& o) {
  const auto t0 = std::chrono::steady_clock::now();
  C3 c;
  const Frame frame = load_frame("levi4_commutator6.json");
  const VField& l = frame.fields().front();
  const VField lb = conj_field(l);
  const Poly n1 = c.v("z1") * c.v("z1bar");

  const Poly lambda = levi_form(frame.surface(), l, l);
  o.require(lambda == c.c(2) * n1 + n1 * n1, "λ(L,L) = 2|z1|^2 + |z1|^4");
  const OrderResult t = commutator_type(frame, 8);
  o.require(t.verdict == Verdict::Finite && t.value == 6, "t_L = 6");
  const std::vector<std::string> expect_word{"Lbar", "Lbar", "L", "L", "L", "Lbar"};
  o.require(letters(t) == expect_word, "witness [Lbar,[Lbar,[L,[L,[L,Lbar]]]]]");

  // Fold the witness directly, innermost pair first.
  const VField word = bracket(lb, bracket(lb, bracket(l, bracket(l, bracket(l, lb)))));
  const TangentVec at0 = eval_field(word, frame.base_point());
  TangentVec expect{c.t, std::vector<CRat>(c.t->size())};
  expect.components[c.i("w")] = CRat(-6);
  expect.components[c.i("wbar")] = CRat(6);
  o.require(at0.components == expect.components, "witness value 6 d/dwbar - 6 d/dw at 0");
  o.require(eval_field(expand_bracket_word(frame, t.witness), frame.base_point()).components == expect.components,
            "library expansion of the witness agrees");

  const CRat llbl = eval(apply(l, apply(lb, lambda)), frame.base_point());
  o.require(llbl == CRat(2), "L Lbar λ(0) = 2");
  const OrderResult cl = levi_type(frame, l, 12);
  o.require(cl.verdict == Verdict::Finite && cl.value == 4, "c_L = 4");
  const double s = seconds_since(t0);
  o.require(s < finite_commutator_seconds, "runtime < 5 s");
  o.detail << "t_L=" << t.value << " c_L=" << cl.value << " " << s << "s";
}

void bloom(Outcome& o) {
  const auto t0 = std::chrono::steady_clock::now();
  C3 c;
  const JobFile job = load_job(jobs_dir + "bloom.json");
  const Frame frame = Frame::make(*job.hypersurface, {job.field("L")}, {"L"});
  const VField& l = frame.fields().front();
  const VField lb = conj_field(l);

  const Poly lambda = levi_form(frame.surface(), l, l);
  o.require(lambda == c.c(2) * (c.v("z2") + c.v("z2bar")) + c.c(2) * c.v("z1") * c.v("z1bar"),
            "λ(L,L) = 2(z2 + conj z2) + 2|z1|^2");
  o.require(apply(l, lambda).is_zero() && apply(lb, lambda).is_zero(), "L(λ) = Lbar(λ) = 0 identically");
  const OrderResult cl = levi_type(frame, l, 12);
  o.require(cl.verdict == Verdict::InfiniteDefinitive, "c_L infinite-definitive");
  o.require(cl.certificate && cl.certificate->all_zero && cl.certificate->level == 1 &&
                verify_closure(frame.system(), lambda, *cl.certificate),
            "certificate is L(λ) = Lbar(λ) = 0");

  const OrderResult t = commutator_type(frame, 12);
  o.require(t.verdict == Verdict::InfiniteDefinitive, "t_L infinite-definitive");
  o.require(t.certificate && verify_commutator_certificate(frame, *t.certificate), "certificate re-verifies");
  bool no_w = true;
  const auto levels = oracle::bracket_levels({lb, l}, 6);
  for (std::size_t m = 2; m < levels.size(); ++m)
    for (const auto& it : levels[m])
      no_w = no_w && it.field.coeff(c.i("w")).is_zero() && it.field.coeff(c.i("wbar")).is_zero();
  o.require(no_w, "no bracket word up to length 6 has a d/dw or d/dwbar component");

  const ContactOrder a = contact_order(*job.hypersurface, job.curve("line"), 16);
  o.require(a.verdict == Verdict::Finite && a.value == 4, "contact order of (xi,0,0) is 4");
  const double s = seconds_since(t0);
  o.require(s < bloom_seconds, "runtime < 1 s");
  o.detail << "c_L=" << to_string(cl.verdict) << " t_L=" << to_string(t.verdict) << " contact=" << a.value << " "
           << s << "s";
}

void suite(Outcome& o, const SuiteResult& r, std::size_t count) {
  o.require(r.total == count, r.name + " instance count");
  o.require(r.ok(), r.name);
  o.detail << r.passed << "/" << r.total;
  for (const auto& f : r.failures) o.detail << "\n      " << f;
}

void filtration(Outcome& o) {
  struct Expect {
    ModelSystem model;
    std::vector<long> m;
    std::vector<std::size_t> l;
  };
  std::vector<Expect> cases{{heisenberg_model(), {2}, {1}}, {martinet_model(), {3}, {1}}, {engel_model(), {2, 3}, {1, 1}}};
  for (const auto& e : cases) {
    const auto& sys = e.model.system;
    const HormanderData hd = hormander_filtration(sys, 8);
    const oracle::Filtration br = oracle::filtration(sys.generators(), sys.base_point(), 8);
    o.require(hd.finite_type(), e.model.name + " finite type");
    o.require(hd.numbers() == e.m && hd.multiplicities() == e.l, e.model.name + " numbers/multiplicities");
    o.require(br.numbers == e.m && br.multiplicities == e.l && br.final_rank == sys.table()->size(),
              e.model.name + " brute-force rank");
    o.detail << e.model.name << " m=(";
    for (std::size_t k = 0; k < hd.numbers().size(); ++k) o.detail << (k ? "," : "") << hd.numbers()[k];
    o.detail << ") ";
  }
}

std::vector<long> weight_vector(const Weights& w) {
  std::vector<long> out;
  for (VarIndex v = 0; v < w.table()->size(); ++v) out.push_back(w[v].infinite ? -1 : static_cast<long>(w[v].value));
  return out;
}

ModelSystem model_instance(Rng& rng, std::size_t i) {
  const ModelSystem base = i % 3 == 0 ? heisenberg_model() : i % 3 == 1 ? martinet_model() : engel_model();
  return (i / 3) % 2 == 0 ? base : perturb(base, rng);
}

void weighted_equivalence(Outcome& o) {
  Rng rng(seed + 8);
  std::size_t agree = 0, total = 0;
  auto check = [&](const ModelSystem& ms, const Poly& f) {
    const auto wts = weight_vector(ms.weights);
    const auto expect = oracle::weighted_order(f, wts);
    const WeightedOrder fast = nu_weighted(f, ms.weights);
    const OrderResult slow = nu(ms.system, f, 10);
    const auto brute = oracle::derivative_search(ms.system.generators(), f, ms.system.base_point(), 8);
    ++total;
    const bool ok = expect && !fast.value.infinite && fast.value.value == *expect && slow.verdict == Verdict::Finite &&
                    slow.value == *expect && brute.length && *brute.length == *expect;
    if (ok) {
      ++agree;
    } else {
      o.detail << "\n      " << ms.name << ": f=" << to_text(f) << " weighted=" << to_string(fast.value)
               << " nu=" << to_string(slow.verdict) << ":" << slow.value
               << " brute=" << (brute.length ? std::to_string(*brute.length) : "none");
    }
  };
  // Weighted monomials.
  for (std::size_t i = 0; i < 100; ++i) {
    const ModelSystem ms = model_instance(rng, i);
    const auto wts = weight_vector(ms.weights);
    const auto& t = ms.system.table();
    Monomial m(t->size());
    long deg = 0;
    do {
      deg = 0;
      for (VarIndex v = 0; v < t->size(); ++v) {
        m.exps[v] = static_cast<std::uint32_t>(rng.uniform(0, 2));
        deg += m.exps[v] * wts[v];
      }
    } while (deg > 8);
    Poly f(t);
    f.add_term(m, CRat(rng.small_rat(5, 3)));
    if (f.is_zero()) f = Poly::constant(t, CRat(1));
    check(ms, f);
  }
  // Weighted-inhomogeneous polynomials.
  for (std::size_t i = 0; i < 100; ++i) {
    const ModelSystem ms = model_instance(rng, i + 1);
    const auto wts = weight_vector(ms.weights);
    const auto& t = ms.system.table();
    std::vector<VarIndex> vars;
    for (VarIndex v = 0; v < t->size(); ++v) vars.push_back(v);
    for (;;) {
      Poly f = random_poly(t, rng, {vars, 2, 4, 2, 4, true, false});
      const auto w = oracle::weighted_order(f, wts);
      if (!w || *w > 8) continue;
      if (weighted_components(f, ms.weights).finite.size() < 2) continue;
      check(ms, f);
      break;
    }
  }
  o.require(agree == total && total == 200, "agreement");
  o.detail << agree << "/" << total;
}

void generic_reduction(Outcome& o) {
  Rng rng(seed + 9);
  std::size_t pairs = 0, trials = 0, first = 0, within = 0;
  for (std::size_t i = 0; pairs < 24; ++i) {
    const ModelSystem ms = model_instance(rng, i);
    const auto& t = ms.system.table();
    std::vector<VarIndex> vars;
    for (VarIndex v = 0; v < t->size(); ++v) vars.push_back(v);
    const Poly f = random_poly(t, rng, {vars, 1, 3, 2, 3, true, false});
    const OrderResult d = nu(ms.system, f, 10);
    if (d.verdict != Verdict::Finite || d.value > 6) continue;
    const GenericAgreement g = check_generic_reduction(ms.system, f, 10, 10, seed + i);
    ++pairs;
    trials += g.trials;
    first += g.first_sample_agreements;
    within += g.agreements_within_retries;
    if (!g.agree()) {
      o.detail << "\n      disagreement: " << ms.name << " f=" << to_text(f) << " nu_D=" << g.nu_d.value;
      for (const auto& s : g.samples)
        if (!s.agrees) o.detail << "\n        nu_Z=" << to_string(s.nu_z.verdict) << ":" << s.nu_z.value;
    }
  }
  const double rate = static_cast<double>(first) / static_cast<double>(trials);
  o.require(rate >= generic_first_sample_min, "first-sample agreement >= 90%");
  o.require(within == trials, "all trials agree within the retry budget");
  o.detail << pairs << " pairs, first-sample " << first << "/" << trials << ", within retries " << within << "/"
           << trials;
}

void trace_minimum(Outcome& o) {
  Rng rng(seed + 11);
  std::size_t agree = 0;
  for (std::size_t i = 0; i < 30; ++i) {
    const PseudoconvexModel m = pseudoconvex_model(rng, 2 + i % 2);
    std::vector<std::string> names;
    for (std::size_t k = 0; k < m.sections.size(); ++k) names.push_back("L" + std::to_string(k + 1));
    const Frame frame = Frame::make(m.surface, m.sections, names);
    const BundleLeviType b = bundle_levi_type(frame, 12, seed + i);
    std::optional<OrderResult> best;
    for (const auto& s : m.sections) {
      OrderResult r = levi_type(frame, s, 12);
      if (!best || (best->verdict != Verdict::Finite && r.verdict == Verdict::Finite) ||
          (r.verdict == Verdict::Finite && best->verdict == Verdict::Finite && r.value < best->value))
        best = r;
    }
    const bool ok = b.type.verdict == best->verdict && (b.type.verdict != Verdict::Finite || b.type.value == best->value) &&
                    b.diagnostic.verdict != PseudoconvexVerdict::NotPseudoconvex;
    if (ok) {
      ++agree;
    } else {
      o.detail << "\n      rho=" << to_text(m.surface.rho()) << " trace=" << to_string(b.type.verdict) << ":"
               << b.type.value << " min=" << to_string(best->verdict) << ":" << best->value
               << " diagnostic=" << to_string(b.diagnostic.verdict);
    }
  }
  o.require(agree == 30, "trace type equals min over sections");
  o.detail << agree << "/30";
}

void parser(Outcome& o) {
  Rng rng(seed + 12);
  std::size_t ok = 0;
  const auto t = VarTable::Builder().holomorphic("z1").holomorphic("z2").holomorphic("w").real("x").real("s").build();
  std::vector<VarIndex> all;
  for (VarIndex v = 0; v < t->size(); ++v) all.push_back(v);
  for (std::size_t i = 0; i < 400; ++i) {
    const Poly f = random_poly(t, rng, {all, 1, 6, 3, 8, i % 2 == 0, true});
    if (parse_poly(to_text(f), t) == f) {
      ++ok;
    } else {
      o.detail << "\n      round trip failed: " << to_text(f);
    }
  }
  for (std::size_t i = 0; i < 100; ++i) {
    VField x(t);
    for (VarIndex v : all)
      if (rng.coin()) x.set_coeff(v, random_poly(t, rng, {all, 1, 3, 2, 4, false, true}));
    if (parse_field(to_components(x), t) == x) {
      ++ok;
    } else {
      o.detail << "\n      field round trip failed";
    }
  }
  o.require(ok == 500, "parse(print(x)) = x");

  C3 c;
  const Poly z1 = c.v("z1"), z1b = c.v("z1bar"), z2 = c.v("z2"), z2b = c.v("z2bar"), w = c.v("w"), wb = c.v("wbar");
  const Poly n1 = z1 * z1b;
  const Poly bloom_rho = w + wb + pow(z2 + z2b + n1, 2);
  const Poly inf_rho = -(w + wb) + n1 * n1 + z1 * z2b + z2 * z1b;
  const Poly six_rho = inf_rho + z2 * z2b;
  auto rho_of = [&](const char* file) { return load_job(jobs_dir + file).hypersurface->rho(); };
  o.require(compatible(rho_of("bloom.json").table(), c.t) && rho_of("bloom.json") == bloom_rho, "bloom rho");
  o.require(rho_of("levi4_commutator_infinite.json") == inf_rho, "t=inf, c=4 example rho");
  o.require(rho_of("levi4_commutator6.json") == six_rho, "t=6, c=4 example rho");
  const VField l_six = c.field({{"z1", c.c(1)}, {"z2", -n1}, {"w", z2b + z1 * z1b * z1b - n1 * z2b}});
  o.require(load_job(jobs_dir + "levi4_commutator6.json").field("L") == l_six, "t=6, c=4 example L");
  o.detail << ok << "/500 round trips, job files exact";
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    std::function<void(Outcome&)> run;
  };
  std::optional<std::vector<SuiteResult>> suites;
  auto suite_named = [&](const std::string& name) -> const SuiteResult& {
    if (!suites) suites = property_suites(seed);
    for (const auto& s : *suites)
      if (s.name == name) return s;
    throw std::logic_error("no suite " + name);
  };
  const std::vector<Criterion> criteria{
      {1, "golden: t_L = inf, c_L = 4", infinite_commutator},
      {2, "golden: t_L = 6, c_L = 4", finite_commutator},
      {3, "golden: Bloom's hypersurface", bloom},
      {4, "multiplicativity of nu", [&](Outcome& o) { suite(o, suite_named("multiplicativity"), SuiteCounts{}.multiplicativity); }},
      {5, "evenness of nu for non-negative f", [&](Outcome& o) { suite(o, suite_named("evenness"), SuiteCounts{}.evenness); }},
      {6, "monotonicity of nu", [&](Outcome& o) { suite(o, suite_named("monotonicity"), SuiteCounts{}.monotonicity); }},
      {7, "Hormander filtration of model systems", filtration},
      {8, "weighted order equals nu in normal form", weighted_equivalence},
      {9, "generic single-field reduction", generic_reduction},
      {10, "Schwarz property of the Levi form", [&](Outcome& o) { suite(o, suite_named("schwarz"), SuiteCounts{}.schwarz); }},
      {11, "trace type equals min section type", trace_minimum},
      {12, "parser round trip and job files", parser},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      c.run(o);
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail << " [exception: " << e.what() << "]";
    }
    const double s = seconds_since(t0);
    if (!o.pass) ++failed;
    std::printf("%s %2d  %s: %s (%.2fs)\n", o.pass ? "PASS" : "FAIL", c.id, c.name, o.detail.str().c_str(), s);
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
