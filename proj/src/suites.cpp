#include <functional>

#include "crtype/exprlang.hpp"
#include "crtype/models.hpp"
#include "crtype/vanishing.hpp"

namespace crtype {

namespace {

constexpr int max_redraws = 50;

std::string describe(const OrderResult& r) {
  if (r.verdict == Verdict::Finite) return std::to_string(r.value);
  if (r.verdict == Verdict::AtLeast) return ">=" + std::to_string(r.value);
  return "inf";
}

std::vector<VarIndex> all_vars(const VarTablePtr& t) {
  std::vector<VarIndex> out;
  for (VarIndex v = 0; v < t->size(); ++v) out.push_back(v);
  return out;
}

/// Cycles through Heisenberg/Martinet models and perturbations of them.
ModelSystem real_instance(Rng& rng, std::size_t i, bool include_engel) {
  ModelSystem base = (i % 2 == 0) ? heisenberg_model() : martinet_model();
  if (include_engel && i % 5 == 4) base = engel_model();
  if ((i / 2) % 2 == 1) return perturb(base, rng);
  return base;
}

struct CRInstance {
  PseudoconvexModel model;
  VFSystem system;
};

CRInstance cr_instance(Rng& rng) {
  PseudoconvexModel m = pseudoconvex_model(rng, 2);
  const auto& t = m.surface.table();
  Poly c = Poly::constant(t, CRat(rng.small_rat(3, 2)));
  VField l = m.sections[0] + c * m.sections[1];
  auto sys = VFSystem::make({l}, {"L"}, m.surface.base_point(), SystemMode::CR, m.surface);
  return {std::move(m), std::move(sys)};
}

Poly drop_low_degree(const Poly& f, unsigned min_degree) {
  Poly out(f.table());
  for (const auto& [m, c] : f.terms())
    if (m.total_degree() >= min_degree) out.add_term(m, c);
  return out;
}

SuiteResult multiplicativity(Rng& rng, std::size_t count) {
  SuiteResult res{"multiplicativity", 0, 0, {}};
  for (std::size_t i = 0; i < count; ++i) {
    ModelSystem ms = real_instance(rng, i, false);
    const auto& t = ms.system.table();
    RandomPolyOptions opt{all_vars(t), 1, 3, 2, 3, true, i % 7 == 0};
    for (int tries = 0; tries < max_redraws; ++tries) {
      Poly f = random_poly(t, rng, opt);
      Poly g = random_poly(t, rng, opt);
      OrderResult nf = nu(ms.system, f, 8), ng = nu(ms.system, g, 8);
      if (nf.verdict != Verdict::Finite || ng.verdict != Verdict::Finite) continue;
      OrderResult nfg = nu(ms.system, f * g, nf.value + ng.value);
      ++res.total;
      if (nfg.verdict == Verdict::Finite && nfg.value == nf.value + ng.value) {
        ++res.passed;
      } else {
        res.failures.push_back(ms.name + ": f=" + to_text(f) + " g=" + to_text(g) + " nu(f)=" + describe(nf) +
                               " nu(g)=" + describe(ng) + " nu(fg)=" + describe(nfg));
      }
      break;
    }
  }
  return res;
}

/// |h|^2 or a sum of squares of real polynomials.
Poly nonnegative(const VarTablePtr& t, Rng& rng, const std::vector<VarIndex>& vars, bool real_coordinates) {
  if (rng.coin()) {
    RandomPolyOptions opt{vars, 1, 3, 2, 2, false, false};
    Poly h = random_poly(t, rng, opt);
    return h * conj(h);
  }
  Poly f(t);
  const long n = rng.uniform(1, 3);
  for (long k = 0; k < n; ++k) {
    RandomPolyOptions opt{vars, 1, 2, 2, 2, true, false};
    Poly h = random_poly(t, rng, opt);
    if (!real_coordinates) h = h + conj(h);  // real-valued in CR coordinates
    f += h * h;
  }
  return f;
}

std::vector<VarIndex> cr_function_vars(const VarTablePtr& t) {
  std::vector<VarIndex> out;
  for (VarIndex v = 0; v < t->size(); ++v)
    if (t->name(v) != "w" && t->name(v) != "wbar") out.push_back(v);
  return out;
}

SuiteResult evenness(Rng& rng, std::size_t count) {
  SuiteResult res{"evenness", 0, 0, {}};
  for (std::size_t i = 0; i < count; ++i) {
    for (int tries = 0; tries < max_redraws; ++tries) {
      std::optional<ModelSystem> ms;
      std::optional<CRInstance> cr;
      const VFSystem* sys;
      std::vector<VarIndex> vars;
      if (i % 4 == 3) {
        cr = cr_instance(rng);
        sys = &cr->system;
        vars = cr_function_vars(sys->table());
      } else {
        ms = real_instance(rng, i, true);
        sys = &ms->system;
        vars = all_vars(sys->table());
      }
      Poly f = nonnegative(sys->table(), rng, vars, !cr.has_value());
      OrderResult r = nu(*sys, f, 10);
      if (r.verdict != Verdict::Finite) continue;
      ++res.total;
      if (r.value % 2 == 0) {
        ++res.passed;
      } else {
        res.failures.push_back((ms ? ms->name : std::string("cr")) + ": f=" + to_text(f) + " nu=" + describe(r));
      }
      break;
    }
  }
  return res;
}

SuiteResult monotonicity(Rng& rng, std::size_t count) {
  SuiteResult res{"monotonicity", 0, 0, {}};
  for (std::size_t i = 0; i < count; ++i) {
    ModelSystem ms = real_instance(rng, i, true);
    const auto& t = ms.system.table();
    for (int tries = 0; tries < max_redraws; ++tries) {
      Poly f(t), g(t);
      const long nf = rng.uniform(1, 2), ng = rng.uniform(1, 2);
      for (long k = 0; k < nf; ++k) {
        Poly q = random_poly(t, rng, {all_vars(t), 1, 2, 2, 2, true, false});
        f += q * q;
      }
      g = f;
      for (long k = 0; k < ng; ++k) {
        Poly r = random_poly(t, rng, {all_vars(t), 1, 2, 2, 2, true, false});
        g += r * r;
      }
      OrderResult of = nu(ms.system, f, 10), og = nu(ms.system, g, 10);
      if (of.verdict != Verdict::Finite || og.verdict != Verdict::Finite) continue;
      ++res.total;
      if (of.value >= og.value) {
        ++res.passed;
      } else {
        res.failures.push_back(ms.name + ": f=" + to_text(f) + " g=" + to_text(g) + " nu(f)=" + describe(of) +
                               " nu(g)=" + describe(og));
      }
      break;
    }
  }
  return res;
}

/// Largest j with nu >= 2j + 1, capped at `cap`; -1 if none.
long odd_index(const OrderResult& r, long cap) {
  long lower = r.verdict == Verdict::InfiniteDefinitive ? 2 * cap + 1 : r.value;
  if (lower < 1) return -1;
  return std::min((lower - 1) / 2, cap);
}

SuiteResult schwarz(Rng& rng, std::size_t count) {
  SuiteResult res{"schwarz", 0, 0, {}};
  constexpr long cutoff = 8;
  for (std::size_t i = 0; i < count; ++i) {
    for (int tries = 0; tries < max_redraws; ++tries) {
      VarTable::Builder b;
      auto t = b.holomorphic("z1").holomorphic("z2").holomorphic("w").build();
      std::vector<VarIndex> zs{t->index("z1"), t->index("z2")};
      std::vector<Poly> h;
      const long nh = rng.uniform(1, 2);
      for (long k = 0; k < nh; ++k) {
        Poly hk = drop_low_degree(random_poly(t, rng, {zs, 1, 3, 3, 3, false, false}), 2);
        if (!hk.is_zero()) h.push_back(std::move(hk));
      }
      if (h.empty()) continue;
      PseudoconvexModel m = pseudoconvex_model(t, h);
      Poly c = Poly::constant(t, CRat(rng.small_rat(3, 2)));
      VField l = m.sections[0] + c * m.sections[1];
      auto sys = VFSystem::make({l}, {"L"}, m.surface.base_point(), SystemMode::CR, m.surface);
      RandomPolyOptions copt{zs, 1, 2, 1, 1, false, true};
      VField x = combine(m, {random_poly(t, rng, copt), random_poly(t, rng, copt)});
      VField y = combine(m, {random_poly(t, rng, copt), random_poly(t, rng, copt)});
      OrderResult nxx = nu(sys, levi_form(m.surface, x, x), cutoff);
      OrderResult nyy = nu(sys, levi_form(m.surface, y, y), cutoff);
      const long j = odd_index(nxx, cutoff / 2), k = odd_index(nyy, cutoff / 2);
      if (j < 0 || k < 0) continue;
      OrderResult nxy = nu(sys, levi_form(m.surface, x, y), j + k + 1);
      ++res.total;
      if (nxy.verdict != Verdict::Finite) {
        ++res.passed;
      } else {
        res.failures.push_back("rho=" + to_text(m.surface.rho()) + " j=" + std::to_string(j) +
                               " k=" + std::to_string(k) + " nu(lambda(X,Y))=" + describe(nxy));
      }
      break;
    }
  }
  return res;
}

}  // namespace

std::vector<SuiteResult> property_suites(std::uint64_t seed, const SuiteCounts& counts) {
  Rng rng(seed);
  std::vector<SuiteResult> out;
  out.push_back(multiplicativity(rng, counts.multiplicativity));
  out.push_back(evenness(rng, counts.evenness));
  out.push_back(monotonicity(rng, counts.monotonicity));
  out.push_back(schwarz(rng, counts.schwarz));
  return out;
}

}  // namespace crtype
