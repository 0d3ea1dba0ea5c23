#include "crtype/models.hpp"

#include "crtype/error.hpp"

namespace crtype {

namespace {

ModelSystem real_model(const std::string& name, const std::vector<std::string>& vars,
                       const std::map<std::string, Weight>& weights, const std::vector<std::pair<std::string, std::string>>& y_terms) {
  VarTable::Builder b;
  for (const auto& v : vars) b.real(v);
  auto t = b.build();
  VField x = VField::coordinate(t, t->index("x"));
  VField y = VField::coordinate(t, t->index("y"));
  for (const auto& [coord, power] : y_terms) {
    unsigned e = static_cast<unsigned>(std::stoul(power));
    y.set_coeff(t->index(coord), pow(Poly::variable(t, "x"), e));
  }
  auto sys = VFSystem::make({x, y}, {"X", "Y"}, Point::origin(t), SystemMode::Real);
  return {name, std::move(sys), Weights(t, weights)};
}

}  // namespace

ModelSystem heisenberg_model() {
  return real_model("heisenberg", {"x", "y", "s"}, {{"s", Weight::of(2)}}, {{"s", "1"}});
}

ModelSystem martinet_model() {
  return real_model("martinet", {"x", "y", "s"}, {{"s", Weight::of(3)}}, {{"s", "2"}});
}

ModelSystem engel_model() {
  return real_model("engel", {"x", "y", "s", "u"}, {{"s", Weight::of(2)}, {"u", Weight::of(3)}},
                    {{"s", "1"}, {"u", "2"}});
}

ModelSystem perturb(const ModelSystem& model, Rng& rng) {
  const auto& t = model.system.table();
  const auto& w = model.weights;
  const std::size_t n = t->size();
  // Monomials with every exponent <= 2, grouped by weighted degree.
  std::vector<Monomial> monomials;
  Monomial m(n);
  for (;;) {
    monomials.push_back(m);
    std::size_t i = 0;
    while (i < n && m.exps[i] == 2) m.exps[i++] = 0;
    if (i == n) break;
    ++m.exps[i];
  }
  std::vector<VField> gens;
  std::vector<std::string> names;
  const std::size_t r = model.system.generators().size();
  for (std::size_t k = 0; k < r; ++k) {
    VField x = model.system.generators()[k];
    const long extra = rng.uniform(1, 2);
    for (long e = 0; e < extra; ++e) {
      VarIndex v = static_cast<VarIndex>(rng.uniform(0, static_cast<long>(n) - 1));
      const long wv = static_cast<long>(w[v].value);
      std::vector<const Monomial*> ok;
      for (const auto& mono : monomials) {
        ExtInt d = w.degree(mono);
        if (!d.infinite && d.value >= wv && d.value <= wv + 2) ok.push_back(&mono);
      }
      if (ok.empty()) continue;
      const Monomial& pick = *ok[static_cast<std::size_t>(rng.uniform(0, static_cast<long>(ok.size()) - 1))];
      Rat c = rng.small_rat(3, 2);
      if (sgn(c) == 0) c = 1;
      Poly coeff(t);
      coeff.add_term(pick, CRat(c));
      x.set_coeff(v, x.coeff(v) + coeff);
    }
    gens.push_back(std::move(x));
    names.push_back(model.system.names()[k]);
  }
  auto sys = VFSystem::make(std::move(gens), std::move(names), model.system.base_point(), SystemMode::Real);
  return {model.name + "-perturbed", std::move(sys), model.weights};
}

Poly random_poly(const VarTablePtr& table, Rng& rng, const RandomPolyOptions& opt) {
  if (opt.vars.empty()) throw InputError("random_poly needs variables");
  for (;;) {
    Poly f(table);
    const long terms = rng.uniform(static_cast<long>(opt.min_terms), static_cast<long>(opt.max_terms));
    for (long k = 0; k < terms; ++k) {
      Monomial m(table->size());
      for (VarIndex v : opt.vars) m.exps[v] = static_cast<std::uint32_t>(rng.uniform(0, opt.max_exponent));
      if (m.is_one() && !opt.allow_constant) continue;
      if (m.total_degree() > opt.max_total_degree) continue;
      CRat c(rng.small_rat(5, 3));
      if (!opt.real_coefficients) c.im = rng.small_rat(5, 3);
      f.add_term(m, c);
    }
    if (!f.is_zero()) return f;
  }
}

PseudoconvexModel pseudoconvex_model(const VarTablePtr& table, const std::vector<Poly>& h) {
  const auto zs = table->holomorphic();
  if (zs.size() < 2) throw InputError("pseudoconvex model needs z variables and w");
  const VarIndex w = zs.back();
  Poly psi(table);
  for (const auto& hi : h) psi += hi * conj(hi);
  Poly rho = psi - Poly::variable(table, w) - Poly::variable(table, table->partner(w));
  Hypersurface surface = Hypersurface::make(rho, Point::origin(table), RigidGraph{w, -1, psi});
  std::vector<VField> sections;
  for (std::size_t k = 0; k + 1 < zs.size(); ++k) {
    VField l = VField::coordinate(table, zs[k]);
    l.set_coeff(w, partial(psi, zs[k]));
    sections.push_back(std::move(l));
  }
  return {std::move(surface), std::move(sections)};
}

PseudoconvexModel pseudoconvex_model(Rng& rng, std::size_t z_count) {
  VarTable::Builder b;
  for (std::size_t k = 1; k <= z_count; ++k) b.holomorphic("z" + std::to_string(k));
  b.holomorphic("w");
  auto t = b.build();
  std::vector<VarIndex> zs = t->holomorphic();
  zs.pop_back();
  RandomPolyOptions opt{zs, 1, 2, 2, 3, false, false};
  std::vector<Poly> h;
  const long count = rng.uniform(1, 2);
  for (long i = 0; i < count; ++i) h.push_back(random_poly(t, rng, opt));
  return pseudoconvex_model(t, h);
}

VField combine(const PseudoconvexModel& m, const std::vector<Poly>& c) {
  if (c.size() != m.sections.size()) throw InputError("one coefficient per section required");
  VField out(m.surface.table());
  for (std::size_t k = 0; k < c.size(); ++k) out += c[k] * m.sections[k];
  return out;
}

}  // namespace crtype
