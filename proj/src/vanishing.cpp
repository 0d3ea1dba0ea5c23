#include "crtype/vanishing.hpp"

#include <algorithm>

#include "crtype/error.hpp"
#include "crtype/random.hpp"

namespace crtype {

VFSystem VFSystem::make(std::vector<VField> generators, std::vector<std::string> names, Point base, SystemMode mode,
                        std::optional<Hypersurface> surface) {
  if (generators.empty()) throw InputError("system needs at least one generator");
  if (names.size() != generators.size()) throw InputError("one name per generator required");
  if (!base.complete()) throw InputError("base point must assign every variable");
  for (const auto& x : generators)
    if (!compatible(x.table(), base.table())) throw TableMismatch();
  if (surface && !compatible(surface->table(), base.table())) throw TableMismatch();

  std::vector<TangentVec> values;
  for (std::size_t i = 0; i < generators.size(); ++i) {
    const auto& x = generators[i];
    if (mode == SystemMode::Real && !(conj_field(x) == x))
      throw InputError("generator " + names[i] + " is not real (self-conjugate)");
    if (mode == SystemMode::CR && !is_type_1_0(x)) throw InputError("generator " + names[i] + " is not of type (1,0)");
    values.push_back(eval_field(x, base));
  }
  const std::size_t expected = mode == SystemMode::CR ? 2 * generators.size() : generators.size();
  if (real_span_rank(values) != expected) throw InputError("generators are not linearly independent at the base point");

  if (mode == SystemMode::CR) {
    const std::size_t s = generators.size();
    for (std::size_t i = 0; i < s; ++i) {
      generators.push_back(conj_field(generators[i]));
      names.push_back(names[i] + "bar");
    }
  }
  return VFSystem(std::move(generators), std::move(names), std::move(base), mode, std::move(surface));
}

std::size_t VFSystem::tangent_dimension() const {
  const auto& t = *table();
  std::size_t dim = 0;
  for (VarIndex v = 0; v < t.size(); ++v)
    if (t.kind(v) != VarKind::Antiholomorphic) dim += t.kind(v) == VarKind::Real ? 1 : 2;
  return surface_ ? dim - 1 : dim;
}

VField VFSystem::reduce(const VField& x) const {
  if (!surface_ || !surface_->rigid()) return x;
  VField out(x.table());
  for (VarIndex v = 0; v < x.table()->size(); ++v) out.set_coeff(v, surface_->reduce(x.coeff(v)));
  return out;
}

// ---------------------------------------------------------------------------
// Vanishing order

namespace {

/// Upper bound on kept items in the exact closure search.
constexpr std::size_t closure_budget = 150;

/// Search with every item truncated to the degree that can still reach a
/// constant within the cutoff. Each derivative lowers the degree by at
/// most one, so values at the origin of all words of length <= cutoff are
/// unchanged. Requires a system centred at the origin.
std::optional<SearchNode<Poly>> truncated_search(const VFSystem& sys, const Poly& f, long cutoff) {
  const auto& gens = sys.generators();
  long budget = cutoff;
  std::optional<SearchNode<Poly>> hit;
  auto visit = [&](const SearchNode<Poly>& node) {
    if (node.item.constant_term().is_zero()) return false;
    hit = node;
    return true;
  };
  SpanSearch<Poly> search(gens.size(), [&](std::size_t a, const Poly& g) {
    return truncate_degree(sys.reduce(apply(gens[a], g)), budget);
  });
  search.seed({SearchNode<Poly>{Word{}, truncate_degree(sys.reduce(f), budget)}}, visit);
  for (long m = 1; m <= cutoff && !hit && !search.closed(); ++m) {
    budget = cutoff - m;
    search.advance(visit);
  }
  return hit;
}

/// Exact search for a closure certificate, assuming no word of length
/// <= cutoff is nonzero at the base point.
std::optional<ClosureCertificate> closure_search(const VFSystem& sys, const Poly& f, long cutoff) {
  const auto& gens = sys.generators();
  bool over_budget = false;
  SpanSearch<Poly> search(gens.size(), [&](std::size_t a, const Poly& g) { return sys.reduce(apply(gens[a], g)); });
  auto visit = [&](const SearchNode<Poly>& node) {
    if (!node.item.constant_term().is_zero())
      throw InvariantError("closure search met a nonzero value the truncated search missed");
    over_budget = search.basis().size() > closure_budget;
    return over_budget;
  };
  search.seed({SearchNode<Poly>{Word{}, sys.reduce(f)}}, visit);
  for (long m = 1; m <= cutoff && !search.closed() && !over_budget; ++m) search.advance(visit);
  if (!search.closed() || over_budget) return std::nullopt;
  ClosureCertificate cert;
  cert.level = search.depth();
  cert.all_zero = search.all_zero();
  for (const auto& n : search.basis()) cert.basis.push_back(n.word);
  return cert;
}

}  // namespace

VFSystem VFSystem::centered() const {
  if (is_origin(base_)) return *this;
  std::vector<VField> gens;
  for (const auto& x : generators_) gens.push_back(translate(x, base_));
  std::optional<Hypersurface> s;
  if (surface_) s = surface_->centered();
  return VFSystem(std::move(gens), names_, Point::origin(table()), mode_, std::move(s));
}

OrderResult nu(const VFSystem& sys, const Poly& f, long cutoff) {
  if (!compatible(f.table(), sys.table())) throw TableMismatch();
  if (cutoff < 0) throw InputError("cutoff must be non-negative");
  const VFSystem centred = sys.centered();
  const Poly g = is_origin(sys.base_point()) ? f : translate(f, sys.base_point());

  OrderResult out;
  out.alphabet = sys.names();
  if (auto hit = truncated_search(centred, g, cutoff)) {
    out.verdict = Verdict::Finite;
    out.value = static_cast<long>(hit->word.size());
    out.witness = hit->word;
    out.witness_value = eval_derivative_word(sys, f, hit->word);
    if (out.witness_value.is_zero()) throw InvariantError("vanishing-order witness re-evaluates to zero");
    return out;
  }
  if (auto cert = closure_search(centred, g, cutoff)) {
    out.verdict = Verdict::InfiniteDefinitive;
    out.certificate = std::move(cert);
    return out;
  }
  out.verdict = Verdict::AtLeast;
  out.value = cutoff + 1;
  return out;
}

namespace {

Poly expand_derivative_word(const VFSystem& sys, const Poly& f, const Word& word) {
  Poly g = sys.reduce(f);
  for (auto it = word.rbegin(); it != word.rend(); ++it) g = sys.reduce(apply(sys.generators().at(*it), g));
  return g;
}

}  // namespace

CRat eval_derivative_word(const VFSystem& sys, const Poly& f, const Word& word) {
  return eval(expand_derivative_word(sys, f, word), sys.base_point());
}

bool verify_closure(const VFSystem& sys, const Poly& f, const ClosureCertificate& cert) {
  LinearSpan<Monomial> span;
  std::vector<Poly> members;
  for (const auto& w : cert.basis) {
    Poly s = expand_derivative_word(sys, f, w);
    if (!eval(s, sys.base_point()).is_zero()) return false;
    span.insert(flatten(s));
    members.push_back(std::move(s));
  }
  if (!span.contains(flatten(sys.reduce(f)))) return false;
  for (const auto& s : members)
    for (const auto& x : sys.generators())
      if (!span.contains(flatten(sys.reduce(apply(x, s))))) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Hörmander filtration

std::vector<long> HormanderData::numbers() const {
  std::vector<long> out;
  for (const auto& l : levels) out.push_back(l.length);
  return out;
}

std::vector<std::size_t> HormanderData::multiplicities() const {
  std::vector<std::size_t> out;
  for (const auto& l : levels) out.push_back(l.multiplicity);
  return out;
}

HormanderData hormander_filtration(const VFSystem& sys, long max_length) {
  if (max_length < 1) throw InputError("max_length must be at least 1");
  const auto& gens = sys.generators();
  const Point& p = sys.base_point();
  const std::size_t target = sys.tangent_dimension();

  HormanderData hd;
  hd.alphabet = sys.names();
  LinearSpan<std::size_t> pointwise;
  FiltrationLevel current{};

  auto visit = [&](const SearchNode<VField>& node) {
    auto [re, im] = realify(eval_field(node.item, p));
    bool grew = pointwise.insert(re);
    grew = pointwise.insert(im) || grew;
    if (grew && !node.word.empty() && node.word.size() > 1) {
      current.representatives.push_back(node.word);
      current.fields.push_back(node.item);
    }
    return false;
  };
  SpanSearch<VField> search(
      gens.size(), [&](std::size_t a, const VField& y) { return sys.reduce(bracket(gens[a], y)); },
      [](std::size_t a, const Word& inner) { return inner.size() != 1 || a < inner.front(); });

  std::vector<SearchNode<VField>> seeds;
  for (std::size_t q = 0; q < gens.size(); ++q) seeds.push_back({Word{q}, gens[q]});
  search.seed(std::move(seeds), visit);
  hd.base_rank = pointwise.rank();
  hd.dims.push_back(hd.base_rank);
  if (hd.base_rank >= target) {
    hd.stop = FiltrationStop::FullSpan;
    return hd;
  }
  for (long len = 2; len <= max_length; ++len) {
    const std::size_t before = pointwise.rank();
    current = FiltrationLevel{len, 0, {}, {}};
    search.advance(visit);
    if (pointwise.rank() > before) {
      current.multiplicity = pointwise.rank() - before;
      hd.levels.push_back(std::move(current));
      hd.dims.push_back(pointwise.rank());
    }
    if (pointwise.rank() >= target) {
      hd.stop = FiltrationStop::FullSpan;
      return hd;
    }
    if (search.closed()) {
      hd.stop = FiltrationStop::Closed;
      return hd;
    }
  }
  hd.stop = FiltrationStop::MaxLength;
  return hd;
}

WeightedOrder nu_weighted(const Poly& f, const Weights& w) {
  return {weighted_order(f, w),
          "equals the vanishing order only when the system is in normal form for these weights"};
}

// ---------------------------------------------------------------------------
// Generic single-field reduction

VField generic_z(const VFSystem& sys, const HormanderData& hd, const std::vector<Rat>& a, const std::vector<Rat>& t) {
  if (sys.mode() != SystemMode::Real) throw InputError("generic_z needs a real-coordinates system");
  if (!hd.finite_type()) throw InputError("generic_z needs a system of finite type");
  const auto& gens = sys.generators();
  const auto& table = sys.table();
  if (a.size() != gens.size()) throw InputError("a must have one entry per generator");
  if (std::all_of(a.begin(), a.end(), [](const Rat& q) { return sgn(q) == 0; }))
    throw InputError("a must not be all zero");
  std::size_t slots = gens.size();
  for (const auto& l : hd.levels) {
    if (l.fields.size() != l.multiplicity) throw InputError("missing filtration representatives");
    slots += l.multiplicity;
  }
  if (t.size() != slots) throw InputError("t has " + std::to_string(t.size()) + " entries, expected " + std::to_string(slots));

  Poly lin(table);
  for (std::size_t k = 0; k < gens.size(); ++k) {
    TangentVec v = eval_field(gens[k], sys.base_point());
    std::optional<VarIndex> coord;
    for (VarIndex i = 0; i < v.components.size(); ++i) {
      if (v.components[i].is_zero()) continue;
      if (coord || !(v.components[i] == CRat(1)) || table->kind(i) != VarKind::Real) {
        coord.reset();
        break;
      }
      coord = i;
    }
    if (!coord) throw InputError("generic_z needs X_k(p) = d/dx_k for real coordinates x_k");
    Poly xk = Poly::variable(table, *coord) - Poly::constant(table, *sys.base_point().value(*coord));
    lin += xk * CRat(a[k]);
  }

  VField z(table);
  std::size_t slot = 0;
  for (std::size_t q = 0; q < gens.size(); ++q) z += CRat(t[slot++]) * gens[q];
  for (const auto& l : hd.levels) {
    Poly factor = pow(lin, static_cast<unsigned>(l.length - 1)) * CRat(Rat(1, l.length));
    for (const auto& y : l.fields) z += (factor * CRat(t[slot++])) * y;
  }
  return z;
}

OrderResult nu_single(const VField& z, const Poly& f, const Point& p, long cutoff) {
  OrderResult out;
  out.alphabet = {"Z"};
  Poly g = f;
  for (long l = 0; l <= cutoff; ++l) {
    CRat v = eval(g, p);
    if (!v.is_zero()) {
      out.verdict = Verdict::Finite;
      out.value = l;
      out.witness.assign(static_cast<std::size_t>(l), 0);
      out.witness_value = v;
      return out;
    }
    if (l < cutoff) g = apply(z, g);
  }
  out.verdict = Verdict::AtLeast;
  out.value = cutoff + 1;
  return out;
}

namespace {

std::vector<Rat> sample_nonzero(Rng& rng, std::size_t n) {
  for (;;) {
    std::vector<Rat> out;
    bool nonzero = false;
    for (std::size_t i = 0; i < n; ++i) {
      out.push_back(rng.small_rat(9, 3));
      nonzero = nonzero || sgn(out.back()) != 0;
    }
    if (nonzero) return out;
  }
}

bool same_order(const OrderResult& a, const OrderResult& b) {
  const bool fa = a.verdict == Verdict::Finite, fb = b.verdict == Verdict::Finite;
  if (fa != fb) return false;
  return !fa || a.value == b.value;
}

}  // namespace

GenericAgreement check_generic_reduction(const VFSystem& sys, const Poly& f, std::size_t trials, long cutoff,
                                         std::uint64_t seed) {
  HormanderData hd = hormander_filtration(sys, 8);
  if (!hd.finite_type()) throw InputError("generic reduction check needs a system of finite type");
  std::size_t slots = sys.generators().size();
  for (const auto& l : hd.levels) slots += l.multiplicity;

  GenericAgreement rep;
  rep.nu_d = nu(sys, f, cutoff);
  rep.trials = trials;
  Rng rng(seed);
  for (std::size_t trial = 0; trial < trials; ++trial) {
    for (int attempt = 0; attempt <= generic_retry_budget; ++attempt) {
      GenericTrial s;
      s.a = sample_nonzero(rng, sys.generators().size());
      s.t = sample_nonzero(rng, slots);
      VField z = generic_z(sys, hd, s.a, s.t);
      s.nu_z = nu_single(z, f, sys.base_point(), cutoff);
      s.agrees = same_order(s.nu_z, rep.nu_d);
      const bool agrees = s.agrees;
      rep.samples.push_back(std::move(s));
      if (agrees) {
        if (attempt == 0) ++rep.first_sample_agreements;
        ++rep.agreements_within_retries;
        break;
      }
    }
  }
  return rep;
}

}  // namespace crtype
