#include "crtype/typing.hpp"

#include <functional>
#include <set>

#include "crtype/error.hpp"

namespace crtype {

Frame Frame::make(Hypersurface surface, std::vector<VField> fields, std::vector<std::string> names) {
  if (fields.empty()) throw InputError("frame needs at least one field");
  if (names.size() != fields.size()) throw InputError("one name per frame field required");
  std::set<std::string> seen;
  for (std::size_t j = 0; j < fields.size(); ++j) {
    const auto& x = fields[j];
    if (!seen.insert(names[j]).second) throw InputError("duplicate frame field name '" + names[j] + "'");
    if (!compatible(x.table(), surface.table())) throw TableMismatch();
    if (!is_type_1_0(x)) throw InputError("frame field " + names[j] + " is not of type (1,0)");
    if (!is_tangent(surface, x))
      throw InputError("frame field " + names[j] + " is not tangent: residual " + std::to_string(tangency_residual(surface, x).size()) + " terms");
  }
  VFSystem sys = VFSystem::make(fields, names, surface.base_point(), SystemMode::CR, surface);
  return Frame(std::move(surface), std::move(fields), std::move(names), std::move(sys));
}

std::vector<VField> Frame::bracket_letters() const {
  std::vector<VField> out;
  for (const auto& x : fields_) out.push_back(conj_field(x));
  for (const auto& x : fields_) out.push_back(x);
  return out;
}

std::vector<std::string> Frame::bracket_alphabet() const {
  std::vector<std::string> out;
  for (const auto& n : names_) out.push_back(n + "bar");
  for (const auto& n : names_) out.push_back(n);
  return out;
}

VField expand_bracket_word(const Frame& frame, const Word& word) {
  if (word.empty()) throw InputError("empty bracket word");
  const auto letters = frame.bracket_letters();
  VField y = letters.at(word.back());
  for (std::size_t i = word.size() - 1; i-- > 0;) y = frame.system().reduce(bracket(letters.at(word[i]), y));
  return y;
}

Frame Frame::centered() const {
  if (is_origin(base_point())) return *this;
  std::vector<VField> fields;
  for (const auto& x : fields_) fields.push_back(translate(x, base_point()));
  return Frame(surface_.centered(), std::move(fields), names_, system_.centered());
}

namespace {

constexpr std::size_t closure_budget = 150;

/// d rho at the origin of a centred frame, as a linear functional on
/// constant terms of (1,0) components.
std::vector<std::pair<VarIndex, CRat>> drho_at_origin(const Hypersurface& h) {
  std::vector<std::pair<VarIndex, CRat>> out;
  for (VarIndex z : h.table()->holomorphic()) {
    CRat c = partial(h.rho(), z).constant_term();
    if (!c.is_zero()) out.emplace_back(z, c);
  }
  return out;
}

CRat pairing_at_origin(const std::vector<std::pair<VarIndex, CRat>>& drho, const VField& y) {
  CRat s;
  for (const auto& [z, c] : drho) s += c * y.coeff(z).constant_term();
  return s;
}

SpanSearch<VField> bracket_search(const Frame& frame, const std::vector<VField>& letters,
                                  std::function<VField(VField)> post) {
  return SpanSearch<VField>(
      letters.size(),
      [&frame, &letters, post](std::size_t a, const VField& y) {
        return post(frame.system().reduce(bracket(letters[a], y)));
      },
      [](std::size_t a, const Word& inner) { return inner.size() != 1 || inner.front() < a; });
}

}  // namespace

OrderResult commutator_type(const Frame& original, long cutoff) {
  if (cutoff < 2) throw InputError("commutator type cutoff must be at least 2");
  const Frame frame = original.centered();
  const auto letters = frame.bracket_letters();
  const auto drho = drho_at_origin(frame.surface());

  OrderResult out;
  out.alphabet = frame.bracket_alphabet();

  // Truncated pass: every bracket lowers coefficient degrees by at most
  // one, so terms above the remaining length cannot reach the origin.
  long budget = cutoff - 1;
  std::optional<SearchNode<VField>> hit;
  {
    auto search = bracket_search(frame, letters, [&budget](VField y) { return truncate_degree(y, budget); });
    auto visit = [&](const SearchNode<VField>& node) {
      if (pairing_at_origin(drho, node.item).is_zero()) return false;
      hit = node;
      return true;
    };
    std::vector<SearchNode<VField>> seeds;
    for (std::size_t a = 0; a < letters.size(); ++a) seeds.push_back({Word{a}, truncate_degree(letters[a], budget)});
    search.seed(std::move(seeds), visit);
    for (long m = 2; m <= cutoff && !hit && !search.closed(); ++m) {
      budget = cutoff - m;
      search.advance(visit);
    }
  }
  if (hit) {
    out.verdict = Verdict::Finite;
    out.value = static_cast<long>(hit->word.size());
    out.witness = hit->word;
    out.witness_value = eval(drho_pairing(original.surface(), expand_bracket_word(original, hit->word)),
                             original.base_point());
    if (out.witness_value.is_zero()) throw InvariantError("commutator witness re-evaluates to zero");
    return out;
  }

  // Exact pass for a closure certificate.
  auto search = bracket_search(frame, letters, [](VField y) { return y; });
  bool over_budget = false;
  auto visit = [&](const SearchNode<VField>& node) {
    if (!pairing_at_origin(drho, node.item).is_zero())
      throw InvariantError("closure search met a nonzero pairing the truncated search missed");
    over_budget = search.basis().size() > closure_budget;
    return over_budget;
  };
  std::vector<SearchNode<VField>> seeds;
  for (std::size_t a = 0; a < letters.size(); ++a) seeds.push_back({Word{a}, letters[a]});
  search.seed(std::move(seeds), visit);
  for (long m = 2; m <= cutoff && !search.closed() && !over_budget; ++m) search.advance(visit);
  if (search.closed() && !over_budget) {
    out.verdict = Verdict::InfiniteDefinitive;
    ClosureCertificate cert;
    cert.level = search.depth();
    cert.all_zero = search.all_zero();
    for (const auto& n : search.basis()) cert.basis.push_back(n.word);
    out.certificate = std::move(cert);
    return out;
  }
  out.verdict = Verdict::AtLeast;
  out.value = cutoff + 1;
  return out;
}

bool verify_commutator_certificate(const Frame& frame, const ClosureCertificate& cert) {
  const auto letters = frame.bracket_letters();
  LinearSpan<FieldKey> span;
  std::vector<VField> members;
  for (const auto& w : cert.basis) {
    VField y = expand_bracket_word(frame, w);
    if (!eval(drho_pairing(frame.surface(), y), frame.base_point()).is_zero()) return false;
    span.insert(flatten(y));
    members.push_back(std::move(y));
  }
  for (const auto& l : letters)
    if (!span.contains(flatten(l))) return false;
  for (const auto& y : members)
    for (const auto& l : letters)
      if (!span.contains(flatten(frame.system().reduce(bracket(l, y))))) return false;
  return true;
}

namespace {

OrderResult shift_by_two(OrderResult r) {
  if (r.verdict != Verdict::InfiniteDefinitive) r.value += 2;
  return r;
}

}  // namespace

OrderResult levi_type(const Frame& frame, const VField& section, long cutoff) {
  if (cutoff < 0) throw InputError("cutoff must be non-negative");
  const Hypersurface& h = frame.surface();
  if (!compatible(section.table(), h.table())) throw TableMismatch();
  if (!is_type_1_0(section)) throw InputError("section is not of type (1,0)");
  if (!is_tangent(h, section)) throw InputError("section is not tangent to the hypersurface");
  TangentVec v = eval_field(section, frame.base_point());
  if (v.is_zero()) throw InputError("degenerate section: L(p) = 0");
  LinearSpan<std::size_t> span;
  auto as_vector = [](const TangentVec& t) {
    SparseVector<std::size_t> out;
    for (std::size_t i = 0; i < t.components.size(); ++i)
      if (!t.components[i].is_zero()) out.emplace(i, t.components[i]);
    return out;
  };
  for (const auto& x : frame.fields()) span.insert(as_vector(eval_field(x, frame.base_point())));
  if (!span.contains(as_vector(v))) throw InputError("section value at p is outside the frame span");
  return shift_by_two(nu(frame.system(), levi_form(h, section, section), cutoff));
}

Poly trace_levi(const Frame& frame) {
  Poly tr(frame.surface().table());
  for (const auto& x : frame.fields()) tr += levi_form(frame.surface(), x, x);
  return tr;
}

BundleLeviType bundle_levi_type(const Frame& frame, long cutoff, std::uint64_t seed, std::size_t samples) {
  BundleLeviType out;
  out.type = shift_by_two(nu(frame.system(), trace_levi(frame), cutoff));
  out.diagnostic =
      pseudoconvexity_sample(frame.surface(), sample_points(frame.surface(), seed, samples), Rat(1, 1000000));
  return out;
}

ContactOrder contact_order(const Hypersurface& h, const Curve& curve, long degree_bound) {
  const auto& t = h.table();
  const auto zs = t->holomorphic();
  if (curve.map.size() != zs.size()) throw InputError("curve must give one component per holomorphic variable");
  for (VarIndex v = 0; v < t->size(); ++v)
    if (t->kind(v) == VarKind::Real) throw InputError("contact order needs purely complex coordinates");
  const auto& pt = curve.params;
  const auto params = pt->holomorphic();
  Point origin = Point::origin(pt);
  std::vector<SparseVector<std::size_t>> columns(params.size());
  for (std::size_t j = 0; j < zs.size(); ++j) {
    const Poly& phi = curve.map[j];
    if (!compatible(phi.table(), pt)) throw TableMismatch();
    for (VarIndex v = 0; v < pt->size(); ++v)
      if (pt->kind(v) == VarKind::Antiholomorphic && phi.depends_on(v))
        throw InputError("curve component for " + t->name(zs[j]) + " is not holomorphic");
    if (!(eval(phi, origin) == *h.base_point().value(zs[j])))
      throw InputError("curve does not pass through the base point at " + t->name(zs[j]));
    for (std::size_t k = 0; k < params.size(); ++k) {
      CRat d = eval(partial(phi, params[k]), origin);
      if (!d.is_zero()) columns[k].emplace(j, d);
    }
  }
  LinearSpan<std::size_t> rank;
  for (const auto& c : columns) rank.insert(c);
  if (rank.rank() != params.size()) throw InputError("not a submanifold: Jacobian at 0 has rank deficiency");

  std::vector<std::optional<Poly>> images(t->size());
  for (std::size_t j = 0; j < zs.size(); ++j) {
    images[zs[j]] = curve.map[j];
    images[t->partner(zs[j])] = conj(curve.map[j]);
  }
  ContactOrder out{Verdict::AtLeast, degree_bound + 1, compose(h.rho(), images, pt)};
  for (const auto& [m, c] : out.composition.terms()) {
    const long d = m.total_degree();
    if (d <= degree_bound && (out.verdict == Verdict::AtLeast || d < out.value)) {
      out.verdict = Verdict::Finite;
      out.value = d;
    }
  }
  return out;
}

FullReport full_report(const Frame& frame, const std::vector<Curve>& curves, long cutoff, long degree_bound,
                       std::uint64_t seed) {
  FullReport r;
  r.commutator = commutator_type(frame, cutoff);
  for (std::size_t j = 0; j < frame.fields().size(); ++j)
    r.levi.emplace_back(frame.names()[j], levi_type(frame, frame.fields()[j], cutoff));
  r.trace = bundle_levi_type(frame, cutoff, seed);
  for (const auto& c : curves) r.contact.emplace_back(c.name, contact_order(frame.surface(), c, degree_bound));
  return r;
}

}  // namespace crtype
