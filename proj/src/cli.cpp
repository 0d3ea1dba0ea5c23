#include "crtype/cli.hpp"

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "crtype/error.hpp"

namespace crtype::cli {

using Json = nlohmann::ordered_json;

namespace {

[[noreturn]] void bad(const std::string& what) { throw InputError(what); }

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    const auto pos = s.find(sep, start);
    out.push_back(trim(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  if (out.size() == 1 && out[0].empty()) out.clear();
  return out;
}

/// "a=1, b=x" -> {"a": "1", "b": "x"} preserving order.
Json assignments(std::string_view text, const std::string& flag) {
  Json obj = Json::object();
  for (const auto& item : split(text, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos || trim(item.substr(0, eq)).empty())
      bad(flag + ": expected name=value, got '" + item + "'");
    obj[trim(item.substr(0, eq))] = trim(item.substr(eq + 1));
  }
  return obj;
}

// ---------------------------------------------------------------------------
// Task parameters

class Params {
 public:
  Params(const Json& raw, std::string type) : raw_(raw), type_(std::move(type)) {
    if (!raw_.is_object()) bad(type_ + ": parameters must be an object");
  }

  long integer(const char* key, long fallback) {
    long v = fallback;
    if (raw_.contains(key)) {
      const Json& j = raw_.at(key);
      if (!j.is_number_integer()) bad(type_ + "." + key + ": expected an integer");
      v = j.get<long>();
    }
    echo_[key] = v;
    return v;
  }

  std::optional<std::string> text(const char* key) {
    if (!raw_.contains(key)) return std::nullopt;
    const Json& j = raw_.at(key);
    if (!j.is_string()) bad(type_ + "." + key + ": expected a string");
    echo_[key] = j;
    return j.get<std::string>();
  }

  std::string required_text(const char* key) {
    auto v = text(key);
    if (!v) bad(type_ + ": missing parameter '" + std::string(key) + "'");
    return *v;
  }

  /// Rejects keys no getter asked for.
  Json finish() const {
    for (const auto& [key, val] : raw_.items())
      if (key != "type" && !echo_.contains(key)) bad(type_ + ": unknown parameter '" + key + "'");
    Json out = Json::object();
    out["type"] = type_;
    for (const auto& [key, val] : echo_.items()) out[key] = val;
    return out;
  }

 private:
  const Json& raw_;
  std::string type_;
  Json echo_ = Json::object();
};

// ---------------------------------------------------------------------------
// Building blocks from a job

Frame frame_of(const JobFile& job) {
  if (!job.hypersurface) bad("this task needs a hypersurface (\"hypersurface\" in the job or --rho)");
  std::vector<std::string> names = job.frame;
  if (names.empty())
    for (const auto& [n, f] : job.fields) names.push_back(n);
  if (names.empty()) bad("this task needs a frame (\"frame\"/\"fields\" in the job or --field)");
  std::vector<VField> fields;
  for (const auto& n : names) fields.push_back(job.field(n));
  return Frame::make(*job.hypersurface, std::move(fields), std::move(names));
}

VFSystem system_of(const JobFile& job) {
  if (job.system) {
    std::vector<VField> gens;
    for (const auto& n : job.system->generators) gens.push_back(job.field(n));
    const SystemMode mode = job.system->mode == "cr" ? SystemMode::CR : SystemMode::Real;
    std::optional<Hypersurface> surface;
    if (mode == SystemMode::CR) surface = job.hypersurface;
    return VFSystem::make(std::move(gens), job.system->generators, job.point, mode, std::move(surface));
  }
  if (job.hypersurface) return frame_of(job).system();
  bad("this task needs a vector field system (\"system\" in the job, or a hypersurface and frame)");
}

const VField& section_of(const JobFile& job, const Frame& frame, const std::optional<std::string>& name) {
  if (name) return job.field(*name);
  return frame.fields().front();
}

// ---------------------------------------------------------------------------
// Serialization

Json point_json(const Point& p) {
  Json out = Json::object();
  const auto& t = p.table();
  for (VarIndex v = 0; v < t->size(); ++v)
    if (t->kind(v) != VarKind::Antiholomorphic && p.value(v)) out[t->name(v)] = to_string(*p.value(v));
  return out;
}

Json tangent_json(const TangentVec& v) {
  Json out = Json::object();
  for (VarIndex i = 0; i < v.components.size(); ++i)
    if (!v.components[i].is_zero()) out[v.table->name(i)] = to_string(v.components[i]);
  return out;
}

Json field_json(const VField& x) {
  Json out = Json::object();
  for (const auto& [name, text] : to_components(x)) out[name] = text;
  return out;
}

Json letters_json(const Word& w, const std::vector<std::string>& alphabet) {
  Json out = Json::array();
  for (auto i : w) out.push_back(alphabet.at(i));
  return out;
}

/// Left-normed display [Y_m,[...,[Y_2,Y_1]...]] of a word listed outermost first.
std::string bracket_display(const Word& w, const std::vector<std::string>& alphabet) {
  if (w.empty()) return "";
  std::string s = alphabet.at(w.back());
  for (std::size_t k = w.size() - 1; k-- > 0;) s = "[" + alphabet.at(w[k]) + "," + s + "]";
  return s;
}

/// Nested application X_m(...X_1(f)...) of a derivative word.
std::string derivative_display(const Word& w, const std::vector<std::string>& alphabet, const std::string& f) {
  std::string s = f;
  for (auto it = w.rbegin(); it != w.rend(); ++it) s = alphabet.at(*it) + "(" + s + ")";
  return s;
}

enum class WordStyle { Bracket, Derivative };

std::string word_display(const Word& w, const std::vector<std::string>& alphabet, WordStyle style,
                         const std::string& f) {
  return style == WordStyle::Bracket ? bracket_display(w, alphabet) : derivative_display(w, alphabet, f);
}

std::string certificate_statement(const ClosureCertificate& cert, const std::vector<std::string>& alphabet,
                                  WordStyle style, const std::string& f) {
  if (cert.all_zero) {
    std::string s;
    for (const auto& b : cert.basis)
      for (std::size_t a = 0; b.size() + 1 == cert.level && a < alphabet.size(); ++a) {
        Word ext{a};
        ext.insert(ext.end(), b.begin(), b.end());
        if (!s.empty()) s += ", ";
        s += word_display(ext, alphabet, style, f) + "≡0";
      }
    return s;
  }
  return "span of " + std::to_string(cert.basis.size()) +
         " words, all zero at p, is closed under every letter (stabilized at length " + std::to_string(cert.level) +
         ")";
}

Json order_json(const OrderResult& r, WordStyle style, const std::string& f) {
  Json out = Json::object();
  out["verdict"] = to_string(r.verdict);
  switch (r.verdict) {
    case Verdict::Finite:
      out["value"] = r.value;
      out["witness"] = letters_json(r.witness, r.alphabet);
      out["witness_display"] = word_display(r.witness, r.alphabet, style, f);
      out["witness_value"] = to_string(r.witness_value);
      break;
    case Verdict::AtLeast:
      out["bound"] = r.value;
      break;
    case Verdict::InfiniteDefinitive: {
      const auto& c = *r.certificate;
      Json cj = Json::object();
      cj["level"] = c.level;
      cj["all_zero"] = c.all_zero;
      Json basis = Json::array();
      for (const auto& b : c.basis) basis.push_back(letters_json(b, r.alphabet));
      cj["basis"] = std::move(basis);
      cj["statement"] = certificate_statement(c, r.alphabet, style, f);
      out["certificate"] = std::move(cj);
      break;
    }
  }
  return out;
}

Json pseudoconvexity_json(const PseudoconvexityReport& rep) {
  Json out = Json::object();
  out["verdict"] = to_string(rep.verdict);
  out["orientation"] = rep.orientation;
  out["samples"] = rep.samples.size();
  auto witness = [](const PseudoconvexityReport::Witness& w) {
    Json j = Json::object();
    j["point"] = point_json(w.point);
    Json v = Json::array();
    for (const auto& c : w.vector) v.push_back(to_string(c));
    j["vector"] = std::move(v);
    j["levi_value"] = to_string(w.value);
    return j;
  };
  if (rep.negative) out["negative_witness"] = witness(*rep.negative);
  if (rep.positive) out["positive_witness"] = witness(*rep.positive);
  return out;
}

std::string frame_label(const Frame& frame) {
  return frame.fields().size() == 1 ? frame.names().front() : "B";
}

// ---------------------------------------------------------------------------
// Tasks

Json merge(Json head, const Json& tail) {
  for (const auto& [k, v] : tail.items()) head[k] = v;
  return head;
}

Json commutator_json(const Frame& frame, const OrderResult& r) {
  const std::string label = frame_label(frame);
  Json out = Json::object();
  out["symbol"] = label == "B" ? "t^(" + std::to_string(frame.fields().size()) + ")(B,p)" : "t_" + label + "(M,p)";
  out = merge(out, order_json(r, WordStyle::Bracket, ""));
  if (r.verdict == Verdict::Finite) {
    out["pairing"] = "<d rho, witness>(p)";
    out["witness_field_at_p"] = tangent_json(eval_field(expand_bracket_word(frame, r.witness), frame.base_point()));
  }
  if (r.certificate) out["certificate"]["verified"] = verify_commutator_certificate(frame, *r.certificate);
  return out;
}

Json task_ttype(Params& p, const JobFile& job) {
  const long cutoff = p.integer("cutoff", 12);
  const Frame frame = frame_of(job);
  return commutator_json(frame, commutator_type(frame, cutoff));
}

Json levi_type_json(const Frame& frame, const std::string& name, const VField& section, long cutoff) {
  const OrderResult r = levi_type(frame, section, cutoff);
  const std::string lambda = "λ(" + name + "," + name + ")";
  Json out = Json::object();
  out["symbol"] = "c_" + name + "(M,p)";
  out["levi_form"] = to_text(levi_form(frame.surface(), section, section));
  out = merge(out, order_json(r, WordStyle::Derivative, lambda));
  if (r.certificate)
    out["certificate"]["verified"] =
        verify_closure(frame.system(), levi_form(frame.surface(), section, section), *r.certificate);
  return out;
}

Json bundle_json(const Frame& frame, const BundleLeviType& b) {
  Json out = Json::object();
  out["symbol"] = "c^(" + std::to_string(frame.fields().size()) + ")(B,p)";
  out["trace"] = to_text(trace_levi(frame));
  out = merge(out, order_json(b.type, WordStyle::Derivative, "tr λ"));
  if (b.type.certificate) out["certificate"]["verified"] = verify_closure(frame.system(), trace_levi(frame), *b.type.certificate);
  out["conditional_on"] = "pseudoconvexity";
  out["pseudoconvexity"] = pseudoconvexity_json(b.diagnostic);
  return out;
}

Json task_ctype(Params& p, const JobFile& job) {
  const long cutoff = p.integer("cutoff", 12);
  const auto section = p.text("section");
  const long seed = p.integer("seed", 1);
  const Frame frame = frame_of(job);
  if (section) return levi_type_json(frame, *section, job.field(*section), cutoff);
  if (frame.fields().size() == 1) return levi_type_json(frame, frame.names().front(), frame.fields().front(), cutoff);
  return bundle_json(frame, bundle_levi_type(frame, cutoff, static_cast<std::uint64_t>(seed)));
}

std::optional<Weights> weights_of(Params& p, const JobFile& job) {
  if (auto text = p.text("weights")) {
    std::map<std::string, Weight> w;
    for (const auto& [name, val] : assignments(*text, "weights").items()) {
      const std::string v = val.get<std::string>();
      if (v == "inf" || v == "infinity") {
        w[name] = Weight::inf();
      } else {
        long n = 0;
        try {
          std::size_t used = 0;
          n = std::stol(v, &used);
          if (used != v.size()) n = 0;
        } catch (const std::exception&) {
          n = 0;
        }
        if (n <= 0) bad("weights." + name + ": expected a positive integer or inf");
        w[name] = Weight::of(static_cast<unsigned>(n));
      }
      if (!job.table->find(name)) bad("weights." + name + ": unknown variable");
    }
    return Weights(job.table, w);
  }
  if (job.system && job.system->weights) return job.system->weights;
  return std::nullopt;
}

Json task_nu(Params& p, const JobFile& job) {
  const std::string text = p.required_text("f");
  const long cutoff = p.integer("cutoff", 10);
  const auto weights = weights_of(p, job);
  const VFSystem sys = system_of(job);
  const Poly f = parse_poly(text, job.table);
  const OrderResult r = nu(sys, f, cutoff);
  Json out = Json::object();
  out["symbol"] = "ν(f)(p)";
  out["f"] = to_text(f);
  out = merge(out, order_json(r, WordStyle::Derivative, "f"));
  if (r.certificate) out["certificate"]["verified"] = verify_closure(sys, f, *r.certificate);
  if (weights) {
    const WeightedOrder w = nu_weighted(f, *weights);
    out["weighted_order"] = to_string(w.value);
    out["weighted_caveat"] = w.caveat;
  }
  return out;
}

const char* stop_name(FiltrationStop s) {
  switch (s) {
    case FiltrationStop::FullSpan:
      return "full-span";
    case FiltrationStop::MaxLength:
      return "max-length";
    case FiltrationStop::Closed:
      return "closed";
  }
  return "?";
}

Json task_hormander(Params& p, const JobFile& job) {
  const long max_length = p.integer("max_length", 8);
  const VFSystem sys = system_of(job);
  const HormanderData hd = hormander_filtration(sys, max_length);
  Json out = Json::object();
  out["symbol"] = "E_0 ⊂ E_1 ⊂ ... ⊂ E_h";
  out["finite_type"] = hd.finite_type();
  out["stop"] = stop_name(hd.stop);
  out["numbers"] = hd.numbers();
  out["multiplicities"] = hd.multiplicities();
  out["dims"] = hd.dims;
  Json levels = Json::array();
  for (const auto& l : hd.levels) {
    Json lj = Json::object();
    lj["length"] = l.length;
    lj["multiplicity"] = l.multiplicity;
    Json reps = Json::array();
    for (std::size_t k = 0; k < l.representatives.size(); ++k) {
      Json rj = Json::object();
      rj["word"] = letters_json(l.representatives[k], hd.alphabet);
      rj["bracket"] = bracket_display(l.representatives[k], hd.alphabet);
      rj["field"] = field_json(l.fields[k]);
      rj["value_at_p"] = tangent_json(eval_field(l.fields[k], sys.base_point()));
      reps.push_back(std::move(rj));
    }
    lj["representatives"] = std::move(reps);
    levels.push_back(std::move(lj));
  }
  out["levels"] = std::move(levels);
  return out;
}

Json contact_json(const ContactOrder& c, const std::string& curve) {
  Json out = Json::object();
  out["symbol"] = "ord_0(rho∘" + curve + ")";
  out["curve"] = curve;
  out["verdict"] = to_string(c.verdict);
  out[c.verdict == Verdict::Finite ? "value" : "bound"] = c.value;
  if (c.verdict == Verdict::Finite) {
    // Witness: the terms of lowest degree.
    Json w = Json::array();
    for (const auto& [m, coef] : c.composition.terms())
      if (static_cast<long>(m.total_degree()) == c.value) {
        Poly t(c.composition.table());
        t.add_term(m, coef);
        w.push_back(to_text(t));
      }
    out["witness"] = std::move(w);
  }
  out["composition"] = to_text(c.composition);
  return out;
}

Json task_contact(Params& p, const JobFile& job) {
  const std::string name = p.required_text("curve");
  const long bound = p.integer("degree_bound", 16);
  if (!job.hypersurface) bad("contact needs a hypersurface");
  return contact_json(contact_order(*job.hypersurface, job.curve(name), bound), name);
}

Json rats_json(const std::vector<Rat>& v) {
  Json out = Json::array();
  for (const auto& q : v) out.push_back(to_string(q));
  return out;
}

Json task_generic_z(Params& p, const JobFile& job) {
  const std::string text = p.required_text("f");
  const long trials = p.integer("trials", 20);
  const long cutoff = p.integer("cutoff", 10);
  const long seed = p.integer("seed", 1);
  if (trials <= 0) bad("generic-z: trials must be positive");
  const VFSystem sys = system_of(job);
  const Poly f = parse_poly(text, job.table);
  const GenericAgreement g =
      check_generic_reduction(sys, f, static_cast<std::size_t>(trials), cutoff, static_cast<std::uint64_t>(seed));
  Json out = Json::object();
  out["symbol"] = "ν_Z(f)(p) vs ν(f)(p)";
  out["f"] = to_text(f);
  out["nu_d"] = order_json(g.nu_d, WordStyle::Derivative, "f");
  out["trials"] = g.trials;
  out["first_sample_agreements"] = g.first_sample_agreements;
  out["agreements_within_retries"] = g.agreements_within_retries;
  out["retry_budget"] = generic_retry_budget;
  out["agree"] = g.agree();
  Json samples = Json::array();
  for (const auto& s : g.samples) {
    Json sj = Json::object();
    sj["a"] = rats_json(s.a);
    sj["t"] = rats_json(s.t);
    sj["nu_z"] = order_json(s.nu_z, WordStyle::Derivative, "f");
    sj["agrees"] = s.agrees;
    samples.push_back(std::move(sj));
  }
  out["samples"] = std::move(samples);
  return out;
}

Json task_tangent_check(Params& p, const JobFile& job) {
  const auto section = p.text("section");
  if (!job.hypersurface) bad("tangent-check needs a hypersurface");
  std::vector<std::string> names;
  if (section) {
    names.push_back(*section);
  } else {
    names = job.frame;
    if (names.empty())
      for (const auto& [n, f] : job.fields) names.push_back(n);
  }
  Json out = Json::object();
  out["symbol"] = "L(rho) mod (rho)";
  Json fields = Json::array();
  bool all = true;
  for (const auto& n : names) {
    const VField& x = job.field(n);
    Json fj = Json::object();
    fj["name"] = n;
    fj["type_1_0"] = is_type_1_0(x);
    const Poly res = tangency_residual(*job.hypersurface, x);
    fj["residual"] = to_text(res);
    fj["tangent"] = res.is_zero();
    fj["value_at_p"] = tangent_json(eval_field(x, job.point));
    all = all && res.is_zero();
    fields.push_back(std::move(fj));
  }
  out["fields"] = std::move(fields);
  out["all_tangent"] = all;
  return out;
}

Json task_levi(Params& p, const JobFile& job) {
  const auto first = p.text("section");
  const auto second = p.text("section2");
  const Frame frame = frame_of(job);
  const std::string xn = first ? *first : frame.names().front();
  const std::string yn = second ? *second : xn;
  const VField& x = section_of(job, frame, first);
  const VField& y = second ? job.field(*second) : x;
  const Hypersurface& h = frame.surface();
  Json out = Json::object();
  out["symbol"] = "λ(" + xn + "," + yn + ")";
  const Poly lf = levi_form(h, x, y);
  out["levi_form"] = to_text(lf);
  out["value_at_p"] = to_string(eval(lf, frame.base_point()));
  out["levi_form_bracket"] = to_text(h.reduce(levi_form_bracket(h, x, y)));
  out["trace"] = to_text(trace_levi(frame));
  return out;
}

Json task_bracket(Params& p, const JobFile& job) {
  const std::string text = p.required_text("word");
  const Frame frame = frame_of(job);
  const auto alphabet = frame.bracket_alphabet();
  Word w;
  for (const auto& letter : split(text, ',')) {
    auto it = std::find(alphabet.begin(), alphabet.end(), letter);
    if (it == alphabet.end()) bad("bracket: unknown letter '" + letter + "'");
    w.push_back(static_cast<std::size_t>(it - alphabet.begin()));
  }
  if (w.empty()) bad("bracket: empty word");
  const VField x = frame.system().reduce(expand_bracket_word(frame, w));
  Json out = Json::object();
  out["symbol"] = bracket_display(w, alphabet);
  out["word"] = letters_json(w, alphabet);
  out["field"] = field_json(x);
  out["value_at_p"] = tangent_json(eval_field(x, frame.base_point()));
  out["drho_pairing_at_p"] = to_string(eval(drho_pairing(frame.surface(), x), frame.base_point()));
  return out;
}

Json task_report(Params& p, const JobFile& job) {
  const long cutoff = p.integer("cutoff", 12);
  const long bound = p.integer("degree_bound", 16);
  const long seed = p.integer("seed", 1);
  Json out = Json::object();
  out["symbol"] = "report";
  if (job.hypersurface && (!job.frame.empty() || !job.fields.empty()) && !(job.system && job.system->mode == "real")) {
    const Frame frame = frame_of(job);
    const FullReport r = full_report(frame, job.curves, cutoff, bound, static_cast<std::uint64_t>(seed));
    out["commutator_type"] = commutator_json(frame, r.commutator);
    Json levi = Json::array();
    for (std::size_t k = 0; k < frame.fields().size(); ++k)
      levi.push_back(levi_type_json(frame, frame.names()[k], frame.fields()[k], cutoff));
    out["levi_type"] = std::move(levi);
    out["bundle_levi_type"] = bundle_json(frame, r.trace);
    Json contact = Json::array();
    for (const auto& [name, c] : r.contact) contact.push_back(contact_json(c, name));
    out["contact"] = std::move(contact);
  }
  Json tasks = Json::array();
  for (const auto& t : job.tasks) {
    if (t.type == "report") bad("tasks: a report task cannot be nested");
    tasks.push_back(execute(t.type, t.params, job));
  }
  out["tasks"] = std::move(tasks);
  return out;
}

}  // namespace

Json execute(const std::string& type, const Json& params, const JobFile& job) {
  Params p(params, type);
  Json body;
  if (type == "ttype") body = task_ttype(p, job);
  else if (type == "ctype") body = task_ctype(p, job);
  else if (type == "nu") body = task_nu(p, job);
  else if (type == "hormander") body = task_hormander(p, job);
  else if (type == "contact") body = task_contact(p, job);
  else if (type == "generic-z") body = task_generic_z(p, job);
  else if (type == "tangent-check") body = task_tangent_check(p, job);
  else if (type == "levi") body = task_levi(p, job);
  else if (type == "bracket") body = task_bracket(p, job);
  else if (type == "report") body = task_report(p, job);
  else bad("unknown task type '" + type + "'");
  Json out = Json::object();
  out["task"] = p.finish();
  return merge(out, body);
}

// ---------------------------------------------------------------------------
// Text rendering

namespace {

std::string scalar_text(const Json& j) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_array()) {
    std::string s = "(";
    for (std::size_t i = 0; i < j.size(); ++i) s += (i ? ", " : "") + scalar_text(j[i]);
    return s + ")";
  }
  return j.dump();
}

bool is_flat(const Json& j) {
  if (j.is_object()) return false;
  if (j.is_array())
    for (const auto& e : j)
      if (e.is_object() || e.is_array()) return false;
  return true;
}

void render_object(const Json& j, const std::string& indent, std::ostringstream& os);

void render_value(const std::string& key, const Json& v, const std::string& indent, std::ostringstream& os) {
  if (is_flat(v)) {
    os << indent << key << ": " << scalar_text(v) << "\n";
  } else if (v.is_object()) {
    os << indent << key << ":\n";
    render_object(v, indent + "  ", os);
  } else {
    os << indent << key << ":\n";
    for (std::size_t i = 0; i < v.size(); ++i) render_value("[" + std::to_string(i) + "]", v[i], indent + "  ", os);
  }
}

std::string headline(const Json& j) {
  if (!j.contains("symbol") || !j.contains("verdict")) return {};
  const std::string sym = j.at("symbol").get<std::string>();
  const std::string v = j.at("verdict").get<std::string>();
  if (v == "finite") return sym + " = " + std::to_string(j.at("value").get<long>());
  if (v == "at-least") return sym + " >= " + std::to_string(j.at("bound").get<long>()) + " (cutoff reached)";
  return sym + " = ∞ (definitive)";
}

void render_object(const Json& j, const std::string& indent, std::ostringstream& os) {
  const std::string head = headline(j);
  if (!head.empty()) os << indent << head << "\n";
  for (const auto& [key, v] : j.items()) {
    if (!head.empty() && (key == "symbol" || key == "verdict" || key == "value" || key == "bound")) continue;
    if (key == "task" || key == "witness" || key == "schema" || key == "tool") continue;
    render_value(key, v, indent + (head.empty() ? "" : "  "), os);
  }
}

}  // namespace

std::string render_text(const Json& result) {
  std::ostringstream os;
  if (result.contains("schema")) os << "# " << result.at("schema").get<std::string>() << ", " << result.at("tool").get<std::string>() << "\n";
  if (result.contains("task")) os << "# " << result.at("task").dump() << "\n";
  render_object(result, "", os);
  return os.str();
}

// ---------------------------------------------------------------------------
// Command line

namespace {

struct Options {
  std::string command;
  std::string job, system_file;
  std::string rho, vars, real_vars, point, params, curve, word, weights, f, section, section2;
  std::vector<std::string> fields;
  std::string generators, mode;
  bool rho_less = false;
  bool timing = false;
  std::optional<long> cutoff, degree_bound, max_length, trials;
  std::uint64_t seed = 1;
  bool seed_given = false;
  std::string format = "text";
};

Json read_document(const std::string& path) {
  std::ifstream in(path);
  if (!in) bad("cannot read job file '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    bad(path + ": " + e.what());
  }
}

/// Job document from --job/--system plus inline overrides.
Json job_document(const Options& o) {
  Json doc;
  if (!o.job.empty() && !o.system_file.empty()) bad("--job and --system are mutually exclusive");
  const std::string path = !o.job.empty() ? o.job : o.system_file;
  if (!path.empty()) {
    doc = read_document(path);
    if (!doc.is_object()) bad(path + ": expected a JSON object");
    if (!o.system_file.empty() && !doc.contains("system")) bad(path + ": no \"system\" declared");
  } else {
    doc = Json::object();
    doc["schema"] = job_schema;
  }
  if (!o.vars.empty() || !o.real_vars.empty()) {
    Json v = Json::object();
    if (!o.vars.empty()) v["holomorphic"] = split(o.vars, ',');
    if (!o.real_vars.empty()) v["real"] = split(o.real_vars, ',');
    doc["variables"] = v;
  }
  if (!doc.contains("variables")) bad("no variables declared (use --job, --system, --vars or --real-vars)");
  if (!o.point.empty()) doc["point"] = assignments(o.point, "--point");
  if (!o.rho.empty()) {
    Json h = Json::object();
    h["rho"] = o.rho;
    doc["hypersurface"] = h;
  }
  if (o.rho_less) doc.erase("hypersurface");
  if (!o.fields.empty()) {
    if (!doc.contains("fields")) doc["fields"] = Json::object();
    for (const auto& spec : o.fields) {
      const auto colon = spec.find(':');
      if (colon == std::string::npos) bad("--field: expected NAME: var=expr, ...");
      doc["fields"][trim(spec.substr(0, colon))] = assignments(spec.substr(colon + 1), "--field");
    }
    if (o.generators.empty() && path.empty()) {
      Json names = Json::array();
      for (const auto& spec : o.fields) names.push_back(trim(spec.substr(0, spec.find(':'))));
      doc["frame"] = names;
    }
  }
  // --mode alone (or inline fields without a hypersurface) makes the
  // inline fields the system generators.
  std::vector<std::string> gens = split(o.generators, ',');
  if (gens.empty() && doc.contains("frame") && (!o.mode.empty() || !doc.contains("hypersurface")))
    gens = doc["frame"].get<std::vector<std::string>>();
  if (!gens.empty()) {
    Json s = Json::object();
    s["mode"] = o.mode.empty() ? "real" : o.mode;
    s["generators"] = gens;
    doc["system"] = s;
  }
  if (o.command == "contact" && !o.params.empty()) {
    Json c = Json::object();
    c["name"] = "curve";
    c["params"] = split(o.params, ',');
    c["map"] = assignments(o.curve, "--curve");
    if (!doc.contains("curves")) doc["curves"] = Json::array();
    doc["curves"].push_back(c);
  }
  return doc;
}

Json task_params(const Options& o) {
  Json p = Json::object();
  if (o.cutoff) p["cutoff"] = *o.cutoff;
  if (!o.f.empty()) p["f"] = o.f;
  if (!o.section.empty()) p["section"] = o.section;
  if (!o.section2.empty()) p["section2"] = o.section2;
  if (!o.word.empty()) p["word"] = o.word;
  if (!o.weights.empty()) p["weights"] = o.weights;
  if (o.degree_bound) p["degree_bound"] = *o.degree_bound;
  if (o.max_length) p["max_length"] = *o.max_length;
  if (o.trials) p["trials"] = *o.trials;
  if (o.seed_given) p["seed"] = static_cast<long>(o.seed);
  if (o.command == "contact" && !o.curve.empty()) p["curve"] = o.params.empty() ? o.curve : "curve";
  return p;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact CR type invariants and vanishing orders along vector field systems", tool_name};
  Options o;
  app.add_option("command", o.command, "Task to run")->required()->check(CLI::IsMember(commands()));
  app.add_option("--job", o.job, "Job file (JSON, schema crtype-job/1)");
  app.add_option("--system", o.system_file, "Job file that declares a vector field system");
  app.add_flag("--rho-less", o.rho_less, "Ignore any hypersurface in the job");
  app.add_option("--rho", o.rho, "Defining function");
  app.add_option("--vars", o.vars, "Holomorphic variables, comma separated");
  app.add_option("--real-vars", o.real_vars, "Real variables, comma separated");
  app.add_option("--field", o.fields, "Vector field 'NAME: var=expr, ...' (repeatable)");
  app.add_option("--generators", o.generators, "System generators, comma separated field names");
  app.add_option("--mode", o.mode, "System mode")->check(CLI::IsMember({"real", "cr"}));
  app.add_option("--point", o.point, "Base point 'var=value, ...'");
  app.add_option("--f", o.f, "Function for nu and generic-z");
  app.add_option("--cutoff", o.cutoff, "Search cutoff");
  app.add_option("--section", o.section, "Frame section for ctype, levi, tangent-check");
  app.add_option("--section2", o.section2, "Second section for levi");
  app.add_option("--curve", o.curve, "Curve name, or 'var=expr, ...' with --params");
  app.add_option("--params", o.params, "Curve parameters, comma separated");
  app.add_option("--degree-bound", o.degree_bound, "Contact order degree bound");
  app.add_option("--max-length", o.max_length, "Filtration maximum bracket length");
  app.add_option("--trials", o.trials, "Generic reduction trials");
  app.add_option("--word", o.word, "Bracket word, letters outermost first, comma separated");
  app.add_option("--weights", o.weights, "Weights 'var=n, ...' (n positive or inf)");
  app.add_option("--seed", o.seed, "Seed for randomized tasks (default 1)");
  app.add_option("--format", o.format, "Output format")->check(CLI::IsMember({"text", "json"}));
  app.add_flag("--timing", o.timing, "Include wall-clock timing in the report");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  o.seed_given = app.get_option("--seed")->count() > 0;

  try {
    const JobFile job = parse_job(job_document(o));
    const auto t0 = std::chrono::steady_clock::now();
    Json result = execute(o.command, task_params(o), job);
    Json report = Json::object();
    report["schema"] = report_schema;
    report["tool"] = std::string(tool_name) + " " + tool_version;
    report = merge(report, result);
    if (o.timing)
      report["timing_ms"] = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    if (o.format == "json") {
      out << report.dump(2) << "\n";
    } else {
      out << render_text(report);
    }
    return 0;
  } catch (const InvariantError& e) {
    err << "internal invariant violated: " << e.what() << "\n";
    return 3;
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return 3;
  }
}

}  // namespace crtype::cli
