#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "crtype/hypersurface.hpp"
#include "crtype/result.hpp"

namespace crtype {

enum class SystemMode { Real, CR };

/// Generators X_1..X_r with a base point. In CR mode the caller supplies
/// L_1..L_s and the conjugates are appended, giving letters
/// L_1..L_s, conj(L_1)..conj(L_s).
class VFSystem {
 public:
  /// Validates: generators independent at the base point; self-conjugate in
  /// real mode. `names` label the supplied generators (conjugates get the
  /// suffix "bar"). When `surface` is given, every derivative and bracket
  /// is reduced modulo its rigid relation and the full tangent dimension is
  /// that of the hypersurface.
  static VFSystem make(std::vector<VField> generators, std::vector<std::string> names, Point base, SystemMode mode,
                       std::optional<Hypersurface> surface = std::nullopt);

  const std::vector<VField>& generators() const { return generators_; }
  const std::vector<std::string>& names() const { return names_; }
  const Point& base_point() const { return base_; }
  SystemMode mode() const { return mode_; }
  const VarTablePtr& table() const { return base_.table(); }
  const std::optional<Hypersurface>& surface() const { return surface_; }
  /// Real dimension of the tangent space the filtration tries to fill.
  std::size_t tangent_dimension() const;

  /// The same system written around its base point (which becomes 0).
  VFSystem centered() const;

  Poly reduce(const Poly& f) const { return surface_ ? surface_->reduce(f) : f; }
  VField reduce(const VField& x) const;

 private:
  VFSystem(std::vector<VField> generators, std::vector<std::string> names, Point base, SystemMode mode,
           std::optional<Hypersurface> surface)
      : generators_(std::move(generators)),
        names_(std::move(names)),
        base_(std::move(base)),
        mode_(mode),
        surface_(std::move(surface)) {}

  std::vector<VField> generators_;
  std::vector<std::string> names_;
  Point base_;
  SystemMode mode_;
  std::optional<Hypersurface> surface_;
};

/// Vanishing order of f along the system: the least m with some word
/// X_{i_m}...X_{i_1}(f)(p) != 0. Witness is the lex-first such word in
/// generator order, outermost (last applied) letter first.
OrderResult nu(const VFSystem& sys, const Poly& f, long cutoff = 10);

/// Re-expands a closure certificate and checks every condition.
bool verify_closure(const VFSystem& sys, const Poly& f, const ClosureCertificate& cert);
/// Re-expands a finite witness; returns its value at the base point.
CRat eval_derivative_word(const VFSystem& sys, const Poly& f, const Word& word);

enum class FiltrationStop { FullSpan, MaxLength, Closed };

struct FiltrationLevel {
  long length;               // Hörmander number m_j
  std::size_t multiplicity;  // l_j
  std::vector<Word> representatives;
  std::vector<VField> fields;
};

struct HormanderData {
  std::size_t base_rank = 0;  // dim E_0
  std::vector<FiltrationLevel> levels;
  std::vector<std::size_t> dims;  // dim E_0, dim E_1, ...
  FiltrationStop stop = FiltrationStop::MaxLength;
  std::vector<std::string> alphabet;

  bool finite_type() const { return stop == FiltrationStop::FullSpan; }
  std::vector<long> numbers() const;
  std::vector<std::size_t> multiplicities() const;
};

/// Pointwise filtration by left-normed brackets. Innermost pairs are
/// canonical [X_a, X_b] with a < b.
HormanderData hormander_filtration(const VFSystem& sys, long max_length = 8);

struct WeightedOrder {
  ExtInt value;
  std::string caveat;
};
/// Weighted order of f; equals the vanishing order only for a system in
/// normal form with respect to these weights.
WeightedOrder nu_weighted(const Poly& f, const Weights& w);

/// Z = sum_{j,q} (1/m_j) t_{j,q} L(x)^{m_j - 1} Y_{j,q}, L(x) = sum a_k x_k,
/// with m_0 = 1 and Y_{0,q} = X_q. Real mode only; requires X_k(p) = d/dx_k
/// for a real coordinate x_k. `t` lists level 0 first.
VField generic_z(const VFSystem& sys, const HormanderData& hd, const std::vector<Rat>& a,
                 const std::vector<Rat>& t);

/// Least l with Z^l(f)(p) != 0.
OrderResult nu_single(const VField& z, const Poly& f, const Point& p, long cutoff = 10);

struct GenericTrial {
  std::vector<Rat> a;
  std::vector<Rat> t;
  OrderResult nu_z;
  bool agrees = false;
};

struct GenericAgreement {
  OrderResult nu_d;
  std::size_t trials = 0;
  std::size_t first_sample_agreements = 0;
  std::size_t agreements_within_retries = 0;
  /// Every sampled (a, t), including retries, in order.
  std::vector<GenericTrial> samples;
  bool agree() const { return agreements_within_retries == trials; }
};

inline constexpr int generic_retry_budget = 3;

/// Samples (a, t) with numerators in [-9, 9] and denominators in {1, 2, 3},
/// rejecting all-zero vectors, and compares nu_Z with nu_D.
GenericAgreement check_generic_reduction(const VFSystem& sys, const Poly& f, std::size_t trials, long cutoff,
                                         std::uint64_t seed);

struct SuiteResult {
  std::string name;
  std::size_t passed = 0;
  std::size_t total = 0;
  std::vector<std::string> failures;
  bool ok() const { return passed == total; }
};

struct SuiteCounts {
  std::size_t multiplicativity = 200;
  std::size_t evenness = 100;
  std::size_t monotonicity = 100;
  std::size_t schwarz = 50;
};

/// Randomized exact checks of multiplicativity, evenness for non-negative
/// functions, monotonicity, and the Schwarz bound for Levi forms.
std::vector<SuiteResult> property_suites(std::uint64_t seed, const SuiteCounts& counts = {});

}  // namespace crtype
