#pragma once

#include <optional>
#include <vector>

#include "crtype/vfield.hpp"

namespace crtype {

/// Graph structure rho = sign * (w + wbar) + psi with psi free of w, wbar.
struct RigidGraph {
  VarIndex w;
  int sign;
  Poly psi;
};

/// Real hypersurface {rho = 0} with a base point on it.
class Hypersurface {
 public:
  /// Validates: rho real, rho(base) = 0, d rho(base) != 0. If `rigid` is
  /// given it must reproduce rho; otherwise a rigid structure is detected
  /// when one exists.
  static Hypersurface make(Poly rho, Point base, std::optional<RigidGraph> rigid = std::nullopt);

  const Poly& rho() const { return rho_; }
  const Point& base_point() const { return base_; }
  const std::optional<RigidGraph>& rigid() const { return rigid_; }
  const VarTablePtr& table() const { return rho_.table(); }

  /// Canonical representative of f modulo (rho): wbar eliminated through
  /// wbar = -w - sign*psi. Identity when the hypersurface is not rigid.
  Poly reduce(const Poly& f) const;

  /// The same hypersurface in coordinates centred at the base point.
  Hypersurface centered() const;

  /// For a rigid hypersurface, the point on M over the given holomorphic
  /// coordinates (w chosen real). The w entry of `z` is ignored.
  Point lift(const Point& z) const;

 private:
  Hypersurface(Poly rho, Point base, std::optional<RigidGraph> rigid)
      : rho_(std::move(rho)), base_(std::move(base)), rigid_(std::move(rigid)) {}

  Poly rho_;
  Point base_;
  std::optional<RigidGraph> rigid_;
};

/// Finds w, sign with rho = sign*(w+wbar) + psi(other variables), if any.
std::optional<RigidGraph> detect_rigid(const Poly& rho);

/// -(1/2) (sum_j rho_{z_j} V_{z_j} - sum_j rho_{zbar_j} V_{zbar_j}).
Poly theta_pairing(const Hypersurface& h, const VField& v);
/// sum_j rho_{z_j} V_{z_j}.
Poly drho_pairing(const Hypersurface& h, const VField& v);
/// V - conj(V) with V = sum_j rho_{zbar_j} d/dz_j.
VField contact_field(const Hypersurface& h);
/// Hessian form sum_{j,l} rho_{z_j zbar_l} X_{z_j} conj(Y_{z_l}).
/// Throws InputError unless both fields are of type (1,0).
Poly levi_form(const Hypersurface& h, const VField& x, const VField& y);

/// theta([X, conj(Y)]) = levi_kappa * levi_form(X, Y) modulo (rho).
inline constexpr long levi_kappa = -1;

/// theta([X, conj(Y)]). Throws InputError unless both fields are tangent.
Poly levi_form_bracket(const Hypersurface& h, const VField& x, const VField& y);

/// V(rho), reduced modulo (rho) when the hypersurface is rigid.
/// Identically zero iff V is tangent.
Poly tangency_residual(const Hypersurface& h, const VField& v);
bool is_tangent(const Hypersurface& h, const VField& v);

enum class PseudoconvexVerdict { PlausiblyPseudoconvex, NotPseudoconvex, Inconclusive };

struct PseudoconvexSample {
  Point point;
  /// Exact pivots of the restricted Levi matrix (Hermitian LDL*).
  std::vector<Rat> pivots;
  /// Floating-point estimates of the extreme restricted eigenvalues.
  double min_eigenvalue = 0;
  double max_eigenvalue = 0;
};

struct PseudoconvexityReport {
  std::vector<PseudoconvexSample> samples;
  PseudoconvexVerdict verdict = PseudoconvexVerdict::Inconclusive;
  /// Sign of rho that makes the sampled forms semidefinite.
  int orientation = 1;
  /// Exact certificates: a (1,0) vector in ker(d rho) at a sample point
  /// with strictly negative (resp. positive) Levi value. NotPseudoconvex
  /// carries both.
  struct Witness {
    Point point;
    std::vector<CRat> vector;  // indexed like VarTable::holomorphic()
    Rat value;
  };
  std::optional<Witness> negative;
  std::optional<Witness> positive;
};

/// Sampled diagnostic, never a proof. Every sample must satisfy rho = 0
/// exactly. Any exact sign-indefiniteness across the samples gives
/// NotPseudoconvex. Samples whose restricted eigenvalue estimates all lie
/// within `tolerance` of zero are treated as degenerate; no samples, or
/// only degenerate ones, give Inconclusive.
PseudoconvexityReport pseudoconvexity_sample(const Hypersurface& h, const std::vector<Point>& samples,
                                             const Rat& tolerance);

/// Deterministic on-surface sample points near the base point (rigid
/// hypersurfaces only; otherwise just the base point).
std::vector<Point> sample_points(const Hypersurface& h, unsigned long long seed, std::size_t count);

const char* to_string(PseudoconvexVerdict v);

}  // namespace crtype
