#pragma once

#include <string>
#include <vector>

#include "crtype/random.hpp"
#include "crtype/vanishing.hpp"

namespace crtype {

/// A real system in normal form together with its weights.
struct ModelSystem {
  std::string name;
  VFSystem system;
  Weights weights;
};

/// X = d/dx, Y = d/dy + x d/ds; wt(s) = 2.
ModelSystem heisenberg_model();
/// X = d/dx, Y = d/dy + x^2 d/ds; wt(s) = 3.
ModelSystem martinet_model();
/// X = d/dx, Y = d/dy + x d/ds + x^2 d/du; wt(s) = 2, wt(u) = 3.
ModelSystem engel_model();

/// Adds a few random real terms c * m * d/dv of weighted degree
/// wt(m) - wt(v) in [0, 2] to each generator. The result stays in normal
/// form with the same weights.
ModelSystem perturb(const ModelSystem& model, Rng& rng);

struct RandomPolyOptions {
  std::vector<VarIndex> vars;
  std::size_t min_terms = 1;
  std::size_t max_terms = 3;
  unsigned max_exponent = 2;
  unsigned max_total_degree = 4;
  bool real_coefficients = true;
  bool allow_constant = false;
};

/// Random nonzero polynomial with small rational coefficients.
Poly random_poly(const VarTablePtr& table, Rng& rng, const RandomPolyOptions& opt);

/// rho = -(w + wbar) + sum_i |h_i(z)|^2 with holomorphic h_i vanishing at 0;
/// pseudoconvex, rigid, base point 0.
struct PseudoconvexModel {
  Hypersurface surface;
  /// d/dz_k + psi_{z_k} d/dw, a (1,0) tangent frame of the whole T^{1,0}M.
  std::vector<VField> sections;
};

PseudoconvexModel pseudoconvex_model(Rng& rng, std::size_t z_count);
/// rho = -(w + wbar) + sum_i |h_i|^2 for the given holomorphic h_i over a
/// table whose holomorphic variables are z_1..z_k, w.
PseudoconvexModel pseudoconvex_model(const VarTablePtr& table, const std::vector<Poly>& h);

/// sum_k c_k * sections[k].
VField combine(const PseudoconvexModel& m, const std::vector<Poly>& c);

}  // namespace crtype
