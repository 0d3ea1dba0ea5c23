#include "crtype/hypersurface.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>

#include "crtype/error.hpp"
#include "crtype/random.hpp"

namespace crtype {

std::optional<RigidGraph> detect_rigid(const Poly& rho) {
  const auto& t = *rho.table();
  for (VarIndex w : t.holomorphic()) {
    VarIndex wbar = t.partner(w);
    Monomial mw(t.size()), mwbar(t.size());
    mw.exps[w] = 1;
    mwbar.exps[wbar] = 1;
    Poly psi(rho.table());
    std::optional<CRat> cw, cwbar;
    bool ok = true;
    for (const auto& [m, c] : rho.terms()) {
      if (m == mw) {
        cw = c;
      } else if (m == mwbar) {
        cwbar = c;
      } else if (m.exps[w] != 0 || m.exps[wbar] != 0) {
        ok = false;
        break;
      } else {
        psi.add_term(m, c);
      }
    }
    if (!ok || !cw || !cwbar || !(*cw == *cwbar)) continue;
    if (*cw == CRat(1) || *cw == CRat(-1)) {
      int sign = *cw == CRat(1) ? 1 : -1;
      return RigidGraph{w, sign, std::move(psi)};
    }
  }
  return std::nullopt;
}

namespace {

Poly rigid_linear_part(const RigidGraph& g, const VarTablePtr& t) {
  Poly lin = Poly::variable(t, g.w) + Poly::variable(t, t->partner(g.w));
  return lin * CRat(static_cast<long>(g.sign));
}

}  // namespace

Hypersurface Hypersurface::make(Poly rho, Point base, std::optional<RigidGraph> rigid) {
  if (!compatible(rho.table(), base.table())) throw TableMismatch();
  if (!is_real(rho)) throw InputError("defining function is not real-valued");
  if (!eval(rho, base).is_zero()) throw InputError("base point does not lie on the hypersurface");
  bool nondegenerate = false;
  for (VarIndex v = 0; v < rho.table()->size() && !nondegenerate; ++v)
    nondegenerate = !eval(partial(rho, v), base).is_zero();
  if (!nondegenerate) throw InputError("d rho vanishes at the base point");
  if (rigid) {
    if (rigid->sign != 1 && rigid->sign != -1) throw InputError("rigid sign must be +1 or -1");
    if (rigid->psi.depends_on(rigid->w) || rigid->psi.depends_on(rho.table()->partner(rigid->w)))
      throw InputError("rigid psi must not involve w");
    if (!(rigid_linear_part(*rigid, rho.table()) + rigid->psi == rho))
      throw InputError("rigid structure does not reproduce rho");
  } else {
    rigid = detect_rigid(rho);
  }
  return Hypersurface(std::move(rho), std::move(base), std::move(rigid));
}

Poly Hypersurface::reduce(const Poly& f) const {
  if (!rigid_) return f;
  const auto& t = table();
  // sign*(w + wbar) + psi = 0  =>  wbar = -w - sign*psi
  Poly wbar = -Poly::variable(t, rigid_->w) - rigid_->psi * CRat(static_cast<long>(rigid_->sign));
  return substitute(f, t->partner(rigid_->w), wbar);
}

Hypersurface Hypersurface::centered() const {
  if (is_origin(base_)) return *this;
  const auto& t = table();
  std::optional<RigidGraph> g;
  if (rigid_) {
    CRat pw = *base_.value(rigid_->w);
    Poly psi = translate(rigid_->psi, base_) + Poly::constant(t, CRat(static_cast<long>(rigid_->sign)) * (pw + pw.conj()));
    g = RigidGraph{rigid_->w, rigid_->sign, std::move(psi)};
  }
  return make(translate(rho_, base_), Point::origin(t), std::move(g));
}

Point Hypersurface::lift(const Point& z) const {
  if (!rigid_) throw InputError("lift needs a rigid hypersurface");
  Point p = z;
  p.set(rigid_->w, CRat());
  CRat psi = eval(rigid_->psi, p);
  if (!psi.is_real()) throw InvariantError("psi is not real at a sample point");
  p.set(rigid_->w, CRat(Rat(-psi.re * rigid_->sign / 2)));
  return p;
}

Poly theta_pairing(const Hypersurface& h, const VField& v) {
  if (!compatible(h.table(), v.table())) throw TableMismatch();
  const auto& t = *h.table();
  Poly sum(h.table());
  for (VarIndex z : t.holomorphic()) {
    sum += partial(h.rho(), z) * v.coeff(z);
    sum -= partial(h.rho(), t.partner(z)) * v.coeff(t.partner(z));
  }
  return sum * CRat(Rat(-1, 2));
}

Poly drho_pairing(const Hypersurface& h, const VField& v) {
  if (!compatible(h.table(), v.table())) throw TableMismatch();
  Poly sum(h.table());
  for (VarIndex z : h.table()->holomorphic()) sum += partial(h.rho(), z) * v.coeff(z);
  return sum;
}

VField contact_field(const Hypersurface& h) {
  const auto& t = h.table();
  VField v(t);
  for (VarIndex z : t->holomorphic()) v.set_coeff(z, partial(h.rho(), t->partner(z)));
  return v - conj_field(v);
}

Poly levi_form(const Hypersurface& h, const VField& x, const VField& y) {
  if (!compatible(h.table(), x.table()) || !compatible(h.table(), y.table())) throw TableMismatch();
  if (!is_type_1_0(x) || !is_type_1_0(y)) throw InputError("Levi form needs fields of type (1,0)");
  const auto& t = *h.table();
  Poly sum(h.table());
  for (VarIndex zj : t.holomorphic()) {
    if (x.coeff(zj).is_zero()) continue;
    Poly rho_j = partial(h.rho(), zj);
    for (VarIndex zl : t.holomorphic()) {
      if (y.coeff(zl).is_zero()) continue;
      Poly hess = partial(rho_j, t.partner(zl));
      if (hess.is_zero()) continue;
      sum += hess * x.coeff(zj) * conj(y.coeff(zl));
    }
  }
  return sum;
}

Poly tangency_residual(const Hypersurface& h, const VField& v) { return h.reduce(apply(v, h.rho())); }

bool is_tangent(const Hypersurface& h, const VField& v) { return tangency_residual(h, v).is_zero(); }

Poly levi_form_bracket(const Hypersurface& h, const VField& x, const VField& y) {
  if (!is_tangent(h, x) || !is_tangent(h, y)) throw InputError("bracket Levi form needs tangent fields");
  return theta_pairing(h, bracket(x, conj_field(y)));
}

// ---------------------------------------------------------------------------
// Pseudoconvexity sampling

namespace {

using CVec = std::vector<CRat>;
using CMat = std::vector<std::vector<CRat>>;

/// lambda(a, b) = sum_{j,l} H_{jl} a_j conj(b_l)
CRat form(const CMat& hess, const CVec& a, const CVec& b) {
  CRat s;
  for (std::size_t j = 0; j < a.size(); ++j) {
    if (a[j].is_zero()) continue;
    for (std::size_t l = 0; l < b.size(); ++l)
      if (!b[l].is_zero()) s += hess[j][l] * a[j] * b[l].conj();
  }
  return s;
}

CVec axpy(const CVec& x, const CRat& alpha, const CVec& y) {
  CVec out = x;
  for (std::size_t i = 0; i < x.size(); ++i) out[i] += alpha * y[i];
  return out;
}

struct Definiteness {
  std::vector<Rat> pivots;
  std::optional<CVec> negative;  // vector with form value < 0
};

/// Hermitian LDL* on the restriction of `hess` to span(basis), looking for
/// an exact negative direction.
Definiteness find_negative(const CMat& hess, std::vector<CVec> basis) {
  Definiteness out;
  for (std::size_t k = 0; k < basis.size(); ++k) {
    Rat d = form(hess, basis[k], basis[k]).re;
    if (sgn(d) < 0) {
      out.negative = basis[k];
      return out;
    }
    if (sgn(d) == 0) {
      for (std::size_t j = k + 1; j < basis.size(); ++j) {
        CRat a = form(hess, basis[k], basis[j]);
        if (a.is_zero()) continue;
        Rat ajj = form(hess, basis[j], basis[j]).re;
        CRat eps = sgn(ajj) > 0 ? CRat(Rat(1 / ajj)) : CRat(1);
        out.negative = axpy(basis[k], -(eps * a), basis[j]);
        return out;
      }
      out.pivots.push_back(d);
      continue;
    }
    out.pivots.push_back(d);
    for (std::size_t j = k + 1; j < basis.size(); ++j) {
      CRat mu = form(hess, basis[j], basis[k]) / CRat(d);
      basis[j] = axpy(basis[j], -mu, basis[k]);
    }
  }
  return out;
}

std::pair<double, double> eigen_range(const CMat& hess, const CVec& grad) {
  const auto n = static_cast<Eigen::Index>(grad.size());
  using Mat = Eigen::MatrixXcd;
  auto to_c = [](const CRat& c) { return std::complex<double>(c.re.get_d(), c.im.get_d()); };
  Mat g(1, n), h(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    g(0, j) = to_c(grad[j]);
    for (Eigen::Index l = 0; l < n; ++l) h(j, l) = to_c(hess[j][l]);
  }
  Mat kernel = Eigen::FullPivLU<Mat>(g).kernel();
  if (kernel.cols() == 0) return {0.0, 0.0};
  Mat q = Eigen::HouseholderQR<Mat>(kernel).householderQ() * Mat::Identity(n, kernel.cols());
  Mat r = q.transpose() * h * q.conjugate();
  Eigen::SelfAdjointEigenSolver<Mat> solver(r, Eigen::EigenvaluesOnly);
  return {solver.eigenvalues().minCoeff(), solver.eigenvalues().maxCoeff()};
}

}  // namespace

PseudoconvexityReport pseudoconvexity_sample(const Hypersurface& h, const std::vector<Point>& samples,
                                             const Rat& tolerance) {
  const auto& t = *h.table();
  const auto zs = t.holomorphic();
  const auto n = zs.size();
  PseudoconvexityReport report;
  bool any_nondegenerate = false;

  for (const auto& p : samples) {
    if (!compatible(p.table(), h.table())) throw TableMismatch();
    if (!eval(h.rho(), p).is_zero()) throw InputError("sample point is off the hypersurface");
    CVec grad(n);
    CMat hess(n, CVec(n)), neg_hess(n, CVec(n));
    for (std::size_t j = 0; j < n; ++j) {
      Poly rj = partial(h.rho(), zs[j]);
      grad[j] = eval(rj, p);
      for (std::size_t l = 0; l < n; ++l) {
        hess[j][l] = eval(partial(rj, t.partner(zs[l])), p);
        neg_hess[j][l] = -hess[j][l];
      }
    }
    auto pivot = std::find_if(grad.begin(), grad.end(), [](const CRat& c) { return !c.is_zero(); });
    if (pivot == grad.end()) throw InputError("d rho has no (1,0) part at a sample point");
    const std::size_t k = static_cast<std::size_t>(pivot - grad.begin());
    std::vector<CVec> basis;
    for (std::size_t j = 0; j < n; ++j) {
      if (j == k) continue;
      CVec e(n);
      e[j] = CRat(1);
      e[k] = -(grad[j] / grad[k]);
      basis.push_back(std::move(e));
    }

    PseudoconvexSample sample{p, {}, 0.0, 0.0};
    Definiteness plus = find_negative(hess, basis);
    sample.pivots = plus.pivots;
    std::tie(sample.min_eigenvalue, sample.max_eigenvalue) = eigen_range(hess, grad);
    const double tol = tolerance.get_d();
    if (std::abs(sample.min_eigenvalue) > tol || std::abs(sample.max_eigenvalue) > tol) any_nondegenerate = true;

    if (plus.negative && !report.negative) {
      Rat value = form(hess, *plus.negative, *plus.negative).re;
      if (sgn(value) >= 0) throw InvariantError("negative Levi witness failed to re-verify");
      report.negative = PseudoconvexityReport::Witness{p, *plus.negative, value};
    }
    if (!report.positive) {
      Definiteness minus = find_negative(neg_hess, basis);
      if (minus.negative) {
        Rat value = form(hess, *minus.negative, *minus.negative).re;
        if (sgn(value) <= 0) throw InvariantError("positive Levi witness failed to re-verify");
        report.positive = PseudoconvexityReport::Witness{p, *minus.negative, value};
      }
    }
    report.samples.push_back(std::move(sample));
  }

  if (report.negative && report.positive) {
    report.verdict = PseudoconvexVerdict::NotPseudoconvex;
  } else if (samples.empty() || (!any_nondegenerate && !report.negative && !report.positive)) {
    report.verdict = PseudoconvexVerdict::Inconclusive;
  } else {
    report.verdict = PseudoconvexVerdict::PlausiblyPseudoconvex;
    report.orientation = report.negative ? -1 : 1;
  }
  return report;
}

std::vector<Point> sample_points(const Hypersurface& h, unsigned long long seed, std::size_t count) {
  std::vector<Point> out{h.base_point()};
  if (!h.rigid()) return out;
  Rng rng(seed);
  const auto& t = h.table();
  while (out.size() < count) {
    Point p = h.base_point();
    for (VarIndex z : t->holomorphic()) {
      if (z == h.rigid()->w) continue;
      Rat re(rng.uniform(-4, 4), 4), im(rng.uniform(-4, 4), 4);
      re.canonicalize();
      im.canonicalize();
      CRat offset(re, im);
      p.set(z, *h.base_point().value(z) + offset);
    }
    out.push_back(h.lift(p));
  }
  return out;
}

const char* to_string(PseudoconvexVerdict v) {
  switch (v) {
    case PseudoconvexVerdict::PlausiblyPseudoconvex:
      return "plausibly-pseudoconvex";
    case PseudoconvexVerdict::NotPseudoconvex:
      return "not-pseudoconvex";
    case PseudoconvexVerdict::Inconclusive:
      return "inconclusive";
  }
  return "inconclusive";
}

}  // namespace crtype
