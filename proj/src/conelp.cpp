/**
 * @file conelp.cpp
 * @license BSD-3-Clause
 * @copyright Copyright (c) 2026, Momentum Planner Developers.
 *
 * Homogeneous self-dual interior-point method.  Notation follows the
 * standard cone-LP literature: the embedding augments (x, y, z, s) with
 * (tau, kappa); tau > 0 at convergence recovers an optimal pair, kappa > 0
 * yields an infeasibility certificate.  Search directions come from one
 * sparse quasi-definite KKT factorization per iteration (static
 * regularization + iterative refinement), used for three right-hand sides.
 */

#include "momplan/conelp.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>

namespace momplan {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// ---------------------------------------------------------------------------
// Jordan-algebra helpers over K = R+^l x SOC(q1) x ... x SOC(qk).
// All functions walk the block structure in `dims`.
// ---------------------------------------------------------------------------

// Distance of u from the cone boundary: min over blocks of the margin
// (u_i for orthant rows, u0 - ||u_tail|| for each SOC).
double coneMargin(const Eigen::VectorXd& u, const ConeDims& dims) {
  double margin = kInf;
  for (Eigen::Index i = 0; i < dims.nonneg; ++i) margin = std::min(margin, u[i]);
  Eigen::Index off = dims.nonneg;
  for (Eigen::Index d : dims.soc) {
    margin = std::min(margin, u[off] - u.segment(off + 1, d - 1).norm());
    off += d;
  }
  return margin;
}

Eigen::VectorXd coneIdentity(const ConeDims& dims) {
  Eigen::VectorXd e = Eigen::VectorXd::Zero(dims.total());
  e.head(dims.nonneg).setOnes();
  Eigen::Index off = dims.nonneg;
  for (Eigen::Index d : dims.soc) {
    e[off] = 1.0;
    off += d;
  }
  return e;
}

Eigen::VectorXd jordanProduct(const Eigen::VectorXd& u,
                              const Eigen::VectorXd& v,
                              const ConeDims& dims) {
  Eigen::VectorXd out(dims.total());
  out.head(dims.nonneg) =
      u.head(dims.nonneg).cwiseProduct(v.head(dims.nonneg));
  Eigen::Index off = dims.nonneg;
  for (Eigen::Index d : dims.soc) {
    const auto ub = u.segment(off, d), vb = v.segment(off, d);
    out[off] = ub.dot(vb);
    out.segment(off + 1, d - 1) =
        ub[0] * vb.tail(d - 1) + vb[0] * ub.tail(d - 1);
    off += d;
  }
  return out;
}

// Solves lambda o u = d for u (lambda in the cone interior).
Eigen::VectorXd jordanDivide(const Eigen::VectorXd& lambda,
                             const Eigen::VectorXd& d, const ConeDims& dims) {
  Eigen::VectorXd out(dims.total());
  out.head(dims.nonneg) =
      d.head(dims.nonneg).cwiseQuotient(lambda.head(dims.nonneg));
  Eigen::Index off = dims.nonneg;
  for (Eigen::Index q : dims.soc) {
    const auto lb = lambda.segment(off, q), db = d.segment(off, q);
    const double l0 = lb[0];
    const auto lt = lb.tail(q - 1);
    const double det = l0 * l0 - lt.squaredNorm();
    const double u0 = (l0 * db[0] - lt.dot(db.tail(q - 1))) / det;
    out[off] = u0;
    out.segment(off + 1, q - 1) = (db.tail(q - 1) - u0 * lt) / l0;
    off += q;
  }
  return out;
}

// Largest alpha >= 0 with u + alpha du in K (u strictly inside K).
double maxStep(const Eigen::VectorXd& u, const Eigen::VectorXd& du,
               const ConeDims& dims) {
  double alpha = kInf;
  for (Eigen::Index i = 0; i < dims.nonneg; ++i)
    if (du[i] < 0.0) alpha = std::min(alpha, -u[i] / du[i]);
  Eigen::Index off = dims.nonneg;
  for (Eigen::Index q : dims.soc) {
    const auto ub = u.segment(off, q), db = du.segment(off, q);
    const auto ut = ub.tail(q - 1);
    const auto dt = db.tail(q - 1);
    // f(a) = (u0 + a d0)^2 - ||ut + a dt||^2 must stay >= 0, t part >= 0.
    const double c2 = db[0] * db[0] - dt.squaredNorm();
    const double c1 = ub[0] * db[0] - ut.dot(dt);
    const double c0 = ub[0] * ub[0] - ut.squaredNorm();
    double root = kInf;
    const double disc = c1 * c1 - c2 * c0;
    if (std::abs(c2) < 1e-300) {
      if (c1 < 0.0) root = -c0 / (2.0 * c1);
    } else if (c2 > 0.0) {
      if (disc > 0.0) {
        const double r = (-c1 - std::sqrt(disc)) / c2;
        if (r > 0.0) root = r;
      }
    } else {  // c2 < 0: one positive crossing
      root = (-c1 - std::sqrt(std::max(disc, 0.0))) / c2;
      if (root < 0.0) root = kInf;
    }
    alpha = std::min(alpha, root);
    if (db[0] < 0.0) alpha = std::min(alpha, -ub[0] / db[0]);
    off += q;
  }
  return alpha;
}

}  // namespace

Eigen::Index ConeDims::total() const {
  Eigen::Index t = nonneg;
  for (Eigen::Index d : soc) t += d;
  return t;
}

Eigen::Index ConeDims::degree() const {
  return nonneg + static_cast<Eigen::Index>(soc.size());
}

// Nesterov-Todd scaling: W z = W^{-1} s = lambda for the current pair.
struct ConeLpSolver::Scaling {
  Eigen::VectorXd orthant_w2;  // s_i / z_i on the orthant block
  struct Soc {
    double eta2 = 1.0;               // eta^2
    Eigen::VectorXd wbar;            // hyperbolic-unit scaling point
  };
  std::vector<Soc> socs;
  Eigen::VectorXd lambda;

  bool compute(const Eigen::VectorXd& s, const Eigen::VectorXd& z,
               const ConeDims& dims) {
    const Eigen::Index l = dims.nonneg;
    orthant_w2.resize(l);
    lambda.resize(dims.total());
    for (Eigen::Index i = 0; i < l; ++i) {
      if (!(s[i] > 0.0) || !(z[i] > 0.0)) return false;
      orthant_w2[i] = s[i] / z[i];
      lambda[i] = std::sqrt(s[i] * z[i]);
    }
    socs.assign(dims.soc.size(), {});
    Eigen::Index off = l;
    for (size_t k = 0; k < dims.soc.size(); ++k) {
      const Eigen::Index q = dims.soc[k];
      const auto sb = s.segment(off, q), zb = z.segment(off, q);
      const double sres = sb[0] * sb[0] - sb.tail(q - 1).squaredNorm();
      const double zres = zb[0] * zb[0] - zb.tail(q - 1).squaredNorm();
      if (!(sres > 0.0) || !(zres > 0.0) || !(sb[0] > 0.0) || !(zb[0] > 0.0))
        return false;
      const Eigen::VectorXd sn = sb / std::sqrt(sres);
      const Eigen::VectorXd zn = zb / std::sqrt(zres);
      const double gamma = std::sqrt(0.5 * (1.0 + sn.dot(zn)));
      Eigen::VectorXd wbar(q);
      wbar[0] = (sn[0] + zn[0]) / (2.0 * gamma);
      wbar.tail(q - 1) =
          (sn.tail(q - 1) - zn.tail(q - 1)) / (2.0 * gamma);
      socs[k].wbar = wbar;
      socs[k].eta2 = std::sqrt(sres / zres);
      lambda.segment(off, q) = applySocW(k, zb);
      off += q;
    }
    return true;
  }

  // W u restricted to SOC block k (W = eta * Wbar).
  Eigen::VectorXd applySocW(size_t k, const Eigen::Ref<const Eigen::VectorXd>& u) const {
    const auto& wb = socs[k].wbar;
    const Eigen::Index q = wb.size();
    const double eta = std::sqrt(socs[k].eta2);
    const double dot_tail = wb.tail(q - 1).dot(u.tail(q - 1));
    Eigen::VectorXd out(q);
    out[0] = wb[0] * u[0] + dot_tail;
    out.tail(q - 1) = u[0] * wb.tail(q - 1) + u.tail(q - 1) +
                      (dot_tail / (1.0 + wb[0])) * wb.tail(q - 1);
    return eta * out;
  }

  Eigen::VectorXd applyW(const Eigen::VectorXd& u, const ConeDims& dims) const {
    Eigen::VectorXd out(dims.total());
    out.head(dims.nonneg) =
        orthant_w2.array().sqrt() * u.head(dims.nonneg).array();
    Eigen::Index off = dims.nonneg;
    for (size_t k = 0; k < dims.soc.size(); ++k) {
      out.segment(off, dims.soc[k]) = applySocW(k, u.segment(off, dims.soc[k]));
      off += dims.soc[k];
    }
    return out;
  }

  // W^{-1} = (1/eta) J Wbar J on each SOC block, diagonal on the orthant.
  Eigen::VectorXd applyWinv(const Eigen::VectorXd& u, const ConeDims& dims) const {
    Eigen::VectorXd out(dims.total());
    out.head(dims.nonneg) =
        u.head(dims.nonneg).array() / orthant_w2.array().sqrt();
    Eigen::Index off = dims.nonneg;
    for (size_t k = 0; k < dims.soc.size(); ++k) {
      const Eigen::Index q = dims.soc[k];
      Eigen::VectorXd flipped = u.segment(off, q);
      flipped.tail(q - 1) *= -1.0;
      Eigen::VectorXd w = applySocW(k, flipped);
      w.tail(q - 1) *= -1.0;
      out.segment(off, q) = w / socs[k].eta2;  // applySocW used eta, need 1/eta
      off += q;
    }
    return out;
  }

  // W^2 u = eta^2 (2 wbar (wbar'u) - J u) on SOC blocks.
  Eigen::VectorXd applyW2(const Eigen::VectorXd& u, const ConeDims& dims) const {
    Eigen::VectorXd out(dims.total());
    out.head(dims.nonneg) =
        orthant_w2.array() * u.head(dims.nonneg).array();
    Eigen::Index off = dims.nonneg;
    for (size_t k = 0; k < dims.soc.size(); ++k) {
      const Eigen::Index q = dims.soc[k];
      const auto& wb = socs[k].wbar;
      const auto ub = u.segment(off, q);
      const double wu = wb.dot(ub);
      Eigen::VectorXd v = 2.0 * wu * wb;
      v[0] -= ub[0];
      v.tail(q - 1) += ub.tail(q - 1);
      out.segment(off, q) = socs[k].eta2 * v;
      off += q;
    }
    return out;
  }
};

ConeLpSolver::ConeLpSolver(Eigen::SparseMatrix<double> P, Eigen::VectorXd c,
                           Eigen::SparseMatrix<double> A, Eigen::VectorXd b,
                           Eigen::SparseMatrix<double> G, Eigen::VectorXd h,
                           ConeDims dims)
    : P_(std::move(P)),
      c_(std::move(c)),
      b_(std::move(b)),
      h_(std::move(h)),
      A_(std::move(A)),
      G_(std::move(G)),
      dims_(std::move(dims)) {
  n_ = c_.size();
  p_ = A_.rows();
  m_ = G_.rows();
  A_.makeCompressed();
  G_.makeCompressed();
  has_p_ = P_.rows() == n_ && P_.nonZeros() > 0;
  if (has_p_) {
    // keep the lower triangle only; products use the selfadjoint view
    P_ = P_.triangularView<Eigen::Lower>();
    P_.makeCompressed();
  }
  equilibrate();
}

// Ruiz equilibration of the problem data.  Column scalings d_col and row
// scalings d_eq / d_cone drive every row and column of the stacked data
// matrix [P A' G'; A 0 0; G 0 0] toward unit infinity norm.  Rows of one
// second-order cone share a single scalar so the scaled slack stays in the
// cone.  Solutions and certificates are mapped back in solve().
void ConeLpSolver::equilibrate() {
  d_col_ = Eigen::VectorXd::Ones(n_);
  d_eq_ = Eigen::VectorXd::Ones(p_);
  d_cone_ = Eigen::VectorXd::Ones(m_);
  using SpMat = Eigen::SparseMatrix<double>;

  auto clipped = [](double v) {
    v = std::sqrt(v);
    return std::clamp(v, 1e-4, 1e4);
  };

  for (int round = 0; round < 10; ++round) {
    Eigen::VectorXd col_norm = Eigen::VectorXd::Zero(n_);
    Eigen::VectorXd eq_norm = Eigen::VectorXd::Zero(p_);
    Eigen::VectorXd cone_norm = Eigen::VectorXd::Zero(m_);
    if (has_p_)
      for (Eigen::Index col = 0; col < P_.outerSize(); ++col)
        for (SpMat::InnerIterator it(P_, col); it; ++it) {
          const double v = std::abs(it.value());
          col_norm[it.row()] = std::max(col_norm[it.row()], v);
          col_norm[it.col()] = std::max(col_norm[it.col()], v);
        }
    for (Eigen::Index col = 0; col < A_.outerSize(); ++col)
      for (SpMat::InnerIterator it(A_, col); it; ++it) {
        const double v = std::abs(it.value());
        col_norm[col] = std::max(col_norm[col], v);
        eq_norm[it.row()] = std::max(eq_norm[it.row()], v);
      }
    for (Eigen::Index col = 0; col < G_.outerSize(); ++col)
      for (SpMat::InnerIterator it(G_, col); it; ++it) {
        const double v = std::abs(it.value());
        col_norm[col] = std::max(col_norm[col], v);
        cone_norm[it.row()] = std::max(cone_norm[it.row()], v);
      }
    // uniform scaling within each SOC block
    Eigen::Index off = dims_.nonneg;
    for (Eigen::Index q : dims_.soc) {
      const double block = cone_norm.segment(off, q).maxCoeff();
      cone_norm.segment(off, q).setConstant(block);
      off += q;
    }

    double worst = 1.0;
    for (Eigen::Index j = 0; j < n_; ++j) {
      if (col_norm[j] <= 0.0) continue;
      const double s = clipped(col_norm[j]);
      worst = std::max(worst, std::max(s, 1.0 / s));
      d_col_[j] /= s;
    }
    Eigen::VectorXd eq_scale = Eigen::VectorXd::Ones(p_);
    for (Eigen::Index i = 0; i < p_; ++i)
      if (eq_norm[i] > 0.0) {
        eq_scale[i] = 1.0 / clipped(eq_norm[i]);
        d_eq_[i] *= eq_scale[i];
      }
    Eigen::VectorXd cone_scale = Eigen::VectorXd::Ones(m_);
    for (Eigen::Index i = 0; i < m_; ++i)
      if (cone_norm[i] > 0.0) {
        cone_scale[i] = 1.0 / clipped(cone_norm[i]);
        d_cone_[i] *= cone_scale[i];
      }

    // apply this round's scaling in place
    Eigen::VectorXd col_scale = Eigen::VectorXd::Ones(n_);
    for (Eigen::Index j = 0; j < n_; ++j)
      if (col_norm[j] > 0.0) col_scale[j] = 1.0 / clipped(col_norm[j]);
    if (has_p_)
      for (Eigen::Index col = 0; col < P_.outerSize(); ++col)
        for (SpMat::InnerIterator it(P_, col); it; ++it)
          it.valueRef() *= col_scale[it.row()] * col_scale[it.col()];
    for (Eigen::Index col = 0; col < A_.outerSize(); ++col)
      for (SpMat::InnerIterator it(A_, col); it; ++it)
        it.valueRef() *= eq_scale[it.row()] * col_scale[col];
    for (Eigen::Index col = 0; col < G_.outerSize(); ++col)
      for (SpMat::InnerIterator it(G_, col); it; ++it)
        it.valueRef() *= cone_scale[it.row()] * col_scale[col];
    if (worst < 1.05) break;
  }
  c_ = c_.cwiseProduct(d_col_);
  b_ = b_.cwiseProduct(d_eq_);
  h_ = h_.cwiseProduct(d_cone_);
}

ConeLpResult ConeLpSolver::solve(const ConeLpSettings& st) {
  using SpMat = Eigen::SparseMatrix<double>;
  using Triplet = Eigen::Triplet<double>;
  const Eigen::Index n = n_, p = p_, m = m_, dim = n + p + m;

  ConeLpResult res;
  res.status = ConeLpStatus::NumericalError;

  auto applyP = [&](const Eigen::VectorXd& v) -> Eigen::VectorXd {
    if (!has_p_) return Eigen::VectorXd::Zero(n);
    return P_.selfadjointView<Eigen::Lower>() * v;
  };

  // --- KKT assembly -------------------------------------------------------
  // Lower triangle of [ P+dI  A'  G' ; A  -dI  0 ; G  0  -W^2-dI ].
  // The pattern is fixed; W^2 values change every iteration.
  std::vector<Triplet> base;
  base.reserve(static_cast<size_t>(P_.nonZeros() + A_.nonZeros() +
                                   G_.nonZeros() + dim + 64));
  const double delta = st.static_reg;
  for (Eigen::Index i = 0; i < n; ++i) base.emplace_back(i, i, delta);
  if (has_p_)
    for (Eigen::Index col = 0; col < P_.outerSize(); ++col)
      for (SpMat::InnerIterator it(P_, col); it; ++it)
        base.emplace_back(it.row(), col, it.value());
  for (Eigen::Index col = 0; col < A_.outerSize(); ++col)
    for (SpMat::InnerIterator it(A_, col); it; ++it)
      base.emplace_back(n + it.row(), col, it.value());
  for (Eigen::Index i = 0; i < p; ++i) base.emplace_back(n + i, n + i, -delta);
  for (Eigen::Index col = 0; col < G_.outerSize(); ++col)
    for (SpMat::InnerIterator it(G_, col); it; ++it)
      base.emplace_back(n + p + it.row(), col, it.value());

  Scaling scal;
  auto assembleKkt = [&](SpMat& K) {
    std::vector<Triplet> trip = base;
    const Eigen::Index z0 = n + p;
    for (Eigen::Index i = 0; i < dims_.nonneg; ++i)
      trip.emplace_back(z0 + i, z0 + i, -scal.orthant_w2[i] - delta);
    Eigen::Index off = dims_.nonneg;
    for (size_t k = 0; k < dims_.soc.size(); ++k) {
      const Eigen::Index q = dims_.soc[k];
      const auto& wb = scal.socs[k].wbar;
      const double eta2 = scal.socs[k].eta2;
      for (Eigen::Index i = 0; i < q; ++i)
        for (Eigen::Index j = 0; j <= i; ++j) {
          double w2 = 2.0 * eta2 * wb[i] * wb[j];
          if (i == j) w2 += (i == 0) ? -eta2 : eta2;
          double v = -w2;
          if (i == j) v -= delta;
          trip.emplace_back(z0 + off + i, z0 + off + j, v);
        }
      off += q;
    }
    K.setFromTriplets(trip.begin(), trip.end());
  };

  SpMat K(dim, dim);
  Eigen::SimplicialLDLT<SpMat, Eigen::Lower> ldlt;
  bool analyzed = false;

  // K0 * u without regularization, for iterative refinement.
  auto applyK0 = [&](const Eigen::VectorXd& u) {
    Eigen::VectorXd out(dim);
    out.head(n) = applyP(u.head(n)) + A_.transpose() * u.segment(n, p) +
                  G_.transpose() * u.tail(m);
    out.segment(n, p) = A_ * u.head(n);
    out.tail(m) = G_ * u.head(n) - scal.applyW2(u.tail(m), dims_);
    return out;
  };

  auto solveRefined = [&](const Eigen::VectorXd& rhs) {
    Eigen::VectorXd u = ldlt.solve(rhs);
    const double target = 1e-13 * (1.0 + rhs.lpNorm<Eigen::Infinity>());
    double prev = std::numeric_limits<double>::infinity();
    Eigen::VectorXd best = u;
    for (int r = 0; r < std::max(st.refine_steps, 10); ++r) {
      Eigen::VectorXd resid = rhs - applyK0(u);
      const double rn = resid.lpNorm<Eigen::Infinity>();
      if (rn < prev) {
        best = u;
        if (rn <= target) return best;
      }
      if (rn >= 0.5 * prev) break;  // stalled
      prev = rn;
      u += ldlt.solve(resid);
    }
    Eigen::VectorXd resid = rhs - applyK0(u);
    if (resid.lpNorm<Eigen::Infinity>() < prev) best = u;
    return best;
  };

  // --- initialization (identity scaling) ----------------------------------
  scal.orthant_w2 = Eigen::VectorXd::Ones(dims_.nonneg);
  scal.socs.assign(dims_.soc.size(), {});
  for (size_t k = 0; k < dims_.soc.size(); ++k) {
    scal.socs[k].eta2 = 1.0;
    scal.socs[k].wbar = Eigen::VectorXd::Zero(dims_.soc[k]);
    scal.socs[k].wbar[0] = 1.0;
  }
  assembleKkt(K);
  ldlt.analyzePattern(K);
  analyzed = true;
  ldlt.factorize(K);
  if (ldlt.info() != Eigen::Success) return res;

  const Eigen::VectorXd e = coneIdentity(dims_);
  Eigen::VectorXd rhs(dim), sol(dim);

  rhs.setZero();
  rhs.segment(n, p) = b_;
  rhs.tail(m) = h_;
  sol = solveRefined(rhs);
  Eigen::VectorXd x = sol.head(n);
  Eigen::VectorXd s = -sol.tail(m);
  double shift = -coneMargin(s, dims_);
  if (shift >= -1e-8 * std::max(1.0, s.norm())) s += (1.0 + shift) * e;

  rhs.setZero();
  rhs.head(n) = -c_;
  sol = solveRefined(rhs);
  Eigen::VectorXd y = sol.segment(n, p);
  Eigen::VectorXd z = sol.tail(m);
  shift = -coneMargin(z, dims_);
  if (shift >= -1e-8 * std::max(1.0, z.norm())) z += (1.0 + shift) * e;

  double tau = 1.0, kappa = 1.0;

  const double norm_b = std::max(1.0, b_.norm());
  const double norm_h = std::max(1.0, h_.norm());
  const double norm_c = std::max(1.0, c_.norm());
  const double deg = static_cast<double>(dims_.degree()) + 1.0;

  // Once the requested tolerances are met the iteration keeps polishing
  // toward `polish_factor` tighter ones; the last iterate meeting the
  // request is kept as a fallback.  Mapped multipliers (e.g. quadratic-
  // constraint duals recovered from cone duals) gain ~2 digits per extra
  // Mehrotra step near the solution.
  constexpr double kPolishFactor = 1e-3;
  bool have_snapshot = false;
  double snapshot_merit = std::numeric_limits<double>::infinity();
  ConeLpResult snapshot;
  // best iterate seen at any tolerance, for honest iteration-limit exits
  double best_merit = std::numeric_limits<double>::infinity();
  ConeLpResult best;
  int stalled_steps = 0;

  auto record = [&](ConeLpResult& out) {
    out.x = d_col_.cwiseProduct(x) / tau;
    out.y = d_eq_.cwiseProduct(y) / tau;
    out.z = d_cone_.cwiseProduct(z) / tau;
    out.s = s.cwiseQuotient(d_cone_) / tau;
    out.tau = tau;
    out.kappa = kappa;
    out.status = ConeLpStatus::Optimal;
  };

  for (int iter = 0; iter <= st.max_iters; ++iter) {
    res.iterations = iter;

    // residuals of the self-dual embedding; the x'Px/tau term extends the
    // last row to quadratic objectives
    const Eigen::VectorXd Px = applyP(x);
    const double xPx = x.dot(Px);
    Eigen::VectorXd Rx =
        Px + A_.transpose() * y + G_.transpose() * z + c_ * tau;
    Eigen::VectorXd Ry = A_ * x - b_ * tau;
    Eigen::VectorXd Rz = G_ * x + s - h_ * tau;
    const double Rtau = c_.dot(x) + b_.dot(y) + h_.dot(z) + xPx / tau + kappa;

    const double pcost = c_.dot(x) / tau + 0.5 * xPx / (tau * tau);
    const double dcost =
        -(b_.dot(y) + h_.dot(z)) / tau - 0.5 * xPx / (tau * tau);
    const double pres = std::max(Ry.norm() / norm_b, Rz.norm() / norm_h) / tau;
    const double dres = Rx.norm() / norm_c / tau;
    const double gap = s.dot(z) / (tau * tau);
    const double relgap = gap / std::max(1.0, std::abs(pcost));

    res.primal_obj = pcost;
    res.dual_obj = dcost;
    res.gap = gap;
    res.rel_gap = relgap;
    res.primal_res = pres;
    res.dual_res = dres;

    if (std::getenv("MOMPLAN_IPM_TRACE"))
      std::printf("it=%2d pres=%9.2e dres=%9.2e gap=%9.2e relgap=%9.2e tau=%9.2e kappa=%9.2e\n",
                  iter, pres, dres, gap, relgap, tau, kappa);
    const double merit =
        std::max({pres, dres, std::min(gap / st.abs_gap_tol,
                                       relgap / st.rel_gap_tol) *
                                  st.feas_tol});
    const bool at_request = pres <= st.feas_tol && dres <= st.feas_tol &&
                            (gap <= st.abs_gap_tol || relgap <= st.rel_gap_tol);
    if (have_snapshot && merit > 100.0 * snapshot_merit)
      return snapshot;  // numerical endgame degradation: keep the good point
    if (merit < best_merit) {
      record(best);
      best.primal_obj = pcost;
      best.dual_obj = dcost;
      best.gap = gap;
      best.rel_gap = relgap;
      best.primal_res = pres;
      best.dual_res = dres;
      best.iterations = iter;
      best.status = ConeLpStatus::IterationLimit;
      best_merit = merit;
    }
    if (at_request && (!have_snapshot || merit < snapshot_merit)) {
      record(snapshot);
      snapshot.primal_obj = pcost;
      snapshot.dual_obj = dcost;
      snapshot.gap = gap;
      snapshot.rel_gap = relgap;
      snapshot.primal_res = pres;
      snapshot.dual_res = dres;
      snapshot.iterations = iter;
      snapshot_merit = merit;
      have_snapshot = true;
      const bool at_polish =
          pres <= kPolishFactor * st.feas_tol &&
          dres <= kPolishFactor * st.feas_tol &&
          (gap <= kPolishFactor * st.abs_gap_tol ||
           relgap <= kPolishFactor * st.rel_gap_tol);
      if (at_polish) return snapshot;
    }

    // infeasibility certificates (moot once an optimal iterate exists)
    const double hzby = h_.dot(z) + b_.dot(y);
    if (hzby < 0.0 && !have_snapshot) {
      const double pinf =
          (A_.transpose() * y + G_.transpose() * z).norm() / norm_c;
      if (pinf <= st.feas_tol * (-hzby)) {
        res.y = d_eq_.cwiseProduct(y) / (-hzby);
        res.z = d_cone_.cwiseProduct(z) / (-hzby);
        res.x.setZero(n);
        res.s.setZero(m);
        res.status = ConeLpStatus::PrimalInfeasible;
        return res;
      }
    }
    const double cx = c_.dot(x);
    if (cx < 0.0 && !have_snapshot) {
      double dinf = std::max((A_ * x).norm() / norm_b,
                             (G_ * x + s).norm() / norm_h);
      dinf = std::max(dinf, Px.norm() / norm_c);
      if (dinf <= st.feas_tol * (-cx)) {
        res.x = d_col_.cwiseProduct(x) / (-cx);
        res.s = s.cwiseQuotient(d_cone_) / (-cx);
        res.y.setZero(p);
        res.z.setZero(m);
        res.status = ConeLpStatus::DualInfeasible;
        return res;
      }
    }
    if (iter == st.max_iters) break;

    const double mu = (s.dot(z) + tau * kappa) / deg;

    if (!scal.compute(s, z, dims_)) {
      if (std::getenv("MOMPLAN_IPM_TRACE")) std::printf("EXIT: scaling failure\n");
      if (have_snapshot) return snapshot;
      if (best_merit < std::numeric_limits<double>::infinity()) return best;
      res.status = ConeLpStatus::NumericalError;
      return res;
    }
    assembleKkt(K);
    ldlt.factorize(K);
    if (ldlt.info() != Eigen::Success) {
      if (std::getenv("MOMPLAN_IPM_TRACE")) std::printf("EXIT: factorization failure\n");
      if (have_snapshot) return snapshot;
      if (best_merit < std::numeric_limits<double>::infinity()) return best;
      res.status = ConeLpStatus::NumericalError;
      return res;
    }

    rhs.head(n) = c_;
    rhs.segment(n, p) = -b_;
    rhs.tail(m) = -h_;
    const Eigen::VectorXd u_c = solveRefined(rhs);
    // gradient of the tau-row: cbar = c + 2Px/tau, plus the x'Px/tau^2
    // diagonal contribution from linearizing the quadratic term
    const Eigen::VectorXd cbar = c_ + (2.0 / tau) * Px;
    const double mu_t = xPx / (tau * tau);
    const double zeta_c = cbar.dot(u_c.head(n)) +
                          b_.dot(u_c.segment(n, p)) + h_.dot(u_c.tail(m));

    const Eigen::VectorXd lam_sq = jordanProduct(scal.lambda, scal.lambda, dims_);

    // One Newton solve given the linearized-complementarity right-hand
    // sides; returns (dx,dy,dz,ds,dtau,dkappa) through output refs.
    auto directions = [&](const Eigen::VectorXd& dx_rhs,
                          const Eigen::VectorXd& dy_rhs,
                          const Eigen::VectorXd& dz_rhs, double dtau_rhs,
                          const Eigen::VectorXd& ds_rhs, double dkappa_rhs,
                          Eigen::VectorXd& dx, Eigen::VectorXd& dy,
                          Eigen::VectorXd& dz, Eigen::VectorXd& ds,
                          double& dtau, double& dkappa) {
      Eigen::VectorXd wld = scal.applyW(jordanDivide(scal.lambda, ds_rhs, dims_), dims_);
      rhs.head(n) = dx_rhs;
      rhs.segment(n, p) = dy_rhs;
      rhs.tail(m) = dz_rhs - wld;
      const Eigen::VectorXd u_r = solveRefined(rhs);
      const double zeta_r = cbar.dot(u_r.head(n)) +
                            b_.dot(u_r.segment(n, p)) + h_.dot(u_r.tail(m));
      dtau = (zeta_r - dtau_rhs + dkappa_rhs / tau) /
             (zeta_c + mu_t + kappa / tau);
      dx = u_r.head(n) - dtau * u_c.head(n);
      dy = u_r.segment(n, p) - dtau * u_c.segment(n, p);
      dz = u_r.tail(m) - dtau * u_c.tail(m);
      // recover ds from the untransformed row G dx + ds - h dtau = dz_rhs:
      // algebraically equal to W(lambda \ ds_rhs) - W^2 dz but without the
      // ||W^2||-amplified roundoff near the boundary
      ds = dz_rhs + h_ * dtau - G_ * dx;
      dkappa = (dkappa_rhs - kappa * dtau) / tau;
    };

    // predictor (affine scaling direction)
    Eigen::VectorXd dxa, dya, dza, dsa;
    double dtaua, dkappaa;
    directions(-Rx, -Ry, -Rz, -Rtau, -lam_sq, -tau * kappa, dxa, dya, dza,
               dsa, dtaua, dkappaa);

    double alpha_aff = std::min(maxStep(s, dsa, dims_), maxStep(z, dza, dims_));
    if (dtaua < 0.0) alpha_aff = std::min(alpha_aff, -tau / dtaua);
    if (dkappaa < 0.0) alpha_aff = std::min(alpha_aff, -kappa / dkappaa);
    alpha_aff = std::min(alpha_aff, 1.0);

    double sigma = std::pow(1.0 - alpha_aff, 3);
    sigma = std::clamp(sigma, 0.0, 0.999999);

    // corrector (combined direction with Mehrotra second-order term)
    const Eigen::VectorXd corr = jordanProduct(
        scal.applyWinv(dsa, dims_), scal.applyW(dza, dims_), dims_);
    const Eigen::VectorXd ds_rhs = -lam_sq - corr + sigma * mu * e;
    const double dk_rhs = -tau * kappa - dtaua * dkappaa + sigma * mu;
    const double rscale = 1.0 - sigma;

    Eigen::VectorXd dx, dy, dz, ds;
    double dtau, dkappa;
    directions(-rscale * Rx, -rscale * Ry, -rscale * Rz, -rscale * Rtau,
               ds_rhs, dk_rhs, dx, dy, dz, ds, dtau, dkappa);

    double alpha = std::min(maxStep(s, ds, dims_), maxStep(z, dz, dims_));
    if (dtau < 0.0) alpha = std::min(alpha, -tau / dtau);
    if (dkappa < 0.0) alpha = std::min(alpha, -kappa / dkappa);
    alpha = std::min(st.frac_to_boundary * alpha, 1.0);
    if (std::getenv("MOMPLAN_IPM_TRACE"))
      std::printf("      alpha_aff=%9.2e sigma=%9.2e alpha=%9.2e (s:%9.2e z:%9.2e) |ds|=%9.2e |dz|=%9.2e\n",
                  alpha_aff, sigma, alpha, maxStep(s, ds, dims_),
                  maxStep(z, dz, dims_), ds.norm(), dz.norm());

    if (!std::isfinite(alpha) || alpha <= 1e-14) {
      if (std::getenv("MOMPLAN_IPM_TRACE")) std::printf("EXIT: step collapse alpha=%g\n", alpha);
      if (have_snapshot) return snapshot;
      if (best_merit < std::numeric_limits<double>::infinity()) return best;
      res.status = ConeLpStatus::NumericalError;
      return res;
    }
    stalled_steps = alpha <= 1e-6 ? stalled_steps + 1 : 0;
    if (stalled_steps >= 3) {
      if (std::getenv("MOMPLAN_IPM_TRACE")) std::printf("EXIT: stall\n");
      if (have_snapshot) return snapshot;
      return best;
    }

    x += alpha * dx;
    y += alpha * dy;
    z += alpha * dz;
    s += alpha * ds;
    tau += alpha * dtau;
    kappa += alpha * dkappa;
  }

  if (have_snapshot) return snapshot;
  if (best_merit < std::numeric_limits<double>::infinity()) return best;

  record(res);
  res.status = ConeLpStatus::IterationLimit;
  (void)analyzed;
  return res;
}

}  // namespace momplan
