/**
 * @file conelp.hpp
 * @license BSD-3-Clause
 * @copyright Copyright (c) 2026, Momentum Planner Developers.
 *
 * Primal-dual interior-point solver for cone programs
 *
 *   minimize    1/2 x'P x + c'x
 *   subject to  A x = b,
 *               G x + s = h,   s in K,
 *
 * where P is positive semidefinite and K is a product of a nonnegative
 * orthant and second-order cones.  The solver runs on the homogeneous
 * self-dual embedding (extended to quadratic objectives through the
 * x'Px/tau term in the last embedding row) with Nesterov-Todd scaling and
 * a Mehrotra predictor-corrector, so it returns certificates of primal or
 * dual infeasibility instead of failing.  Quadratic constraints are
 * handled one level up (conic_solver.hpp) by lowering to second-order
 * cones.
 */

#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <vector>

namespace momplan {

/// Cone layout of the rows of G: first `nonneg` rows form the orthant
/// block, followed by one contiguous block per second-order cone.
struct ConeDims {
  Eigen::Index nonneg = 0;
  std::vector<Eigen::Index> soc;

  Eigen::Index total() const;
  /// Jordan-algebra rank: one per orthant row, one per cone.
  Eigen::Index degree() const;
};

struct ConeLpSettings {
  double feas_tol = 1e-8;
  double abs_gap_tol = 1e-8;
  double rel_gap_tol = 1e-8;
  int max_iters = 200;
  double frac_to_boundary = 0.99;
  double static_reg = 1e-8;   ///< quasi-definite KKT regularization
  int refine_steps = 3;       ///< iterative refinement rounds per solve
};

enum class ConeLpStatus {
  Optimal,
  PrimalInfeasible,
  DualInfeasible,
  IterationLimit,
  NumericalError
};

struct ConeLpResult {
  ConeLpStatus status = ConeLpStatus::NumericalError;
  Eigen::VectorXd x, y, z, s;  ///< de-homogenized; certificates when infeasible
  double primal_obj = 0.0;
  double dual_obj = 0.0;
  double gap = 0.0;          ///< s'z / tau^2
  double rel_gap = 0.0;
  double primal_res = 0.0;
  double dual_res = 0.0;
  double tau = 0.0, kappa = 0.0;
  int iterations = 0;
};

/// One-shot solver instance.  The KKT sparsity pattern and its fill-in
/// ordering are computed once in the constructor and reused across
/// iterations.
class ConeLpSolver {
 public:
  /// P may be empty (0x0) for a linear objective; otherwise n x n and only
  /// the lower triangle is referenced.
  ConeLpSolver(Eigen::SparseMatrix<double> P, Eigen::VectorXd c,
               Eigen::SparseMatrix<double> A, Eigen::VectorXd b,
               Eigen::SparseMatrix<double> G, Eigen::VectorXd h,
               ConeDims dims);

  ConeLpResult solve(const ConeLpSettings& settings = {});

 private:
  struct Scaling;  // NT scaling state, defined in the implementation

  void equilibrate();

  Eigen::SparseMatrix<double> P_;
  Eigen::VectorXd c_, b_, h_;
  Eigen::SparseMatrix<double> A_, G_;
  ConeDims dims_;
  Eigen::Index n_, p_, m_;
  bool has_p_ = false;
  // Ruiz scalings: data held scaled, results mapped back on exit
  Eigen::VectorXd d_col_, d_eq_, d_cone_;
};

}  // namespace momplan
