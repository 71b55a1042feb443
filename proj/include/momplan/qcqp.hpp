/**
 * @file qcqp.hpp
 * @license BSD-3-Clause
 * @copyright Copyright (c) 2026, Momentum Planner Developers.
 *
 * Container for convex quadratically-constrained quadratic programs:
 * named variable blocks, a PSD quadratic objective, linear equalities and
 * inequalities, convex quadratic inequalities, second-order-cone rows and
 * variable bounds.  Quadratic inequalities are stored structurally as
 * sum-of-squares-of-affine forms, which keeps them PSD by construction and
 * lowers to second-order cones without factorization.
 */

#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <optional>
#include <string>
#include <vector>

namespace momplan {

/// Sparse affine expression a'x + k.
struct AffineExpr {
  std::vector<std::pair<Eigen::Index, double>> terms;
  double constant = 0.0;

  AffineExpr() = default;
  AffineExpr(std::initializer_list<std::pair<Eigen::Index, double>> t,
             double k = 0.0)
      : terms(t), constant(k) {}

  void add(Eigen::Index var, double coeff) {
    if (coeff != 0.0) terms.emplace_back(var, coeff);
  }
  double value(const Eigen::VectorXd& x) const;
  AffineExpr& operator*=(double factor);
};

/// Identifies which part of the model produced a constraint; used for the
/// per-effector/timestep constraint census and for diagnostics.
struct ConstraintTag {
  std::string kind;      ///< e.g. "friction_cone", "bound_quadratic"
  std::string effector;  ///< empty when not effector-bound
  int timestep = -1;     ///< -1 when not time-bound
};

/// Convex quadratic inequality  sum_r (a_r'x + k_r)^2 + (q'x + d) <= 0.
struct QuadConstraint {
  std::vector<AffineExpr> squares;
  AffineExpr linear;
  ConstraintTag tag;

  double value(const Eigen::VectorXd& x) const;
  /// Gradient 2 sum_r a_r (a_r'x + k_r) + q.
  Eigen::VectorXd gradient(const Eigen::VectorXd& x, Eigen::Index n) const;
  /// Canonical PSD quadratic matrix P with value = x'Px + q'x + d.
  Eigen::SparseMatrix<double> quadraticMatrix(Eigen::Index n) const;
};

/// Second-order cone row set:  (t, v) in SOC, i.e. t >= ||v||, each entry
/// an affine expression of x.
struct SocConstraint {
  AffineExpr t;
  std::vector<AffineExpr> v;
  ConstraintTag tag;

  /// ||v(x)|| - t(x); <= 0 when satisfied.
  double violation(const Eigen::VectorXd& x) const;
};

struct VariableBlock {
  std::string name;
  Eigen::Index offset = 0;
  Eigen::Index size = 0;
};

struct LinearRow {
  AffineExpr lhs;  ///< equality: lhs == 0;  inequality: lhs <= 0
  std::string label;
};

/// Connected component of the objective sparsity pattern, with its dense
/// submatrix.  Components are what the solver lifts into epigraph cones.
struct ObjectiveComponent {
  std::vector<Eigen::Index> vars;
  Eigen::MatrixXd dense;
};

class QcqpProblem {
 public:
  Eigen::Index addBlock(const std::string& name, Eigen::Index size);
  Eigen::Index numVariables() const { return num_vars_; }
  const std::vector<VariableBlock>& blocks() const { return blocks_; }
  const VariableBlock* findBlock(const std::string& name) const;

  /// Objective accumulation: f(x) = 1/2 x'P0 x + q0'x + c0.
  void addObjectiveSquaredTerm(double weight, const AffineExpr& expr);
  void addObjectiveLinear(const AffineExpr& expr);
  double objectiveValue(const Eigen::VectorXd& x) const;
  Eigen::VectorXd objectiveGradient(const Eigen::VectorXd& x) const;
  const Eigen::SparseMatrix<double>& objectiveMatrix() const;

  void addEquality(AffineExpr lhs, std::string label = {});
  void addInequality(AffineExpr lhs, std::string label = {});
  void addQuadConstraint(QuadConstraint qc);
  void addSocConstraint(SocConstraint soc);
  void setLowerBound(Eigen::Index var, double lo);
  void setUpperBound(Eigen::Index var, double hi);
  void setBounds(Eigen::Index var, double lo, double hi);

  const std::vector<LinearRow>& equalities() const { return equalities_; }
  const std::vector<LinearRow>& inequalities() const { return inequalities_; }
  const std::vector<QuadConstraint>& quadConstraints() const { return quads_; }
  const std::vector<SocConstraint>& socConstraints() const { return socs_; }
  const Eigen::VectorXd& lowerBounds() const { return lb_; }
  const Eigen::VectorXd& upperBounds() const { return ub_; }

  /// Number of quadratic + second-order-cone inequalities attributed to
  /// (effector, timestep); the census of the paper-facing constraint count.
  int censusQuadCone(const std::string& effector, int timestep) const;
  int censusQuadCone() const;

  /// Connected components of the objective quadratic form.
  std::vector<ObjectiveComponent> objectiveComponents() const;

  /// Attempts factorization of the objective and of every quadratic
  /// constraint matrix; throws std::invalid_argument on a non-PSD form.
  void validatePsd() const;

  /// Text/JSON export of the full problem (variable names, triplets).
  std::string dumpJson() const;

 private:
  friend class QcqpLowering;
  std::vector<VariableBlock> blocks_;
  Eigen::Index num_vars_ = 0;
  std::vector<Eigen::Triplet<double>> p0_triplets_;
  mutable Eigen::SparseMatrix<double> p0_;
  mutable bool p0_dirty_ = true;
  Eigen::VectorXd q0_;
  double c0_ = 0.0;
  std::vector<LinearRow> equalities_;
  std::vector<LinearRow> inequalities_;
  std::vector<QuadConstraint> quads_;
  std::vector<SocConstraint> socs_;
  Eigen::VectorXd lb_, ub_;
};

}  // namespace momplan
