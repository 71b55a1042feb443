/**
 * @file qcqp.cpp
 * @license BSD-3-Clause
 * @copyright Copyright (c) 2026, Momentum Planner Developers.
 */

#include "momplan/qcqp.hpp"

#include "json.hpp"  // vendored nlohmann/json

#include <algorithm>
#include <map>
#include <stdexcept>

namespace momplan {

using json = nlohmann::json;

double AffineExpr::value(const Eigen::VectorXd& x) const {
  double v = constant;
  for (const auto& [i, c] : terms) v += c * x[i];
  return v;
}

AffineExpr& AffineExpr::operator*=(double factor) {
  for (auto& [i, c] : terms) c *= factor;
  constant *= factor;
  return *this;
}

double QuadConstraint::value(const Eigen::VectorXd& x) const {
  double v = linear.value(x);
  for (const auto& sq : squares) {
    const double s = sq.value(x);
    v += s * s;
  }
  return v;
}

Eigen::VectorXd QuadConstraint::gradient(const Eigen::VectorXd& x,
                                         Eigen::Index n) const {
  Eigen::VectorXd g = Eigen::VectorXd::Zero(n);
  for (const auto& sq : squares) {
    const double s = 2.0 * sq.value(x);
    for (const auto& [i, c] : sq.terms) g[i] += s * c;
  }
  for (const auto& [i, c] : linear.terms) g[i] += c;
  return g;
}

Eigen::SparseMatrix<double> QuadConstraint::quadraticMatrix(
    Eigen::Index n) const {
  std::vector<Eigen::Triplet<double>> trip;
  for (const auto& sq : squares)
    for (const auto& [i, ci] : sq.terms)
      for (const auto& [j, cj] : sq.terms) trip.emplace_back(i, j, ci * cj);
  Eigen::SparseMatrix<double> P(n, n);
  P.setFromTriplets(trip.begin(), trip.end());
  return P;
}

double SocConstraint::violation(const Eigen::VectorXd& x) const {
  double sq = 0.0;
  for (const auto& row : v) {
    const double val = row.value(x);
    sq += val * val;
  }
  return std::sqrt(sq) - t.value(x);
}

Eigen::Index QcqpProblem::addBlock(const std::string& name,
                                   Eigen::Index size) {
  VariableBlock blk{name, num_vars_, size};
  blocks_.push_back(blk);
  num_vars_ += size;
  q0_.conservativeResize(num_vars_);
  q0_.tail(size).setZero();
  lb_.conservativeResize(num_vars_);
  lb_.tail(size).setConstant(-std::numeric_limits<double>::infinity());
  ub_.conservativeResize(num_vars_);
  ub_.tail(size).setConstant(std::numeric_limits<double>::infinity());
  p0_dirty_ = true;
  return blk.offset;
}

const VariableBlock* QcqpProblem::findBlock(const std::string& name) const {
  for (const auto& b : blocks_)
    if (b.name == name) return &b;
  return nullptr;
}

void QcqpProblem::addObjectiveSquaredTerm(double weight,
                                          const AffineExpr& expr) {
  if (weight == 0.0) return;
  if (weight < 0.0)
    throw std::invalid_argument("objective weight must be nonnegative");
  for (const auto& [i, ci] : expr.terms) {
    for (const auto& [j, cj] : expr.terms)
      p0_triplets_.emplace_back(i, j, 2.0 * weight * ci * cj);
    q0_[i] += 2.0 * weight * expr.constant * ci;
  }
  c0_ += weight * expr.constant * expr.constant;
  p0_dirty_ = true;
}

void QcqpProblem::addObjectiveLinear(const AffineExpr& expr) {
  for (const auto& [i, c] : expr.terms) q0_[i] += c;
  c0_ += expr.constant;
}

const Eigen::SparseMatrix<double>& QcqpProblem::objectiveMatrix() const {
  if (p0_dirty_) {
    p0_.resize(num_vars_, num_vars_);
    p0_.setFromTriplets(p0_triplets_.begin(), p0_triplets_.end());
    p0_dirty_ = false;
  }
  return p0_;
}

double QcqpProblem::objectiveValue(const Eigen::VectorXd& x) const {
  const auto& P = objectiveMatrix();
  return 0.5 * x.dot(P.selfadjointView<Eigen::Lower>() * x) + q0_.dot(x) + c0_;
}

Eigen::VectorXd QcqpProblem::objectiveGradient(const Eigen::VectorXd& x) const {
  const auto& P = objectiveMatrix();
  return P.selfadjointView<Eigen::Lower>() * x + q0_;
}

void QcqpProblem::addEquality(AffineExpr lhs, std::string label) {
  equalities_.push_back({std::move(lhs), std::move(label)});
}

void QcqpProblem::addInequality(AffineExpr lhs, std::string label) {
  inequalities_.push_back({std::move(lhs), std::move(label)});
}

void QcqpProblem::addQuadConstraint(QuadConstraint qc) {
  quads_.push_back(std::move(qc));
}

void QcqpProblem::addSocConstraint(SocConstraint soc) {
  socs_.push_back(std::move(soc));
}

void QcqpProblem::setLowerBound(Eigen::Index var, double lo) { lb_[var] = lo; }
void QcqpProblem::setUpperBound(Eigen::Index var, double hi) { ub_[var] = hi; }
void QcqpProblem::setBounds(Eigen::Index var, double lo, double hi) {
  if (lo > hi) throw std::invalid_argument("setBounds: lo > hi");
  lb_[var] = lo;
  ub_[var] = hi;
}

int QcqpProblem::censusQuadCone(const std::string& effector,
                                int timestep) const {
  int count = 0;
  for (const auto& q : quads_)
    if (q.tag.effector == effector && q.tag.timestep == timestep) ++count;
  for (const auto& s : socs_)
    if (s.tag.effector == effector && s.tag.timestep == timestep) ++count;
  return count;
}

int QcqpProblem::censusQuadCone() const {
  return static_cast<int>(quads_.size() + socs_.size());
}

namespace {

struct UnionFind {
  std::vector<Eigen::Index> parent;
  explicit UnionFind(Eigen::Index n) : parent(n) {
    for (Eigen::Index i = 0; i < n; ++i) parent[i] = i;
  }
  Eigen::Index find(Eigen::Index i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  }
  void unite(Eigen::Index a, Eigen::Index b) { parent[find(a)] = find(b); }
};

}  // namespace

std::vector<ObjectiveComponent> QcqpProblem::objectiveComponents() const {
  const auto& P = objectiveMatrix();
  UnionFind uf(num_vars_);
  for (int col = 0; col < P.outerSize(); ++col)
    for (Eigen::SparseMatrix<double>::InnerIterator it(P, col); it; ++it)
      if (it.value() != 0.0) uf.unite(it.row(), it.col());

  std::map<Eigen::Index, std::vector<Eigen::Index>> groups;
  for (int col = 0; col < P.outerSize(); ++col)
    for (Eigen::SparseMatrix<double>::InnerIterator it(P, col); it; ++it) {
      if (it.value() == 0.0) continue;
      groups[uf.find(it.col())];  // touch
    }
  for (int col = 0; col < P.outerSize(); ++col)
    for (Eigen::SparseMatrix<double>::InnerIterator it(P, col); it; ++it)
      if (it.value() != 0.0) {
        auto& g = groups[uf.find(it.col())];
        if (std::find(g.begin(), g.end(), it.row()) == g.end())
          g.push_back(it.row());
        if (std::find(g.begin(), g.end(), it.col()) == g.end())
          g.push_back(it.col());
      }

  std::vector<ObjectiveComponent> comps;
  comps.reserve(groups.size());
  for (auto& [root, vars] : groups) {
    std::sort(vars.begin(), vars.end());
    ObjectiveComponent comp;
    comp.vars = vars;
    const Eigen::Index k = static_cast<Eigen::Index>(vars.size());
    comp.dense = Eigen::MatrixXd::Zero(k, k);
    std::map<Eigen::Index, Eigen::Index> local;
    for (Eigen::Index i = 0; i < k; ++i) local[vars[i]] = i;
    for (Eigen::Index v : vars)
      for (Eigen::SparseMatrix<double>::InnerIterator it(P, v); it; ++it)
        comp.dense(local.at(it.row()), local.at(it.col())) += it.value();
    comp.dense = (0.5 * (comp.dense + comp.dense.transpose())).eval();
    comps.push_back(std::move(comp));
  }
  return comps;
}

void QcqpProblem::validatePsd() const {
  // Quadratic constraints are sums of squares, PSD structurally; the check
  // factorizes the assembled matrices anyway to honor the stated contract.
  auto checkDense = [](const Eigen::MatrixXd& M, const std::string& what) {
    if (M.size() == 0) return;  // vacuous form
    Eigen::LDLT<Eigen::MatrixXd> ldlt(M);
    const double floor = -1e-10 * std::max(1.0, M.cwiseAbs().maxCoeff());
    if (ldlt.info() != Eigen::Success || ldlt.vectorD().minCoeff() < floor)
      throw std::invalid_argument(what + " is not positive semidefinite");
  };
  for (const auto& comp : objectiveComponents())
    checkDense(comp.dense, "objective matrix");
  for (size_t k = 0; k < quads_.size(); ++k) {
    // dense check on the constraint's support only
    std::vector<Eigen::Index> support;
    for (const auto& sq : quads_[k].squares)
      for (const auto& [i, c] : sq.terms)
        if (std::find(support.begin(), support.end(), i) == support.end())
          support.push_back(i);
    std::sort(support.begin(), support.end());
    std::map<Eigen::Index, Eigen::Index> local;
    for (size_t i = 0; i < support.size(); ++i)
      local[support[i]] = static_cast<Eigen::Index>(i);
    Eigen::MatrixXd M = Eigen::MatrixXd::Zero(support.size(), support.size());
    for (const auto& sq : quads_[k].squares)
      for (const auto& [i, ci] : sq.terms)
        for (const auto& [j, cj] : sq.terms)
          M(local.at(i), local.at(j)) += ci * cj;
    checkDense(M, "quadratic constraint " + std::to_string(k) + " (" +
                      quads_[k].tag.kind + ")");
  }
}

namespace {

json affineToJson(const AffineExpr& e) {
  json terms = json::array();
  for (const auto& [i, c] : e.terms) terms.push_back({i, c});
  return {{"terms", terms}, {"constant", e.constant}};
}

json tagToJson(const ConstraintTag& t) {
  return {{"kind", t.kind}, {"effector", t.effector}, {"timestep", t.timestep}};
}

}  // namespace

std::string QcqpProblem::dumpJson() const {
  json j;
  j["num_variables"] = num_vars_;
  json blocks = json::array();
  for (const auto& b : blocks_)
    blocks.push_back({{"name", b.name}, {"offset", b.offset}, {"size", b.size}});
  j["blocks"] = blocks;

  json p0 = json::array();
  const auto& P = objectiveMatrix();
  for (int col = 0; col < P.outerSize(); ++col)
    for (Eigen::SparseMatrix<double>::InnerIterator it(P, col); it; ++it)
      p0.push_back({it.row(), it.col(), it.value()});
  j["objective"] = {{"P_triplets", p0},
                    {"q", std::vector<double>(q0_.data(), q0_.data() + q0_.size())},
                    {"c", c0_}};

  auto rowsToJson = [](const std::vector<LinearRow>& rows) {
    json arr = json::array();
    for (const auto& r : rows)
      arr.push_back({{"expr", affineToJson(r.lhs)}, {"label", r.label}});
    return arr;
  };
  j["equalities"] = rowsToJson(equalities_);
  j["inequalities"] = rowsToJson(inequalities_);

  json quads = json::array();
  for (const auto& q : quads_) {
    json sq = json::array();
    for (const auto& s : q.squares) sq.push_back(affineToJson(s));
    quads.push_back({{"squares", sq},
                     {"linear", affineToJson(q.linear)},
                     {"tag", tagToJson(q.tag)}});
  }
  j["quadratic_inequalities"] = quads;

  json socs = json::array();
  for (const auto& s : socs_) {
    json vrows = json::array();
    for (const auto& row : s.v) vrows.push_back(affineToJson(row));
    socs.push_back({{"t", affineToJson(s.t)},
                    {"v", vrows},
                    {"tag", tagToJson(s.tag)}});
  }
  j["soc_constraints"] = socs;

  auto boundVec = [](const Eigen::VectorXd& v) {
    json arr = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) {
      if (std::isinf(v[i]))
        arr.push_back(v[i] > 0 ? "inf" : "-inf");
      else
        arr.push_back(v[i]);
    }
    return arr;
  };
  j["lower_bounds"] = boundVec(lb_);
  j["upper_bounds"] = boundVec(ub_);
  return j.dump(2);
}

}  // namespace momplan
