#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "zevrpp/gp/expr.hpp"

namespace zevrpp::gp {

// Smooth convex function of a local vector w. Leaves are affine in w; inner
// nodes combine children in log space.
struct CNode {
  enum class Type { Affine, LSE, Sum, Scale, Exp };
  Type type = Type::Affine;
  std::vector<std::pair<int, double>> a;  // Affine coefficients (local index)
  double c = 0.0;                         // Affine constant
  double p = 1.0;                         // Scale factor
  std::vector<CNode> kids;

  static CNode affine(std::vector<std::pair<int, double>> a, double c);
};

struct Eval {
  double f = 0.0;
  Eigen::VectorXd g;
  Eigen::MatrixXd H;
};

// Evaluate value, gradient and (optionally) Hessian at local point w.
void eval_node(const CNode& n, const Eigen::VectorXd& w, bool hess, Eval& out);
double value_node(const CNode& n, const Eigen::VectorXd& w);

// Build F(u) = log e(exp u) for a Max-free expression. `index` maps a VarId to
// a local coordinate.
template <class IndexFn>
CNode compile_log(const Expr& e, IndexFn&& index);

// Log-space view of a single Max-free expression over its own variables.
class LogFunction {
 public:
  explicit LogFunction(const Expr& e);

  const std::vector<VarId>& vars() const { return vars_; }
  double value(const Assignment& u) const;
  Assignment gradient(const Assignment& u) const;
  Eigen::MatrixXd hessian(const Assignment& u) const;

  double value(const Eigen::VectorXd& w) const { return value_node(root_, w); }
  Eval eval(const Eigen::VectorXd& w, bool hess) const;

 private:
  Eigen::VectorXd local(const Assignment& u) const;
  std::vector<VarId> vars_;
  CNode root_;
};

// Gradient of log e(exp u); throws on a Max node.
Assignment gradient(const Expr& e, const Assignment& u);

// --- implementation of the template -------------------------------------

template <class IndexFn>
CNode compile_log(const Expr& e, IndexFn&& index) {
  auto mono = [&](const Monomial& m) {
    std::vector<std::pair<int, double>> a;
    a.reserve(m.exps().size());
    for (auto& [id, p] : m.exps()) a.emplace_back(index(id), p);
    return CNode::affine(std::move(a), std::log(m.coeff()));
  };
  const Node& n = e.node();
  switch (n.kind) {
    case NodeKind::Mono:
      return mono(n.mono);
    case NodeKind::Posy: {
      if (n.posy.terms().size() == 1) return mono(n.posy.terms()[0]);
      CNode out;
      out.type = CNode::Type::LSE;
      for (auto& t : n.posy.terms()) out.kids.push_back(mono(t));
      return out;
    }
    case NodeKind::Sum: {
      CNode out;
      out.type = CNode::Type::LSE;
      for (auto& k : n.args) out.kids.push_back(compile_log(k, index));
      return out;
    }
    case NodeKind::Product: {
      CNode out;
      out.type = CNode::Type::Sum;
      for (auto& k : n.args) out.kids.push_back(compile_log(k, index));
      return out;
    }
    case NodeKind::Power: {
      CNode out;
      out.type = CNode::Type::Scale;
      out.p = n.p;
      out.kids.push_back(compile_log(n.args[0], index));
      return out;
    }
    case NodeKind::Exp: {
      // log(exp(g(x))) = g(exp u) = exp(G(u)) with G = log g
      CNode out;
      out.type = CNode::Type::Exp;
      out.kids.push_back(compile_log(n.args[0], index));
      return out;
    }
    case NodeKind::Max:
      break;
  }
  throw std::logic_error("max node must be lowered before log transform");
}

}  // namespace zevrpp::gp
