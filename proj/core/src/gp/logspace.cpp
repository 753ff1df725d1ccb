#include "zevrpp/gp/logspace.hpp"

#include <algorithm>
#include <map>

namespace zevrpp::gp {

CNode CNode::affine(std::vector<std::pair<int, double>> a, double c) {
  CNode n;
  n.type = Type::Affine;
  n.a = std::move(a);
  n.c = c;
  return n;
}

double value_node(const CNode& n, const Eigen::VectorXd& w) {
  switch (n.type) {
    case CNode::Type::Affine: {
      double v = n.c;
      for (auto& [i, a] : n.a) v += a * w[i];
      return v;
    }
    case CNode::Type::LSE: {
      double m = -std::numeric_limits<double>::infinity();
      std::vector<double> v(n.kids.size());
      for (size_t k = 0; k < n.kids.size(); ++k) {
        v[k] = value_node(n.kids[k], w);
        m = std::max(m, v[k]);
      }
      if (!std::isfinite(m)) return m;
      double s = 0.0;
      for (double x : v) s += std::exp(x - m);
      return m + std::log(s);
    }
    case CNode::Type::Sum: {
      double s = 0.0;
      for (auto& k : n.kids) s += value_node(k, w);
      return s;
    }
    case CNode::Type::Scale:
      return n.p * value_node(n.kids[0], w);
    case CNode::Type::Exp:
      return std::exp(value_node(n.kids[0], w));
  }
  return 0.0;
}

void eval_node(const CNode& n, const Eigen::VectorXd& w, bool hess, Eval& out) {
  const Eigen::Index d = w.size();
  out.g.setZero(d);
  if (hess) out.H.setZero(d, d);
  switch (n.type) {
    case CNode::Type::Affine: {
      out.f = n.c;
      for (auto& [i, a] : n.a) {
        out.f += a * w[i];
        out.g[i] += a;
      }
      return;
    }
    case CNode::Type::LSE: {
      // Fast path when every child is affine: H = A^T (diag(p) - p p^T) A.
      bool flat = std::all_of(n.kids.begin(), n.kids.end(),
                              [](auto& k) { return k.type == CNode::Type::Affine; });
      std::vector<Eval> ev(n.kids.size());
      std::vector<double> v(n.kids.size());
      double m = -std::numeric_limits<double>::infinity();
      for (size_t k = 0; k < n.kids.size(); ++k) {
        if (flat) {
          v[k] = value_node(n.kids[k], w);
        } else {
          eval_node(n.kids[k], w, hess, ev[k]);
          v[k] = ev[k].f;
        }
        m = std::max(m, v[k]);
      }
      double s = 0.0;
      for (double& x : v) {
        x = std::exp(x - m);
        s += x;
      }
      out.f = m + std::log(s);
      for (double& x : v) x /= s;
      if (flat) {
        for (size_t k = 0; k < n.kids.size(); ++k)
          for (auto& [i, a] : n.kids[k].a) out.g[i] += v[k] * a;
        if (hess) {
          for (size_t k = 0; k < n.kids.size(); ++k) {
            Eigen::VectorXd r = Eigen::VectorXd::Zero(d);
            for (auto& [i, a] : n.kids[k].a) r[i] += a;
            r -= out.g;
            out.H.noalias() += v[k] * r * r.transpose();
          }
        }
        return;
      }
      for (size_t k = 0; k < n.kids.size(); ++k) out.g += v[k] * ev[k].g;
      if (hess) {
        for (size_t k = 0; k < n.kids.size(); ++k) {
          Eigen::VectorXd r = ev[k].g - out.g;
          out.H.noalias() += v[k] * (ev[k].H + r * r.transpose());
        }
      }
      return;
    }
    case CNode::Type::Sum: {
      out.f = 0.0;
      Eval e;
      for (auto& k : n.kids) {
        eval_node(k, w, hess, e);
        out.f += e.f;
        out.g += e.g;
        if (hess) out.H += e.H;
      }
      return;
    }
    case CNode::Type::Scale: {
      eval_node(n.kids[0], w, hess, out);
      out.f *= n.p;
      out.g *= n.p;
      if (hess) out.H *= n.p;
      return;
    }
    case CNode::Type::Exp: {
      Eval e;
      eval_node(n.kids[0], w, hess, e);
      double ef = std::exp(e.f);
      out.f = ef;
      out.g = ef * e.g;
      if (hess) out.H = ef * (e.H + e.g * e.g.transpose());
      return;
    }
  }
}

// ------------------------------------------------------------ LogFunction

LogFunction::LogFunction(const Expr& e) {
  if (e.has_max()) throw std::logic_error("max node must be lowered before log transform");
  e.collect_vars(vars_);
  std::sort(vars_.begin(), vars_.end());
  vars_.erase(std::unique(vars_.begin(), vars_.end()), vars_.end());
  std::map<VarId, int> pos;
  for (size_t i = 0; i < vars_.size(); ++i) pos[vars_[i]] = static_cast<int>(i);
  root_ = compile_log(e, [&](VarId id) { return pos.at(id); });
}

Eigen::VectorXd LogFunction::local(const Assignment& u) const {
  Eigen::VectorXd w(vars_.size());
  for (size_t i = 0; i < vars_.size(); ++i) {
    auto it = u.find(vars_[i]);
    if (it == u.end()) throw std::out_of_range("variable not assigned");
    w[static_cast<Eigen::Index>(i)] = it->second;
  }
  return w;
}

double LogFunction::value(const Assignment& u) const { return value_node(root_, local(u)); }

Eval LogFunction::eval(const Eigen::VectorXd& w, bool hess) const {
  Eval e;
  eval_node(root_, w, hess, e);
  return e;
}

Assignment LogFunction::gradient(const Assignment& u) const {
  Eval e = eval(local(u), false);
  Assignment g;
  for (size_t i = 0; i < vars_.size(); ++i) g[vars_[i]] = e.g[static_cast<Eigen::Index>(i)];
  return g;
}

Eigen::MatrixXd LogFunction::hessian(const Assignment& u) const {
  return eval(local(u), true).H;
}

Assignment gradient(const Expr& e, const Assignment& u) { return LogFunction(e).gradient(u); }

}  // namespace zevrpp::gp
