#include "zevrpp/gp/expr.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace zevrpp::gp {

namespace {

void normalize(std::vector<std::pair<VarId, double>>& e) {
  std::sort(e.begin(), e.end(), [](auto& a, auto& b) { return a.first < b.first; });
  std::vector<std::pair<VarId, double>> out;
  for (auto& [id, p] : e) {
    if (!out.empty() && out.back().first == id)
      out.back().second += p;
    else
      out.emplace_back(id, p);
  }
  std::erase_if(out, [](auto& t) { return t.second == 0.0; });
  e = std::move(out);
}

std::vector<std::pair<VarId, double>> merge(const std::vector<std::pair<VarId, double>>& a,
                                            const std::vector<std::pair<VarId, double>>& b,
                                            double sb) {
  std::vector<std::pair<VarId, double>> out;
  out.reserve(a.size() + b.size());
  size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].first < a[i].first) {
      out.emplace_back(b[j].first, sb * b[j].second);
      ++j;
    } else {
      double p = a[i].second + sb * b[j].second;
      if (p != 0.0) out.emplace_back(a[i].first, p);
      ++i;
      ++j;
    }
  }
  return out;
}

std::shared_ptr<Node> make(NodeKind k) {
  auto n = std::make_shared<Node>();
  n->kind = k;
  return n;
}

}  // namespace

Monomial::Monomial(double c) : c_(c) {
  if (!(c > 0.0) || !std::isfinite(c))
    throw std::invalid_argument(fmt::format("monomial coefficient must be positive, got {}", c));
}

Monomial::Monomial(const Variable& v) : c_(1.0), exps_{{v.id, 1.0}} {
  if (v.id < 0) throw std::invalid_argument("monomial of an unregistered variable");
}

Monomial::Monomial(double c, std::vector<std::pair<VarId, double>> exps)
    : Monomial(c) {
  exps_ = std::move(exps);
  normalize(exps_);
}

double Monomial::exponent(VarId id) const {
  for (auto& [v, p] : exps_)
    if (v == id) return p;
  return 0.0;
}

Monomial Monomial::pow(double p) const {
  Monomial out(std::pow(c_, p));
  if (p == 0.0) return out;
  out.exps_ = exps_;
  for (auto& t : out.exps_) t.second *= p;
  return out;
}

Monomial operator*(const Monomial& a, const Monomial& b) {
  Monomial out(a.c_ * b.c_);
  out.exps_ = merge(a.exps_, b.exps_, 1.0);
  return out;
}

Monomial operator/(const Monomial& a, const Monomial& b) {
  Monomial out(a.c_ / b.c_);
  out.exps_ = merge(a.exps_, b.exps_, -1.0);
  return out;
}

bool operator==(const Monomial& a, const Monomial& b) {
  return a.c_ == b.c_ && a.exps_ == b.exps_;
}

Monomial pow(const Monomial& m, double p) { return m.pow(p); }

Posynomial::Posynomial(const Monomial& m) : terms_{m} {}

Posynomial::Posynomial(std::vector<Monomial> terms) : terms_(std::move(terms)) {
  if (terms_.empty()) throw std::invalid_argument("empty posynomial");
}

Posynomial operator+(const Posynomial& a, const Posynomial& b) {
  auto t = a.terms_;
  t.insert(t.end(), b.terms_.begin(), b.terms_.end());
  return Posynomial(std::move(t));
}

Posynomial operator*(const Posynomial& a, const Monomial& m) {
  auto t = a.terms_;
  for (auto& x : t) x = x * m;
  return Posynomial(std::move(t));
}

Posynomial operator*(const Posynomial& a, const Posynomial& b) {
  std::vector<Monomial> t;
  for (auto& x : a.terms_)
    for (auto& y : b.terms_) t.push_back(x * y);
  return Posynomial(std::move(t));
}

// ---------------------------------------------------------------- Expr

Expr::Expr() : Expr(1.0) {}
Expr::Expr(double c) : Expr(Monomial(c)) {}
Expr::Expr(const Variable& v) : Expr(Monomial(v)) {}

Expr::Expr(const Monomial& m) {
  auto n = make(NodeKind::Mono);
  n->mono = m;
  n_ = n;
}

Expr::Expr(const Posynomial& p) {
  if (p.is_monomial()) {
    *this = Expr(p.terms()[0]);
    return;
  }
  auto n = make(NodeKind::Posy);
  n->posy = p;
  n_ = n;
}

NodeKind Expr::kind() const { return n_->kind; }

const Monomial& Expr::monomial() const {
  if (kind() != NodeKind::Mono) throw std::logic_error("expression is not a monomial");
  return n_->mono;
}

const Posynomial& Expr::posynomial() const {
  if (kind() != NodeKind::Posy) throw std::logic_error("expression is not a posynomial");
  return n_->posy;
}

bool Expr::has_max() const {
  if (kind() == NodeKind::Max) return true;
  for (auto& a : n_->args)
    if (a.has_max()) return true;
  return false;
}

void Expr::collect_vars(std::vector<VarId>& out) const {
  auto add = [&](const Monomial& m) {
    for (auto& [id, p] : m.exps()) out.push_back(id);
  };
  switch (kind()) {
    case NodeKind::Mono:
      add(n_->mono);
      break;
    case NodeKind::Posy:
      for (auto& t : n_->posy.terms()) add(t);
      break;
    default:
      for (auto& a : n_->args) a.collect_vars(out);
  }
}

namespace {

bool is_posy_like(const Expr& e) {
  return e.kind() == NodeKind::Mono || e.kind() == NodeKind::Posy;
}

Posynomial as_posy(const Expr& e) {
  return e.kind() == NodeKind::Mono ? Posynomial(e.monomial()) : e.posynomial();
}

Expr nary(NodeKind k, std::vector<Expr> args) {
  auto n = make(k);
  n->args = std::move(args);
  return Expr(std::shared_ptr<const Node>(n));
}

}  // namespace

Expr operator+(const Expr& a, const Expr& b) {
  if (is_posy_like(a) && is_posy_like(b)) return Expr(as_posy(a) + as_posy(b));
  std::vector<Expr> args;
  for (const Expr* e : {&a, &b}) {
    if (e->kind() == NodeKind::Sum)
      args.insert(args.end(), e->node().args.begin(), e->node().args.end());
    else
      args.push_back(*e);
  }
  // Fold posynomial pieces into one leaf.
  std::vector<Expr> rest;
  std::vector<Monomial> pterms;
  for (auto& e : args) {
    if (is_posy_like(e)) {
      auto p = as_posy(e);
      pterms.insert(pterms.end(), p.terms().begin(), p.terms().end());
    } else {
      rest.push_back(e);
    }
  }
  if (!pterms.empty()) rest.insert(rest.begin(), Expr(Posynomial(pterms)));
  if (rest.size() == 1) return rest[0];
  return nary(NodeKind::Sum, std::move(rest));
}

Expr sum(const std::vector<Expr>& terms) {
  if (terms.empty()) throw std::invalid_argument("empty sum");
  Expr out = terms[0];
  for (size_t i = 1; i < terms.size(); ++i) out = out + terms[i];
  return out;
}

Expr operator*(const Expr& a, const Monomial& m) {
  const Node& n = a.node();
  switch (n.kind) {
    case NodeKind::Mono:
      return Expr(n.mono * m);
    case NodeKind::Posy:
      return Expr(n.posy * m);
    case NodeKind::Max:
    case NodeKind::Sum: {
      std::vector<Expr> args;
      for (auto& x : n.args) args.push_back(x * m);
      return nary(n.kind, std::move(args));
    }
    case NodeKind::Power: {
      auto out = make(NodeKind::Power);
      out->p = n.p;
      out->args = {n.args[0] * m.pow(1.0 / n.p)};
      return Expr(std::shared_ptr<const Node>(out));
    }
    case NodeKind::Product: {
      std::vector<Expr> args = n.args;
      for (auto& x : args) {
        if (x.kind() == NodeKind::Mono || x.kind() == NodeKind::Posy) {
          x = x * m;
          return nary(NodeKind::Product, std::move(args));
        }
      }
      args.insert(args.begin(), Expr(m));
      return nary(NodeKind::Product, std::move(args));
    }
    case NodeKind::Exp:
      if (m.is_constant() && m.coeff() == 1.0) return a;
      return nary(NodeKind::Product, {Expr(m), a});
  }
  throw std::logic_error("unreachable");
}

Expr operator*(const Expr& a, const Expr& b) {
  if (a.kind() == NodeKind::Mono) return b * a.monomial();
  if (b.kind() == NodeKind::Mono) return a * b.monomial();
  if (is_posy_like(a) && is_posy_like(b)) return Expr(as_posy(a) * as_posy(b));
  std::vector<Expr> args;
  for (const Expr* e : {&a, &b}) {
    if (e->kind() == NodeKind::Product)
      args.insert(args.end(), e->node().args.begin(), e->node().args.end());
    else
      args.push_back(*e);
  }
  return nary(NodeKind::Product, std::move(args));
}

Expr operator*(double c, const Expr& a) { return a * Monomial(c); }

Expr operator/(const Expr& a, const Monomial& m) { return a * m.pow(-1.0); }

Expr pow(const Expr& a, double p) {
  if (!(p > 0.0)) throw std::invalid_argument("power of an expression must be positive");
  if (a.kind() == NodeKind::Mono) return Expr(a.monomial().pow(p));
  if (p == 1.0) return a;
  if (a.kind() == NodeKind::Power) return pow(a.node().args[0], p * a.node().p);
  auto n = make(NodeKind::Power);
  n->p = p;
  n->args = {a};
  return Expr(std::shared_ptr<const Node>(n));
}

Expr max(std::vector<Expr> args) {
  if (args.empty()) throw std::invalid_argument("max of nothing");
  if (args.size() == 1) return args[0];
  std::vector<Expr> flat;
  for (auto& a : args) {
    if (a.kind() == NodeKind::Max)
      flat.insert(flat.end(), a.node().args.begin(), a.node().args.end());
    else
      flat.push_back(a);
  }
  return nary(NodeKind::Max, std::move(flat));
}

Expr max(const Expr& a, const Expr& b) { return max(std::vector<Expr>{a, b}); }

Expr exp_of(const Expr& inner) { return nary(NodeKind::Exp, {inner}); }

// ------------------------------------------------------------ lowering

std::vector<Expr> max_branches(const Expr& e) {
  const Node& n = e.node();
  switch (n.kind) {
    case NodeKind::Mono:
    case NodeKind::Posy:
      return {e};
    case NodeKind::Max: {
      std::vector<Expr> out;
      for (auto& a : n.args) {
        auto b = max_branches(a);
        out.insert(out.end(), b.begin(), b.end());
      }
      return out;
    }
    case NodeKind::Sum:
    case NodeKind::Product: {
      std::vector<Expr> acc = max_branches(n.args[0]);
      for (size_t i = 1; i < n.args.size(); ++i) {
        auto rhs = max_branches(n.args[i]);
        std::vector<Expr> next;
        for (auto& l : acc)
          for (auto& r : rhs) next.push_back(n.kind == NodeKind::Sum ? l + r : l * r);
        acc = std::move(next);
      }
      return acc;
    }
    case NodeKind::Power: {
      std::vector<Expr> out;
      for (auto& b : max_branches(n.args[0])) out.push_back(pow(b, n.p));
      return out;
    }
    case NodeKind::Exp: {
      std::vector<Expr> out;
      for (auto& b : max_branches(n.args[0])) out.push_back(exp_of(b));
      return out;
    }
  }
  throw std::logic_error("unreachable");
}

// ---------------------------------------------------------- evaluation

double evaluate(const Monomial& m, const Assignment& x) {
  double v = m.coeff();
  for (auto& [id, p] : m.exps()) {
    auto it = x.find(id);
    if (it == x.end()) throw std::out_of_range(fmt::format("variable {} not assigned", id));
    if (!(it->second > 0.0))
      throw std::domain_error(fmt::format("variable {} must be positive", id));
    v *= std::pow(it->second, p);
  }
  return v;
}

double evaluate(const Expr& e, const Assignment& x) {
  const Node& n = e.node();
  switch (n.kind) {
    case NodeKind::Mono:
      return evaluate(n.mono, x);
    case NodeKind::Posy: {
      double s = 0.0;
      for (auto& t : n.posy.terms()) s += evaluate(t, x);
      return s;
    }
    case NodeKind::Max: {
      double m = -std::numeric_limits<double>::infinity();
      for (auto& a : n.args) m = std::max(m, evaluate(a, x));
      return m;
    }
    case NodeKind::Sum: {
      double s = 0.0;
      for (auto& a : n.args) s += evaluate(a, x);
      return s;
    }
    case NodeKind::Product: {
      double s = 1.0;
      for (auto& a : n.args) s *= evaluate(a, x);
      return s;
    }
    case NodeKind::Power:
      return std::pow(evaluate(n.args[0], x), n.p);
    case NodeKind::Exp:
      return std::exp(evaluate(n.args[0], x));
  }
  throw std::logic_error("unreachable");
}

namespace {

double lse(const std::vector<double>& v) {
  double m = *std::max_element(v.begin(), v.end());
  if (!std::isfinite(m)) return m;
  double s = 0.0;
  for (double x : v) s += std::exp(x - m);
  return m + std::log(s);
}

double log_mono(const Monomial& m, const Assignment& u) {
  double v = std::log(m.coeff());
  for (auto& [id, p] : m.exps()) {
    auto it = u.find(id);
    if (it == u.end()) throw std::out_of_range(fmt::format("variable {} not assigned", id));
    v += p * it->second;
  }
  return v;
}

}  // namespace

double log_eval(const Expr& e, const Assignment& u) {
  const Node& n = e.node();
  switch (n.kind) {
    case NodeKind::Mono:
      return log_mono(n.mono, u);
    case NodeKind::Posy: {
      std::vector<double> v;
      for (auto& t : n.posy.terms()) v.push_back(log_mono(t, u));
      return lse(v);
    }
    case NodeKind::Max: {
      double m = -std::numeric_limits<double>::infinity();
      for (auto& a : n.args) m = std::max(m, log_eval(a, u));
      return m;
    }
    case NodeKind::Sum: {
      std::vector<double> v;
      for (auto& a : n.args) v.push_back(log_eval(a, u));
      return lse(v);
    }
    case NodeKind::Product: {
      double s = 0.0;
      for (auto& a : n.args) s += log_eval(a, u);
      return s;
    }
    case NodeKind::Power:
      return n.p * log_eval(n.args[0], u);
    case NodeKind::Exp:
      return std::exp(log_eval(n.args[0], u));
  }
  throw std::logic_error("unreachable");
}

// -------------------------------------------------------------- printing

namespace {

std::string name_of(VarId id, const std::vector<std::string>& names) {
  if (id >= 0 && id < static_cast<VarId>(names.size())) return names[id];
  return fmt::format("x{}", id);
}

std::string mono_str(const Monomial& m, const std::vector<std::string>& names) {
  std::string s = fmt::format("{:.6g}", m.coeff());
  for (auto& [id, p] : m.exps()) {
    s += "*" + name_of(id, names);
    if (p != 1.0) s += fmt::format("^{:.6g}", p);
  }
  return s;
}

}  // namespace

std::string to_string(const Expr& e, const std::vector<std::string>& names) {
  const Node& n = e.node();
  auto join = [&](const char* sep) {
    std::string s;
    for (size_t i = 0; i < n.args.size(); ++i) {
      if (i) s += sep;
      s += to_string(n.args[i], names);
    }
    return s;
  };
  switch (n.kind) {
    case NodeKind::Mono:
      return mono_str(n.mono, names);
    case NodeKind::Posy: {
      std::string s;
      for (size_t i = 0; i < n.posy.terms().size(); ++i) {
        if (i) s += " + ";
        s += mono_str(n.posy.terms()[i], names);
      }
      return "(" + s + ")";
    }
    case NodeKind::Max:
      return "max(" + join(", ") + ")";
    case NodeKind::Sum:
      return "(" + join(" + ") + ")";
    case NodeKind::Product:
      return join(" * ");
    case NodeKind::Power:
      return fmt::format("({})^{:.6g}", to_string(n.args[0], names), n.p);
    case NodeKind::Exp:
      return "exp(" + join("") + ")";
  }
  return "?";
}

}  // namespace zevrpp::gp
