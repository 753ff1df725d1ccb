#pragma once

#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace zevrpp::gp {

using VarId = int;

enum class VarKind { Positive, Integer };

struct Variable {
  VarId id = -1;
  std::string name;
  VarKind kind = VarKind::Positive;
};

// c * prod x_i^a_i with c > 0. Exponents kept sorted by id, zeros dropped.
class Monomial {
 public:
  Monomial() = default;
  explicit Monomial(double c);
  Monomial(const Variable& v);  // NOLINT: a variable is the monomial x
  Monomial(double c, std::vector<std::pair<VarId, double>> exps);

  double coeff() const { return c_; }
  const std::vector<std::pair<VarId, double>>& exps() const { return exps_; }
  double exponent(VarId id) const;
  bool is_constant() const { return exps_.empty(); }

  Monomial pow(double p) const;

  friend Monomial operator*(const Monomial& a, const Monomial& b);
  friend Monomial operator/(const Monomial& a, const Monomial& b);
  friend bool operator==(const Monomial& a, const Monomial& b);

 private:
  double c_ = 1.0;
  std::vector<std::pair<VarId, double>> exps_;
};

class Posynomial {
 public:
  Posynomial() = default;
  Posynomial(const Monomial& m);  // NOLINT
  explicit Posynomial(std::vector<Monomial> terms);

  const std::vector<Monomial>& terms() const { return terms_; }
  bool is_monomial() const { return terms_.size() == 1; }

  friend Posynomial operator+(const Posynomial& a, const Posynomial& b);
  friend Posynomial operator*(const Posynomial& a, const Posynomial& b);
  friend Posynomial operator*(const Posynomial& a, const Monomial& m);

 private:
  std::vector<Monomial> terms_;
};

Monomial pow(const Monomial& m, double p);

enum class NodeKind { Mono, Posy, Max, Sum, Product, Power, Exp };

struct Node;

// Immutable, shared log-convex expression. Every constructor keeps the
// expression log-convex; there is no subtraction and no division by anything
// but a monomial.
class Expr {
 public:
  Expr();
  Expr(double c);              // NOLINT
  Expr(const Variable& v);     // NOLINT
  Expr(const Monomial& m);     // NOLINT
  Expr(const Posynomial& p);   // NOLINT
  explicit Expr(std::shared_ptr<const Node> n) : n_(std::move(n)) {}

  NodeKind kind() const;
  const Node& node() const { return *n_; }

  // Valid only for Mono / Posy nodes.
  const Monomial& monomial() const;
  const Posynomial& posynomial() const;

  bool is_monomial() const { return kind() == NodeKind::Mono; }
  bool has_max() const;

  void collect_vars(std::vector<VarId>& out) const;

 private:
  std::shared_ptr<const Node> n_;
};

struct Node {
  NodeKind kind;
  Monomial mono;
  Posynomial posy;
  std::vector<Expr> args;  // Max, Sum, Product, Power (1 arg), Exp (1 arg)
  double p = 1.0;          // Power exponent
};

Expr operator+(const Expr& a, const Expr& b);
Expr operator*(const Expr& a, const Expr& b);
Expr operator*(const Expr& a, const Monomial& m);
Expr operator*(double c, const Expr& a);
Expr operator/(const Expr& a, const Monomial& m);
Expr pow(const Expr& a, double p);
Expr max(std::vector<Expr> args);
Expr max(const Expr& a, const Expr& b);
// exp(inner) for a Max-free posynomial inner; exp of a monomial is the
// degradation atom.
Expr exp_of(const Expr& inner);
Expr sum(const std::vector<Expr>& terms);

// Split a possibly Max-containing expression into Max-free branches with
// expr == max(branches). Max distributes over sum, product, power and exp.
std::vector<Expr> max_branches(const Expr& e);

using Assignment = std::map<VarId, double>;

double evaluate(const Monomial& m, const Assignment& x);
double evaluate(const Expr& e, const Assignment& x);
// log f(exp u)
double log_eval(const Expr& e, const Assignment& u);

std::string to_string(const Expr& e, const std::vector<std::string>& names = {});

}  // namespace zevrpp::gp
