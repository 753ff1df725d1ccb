#include "zevrpp/gp/solver.hpp"

#include <fmt/format.h>

#include <Eigen/Cholesky>
#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <map>
#include <queue>
#include <stdexcept>

#include "zevrpp/gp/logspace.hpp"

namespace zevrpp::gp {

std::string to_string(Status s) {
  switch (s) {
    case Status::Optimal: return "optimal";
    case Status::Infeasible: return "infeasible";
    case Status::Unbounded: return "unbounded";
    case Status::IterationLimit: return "iteration-limit";
    case Status::NodeLimit: return "node-limit";
  }
  return "?";
}

namespace {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;
using Sparse = std::vector<std::pair<int, double>>;

// u_j = off_j + row_j . z
struct UMap {
  std::vector<double> off;
  std::vector<Sparse> rows;
  std::vector<bool> fixed;
  std::vector<double> fixed_value;
  std::vector<int> z_of_u;
  int nz = 0;
};

enum class Src { Constraint, Bound, Box, Epigraph, PhaseOne };

struct Fn {
  std::vector<int> vars;  // z indices
  CNode root;             // over local indices into vars
  bool affine = false;
  Src src = Src::Constraint;
  int index = -1;  // constraint index for Src::Constraint
};

struct Compiled {
  UMap map;
  int nz = 0;
  int epigraph = -1;  // z index of the objective epigraph variable
  Fn obj;
  std::vector<Fn> ineq;
  bool infeasible = false;
  std::string why;
};

// Rewrite every affine leaf from u coordinates to z coordinates and relabel
// to a compact local index set.
void to_z(CNode& n, const UMap& m) {
  if (n.type == CNode::Type::Affine) {
    std::map<int, double> acc;
    double c = n.c;
    for (auto& [j, a] : n.a) {
      c += a * m.off[j];
      for (auto& [k, r] : m.rows[j]) acc[k] += a * r;
    }
    n.a.clear();
    for (auto& [k, v] : acc)
      if (v != 0.0) n.a.emplace_back(k, v);
    n.c = c;
    return;
  }
  for (auto& k : n.kids) to_z(k, m);
}

void gather(const CNode& n, std::vector<int>& out) {
  for (auto& [k, v] : n.a) out.push_back(k);
  for (auto& c : n.kids) gather(c, out);
}

void relabel(CNode& n, const std::map<int, int>& pos) {
  for (auto& [k, v] : n.a) k = pos.at(k);
  for (auto& c : n.kids) relabel(c, pos);
}

Fn finish(CNode root, Src src, int index) {
  Fn f;
  gather(root, f.vars);
  std::sort(f.vars.begin(), f.vars.end());
  f.vars.erase(std::unique(f.vars.begin(), f.vars.end()), f.vars.end());
  std::map<int, int> pos;
  for (size_t i = 0; i < f.vars.size(); ++i) pos[f.vars[i]] = static_cast<int>(i);
  relabel(root, pos);
  f.affine = root.type == CNode::Type::Affine;
  f.root = std::move(root);
  f.src = src;
  f.index = index;
  return f;
}

CNode u_affine(Sparse a, double c) { return CNode::affine(std::move(a), c); }

CNode sum_node(std::vector<CNode> kids) {
  CNode n;
  n.type = CNode::Type::Sum;
  n.kids = std::move(kids);
  return n;
}

CNode compile_u(const Expr& e) {
  return compile_log(e, [](VarId id) { return static_cast<int>(id); });
}

// Gauss-Jordan with complete pivoting on [A | b]; returns pivot columns.
struct Reduced {
  std::vector<int> pivot_col;
  Mat R;  // rows in pivot order, full width
  Vec rhs;
  bool consistent = true;
};

Reduced reduce(Mat A, Vec b, const std::vector<bool>& usable) {
  Reduced out;
  const int m = static_cast<int>(A.rows()), n = static_cast<int>(A.cols());
  std::vector<bool> row_used(m, false), col_used(n, false);
  double scale = std::max(1.0, A.cwiseAbs().maxCoeff());
  std::vector<int> prow;
  for (int step = 0; step < m; ++step) {
    double best = 0.0;
    int br = -1, bc = -1;
    for (int r = 0; r < m; ++r) {
      if (row_used[r]) continue;
      for (int c = 0; c < n; ++c) {
        if (col_used[c] || !usable[c]) continue;
        if (std::abs(A(r, c)) > best) {
          best = std::abs(A(r, c));
          br = r;
          bc = c;
        }
      }
    }
    if (br < 0 || best < 1e-12 * scale) break;
    row_used[br] = true;
    col_used[bc] = true;
    double piv = A(br, bc);
    A.row(br) /= piv;
    b[br] /= piv;
    for (int r = 0; r < m; ++r) {
      if (r == br || A(r, bc) == 0.0) continue;
      double f = A(r, bc);
      A.row(r) -= f * A.row(br);
      b[r] -= f * b[br];
    }
    prow.push_back(br);
    out.pivot_col.push_back(bc);
  }
  for (int r = 0; r < m; ++r)
    if (!row_used[r] && std::abs(b[r]) > 1e-9 * std::max(1.0, b.cwiseAbs().maxCoeff()))
      out.consistent = false;
  out.R.resize(static_cast<Eigen::Index>(prow.size()), n);
  out.rhs.resize(static_cast<Eigen::Index>(prow.size()));
  for (size_t i = 0; i < prow.size(); ++i) {
    out.R.row(static_cast<Eigen::Index>(i)) = A.row(prow[i]);
    out.rhs[static_cast<Eigen::Index>(i)] = b[prow[i]];
  }
  return out;
}

Compiled compile(const Problem& p, const std::vector<double>& lb, const std::vector<double>& ub,
                 const Tolerances& tol) {
  Compiled cp;
  const int n = p.num_vars();
  UMap& m = cp.map;
  m.off.assign(n, 0.0);
  m.rows.assign(n, {});
  m.fixed.assign(n, false);
  m.fixed_value.assign(n, 0.0);
  m.z_of_u.assign(n, -1);

  for (int j = 0; j < n; ++j) {
    if (lb[j] > ub[j] * (1 + 1e-12)) {
      cp.infeasible = true;
      cp.why = fmt::format("empty bounds on {}", p.var(j).var.name);
      return cp;
    }
    if (lb[j] > 0.0 && std::abs(ub[j] - lb[j]) <= 1e-14 * ub[j]) {
      m.fixed[j] = true;
      m.fixed_value[j] = lb[j];
      m.off[j] = std::log(lb[j]);
    }
  }

  // Monomial equalities: a.u = -log c.
  std::vector<int> eq_idx;
  for (size_t i = 0; i < p.constraints().size(); ++i)
    if (p.constraints()[i].form == ConstraintForm::MonoEQ1) eq_idx.push_back(static_cast<int>(i));
  std::vector<bool> pivot(n, false);
  Reduced red;
  if (!eq_idx.empty()) {
    Mat A = Mat::Zero(static_cast<Eigen::Index>(eq_idx.size()), n);
    Vec b(static_cast<Eigen::Index>(eq_idx.size()));
    for (size_t r = 0; r < eq_idx.size(); ++r) {
      const Monomial& mono = p.constraints()[eq_idx[r]].mono;
      double rhs = -std::log(mono.coeff());
      for (auto& [id, a] : mono.exps()) {
        if (m.fixed[id])
          rhs -= a * m.off[id];
        else
          A(static_cast<Eigen::Index>(r), id) += a;
      }
      b[static_cast<Eigen::Index>(r)] = rhs;
    }
    std::vector<bool> usable(n);
    for (int j = 0; j < n; ++j) usable[j] = !m.fixed[j];
    red = reduce(A, b, usable);
    if (!red.consistent) {
      cp.infeasible = true;
      cp.why = "inconsistent monomial equalities";
      return cp;
    }
    for (int c : red.pivot_col) pivot[c] = true;
  }

  for (int j = 0; j < n; ++j) {
    if (m.fixed[j] || pivot[j]) continue;
    m.z_of_u[j] = cp.nz;
    m.rows[j] = {{cp.nz, 1.0}};
    ++cp.nz;
  }
  for (size_t r = 0; r < red.pivot_col.size(); ++r) {
    int j = red.pivot_col[r];
    auto ri = static_cast<Eigen::Index>(r);
    m.off[j] = red.rhs[ri];
    Sparse row;
    for (int k = 0; k < n; ++k) {
      if (k == j || m.fixed[k] || pivot[k]) continue;
      double a = red.R(ri, k);
      if (std::abs(a) > 1e-15) row.emplace_back(m.z_of_u[k], -a);
    }
    m.rows[j] = std::move(row);
  }
  m.nz = cp.nz;

  auto add_ineq = [&](CNode root, Src src, int index) {
    to_z(root, m);
    Fn f = finish(std::move(root), src, index);
    if (f.vars.empty()) {
      double v = value_node(f.root, Vec());
      if (v > tol.feas) {
        cp.infeasible = true;
        cp.why = fmt::format("constraint {} violated by fixed values", index);
      }
      return;
    }
    cp.ineq.push_back(std::move(f));
  };

  // Objective.
  auto branches = max_branches(p.objective());
  if (branches.size() == 1) {
    CNode r = compile_u(branches[0]);
    to_z(r, m);
    cp.obj = finish(std::move(r), Src::Constraint, -1);
  } else {
    cp.epigraph = cp.nz++;
    Fn obj;
    obj.vars = {cp.epigraph};
    obj.root = CNode::affine({{0, 1.0}}, 0.0);
    obj.affine = true;
    cp.obj = obj;
  }

  for (size_t i = 0; i < p.constraints().size(); ++i) {
    const Constraint& c = p.constraints()[i];
    int idx = static_cast<int>(i);
    if (c.form == ConstraintForm::PosyLE1) {
      for (auto& b : max_branches(c.expr)) add_ineq(compile_u(b), Src::Constraint, idx);
    } else if (c.form == ConstraintForm::LogLE) {
      std::vector<CNode> kids;
      for (auto& t : c.posy.terms()) {
        CNode e;
        e.type = CNode::Type::Exp;
        e.kids.push_back(compile_u(Expr(t)));
        kids.push_back(std::move(e));
      }
      Sparse a;
      for (auto& [id, q] : c.mono.exps()) a.emplace_back(id, -q);
      kids.push_back(u_affine(std::move(a), -std::log(c.mono.coeff())));
      add_ineq(sum_node(std::move(kids)), Src::Constraint, idx);
    }
  }

  if (cp.epigraph >= 0) {
    for (auto& b : max_branches(p.objective())) {
      CNode r = compile_u(b);
      to_z(r, m);
      // F_b(z) - t <= 0; t lives outside the u map.
      CNode t = CNode::affine({{cp.epigraph, -1.0}}, 0.0);
      Fn f = finish(sum_node({std::move(r), std::move(t)}), Src::Epigraph, -1);
      cp.ineq.push_back(std::move(f));
    }
  }

  // Bounds and the safety box, in u.
  for (int j = 0; j < n; ++j) {
    if (m.fixed[j]) continue;
    double lo = -tol.box, hi = tol.box;
    if (lb[j] > 0.0) {
      add_ineq(u_affine({{j, -1.0}}, std::log(lb[j])), Src::Bound, j);
      lo = std::log(lb[j]);
    }
    if (std::isfinite(ub[j])) {
      add_ineq(u_affine({{j, 1.0}}, -std::log(ub[j])), Src::Bound, j);
      hi = std::log(ub[j]);
    }
    if (lo == -tol.box) add_ineq(u_affine({{j, -1.0}}, -tol.box), Src::Box, j);
    if (hi == tol.box) add_ineq(u_affine({{j, 1.0}}, -tol.box), Src::Box, j);
  }
  if (cp.epigraph >= 0) {
    Fn lo = finish(CNode::affine({{cp.epigraph, -1.0}}, -tol.box), Src::Box, -1);
    Fn hi = finish(CNode::affine({{cp.epigraph, 1.0}}, -tol.box), Src::Box, -1);
    cp.ineq.push_back(std::move(lo));
    cp.ineq.push_back(std::move(hi));
  }
  return cp;
}

// ------------------------------------------------------------------ IPM

Vec local_of(const Fn& f, const Vec& z) {
  Vec w(static_cast<Eigen::Index>(f.vars.size()));
  for (size_t i = 0; i < f.vars.size(); ++i) w[static_cast<Eigen::Index>(i)] = z[f.vars[i]];
  return w;
}

double fval(const Fn& f, const Vec& z) {
  if (f.affine) {
    double v = f.root.c;
    for (auto& [k, a] : f.root.a) v += a * z[f.vars[k]];
    return v;
  }
  return value_node(f.root, local_of(f, z));
}

void feval(const Fn& f, const Vec& z, bool hess, Eval& e) {
  if (f.affine) {
    e.f = f.root.c;
    e.g.setZero(static_cast<Eigen::Index>(f.vars.size()));
    for (auto& [k, a] : f.root.a) {
      e.f += a * z[f.vars[k]];
      e.g[k] += a;
    }
    return;
  }
  eval_node(f.root, local_of(f, z), hess, e);
}

struct IpmOut {
  bool converged = false;
  bool stalled = false;
  Vec z, lam;
  double f0 = 0.0;
  double rdual = 0.0, gap = 0.0, comp = 0.0;
  int iters = 0;
};

struct IpmOpts {
  double eps_gap = 1e-11;
  double eps_dual = 1e-10;
  int max_iter = 400;
  double mu = 10.0;
  // Stop as soon as this returns true (phase I early exit).
  std::function<bool(const Vec&, const std::vector<double>&)> stop;
};

// Symmetric Jacobi equilibration, Cholesky, two refinement sweeps; a growing
// diagonal shift if the factorization fails.
Vec newton_solve(const Mat& H, const Vec& rhs) {
  Vec d = H.diagonal().cwiseMax(1e-300).cwiseSqrt().cwiseInverse();
  Mat S = d.asDiagonal() * H * d.asDiagonal();
  Vec b = d.cwiseProduct(rhs);
  double reg = 0.0;
  for (;;) {
    Mat Sr = S;
    if (reg > 0) Sr.diagonal().array() += reg;
    Eigen::LLT<Mat> llt(Sr);
    if (llt.info() == Eigen::Success) {
      Vec y = llt.solve(b);
      for (int ref = 0; ref < 2; ++ref) y += llt.solve(b - S * y);
      return d.cwiseProduct(y);
    }
    reg = reg == 0.0 ? 1e-14 : reg * 100;
    if (reg > 1e-2) throw std::runtime_error("newton system is not positive definite");
  }
}

IpmOut ipm(const Fn& obj, const std::vector<Fn>& ineq, int nz, Vec z, const IpmOpts& opt) {
  const int m = static_cast<int>(ineq.size());
  IpmOut out;
  std::vector<double> f(m);
  std::vector<Eval> ev(m);
  Eval e0;
  for (int i = 0; i < m; ++i) {
    f[i] = fval(ineq[i], z);
    if (!(f[i] < 0.0)) throw std::logic_error("ipm start is not strictly feasible");
  }
  Vec lam(m);
  for (int i = 0; i < m; ++i) lam[i] = 1.0 / (-f[i]);

  auto rdual_at = [&](const Vec& zz, const Vec& ll, std::vector<double>& ff, Vec& rd) {
    Eval e;
    feval(obj, zz, false, e);
    rd.setZero(nz);
    for (size_t k = 0; k < obj.vars.size(); ++k) rd[obj.vars[k]] += e.g[static_cast<Eigen::Index>(k)];
    for (int i = 0; i < m; ++i) {
      Eval ei;
      feval(ineq[i], zz, false, ei);
      ff[i] = ei.f;
      for (size_t k = 0; k < ineq[i].vars.size(); ++k)
        rd[ineq[i].vars[k]] += ll[i] * ei.g[static_cast<Eigen::Index>(k)];
    }
    return e.f;
  };
  auto resid = [&](const Vec& rd, const std::vector<double>& ff, const Vec& ll, double t) {
    double s = rd.squaredNorm();
    for (int i = 0; i < m; ++i) {
      double rc = -ll[i] * ff[i] - 1.0 / t;
      s += rc * rc;
    }
    return std::sqrt(s);
  };

  Mat H(nz, nz);
  Vec g0(nz), rhs(nz), rd(nz);
  for (int it = 0; it < opt.max_iter; ++it) {
    out.iters = it + 1;
    feval(obj, z, true, e0);
    g0.setZero();
    H.setZero();
    for (size_t a = 0; a < obj.vars.size(); ++a) {
      g0[obj.vars[a]] += e0.g[static_cast<Eigen::Index>(a)];
      if (!obj.affine)
        for (size_t b = 0; b < obj.vars.size(); ++b)
          H(obj.vars[a], obj.vars[b]) += e0.H(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b));
    }
    rd = g0;
    double gap = 0.0;
    for (int i = 0; i < m; ++i) {
      feval(ineq[i], z, true, ev[i]);
      f[i] = ev[i].f;
      gap -= f[i] * lam[i];
      const auto& vars = ineq[i].vars;
      for (size_t k = 0; k < vars.size(); ++k) rd[vars[k]] += lam[i] * ev[i].g[static_cast<Eigen::Index>(k)];
    }
    double rdn = rd.lpNorm<Eigen::Infinity>();
    out.rdual = rdn;
    out.gap = gap;
    out.f0 = e0.f;
    if (opt.stop && opt.stop(z, f)) {
      out.converged = true;
      break;
    }
    if (rdn <= opt.eps_dual && gap <= opt.eps_gap * std::max(1.0, std::abs(e0.f))) {
      out.converged = true;
      break;
    }
    double t = opt.mu * m / gap;
    if (std::getenv("ZEVRPP_IPM_TRACE"))
      fmt::print(stderr, "ipm {:4d} f0 {:.12g} rdual {:.3e} gap {:.3e}\n", it, e0.f, rdn, gap);
    rhs = -g0;
    for (int i = 0; i < m; ++i) {
      const auto& vars = ineq[i].vars;
      const Eval& e = ev[i];
      double w = lam[i] / (-f[i]);
      for (size_t a = 0; a < vars.size(); ++a) {
        auto ia = static_cast<Eigen::Index>(a);
        rhs[vars[a]] -= e.g[ia] / (t * (-f[i]));
        for (size_t b = 0; b < vars.size(); ++b) {
          auto ib = static_cast<Eigen::Index>(b);
          double h = w * e.g[ia] * e.g[ib];
          if (!ineq[i].affine) h += lam[i] * e.H(ia, ib);
          H(vars[a], vars[b]) += h;
        }
      }
    }
    Vec dz = newton_solve(H, rhs);
    Vec dlam(m);
    for (int i = 0; i < m; ++i) {
      double gd = 0.0;
      const auto& vars = ineq[i].vars;
      for (size_t k = 0; k < vars.size(); ++k) gd += ev[i].g[static_cast<Eigen::Index>(k)] * dz[vars[k]];
      dlam[i] = -lam[i] + (1.0 / t + lam[i] * gd) / (-f[i]);
    }
    double smax = 1.0;
    for (int i = 0; i < m; ++i)
      if (dlam[i] < 0) smax = std::min(smax, -lam[i] / dlam[i]);
    double s = 0.99 * smax;
    double r0 = resid(rd, f, lam, t);
    std::vector<double> fn(m);
    Vec zn, ln, rdn2(nz);
    bool ok = false;
    for (int ls = 0; ls < 80; ++ls) {
      zn = z + s * dz;
      bool feas = true;
      for (int i = 0; i < m && feas; ++i) feas = fval(ineq[i], zn) < 0.0;
      if (feas) {
        ln = lam + s * dlam;
        rdual_at(zn, ln, fn, rdn2);
        if (resid(rdn2, fn, ln, t) <= (1.0 - 0.01 * s) * r0) {
          ok = true;
          break;
        }
      }
      s *= 0.5;
    }
    if (!ok) {
      out.stalled = true;
      break;
    }
    z = zn;
    lam = ln;
  }
  out.z = z;
  out.lam = lam;
  double comp = 0.0;
  for (int i = 0; i < m; ++i) comp = std::max(comp, lam[i] * std::abs(fval(ineq[i], z)));
  out.comp = comp;
  return out;
}

struct Phase1 {
  bool feasible = false;
  bool certified = false;
  Vec z;
  int iters = 0;
};

Phase1 phase_one(const Compiled& cp, Vec z0, const Tolerances& tol) {
  Phase1 res;
  const int nz = cp.nz;
  double fmax = -std::numeric_limits<double>::infinity();
  for (auto& f : cp.ineq) fmax = std::max(fmax, fval(f, z0));
  if (fmax < -1e-3 || cp.ineq.empty()) {
    res.feasible = true;
    res.z = z0;
    return res;
  }
  // minimize s subject to F_i(z) - s <= 0, s >= -1
  const int sidx = nz;
  std::vector<Fn> ineq;
  ineq.reserve(cp.ineq.size() + 1);
  for (auto& f : cp.ineq) {
    Fn g = f;
    g.vars.push_back(sidx);
    int loc = static_cast<int>(g.vars.size()) - 1;
    if (g.affine) {
      g.root.a.emplace_back(loc, -1.0);
    } else {
      g.root = sum_node({g.root, CNode::affine({{loc, -1.0}}, 0.0)});
    }
    g.src = Src::PhaseOne;
    ineq.push_back(std::move(g));
  }
  Fn lo;
  lo.vars = {sidx};
  lo.root = CNode::affine({{0, -1.0}}, -1.0);
  lo.affine = true;
  ineq.push_back(lo);
  Fn obj;
  obj.vars = {sidx};
  obj.root = CNode::affine({{0, 1.0}}, 0.0);
  obj.affine = true;

  Vec w(nz + 1);
  w.head(nz) = z0;
  w[nz] = std::max(fmax, -0.5) + 1.0;
  IpmOpts opt;
  opt.max_iter = tol.max_iter;
  opt.eps_gap = 1e-12;
  opt.eps_dual = 1e-11;
  opt.stop = [&](const Vec& x, const std::vector<double>&) { return x[nz] < -0.25; };
  IpmOut r = ipm(obj, ineq, nz + 1, w, opt);
  res.iters = r.iters;
  res.z = r.z.head(nz);
  double fm = -std::numeric_limits<double>::infinity();
  for (auto& f : cp.ineq) fm = std::max(fm, fval(f, res.z));
  res.feasible = fm < -1e-10;
  res.certified = !res.feasible && (r.converged || r.stalled);
  return res;
}

Vec start_point(const Compiled& cp, const std::vector<double>* warm_u, const Problem& p,
                const std::vector<double>& lb, const std::vector<double>& ub) {
  Vec z = Vec::Zero(cp.nz);
  const int n = p.num_vars();
  for (int j = 0; j < n; ++j) {
    int k = cp.map.z_of_u[j];
    if (k < 0) continue;
    double lo = lb[j] > 0 ? std::log(lb[j]) : -1e300;
    double hi = std::isfinite(ub[j]) ? std::log(ub[j]) : 1e300;
    double v = warm_u ? (*warm_u)[j] : 0.0;
    if (!std::isfinite(v)) v = 0.0;
    if (hi - lo < 1e300) {
      double d = std::min(1e-2, (hi - lo) / 4);
      v = std::clamp(v, lo + d, hi - d);
    } else if (v <= lo) {
      v = lo + 1.0;
    } else if (v >= hi) {
      v = hi - 1.0;
    }
    z[k] = v;
  }
  if (cp.epigraph >= 0) {
    double t = -std::numeric_limits<double>::infinity();
    for (auto& f : cp.ineq)
      if (f.src == Src::Epigraph) {
        Vec zz = z;
        zz[cp.epigraph] = 0.0;
        t = std::max(t, fval(f, zz));
      }
    z[cp.epigraph] = t + 1.0;
  }
  return z;
}

std::vector<double> u_of_z(const Compiled& cp, const Vec& z, int n) {
  std::vector<double> u(n);
  for (int j = 0; j < n; ++j) {
    double v = cp.map.off[j];
    for (auto& [k, a] : cp.map.rows[j]) v += a * z[k];
    u[j] = v;
  }
  return u;
}

}  // namespace

Solution solve_relaxation_bounded(const Problem& p, const std::vector<double>& int_lb,
                                  const std::vector<double>& int_ub, const Tolerances& tol,
                                  const std::vector<double>* warm, double default_int_ub) {
  const int n = p.num_vars();
  std::vector<double> lb(n), ub(n);
  for (int j = 0; j < n; ++j) {
    lb[j] = p.var(j).lb;
    ub[j] = p.var(j).ub;
  }
  auto ints = p.integer_vars();
  for (size_t k = 0; k < ints.size(); ++k) {
    int j = ints[k];
    lb[j] = std::max(1.0, k < int_lb.size() ? int_lb[k] : std::ceil(lb[j]));
    double u = k < int_ub.size() ? int_ub[k] : ub[j];
    if (!std::isfinite(u)) u = default_int_ub;
    ub[j] = u;
  }

  Solution sol;
  Compiled cp = compile(p, lb, ub, tol);
  if (cp.infeasible) {
    sol.status = Status::Infeasible;
    return sol;
  }
  Vec z0 = start_point(cp, warm, p, lb, ub);
  Phase1 ph = phase_one(cp, z0, tol);
  sol.iterations = ph.iters;
  if (!ph.feasible) {
    sol.status = ph.certified ? Status::Infeasible : Status::IterationLimit;
    return sol;
  }
  IpmOpts opt;
  opt.max_iter = tol.max_iter;
  opt.eps_dual = 0.5 * tol.kkt;
  opt.eps_gap = 1e-10;
  IpmOut r = ipm(cp.obj, cp.ineq, cp.nz, ph.z, opt);
  sol.iterations += r.iters;
  bool good = r.converged ||
              (r.rdual <= tol.kkt && r.gap <= tol.kkt * std::max(1.0, std::abs(r.f0)));
  if (!good) {
    sol.status = Status::IterationLimit;
  } else {
    sol.status = Status::Optimal;
    for (size_t i = 0; i < cp.ineq.size(); ++i)
      if (cp.ineq[i].src == Src::Box && fval(cp.ineq[i], r.z) > -1.0) sol.status = Status::Unbounded;
  }
  auto u = u_of_z(cp, r.z, n);
  sol.values.resize(n);
  for (int j = 0; j < n; ++j) sol.values[j] = cp.map.fixed[j] ? cp.map.fixed_value[j] : std::exp(u[j]);
  sol.objective = evaluate(p.objective(), to_assignment(sol.values));
  sol.kkt_residual = std::max(r.rdual, r.comp);
  sol.relaxation_bound = sol.objective;
  return sol;
}

Solution solve_convex_relaxation(const Problem& p, const Tolerances& tol) {
  return solve_relaxation_bounded(p, {}, {}, tol);
}

// ------------------------------------------------------------------ B&B

namespace {

struct BNode {
  double bound;
  long id;
  std::vector<double> lb, ub;
  Solution relax;
};

struct NodeOrder {
  bool operator()(const BNode& a, const BNode& b) const {
    if (a.bound != b.bound) return a.bound > b.bound;
    return a.id > b.id;
  }
};

bool lex_less(const std::vector<double>& a, const std::vector<double>& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

}  // namespace

Solution solve_migp(const Problem& p, const Tolerances& tol, const BnbConfig& cfg) {
  auto ints = p.integer_vars();
  if (ints.empty()) return solve_convex_relaxation(p, tol);
  const size_t ni = ints.size();
  std::vector<double> lb(ni), ub(ni);
  for (size_t k = 0; k < ni; ++k) {
    const auto& v = p.var(ints[k]);
    lb[k] = std::max(1.0, std::ceil(v.lb - 1e-9));
    ub[k] = std::isfinite(v.ub) ? std::floor(v.ub + 1e-9) : cfg.default_int_ub;
  }

  long nodes = 0;
  auto relax = [&](const std::vector<double>& l, const std::vector<double>& u,
                   const Solution* parent) {
    ++nodes;
    std::vector<double> warm;
    if (parent && cfg.warm_start && !parent->values.empty()) {
      warm.resize(parent->values.size());
      for (size_t j = 0; j < warm.size(); ++j) warm[j] = std::log(parent->values[j]);
    }
    return solve_relaxation_bounded(p, l, u, tol, warm.empty() ? nullptr : &warm,
                                    cfg.default_int_ub);
  };

  Solution root = relax(lb, ub, nullptr);
  if (root.status != Status::Optimal) {
    root.bnb_nodes = nodes;
    return root;
  }

  Solution best;
  best.status = Status::Infeasible;
  std::vector<double> best_int;
  double best_obj = std::numeric_limits<double>::infinity();
  auto int_values = [&](const Solution& s) {
    std::vector<double> v(ni);
    for (size_t k = 0; k < ni; ++k) v[k] = s.values[ints[k]];
    return v;
  };
  auto offer = [&](const Solution& s) {
    if (s.status != Status::Optimal) return;
    auto iv = int_values(s);
    double gap = tol.gap_rel * std::max(std::abs(best_obj), 1e-300);
    bool better = s.objective < best_obj - gap;
    bool tie = !better && s.objective <= best_obj + gap && lex_less(iv, best_int);
    if (better || tie || best.status != Status::Optimal) {
      best = s;
      best_int = iv;
    }
    best_obj = std::min(best_obj, s.objective);
  };

  // Incumbent from rounding the root relaxation up.
  {
    std::vector<double> fx(ni);
    for (size_t k = 0; k < ni; ++k)
      fx[k] = std::clamp(std::ceil(root.values[ints[k]] - 1e-6), lb[k], ub[k]);
    offer(relax(fx, fx, &root));
  }

  std::priority_queue<BNode, std::vector<BNode>, NodeOrder> open;
  long next_id = 0;
  open.push({root.objective, next_id++, lb, ub, root});
  Status status = Status::Optimal;
  while (!open.empty()) {
    if (nodes >= cfg.node_limit) {
      status = Status::NodeLimit;
      break;
    }
    BNode nd = open.top();
    open.pop();
    if (best.status == Status::Optimal) {
      double gap = tol.gap_rel * best_obj;
      if (nd.bound > best_obj + gap) continue;
      if (nd.bound >= best_obj - gap && !lex_less(nd.lb, best_int)) continue;
    }
    // Most fractional integer variable, lowest index on ties.
    int pick = -1;
    double score = 1e-6;
    for (size_t k = 0; k < ni; ++k) {
      double v = nd.relax.values[ints[k]];
      double fr = v - std::floor(v);
      double s = std::min(fr, 1.0 - fr);
      if (s > score) {
        score = s;
        pick = static_cast<int>(k);
      }
    }
    if (pick < 0) {
      std::vector<double> fx(ni);
      for (size_t k = 0; k < ni; ++k)
        fx[k] = std::clamp(std::round(nd.relax.values[ints[k]]), nd.lb[k], nd.ub[k]);
      bool same = true;
      for (size_t k = 0; k < ni; ++k) same = same && nd.lb[k] == fx[k] && nd.ub[k] == fx[k];
      offer(same ? nd.relax : relax(fx, fx, &nd.relax));
      // A tie-break may still prefer a smaller vector inside this box.
      bool box = true;
      for (size_t k = 0; k < ni; ++k) box = box && nd.lb[k] == nd.ub[k];
      if (box) continue;
      for (size_t k = 0; k < ni && pick < 0; ++k)
        if (nd.lb[k] < nd.ub[k]) pick = static_cast<int>(k);
      double v = fx[pick];
      // Split the box at the integral value into below / at-or-above.
      if (v <= nd.lb[pick]) v = nd.lb[pick] + 0.5;
      else v -= 0.5;
      nd.relax.values[ints[pick]] = v;
    }
    double v = nd.relax.values[ints[pick]];
    double fl = std::floor(v);
    for (int side = 0; side < 2; ++side) {
      std::vector<double> l = nd.lb, u = nd.ub;
      if (side == 0) u[pick] = fl;
      else l[pick] = fl + 1;
      if (l[pick] > u[pick]) continue;
      Solution s = relax(l, u, &nd.relax);
      if (s.status != Status::Optimal) continue;
      if (best.status == Status::Optimal) {
        double gap = tol.gap_rel * best_obj;
        if (s.objective > best_obj + gap) continue;
        if (s.objective >= best_obj - gap && !lex_less(l, best_int)) continue;
      }
      open.push({s.objective, next_id++, l, u, s});
    }
  }

  if (best.status != Status::Optimal) {
    Solution s;
    s.status = status == Status::NodeLimit ? Status::NodeLimit : Status::Infeasible;
    s.bnb_nodes = nodes;
    s.relaxation_bound = root.objective;
    return s;
  }
  best.bnb_nodes = nodes;
  best.relaxation_bound = root.objective;
  if (status == Status::NodeLimit) best.status = Status::NodeLimit;
  for (size_t k = 0; k < ni; ++k) best.values[ints[k]] = best_int[k];
  return best;
}

// ------------------------------------------------------------------ KKT

namespace {

// Lawson-Hanson nonnegative least squares: min |A x - b|, x >= 0.
Vec nnls(const Mat& A, const Vec& b) {
  const Eigen::Index n = A.cols();
  Vec x = Vec::Zero(n);
  std::vector<bool> passive(n, false);
  for (int outer = 0; outer < 3 * n + 10; ++outer) {
    Vec w = A.transpose() * (b - A * x);
    Eigen::Index j = -1;
    double wmax = 1e-14;
    for (Eigen::Index i = 0; i < n; ++i)
      if (!passive[i] && w[i] > wmax) {
        wmax = w[i];
        j = i;
      }
    if (j < 0) break;
    passive[j] = true;
    for (int inner = 0; inner < 3 * n + 10; ++inner) {
      std::vector<Eigen::Index> P;
      for (Eigen::Index i = 0; i < n; ++i)
        if (passive[i]) P.push_back(i);
      Mat Ap(A.rows(), static_cast<Eigen::Index>(P.size()));
      for (size_t k = 0; k < P.size(); ++k) Ap.col(static_cast<Eigen::Index>(k)) = A.col(P[k]);
      Vec zp = Ap.colPivHouseholderQr().solve(b);
      bool pos = true;
      for (Eigen::Index k = 0; k < zp.size(); ++k) pos = pos && zp[k] > 0;
      if (pos) {
        x.setZero();
        for (size_t k = 0; k < P.size(); ++k) x[P[k]] = zp[static_cast<Eigen::Index>(k)];
        break;
      }
      double alpha = 1.0;
      for (size_t k = 0; k < P.size(); ++k) {
        double zk = zp[static_cast<Eigen::Index>(k)];
        if (zk <= 0) alpha = std::min(alpha, x[P[k]] / (x[P[k]] - zk));
      }
      for (size_t k = 0; k < P.size(); ++k)
        x[P[k]] += alpha * (zp[static_cast<Eigen::Index>(k)] - x[P[k]]);
      for (size_t k = 0; k < P.size(); ++k)
        if (x[P[k]] <= 1e-15) {
          x[P[k]] = 0.0;
          passive[P[k]] = false;
        }
    }
  }
  return x;
}

}  // namespace

double kkt_residual(const Problem& p, const std::vector<double>& x) {
  const int n = p.num_vars();
  std::vector<double> lb(n), ub(n);
  for (int j = 0; j < n; ++j) {
    lb[j] = p.var(j).lb;
    ub[j] = p.var(j).ub;
  }
  Tolerances tol;
  Compiled cp = compile(p, lb, ub, tol);
  if (cp.infeasible) throw std::domain_error("problem is infeasible at its bounds");
  Vec z = Vec::Zero(cp.nz);
  for (int j = 0; j < n; ++j)
    if (cp.map.z_of_u[j] >= 0) z[cp.map.z_of_u[j]] = std::log(x.at(j));
  if (cp.epigraph >= 0) {
    double t = -std::numeric_limits<double>::infinity();
    for (auto& f : cp.ineq)
      if (f.src == Src::Epigraph) {
        Vec zz = z;
        zz[cp.epigraph] = 0.0;
        t = std::max(t, fval(f, zz));
      }
    z[cp.epigraph] = t;
  }
  Eval e0;
  feval(cp.obj, z, false, e0);
  Vec g0 = Vec::Zero(cp.nz);
  for (size_t k = 0; k < cp.obj.vars.size(); ++k) g0[cp.obj.vars[k]] += e0.g[static_cast<Eigen::Index>(k)];
  std::vector<int> act;
  std::vector<Eval> ev;
  for (size_t i = 0; i < cp.ineq.size(); ++i) {
    if (cp.ineq[i].src == Src::Box) continue;
    Eval e;
    feval(cp.ineq[i], z, false, e);
    if (e.f > 1e-6) throw std::domain_error("point violates a constraint");
    if (e.f < -1e-2) continue;
    act.push_back(static_cast<int>(i));
    ev.push_back(e);
  }
  const auto m = static_cast<Eigen::Index>(act.size());
  if (m == 0) return g0.lpNorm<Eigen::Infinity>();
  Mat A = Mat::Zero(cp.nz + m, m);
  Vec b = Vec::Zero(cp.nz + m);
  b.head(cp.nz) = -g0;
  for (Eigen::Index c = 0; c < m; ++c) {
    const Fn& f = cp.ineq[act[c]];
    for (size_t k = 0; k < f.vars.size(); ++k) A(f.vars[k], c) += ev[c].g[static_cast<Eigen::Index>(k)];
    A(cp.nz + c, c) = ev[c].f;
  }
  Vec lam = nnls(A, b);
  Vec st = g0 + A.topRows(cp.nz) * lam;
  double comp = 0.0;
  for (Eigen::Index c = 0; c < m; ++c) comp = std::max(comp, std::abs(lam[c] * ev[c].f));
  return std::max(st.lpNorm<Eigen::Infinity>(), comp);
}

}  // namespace zevrpp::gp
