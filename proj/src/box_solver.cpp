#include "frontlab/box_solver.hpp"

#include <Eigen/Sparse>
#include <Eigen/SparseLU>
#include <algorithm>
#include <cmath>
#include <limits>

#include "frontlab/error.hpp"
#include "frontlab/parabolic.hpp"
#include "frontlab/parallel.hpp"

namespace frontlab {

namespace {

using SpMat = Eigen::SparseMatrix<double>;
using Vec = Eigen::VectorXd;

// Index bookkeeping for the unknown nodes of a BoxProblem.
struct Layout {
  std::size_t nx, ny, j0, j1;
  double ix, iy, cx;
  double g_bottom, g_top;
  bool bottom_free, top_free;

  Layout(const BoxProblem& p, const Field& u) {
    nx = u.nx();
    ny = u.ny();
    require(nx >= 3 && ny >= 3, "grid size", "box problems need at least 3x3 nodes");
    bottom_free = !p.bottom.is_dirichlet();
    top_free = p.top_rho > 0.0;
    j0 = bottom_free ? 0 : 1;
    j1 = top_free ? ny - 1 : ny - 2;
    double hx = u.x.spacing, hy = u.y.spacing;
    ix = 1.0 / (hx * hx);
    iy = 1.0 / (hy * hy);
    cx = p.c / (2.0 * hx);
    g_bottom = p.bottom.is_robin() ? 2.0 * hy / p.bottom.rho() : 0.0;
    g_top = top_free ? 2.0 * hy / p.top_rho : 0.0;
  }
  std::size_t nyu() const { return j1 - j0 + 1; }
  std::size_t size() const { return (nx - 2) * nyu(); }
  long index(std::size_t i, std::size_t j) const {
    if (i == 0 || i + 1 == nx || j < j0 || j > j1) return -1;
    return static_cast<long>((i - 1) * nyu() + (j - j0));
  }
};

double node_residual(const BoxProblem& p, const Layout& L, const Field& u, std::size_t i, std::size_t j) {
  double c = u(i, j);
  double e = u(i + 1, j), w = u(i - 1, j);
  double dn = j > 0 ? u(i, j - 1) : u(i, 1) - L.g_bottom * (c - p.zero);
  double up = j + 1 < L.ny ? u(i, j + 1) : u(i, j - 1) - L.g_top * (c - p.zero);
  return (e + w - 2.0 * c) * L.ix + (up + dn - 2.0 * c) * L.iy + L.cx * (e - w) + p.reaction(c);
}

void residual_vector(const BoxProblem& p, const Layout& L, const Field& u, Vec& R) {
  R.resize(static_cast<long>(L.size()));
  for (std::size_t i = 1; i + 1 < L.nx; ++i)
    for (std::size_t j = L.j0; j <= L.j1; ++j) R[L.index(i, j)] = node_residual(p, L, u, i, j);
}

// Jacobian of the residual, optionally shifted by -sigma on the diagonal and
// bordered by an extra column `dc` and row `pin`.
SpMat jacobian(const BoxProblem& p, const Layout& L, const Field& u, double sigma, const Vec* dc,
               const std::vector<std::pair<long, double>>* pin) {
  std::size_t n = L.size();
  std::size_t m = n + (dc ? 1 : 0);
  std::vector<Eigen::Triplet<double>> t;
  t.reserve(5 * n + (dc ? n + 4 : 0));
  for (std::size_t i = 1; i + 1 < L.nx; ++i)
    for (std::size_t j = L.j0; j <= L.j1; ++j) {
      long k = L.index(i, j);
      double diag = -2.0 * L.ix - 2.0 * L.iy + p.reaction.derivative(u(i, j)) - sigma;
      double down_w = L.iy, up_w = L.iy;
      if (j == 0) {
        diag -= L.g_bottom * L.iy;
        up_w += L.iy;
        down_w = 0.0;
      }
      if (j + 1 == L.ny) {
        diag -= L.g_top * L.iy;
        down_w += L.iy;
        up_w = 0.0;
      }
      t.emplace_back(k, k, diag);
      auto add = [&](std::size_t ii, std::size_t jj, double w) {
        long q = L.index(ii, jj);
        if (q >= 0 && w != 0.0) t.emplace_back(k, q, w);
      };
      add(i + 1, j, L.ix + L.cx);
      add(i - 1, j, L.ix - L.cx);
      if (j > 0) add(i, j - 1, down_w);
      if (j + 1 < L.ny) add(i, j + 1, up_w);
      if (dc) t.emplace_back(k, static_cast<long>(n), (*dc)[k]);
    }
  if (pin)
    for (auto [q, w] : *pin) t.emplace_back(static_cast<long>(n), q, w);
  SpMat J(static_cast<long>(m), static_cast<long>(m));
  J.setFromTriplets(t.begin(), t.end());
  return J;
}

// Newton iterates are kept in [lower, 1], where f is smooth.
void apply_step(const BoxProblem& p, const Layout& L, Field& u, const Vec& d, double scale) {
  double lo = p.reaction.lower_state();
  for (std::size_t i = 1; i + 1 < L.nx; ++i)
    for (std::size_t j = L.j0; j <= L.j1; ++j) u(i, j) = std::clamp(u(i, j) + scale * d[L.index(i, j)], lo, 1.0);
}

struct Factor {
  Eigen::SparseLU<SpMat, Eigen::COLAMDOrdering<int>> lu;
  bool analysed = false;
  bool solve(const SpMat& A, const Vec& b, Vec& x) {
    if (!analysed) {
      lu.analyzePattern(A);
      analysed = true;
    }
    lu.factorize(A);
    if (lu.info() != Eigen::Success) return false;
    x = lu.solve(b);
    return lu.info() == Eigen::Success && x.allFinite();
  }
};

double step_bound(const BoxProblem& p, const Field& u) {
  double h = std::min(u.x.spacing, u.y.spacing);
  double dt = stable_dt_2d(h, p.bottom, p.c, lipschitz_bound(p.reaction));
  if (p.top_rho > 0.0) dt /= 1.0 + h / (2.0 * p.top_rho);
  return dt;
}

}  // namespace

double box_residual(const BoxProblem& p, const Field& u, Field* out) {
  Layout L(p, u);
  if (out) *out = Field(u.x, u.y, 0.0);
  double worst = 0.0;
  for (std::size_t j = L.j0; j <= L.j1; ++j)
    for (std::size_t i = 1; i + 1 < L.nx; ++i) {
      double r = node_residual(p, L, u, i, j);
      worst = std::max(worst, std::abs(r));
      if (out) (*out)(i, j) = r;
    }
  return worst;
}

RelaxReport relax(const BoxProblem& p, Field& u, const RelaxOptions& opt) {
  Layout L(p, u);
  RelaxReport rep;
  double bound = step_bound(p, u);
  rep.dt = opt.dt > 0.0 ? opt.dt : bound;
  Field next = u;
  const int threads = thread_count();
  const auto j0 = static_cast<long>(L.j0), j1 = static_cast<long>(L.j1);
  std::vector<double> row_change(L.ny), row_against(L.ny);
  for (rep.steps = 0; rep.steps < opt.max_steps;) {
#pragma omp parallel for num_threads(threads) schedule(static)
    for (long jj = j0; jj <= j1; ++jj) {
      auto j = static_cast<std::size_t>(jj);
      double change = 0.0, against = 0.0;
      for (std::size_t i = 1; i + 1 < L.nx; ++i) {
        double d = rep.dt * node_residual(p, L, u, i, j);
        next(i, j) = u(i, j) + d;
        change = std::max(change, std::abs(d));
        if (opt.direction != 0) against = std::max(against, -opt.direction * d);
      }
      row_change[j] = change;
      row_against[j] = against;
    }
    std::swap(u.values, next.values);
    ++rep.steps;
    double change = *std::max_element(row_change.begin() + j0, row_change.begin() + j1 + 1);
    double against = *std::max_element(row_against.begin() + j0, row_against.begin() + j1 + 1);
    rep.monotone_violation = std::max(rep.monotone_violation, against);
    rep.rate = change / rep.dt;
    if (opt.record_every > 0 && rep.steps % opt.record_every == 0) rep.rate_history.push_back(rep.rate);
    if (!std::isfinite(rep.rate)) fail(ErrorKind::numerical, "relaxation diverged", "non-finite update");
    if (rep.rate < opt.tol) {
      rep.converged = true;
      break;
    }
  }
  return rep;
}

NewtonReport newton_solve(const BoxProblem& p, Field& u, double tol, int max_iter) {
  Layout L(p, u);
  NewtonReport rep;
  Factor lu;
  Vec R, d;
  residual_vector(p, L, u, R);
  rep.residual = R.lpNorm<Eigen::Infinity>();
  rep.history.push_back(rep.residual);
  while (rep.residual > tol && rep.iterations < max_iter) {
    SpMat J = jacobian(p, L, u, 0.0, nullptr, nullptr);
    if (!lu.solve(J, -R, d)) fail(ErrorKind::numerical, "singular Jacobian", "sparse LU failed in the box Newton step");
    // Backtrack on the residual norm.
    double scale = 1.0, best = rep.residual;
    Field trial = u;
    for (int k = 0; k < 20; ++k) {
      trial.values = u.values;
      apply_step(p, L, trial, d, scale);
      residual_vector(p, L, trial, R);
      best = R.lpNorm<Eigen::Infinity>();
      if (std::isfinite(best) && best < (1.0 - 1e-4 * scale) * rep.residual) break;
      scale *= 0.5;
    }
    u.values = trial.values;
    rep.residual = best;
    ++rep.iterations;
    rep.history.push_back(best);
    if (scale < 1e-5) break;
  }
  rep.converged = rep.residual <= tol;
  return rep;
}

BoxSolveReport solve_box(const BoxProblem& p, Field& u, const RelaxOptions& opt, double handoff) {
  BoxSolveReport rep;
  RelaxOptions first = opt;
  first.tol = std::max(opt.tol, handoff);
  rep.relax = relax(p, u, first);
  if (!rep.relax.converged)
    fail(ErrorKind::numerical, "relaxation did not converge",
         "rate " + std::to_string(rep.relax.rate) + " after " + std::to_string(rep.relax.steps) + " steps");
  rep.newton = newton_solve(p, u, 1e-11);
  rep.residual = rep.newton.residual;
  // Round-off can stall Newton short of 1e-11; the relaxation criterion is the contract.
  rep.newton.converged = rep.newton.converged || rep.residual < opt.tol;
  if (!rep.newton.converged)
    fail(ErrorKind::numerical, "newton did not converge", "residual " + std::to_string(rep.newton.residual));
  return rep;
}

PinnedReport pinned_solve(const BoxProblem& p0, Field& u, double x0, double y0, double level, double tol,
                          int max_iter) {
  BoxProblem p = p0;
  Layout L(p, u);
  std::size_t n = L.size();
  double sx = u.x.locate(x0), sy = u.y.locate(y0);
  require(sx >= 0 && sx <= static_cast<double>(L.nx - 1) && sy >= 0 && sy <= static_cast<double>(L.ny - 1),
          "pin inside box", "pin point lies outside the grid");
  auto pi = std::min(static_cast<std::size_t>(sx), L.nx - 2), pj = std::min(static_cast<std::size_t>(sy), L.ny - 2);
  double wx = sx - static_cast<double>(pi), wy = sy - static_cast<double>(pj);
  struct Corner {
    std::size_t i, j;
    double w;
  };
  std::vector<Corner> corners{{pi, pj, (1 - wx) * (1 - wy)},
                              {pi + 1, pj, wx * (1 - wy)},
                              {pi, pj + 1, (1 - wx) * wy},
                              {pi + 1, pj + 1, wx * wy}};
  std::vector<std::pair<long, double>> pin;
  for (auto& cn : corners) {
    long q = L.index(cn.i, cn.j);
    if (q >= 0 && cn.w != 0.0) pin.emplace_back(q, cn.w);
  }
  require(!pin.empty(), "pin on unknowns", "pin point touches only fixed nodes");
  auto pin_value = [&](const Field& f) {
    double v = 0.0;
    for (auto& cn : corners) v += cn.w * f(cn.i, cn.j);
    return v;
  };

  PinnedReport rep;
  Factor lu;
  Vec R, dc(static_cast<long>(n)), rhs(static_cast<long>(n + 1)), d;
  auto evaluate = [&](const Field& f, double c) {
    p.c = c;
    L.cx = c / (2.0 * f.x.spacing);
    residual_vector(p, L, f, R);
    double G = pin_value(f) - level;
    return std::max(R.lpNorm<Eigen::Infinity>(), std::abs(G));
  };
  double c = p0.c;
  double norm = evaluate(u, c);
  double tau = 1.0;
  rep.c_history.push_back(c);
  while (norm > tol && rep.iterations < max_iter) {
    for (std::size_t i = 1; i + 1 < L.nx; ++i)
      for (std::size_t j = L.j0; j <= L.j1; ++j) dc[L.index(i, j)] = (u(i + 1, j) - u(i - 1, j)) / (2.0 * u.x.spacing);
    double sigma = tau > 1e12 ? 0.0 : 1.0 / tau;
    SpMat J = jacobian(p, L, u, sigma, &dc, &pin);
    rhs.head(static_cast<long>(n)) = -R;
    rhs[static_cast<long>(n)] = -(pin_value(u) - level);
    Field trial = u;
    double trial_norm = std::numeric_limits<double>::quiet_NaN();
    bool ok = lu.solve(J, rhs, d);
    if (ok) {
      apply_step(p, L, trial, d, 1.0);
      trial_norm = evaluate(trial, c + d[static_cast<long>(n)]);
    }
    ++rep.iterations;
    if (!ok || !std::isfinite(trial_norm) || trial_norm > 10.0 * norm) {
      // Reject: shorten the pseudo-time step and retry from the same state.
      tau *= 0.25;
      evaluate(u, c);
      if (tau < 1e-8) break;
      continue;
    }
    tau = std::min(1e15, tau * std::max(0.5, std::min(norm / trial_norm, 10.0)));
    u.values = std::move(trial.values);
    c += d[static_cast<long>(n)];
    norm = trial_norm;
    rep.c_history.push_back(c);
  }
  rep.c = c;
  p.c = c;
  rep.residual = box_residual(p, u);
  rep.pin_residual = std::abs(pin_value(u) - level);
  rep.converged = norm <= tol;
  return rep;
}

Profile discrete_column_state(const BoxProblem& p, const Profile& guess, double top_value) {
  const std::size_t n = guess.values.size();
  require(n >= 3, "grid size", "column problem needs at least 3 nodes");
  double hy = guess.grid.spacing, iy = 1.0 / (hy * hy);
  bool bottom_free = !p.bottom.is_dirichlet(), top_free = p.top_rho > 0.0;
  double gb = p.bottom.is_robin() ? 2.0 * hy / p.bottom.rho() : 0.0;
  double gt = top_free ? 2.0 * hy / p.top_rho : 0.0;
  Profile out = guess;
  std::vector<double>& u = out.values;
  if (!bottom_free) u[0] = 0.0;
  if (!top_free) u[n - 1] = top_value;
  std::size_t a = bottom_free ? 0 : 1, b = top_free ? n - 1 : n - 2;
  std::vector<double> R(n), lo(n), di(n), up(n);
  for (int it = 0; it < 60; ++it) {
    double worst = 0.0;
    for (std::size_t j = a; j <= b; ++j) {
      double c = u[j];
      double dn = j > 0 ? u[j - 1] : u[1] - gb * (c - p.zero);
      double upv = j + 1 < n ? u[j + 1] : u[j - 1] - gt * (c - p.zero);
      R[j] = (upv + dn - 2.0 * c) * iy + p.reaction(c);
      worst = std::max(worst, std::abs(R[j]));
      di[j] = -2.0 * iy + p.reaction.derivative(c);
      lo[j] = j > a ? iy : 0.0;
      up[j] = j < b ? iy : 0.0;
      if (j == 0) {
        di[j] -= gb * iy;
        up[j] = 2.0 * iy;
      }
      if (j + 1 == n) {
        di[j] -= gt * iy;
        lo[j] = 2.0 * iy;
      }
    }
    if (worst < 1e-13) break;
    // Thomas algorithm on rows a..b.
    std::vector<double> cp(n), dp(n);
    for (std::size_t j = a; j <= b; ++j) {
      double m = di[j] - (j > a ? lo[j] * cp[j - 1] : 0.0);
      cp[j] = up[j] / m;
      dp[j] = (-R[j] - (j > a ? lo[j] * dp[j - 1] : 0.0)) / m;
    }
    for (std::size_t j = b + 1; j-- > a;) {
      double d = dp[j] - (j < b ? cp[j] * dp[j + 1] : 0.0);
      dp[j] = d;
      u[j] += d;
    }
  }
  return out;
}

}  // namespace frontlab
