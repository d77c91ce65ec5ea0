#include "egl/estimation.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include "egl/errors.hpp"
#include "egl/specfun.hpp"

namespace egl {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

using Vec = std::vector<double>;

double norm2(const Vec& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

// Solve A x = b for small dense systems by Gaussian elimination with partial
// pivoting. Returns false when a pivot collapses.
bool solve_linear(std::vector<Vec> a, Vec b, Vec& x) {
  const std::size_t n = b.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < n; ++r) {
      if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
    }
    if (std::abs(a[piv][col]) < 1e-300) return false;
    std::swap(a[piv], a[col]);
    std::swap(b[piv], b[col]);
    for (std::size_t r = col + 1; r < n; ++r) {
      double f = a[r][col] / a[col][col];
      for (std::size_t c = col; c < n; ++c) a[r][c] -= f * a[col][c];
      b[r] -= f * b[col];
    }
  }
  x.assign(n, 0.0);
  for (std::size_t ri = n; ri-- > 0;) {
    double s = b[ri];
    for (std::size_t c = ri + 1; c < n; ++c) s -= a[ri][c] * x[c];
    x[ri] = s / a[ri][ri];
  }
  for (double v : x) {
    if (!std::isfinite(v)) return false;
  }
  return true;
}

bool invert_matrix(const std::vector<Vec>& a, std::vector<Vec>& inv) {
  const std::size_t n = a.size();
  inv.assign(n, Vec(n, 0.0));
  for (std::size_t j = 0; j < n; ++j) {
    Vec e(n, 0.0), col;
    e[j] = 1.0;
    if (!solve_linear(a, e, col)) return false;
    for (std::size_t i = 0; i < n; ++i) inv[i][j] = col[i];
  }
  // Symmetrize: the inputs are symmetric up to rounding.
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      double v = 0.5 * (inv[i][j] + inv[j][i]);
      inv[i][j] = inv[j][i] = v;
    }
  }
  return true;
}

struct SimplexOutcome {
  Vec point;       // log-parameter coordinates
  double value = kInf;
  bool converged = false;
  long iterations = 0;
  long evals = 0;
};

// Nelder-Mead on log-parameter coordinates; convergence when the simplex
// coordinate spread falls below 1e-10.
SimplexOutcome nelder_mead(const std::function<double(const Vec&)>& f, Vec x0,
                           int max_iter) {
  const std::size_t n = x0.size();
  const double refl = 1.0, expa = 2.0, contr = 0.5, shrink = 0.5;
  long evals = 0;
  auto eval = [&](const Vec& x) {
    ++evals;
    double v = f(x);
    return std::isfinite(v) ? v : kInf;
  };
  std::vector<std::pair<double, Vec>> simplex;
  simplex.reserve(n + 1);
  simplex.emplace_back(eval(x0), x0);
  for (std::size_t i = 0; i < n; ++i) {
    Vec v = x0;
    v[i] += 0.1;
    simplex.emplace_back(eval(v), v);
  }
  auto order = [&simplex]() {
    std::sort(simplex.begin(), simplex.end(),
              [](const auto& a, const auto& b) {
                if (a.first != b.first) return a.first < b.first;
                return a.second < b.second;  // deterministic tie-break
              });
  };
  order();
  SimplexOutcome out;
  for (long it = 0; it < max_iter; ++it) {
    out.iterations = it;
    double spread = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      double lo = simplex[0].second[i], hi = lo;
      for (const auto& [fv, v] : simplex) {
        lo = std::min(lo, v[i]);
        hi = std::max(hi, v[i]);
      }
      spread = std::max(spread, hi - lo);
    }
    if (spread < 1e-10) {
      out.converged = true;
      break;
    }
    Vec centroid(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t v = 0; v < n; ++v) centroid[i] += simplex[v].second[i];
      centroid[i] /= static_cast<double>(n);
    }
    const Vec& worst = simplex[n].second;
    Vec xr(n);
    for (std::size_t i = 0; i < n; ++i) {
      xr[i] = centroid[i] + refl * (centroid[i] - worst[i]);
    }
    double fr = eval(xr);
    if (fr < simplex[0].first) {
      Vec xe(n);
      for (std::size_t i = 0; i < n; ++i) {
        xe[i] = centroid[i] + expa * (xr[i] - centroid[i]);
      }
      double fe = eval(xe);
      if (fe < fr) {
        simplex[n] = {fe, xe};
      } else {
        simplex[n] = {fr, xr};
      }
    } else if (fr < simplex[n - 1].first) {
      simplex[n] = {fr, xr};
    } else {
      Vec xc(n);
      bool outside = fr < simplex[n].first;
      const Vec& anchor = outside ? xr : worst;
      for (std::size_t i = 0; i < n; ++i) {
        xc[i] = centroid[i] + contr * (anchor[i] - centroid[i]);
      }
      double fc = eval(xc);
      if (fc < std::min(fr, simplex[n].first)) {
        simplex[n] = {fc, xc};
      } else {
        for (std::size_t v = 1; v <= n; ++v) {
          for (std::size_t i = 0; i < n; ++i) {
            simplex[v].second[i] = simplex[0].second[i] +
                shrink * (simplex[v].second[i] - simplex[0].second[i]);
          }
          simplex[v].first = eval(simplex[v].second);
        }
      }
    }
    order();
  }
  out.point = simplex[0].second;
  out.value = simplex[0].first;
  out.evals = evals;
  return out;
}

Vec log_grid_axis() {
  // 5 log-spaced points on [0.01, 10].
  Vec axis(5);
  double lo = std::log(0.01), hi = std::log(10.0);
  for (int i = 0; i < 5; ++i) {
    axis[i] = lo + (hi - lo) * i / 4.0;
  }
  return axis;
}

std::vector<Vec> grid_starts(std::size_t arity) {
  Vec axis = log_grid_axis();
  std::vector<Vec> pts{{}};
  for (std::size_t d = 0; d < arity; ++d) {
    std::vector<Vec> next;
    next.reserve(pts.size() * axis.size());
    for (const Vec& p : pts) {
      for (double a : axis) {
        Vec q = p;
        q.push_back(a);
        next.push_back(std::move(q));
      }
    }
    pts = std::move(next);
  }
  return pts;
}

ModelSpec make_model(Family family, const Vec& log_params) {
  Vec params(log_params.size());
  std::transform(log_params.begin(), log_params.end(), params.begin(),
                 [](double v) { return std::exp(v); });
  return ModelSpec(family, params);
}

double neg_loglik_logspace(Family family, const Vec& log_params,
                           const std::vector<double>& data) {
  for (double v : log_params) {
    if (!std::isfinite(v) || std::abs(v) > 40.0) return kInf;
  }
  double ll;
  if (family == Family::EGL) {
    ll = loglik_egl(EglParams(std::exp(log_params[0]), std::exp(log_params[1]),
                              std::exp(log_params[2])),
                    data);
  } else {
    ll = family_loglik(make_model(family, log_params), data);
  }
  return std::isfinite(ll) ? -ll : kInf;
}

// Damped Newton iteration on the closed-form EGL score in log-parameter space;
// finds stationary points of the likelihood (the paper's estimating equations).
struct RootOutcome {
  Vec log_point;
  bool ok = false;
  long evals = 0;
};

RootOutcome score_root_polish(const Vec& start, const std::vector<double>& data) {
  RootOutcome out;
  Vec x = start;
  auto score_at = [&data](const Vec& lp) -> Vec {
    EglParams p(std::exp(lp[0]), std::exp(lp[1]), std::exp(lp[2]));
    auto u = score_egl(p, data);
    // Chain rule: d loglik / d log param = param * d/d param.
    return {u[0] * p.lambda, u[1] * p.theta, u[2] * p.alpha};
  };
  auto valid = [](const Vec& lp) {
    for (double v : lp) {
      if (!std::isfinite(v) || std::abs(v) > 30.0) return false;
    }
    return true;
  };
  if (!valid(x)) return out;
  Vec u = score_at(x);
  out.evals += 1;
  double un = norm2(u);
  for (int it = 0; it < 60 && un > 1e-10; ++it) {
    // Forward-difference Jacobian of the score.
    std::vector<Vec> jac(3, Vec(3, 0.0));
    for (int j = 0; j < 3; ++j) {
      Vec xh = x;
      double h = 1e-6 * std::max(1.0, std::abs(x[j]));
      xh[j] += h;
      if (!valid(xh)) return out;
      Vec uh = score_at(xh);
      out.evals += 1;
      for (int i = 0; i < 3; ++i) jac[i][j] = (uh[i] - u[i]) / h;
    }
    Vec step, rhs = {-u[0], -u[1], -u[2]};
    if (!solve_linear(jac, rhs, step)) return out;
    double scale = 1.0;
    bool moved = false;
    for (int bt = 0; bt < 30; ++bt, scale *= 0.5) {
      Vec xn = {x[0] + scale * step[0], x[1] + scale * step[1],
                x[2] + scale * step[2]};
      if (!valid(xn)) continue;
      Vec uc = score_at(xn);
      out.evals += 1;
      double ucn = norm2(uc);
      if (std::isfinite(ucn) && ucn < un) {
        x = xn;
        u = uc;
        un = ucn;
        moved = true;
        break;
      }
    }
    if (!moved) break;
  }
  out.log_point = x;
  out.ok = un <= 1e-8;
  return out;
}

// Cholesky test; destroys its copy of the matrix.
bool is_positive_definite(std::vector<Vec> a) {
  const std::size_t k = a.size();
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      double s = a[i][j];
      for (std::size_t m = 0; m < j; ++m) s -= a[i][m] * a[j][m];
      if (i == j) {
        if (!(s > 0.0) || !std::isfinite(s)) return false;
        a[i][i] = std::sqrt(s);
      } else {
        a[i][j] = s / a[j][j];
      }
    }
  }
  return true;
}

std::vector<Vec> observed_info_matrix(Family family, const Vec& params,
                                      const std::vector<double>& data) {
  const std::size_t k = params.size();
  auto nll = [&](const Vec& p) {
    for (double v : p) {
      if (!(v > 0.0)) return kInf;
    }
    double ll = family == Family::EGL
                    ? loglik_egl(EglParams(p[0], p[1], p[2]), data)
                    : family_loglik(ModelSpec(family, p), data);
    return std::isfinite(ll) ? -ll : kInf;
  };
  std::vector<Vec> h(k, Vec(k, 0.0));
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i; j < k; ++j) {
      double hi = 1e-5 * std::max(std::abs(params[i]), 1e-3);
      double hj = 1e-5 * std::max(std::abs(params[j]), 1e-3);
      Vec pp = params, pm = params, mp = params, mm = params;
      pp[i] += hi; pp[j] += hj;
      pm[i] += hi; pm[j] -= hj;
      mp[i] -= hi; mp[j] += hj;
      mm[i] -= hi; mm[j] -= hj;
      double v = (nll(pp) - nll(pm) - nll(mp) + nll(mm)) / (4.0 * hi * hj);
      h[i][j] = h[j][i] = v;
    }
  }
  return h;
}

}  // namespace

double loglik_egl(const EglParams& p, const std::vector<double>& data) {
  const double n = static_cast<double>(data.size());
  double sum_log1p = 0.0, sum_pow = 0.0;
  for (double x : data) {
    if (!(x >= 0.0)) throw InvalidDataError("loglik_egl: negative observation");
    double lp = std::log1p(p.lambda * x);
    sum_log1p += lp;
    sum_pow += 1.0 - std::exp(p.alpha * lp);
  }
  double ll = n * std::log(p.alpha) + n * std::log(p.lambda) +
              2.0 * n * std::log(p.theta) - n * std::log1p(p.theta) +
              p.theta * sum_pow + (2.0 * p.alpha - 1.0) * sum_log1p;
  return std::isfinite(ll) ? ll : -kInf;
}

std::array<double, 3> score_egl(const EglParams& p,
                                const std::vector<double>& data) {
  const double n = static_cast<double>(data.size());
  double s_pow = 0.0;          // sum (1 - (1+lx)^a)
  double s_ratio = 0.0;        // sum x/(1+lx)
  double s_xpow1 = 0.0;        // sum x (1+lx)^{a-1}
  double s_log = 0.0;          // sum log(1+lx)
  double s_powlog = 0.0;       // sum (1+lx)^a log(1+lx)
  for (double x : data) {
    if (!(x >= 0.0)) throw InvalidDataError("score_egl: negative observation");
    double one_p = 1.0 + p.lambda * x;
    double lp = std::log(one_p);
    double pw = std::exp(p.alpha * lp);
    s_pow += 1.0 - pw;
    s_ratio += x / one_p;
    s_xpow1 += x * pw / one_p;
    s_log += lp;
    s_powlog += pw * lp;
  }
  double d_lambda = n / p.lambda + (2.0 * p.alpha - 1.0) * s_ratio -
                    p.theta * p.alpha * s_xpow1;
  double d_theta = 2.0 * n / p.theta - n / (1.0 + p.theta) + s_pow;
  double d_alpha = n / p.alpha + 2.0 * s_log - p.theta * s_powlog;
  return {d_lambda, d_theta, d_alpha};
}

FitResult fit(Family family, const std::vector<double>& data,
              const FitOptions& options) {
  if (data.empty()) throw InvalidDataError("fit: empty dataset");
  for (double x : data) {
    if (!(x > 0.0) || !std::isfinite(x)) {
      throw InvalidDataError("fit: observations must be positive finite");
    }
  }
  const std::size_t arity = family_arity(family);
  const double n = static_cast<double>(data.size());
  const int starts_kept = std::min(std::max(options.n_starts, 1), 25);

  auto objective = [&](const Vec& lp) {
    return neg_loglik_logspace(family, lp, data);
  };

  // Rank the coarse grid and keep the best starting points.
  std::vector<std::pair<double, Vec>> ranked;
  for (Vec& pt : grid_starts(arity)) {
    double v = objective(pt);
    if (std::isfinite(v)) ranked.emplace_back(v, std::move(pt));
  }
  if (ranked.empty()) {
    throw NonConvergenceError("fit: no finite starting point on the grid", 0);
  }
  std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first < b.first;
    return a.second < b.second;
  });
  if (static_cast<int>(ranked.size()) > starts_kept) ranked.resize(starts_kept);

  struct Candidate {
    Vec log_point;
    double nll;
    bool certified;
  };
  std::vector<Candidate> candidates;
  long total_iters = 0, total_evals = 0;
  int restarts = 0;

  auto score_norm_at = [&](const Vec& lp) {
    if (family != Family::EGL) return std::numeric_limits<double>::quiet_NaN();
    EglParams p(std::exp(lp[0]), std::exp(lp[1]), std::exp(lp[2]));
    auto u = score_egl(p, data);
    return std::sqrt(u[0] * u[0] + u[1] * u[1] + u[2] * u[2]);
  };
  auto add_candidate = [&](const Vec& lp, bool simplex_converged) {
    double v = objective(lp);
    if (!std::isfinite(v)) return;
    bool cert;
    if (family == Family::EGL) {
      // A certified optimum is an interior stationary point that is a genuine
      // local maximum. The score alone is not enough: the likelihood admits
      // degenerate ridges toward the parameter-space boundary (theta large
      // with alpha near zero collapses to a two-parameter Pareto-type law)
      // where the score also vanishes but the curvature is singular.
      cert = score_norm_at(lp) <= 1e-4 * n;
      if (cert) {
        Vec params(lp.size());
        for (std::size_t j = 0; j < lp.size(); ++j) params[j] = std::exp(lp[j]);
        cert = is_positive_definite(
            observed_info_matrix(family, params, data));
      }
    } else {
      cert = simplex_converged;
    }
    candidates.push_back({lp, v, cert});
  };

  for (const auto& [v0, start] : ranked) {
    ++restarts;
    SimplexOutcome nm = nelder_mead(objective, start, options.max_iterations);
    total_iters += nm.iterations;
    total_evals += nm.evals;
    add_candidate(nm.point, nm.converged);
    if (family == Family::EGL) {
      // Polish toward a stationary point of the likelihood from both the
      // simplex terminus and the raw grid start.
      for (const Vec& seed : {nm.point, start}) {
        RootOutcome root = score_root_polish(seed, data);
        total_evals += root.evals;
        if (root.ok) add_candidate(root.log_point, true);
      }
    }
  }
  if (candidates.empty()) {
    throw NonConvergenceError("fit: all restarts failed", restarts);
  }
  // Best certified candidate wins; otherwise best raw. Ties break
  // lexicographically on the parameters.
  std::sort(candidates.begin(), candidates.end(),
            [](const Candidate& a, const Candidate& b) {
              if (a.certified != b.certified) return a.certified;
              if (a.nll != b.nll) return a.nll < b.nll;
              return a.log_point < b.log_point;
            });
  const Candidate& best = candidates.front();

  FitResult result{make_model(family, best.log_point)};
  result.neg_loglik = best.nll;
  result.converged = best.certified;
  result.n_restarts_used = restarts;
  result.iterations = total_iters;
  result.function_evals = total_evals;
  if (family == Family::EGL) {
    result.score_norm = score_norm_at(best.log_point);
  } else {
    // Finite-difference gradient norm as the reported diagnostic.
    Vec params = result.model.params;
    double s = 0.0;
    for (std::size_t j = 0; j < arity; ++j) {
      double h = 1e-6 * std::max(std::abs(params[j]), 1e-3);
      Vec up = params, dn = params;
      up[j] += h;
      dn[j] -= h;
      double fu = family_loglik(ModelSpec(family, up), data);
      double fd = family_loglik(ModelSpec(family, dn), data);
      double g = (fu - fd) / (2.0 * h);
      s += g * g;
    }
    result.score_norm = std::sqrt(s);
  }

  // Covariance from the information matrix at the reported optimum.
  std::vector<Vec> info;
  if (family == Family::EGL && options.expected_info) {
    EglParams p(result.model.params[0], result.model.params[1],
                result.model.params[2]);
    info = fisher_information(p, InfoMode::Expected, {}, data.size());
  } else {
    info = observed_info_matrix(family, result.model.params, data);
  }
  std::vector<Vec> cov;
  if (invert_matrix(info, cov)) {
    bool diag_ok = true;
    for (std::size_t j = 0; j < arity; ++j) {
      if (!(cov[j][j] >= 0.0) || !std::isfinite(cov[j][j])) diag_ok = false;
    }
    if (diag_ok) {
      result.has_covariance = true;
      result.covariance = cov;
      result.conf_intervals = confidence_intervals(result, options.level);
    }
  }
  return result;
}

std::vector<std::vector<double>> fisher_information(
    const EglParams& p, InfoMode mode, const std::vector<double>& data,
    std::size_t n_for_expected) {
  if (mode == InfoMode::Observed) {
    if (data.empty()) {
      throw InvalidDataError("fisher_information: Observed mode requires data");
    }
    return observed_info_matrix(Family::EGL, {p.lambda, p.theta, p.alpha}, data);
  }
  // Expected information: per-observation entries integrated against the
  // density, scaled by the sample size. Matrix order (lambda, theta, alpha).
  auto expect = [&p](const std::function<double(double)>& f) {
    return specfun::integrate_positive_axis(
        [&](double x) { return f(x) * pdf(p, x); }, 1e-12, 1e-9, 2000);
  };
  double la = p.lambda, th = p.theta, al = p.alpha;
  double e_x2_ratio2 = expect([la](double x) {
    double d = 1.0 + la * x;
    return x * x / (d * d);
  });
  double e_x2_pow = expect([la, al](double x) {
    return x * x * std::pow(1.0 + la * x, al - 2.0);
  });
  double e_powlog2 = expect([la, al](double x) {
    double lp = std::log1p(la * x);
    return std::exp(al * lp) * lp * lp;
  });
  double e_xpow1 = expect([la, al](double x) {
    return x * std::pow(1.0 + la * x, al - 1.0);
  });
  double e_powlog = expect([la, al](double x) {
    double lp = std::log1p(la * x);
    return std::exp(al * lp) * lp;
  });
  double e_xpow1log = expect([la, al](double x) {
    double lp = std::log1p(la * x);
    return x * std::pow(1.0 + la * x, al - 1.0) * lp;
  });
  double e_ratio = expect([la](double x) { return x / (1.0 + la * x); });

  double i_ll = 1.0 / (la * la) + (2.0 * al - 1.0) * e_x2_ratio2 +
                th * al * (al - 1.0) * e_x2_pow;
  double i_tt = 2.0 / (th * th) - 1.0 / ((1.0 + th) * (1.0 + th));
  double i_aa = 1.0 / (al * al) + th * e_powlog2;
  double i_lt = al * e_xpow1;
  double i_ta = e_powlog;
  double i_la = th * e_xpow1 + al * th * e_xpow1log - 2.0 * e_ratio;
  double n = static_cast<double>(n_for_expected);
  return {{n * i_ll, n * i_lt, n * i_la},
          {n * i_lt, n * i_tt, n * i_ta},
          {n * i_la, n * i_ta, n * i_aa}};
}

std::vector<std::pair<double, double>> confidence_intervals(const FitResult& fit,
                                                            double level) {
  if (!(level > 0.0) || !(level < 1.0)) {
    throw DomainError("confidence_intervals: level must lie in (0, 1)");
  }
  if (!fit.has_covariance) {
    throw SingularMatrixError("confidence_intervals: information not invertible");
  }
  double z = specfun::normal_quantile(0.5 + level / 2.0);
  std::vector<std::pair<double, double>> out;
  out.reserve(fit.model.params.size());
  for (std::size_t j = 0; j < fit.model.params.size(); ++j) {
    double se = std::sqrt(fit.covariance[j][j]);
    out.emplace_back(fit.model.params[j] - z * se, fit.model.params[j] + z * se);
  }
  return out;
}

}  // namespace egl
