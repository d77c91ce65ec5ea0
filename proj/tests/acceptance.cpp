// Acceptance gate: one line per criterion, nonzero exit when any fail.
//
// Each criterion is verified end to end against frozen reference values and
// distributional properties; failures print the offending quantity so the
// line is actionable on its own.

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "egl/competitors.hpp"
#include "egl/datasets.hpp"
#include "egl/distribution.hpp"
#include "egl/estimation.hpp"
#include "egl/gof.hpp"
#include "egl/specfun.hpp"

namespace {

struct Checker {
  std::vector<std::string> failures;

  void expect(bool ok, const std::string& what) {
    if (!ok) failures.push_back(what);
  }

  void band(const char* what, double value, double center, double halfwidth) {
    if (!(std::abs(value - center) <= halfwidth)) {
      char buf[160];
      std::snprintf(buf, sizeof buf, "%s = %.6g, want %.6g +- %.3g", what,
                    value, center, halfwidth);
      failures.push_back(buf);
    }
  }

  void within_rel(const char* what, double value, double target, double rel) {
    if (!(std::abs(value - target) <= rel * std::abs(target))) {
      char buf[160];
      std::snprintf(buf, sizeof buf, "%s = %.6g, want %.6g within %.0f%%", what,
                    value, target, rel * 100.0);
      failures.push_back(buf);
    }
  }
};

const egl::GofReport* find_row(const std::vector<egl::GofReport>& reports,
                               egl::Family f) {
  for (const auto& r : reports) {
    if (r.model.family == f) return &r;
  }
  return nullptr;
}

double ks_against_uniform(std::vector<double> u) {
  std::sort(u.begin(), u.end());
  double n = static_cast<double>(u.size());
  double sup = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    sup = std::max({sup, std::abs(u[i] - (i + 1.0) / n),
                    std::abs(u[i] - i / n)});
  }
  return sup;
}

// ---------------------------------------------------------------------------
// Criterion 1: comparison table on the bladder dataset.

Checker criterion_bladder() {
  Checker c;
  using egl::Family;
  auto t0 = std::chrono::steady_clock::now();
  const auto& ds = egl::builtin_dataset("bladder");
  auto reports =
      egl::compare({Family::EGL, Family::LindleyExponential,
                    Family::PowerLindley, Family::Lindley, Family::NGLD},
                   ds.values, {});
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  const auto* egl_row = find_row(reports, Family::EGL);
  c.expect(egl_row != nullptr, "no EGL row");
  if (egl_row != nullptr) {
    c.band("EGL -LL", egl_row->neg_loglik, 401.254, 0.5);
    c.within_rel("lambda", egl_row->model.params[0], 0.9360, 0.10);
    c.within_rel("theta", egl_row->model.params[1], 0.5878, 0.10);
    c.within_rel("alpha", egl_row->model.params[2], 0.6457, 0.10);
    c.band("EGL K-S", egl_row->ks, 0.0387, 0.005);
  }
  struct Want {
    Family f;
    const char* name;
    double nll;
  };
  for (auto [f, name, nll] :
       {Want{Family::LindleyExponential, "L-E -LL", 401.78},
        Want{Family::PowerLindley, "PL -LL", 402.24},
        Want{Family::Lindley, "L -LL", 419.52},
        Want{Family::NGLD, "NGLD -LL", 412.75}}) {
    const auto* row = find_row(reports, f);
    c.expect(row != nullptr, std::string("missing row ") + name);
    if (row != nullptr) c.band(name, row->neg_loglik, nll, 0.5);
  }
  c.expect(secs < 60.0, "runtime " + std::to_string(secs) + "s, want < 60s");
  return c;
}

// ---------------------------------------------------------------------------
// Criterion 2: comparison table on the bank dataset.

Checker criterion_bank() {
  Checker c;
  using egl::Family;
  const auto& ds = egl::builtin_dataset("bank");
  auto reports = egl::compare(
      {Family::EGL, Family::LindleyExponential, Family::PowerLindley,
       Family::Lindley, Family::Exponential, Family::NGLD},
      ds.values, {});

  const auto* egl_row = find_row(reports, Family::EGL);
  c.expect(egl_row != nullptr, "no EGL row");
  if (egl_row != nullptr) {
    c.band("EGL -LL", egl_row->neg_loglik, 318.066, 0.5);
    c.band("EGL K-S", egl_row->ks, 0.0384, 0.005);
    c.within_rel("lambda", egl_row->model.params[0], 1.803, 0.10);
    c.within_rel("theta", egl_row->model.params[1], 0.093, 0.10);
    c.within_rel("alpha", egl_row->model.params[2], 1.046, 0.10);
  }
  struct Want {
    Family f;
    const char* name;
    double nll;
  };
  for (auto [f, name, nll] :
       {Want{Family::LindleyExponential, "L-E -LL", 317.005},
        Want{Family::PowerLindley, "PL -LL", 318.319},
        Want{Family::Lindley, "L -LL", 319.0},
        Want{Family::Exponential, "E -LL", 329.0},
        Want{Family::NGLD, "NGLD -LL", 317.3}}) {
    const auto* row = find_row(reports, f);
    c.expect(row != nullptr, std::string("missing row ") + name);
    if (row != nullptr) c.band(name, row->neg_loglik, nll, 0.5);
  }
  const auto* exp_row = find_row(reports, Family::Exponential);
  if (exp_row != nullptr) {
    c.band("E rate", exp_row->model.params[0], 0.101, 0.002);
  }
  return c;
}

// ---------------------------------------------------------------------------
// Criterion 3: AIC and BIC come from their definitions.

Checker criterion_information_criteria() {
  Checker c;
  using egl::Family;
  const auto& ds = egl::builtin_dataset("bank");
  auto reports =
      egl::compare({Family::Exponential, Family::Lindley, Family::PowerLindley},
                   ds.values, {});
  double log_n = std::log(static_cast<double>(ds.values.size()));
  for (const auto& r : reports) {
    double q = static_cast<double>(r.model.params.size());
    c.expect(std::abs(r.aic - (2.0 * r.neg_loglik + 2.0 * q)) <= 1e-9,
             "AIC drifts from 2*(-LL) + 2q");
    c.expect(std::abs(r.bic - (2.0 * r.neg_loglik + q * log_n)) <= 1e-9,
             "BIC drifts from 2*(-LL) + q*log n");
  }
  // Ranking must be ascending in AIC.
  for (std::size_t i = 1; i < reports.size(); ++i) {
    c.expect(reports[i - 1].aic <= reports[i].aic, "ranking not ascending");
  }
  return c;
}

// ---------------------------------------------------------------------------
// Criterion 4: distribution property bundle (no fitted numbers involved).

Checker criterion_properties() {
  Checker c;
  std::vector<egl::EglParams> grid;
  for (double alpha : {0.3, 1.0, 3.0}) {
    for (double theta : {0.2, 1.0, 5.0}) {
      for (double lambda : {0.5, 1.0, 2.0}) grid.emplace_back(lambda, theta, alpha);
    }
  }

  // Normalization at 1e-8 and quantile round-trip at 1e-9.
  for (const auto& p : grid) {
    double total = egl::specfun::integrate_positive_axis(
        [&](double x) { return egl::pdf(p, x); }, 1e-12, 1e-9, 4000);
    c.expect(std::abs(total - 1.0) <= 1e-8, "density mass drifts from 1");
    for (double g : {0.001, 0.1, 0.5, 0.9, 0.999}) {
      c.expect(std::abs(egl::cdf(p, egl::quantile(p, g)) - g) <= 1e-9,
               "quantile round-trip exceeds 1e-9");
    }
  }

  // Lindley reduction at alpha = 1 (1e-12).
  for (double theta : {0.3, 1.0, 4.0}) {
    egl::EglParams p(1.0, theta, 1.0);
    for (double x : {0.1, 0.8, 2.0, 6.0}) {
      double sf = (1.0 + theta + theta * x) / (1.0 + theta) * std::exp(-theta * x);
      c.expect(std::abs(egl::cdf(p, x) - (1.0 - sf)) <= 1e-12,
               "alpha=1 reduction drifts past 1e-12");
    }
  }

  // Probability transform of 1e5 simulated draws is uniform at the 1% level.
  {
    egl::EglParams p(1.0, 1.0, 2.0);
    const std::size_t n = 100000;
    double crit = 1.6276 / std::sqrt(static_cast<double>(n));
    for (auto method : {egl::SampleMethod::InverseTransform,
                        egl::SampleMethod::LindleyTransform}) {
      auto draws = egl::sample(p, n, 99, method);
      std::vector<double> u;
      u.reserve(n);
      for (double x : draws) u.push_back(egl::cdf(p, x));
      c.expect(ks_against_uniform(std::move(u)) < crit,
               "simulated draws fail the uniformity check");
    }
  }

  // Moment series vs quadrature (1e-7 rel) for k = 1..4.
  for (auto [l, t, a] : {std::array<double, 3>{1, 1, 1},
                         std::array<double, 3>{0.5, 0.3, 2.0},
                         std::array<double, 3>{2.0, 4.0, 0.7}}) {
    egl::EglParams p(l, t, a);
    for (int k = 1; k <= 4; ++k) {
      double series = egl::raw_moment(p, k);
      double quad = egl::specfun::integrate_positive_axis(
          [&, k](double x) { return std::pow(x, k) * egl::pdf(p, x); }, 1e-13,
          1e-10, 4000);
      c.expect(std::abs(series - quad) <= 1e-7 * std::abs(quad),
               "moment series drifts from quadrature");
    }
  }

  // Renyi entropy closed form vs quadrature (1e-6 abs).
  for (auto [l, t, a] : {std::array<double, 3>{1, 1, 1},
                         std::array<double, 3>{2.0, 0.4, 1.6}}) {
    egl::EglParams p(l, t, a);
    for (double zeta : {0.5, 2.0, 3.0}) {
      double direct = egl::specfun::integrate_positive_axis(
          [&, zeta](double x) { return std::pow(egl::pdf(p, x), zeta); }, 1e-13,
          1e-10, 4000);
      double expected = std::log(direct) / (1.0 - zeta);
      c.expect(std::abs(egl::renyi_entropy(p, zeta) - expected) <= 1e-6,
               "entropy closed form drifts from quadrature");
    }
  }

  // Score vs finite differences (1e-4 rel).
  {
    std::mt19937_64 rng(314159);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    auto draw = [&](double lo, double hi) {
      return std::exp(std::log(lo) + (std::log(hi) - std::log(lo)) * unif(rng));
    };
    for (int trial = 0; trial < 40; ++trial) {
      egl::EglParams p(draw(0.2, 4.0), draw(0.1, 4.0), draw(0.3, 3.0));
      auto data = egl::sample(egl::EglParams(1, 1, 1), 30, 400 + trial);
      auto exact = egl::score_egl(p, data);
      std::array<double, 3> base = {p.lambda, p.theta, p.alpha};
      for (int j = 0; j < 3; ++j) {
        double h = 1e-6 * std::max(std::abs(base[j]), 1e-3);
        auto up = base, dn = base;
        up[j] += h;
        dn[j] -= h;
        double fd =
            (egl::loglik_egl(egl::EglParams(up[0], up[1], up[2]), data) -
             egl::loglik_egl(egl::EglParams(dn[0], dn[1], dn[2]), data)) /
            (2.0 * h);
        c.expect(std::abs(exact[j] - fd) <= 1e-4 * std::max(std::abs(exact[j]), 1.0),
                 "score drifts from finite differences");
      }
    }
  }

  // Mode formula vs numeric argmax (1e-6).
  {
    auto golden = [](const egl::EglParams& p, double lo, double hi) {
      const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
      double a = lo, b = hi;
      while (b - a > 1e-10) {
        double m1 = b - gr * (b - a), m2 = a + gr * (b - a);
        if (egl::pdf(p, m1) < egl::pdf(p, m2)) {
          a = m1;
        } else {
          b = m2;
        }
      }
      return 0.5 * (a + b);
    };
    for (auto [l, t, a] : {std::array<double, 3>{1, 1, 2},
                           std::array<double, 3>{0.5, 0.4, 1.8},
                           std::array<double, 3>{2.0, 1.5, 2.5}}) {
      egl::EglParams p(l, t, a);
      auto m = egl::mode(p);
      c.expect(m.has_value(), "interior mode missing");
      if (m.has_value()) {
        c.expect(std::abs(*m - golden(p, 0.0, 50.0)) <= 1e-6,
                 "mode drifts from numeric argmax");
      }
    }
  }

  // Hazard-shape classifier vs numeric scan on 50 random triples.
  {
    std::mt19937_64 rng(20240817);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    auto draw = [&](double lo, double hi) {
      return std::exp(std::log(lo) + (std::log(hi) - std::log(lo)) * unif(rng));
    };
    int disagreements = 0;
    for (int trial = 0; trial < 50; ++trial) {
      egl::EglParams p(draw(0.2, 5.0), draw(0.05, 8.0), draw(0.2, 5.0));
      auto shape = egl::classify_hazard_shape(p);
      std::vector<double> h;
      h.push_back(egl::hazard(p, 0.0));
      for (double lx = -6.0; lx <= 6.0; lx += 0.01) {
        h.push_back(egl::hazard(p, std::exp(lx)));
      }
      bool up = false, down = false, up_then_down = false, down_then_up = false;
      for (std::size_t i = 1; i < h.size(); ++i) {
        double rel = (h[i] - h[i - 1]) / std::max(h[i], h[i - 1]);
        if (rel > 1e-9) {
          if (down) down_then_up = true;
          up = true;
        }
        if (rel < -1e-9) {
          if (up) up_then_down = true;
          down = true;
        }
      }
      bool ok = !down_then_up;
      if (shape == egl::HazardShape::Increasing) {
        ok = ok && up && !down;
      } else if (shape == egl::HazardShape::Decreasing) {
        ok = ok && down && !up;
      } else if (up && down) {
        ok = ok && up_then_down;
      }
      if (!ok) ++disagreements;
    }
    c.expect(disagreements == 0,
             std::to_string(disagreements) + " classifier disagreements");
  }

  // Order-statistic series vs quadrature (1e-5 rel) and vs Monte Carlo (4 SE).
  {
    egl::EglParams p(1.0, 1.0, 2.0);
    double series = egl::order_stat_moment(p, 2, 3, 2);
    double quad = egl::specfun::integrate_positive_axis(
        [&](double x) { return x * x * egl::order_stat_pdf(p, 2, 3, x); }, 1e-13,
        1e-10, 4000);
    c.expect(std::abs(series - quad) <= 1e-5 * std::abs(quad),
             "order-statistic series drifts from quadrature");

    const std::size_t reps = 20000;
    const int n = 5, i = 4;
    auto draws = egl::sample(p, reps * n, 42, egl::SampleMethod::LindleyTransform);
    std::vector<double> block(n);
    double mean = 0.0, m2 = 0.0;
    for (std::size_t r = 0; r < reps; ++r) {
      std::copy_n(draws.begin() + static_cast<std::ptrdiff_t>(r * n), n,
                  block.begin());
      std::sort(block.begin(), block.end());
      double v = block[i - 1];
      double delta = v - mean;
      mean += delta / static_cast<double>(r + 1);
      m2 += delta * (v - mean);
    }
    double se = std::sqrt(m2 / static_cast<double>(reps - 1) /
                          static_cast<double>(reps));
    double expected = egl::order_stat_moment(p, i, n, 1);
    c.expect(std::abs(mean - expected) <= 4.0 * se,
             "order-statistic mean drifts from simulation");
  }

  // Special-function identities.
  for (double x : {-0.36, -0.3, -0.1, -0.01, -1e-6}) {
    double w = egl::specfun::lambert_w_neg1(x);
    c.expect(std::abs(w * std::exp(w) - x) <= 1e-12 * std::abs(x),
             "W branch residual exceeds 1e-12");
  }
  for (double s : {0.5, 1.0, 2.7}) {
    for (double x : {0.1, 1.0, 5.0}) {
      double lhs = egl::specfun::upper_inc_gamma(s + 1.0, x);
      double rhs = s * egl::specfun::upper_inc_gamma(s, x) +
                   std::pow(x, s) * std::exp(-x);
      c.expect(std::abs(lhs - rhs) <= 1e-10 * std::abs(lhs),
               "gamma recurrence exceeds 1e-10");
    }
  }
  return c;
}

// ---------------------------------------------------------------------------
// Criterion 5: Gumbel limit of normalized maxima.

Checker criterion_extremes() {
  Checker c;
  auto t0 = std::chrono::steady_clock::now();
  egl::EglParams p(1.0, 1.0, 2.0);
  const std::size_t n = 10000, reps = 2000;
  auto norm = egl::extreme_norming(p, n);
  std::vector<double> u;
  u.reserve(reps);
  std::mt19937_64 seeder(2024);
  for (std::size_t r = 0; r < reps; ++r) {
    auto draws = egl::sample(p, n, seeder(), egl::SampleMethod::LindleyTransform);
    double m = *std::max_element(draws.begin(), draws.end());
    double z = norm.a_n * (m - norm.b_n);
    u.push_back(std::exp(-std::exp(-z)));  // standard Gumbel cdf
  }
  double ks = ks_against_uniform(std::move(u));
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  char buf[120];
  std::snprintf(buf, sizeof buf, "K-S to Gumbel = %.4f, want < 0.05", ks);
  c.expect(ks < 0.05, buf);
  c.expect(secs < 120.0, "runtime " + std::to_string(secs) + "s, want < 120s");
  return c;
}

// ---------------------------------------------------------------------------
// Criterion 6: Wald interval coverage at n = 200.

Checker criterion_coverage() {
  Checker c;
  const egl::EglParams truth(1.0, 1.0, 1.0);
  const std::array<double, 3> target = {1.0, 1.0, 1.0};
  const int reps = 500;
  const std::size_t n = 200;
  std::array<int, 3> hits{};
  int usable = 0;
  for (int r = 0; r < reps; ++r) {
    auto data = egl::sample(truth, n, 100000 + static_cast<std::uint64_t>(r),
                            egl::SampleMethod::LindleyTransform);
    std::optional<egl::FitResult> fit;
    try {
      fit = egl::fit(egl::Family::EGL, data, {});
    } catch (const std::exception&) {
      continue;
    }
    if (!fit->has_covariance) continue;
    ++usable;
    for (int j = 0; j < 3; ++j) {
      if (fit->conf_intervals[j].first <= target[j] &&
          target[j] <= fit->conf_intervals[j].second) {
        ++hits[j];
      }
    }
  }
  c.expect(usable >= reps * 9 / 10,
           "only " + std::to_string(usable) + "/500 replicates yielded intervals");
  const char* names[3] = {"lambda", "theta", "alpha"};
  for (int j = 0; j < 3; ++j) {
    double coverage = usable > 0 ? static_cast<double>(hits[j]) / usable : 0.0;
    char buf[120];
    std::snprintf(buf, sizeof buf, "%s coverage = %.3f (%d/%d), want in [0.90, 0.99]",
                  names[j], coverage, hits[j], usable);
    c.expect(coverage >= 0.90 && coverage <= 0.99, buf);
  }
  return c;
}

// ---------------------------------------------------------------------------
// Criterion 7: bit-identical reports per seed.

Checker criterion_determinism() {
  Checker c;
  auto run = [](const std::string& args) -> std::pair<int, std::string> {
    std::string cmd = std::string(EGL_CLI_PATH) + " " + args + " 2>&1";
    std::string out;
    std::array<char, 4096> buf{};
    FILE* pipe = popen(cmd.c_str(), "r");
    if (pipe == nullptr) return {-1, ""};
    while (std::fgets(buf.data(), buf.size(), pipe) != nullptr) out += buf.data();
    int status = pclose(pipe);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
  };
  const std::string invocations[] = {
      "compare --dataset bladder --family egl,lindley --seed 7",
      "fit --dataset bank --family exponential,ngld --seed 3",
      "sample --n 50 --seed 11 --lambda 1 --theta 1 --alpha 2",
      "eval --which quantile --grid 0.1:0.9:17 --lambda 2 --theta 0.5 --alpha 1.5",
  };
  for (const auto& inv : invocations) {
    auto a = run(inv);
    auto b = run(inv);
    c.expect(a.first == 0, "exit " + std::to_string(a.first) + " from: " + inv);
    c.expect(a.first == b.first && a.second == b.second,
             "outputs differ across reruns of: " + inv);
  }
  return c;
}

}  // namespace

int main() {
  struct Criterion {
    const char* label;
    std::function<Checker()> run;
  };
  const Criterion criteria[] = {
      {"1 bladder comparison table", criterion_bladder},
      {"2 bank comparison table", criterion_bank},
      {"3 information criteria definitions", criterion_information_criteria},
      {"4 distribution property bundle", criterion_properties},
      {"5 Gumbel limit of normalized maxima", criterion_extremes},
      {"6 confidence-interval coverage", criterion_coverage},
      {"7 bit-identical reports per seed", criterion_determinism},
  };

  int failed = 0;
  for (const auto& criterion : criteria) {
    Checker result;
    try {
      result = criterion.run();
    } catch (const std::exception& e) {
      result.failures.push_back(std::string("exception: ") + e.what());
    }
    if (result.failures.empty()) {
      std::printf("criterion %s: PASS\n", criterion.label);
    } else {
      ++failed;
      std::string detail;
      for (std::size_t i = 0; i < result.failures.size(); ++i) {
        if (i > 0) detail += "; ";
        detail += result.failures[i];
      }
      std::printf("criterion %s: FAIL [%s]\n", criterion.label, detail.c_str());
    }
    std::fflush(stdout);
  }
  if (failed > 0) {
    std::printf("%d of 7 criteria failed\n", failed);
    return 1;
  }
  std::printf("all 7 criteria passed\n");
  return 0;
}
