#include "egl/distribution.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "egl/errors.hpp"
#include "egl/specfun.hpp"

namespace egl {

namespace {

void require_nonneg(double x, const char* op) {
  if (!(x >= 0.0)) throw DomainError(std::string(op) + ": x must be nonnegative");
}

// (1 + lambda x)^alpha, the transform from Proposition 1.
double power_term(const EglParams& p, double x) {
  return std::pow(1.0 + p.lambda * x, p.alpha);
}

// Signed log-space accumulator: keeps sum of s_i * exp(l_i) without overflow.
class SignedLogSum {
 public:
  void add(double sign, double log_abs) {
    if (!std::isfinite(log_abs)) {
      if (log_abs == -INFINITY) return;  // exact zero term
      throw NonConvergenceError("moment series: non-finite term", 0);
    }
    if (log_abs > peak_) {
      // Rescale the running sum to the new peak.
      sum_ *= std::exp(peak_ - log_abs);
      peak_ = log_abs;
    }
    sum_ += sign * std::exp(log_abs - peak_);
  }

  // Value as sign * exp(log_abs).
  double log_abs() const { return peak_ + std::log(std::abs(sum_)); }
  double sign() const { return sum_ >= 0.0 ? 1.0 : -1.0; }
  double value() const { return sum_ * std::exp(peak_); }

 private:
  double peak_ = -INFINITY;
  double sum_ = 0.0;
};

double log_binomial(int n, int k) {
  return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

// log of E(X^k | X > t) for the EGL law; t = 0 gives the raw moment.
// Derivation: substituting y = (1 + lambda x)^alpha into int_t^inf x^k g(x) dx
// leaves int_{p_t}^inf (y^{1/alpha} - 1)^k y e^{-theta y} dy up to constants,
// whose binomial expansion is a sum of upper incomplete gammas.
double log_conditional_moment(const EglParams& p, int k, double t) {
  double pt = power_term(p, t);
  double z = p.theta * pt;
  SignedLogSum series;
  for (int i = 0; i <= k; ++i) {
    double s = static_cast<double>(i) / p.alpha + 2.0;
    double log_term = log_binomial(k, i) - s * std::log(p.theta) +
                      specfun::log_upper_inc_gamma(s, z);
    series.add(((k - i) % 2 == 0) ? 1.0 : -1.0, log_term);
  }
  if (series.sign() < 0.0) {
    throw NonConvergenceError("conditional moment series lost precision", k);
  }
  double log_prefix = 2.0 * std::log(p.theta) + z - k * std::log(p.lambda) -
                      std::log1p(z);
  return log_prefix + series.log_abs();
}

}  // namespace

EglParams::EglParams(double lambda_, double theta_, double alpha_)
    : lambda(lambda_), theta(theta_), alpha(alpha_) {
  if (!(lambda > 0.0) || !std::isfinite(lambda) || !(theta > 0.0) ||
      !std::isfinite(theta) || !(alpha > 0.0) || !std::isfinite(alpha)) {
    throw DomainError("EglParams: lambda, theta, alpha must be positive finite");
  }
}

double log_pdf(const EglParams& p, double x) {
  require_nonneg(x, "pdf");
  double lp = std::log1p(p.lambda * x);
  return std::log(p.alpha) + 2.0 * std::log(p.theta) + std::log(p.lambda) -
         std::log1p(p.theta) + (2.0 * p.alpha - 1.0) * lp +
         p.theta * (1.0 - std::exp(p.alpha * lp));
}

double pdf(const EglParams& p, double x) {
  return std::exp(log_pdf(p, x));
}

double cdf(const EglParams& p, double x) {
  require_nonneg(x, "cdf");
  return 1.0 - survival(p, x);
}

double survival(const EglParams& p, double x) {
  require_nonneg(x, "survival");
  double pt = power_term(p, x);
  // exp(theta - theta p) (1 + theta p) / (1 + theta), evaluated in log form so
  // deep tails keep relative precision.
  double lg = p.theta * (1.0 - pt) + std::log1p(p.theta * pt) - std::log1p(p.theta);
  return std::exp(lg);
}

double hazard(const EglParams& p, double x) {
  require_nonneg(x, "hazard");
  double lp = std::log1p(p.lambda * x);
  double pt = std::exp(p.alpha * lp);
  return std::exp(std::log(p.alpha) + 2.0 * std::log(p.theta) +
                  std::log(p.lambda) + (2.0 * p.alpha - 1.0) * lp -
                  std::log1p(p.theta * pt));
}

HazardShape classify_hazard_shape(const EglParams& p) {
  if (p.alpha >= 1.0) return HazardShape::Increasing;
  if (p.alpha <= 0.5) return HazardShape::Decreasing;
  // 1/2 < alpha < 1: the sign of u(0) = 2 alpha - 1 + alpha (alpha - 1) theta
  // decides; u(0) <= 0 keeps u negative on all of (0, inf).
  double threshold = (2.0 * p.alpha - 1.0) / (p.alpha * (1.0 - p.alpha));
  return p.theta >= threshold ? HazardShape::Decreasing : HazardShape::UpsideDown;
}

std::optional<double> mode(const EglParams& p) {
  if (p.theta >= 2.0) return std::nullopt;
  if (!(p.alpha * (2.0 - p.theta) > 1.0)) return std::nullopt;
  double x0 = (std::pow((2.0 * p.alpha - 1.0) / (p.alpha * p.theta), 1.0 / p.alpha) -
               1.0) / p.lambda;
  if (!(x0 > 0.0)) return std::nullopt;
  return x0;
}

double quantile(const EglParams& p, double gamma) {
  if (!(gamma >= 0.0) || !(gamma < 1.0)) {
    throw DomainError("quantile: gamma must lie in [0, 1)");
  }
  if (gamma == 0.0) return 0.0;
  double arg = (gamma - 1.0) * (1.0 + p.theta) * std::exp(-p.theta - 1.0);
  double w = specfun::lambert_w_neg1(arg);
  double pt = -(w + 1.0) / p.theta;
  double x = (std::pow(pt, 1.0 / p.alpha) - 1.0) / p.lambda;
  return std::max(x, 0.0);
}

double median(const EglParams& p) { return quantile(p, 0.5); }

std::vector<double> sample(const EglParams& p, std::size_t n, std::uint64_t seed,
                           SampleMethod method) {
  if (n == 0) throw DomainError("sample: n must be positive");
  std::mt19937_64 gen(seed);
  auto uniform = [&gen]() {
    return static_cast<double>(gen() >> 11) * 0x1.0p-53;
  };
  std::vector<double> out;
  out.reserve(n);
  if (method == SampleMethod::InverseTransform) {
    for (std::size_t i = 0; i < n; ++i) out.push_back(quantile(p, uniform()));
    return out;
  }
  // Lindley(theta) is the mixture of Exp(theta) [weight theta/(1+theta)] and
  // Gamma(2, theta); X = ((1 + Y)^{1/alpha} - 1)/lambda.
  double mix = p.theta / (1.0 + p.theta);
  for (std::size_t i = 0; i < n; ++i) {
    double e1 = -std::log1p(-uniform()) / p.theta;
    double y;
    if (uniform() < mix) {
      y = e1;
    } else {
      double e2 = -std::log1p(-uniform()) / p.theta;
      y = e1 + e2;
    }
    out.push_back((std::pow(1.0 + y, 1.0 / p.alpha) - 1.0) / p.lambda);
  }
  return out;
}

double raw_moment(const EglParams& p, int k) {
  if (k < 1) throw DomainError("raw_moment: k must be a positive integer");
  return std::exp(log_conditional_moment(p, k, 0.0));
}

double conditional_moment(const EglParams& p, int k, double t) {
  if (k < 1) throw DomainError("conditional_moment: k must be a positive integer");
  require_nonneg(t, "conditional_moment");
  if (!(survival(p, t) > 0.0)) {
    throw DomainError("conditional_moment: survival underflows at t");
  }
  return std::exp(log_conditional_moment(p, k, t));
}

double mean_residual_life(const EglParams& p, double t) {
  return conditional_moment(p, 1, t) - t;
}

double renyi_entropy(const EglParams& p, double zeta) {
  if (!(zeta > 0.0) || zeta == 1.0) {
    throw DomainError("renyi_entropy: zeta must be positive and != 1");
  }
  double nu = (-2.0 * zeta * p.alpha + p.alpha + zeta - 1.0) / p.alpha;
  double log_e = std::log(specfun::exp_integral(nu, zeta * p.theta));
  double log_val = (zeta - 1.0) * std::log(p.alpha * p.lambda) +
                   2.0 * zeta * std::log(p.theta) + p.theta * zeta -
                   zeta * std::log1p(p.theta) + log_e;
  return log_val / (1.0 - zeta);
}

double shannon_entropy(const EglParams& p) {
  auto f = [&p](double x) {
    double lg = log_pdf(p, x);
    double g = std::exp(lg);
    return g > 0.0 ? -g * lg : 0.0;
  };
  return specfun::integrate_positive_axis(f, 1e-12, 1e-10, 2000);
}

double order_stat_pdf(const EglParams& p, int i, int n, double x) {
  if (i < 1 || n < 1 || i > n) {
    throw DomainError("order_stat_pdf: require 1 <= i <= n");
  }
  require_nonneg(x, "order_stat_pdf");
  double lg = log_pdf(p, x);
  double big_g = cdf(p, x);
  double log_comb = std::lgamma(n + 1.0) - std::lgamma(static_cast<double>(i)) -
                    std::lgamma(static_cast<double>(n - i + 1));
  double log_val = log_comb + lg;
  if (i > 1) {
    if (big_g == 0.0) return 0.0;
    log_val += (i - 1.0) * std::log(big_g);
  }
  if (n > i) {
    double sf = survival(p, x);
    if (sf == 0.0) return 0.0;
    log_val += (n - i) * std::log(sf);
  }
  return std::exp(log_val);
}

// Triple series: expand G^{i-1} binomially, then (1 + theta y)^{n-i+m}, then
// (y^{1/alpha} - 1)^q; each inner term reduces to an upper incomplete gamma.
double order_stat_moment(const EglParams& p, int i, int n, int q) {
  if (i < 1 || n < 1 || i > n) {
    throw DomainError("order_stat_moment: require 1 <= i <= n");
  }
  if (q < 1) throw DomainError("order_stat_moment: q must be a positive integer");
  double log_comb = std::lgamma(n + 1.0) - std::lgamma(static_cast<double>(i)) -
                    std::lgamma(static_cast<double>(n - i + 1));
  SignedLogSum total;
  for (int m = 0; m <= i - 1; ++m) {
    int e = n - i + m;        // binomial power on (1 + theta y)
    double r = e + 1.0;       // exponential rate multiplier
    double log_outer = log_binomial(i - 1, m) - e * std::log1p(p.theta) +
                       r * p.theta;
    double outer_sign = (m % 2 == 0) ? 1.0 : -1.0;
    for (int k = 0; k <= e; ++k) {
      for (int l = 0; l <= q; ++l) {
        double s = static_cast<double>(l) / p.alpha + k + 2.0;
        double log_term = log_outer + log_binomial(e, k) +
                          k * std::log(p.theta) + log_binomial(q, l) -
                          s * std::log(r * p.theta) +
                          specfun::log_upper_inc_gamma(s, r * p.theta);
        double sign = outer_sign * (((q - l) % 2 == 0) ? 1.0 : -1.0);
        total.add(sign, log_term);
      }
    }
  }
  if (total.sign() < 0.0) {
    throw NonConvergenceError("order statistic series lost precision", n);
  }
  double log_prefix = log_comb + 2.0 * std::log(p.theta) - std::log1p(p.theta) -
                      q * std::log(p.lambda);
  return std::exp(log_prefix + total.log_abs());
}

ExtremeNorming extreme_norming(const EglParams& p, std::size_t n) {
  if (n < 2) throw DomainError("extreme_norming: n must be at least 2");
  double b = quantile(p, 1.0 - 1.0 / static_cast<double>(n));
  // The tail hazard is theta*alpha*lambda (1 + lambda x)^{alpha-1}; evaluating
  // it at b_n standardizes the Gumbel limit.
  double a = p.theta * p.alpha * p.lambda * std::pow(1.0 + p.lambda * b, p.alpha - 1.0);
  return {a, b, n};
}

}  // namespace egl
