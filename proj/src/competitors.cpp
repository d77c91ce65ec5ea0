#include "egl/competitors.hpp"

#include <cmath>
#include <random>

#include "egl/errors.hpp"
#include "egl/specfun.hpp"

namespace egl {

namespace {

double logsumexp2(double a, double b) {
  double m = std::max(a, b);
  return m + std::log(std::exp(a - m) + std::exp(b - m));
}

double lindley_cdf(double theta, double x) {
  // 1 - e^{-theta x} (1 + theta + theta x)/(1 + theta)
  return -std::expm1(-theta * x + std::log1p(theta + theta * x) - std::log1p(theta));
}

// Bisection inverse of a continuous cdf on [0, hi_guess), doubling the bracket.
template <typename Cdf>
double invert_cdf(const Cdf& cdf, double u) {
  double lo = 0.0, hi = 1.0;
  while (cdf(hi) < u && hi < 1e12) hi *= 2.0;
  for (int it = 0; it < 200; ++it) {
    double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (cdf(mid) < u ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

ModelSpec::ModelSpec(Family f, std::vector<double> ps)
    : family(f), params(std::move(ps)) {
  if (params.size() != family_arity(family)) {
    throw DomainError("ModelSpec: parameter count does not match family");
  }
  for (double v : params) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw DomainError("ModelSpec: parameters must be positive finite");
    }
  }
}

std::size_t family_arity(Family f) {
  switch (f) {
    case Family::EGL: return 3;
    case Family::LindleyExponential: return 2;
    case Family::PowerLindley: return 2;
    case Family::NGLD: return 3;
    case Family::Lindley: return 1;
    case Family::Exponential: return 1;
  }
  throw DomainError("family_arity: unknown family");
}

std::string family_tag(Family f) {
  switch (f) {
    case Family::EGL: return "egl";
    case Family::LindleyExponential: return "le";
    case Family::PowerLindley: return "pl";
    case Family::NGLD: return "ngld";
    case Family::Lindley: return "lindley";
    case Family::Exponential: return "exponential";
  }
  throw DomainError("family_tag: unknown family");
}

std::string family_label(Family f) {
  switch (f) {
    case Family::EGL: return "EGL";
    case Family::LindleyExponential: return "Lindley-Exponential";
    case Family::PowerLindley: return "Power Lindley";
    case Family::NGLD: return "NGLD";
    case Family::Lindley: return "Lindley";
    case Family::Exponential: return "Exponential";
  }
  throw DomainError("family_label: unknown family");
}

Family family_from_tag(const std::string& tag) {
  for (Family f : {Family::EGL, Family::LindleyExponential, Family::PowerLindley,
                   Family::NGLD, Family::Lindley, Family::Exponential}) {
    if (family_tag(f) == tag) return f;
  }
  throw DomainError("unknown family tag: " + tag);
}

std::vector<std::string> family_param_names(Family f) {
  switch (f) {
    case Family::EGL: return {"lambda", "theta", "alpha"};
    case Family::LindleyExponential: return {"theta", "lambda"};
    case Family::PowerLindley: return {"alpha", "beta"};
    case Family::NGLD: return {"theta", "alpha", "beta"};
    case Family::Lindley: return {"theta"};
    case Family::Exponential: return {"theta"};
  }
  throw DomainError("family_param_names: unknown family");
}

double family_log_pdf(const ModelSpec& m, double x) {
  if (!(x >= 0.0)) throw DomainError("family_log_pdf: x must be nonnegative");
  switch (m.family) {
    case Family::EGL:
      return log_pdf(EglParams(m.params[0], m.params[1], m.params[2]), x);
    case Family::LindleyExponential: {
      double theta = m.params[0], lambda = m.params[1];
      if (x == 0.0) return theta > 1.0 ? -INFINITY : INFINITY;
      double log_u = std::log(-std::expm1(-lambda * x));
      return 2.0 * std::log(theta) + std::log(lambda) - lambda * x +
             (theta - 1.0) * log_u + std::log1p(-log_u) - std::log1p(theta);
    }
    case Family::PowerLindley: {
      double alpha = m.params[0], beta = m.params[1];
      if (x == 0.0) {
        if (alpha > 1.0) return -INFINITY;
        if (alpha < 1.0) return INFINITY;
        return 2.0 * std::log(beta) - std::log1p(beta);
      }
      double xa = std::pow(x, alpha);
      return std::log(alpha) + 2.0 * std::log(beta) - std::log1p(beta) +
             std::log1p(xa) + (alpha - 1.0) * std::log(x) - beta * xa;
    }
    case Family::NGLD: {
      double theta = m.params[0], alpha = m.params[1], beta = m.params[2];
      if (x == 0.0) {
        if (alpha < 1.0 || beta < 1.0) return INFINITY;
      }
      double lx = std::log(theta * x);
      double t1 = 2.0 * std::log(theta) + (alpha - 1.0) * lx - theta * x -
                  std::lgamma(alpha);
      double t2 = std::log(theta) + (beta - 1.0) * lx - theta * x -
                  std::lgamma(beta);
      return logsumexp2(t1, t2) - std::log1p(theta);
    }
    case Family::Lindley: {
      double theta = m.params[0];
      return 2.0 * std::log(theta) - std::log1p(theta) + std::log1p(x) -
             theta * x;
    }
    case Family::Exponential: {
      double theta = m.params[0];
      return std::log(theta) - theta * x;
    }
  }
  throw DomainError("family_log_pdf: unknown family");
}

double family_pdf(const ModelSpec& m, double x) {
  return std::exp(family_log_pdf(m, x));
}

double family_cdf(const ModelSpec& m, double x) {
  if (!(x >= 0.0)) throw DomainError("family_cdf: x must be nonnegative");
  switch (m.family) {
    case Family::EGL:
      return cdf(EglParams(m.params[0], m.params[1], m.params[2]), x);
    case Family::LindleyExponential: {
      double theta = m.params[0], lambda = m.params[1];
      if (x == 0.0) return 0.0;
      double u = -std::expm1(-lambda * x);
      double log_u = std::log(u);
      return std::exp(theta * log_u) * (1.0 + theta - theta * log_u) /
             (1.0 + theta);
    }
    case Family::PowerLindley: {
      double alpha = m.params[0], beta = m.params[1];
      double xa = std::pow(x, alpha);
      return lindley_cdf(beta, xa);
    }
    case Family::NGLD: {
      double theta = m.params[0], alpha = m.params[1], beta = m.params[2];
      return (theta * specfun::reg_gamma_p(alpha, theta * x) +
              specfun::reg_gamma_p(beta, theta * x)) / (1.0 + theta);
    }
    case Family::Lindley:
      return lindley_cdf(m.params[0], x);
    case Family::Exponential:
      return -std::expm1(-m.params[0] * x);
  }
  throw DomainError("family_cdf: unknown family");
}

double family_loglik(const ModelSpec& m, const std::vector<double>& data) {
  double total = 0.0;
  for (double x : data) {
    double lp = family_log_pdf(m, x);
    if (!std::isfinite(lp)) return -INFINITY;
    total += lp;
  }
  return total;
}

std::vector<double> family_sample(const ModelSpec& m, std::size_t n,
                                  std::uint64_t seed) {
  if (n == 0) throw DomainError("family_sample: n must be positive");
  if (m.family == Family::EGL) {
    return sample(EglParams(m.params[0], m.params[1], m.params[2]), n, seed);
  }
  std::mt19937_64 gen(seed);
  auto uniform = [&gen]() {
    return static_cast<double>(gen() >> 11) * 0x1.0p-53;
  };
  std::vector<double> out;
  out.reserve(n);
  switch (m.family) {
    case Family::Exponential: {
      double theta = m.params[0];
      for (std::size_t i = 0; i < n; ++i) {
        out.push_back(-std::log1p(-uniform()) / theta);
      }
      break;
    }
    case Family::Lindley: {
      // Mixture of Exp(theta) and Gamma(2, theta).
      double theta = m.params[0];
      double mix = theta / (1.0 + theta);
      for (std::size_t i = 0; i < n; ++i) {
        double y = -std::log1p(-uniform()) / theta;
        if (uniform() >= mix) y += -std::log1p(-uniform()) / theta;
        out.push_back(y);
      }
      break;
    }
    case Family::PowerLindley: {
      // X^alpha is Lindley(beta).
      double alpha = m.params[0], beta = m.params[1];
      double mix = beta / (1.0 + beta);
      for (std::size_t i = 0; i < n; ++i) {
        double y = -std::log1p(-uniform()) / beta;
        if (uniform() >= mix) y += -std::log1p(-uniform()) / beta;
        out.push_back(std::pow(y, 1.0 / alpha));
      }
      break;
    }
    default: {
      // Numeric inverse-cdf for families without a convenient transform.
      for (std::size_t i = 0; i < n; ++i) {
        double u = uniform();
        out.push_back(invert_cdf([&m](double x) { return family_cdf(m, x); }, u));
      }
      break;
    }
  }
  return out;
}

}  // namespace egl
