#pragma once

#include <cstdint>
#include <optional>
#include <vector>

namespace egl {

// Parameter triple (lambda, theta, alpha), all strictly positive.
struct EglParams {
  double lambda;
  double theta;
  double alpha;

  EglParams(double lambda_, double theta_, double alpha_);
};

enum class HazardShape { Decreasing, Increasing, UpsideDown };

enum class SampleMethod { InverseTransform, LindleyTransform };

// Norming constants for the maximum of an n-sample: the law of
// a_n * (X_{n:n} - b_n) approaches the standard Gumbel distribution.
struct ExtremeNorming {
  double a_n;
  double b_n;
  std::size_t n;
};

double pdf(const EglParams& p, double x);
double log_pdf(const EglParams& p, double x);
double cdf(const EglParams& p, double x);
double survival(const EglParams& p, double x);
double hazard(const EglParams& p, double x);

HazardShape classify_hazard_shape(const EglParams& p);

// Interior mode when it exists; nullopt means the density is decreasing and
// the mode sits at the boundary x = 0.
std::optional<double> mode(const EglParams& p);

double quantile(const EglParams& p, double gamma);
double median(const EglParams& p);

std::vector<double> sample(const EglParams& p, std::size_t n, std::uint64_t seed,
                           SampleMethod method = SampleMethod::InverseTransform);

double raw_moment(const EglParams& p, int k);
double conditional_moment(const EglParams& p, int k, double t);
double mean_residual_life(const EglParams& p, double t);

double renyi_entropy(const EglParams& p, double zeta);
double shannon_entropy(const EglParams& p);

double order_stat_pdf(const EglParams& p, int i, int n, double x);
double order_stat_moment(const EglParams& p, int i, int n, int q);

ExtremeNorming extreme_norming(const EglParams& p, std::size_t n);

}  // namespace egl
