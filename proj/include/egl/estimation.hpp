#pragma once

#include <array>
#include <cstdint>
#include <utility>
#include <vector>

#include "egl/competitors.hpp"
#include "egl/distribution.hpp"

namespace egl {

struct FitOptions {
  std::uint64_t seed = 0;
  int n_starts = 5;           // grid starts kept (hard cap 25)
  int max_iterations = 2000;  // simplex iterations per start
  double level = 0.95;        // confidence level for the reported intervals
  bool expected_info = false; // covariance from Expected rather than Observed info
};

struct FitResult {
  ModelSpec model;
  double neg_loglik = 0.0;
  double score_norm = 0.0;      // Euclidean norm of the score at the optimum
  bool converged = false;
  int n_restarts_used = 0;
  long iterations = 0;
  long function_evals = 0;
  bool has_covariance = false;
  std::vector<std::vector<double>> covariance = {};           // arity x arity
  std::vector<std::pair<double, double>> conf_intervals = {};  // empty when unavailable
};

// Closed-form EGL log-likelihood; -inf sentinel on invalid parameters.
double loglik_egl(const EglParams& p, const std::vector<double>& data);

// Closed-form score (d/d lambda, d/d theta, d/d alpha).
std::array<double, 3> score_egl(const EglParams& p, const std::vector<double>& data);

FitResult fit(Family family, const std::vector<double>& data,
              const FitOptions& options = {});

enum class InfoMode { Observed, Expected };

// 3x3 information matrix in (lambda, theta, alpha) order. Observed mode is the
// finite-difference negative Hessian of the log-likelihood on `data`; Expected
// integrates the per-observation entries against the density and scales by n.
std::vector<std::vector<double>> fisher_information(
    const EglParams& p, InfoMode mode, const std::vector<double>& data = {},
    std::size_t n_for_expected = 1);

// Wald intervals estimate_j +- z_{(1+level)/2} * sqrt(cov_jj).
std::vector<std::pair<double, double>> confidence_intervals(const FitResult& fit,
                                                            double level);

}  // namespace egl
