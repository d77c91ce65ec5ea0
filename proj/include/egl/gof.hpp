#pragma once

#include <functional>
#include <string>
#include <vector>

#include "egl/competitors.hpp"
#include "egl/estimation.hpp"

namespace egl {

struct GofReport {
  ModelSpec model;
  double neg_loglik;
  double aic;
  double bic;
  double ks;
  std::size_t n;
  bool converged;
  std::string error;  // empty on success; failed rows sort last
};

// Right-continuous empirical cdf.
std::function<double(double)> ecdf(const std::vector<double>& data);

// Two-sided sup distance between the empirical step function and the model cdf:
// max over sorted x_(i) of max(|F(x_i) - i/n|, |F(x_i) - (i-1)/n|).
double ks_statistic(const ModelSpec& model, const std::vector<double>& data);

// Fit every family and rank the reports by AIC ascending.
std::vector<GofReport> compare(const std::vector<Family>& families,
                               const std::vector<double>& data,
                               const FitOptions& options = {});

}  // namespace egl
