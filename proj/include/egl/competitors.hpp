#pragma once

#include <string>
#include <vector>

#include "egl/distribution.hpp"

namespace egl {

enum class Family { EGL, LindleyExponential, PowerLindley, NGLD, Lindley, Exponential };

// A fitted or hypothesized model: family tag plus its parameter vector
// (length 3, 2, 2, 3, 1, 1 respectively).
struct ModelSpec {
  Family family;
  std::vector<double> params;

  ModelSpec(Family f, std::vector<double> ps);
};

std::size_t family_arity(Family f);
std::string family_tag(Family f);                  // short CLI tag, e.g. "egl"
std::string family_label(Family f);                // display name
Family family_from_tag(const std::string& tag);
std::vector<std::string> family_param_names(Family f);

double family_log_pdf(const ModelSpec& m, double x);
double family_pdf(const ModelSpec& m, double x);
double family_cdf(const ModelSpec& m, double x);
double family_loglik(const ModelSpec& m, const std::vector<double>& data);

std::vector<double> family_sample(const ModelSpec& m, std::size_t n,
                                  std::uint64_t seed);

}  // namespace egl
