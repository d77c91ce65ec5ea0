#include "egl/gof.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>

#include "egl/errors.hpp"

namespace egl {

std::function<double(double)> ecdf(const std::vector<double>& data) {
  if (data.empty()) throw InvalidDataError("ecdf: empty dataset");
  auto sorted = std::make_shared<std::vector<double>>(data);
  std::sort(sorted->begin(), sorted->end());
  double n = static_cast<double>(sorted->size());
  return [sorted, n](double x) {
    auto it = std::upper_bound(sorted->begin(), sorted->end(), x);
    return static_cast<double>(it - sorted->begin()) / n;
  };
}

double ks_statistic(const ModelSpec& model, const std::vector<double>& data) {
  if (data.empty()) throw InvalidDataError("ks_statistic: empty dataset");
  std::vector<double> sorted = data;
  std::sort(sorted.begin(), sorted.end());
  double n = static_cast<double>(sorted.size());
  double sup = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    double f = family_cdf(model, sorted[i]);
    double hi = static_cast<double>(i + 1) / n;
    double lo = static_cast<double>(i) / n;
    sup = std::max({sup, std::abs(f - hi), std::abs(f - lo)});
  }
  return sup;
}

std::vector<GofReport> compare(const std::vector<Family>& families,
                               const std::vector<double>& data,
                               const FitOptions& options) {
  if (families.empty()) throw DomainError("compare: family list is empty");
  std::vector<GofReport> reports;
  reports.reserve(families.size());
  double log_n = std::log(static_cast<double>(data.size()));
  constexpr double kInf = std::numeric_limits<double>::infinity();
  for (Family f : families) {
    try {
      FitResult r = fit(f, data, options);
      double q = static_cast<double>(family_arity(f));
      reports.push_back({r.model, r.neg_loglik, 2.0 * r.neg_loglik + 2.0 * q,
                         2.0 * r.neg_loglik + q * log_n,
                         ks_statistic(r.model, data), data.size(), r.converged,
                         ""});
    } catch (const Error& e) {
      // One family failing must not abort the batch; the failed row is kept
      // with infinite criteria so it ranks last.
      ModelSpec placeholder(f,
                            std::vector<double>(family_arity(f), 1.0));
      reports.push_back({placeholder, kInf, kInf, kInf, kInf, data.size(),
                         false, e.what()});
    }
  }
  std::stable_sort(reports.begin(), reports.end(),
                   [](const GofReport& a, const GofReport& b) {
                     return a.aic < b.aic;
                   });
  return reports;
}

}  // namespace egl
