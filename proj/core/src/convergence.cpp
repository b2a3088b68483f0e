#include "relwig/convergence.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace relwig {

LogLogFit fit_loglog(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw std::invalid_argument("fit_loglog: need >= 2 matched points");
  const std::size_t n = x.size();
  std::vector<double> lx(n), ly(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!(x[i] > 0.0) || !(y[i] > 0.0)) throw std::invalid_argument("fit_loglog: values must be positive");
    lx[i] = std::log(x[i]);
    ly[i] = std::log(y[i]);
  }
  const double mx = std::accumulate(lx.begin(), lx.end(), 0.0) / n;
  const double my = std::accumulate(ly.begin(), ly.end(), 0.0) / n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    sxy += (lx[i] - mx) * (ly[i] - my);
    syy += (ly[i] - my) * (ly[i] - my);
  }
  if (sxx == 0.0) throw std::invalid_argument("fit_loglog: parameters are all equal");
  LogLogFit f;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  f.r2 = syy == 0.0 ? 1.0 : (sxy * sxy) / (sxx * syy);
  return f;
}

ConvergenceReport analyze_convergence(const std::vector<double>& parameters, const std::vector<double>& errors) {
  if (parameters.size() != errors.size()) throw std::invalid_argument("analyze_convergence: size mismatch");
  if (parameters.size() < 3) throw std::invalid_argument("analyze_convergence: need at least 3 levels");
  ConvergenceReport r;
  r.parameters = parameters;
  r.errors = errors;

  std::vector<std::size_t> order(parameters.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](auto a, auto b) { return parameters[a] > parameters[b]; });

  bool monotone = true;
  for (std::size_t i = 0; i < order.size(); ++i) {
    const double e = errors[order[i]];
    if (!(e > 0.0) || !std::isfinite(e) || !(parameters[order[i]] > 0.0)) monotone = false;
    if (i > 0 && !(e < errors[order[i - 1]])) monotone = false;
    if (i > 0 && parameters[order[i]] == parameters[order[i - 1]]) monotone = false;
  }
  if (!monotone) {
    r.classification = "undefined";
    return r;
  }
  for (std::size_t i = 1; i < order.size(); ++i) {
    const auto a = order[i - 1], b = order[i];
    r.local_slopes.push_back(std::log(errors[a] / errors[b]) / std::log(parameters[a] / parameters[b]));
  }
  r.fit = fit_loglog(parameters, errors);
  bool growing = true;
  for (std::size_t i = 1; i < r.local_slopes.size(); ++i)
    if (!(r.local_slopes[i] > r.local_slopes[i - 1])) growing = false;
  const bool spectral = growing && r.local_slopes.back() > 1.5 * r.local_slopes.front() && r.local_slopes.front() > 0.0;
  r.classification = spectral ? "spectral" : "algebraic";
  return r;
}

}  // namespace relwig
