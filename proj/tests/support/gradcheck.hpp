#pragma once

// Test-only finite-difference oracle. Deliberately knows nothing about the
// analytic backward paths it is used to check: it only re-evaluates forward
// maps under central perturbations.

#include <cmath>
#include <functional>

#include "mcpad/rng.hpp"
#include "mcpad/tensor.hpp"

namespace gradcheck {

inline constexpr double kEps = 1e-5;
inline constexpr double kRelTol = 1e-4;

inline mcpad::TensorND random_tensor(std::vector<std::size_t> shape, mcpad::Rng& rng,
                                     double lo = -1.0, double hi = 1.0) {
  mcpad::TensorND t(std::move(shape));
  for (auto& v : t.data) v = rng.uniform(lo, hi);
  return t;
}

inline double rel_error(double analytic, double numeric) {
  const double scale = std::max({std::fabs(analytic), std::fabs(numeric), 1e-6});
  return std::fabs(analytic - numeric) / scale;
}

// Central finite differences of `loss` w.r.t. every element of `x`,
// compared against the provided analytic gradient. Returns the max
// relative error over all elements.
inline double max_rel_error(mcpad::TensorND& x, const mcpad::TensorND& analytic,
                            const std::function<double()>& loss, double eps = kEps) {
  double worst = 0.0;
  for (std::size_t i = 0; i < x.numel(); ++i) {
    const double saved = x.data[i];
    x.data[i] = saved + eps;
    const double lp = loss();
    x.data[i] = saved - eps;
    const double lm = loss();
    x.data[i] = saved;
    const double numeric = (lp - lm) / (2.0 * eps);
    if (std::fabs(analytic.data[i]) < 1e-10 && std::fabs(numeric) < 1e-10) continue;
    worst = std::max(worst, rel_error(analytic.data[i], numeric));
  }
  return worst;
}

inline double max_rel_error_vec(std::vector<double>& x, const std::vector<double>& analytic,
                                const std::function<double()>& loss, double eps = kEps) {
  double worst = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double saved = x[i];
    x[i] = saved + eps;
    const double lp = loss();
    x[i] = saved - eps;
    const double lm = loss();
    x[i] = saved;
    const double numeric = (lp - lm) / (2.0 * eps);
    if (std::fabs(analytic[i]) < 1e-10 && std::fabs(numeric) < 1e-10) continue;
    worst = std::max(worst, rel_error(analytic[i], numeric));
  }
  return worst;
}

}  // namespace gradcheck
