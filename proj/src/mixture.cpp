// SPDX-License-Identifier: Apache-2.0
#include "relaybounds/mixture.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "relaybounds/numeric.hpp"

namespace relaybounds {

namespace {

double log_add_exp(double a, double b) {
  const double m = std::max(a, b);
  return m + std::log1p(std::exp(-std::abs(a - b)));
}

}  // namespace

// The density depends on the output only through u = |y|^2, which is a
// mixture of exponentials with means v0 and v1. The information is the
// weighted divergence of each component from the mixture, integrated over u
// after rescaling the narrower component to unit mean.
double switch_info_mixture(const MixtureSpec& m) {
  if (!(m.v0 > 0.0) || !(m.v1 > 0.0) || !std::isfinite(m.v0) || !std::isfinite(m.v1))
    throw std::invalid_argument("mixture variances must be finite and > 0");
  if (!(m.gamma >= 0.0 && m.gamma <= 1.0))
    throw std::invalid_argument("mixture weight must lie in [0, 1]");
  const double hmax = binary_entropy(m.gamma);
  if (hmax == 0.0 || m.v0 == m.v1) return 0.0;

  const bool first_narrow = m.v0 < m.v1;
  const double wa = first_narrow ? m.gamma : 1.0 - m.gamma;
  const double wb = 1.0 - wa;
  const double r = first_narrow ? m.v1 / m.v0 : m.v0 / m.v1;
  const double ln_r = std::log(r);
  const double ln_wa = std::log(wa), ln_wb = std::log(wb);
  const double k = 1.0 - 1.0 / r;

  auto integrand = [&](double u) {
    const double ln_ratio = u * k - ln_r;  // log(p_b / p_a)
    const double ln_p_over_pa = log_add_exp(ln_wa, ln_wb + ln_ratio);
    const double pa = std::exp(-u);
    const double pb = std::exp(-u / r) / r;
    return wa * pa * (-ln_p_over_pa) + wb * pb * (ln_ratio - ln_p_over_pa);
  };

  // Once the narrow component is negligible against the wide one the
  // integrand reduces to wb * p_b * (-ln wb), which integrates in closed form.
  const double settle = (ln_r + std::max(0.0, ln_wa - ln_wb) + 45.0) / k;
  const double upper = std::min(64.0 * r, std::max(settle, 1.0));

  using Quad = boost::math::quadrature::gauss_kronrod<double, 21>;
  double total = 0.0;
  double a = 0.0, b = 1.0;
  while (a < upper) {
    b = std::min(b, upper);
    total += Quad::integrate(integrand, a, b, 10, 1e-10);
    a = b;
    b *= 2.0;
  }
  total += wb * (-ln_wb) * std::exp(-upper / r);

  return std::clamp(total / kLn2, 0.0, hmax);
}

}  // namespace relaybounds
