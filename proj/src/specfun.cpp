#include "vdw/specfun.hpp"

#include "vdw/errors.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace vdw::specfun {

namespace {

double log_i0(double x) {
  if (x < 1e-8)
    return x * x / 6.0;
  if (x < 20.0)
    return std::log(std::sinh(x) / x);
  return x - std::log(2.0 * x) + std::log1p(-std::exp(-2.0 * x));
}

// i_m / i_{m-1} from the continued fraction
//   i_{m-1}/i_m = b_m + 1/(b_{m+1} + 1/(b_{m+2} + ...)),  b_j = (2j+1)/x
// evaluated with the modified Lentz algorithm.
double first_kind_ratio_cf(int m, double x) {
  constexpr double tiny = 1e-300;
  double f = (2 * m + 1) / x;
  double c = f;
  double d = 0.0;
  for (long j = m + 1; j < m + 2000000L; ++j) {
    const double b = (2 * j + 1) / x;
    d = b + d;
    if (d == 0.0)
      d = tiny;
    d = 1.0 / d;
    c = b + 1.0 / c;
    if (c == 0.0)
      c = tiny;
    const double delta = c * d;
    f *= delta;
    if (std::abs(delta - 1.0) < 4e-16)
      return 1.0 / f;
  }
  std::ostringstream os;
  os << "continued fraction for i_" << m << "/i_" << m - 1 << " at x=" << x
     << " did not converge";
  throw ConvergenceError(os.str());
}

void check_bessel_args(int n, double x) {
  if (n < 0 || !(x > 0.0) || !std::isfinite(x)) {
    std::ostringstream os;
    os << "modified spherical Bessel needs n >= 0 and finite x > 0 (n=" << n
       << ", x=" << x << ")";
    throw DomainError(os.str());
  }
}

} // namespace

LegendreEval legendre_pn_dpn(int n, double gamma) {
  if (n < 1 || !(std::abs(gamma) <= 1.0)) {
    std::ostringstream os;
    os << "Legendre evaluation needs n >= 1 and |gamma| <= 1 (n=" << n
       << ", gamma=" << gamma << ")";
    throw DomainError(os.str());
  }
  double p_prev = 1.0, p = gamma;
  double dp_prev = 0.0, dp = 1.0;
  for (int k = 1; k < n; ++k) {
    const double p_next = ((2 * k + 1) * gamma * p - k * p_prev) / (k + 1);
    const double dp_next = dp_prev + (2 * k + 1) * p;
    p_prev = p;
    p = p_next;
    dp_prev = dp;
    dp = dp_next;
  }
  const double nn1 = static_cast<double>(n) * (n + 1);
  return {n, gamma, p, dp, nn1 * p - gamma * dp};
}

void legendre_table(int n_max, double gamma, LegendreTable &out) {
  if (n_max < 1 || !(std::abs(gamma) <= 1.0))
    throw DomainError("Legendre table needs n_max >= 1 and |gamma| <= 1");
  out.p.resize(n_max + 1);
  out.dp.resize(n_max + 1);
  out.f.resize(n_max + 1);
  out.p[0] = 1.0;
  out.p[1] = gamma;
  out.dp[0] = 0.0;
  out.dp[1] = 1.0;
  for (int k = 1; k < n_max; ++k) {
    out.p[k + 1] = ((2 * k + 1) * gamma * out.p[k] - k * out.p[k - 1]) / (k + 1);
    out.dp[k + 1] = out.dp[k - 1] + (2 * k + 1) * out.p[k];
  }
  for (int k = 0; k <= n_max; ++k)
    out.f[k] = static_cast<double>(k) * (k + 1) * out.p[k] - gamma * out.dp[k];
}

void bessel_table_first(double x, int n_max, BesselTable &out) {
  check_bessel_args(n_max, x);
  out.x = x;
  out.ratio_i.assign(n_max + 2, 0.0);
  out.log_i.assign(n_max + 1, 0.0);
  // Downward recurrence of the ratios is stable for the growing solution.
  out.ratio_i[n_max + 1] = first_kind_ratio_cf(n_max + 1, x);
  for (int n = n_max; n >= 1; --n)
    out.ratio_i[n] = 1.0 / ((2 * n + 1) / x + out.ratio_i[n + 1]);
  out.log_i[0] = log_i0(x);
  for (int n = 1; n <= n_max; ++n)
    out.log_i[n] = out.log_i[n - 1] + std::log(out.ratio_i[n]);
}

void bessel_table_third(double x, int n_max, BesselTable &out) {
  check_bessel_args(n_max, x);
  out.x = x;
  out.ratio_k.assign(n_max + 1, 1.0);
  out.log_k.assign(n_max + 1, 0.0);
  // k_0 / k_{-1} = 1; upward recurrence is stable for the decaying solution.
  for (int n = 0; n < n_max; ++n)
    out.ratio_k[n + 1] = 1.0 / out.ratio_k[n] + (2 * n + 1) / x;
  out.log_k[0] = -x - std::log(x);
  for (int n = 1; n <= n_max; ++n)
    out.log_k[n] = out.log_k[n - 1] + std::log(out.ratio_k[n]);
}

void bessel_table(double x, int n_max, BesselTable &out) {
  bessel_table_first(x, n_max, out);
  bessel_table_third(x, n_max, out);
}

ScaledBessel modified_spherical_bessel(int n, double x) {
  check_bessel_args(n, x);
  BesselTable t;
  bessel_table(x, n, t);
  const double log_first = t.log_i[n] - x;
  const double log_third = t.log_k[n] + x;
  constexpr double log_max = 709.0;
  if (std::abs(log_first) > log_max || std::abs(log_third) > log_max) {
    std::ostringstream os;
    os << "scaled Bessel mantissa out of range at n=" << n << ", x=" << x;
    throw OverflowError(os.str());
  }
  ScaledBessel out;
  out.order = n;
  out.argument = x;
  out.first_kind = std::exp(log_first);
  out.third_kind = std::exp(log_third);
  out.first_deriv = out.first_kind * t.riccati_i(n);
  out.third_deriv = out.third_kind * t.riccati_k(n);
  return out;
}

double double_factorial(int n) {
  if (n < -1)
    throw DomainError("double factorial needs n >= -1");
  double r = 1.0;
  for (int k = n; k > 1; k -= 2)
    r *= k;
  return r;
}

double log_double_factorial(int n) {
  if (n < -1)
    throw DomainError("double factorial needs n >= -1");
  double r = 0.0;
  for (int k = n; k > 1; k -= 2)
    r += std::log(static_cast<double>(k));
  return r;
}

} // namespace vdw::specfun
