#pragma once

#include <vector>

namespace vdw::specfun {

struct LegendreEval {
  int order = 0;
  double argument = 0.0;
  double p = 0.0;  // P_n(gamma)
  double dp = 0.0; // P_n'(gamma)
  double f = 0.0;  // n(n+1) P_n - gamma P_n'
};

/// P_n, P_n' and F_n = n(n+1)P_n - gamma P_n' by upward recurrence.
/// Requires n >= 1 and |gamma| <= 1.
LegendreEval legendre_pn_dpn(int n, double gamma);

/// Tables of P_n, P_n', F_n for n = 0..n_max at a fixed argument.
struct LegendreTable {
  std::vector<double> p, dp, f;
};
void legendre_table(int n_max, double gamma, LegendreTable &out);

/// Modified spherical Bessel functions of the first and third kind with the
/// normalisation
///   i_0(x) = sinh(x)/x,   k_0(x) = exp(-x)/x,
/// both obeying f_{n+1} = f_{n-1} -/+ (2n+1)/x f_n. They relate to the
/// ordinary spherical functions by j_n(ix) = i^n i_n(x) and
/// h_n^(1)(ix) = -i^{-n} k_n(x).
///
/// Mantissas carry the exponential scaling: first_kind = i_n(x) e^{-x},
/// third_kind = k_n(x) e^{+x}; the derivatives are the Riccati forms
/// [x f(x)]' under the same scaling.
struct ScaledBessel {
  int order = 0;
  double argument = 0.0;
  double first_kind = 0.0;
  double third_kind = 0.0;
  double first_deriv = 0.0;
  double third_deriv = 0.0;
};

ScaledBessel modified_spherical_bessel(int n, double x);

/// Orders 0..n_max of i_n and k_n at one argument, kept in log form with
/// the order-to-order ratios. Used by the sphere series where the values
/// themselves leave the double range long before the products do.
///
///   ratio_i[n] = i_n / i_{n-1}   (n >= 1, downward recurrence seeded by a
///                                 continued fraction; ratio_i has n_max+2
///                                 entries so ratio_i[n_max+1] is valid)
///   ratio_k[n] = k_n / k_{n-1}   (n >= 1, upward recurrence)
///   log_i[n], log_k[n]           natural logs of i_n(x), k_n(x)
struct BesselTable {
  double x = 0.0;
  std::vector<double> ratio_i, ratio_k, log_i, log_k;

  /// [x i_n]' / i_n and [x k_n]' / k_n.
  double riccati_i(int n) const { return (n + 1) + x * ratio_i[n + 1]; }
  double riccati_k(int n) const { return -x / ratio_k[n] - n; }
};

void bessel_table(double x, int n_max, BesselTable &out);
/// Only the first-kind ratios (ratio_i, log_i); cheaper when k_n is not needed.
void bessel_table_first(double x, int n_max, BesselTable &out);
/// Only the third-kind ratios (ratio_k, log_k).
void bessel_table_third(double x, int n_max, BesselTable &out);

/// n!! for n >= -1, with (-1)!! = 0!! = 1.
double double_factorial(int n);
/// log(n!!), finite for every n >= -1.
double log_double_factorial(int n);

} // namespace vdw::specfun
