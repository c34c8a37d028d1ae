#pragma once

#include <functional>
#include <span>
#include <vector>

namespace vdw {

/// Map from t in [0, 1) to u in [lo, inf).
enum class Transform {
  rational,   // u = lo + scale * t / (1 - t)
  exponential // u = lo - scale * log(1 - t)
};

struct QuadratureSpec {
  double rel_tol = 1e-9;
  double abs_tol = 1e-14;
  int max_subdivisions = 2000;
  Transform transform = Transform::rational;
  /// Characteristic decay length of the integrand on the semi-infinite axis.
  double scale = 1.0;
  /// Evaluate the nodes of each refinement round with OpenMP.
  bool parallel = true;
};

/// Throws DomainError for tolerances or limits outside their valid ranges.
void validate(const QuadratureSpec &spec);

struct QuadResult {
  double value = 0.0;
  double error = 0.0;
  int subdivisions = 0;
  long evaluations = 0;
};

struct QuadResultN {
  std::vector<double> value;
  std::vector<double> error;
  int subdivisions = 0;
  long evaluations = 0;
};

using Integrand = std::function<double(double)>;
/// Writes dim values for one abscissa. Must be safe to call concurrently.
using VectorIntegrand = std::function<void(double, std::span<double>)>;

// Adaptive 10/21-point Gauss-Kronrod with globally prioritised bisection.
// Each round bisects the panels that carry the bulk of the error; the set of
// panels refined depends only on the integrand values, so the result is
// bit-identical for any thread count. Converged when every component meets
// err <= max(abs_tol, rel_tol * |value|).
QuadResult integrate_semi_infinite(const Integrand &f, const QuadratureSpec &spec = {});
QuadResult integrate_interval(const Integrand &f, double lo, double hi,
                              const QuadratureSpec &spec = {});
QuadResultN integrate_semi_infinite(const VectorIntegrand &f, int dim,
                                    const QuadratureSpec &spec = {});
QuadResultN integrate_interval(const VectorIntegrand &f, int dim, double lo,
                               double hi, const QuadratureSpec &spec = {});

// Serial reference: classic one-panel-at-a-time adaptive bisection of the
// worst panel, no threading. Kept for cross-checking the batched driver.
QuadResult integrate_interval_serial(const Integrand &f, double lo, double hi,
                                     const QuadratureSpec &spec = {});
QuadResult integrate_semi_infinite_serial(const Integrand &f,
                                          const QuadratureSpec &spec = {});

} // namespace vdw
