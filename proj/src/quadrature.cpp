#include "vdw/quadrature.hpp"

#include "vdw/errors.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <numeric>
#include <sstream>

#include <omp.h>

namespace vdw {

namespace {

// 21-point Kronrod abscissae on [-1, 1] (positive half, descending; the
// last entry is the centre) with the embedded 10-point Gauss rule at the
// odd positions.
constexpr double xgk[11] = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.0};
constexpr double wgk[11] = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077958109831074, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};
constexpr double wg[5] = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338};

constexpr int kNodes = 21;
constexpr double kEps = std::numeric_limits<double>::epsilon();

// Abscissa k of panel [a, b] in the integration variable. k = 0..9 are the
// left nodes, 10 the centre, 11..20 the mirrored right nodes.
double panel_node(double a, double b, int k) {
  const double c = 0.5 * (a + b), h = 0.5 * (b - a);
  if (k < 10)
    return c - h * xgk[k];
  if (k == 10)
    return c;
  return c + h * xgk[k - 11];
}

struct Mapping {
  bool infinite = false;
  double lo = 0.0;
  double scale = 1.0;
  Transform transform = Transform::rational;

  // Returns u(t) and writes du/dt.
  double map(double t, double &jac) const {
    if (!infinite) {
      jac = 1.0;
      return t;
    }
    const double s = 1.0 - t;
    if (transform == Transform::rational) {
      jac = scale / (s * s);
      return lo + scale * t / s;
    }
    jac = scale / s;
    return lo - scale * std::log(s);
  }
};

struct Panel {
  double a = 0.0, b = 0.0;
  std::vector<double> value, error;
};

// Kronrod estimate and QUADPACK-style error from the 21 node values
// (already multiplied by the Jacobian) of one component.
void gauss_kronrod(const double *fv, double a, double b, double &result,
                   double &abserr) {
  const double h = 0.5 * (b - a);
  const double fc = fv[10];
  double resk = wgk[10] * fc;
  double resg = 0.0;
  double resabs = std::abs(resk);
  for (int j = 0; j < 10; ++j) {
    const double f1 = fv[j], f2 = fv[11 + j];
    resk += wgk[j] * (f1 + f2);
    resabs += wgk[j] * (std::abs(f1) + std::abs(f2));
    if (j % 2 == 1)
      resg += wg[j / 2] * (f1 + f2);
  }
  const double mean = 0.5 * resk;
  double resasc = wgk[10] * std::abs(fc - mean);
  for (int j = 0; j < 10; ++j)
    resasc += wgk[j] * (std::abs(fv[j] - mean) + std::abs(fv[11 + j] - mean));
  result = resk * h;
  resabs *= std::abs(h);
  resasc *= std::abs(h);
  abserr = std::abs((resk - resg) * h);
  if (resasc != 0.0 && abserr != 0.0)
    abserr = resasc * std::min(1.0, std::pow(200.0 * abserr / resasc, 1.5));
  if (resabs > std::numeric_limits<double>::min() / (50.0 * kEps))
    abserr = std::max(50.0 * kEps * resabs, abserr);
}

std::string describe_panel(const Mapping &m, const Panel &p) {
  double jac = 0.0;
  std::ostringstream os;
  os << "worst panel u in [" << m.map(p.a, jac) << ", "
     << (p.b >= 1.0 && m.infinite ? std::numeric_limits<double>::infinity()
                                  : m.map(p.b, jac))
     << "]";
  return os.str();
}

class Driver {
public:
  Driver(const VectorIntegrand &f, int dim, const Mapping &m,
         const QuadratureSpec &spec)
      : f_(f), dim_(dim), map_(m), spec_(spec) {}

  // Evaluates every panel in `panels` whose value is empty.
  void evaluate(std::vector<Panel> &panels, std::span<const std::size_t> todo) {
    const long n_eval = static_cast<long>(todo.size()) * kNodes;
    std::vector<double> buf(static_cast<std::size_t>(n_eval) * dim_);
    std::exception_ptr failure;
    const bool par = spec_.parallel && n_eval > 1;
#pragma omp parallel for schedule(dynamic, 1) if (par)
    for (long e = 0; e < n_eval; ++e) {
      const Panel &p = panels[todo[e / kNodes]];
      const double t = panel_node(p.a, p.b, static_cast<int>(e % kNodes));
      std::span<double> out(buf.data() + e * dim_, dim_);
      try {
        double jac = 0.0;
        const double u = map_.map(t, jac);
        // node rounded onto u = inf
        if (!std::isfinite(u) || !std::isfinite(jac)) {
          std::fill(out.begin(), out.end(), 0.0);
          continue;
        }
        f_(u, out);
        for (double &v : out) {
          if (!std::isfinite(v)) {
            std::ostringstream os;
            os << "integrand returned a non-finite value at u=" << u;
            throw ConvergenceError(os.str());
          }
          v *= jac;
        }
      } catch (...) {
#pragma omp critical(vdw_quad_failure)
        if (!failure)
          failure = std::current_exception();
      }
    }
    if (failure)
      std::rethrow_exception(failure);
    evaluations_ += n_eval;

    std::vector<double> fv(kNodes);
    for (std::size_t i = 0; i < todo.size(); ++i) {
      Panel &p = panels[todo[i]];
      p.value.assign(dim_, 0.0);
      p.error.assign(dim_, 0.0);
      for (int k = 0; k < dim_; ++k) {
        for (int j = 0; j < kNodes; ++j)
          fv[j] = buf[(i * kNodes + j) * dim_ + k];
        gauss_kronrod(fv.data(), p.a, p.b, p.value[k], p.error[k]);
      }
    }
  }

  long evaluations() const { return evaluations_; }

private:
  const VectorIntegrand &f_;
  int dim_;
  Mapping map_;
  QuadratureSpec spec_;
  long evaluations_ = 0;
};

void sums(const std::vector<Panel> &panels, int dim, std::vector<double> &val,
          std::vector<double> &err) {
  val.assign(dim, 0.0);
  err.assign(dim, 0.0);
  for (const Panel &p : panels)
    for (int k = 0; k < dim; ++k) {
      val[k] += p.value[k];
      err[k] += p.error[k];
    }
}

QuadResultN run_batched(const VectorIntegrand &f, int dim, const Mapping &m,
                        double t0, double t1, const QuadratureSpec &spec) {
  validate(spec);
  if (dim < 1)
    throw DomainError("integrand dimension must be positive");
  Driver drv(f, dim, m, spec);

  constexpr int kInitial = 4;
  std::vector<Panel> panels(kInitial);
  for (int i = 0; i < kInitial; ++i) {
    panels[i].a = t0 + (t1 - t0) * i / kInitial;
    panels[i].b = i + 1 == kInitial ? t1 : t0 + (t1 - t0) * (i + 1) / kInitial;
  }
  std::vector<std::size_t> todo(kInitial);
  std::iota(todo.begin(), todo.end(), 0);
  drv.evaluate(panels, todo);

  std::vector<double> val, err, tol(dim);
  std::vector<std::size_t> order;
  for (;;) {
    sums(panels, dim, val, err);
    bool done = true;
    for (int k = 0; k < dim; ++k) {
      tol[k] = std::max(spec.abs_tol, spec.rel_tol * std::abs(val[k]));
      if (err[k] > tol[k])
        done = false;
    }
    if (done)
      break;

    const auto score = [&](const Panel &p) {
      double s = 0.0;
      for (int k = 0; k < dim; ++k)
        s = std::max(s, p.error[k] / tol[k]);
      return s;
    };
    order.resize(panels.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
      return score(panels[i]) > score(panels[j]);
    });

    if (static_cast<int>(panels.size()) >= spec.max_subdivisions) {
      std::ostringstream os;
      os << "quadrature did not converge after " << panels.size()
         << " subdivisions (" << describe_panel(m, panels[order[0]]) << ")";
      throw ConvergenceError(os.str());
    }

    // Bisect panels in order of decreasing error until what is left
    // unrefined would fit in half the tolerance.
    constexpr std::size_t kMaxBatch = 16;
    std::vector<double> rest = err;
    std::vector<std::size_t> chosen;
    for (std::size_t idx : order) {
      if (chosen.size() >= kMaxBatch ||
          static_cast<int>(panels.size() + chosen.size()) >= spec.max_subdivisions)
        break;
      bool fits = true;
      for (int k = 0; k < dim; ++k)
        if (rest[k] > 0.5 * tol[k])
          fits = false;
      if (fits && !chosen.empty())
        break;
      const Panel &p = panels[idx];
      if (p.b - p.a <= 8.0 * kEps * std::max(1.0, std::abs(p.a))) {
        if (chosen.empty()) {
          std::ostringstream os;
          os << "quadrature panel cannot be bisected further ("
             << describe_panel(m, p) << ")";
          throw ConvergenceError(os.str());
        }
        continue;
      }
      chosen.push_back(idx);
      for (int k = 0; k < dim; ++k)
        rest[k] -= p.error[k];
    }

    todo.clear();
    for (std::size_t idx : chosen) {
      const double a = panels[idx].a, b = panels[idx].b;
      const double mid = 0.5 * (a + b);
      panels[idx] = Panel{a, mid, {}, {}};
      panels.push_back(Panel{mid, b, {}, {}});
      todo.push_back(idx);
      todo.push_back(panels.size() - 1);
    }
    drv.evaluate(panels, todo);
  }

  QuadResultN r;
  r.value = val;
  r.error = err;
  r.subdivisions = static_cast<int>(panels.size());
  r.evaluations = drv.evaluations();
  return r;
}

Mapping interval_mapping(double lo, double hi, const QuadratureSpec &spec,
                         double &t0, double &t1) {
  if (!(lo < hi) || std::isnan(lo) || std::isinf(lo))
    throw DomainError("integration interval needs finite lo < hi");
  Mapping m;
  m.transform = spec.transform;
  m.scale = spec.scale;
  m.lo = lo;
  if (std::isinf(hi)) {
    m.infinite = true;
    t0 = 0.0;
    t1 = 1.0;
  } else {
    t0 = lo;
    t1 = hi;
  }
  return m;
}

VectorIntegrand lift(const Integrand &f) {
  return [&f](double u, std::span<double> out) { out[0] = f(u); };
}

QuadResult first(const QuadResultN &r) {
  return {r.value[0], r.error[0], r.subdivisions, r.evaluations};
}

} // namespace

void validate(const QuadratureSpec &spec) {
  if (!(spec.rel_tol > 0.0 && spec.rel_tol < 1.0))
    throw DomainError("rel_tol must lie in (0, 1)");
  if (!(spec.abs_tol >= 0.0))
    throw DomainError("abs_tol must be non-negative");
  if (spec.max_subdivisions < 10)
    throw DomainError("max_subdivisions must be at least 10");
  if (!(spec.scale > 0.0) || !std::isfinite(spec.scale))
    throw DomainError("quadrature scale must be positive");
}

QuadResultN integrate_interval(const VectorIntegrand &f, int dim, double lo,
                               double hi, const QuadratureSpec &spec) {
  double t0 = 0.0, t1 = 0.0;
  const Mapping m = interval_mapping(lo, hi, spec, t0, t1);
  return run_batched(f, dim, m, t0, t1, spec);
}

QuadResultN integrate_semi_infinite(const VectorIntegrand &f, int dim,
                                    const QuadratureSpec &spec) {
  return integrate_interval(f, dim, 0.0, std::numeric_limits<double>::infinity(),
                            spec);
}

QuadResult integrate_interval(const Integrand &f, double lo, double hi,
                              const QuadratureSpec &spec) {
  return first(integrate_interval(lift(f), 1, lo, hi, spec));
}

QuadResult integrate_semi_infinite(const Integrand &f, const QuadratureSpec &spec) {
  return first(integrate_semi_infinite(lift(f), 1, spec));
}

QuadResult integrate_interval_serial(const Integrand &f, double lo, double hi,
                                     const QuadratureSpec &spec) {
  validate(spec);
  double t0 = 0.0, t1 = 0.0;
  const Mapping m = interval_mapping(lo, hi, spec, t0, t1);

  long evaluations = 0;
  const auto eval_panel = [&](Panel &p) {
    double fv[kNodes];
    for (int j = 0; j < kNodes; ++j) {
      double jac = 0.0;
      const double u = m.map(panel_node(p.a, p.b, j), jac);
      const double v = f(u);
      if (!std::isfinite(v)) {
        std::ostringstream os;
        os << "integrand returned a non-finite value at u=" << u;
        throw ConvergenceError(os.str());
      }
      fv[j] = v * jac;
    }
    evaluations += kNodes;
    p.value.assign(1, 0.0);
    p.error.assign(1, 0.0);
    gauss_kronrod(fv, p.a, p.b, p.value[0], p.error[0]);
  };

  const auto worse = [](const Panel &x, const Panel &y) {
    return x.error[0] < y.error[0];
  };
  std::vector<Panel> heap(1, Panel{t0, t1, {}, {}});
  eval_panel(heap[0]);
  double value = heap[0].value[0], error = heap[0].error[0];
  while (error > std::max(spec.abs_tol, spec.rel_tol * std::abs(value))) {
    if (static_cast<int>(heap.size()) >= spec.max_subdivisions) {
      std::ostringstream os;
      os << "quadrature did not converge after " << heap.size()
         << " subdivisions (" << describe_panel(m, heap.front()) << ")";
      throw ConvergenceError(os.str());
    }
    std::pop_heap(heap.begin(), heap.end(), worse);
    Panel worst = heap.back();
    heap.pop_back();
    const double mid = 0.5 * (worst.a + worst.b);
    Panel left{worst.a, mid, {}, {}}, right{mid, worst.b, {}, {}};
    eval_panel(left);
    eval_panel(right);
    value += left.value[0] + right.value[0] - worst.value[0];
    error += left.error[0] + right.error[0] - worst.error[0];
    heap.push_back(left);
    std::push_heap(heap.begin(), heap.end(), worse);
    heap.push_back(right);
    std::push_heap(heap.begin(), heap.end(), worse);
  }
  // Re-sum to shed the drift of the running updates.
  value = 0.0;
  error = 0.0;
  for (const Panel &p : heap) {
    value += p.value[0];
    error += p.error[0];
  }
  return {value, error, static_cast<int>(heap.size()), evaluations};
}

QuadResult integrate_semi_infinite_serial(const Integrand &f,
                                          const QuadratureSpec &spec) {
  return integrate_interval_serial(f, 0.0, std::numeric_limits<double>::infinity(),
                                   spec);
}

} // namespace vdw
