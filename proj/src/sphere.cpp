#include "vdw/sphere.hpp"

#include "vdw/errors.hpp"
#include "vdw/pair.hpp"
#include "vdw/specfun.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace vdw {

namespace {

using std::numbers::pi;

// Beyond this exponent every scattering term has underflowed.
constexpr double kNegligibleExponent = 700.0;

// Ratio of the Mie amplitude to i_n(x0)/k_n(x0); `resp` is mu for B^M and
// eps for B^N, ri0/rk0 are the Riccati log-derivatives outside and ri1
// inside the sphere.
double amplitude_ratio(double resp, double ri0, double rk0, double ri1) {
  return (resp * ri0 - ri1) / (resp * rk0 - ri1);
}

// Per-node multipole data: w_m = B^M_n Q_n and w_e = B^N_n Q_n (real), the
// Riccati log-derivatives of k_n at r_A and r_B, and the Legendre data.
struct MieSeries {
  int n = 0;
  std::vector<double> wm, we, rka, rkb;
  specfun::LegendreTable leg;
  double tail = 0.0;
};

bool scattering_negligible(const SphereScene &s, double u) {
  return u * (s.r_a + s.r_b - 2.0 * s.radius) > kNegligibleExponent;
}

void fill_series(const SphereScene &s, double u, int n, MieSeries &out) {
  out.n = n;
  out.wm.assign(n + 1, 0.0);
  out.we.assign(n + 1, 0.0);
  out.rka.assign(n + 1, 0.0);
  out.rkb.assign(n + 1, 0.0);
  specfun::legendre_table(n, std::cos(s.theta), out.leg);

  specfun::BesselTable t0, ta, tb, t1;
  const double x0 = u * s.radius;
  specfun::bessel_table(x0, n, t0);
  specfun::bessel_table_third(u * s.r_a, n, ta);
  specfun::bessel_table_third(u * s.r_b, n, tb);
  for (int k = 1; k <= n; ++k) {
    out.rka[k] = ta.riccati_k(k);
    out.rkb[k] = tb.riccati_k(k);
  }
  if (s.sphere.is_vacuum())
    return;

  const MaterialModel &m = s.sphere;
  const bool mirror = m.is_perfect_mirror();
  double eps = 1.0, mu = 1.0;
  if (!mirror) {
    eps = m.eps(u);
    mu = m.mu(u);
    specfun::bessel_table_first(std::sqrt(eps * mu) * x0, n, t1);
  }
  for (int k = 1; k <= n; ++k) {
    const double expo = t0.log_i[k] - t0.log_k[k] + ta.log_k[k] + tb.log_k[k];
    if (expo < -745.0)
      continue;
    const double w = std::exp(expo);
    const double ri0 = t0.riccati_i(k), rk0 = t0.riccati_k(k);
    double rm = 1.0, re = 1.0;
    if (!mirror) {
      const double ri1 = t1.riccati_i(k);
      rm = amplitude_ratio(mu, ri0, rk0, ri1);
      re = amplitude_ratio(eps, ri0, rk0, ri1);
    } else if (m.mirror_type() == MirrorType::electric) {
      re = ri0 / rk0;
    } else {
      rm = ri0 / rk0;
    }
    out.wm[k] = w * rm;
    out.we[k] = w * re;
  }
}

// Relative tail estimate from the geometric decay of the term envelope
// over the last two blocks of ten orders. Infinite if not yet decaying.
double tail_estimate(const MieSeries &m) {
  const int n = m.n;
  double sum = 0.0, last = 0.0, prev = 0.0;
  for (int k = 1; k <= n; ++k) {
    const double nn1 = static_cast<double>(k) * (k + 1);
    const double t = (2 * k + 1) * nn1 * (std::abs(m.wm[k]) + std::abs(m.we[k])) *
                     (1.0 + std::abs(m.rka[k])) * (1.0 + std::abs(m.rkb[k]));
    sum += t;
    if (k > n - 10)
      last = std::max(last, t);
    else if (k > n - 20)
      prev = std::max(prev, t);
  }
  if (last == 0.0)
    return 0.0;
  if (prev == 0.0 || last >= prev)
    return std::numeric_limits<double>::infinity();
  const double rho = last / prev;
  return 10.0 * last * rho / (1.0 - rho) / sum;
}

MieSeries mie_series(const SphereScene &s, double u, int n_cap, double rel_tol) {
  if (n_cap < 20)
    throw DomainError("series cap n_max must be at least 20");
  const double r = std::max(s.r_a, s.r_b);
  const double start = std::ceil(u * r) + 15.0;
  int n = static_cast<int>(std::min<double>(std::max(20.0, start), n_cap));
  MieSeries m;
  for (;;) {
    fill_series(s, u, n, m);
    m.tail = tail_estimate(m);
    if (m.tail <= rel_tol)
      return m;
    if (n >= n_cap) {
      std::ostringstream os;
      os << "sphere series not converged at n=" << n << " (u=" << u
         << ", relative tail " << m.tail << ")";
      throw ConvergenceError(os.str());
    }
    n = static_cast<int>(std::min<long>(2L * n, n_cap));
  }
}

// Sums S_c with K^(1)_c = -u / (4 pi r_A r_B) S_c.
std::array<double, 4> k1_sums(const SphereScene &s, const MieSeries &m) {
  const double st = std::sin(s.theta);
  std::array<double, 4> sum{};
  for (int n = 1; n <= m.n; ++n) {
    const double c = 2 * n + 1;
    const double t = c / (static_cast<double>(n) * (n + 1));
    const double dp = m.leg.dp[n], f = m.leg.f[n];
    const double am = s.r_a * m.wm[n], be = s.r_b * m.we[n];
    sum[0] += c * am * dp * st;
    sum[1] += t * (am * m.rkb[n] * f - be * m.rka[n] * dp);
    sum[2] += c * be * dp * st;
    sum[3] += t * (be * m.rka[n] * f - am * m.rkb[n] * dp);
  }
  return sum;
}

KComponents from_array(const std::array<double, 4> &a) {
  return {a[0], a[1], a[2], a[3]};
}

struct G1Sums {
  // Coefficients of u / (4 pi) and of 1 / (4 pi u r_A r_B).
  double rr = 0.0, rt = 0.0, tr = 0.0, tt_m = 0.0, tt_e = 0.0, pp_m = 0.0,
         pp_e = 0.0;
};

// With `swap` the roles of B^M and B^N are exchanged, which turns G^(1)
// into the magnetic-magnetic tensor of the dual sphere.
GComponents g1_from_series(const SphereScene &s, double u, const MieSeries &m,
                           bool swap) {
  const auto &wm = swap ? m.we : m.wm;
  const auto &we = swap ? m.wm : m.we;
  const double st = std::sin(s.theta);
  G1Sums g;
  for (int n = 1; n <= m.n; ++n) {
    const double c = 2 * n + 1;
    const double nn1 = static_cast<double>(n) * (n + 1);
    const double t = c / nn1;
    const double p = m.leg.p[n], dp = m.leg.dp[n], f = m.leg.f[n];
    const double kk = m.rka[n] * m.rkb[n];
    g.rr += c * nn1 * we[n] * p;
    g.rt += c * we[n] * m.rka[n] * dp;
    g.tr += c * we[n] * m.rkb[n] * dp;
    g.tt_m += t * wm[n] * dp;
    g.tt_e += t * we[n] * kk * f;
    g.pp_m += t * wm[n] * f;
    g.pp_e += t * we[n] * kk * dp;
  }
  const double c1 = 1.0 / (4.0 * pi * u * s.r_a * s.r_b);
  const double c2 = u / (4.0 * pi);
  GComponents out;
  out.rr = c1 * g.rr;
  out.r_theta = -c1 * g.rt * st;
  out.theta_r = -c1 * g.tr * st;
  out.theta_theta = c2 * g.tt_m - c1 * g.tt_e;
  out.phi_phi = c2 * g.pp_m - c1 * g.pp_e;
  return out;
}

double dot(const GComponents &a, const GComponents &b) {
  return a.rr * b.rr + a.r_theta * b.r_theta + a.theta_r * b.theta_r +
         a.theta_theta * b.theta_theta + a.phi_phi * b.phi_phi;
}

double frequency_scale(const SphereScene &s) {
  const double ua = std::min(s.atom_a.resonance, s.atom_b.resonance);
  const double gap = s.r_a + s.r_b - 2.0 * s.radius;
  return 1.0 / (1.0 / ua + std::min(gap, s.separation()));
}

QuadResult scaled(QuadResult r, double factor) {
  r.value *= factor;
  r.error *= std::abs(factor);
  return r;
}

// (eps-1)/(eps+1) and (mu-1)/(mu+1), taking the mirror limits.
double surface_ratio(const MaterialModel &m, double u, bool electric) {
  if (m.is_perfect_mirror())
    return (m.mirror_type() == MirrorType::electric) == electric ? 1.0 : 0.0;
  const double x = electric ? m.eps_minus_one(u) : m.mu_minus_one(u);
  return x / (2.0 + x);
}

// Clausius-Mossotti factors (eps-1)/(eps+2) and (mu-1)/(mu+2).
double cm_ratio(const MaterialModel &m, double u, bool electric) {
  if (m.is_perfect_mirror())
    return (m.mirror_type() == MirrorType::electric) == electric ? 1.0 : 0.0;
  const double x = electric ? m.eps_minus_one(u) : m.mu_minus_one(u);
  return x / (3.0 + x);
}

// Body-induced electric-electric potential; the magnetic-magnetic one is
// this on the dual scene.
QuadResult ee_body(const SphereScene &s, const QuadratureSpec &spec, int n_max) {
  if (s.sphere.is_vacuum() || s.atom_a.a0 == 0.0 || s.atom_b.a0 == 0.0)
    return {};
  const double l = s.separation();
  const double norm = std::pow(l, 6);
  const double tail_tol = spec.rel_tol * 0.1;
  const auto f = [&](double u) {
    if (scattering_negligible(s, u))
      return 0.0;
    const MieSeries m = mie_series(s, u, n_max, tail_tol);
    const GComponents g1 = g1_from_series(s, u, m, false);
    const GComponents g0 = g0_components(s, u);
    const double tr = 2.0 * dot(g0, g1) + dot(g1, g1);
    return -8.0 * pi * norm * std::pow(u, 4) * s.atom_a.alpha(u) *
           s.atom_b.alpha(u) * tr;
  };
  QuadratureSpec sp = spec;
  sp.scale = frequency_scale(s);
  return scaled(integrate_semi_infinite(f, sp), 1.0 / norm);
}

} // namespace

double SphereScene::separation() const {
  const double d2 = r_a * r_a + r_b * r_b - 2.0 * r_a * r_b * std::cos(theta);
  // Exact for the collinear arrangement, where the cosine rule cancels.
  if (theta == 0.0)
    return std::abs(r_b - r_a);
  return std::sqrt(std::max(d2, 0.0));
}

double SphereScene::l_a() const { return r_b * std::cos(theta) - r_a; }
double SphereScene::l_b() const { return r_a * std::cos(theta) - r_b; }

void validate(const SphereScene &s) {
  if (!(s.radius > 0.0) || !std::isfinite(s.radius))
    throw DomainError("sphere radius must be positive and finite");
  if (!(s.r_a > s.radius) || !(s.r_b > s.radius) || !std::isfinite(s.r_a) ||
      !std::isfinite(s.r_b))
    throw DomainError("both atoms must lie outside the sphere (r > R)");
  if (!(s.theta >= 0.0 && s.theta <= pi))
    throw DomainError("theta must lie in [0, pi]");
  if (!(s.separation() > 0.0))
    throw DomainError("the two atoms must not coincide");
  validate(s.sphere);
  validate(s.atom_a);
  validate(s.atom_b);
}

SphereScene dual(const SphereScene &s) {
  SphereScene d = s;
  d.sphere = s.sphere.dual();
  d.atom_a = s.atom_a.dual();
  d.atom_b = s.atom_b.dual();
  return d;
}

SphereScene exchange(const SphereScene &s) {
  SphereScene x = s;
  std::swap(x.atom_a, x.atom_b);
  std::swap(x.r_a, x.r_b);
  return x;
}

MieCoefficients mie_coefficients(const MaterialModel &sphere, double radius,
                                 double u, int n) {
  if (!(u > 0.0) || !(radius > 0.0) || n < 1)
    throw DomainError("Mie coefficients need u > 0, R > 0 and n >= 1");
  if (sphere.is_vacuum())
    return {};
  specfun::BesselTable t0, t1;
  const double x0 = u * radius;
  specfun::bessel_table(x0, n, t0);
  const double log_ratio = t0.log_i[n] - t0.log_k[n];
  if (log_ratio > 709.0) {
    std::ostringstream os;
    os << "Mie coefficient overflows at n=" << n << ", uR=" << x0;
    throw OverflowError(os.str());
  }
  const double w = std::exp(log_ratio);
  const double ri0 = t0.riccati_i(n), rk0 = t0.riccati_k(n);
  double rm = 1.0, re = 1.0;
  if (sphere.is_perfect_mirror()) {
    (sphere.mirror_type() == MirrorType::electric ? re : rm) = ri0 / rk0;
  } else {
    const double eps = sphere.eps(u), mu = sphere.mu(u);
    specfun::bessel_table_first(std::sqrt(eps * mu) * x0, n, t1);
    const double ri1 = t1.riccati_i(n);
    rm = amplitude_ratio(mu, ri0, rk0, ri1);
    re = amplitude_ratio(eps, ri0, rk0, ri1);
  }
  const double sign = n % 2 == 0 ? 1.0 : -1.0;
  return {sign * w * rm, sign * w * re};
}

KComponents k0_components(const SphereScene &s, double u) {
  const double l = s.separation();
  const double c = std::exp(-u * l) * (1.0 + u * l) / (4.0 * pi * l * l * l);
  const double st = std::sin(s.theta);
  return {c * s.r_a * st, c * s.l_b(), c * s.r_b * st, c * s.l_a()};
}

KTensor k_tensor_components(const SphereScene &s, double u, int n_max,
                            double rel_tol) {
  validate(s);
  if (!(u > 0.0))
    throw DomainError("frequency u must be positive");
  KTensor k;
  k.free = k0_components(s, u);
  if (s.sphere.is_vacuum() || scattering_negligible(s, u))
    return k;
  const MieSeries m = mie_series(s, u, n_max, rel_tol);
  const auto sum = k1_sums(s, m);
  const double c = -u / (4.0 * pi * s.r_a * s.r_b);
  k.scattered = from_array({c * sum[0], c * sum[1], c * sum[2], c * sum[3]});
  k.terms = m.n;
  k.tail = m.tail;
  return k;
}

GComponents g0_components(const SphereScene &s, double u) {
  const double l = s.separation();
  const double x = u * l;
  const double c = std::exp(-x) / (4.0 * pi * u * u * l * l * l);
  const double a = 1.0 + x + x * x, b = 3.0 + 3.0 * x + x * x;
  const double g = std::cos(s.theta), st = std::sin(s.theta);
  // Projections of e_l on the bases at r_B (rows) and r_A (columns).
  const double rb_l = -s.l_b() / l, tb_l = s.r_a * st / l;
  const double ra_l = s.l_a() / l, ta_l = -s.r_b * st / l;
  GComponents out;
  out.rr = c * (a * g - b * rb_l * ra_l);
  out.r_theta = c * (-a * st - b * rb_l * ta_l);
  out.theta_r = c * (-a * st - b * tb_l * ra_l);
  out.theta_theta = c * (-a * g - b * tb_l * ta_l);
  out.phi_phi = -c * a;
  return out;
}

GComponents g1_components(const SphereScene &s, double u, int n_max,
                          double rel_tol) {
  validate(s);
  if (!(u > 0.0))
    throw DomainError("frequency u must be positive");
  if (s.sphere.is_vacuum() || scattering_negligible(s, u))
    return {};
  return g1_from_series(s, u, mie_series(s, u, n_max, rel_tol), false);
}

SphereMixed sphere_Uem(const SphereScene &s, const QuadratureSpec &spec, int n_max) {
  validate(s);
  validate(spec);
  const double l = s.separation();
  const PotentialBreakdown free =
      freespace_pair_potential(s.atom_a, s.atom_b, l, spec);
  SphereMixed r;
  r.u0 = free.em;
  r.error = free.err_em;
  if (!s.sphere.is_vacuum() && s.atom_a.a0 != 0.0 && s.atom_b.b0 != 0.0) {
    const double norm = std::pow(l, 4);
    const double tail_tol = spec.rel_tol * 0.1;
    const double st = std::sin(s.theta);
    const double ra = s.r_a, rb = s.r_b, la = s.l_a(), lb = s.l_b();
    const auto f = [&](double u, std::span<double> out) {
      out[0] = out[1] = 0.0;
      if (scattering_negligible(s, u))
        return;
      const MieSeries m = mie_series(s, u, n_max, tail_tol);
      const double ab = s.atom_a.alpha(u) * s.atom_b.beta(u);
      double series = 0.0;
      for (int n = 1; n <= m.n; ++n) {
        const double nn1 = static_cast<double>(n) * (n + 1);
        const double dp = m.leg.dp[n], fn = m.leg.f[n];
        series += (2 * n + 1) / nn1 *
                  (nn1 * st * st * (ra * ra * m.wm[n] + rb * rb * m.we[n]) * dp +
                   ra * m.wm[n] * m.rkb[n] * (lb * fn - la * dp) +
                   rb * m.we[n] * m.rka[n] * (la * fn - lb * dp));
      }
      const double ul = u * l;
      out[0] = -norm / (pi * l * l * l * ra * rb) * u * u * u * ab *
               std::exp(-ul) * (1.0 + ul) * series;
      const auto sum = k1_sums(s, m);
      double sq = 0.0;
      for (double v : sum)
        sq += v * v;
      out[1] = norm / (2.0 * pi * ra * ra * rb * rb) * std::pow(u, 4) * ab * sq;
    };
    QuadratureSpec sp = spec;
    sp.scale = frequency_scale(s);
    const QuadResultN q = integrate_semi_infinite(f, 2, sp);
    r.u1 = q.value[0] / norm;
    r.u2 = q.value[1] / norm;
    r.error += (q.error[0] + q.error[1]) / norm;
  }
  r.total = r.u0 + r.u1 + r.u2;
  return r;
}

SphereMixed sphere_Ume(const SphereScene &s, const QuadratureSpec &spec, int n_max) {
  return sphere_Uem(exchange(s), spec, n_max);
}

QuadResult sphere_Uem1_trace(const SphereScene &s, const QuadratureSpec &spec,
                             int n_max) {
  validate(s);
  if (s.sphere.is_vacuum() || s.atom_a.a0 == 0.0 || s.atom_b.b0 == 0.0)
    return {};
  const double norm = std::pow(s.separation(), 4);
  const double tail_tol = spec.rel_tol * 0.1;
  const auto f = [&](double u) {
    if (scattering_negligible(s, u))
      return 0.0;
    const KTensor k = k_tensor_components(s, u, n_max, tail_tol);
    const double tr = k.free.r_phi * k.scattered.r_phi +
                      k.free.theta_phi * k.scattered.theta_phi +
                      k.free.phi_r * k.scattered.phi_r +
                      k.free.phi_theta * k.scattered.phi_theta;
    return 16.0 * pi * norm * u * u * s.atom_a.alpha(u) * s.atom_b.beta(u) * tr;
  };
  QuadratureSpec sp = spec;
  sp.scale = frequency_scale(s);
  return scaled(integrate_semi_infinite(f, sp), 1.0 / norm);
}

QuadResult sphere_Uem2_reference(const SphereScene &s, const QuadratureSpec &spec,
                                 int n_max) {
  validate(s);
  if (s.sphere.is_vacuum() || s.atom_a.a0 == 0.0 || s.atom_b.b0 == 0.0)
    return {};
  const double norm = std::pow(s.separation(), 4);
  const double tail_tol = spec.rel_tol * 0.1;
  const double ra = s.r_a, rb = s.r_b, st2 = std::pow(std::sin(s.theta), 2);
  const auto f = [&](double u) {
    if (scattering_negligible(s, u))
      return 0.0;
    const MieSeries m = mie_series(s, u, n_max, tail_tol);
    double sum = 0.0;
    for (int n = 1; n <= m.n; ++n) {
      const double nn1 = static_cast<double>(n) * (n + 1);
      const double tn = (2 * n + 1) / nn1;
      for (int k = 1; k <= m.n; ++k) {
        const double kk1 = static_cast<double>(k) * (k + 1);
        const double tk = (2 * k + 1) / kk1;
        const double dpn = m.leg.dp[n], dpk = m.leg.dp[k];
        const double fn = m.leg.f[n], fk = m.leg.f[k];
        double term = kk1 * nn1 * st2 * dpk * dpn *
                      (ra * ra * m.wm[k] * m.wm[n] + rb * rb * m.we[k] * m.we[n]);
        term += (rb * rb * m.we[k] * m.we[n] * m.rka[k] * m.rka[n] +
                 ra * ra * m.wm[k] * m.wm[n] * m.rkb[k] * m.rkb[n]) *
                (fk * fn + dpk * dpn);
        term -= 2.0 * ra * rb * m.wm[k] * m.we[n] * m.rkb[k] * m.rka[n] *
                (dpk * fn + dpn * fk);
        sum += tk * tn * term;
      }
    }
    return norm / (2.0 * pi * ra * ra * rb * rb) * std::pow(u, 4) *
           s.atom_a.alpha(u) * s.atom_b.beta(u) * sum;
  };
  QuadratureSpec sp = spec;
  sp.scale = frequency_scale(s);
  return scaled(integrate_semi_infinite_serial(f, sp), 1.0 / norm);
}

SphereBody sphere_Uee_Umm_numeric(const SphereScene &s, const QuadratureSpec &spec,
                                  int n_max) {
  validate(s);
  validate(spec);
  const QuadResult ee = ee_body(s, spec, n_max);
  const QuadResult mm = ee_body(dual(s), spec, n_max);
  return {ee.value, mm.value, ee.error, mm.error};
}

double sphere_Uem_large(const SphereScene &s, const QuadratureSpec &spec) {
  validate(s);
  const double R = s.radius;
  const double da = s.r_a - R, db = s.r_b - R;
  const double l = s.separation();
  if (!(da / R < 0.1))
    throw DomainError("large-sphere form needs (r_A - R)/R < 0.1");
  if (!(db / R < 0.1))
    throw DomainError("large-sphere form needs (r_B - R)/R < 0.1");
  if (!(l / R < 0.1))
    throw DomainError("large-sphere form needs l/R < 0.1");
  if (s.sphere.is_vacuum() || s.atom_a.a0 == 0.0 || s.atom_b.b0 == 0.0)
    return 0.0;

  const auto f = [&](double u, std::span<double> out) {
    const double w = u * u * s.atom_a.alpha(u) * s.atom_b.beta(u);
    const double e = surface_ratio(s.sphere, u, true);
    const double m = surface_ratio(s.sphere, u, false);
    out[0] = w * e;     // J10
    out[1] = w * m;     // J01
    out[2] = w * e * e; // J20
    out[3] = w * m * m; // J02
    out[4] = w * e * m; // J11
  };
  QuadratureSpec sp = spec;
  sp.scale = std::min(s.atom_a.resonance, s.atom_b.resonance);
  const QuadResultN j = integrate_semi_infinite(f, 5, sp);
  const double j10 = j.value[0], j01 = j.value[1], j20 = j.value[2],
               j02 = j.value[3], j11 = j.value[4];

  const double X = R * s.theta;
  const double dp = db + da, dm = db - da;
  const double lp = std::sqrt(X * X + dp * dp);
  const double lpd = lp + dp;
  const double l3 = l * l * l;
  const double bracket =
      2.0 * lp * lpd * lpd * ((X * X - dm * dp) * j10 + (X * X + dm * dp) * j01) +
      l3 * (2.0 * lp * lp + X * X) * (j20 + j02) + 4.0 * l3 * (X * X - lp * dp) * j11;
  return bracket / (2.0 * pi * l3 * std::pow(lp, 4) * lpd * lpd);
}

double three_body_em(const SphereScene &s, const std::function<double(double)> &alpha_c,
                     const std::function<double(double)> &beta_c,
                     const QuadratureSpec &spec) {
  const double ra = s.r_a, rb = s.r_b, l = s.separation();
  const double la = s.l_a(), lb = s.l_b();
  const double g = std::cos(s.theta), st2 = std::pow(std::sin(s.theta), 2);
  const double norm = std::pow(l, 4);
  const double pref = norm / (pi * l * l * l * std::pow(ra * rb, 3));
  const auto poly = [](double x) { return 1.0 + x + x * x; };
  const auto f = [&](double u) {
    const double ua = u * ra, ub = u * rb;
    const double ea = (2.0 * rb * (1.0 + ua) * st2 + (lb - la * g) * poly(ua)) *
                      (1.0 + ub) * rb * alpha_c(u);
    const double eb = (2.0 * ra * (1.0 + ub) * st2 + (la - lb * g) * poly(ub)) *
                      (1.0 + ua) * ra * beta_c(u);
    return pref * u * u * s.atom_a.alpha(u) * s.atom_b.beta(u) *
           std::exp(-(ra + rb + l) * u) * (1.0 + l * u) * (ea + eb);
  };
  QuadratureSpec sp = spec;
  sp.scale = 1.0 / (1.0 / std::min(s.atom_a.resonance, s.atom_b.resonance) + ra +
                    rb + l);
  return integrate_semi_infinite(f, sp).value / norm;
}

double sphere_Uem_small(const SphereScene &s, const QuadratureSpec &spec) {
  validate(s);
  if (!(s.radius / s.r_a < 0.1) || !(s.radius / s.r_b < 0.1))
    throw DomainError("small-sphere form needs R/r < 0.1 for both atoms");
  if (s.sphere.is_vacuum() || s.atom_a.a0 == 0.0 || s.atom_b.b0 == 0.0)
    return 0.0;
  const double r3 = std::pow(s.radius, 3);
  return three_body_em(
      s, [&](double u) { return r3 * cm_ratio(s.sphere, u, true); },
      [&](double u) { return r3 * cm_ratio(s.sphere, u, false); }, spec);
}

} // namespace vdw
