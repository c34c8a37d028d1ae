#include "vdw/pair.hpp"

#include "vdw/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace vdw {

namespace {

using std::numbers::pi;

// Decay scale of the frequency integrands: the atomic resonance for short
// separations, the inverse optical distance for long ones.
double frequency_scale(const BulkScene &s, bool retarded) {
  const double ua = std::min(s.atom_a.resonance, s.atom_b.resonance);
  if (!retarded)
    return ua;
  return 1.0 / (1.0 / ua + s.host.index(0.0) * s.separation);
}

QuadResult tagged(const char *channel, const Integrand &f,
                  const QuadratureSpec &spec) {
  try {
    return integrate_semi_infinite(f, spec);
  } catch (const ConvergenceError &e) {
    throw ConvergenceError(std::string("channel ") + channel + ": " + e.what());
  }
}

// Electric-electric channel, or magnetic-magnetic with `magnetic`. With
// local fields on, mm equals ee of the dual scene.
QuadResult same_kind_integral(const BulkScene &s, const QuadratureSpec &spec,
                              bool retarded, bool magnetic) {
  const double ra = magnetic ? s.atom_a.b0 : s.atom_a.a0;
  const double rb = magnetic ? s.atom_b.b0 : s.atom_b.a0;
  if (ra == 0.0 || rb == 0.0)
    return {};
  const double l = s.separation;
  const auto f = [&s, l, retarded, magnetic](double u) {
    const double k = retarded ? g_kernel(s.host.index(u) * u * l) : 3.0;
    if (magnetic)
      return s.atom_a.beta(u) * s.atom_b.beta(u) *
             medium_factor_mm(s.host.mu(u), s.local_field) * k;
    return s.atom_a.alpha(u) * s.atom_b.alpha(u) *
           medium_factor_ee(s.host.eps(u), s.local_field) * k;
  };
  QuadratureSpec sp = spec;
  sp.scale = frequency_scale(s, retarded);
  return tagged(magnetic ? "mm" : "ee", f, sp);
}

// Electric A, magnetic B; me is this on the exchanged scene.
QuadResult em_integral(const BulkScene &s, const QuadratureSpec &spec,
                       bool retarded) {
  if (s.atom_a.a0 == 0.0 || s.atom_b.b0 == 0.0)
    return {};
  const double l = s.separation;
  const auto f = [&s, l, retarded](double u) {
    const double k = retarded ? h_kernel(s.host.index(u) * u * l) : 1.0;
    return u * u * s.atom_a.alpha(u) * s.atom_b.beta(u) *
           medium_factor_em(s.host.eps(u), s.host.mu(u), s.local_field) * k;
  };
  QuadratureSpec sp = spec;
  sp.scale = frequency_scale(s, retarded);
  return tagged("em", f, sp);
}

PotentialBreakdown assemble(const BulkScene &s, const QuadratureSpec &spec,
                            bool retarded) {
  validate(s);
  const double l = s.separation;
  const double ee_pref = -1.0 / (pi * std::pow(l, 6));
  const double em_pref = 1.0 / (pi * std::pow(l, 4));
  const BulkScene x = exchange(s);

  const QuadResult ee = same_kind_integral(s, spec, retarded, false);
  const QuadResult mm = same_kind_integral(s, spec, retarded, true);
  const QuadResult em = em_integral(s, spec, retarded);
  const QuadResult me = em_integral(x, spec, retarded);

  PotentialBreakdown r;
  r.ee = ee_pref * ee.value;
  r.mm = ee_pref * mm.value;
  r.em = em_pref * em.value;
  r.me = em_pref * me.value;
  r.err_ee = std::abs(ee_pref) * ee.error;
  r.err_mm = std::abs(ee_pref) * mm.error;
  r.err_em = em_pref * em.error;
  r.err_me = em_pref * me.error;
  r.total = r.ee + r.em + r.me + r.mm;
  return r;
}

// Static long-distance ee form, or mm with `magnetic`.
double same_kind_retarded(const BulkScene &s, bool magnetic) {
  const double n = s.host.index(0.0);
  const double f = magnetic ? medium_factor_mm(s.host.mu(0.0), s.local_field)
                            : medium_factor_ee(s.host.eps(0.0), s.local_field);
  const double r = magnetic ? s.atom_a.b0 * s.atom_b.b0 : s.atom_a.a0 * s.atom_b.a0;
  return -23.0 / (4.0 * pi) * r / std::pow(s.separation, 7) * f / n;
}

double em_retarded(const BulkScene &s) {
  const double eps = s.host.eps(0.0), mu = s.host.mu(0.0), n = s.host.index(0.0);
  return 7.0 / (4.0 * pi) * s.atom_a.a0 * s.atom_b.b0 /
         std::pow(s.separation, 7) *
         medium_factor_em(eps, mu, s.local_field) / (n * n * n);
}

} // namespace

void validate(const BulkScene &scene) {
  if (!(scene.separation > 0.0) || !std::isfinite(scene.separation))
    throw DomainError("separation must be positive and finite");
  if (scene.host.is_perfect_mirror())
    throw DomainError("a perfect mirror cannot host the atoms");
  validate(scene.host);
  validate(scene.atom_a);
  validate(scene.atom_b);
}

BulkScene dual(const BulkScene &scene) {
  BulkScene d = scene;
  d.host = scene.host.dual();
  d.atom_a = scene.atom_a.dual();
  d.atom_b = scene.atom_b.dual();
  return d;
}

BulkScene exchange(const BulkScene &scene) {
  BulkScene x = scene;
  std::swap(x.atom_a, x.atom_b);
  return x;
}

double g_kernel(double x) {
  return std::exp(-2.0 * x) * (3.0 + x * (6.0 + x * (5.0 + x * (2.0 + x))));
}

double h_kernel(double x) {
  const double y = 1.0 + x;
  return std::exp(-2.0 * x) * y * y;
}

double medium_factor_ee(double eps, bool local_field) {
  if (!local_field)
    return 1.0 / (eps * eps);
  const double d = 2.0 * eps + 1.0;
  return 81.0 * eps * eps / (d * d * d * d);
}

double medium_factor_em(double eps, double mu, bool local_field) {
  if (!local_field)
    return mu * mu;
  const double de = 2.0 * eps + 1.0, dm = 2.0 * mu + 1.0;
  const double fe = 9.0 * eps / (de * de), fm = 9.0 * mu / (dm * dm);
  return fe * fm * eps * mu;
}

double medium_factor_mm(double mu, bool local_field) {
  if (!local_field)
    return mu * mu;
  return medium_factor_ee(mu, true);
}

PotentialBreakdown bulk_pair_potential(const BulkScene &scene,
                                       const QuadratureSpec &spec) {
  return assemble(scene, spec, true);
}

PotentialBreakdown bulk_pair_nonretarded(const BulkScene &scene,
                                         const QuadratureSpec &spec) {
  return assemble(scene, spec, false);
}

PotentialBreakdown bulk_pair_retarded(const BulkScene &scene) {
  validate(scene);
  PotentialBreakdown r;
  r.ee = same_kind_retarded(scene, false);
  r.mm = same_kind_retarded(scene, true);
  r.em = em_retarded(scene);
  r.me = em_retarded(exchange(scene));
  r.total = r.ee + r.em + r.me + r.mm;
  return r;
}

PotentialBreakdown freespace_pair_potential(const AtomModel &atom_a,
                                            const AtomModel &atom_b, double l,
                                            const QuadratureSpec &spec) {
  BulkScene s;
  s.atom_a = atom_a;
  s.atom_b = atom_b;
  s.separation = l;
  return bulk_pair_potential(s, spec);
}

} // namespace vdw
