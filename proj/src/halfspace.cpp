#include "vdw/halfspace.hpp"

#include "vdw/errors.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace vdw {

namespace {

using std::numbers::pi;

struct Reflection {
  double s, p;
};

// Written as differences of squares so that a weak wall gives small
// coefficients without cancellation.
Reflection reflection(const MaterialModel &wall, double u, double v) {
  if (wall.is_perfect_mirror())
    return wall.mirror_type() == MirrorType::electric ? Reflection{-1.0, 1.0}
                                                      : Reflection{1.0, -1.0};
  const double xe = wall.eps_minus_one(u), xm = wall.mu_minus_one(u);
  return {reflection_s(xe, xm, v), reflection_p(xe, xm, v)};
}

double reflection_generic(double x_self, double x_other, double v) {
  const double self = 1.0 + x_self;
  const double n2m1 = x_self + x_other + x_self * x_other;
  const double root = std::sqrt((v - 1.0) * (v + 1.0) + 1.0 + n2m1);
  const double d = self * v + root;
  return (x_self * (2.0 + x_self) * v * v - n2m1) / (d * d);
}

} // namespace

double reflection_s(double eps_m1, double mu_m1, double v) {
  return reflection_generic(mu_m1, eps_m1, v);
}

double reflection_p(double eps_m1, double mu_m1, double v) {
  return reflection_generic(eps_m1, mu_m1, v);
}

void validate(const HalfSpaceScene &scene) {
  if (!(scene.z > 0.0) || !std::isfinite(scene.z))
    throw DomainError("atom-surface distance z must be positive and finite");
  validate(scene.wall);
  validate(scene.atom);
}

HalfSpaceScene dual(const HalfSpaceScene &scene) {
  return {scene.wall.dual(), scene.atom.dual(), scene.z};
}

QuadResult halfspace_electric(const HalfSpaceScene &scene,
                              const QuadratureSpec &spec) {
  validate(scene);
  validate(spec);
  if (scene.wall.is_vacuum() || scene.atom.a0 == 0.0)
    return {};
  const double z = scene.z;

  QuadratureSpec inner = spec;
  inner.parallel = false;
  inner.rel_tol = spec.rel_tol * 0.1;
  inner.abs_tol = 0.0;
  inner.scale = 1.0;
  inner.transform = Transform::exponential;

  // With v = 1 + w / (2 u z) the inner integral is a Laplace transform in w.
  const auto outer = [&](double u) {
    const double damp = 2.0 * u * z;
    if (damp > 700.0)
      return 0.0;
    const auto bracket = [&](double w) {
      const double v = 1.0 + w / damp;
      const Reflection r = reflection(scene.wall, u, v);
      return std::exp(-w) * (r.s - (2.0 * v * v - 1.0) * r.p);
    };
    const double j = integrate_semi_infinite_serial(bracket, inner).value;
    // u^3 a e^{-2uz} / (2uz) rescaled by z^3 for an O(1) normalised integral.
    return 0.5 * z * z * u * u * scene.atom.alpha(u) * std::exp(-damp) * j;
  };

  QuadratureSpec sp = spec;
  sp.scale = 1.0 / (1.0 / scene.atom.resonance + 2.0 * z);
  QuadResult r = integrate_semi_infinite(outer, sp);
  const double pref = 1.0 / (2.0 * pi * z * z * z);
  r.value *= pref;
  r.error *= pref;
  return r;
}

double halfspace_Ue(const HalfSpaceScene &scene, const QuadratureSpec &spec) {
  return halfspace_electric(scene, spec).value;
}

double halfspace_Um(const HalfSpaceScene &scene, const QuadratureSpec &spec) {
  return halfspace_Ue(dual(scene), spec);
}

HalfSpaceResult halfspace_potential(const HalfSpaceScene &scene,
                                    const QuadratureSpec &spec) {
  const QuadResult e = halfspace_electric(scene, spec);
  const QuadResult m = halfspace_electric(dual(scene), spec);
  return {e.value, m.value, e.value + m.value, e.error, m.error};
}

double halfspace_Ue_nonretarded(const HalfSpaceScene &scene,
                                const QuadratureSpec &spec) {
  validate(scene);
  if (scene.atom.a0 == 0.0)
    return 0.0;
  const MaterialModel &w = scene.wall;
  const auto f = [&](double u) {
    double ratio = 1.0;
    if (!w.is_perfect_mirror()) {
      const double x = w.eps_minus_one(u);
      ratio = x / (2.0 + x);
    } else if (w.mirror_type() == MirrorType::magnetic) {
      ratio = 0.0;
    }
    return scene.atom.alpha(u) * ratio;
  };
  QuadratureSpec sp = spec;
  sp.scale = scene.atom.resonance;
  const double z = scene.z;
  return -integrate_semi_infinite(f, sp).value / (4.0 * pi * z * z * z);
}

double halfspace_Ue_retarded(const HalfSpaceScene &scene,
                             const QuadratureSpec &spec) {
  validate(scene);
  const auto f = [&](double v) {
    const Reflection r = reflection(scene.wall, 0.0, v);
    const double v2 = v * v, v4 = v2 * v2;
    return r.s / v4 - (2.0 / v2 - 1.0 / v4) * r.p;
  };
  const double z = scene.z;
  const double integral =
      integrate_interval(f, 1.0, std::numeric_limits<double>::infinity(), spec)
          .value;
  return 3.0 / (16.0 * pi) * scene.atom.a0 * integral / (z * z * z * z);
}

} // namespace vdw
