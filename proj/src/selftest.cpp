#include "vdw/runner.hpp"

#include "vdw/errors.hpp"
#include "vdw/specfun.hpp"

#include <cmath>
#include <functional>
#include <numbers>
#include <ostream>
#include <string>
#include <vector>

namespace vdw {

namespace {

bool close(double a, double b, double rel) {
  return std::abs(a - b) <= rel * std::max(std::abs(a), std::abs(b));
}

struct Group {
  std::string name;
  std::function<std::string()> check; // empty string on success
};

std::string check_specfun() {
  using namespace specfun;
  for (double x : {0.01, 0.7, 5.0, 40.0}) {
    for (int n : {0, 1, 5, 30}) {
      const auto b = modified_spherical_bessel(n, x);
      // Wronskian of the Riccati forms: x^2 (i k' - i' k) = -1 with f' from
      // [x f]' = f + x f'.
      const double ip = (b.first_deriv - b.first_kind) / x;
      const double kp = (b.third_deriv - b.third_kind) / x;
      const double w = x * x * (b.first_kind * kp - ip * b.third_kind);
      if (!close(w, -1.0, 1e-11))
        return "Wronskian at n=" + std::to_string(n) + ", x=" + std::to_string(x);
    }
  }
  const double x = 0.3;
  if (!close(modified_spherical_bessel(0, x).first_kind * std::exp(x),
             std::sinh(x) / x, 1e-14))
    return "i_0 closed form";
  const auto p = legendre_pn_dpn(3, 0.4);
  if (!close(p.p, 0.5 * (5 * 0.064 - 3 * 0.4), 1e-14) ||
      !close(p.dp, 0.5 * (15 * 0.16 - 3), 1e-14))
    return "P_3 closed form";
  return {};
}

std::string check_response() {
  const auto m = MaterialModel::drude_lorentz(Resonance{3, 1, 0.001}, Resonance{1, 2, 0});
  if (m.dual().eps(0.7) != m.mu(0.7) || m.dual().dual() != m)
    return "material duality";
  if (!close(m.eps(0.0), 10.0, 1e-15))
    return "static permittivity";
  if (lf_electric(MaterialModel::perfect_mirror(), 1.0) != 1.5)
    return "mirror local field";
  return {};
}

std::string check_quadrature() {
  const auto f = [](double u) { return u * u * std::exp(-u); };
  QuadratureSpec spec;
  for (auto t : {Transform::rational, Transform::exponential}) {
    spec.transform = t;
    if (!close(integrate_semi_infinite(f, spec).value, 2.0, 1e-10))
      return "semi-infinite moment";
  }
  const auto g = [](double u) { return std::cos(3 * u); };
  const auto par = integrate_interval(g, 0.0, 2.0);
  const auto ser = integrate_interval_serial(g, 0.0, 2.0);
  if (!close(par.value, std::sin(6.0) / 3, 1e-10) || !close(ser.value, par.value, 1e-10))
    return "serial and parallel drivers";
  return {};
}

std::string check_pair() {
  BulkScene s;
  s.host = MaterialModel::drude_lorentz(Resonance{3, 1, 0.1}, Resonance{1.5, 0.8, 0.05});
  s.atom_a = {1.0, 0.3, 1.0};
  s.atom_b = {0.2, 0.9, 1.4};
  s.separation = 0.4;
  const double t = bulk_pair_potential(s).total;
  if (!close(t, bulk_pair_potential(dual(s)).total, 1e-10))
    return "local-field duality";
  const AtomModel a{1.0, 1.0, 1.0};
  const auto full = freespace_pair_potential(a, a, 200.0);
  BulkScene v;
  v.atom_a = a;
  v.atom_b = a;
  v.separation = 200.0;
  const auto ret = bulk_pair_retarded(v);
  if (!close(full.ee, ret.ee, 0.01) || !close(full.em, ret.em, 0.01))
    return "retarded coefficients";
  return {};
}

std::string check_halfspace() {
  HalfSpaceScene s;
  s.wall = MaterialModel::perfect_mirror();
  s.atom = {1.0, 0.0, 1.0};
  s.z = 100.0;
  const double ue = halfspace_Ue(s);
  if (!close(ue * std::pow(s.z, 4), -3.0 / (8 * std::numbers::pi), 0.01))
    return "mirror retarded limit";
  s.wall = MaterialModel::drude_lorentz(Resonance{3, 1, 0}, Resonance{1, 1, 0});
  s.atom = {0.5, 0.7, 1.0};
  s.z = 0.5;
  if (halfspace_Um(s) != halfspace_Ue(dual(s)))
    return "magnetic part from the dual scene";
  return {};
}

std::string check_sphere() {
  SphereScene s;
  s.atom_a = {1.0, 0.0, 1.0};
  s.atom_b = {0.0, 1.0, 1.0};
  s.r_a = 1.5;
  s.r_b = 1.8;
  s.theta = 1.0;
  const auto vac = sphere_Uem(s);
  if (vac.u1 != 0.0 || vac.u2 != 0.0)
    return "vacuum sphere";
  s.sphere = MaterialModel::drude_lorentz(Resonance{3, 1, 0.001}, std::nullopt);
  const auto em = sphere_Uem(s);
  const auto trace = sphere_Uem1_trace(s);
  if (!close(em.u1, trace.value, 1e-8))
    return "series against trace";
  if (!close(em.total, sphere_Ume(dual(s)).total, 1e-10))
    return "mixed-channel duality";
  const double eps_m1 = 10.0;
  const auto m = mie_coefficients(
      MaterialModel::drude_lorentz(Resonance{std::sqrt(eps_m1) * 1e3, 1e3, 0}, std::nullopt),
      1.0, 0.01, 1);
  if (!close(m.bn, (2.0 / 3) * 1e-6 * eps_m1 / (eps_m1 + 3), 0.01))
    return "small-sphere Mie limit";
  return {};
}

} // namespace

int run_selftest(std::ostream &log) {
  const std::vector<Group> groups{
      {"specfun", check_specfun}, {"response", check_response},
      {"quadrature", check_quadrature}, {"pair", check_pair},
      {"halfspace", check_halfspace}, {"sphere", check_sphere}};
  int failed = 0;
  for (const auto &g : groups) {
    std::string why;
    try {
      why = g.check();
    } catch (const std::exception &e) {
      why = std::string("exception: ") + e.what();
    }
    if (why.empty()) {
      log << "PASS " << g.name << '\n';
    } else {
      log << "FAIL " << g.name << ": " << why << '\n';
      ++failed;
    }
  }
  return failed;
}

} // namespace vdw
