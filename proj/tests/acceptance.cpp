// Acceptance checks: one PASS/FAIL line per criterion, exit status 0 iff all pass.

#include "oracles.hpp"
#include "support.hpp"

#include "vdw/halfspace.hpp"
#include "vdw/pair.hpp"
#include "vdw/specfun.hpp"
#include "vdw/sphere.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

using namespace vdw;
using namespace vdw::test;
using std::numbers::pi;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string &what) {
    if (!ok) {
      pass = false;
      detail << " [failed: " << what << "]";
    }
  }
};

double fit_slope(const std::vector<double> &x, const std::vector<double> &y) {
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double a = std::log(x[i]), b = std::log(std::abs(y[i]));
    sx += a;
    sy += b;
    sxx += a * a;
    sxy += a * b;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

std::vector<double> log_grid(double a, double b, int n) {
  std::vector<double> g(n);
  for (int i = 0; i < n; ++i)
    g[i] = std::exp(std::log(a) + (std::log(b) - std::log(a)) * i / (n - 1));
  return g;
}

const AtomModel kElectricAtom{1, 0, 1};
const AtomModel kMagneticAtom{0, 1, 1};
const MaterialModel kElectricSphere =
    MaterialModel::drude_lorentz(Resonance{3, 1, 0.001}, std::nullopt);
const MaterialModel kMagneticSphere =
    MaterialModel::drude_lorentz(std::nullopt, Resonance{3, 1, 0.001});

void retarded_coefficients(Outcome &o) {
  const AtomModel a{1.3, 0.0, 1.0}, b{0.7, 0.9, 1.0};
  const double l = 200.0, l7 = std::pow(l, 7);
  const auto p = freespace_pair_potential(a, b, l);
  // -23 hbar c alpha alpha / (64 pi^3 eps0^2) and 7 hbar c mu0 alpha beta / (64 pi^3 eps0)
  const double ee = -23.0 / (4 * pi) * a.a0 * b.a0;
  const double em = 7.0 / (4 * pi) * a.a0 * b.b0;
  const double re = p.ee * l7 / ee, rm = p.em * l7 / em;
  o.detail << "U_ee l^7 / coefficient = " << re << ", U_em l^7 / coefficient = " << rm;
  o.require(std::abs(re - 1) < 0.01, "ee within 1%");
  o.require(std::abs(rm - 1) < 0.01, "em within 1%");
}

void freespace_scaling(Outcome &o) {
  const AtomModel a{1, 1, 1};
  const auto slopes = [&](double lo, double hi) {
    const auto g = log_grid(lo, hi, 10);
    std::vector<double> ee, em;
    for (double l : g) {
      const auto p = freespace_pair_potential(a, a, l);
      ee.push_back(p.ee);
      em.push_back(p.em);
    }
    return std::pair{fit_slope(g, ee), fit_slope(g, em)};
  };
  const auto [se, sm] = slopes(0.001, 0.01);
  const auto [fe, fm] = slopes(50.0, 500.0);
  o.detail << "short: ee " << se << ", em " << sm << "; long: ee " << fe << ", em " << fm;
  o.require(std::abs(se + 6) <= 0.05, "short ee slope");
  o.require(std::abs(sm + 4) <= 0.05, "short em slope");
  o.require(std::abs(fe + 7) <= 0.05, "long ee slope");
  o.require(std::abs(fm + 7) <= 0.05, "long em slope");
}

void duality_with_local_fields(Outcome &o) {
  Rng rng(2024);
  double worst = 0;
  for (int i = 0; i < 50; ++i) {
    BulkScene s;
    s.host = rng.material();
    s.atom_a = rng.atom();
    s.atom_b = rng.atom();
    s.separation = rng.log_uniform(0.01, 20.0);
    worst = std::max(worst, rel_diff(bulk_pair_potential(s).total,
                                     bulk_pair_potential(dual(s)).total));
  }
  BulkScene s;
  s.host = MaterialModel::drude_lorentz(Resonance{3, 1, 0.001}, std::nullopt);
  s.atom_a = {1, 0.4, 1};
  s.atom_b = {0.6, 1, 1};
  s.separation = 0.5;
  s.local_field = false;
  const double broken =
      rel_diff(bulk_pair_potential(s).total, bulk_pair_potential(dual(s)).total);
  o.detail << "corrected worst relative change " << worst << " over 50 scenes; uncorrected "
           << broken;
  o.require(worst < 1e-10, "corrected invariance");
  o.require(broken > 1e-3, "uncorrected violation");
}

void medium_factors(Outcome &o) {
  BulkScene s;
  s.host = MaterialModel::drude_lorentz(Resonance{2, 1, 0.1}, Resonance{1, 1, 0.2});
  s.atom_a = {1, 1, 1};
  s.atom_b = {1, 1, 1};
  s.separation = 0.05;
  BulkScene other_mu = s, other_eps = s;
  other_mu.host = MaterialModel::drude_lorentz(Resonance{2, 1, 0.1}, Resonance{3, 0.4, 0.01});
  other_eps.host = MaterialModel::drude_lorentz(Resonance{0.5, 2, 0.3}, Resonance{1, 1, 0.2});
  const bool ee_eps_only = bulk_pair_nonretarded(s).ee == bulk_pair_nonretarded(other_mu).ee;
  const bool mm_mu_only = bulk_pair_nonretarded(s).mm == bulk_pair_nonretarded(other_eps).mm;
  const double f = medium_factor_em(1e6, 1e6);
  o.detail << "ee independent of mu: " << ee_eps_only << ", mm independent of eps: "
           << mm_mu_only << ", mixed factor at 1e6 = " << f << " (81/16 = " << 81.0 / 16 << ")";
  o.require(ee_eps_only, "ee bit-identical");
  o.require(mm_mu_only, "mm bit-identical");
  o.require(std::abs(f / (81.0 / 16) - 1) < 1e-4, "81/16");
}

void halfspace_sanity(Outcome &o) {
  HalfSpaceScene m;
  m.wall = MaterialModel::perfect_mirror();
  m.atom = {1, 0, 1};
  const double target = -3.0 / (8 * pi);
  double lo = 1e300, hi = -1e300;
  for (double z : {100.0, 150.0, 200.0, 300.0, 400.0}) {
    m.z = z;
    const double c = halfspace_Ue(m) * std::pow(z, 4);
    lo = std::min(lo, c);
    hi = std::max(hi, c);
  }
  HalfSpaceScene d;
  d.wall = MaterialModel::drude_lorentz(Resonance{3, 1, 0.01}, std::nullopt);
  d.atom = {1, 0, 1};
  const auto g = log_grid(0.001, 0.01, 8);
  std::vector<double> v;
  for (double z : g) {
    d.z = z;
    v.push_back(halfspace_Ue(d));
  }
  const double slope = fit_slope(g, v);
  HalfSpaceScene x;
  x.wall = MaterialModel::drude_lorentz(Resonance{2, 1, 0.1}, Resonance{1.5, 0.8, 0.05});
  x.atom = {0.7, 1.1, 1.2};
  x.z = 0.4;
  const bool dual_ok = halfspace_Um(x) == halfspace_Ue(dual(x));
  o.detail << "mirror z^4 U_e in [" << lo << ", " << hi << "] vs " << target
           << "; short slope " << slope << "; magnetic = dual electric: " << dual_ok;
  o.require(std::abs(hi / lo - 1) < 0.01, "constant within 1%");
  o.require(std::abs(lo / target - 1) < 0.01 && std::abs(hi / target - 1) < 0.01,
            "matches the mirror limit");
  o.require(std::abs(slope + 3) <= 0.05, "short slope");
  o.require(dual_ok, "dual identity");
}

void series_vs_trace(Outcome &o) {
  Rng rng(31);
  double worst = 0;
  for (int i = 0; i < 5; ++i) {
    SphereScene s;
    s.sphere = rng.material();
    s.radius = rng.uniform(0.5, 2.0);
    s.atom_a = rng.atom();
    s.atom_b = rng.atom();
    s.r_a = s.radius * rng.uniform(1.05, 2.5);
    s.r_b = s.radius * rng.uniform(1.05, 2.5);
    s.theta = rng.uniform(0.05, pi);
    worst = std::max(worst, rel_diff(sphere_Uem(s).u1, sphere_Uem1_trace(s).value));
  }
  o.detail << "worst relative difference " << worst << " over 5 scenes";
  o.require(worst < 1e-8, "1e-8");
}

void sphere_limits(Outcome &o) {
  const SphereScene small{kElectricSphere, 0.02, kElectricAtom, kMagneticAtom, 1.0, 1.0, pi / 2};
  const auto fs = sphere_Uem(small);
  const double rs = (fs.u1 + fs.u2) / sphere_Uem_small(small);

  const SphereScene large{kElectricSphere, 50.0, kElectricAtom, kMagneticAtom,
                          50.05, 50.05, 0.004};
  const auto t0 = std::chrono::steady_clock::now();
  const auto fl = sphere_Uem(large);
  const double rl = (fl.u1 + fl.u2) / sphere_Uem_large(large);
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  o.detail << "small sphere full/closed = " << rs << "; large sphere full/closed = " << rl
           << " (slow, " << secs << " s)";
  o.require(std::abs(rs - 1) < 0.02, "small sphere within 2%");
  o.require(std::abs(rl - 1) < 0.05, "large sphere within 5%");
}

void angular_profile(Outcome &o) {
  for (double r : {1.03, 1.3, 2.0}) {
    std::vector<double> ratio;
    for (int i = 1; i <= 60; ++i) {
      const SphereScene s{kElectricSphere, 1.0, kElectricAtom, kMagneticAtom, r, r,
                          pi * i / 60};
      const auto x = sphere_Uem(s);
      ratio.push_back(x.total / x.u0);
    }
    const auto imax = std::max_element(ratio.begin(), ratio.end()) - ratio.begin();
    const auto imin = std::min_element(ratio.begin(), ratio.end()) - ratio.begin();
    const bool interior = imax > 0 && imax < 59;
    o.detail << "r=" << r << ": max " << ratio[imax] << " at theta " << pi * (imax + 1) / 60
             << ", min " << ratio[imin] << " at theta " << pi * (imin + 1) / 60 << "; ";
    o.require(interior, "interior maximum at r=" + std::to_string(r));
    o.require(imin == 59, "minimum at pi for r=" + std::to_string(r));
  }
}

void linear_profile(Outcome &o) {
  const auto g = log_grid(0.05, 500.0, 16);
  const auto ratios = [&](const MaterialModel &m) {
    std::vector<double> out;
    for (double l : g) {
      const SphereScene s{m, 1.0, kElectricAtom, kMagneticAtom, 1.03, 1.03 + l, 0.0};
      const auto x = sphere_Uem(s);
      out.push_back(x.total / x.u0);
    }
    return out;
  };
  const auto e = ratios(kElectricSphere);
  const auto m = ratios(kMagneticSphere);
  const double emax = *std::max_element(e.begin(), e.end());
  const double plateau = std::abs(e[e.size() - 1] / e[e.size() - 2] - 1);
  const double mmin = *std::min_element(m.begin(), m.end());
  const auto imax = std::max_element(m.begin(), m.end()) - m.begin();
  o.detail << "electric: max ratio " << emax << ", last two " << e[e.size() - 2] << ", "
           << e.back() << "; magnetic: min ratio " << mmin << ", max " << m[imax]
           << " at l=" << g[imax];
  o.require(emax < 1.0, "electric ratio below 1");
  o.require(plateau < 0.01, "electric plateau");
  o.require(mmin > 1.0, "magnetic ratio above 1");
  o.require(imax > 0 && imax + 1 < static_cast<long>(m.size()), "magnetic interior maximum");
}

void curl_tensor_representation(Outcome &o) {
  Rng rng(99);
  double worst = 0;
  for (int i = 0; i < 20; ++i) {
    SphereScene s;
    s.radius = rng.uniform(0.5, 2.0);
    s.r_a = s.radius * rng.uniform(1.05, 2.5);
    s.r_b = s.radius * rng.uniform(1.05, 2.5);
    s.theta = rng.uniform(0.05, pi);
    const double theta_a = rng.uniform(0.0, s.theta);
    const double u = rng.log_uniform(0.01, 5.0);
    const Frame f = frame(s, theta_a);
    const Mat k = k0_cart(minus(f.rb, f.ra), u);
    const KComponents c = k0_components(s, u);
    double scale = 0;
    for (const auto &row : k)
      for (double v : row)
        scale = std::max(scale, std::abs(v));
    const double d[] = {c.r_phi - project(f.er_b, k, f.ep_a),
                        c.theta_phi - project(f.et_b, k, f.ep_a),
                        c.phi_r - project(f.ep_b, k, f.er_a),
                        c.phi_theta - project(f.ep_b, k, f.et_a),
                        project(f.er_b, k, f.er_a), project(f.er_b, k, f.et_a),
                        project(f.et_b, k, f.er_a), project(f.et_b, k, f.et_a),
                        project(f.ep_b, k, f.ep_a)};
    for (double v : d)
      worst = std::max(worst, std::abs(v) / scale);
  }
  o.detail << "worst component difference " << worst << " (relative to the largest entry)";
  o.require(worst < 1e-12, "1e-12");
}

void special_functions(Outcome &o) {
  double worst_value = 0, worst_wronskian = 0, worst_legendre = 0;
  for (int n : {0, 1, 2, 5, 10, 30}) {
    for (double x : {1e-2, 0.1, 1.0, 5.0, 20.0, 60.0}) {
      const auto b = specfun::modified_spherical_bessel(n, x);
      const big bx(x);
      worst_value = std::max(
          worst_value, rel_diff(b.first_kind, static_cast<double>(oracle_i(n, bx) * exp(-bx))));
      worst_value = std::max(
          worst_value, rel_diff(b.third_kind, static_cast<double>(oracle_k(n, bx) * exp(bx))));
    }
  }
  specfun::BesselTable t;
  for (double x : {1e-3, 0.3, 7.0, 400.0}) {
    specfun::bessel_table(x, 300, t);
    for (int n = 0; n <= 300; n += 3) {
      if (std::abs(t.log_i[n] + t.log_k[n]) > 700)
        continue;
      const double w =
          std::exp(t.log_i[n] + t.log_k[n]) * x * (t.riccati_k(n) - t.riccati_i(n));
      worst_wronskian = std::max(worst_wronskian, std::abs(w + 1));
    }
  }
  for (int n : {1, 4, 9, 40}) {
    const auto up = specfun::legendre_pn_dpn(n, 1.0);
    const auto dn = specfun::legendre_pn_dpn(n, -1.0);
    const double d1 = 0.5 * n * (n + 1);
    worst_legendre = std::max({worst_legendre, std::abs(up.p - 1), rel_diff(up.dp, d1),
                               rel_diff(dn.dp, n % 2 ? d1 : -d1)});
  }
  const double g = 0.37;
  const auto p5 = specfun::legendre_pn_dpn(5, g);
  worst_legendre = std::max(
      worst_legendre,
      rel_diff(p5.p, (63 * std::pow(g, 5) - 70 * std::pow(g, 3) + 15 * g) / 8));
  o.detail << "Bessel vs 50-digit oracle " << worst_value << ", Wronskian " << worst_wronskian
           << ", Legendre " << worst_legendre;
  o.require(worst_value < 1e-12, "Bessel values 1e-12");
  o.require(worst_wronskian < 1e-11, "Wronskian 1e-11");
  o.require(worst_legendre < 1e-12, "Legendre 1e-12");
}

} // namespace

int main() {
  const std::vector<std::pair<const char *, std::function<void(Outcome &)>>> checks{
      {"retarded free-space coefficients", retarded_coefficients},
      {"free-space power laws", freespace_scaling},
      {"duality with local-field corrections", duality_with_local_fields},
      {"medium factors", medium_factors},
      {"half-space limits", halfspace_sanity},
      {"sphere series against trace", series_vs_trace},
      {"sphere closed-form limits", sphere_limits},
      {"angular profile near a dielectric sphere", angular_profile},
      {"linear arrangement near electric and magnetic spheres", linear_profile},
      {"curl tensor in spherical components", curl_tensor_representation},
      {"special functions", special_functions},
  };
  int failed = 0;
  for (std::size_t i = 0; i < checks.size(); ++i) {
    Outcome o;
    try {
      checks[i].second(o);
    } catch (const std::exception &e) {
      o.pass = false;
      o.detail << " [exception: " << e.what() << "]";
    }
    std::printf("%s %zu %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1, checks[i].first,
                o.detail.str().c_str());
    std::fflush(stdout);
    failed += !o.pass;
  }
  return failed == 0 ? 0 : 1;
}
