#include "vdw/halfspace.hpp"
#include "vdw/quadrature.hpp"
#include "vdw/sphere.hpp"

#include <benchmark/benchmark.h>

#include <cmath>

namespace {

vdw::SphereScene scene() {
  vdw::SphereScene s;
  s.sphere = vdw::MaterialModel::drude_lorentz(vdw::Resonance{3, 1, 0.001}, std::nullopt);
  s.atom_a = {1.0, 0.0, 1.0};
  s.atom_b = {0.0, 1.0, 1.0};
  s.r_a = 1.3;
  s.r_b = 1.3;
  s.theta = 2.0;
  return s;
}

// One scattering-tensor component per node: the costly sphere integrand.
double sphere_integrand(double u) {
  static const vdw::SphereScene s = scene();
  const double a = 1.0 / (1.0 + u * u);
  return u * u * a * a * vdw::g1_components(s, u).rr;
}

void BM_QuadSerial(benchmark::State &state) {
  vdw::QuadratureSpec spec;
  spec.rel_tol = 1e-10;
  spec.scale = 0.5;
  for (auto _ : state)
    benchmark::DoNotOptimize(vdw::integrate_semi_infinite_serial(sphere_integrand, spec));
}

void BM_QuadParallel(benchmark::State &state) {
  vdw::QuadratureSpec spec;
  spec.rel_tol = 1e-10;
  spec.scale = 0.5;
  for (auto _ : state)
    benchmark::DoNotOptimize(vdw::integrate_semi_infinite(sphere_integrand, spec));
}

void BM_SphereUem(benchmark::State &state) {
  vdw::QuadratureSpec spec;
  spec.parallel = state.range(0) != 0;
  const auto s = scene();
  for (auto _ : state)
    benchmark::DoNotOptimize(vdw::sphere_Uem(s, spec));
}

void BM_HalfSpace(benchmark::State &state) {
  vdw::QuadratureSpec spec;
  spec.parallel = state.range(0) != 0;
  vdw::HalfSpaceScene s;
  s.wall = vdw::MaterialModel::drude_lorentz(vdw::Resonance{3, 1, 0.01},
                                             vdw::Resonance{1, 1, 0.01});
  s.atom = {1.0, 0.5, 1.0};
  s.z = 0.3;
  for (auto _ : state)
    benchmark::DoNotOptimize(vdw::halfspace_potential(s, spec));
}

} // namespace

BENCHMARK(BM_QuadSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_QuadParallel)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SphereUem)->Arg(0)->Arg(1)->ArgName("parallel")->Unit(benchmark::kMillisecond);
BENCHMARK(BM_HalfSpace)->Arg(0)->Arg(1)->ArgName("parallel")->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
