#include "support.hpp"

#include "vdw/errors.hpp"
#include "vdw/halfspace.hpp"

#include <doctest.h>

#include <functional>
#include <numbers>

using namespace vdw;
using std::numbers::pi;
using vdw::test::rel_diff;

namespace {

double log_slope(const std::function<double(double)> &f, double a, double b) {
  return (std::log(std::abs(f(b))) - std::log(std::abs(f(a)))) / (std::log(b) - std::log(a));
}

HalfSpaceScene dielectric(double z) {
  HalfSpaceScene s;
  s.wall = MaterialModel::drude_lorentz(Resonance{3, 1, 0.01}, std::nullopt);
  s.atom = {1, 0, 1};
  s.z = z;
  return s;
}

} // namespace

TEST_SUITE("halfspace") {

TEST_CASE("reflection coefficients against the textbook forms") {
  for (double em1 : {0.0, 1e-9, 0.3, 9.0, 1e4}) {
    for (double mm1 : {0.0, 0.5, 3.0}) {
      for (double v : {1.0, 1.3, 10.0, 1e3}) {
        const double eps = 1 + em1, mu = 1 + mm1;
        const double root = std::sqrt(eps * mu - 1 + v * v);
        const double rs = (mu * v - root) / (mu * v + root);
        const double rp = (eps * v - root) / (eps * v + root);
        CAPTURE(em1);
        CAPTURE(mm1);
        CAPTURE(v);
        CHECK(std::abs(reflection_s(em1, mm1, v) - rs) < 1e-13 * (1 + std::abs(rs)));
        CHECK(std::abs(reflection_p(em1, mm1, v) - rp) < 1e-13 * (1 + std::abs(rp)));
      }
    }
  }
  // weak wall keeps its relative accuracy
  CHECK(rel_diff(reflection_p(1e-9, 0.0, 1.0), 0.25e-9) < 1e-6);
}

TEST_CASE("vacuum wall gives nothing") {
  HalfSpaceScene s = dielectric(1.0);
  s.wall = MaterialModel::vacuum();
  const auto r = halfspace_potential(s);
  CHECK(r.ue == 0.0);
  CHECK(r.um == 0.0);
}

TEST_CASE("perfect mirror retarded limit") {
  HalfSpaceScene s;
  s.wall = MaterialModel::perfect_mirror();
  s.atom = {1.7, 0, 1};
  const double target = -3.0 * 1.7 / (8 * pi);
  for (double z : {100.0, 200.0, 400.0}) {
    s.z = z;
    CHECK(rel_diff(halfspace_Ue(s) * std::pow(z, 4), target) < 0.01);
    CHECK(rel_diff(halfspace_Ue_retarded(s, {}) * std::pow(z, 4), target) < 1e-9);
  }
}

TEST_CASE("dielectric wall limits") {
  auto ue = [](double z) { return halfspace_Ue(dielectric(z)); };
  CHECK(std::abs(log_slope(ue, 1e-3, 1e-2) + 3.0) < 0.05);
  CHECK(std::abs(log_slope(ue, 100.0, 400.0) + 4.0) < 0.05);
  CHECK(ue(0.5) < 0.0);
  const auto nr = halfspace_Ue_nonretarded(dielectric(1e-3));
  CHECK(rel_diff(ue(1e-3), nr) < 0.01);
  const auto ret = halfspace_Ue_retarded(dielectric(300.0));
  CHECK(rel_diff(ue(300.0), ret) < 0.02);
}

TEST_CASE("magnetic part is the dual electric part") {
  vdw::test::Rng rng(5);
  for (int i = 0; i < 5; ++i) {
    HalfSpaceScene s;
    s.wall = rng.material();
    s.atom = rng.atom();
    s.z = rng.log_uniform(0.01, 10.0);
    CHECK(halfspace_Um(s) == halfspace_Ue(dual(s)));
    const auto r = halfspace_potential(s);
    CHECK(r.total == r.ue + r.um);
  }
}

TEST_CASE("a magnetic atom is repelled by a dielectric wall") {
  HalfSpaceScene s = dielectric(0.3);
  s.atom = {0, 1, 1};
  CHECK(halfspace_Um(s) > 0.0);
}

TEST_CASE("errors") {
  HalfSpaceScene s = dielectric(0.0);
  CHECK_THROWS_AS(halfspace_Ue(s), DomainError);
  s.z = -1;
  CHECK_THROWS_AS(halfspace_potential(s), DomainError);
}

}
