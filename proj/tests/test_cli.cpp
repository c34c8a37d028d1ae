#include "support.hpp"

#include "vdw/config.hpp"
#include "vdw/errors.hpp"
#include "vdw/runner.hpp"

#include <doctest.h>
#include <omp.h>

#include <numbers>
#include <sstream>

using namespace vdw;
using vdw::test::rel_diff;

namespace {

int error_line(std::string_view text) {
  try {
    parse_config(text);
  } catch (const ConfigError &e) {
    return e.line();
  }
  return -1;
}

std::string error_key(std::string_view text) {
  try {
    parse_config(text);
  } catch (const ConfigError &e) {
    return e.key();
  }
  return {};
}

std::string csv(const RunConfig &c) {
  std::ostringstream os;
  write_csv(run(c), os);
  return os.str();
}

const char *kFig2 = R"(# ratio against the angular separation
command = sweep
sweep.target = sphere
sphere.radius_R = 1
host.wpe = 3
host.wte = 1
host.ge = 0.001
sphere.r_a = 1.03
sphere.r_b = 1.03
atom_a.a0 = 1
atom_b.b0 = 1
sweep.variable = theta
sweep.start = 0.1
sweep.stop = pi
sweep.count = 6
)";

} // namespace

TEST_SUITE("cli") {

TEST_CASE("minimal bulk config") {
  const auto c = parse_config(
      "command = bulk\nbulk.l = 1.0\natom_a.a0 = 1\natom_b.b0 = 1\nhost.variant = vacuum");
  CHECK(c.command == Command::bulk);
  CHECK(c.target == Command::bulk);
  CHECK(c.bulk_l == 1.0);
  CHECK(c.host.is_vacuum());
  CHECK(c.atom_a.a0 == 1.0);
  CHECK(c.atom_b.b0 == 1.0);
  CHECK(c.local_field);
  CHECK_FALSE(c.sweep);
  const auto t = run(c);
  REQUIRE(t.rows.size() == 1);
  CHECK(t.header[0] == "l");
  CHECK(t.rows[0][2] == freespace_pair_potential(c.atom_a, c.atom_b, 1.0).em);
}

TEST_CASE("figure 2 config is accepted") {
  const auto c = parse_config(kFig2);
  CHECK(c.command == Command::sweep);
  CHECK(c.target == Command::sphere);
  REQUIRE(c.sweep);
  CHECK(c.sweep->key == "sphere.theta");
  CHECK(c.sweep->stop == std::numbers::pi);
  CHECK(c.sweep->point(c.sweep->count - 1) == std::numbers::pi);
  CHECK(c.host.eps(0.0) == doctest::Approx(10.0));
  CHECK(c.r_a == 1.03);
  const auto t = run(c);
  CHECK(t.header == std::vector<std::string>{"theta", "u_ee_0", "u_em_0", "u_me_0",
                                             "u_mm_0", "u_em_total", "u_me_total",
                                             "ratio_em", "err_estimate"});
  CHECK(t.rows.size() == 6);
  for (const auto &row : t.rows) {
    CHECK(row[7] == row[5] / row[2]);
    CHECK(row[8] > 0.0);
  }
}

TEST_CASE("diagnostics name the line and key") {
  CHECK(error_line("command = sphere\nsphere.theta = 4.0\n") == 2);
  CHECK(error_key("command = sphere\nsphere.theta = 4.0\n") == "sphere.theta");
  CHECK(error_line("command = bulk\n\n# c\nbulk.q = 2\n") == 4);
  CHECK(error_key("command = bulk\nbulk.l = abc\n") == "bulk.l");
  CHECK(error_line("command = bulk\nbulk.l = abc\n") == 2);
  CHECK(error_key("command = bulk\natom_a.a0 = 1\natom_b.a0 = 1\n") == "bulk.l");
  CHECK(error_line("command = bulk\natom_a.a0 = 1\natom_b.a0 = 1\n") == 0);
  CHECK(error_line("command = bulk\nbulk.l = 1\nbulk.l = 2\n") == 3);
  CHECK(error_line("command = warp\n") == 1);
  CHECK(error_line("command = bulk\njust text\n") == 2);
  CHECK(error_key("command = halfspace\nhalfspace.z = 1\natom_a.a0 = 1\nsphere.r_a = 2\n") ==
        "sphere.r_a");
  CHECK(error_key("command = bulk\nbulk.l = 1\natom_a.a0 = 1\natom_b.a0 = 1\n"
                  "bulk.local_field = maybe\n") == "bulk.local_field");
  CHECK(error_key("command = sphere\nsphere.radius_R = 1\nsphere.r_a = 0.5\n"
                  "sphere.r_b = 2\nsphere.theta = 1\natom_a.a0 = 1\natom_b.b0 = 1\n") ==
        "sphere.r_a");
  CHECK(error_key("command = bulk\nbulk.l = 1\natom_a.a0 = 1\natom_b.a0 = 1\n"
                  "host.variant = perfect_mirror\n") == "host.variant");
  CHECK(error_key("command = halfspace\nhalfspace.z = 1\natom_a.a0 = 1\nhost.wte = 2\n") ==
        "host.wte");
}

TEST_CASE("sweep invariants") {
  const std::string base = "command = freespace\natom_a.a0 = 1\natom_b.b0 = 1\n"
                           "sweep.variable = l\nsweep.start = 0.001\nsweep.stop = 0.01\n";
  CHECK(error_key(base + "sweep.count = 1\n") == "sweep.count");
  CHECK(error_key(base + "sweep.count = 5\nsweep.variable = q\n") == "sweep.variable");
  CHECK(error_key("command = freespace\natom_a.a0 = 1\natom_b.b0 = 1\nsweep.variable = l\n"
                  "sweep.start = 0\nsweep.stop = 1\nsweep.count = 3\nsweep.spacing = log\n") ==
        "sweep.spacing");
  CHECK(error_key("command = sphere\nsphere.radius_R = 1\nsphere.r_a = 2\nsphere.r_b = 2\n"
                  "atom_a.a0 = 1\natom_b.b0 = 1\nsweep.variable = theta\nsweep.start = 0.1\n"
                  "sweep.stop = 4\nsweep.count = 3\n") == "sweep.stop");
  CHECK(error_key("command = sweep\nfreespace.l = 1\n") == "sweep.target");

  const auto c = parse_config(base + "sweep.count = 20\nsweep.spacing = log\n");
  REQUIRE(c.sweep);
  CHECK(c.sweep->point(0) == 0.001);
  CHECK(c.sweep->point(19) == 0.01);
  CHECK(rel_diff(c.sweep->point(10) / c.sweep->point(9), std::pow(10.0, 1.0 / 19)) < 1e-12);
}

TEST_CASE("freespace sweep recovers the short-distance law") {
  const auto c =
      parse_config("command = freespace\natom_a.a0 = 1\natom_b.b0 = 1\nsweep.variable = l\n"
                   "sweep.start = 0.001\nsweep.stop = 0.01\nsweep.count = 20\n"
                   "sweep.spacing = log\n");
  const auto t = run(c);
  REQUIRE(t.rows.size() == 20);
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (const auto &row : t.rows) {
    const double x = std::log(row[0]), y = std::log(std::abs(row[2]));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double slope = (20 * sxy - sx * sy) / (20 * sxx - sx * sx);
  CHECK(std::abs(slope + 4.0) < 0.05);
}

TEST_CASE("magnetic sphere enhances the mixed potential along a line") {
  const auto c = parse_config(R"(command = sphere
sphere.arrangement = linear
sphere.radius_R = 1
sphere.r_a = 1.03
host.wpm = 3
host.wtm = 1
host.gm = 0.001
atom_a.a0 = 1
atom_b.b0 = 1
sweep.variable = l
sweep.start = 0.05
sweep.stop = 20
sweep.count = 8
sweep.spacing = log
)");
  const auto t = run(c);
  CHECK(t.header[0] == "l");
  for (const auto &row : t.rows)
    CHECK(row[7] > 1.0);
}

TEST_CASE("output is deterministic") {
  auto c = parse_config(kFig2);
  omp_set_num_threads(1);
  const std::string a = csv(c);
  const std::string b = csv(c);
  omp_set_num_threads(3);
  const std::string p = csv(c);
  omp_set_num_threads(omp_get_num_procs());
  CHECK(a == b);
  CHECK(a == p);
  CHECK(a.find("\r\n") != std::string::npos);
  CHECK(a.substr(0, 6) == "theta,");
}

TEST_CASE("csv numbers round-trip") {
  Table t;
  t.header = {"x", "y"};
  t.rows = {{0.1, -0.0}, {1.0 / 3.0, 1e-300}};
  std::ostringstream os;
  write_csv(t, os);
  CHECK(os.str() == "x,y\r\n0.1,0\r\n0.3333333333333333,1e-300\r\n");
}

TEST_CASE("overrides rebuild the scene") {
  const auto c = parse_config(kFig2);
  const auto d = with_override(c, "sphere.theta", "0.5");
  CHECK(d.theta == 0.5);
  CHECK(d.sweep);
  const auto e = with_override(c, "quadrature.rel_tol", "1e-6");
  CHECK(e.quadrature.rel_tol == 1e-6);
  CHECK_THROWS_AS(with_override(c, "sphere.theta", "5"), ConfigError);
}

TEST_CASE("selftest battery passes") {
  std::ostringstream log;
  CHECK(run_selftest(log) == 0);
  CHECK(log.str().find("PASS sphere") != std::string::npos);
}

}
