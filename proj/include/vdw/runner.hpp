#pragma once

#include "vdw/config.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace vdw {

/// Header and rows of one run, in sweep order.
struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};

/// Evaluates the configured scene, or every sweep point. Points run in
/// parallel; rows keep sweep order. Kernel errors propagate; when several
/// points fail, the first in sweep order wins.
Table run(const RunConfig &config);

/// RFC-4180 CSV with shortest round-trip numbers.
void write_csv(const Table &table, std::ostream &out);

/// Runs the invariant battery, one PASS/FAIL line per group. Returns the
/// number of failed groups.
int run_selftest(std::ostream &log);

} // namespace vdw
