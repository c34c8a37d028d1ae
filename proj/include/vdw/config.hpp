#pragma once

#include "vdw/halfspace.hpp"
#include "vdw/pair.hpp"
#include "vdw/quadrature.hpp"
#include "vdw/sphere.hpp"

#include <map>
#include <optional>
#include <string>
#include <string_view>

namespace vdw {

enum class Command { freespace, bulk, halfspace, sphere, sweep, selftest };

std::string_view to_string(Command c);
/// Empty optional for an unknown name.
std::optional<Command> parse_command(std::string_view name);

enum class Spacing { linear, log };

struct SweepSpec {
  /// Scene evaluated at every point: freespace, bulk, halfspace or sphere.
  Command target = Command::freespace;
  /// Fully qualified key, e.g. "sphere.theta".
  std::string key;
  double start = 0.0;
  double stop = 1.0;
  int count = 2;
  Spacing spacing = Spacing::linear;

  double point(int i) const;
  /// Short column name (the part after the last dot).
  std::string column() const;
};

/// One value with the line it came from (0 for overrides).
struct ConfigEntry {
  std::string value;
  int line = 0;
};

struct RunConfig {
  Command command = Command::selftest;
  /// Scene evaluated by run(); equals command unless command is sweep.
  Command target = Command::selftest;

  // Scene data for the target. host doubles as the wall and the sphere.
  MaterialModel host;
  AtomModel atom_a;
  AtomModel atom_b;
  double freespace_l = 1.0;
  double bulk_l = 1.0;
  bool local_field = true;
  double halfspace_z = 1.0;
  double radius = 1.0;
  double r_a = 2.0;
  double r_b = 2.0;
  double theta = 0.0;
  /// Linear arrangement: theta = 0, r_b = r_a + sphere.l.
  bool linear = false;
  double sphere_l = 1.0;
  bool include_ee_mm = false;

  std::optional<SweepSpec> sweep;
  QuadratureSpec quadrature;
  int n_max = kDefaultSeriesCap;
  /// Empty means standard output.
  std::string output;

  /// Raw validated entries, used to rebuild the scene at each sweep point.
  std::map<std::string, ConfigEntry> entries;

  BulkScene bulk_scene() const;
  HalfSpaceScene halfspace_scene() const;
  SphereScene sphere_scene() const;
};

/// Parses a key = value document. '#' starts a comment. Throws ConfigError
/// naming the line and key for unknown keys, malformed values, values out of
/// range and keys missing for the chosen command. `command` fills in for a
/// document without a command line.
RunConfig parse_config(std::string_view text,
                       std::optional<Command> command = std::nullopt);

/// Rebuilds the config with `key` set to `value`; used for sweep points and
/// command-line overrides. Throws ConfigError like parse_config.
RunConfig with_override(const RunConfig &config, const std::string &key,
                        const std::string &value);

} // namespace vdw
