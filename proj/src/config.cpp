#include "vdw/config.hpp"

#include "vdw/errors.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <numbers>
#include <set>
#include <sstream>

namespace vdw {

namespace {

enum class Kind { real, integer, boolean, word };

struct KeyInfo {
  std::string_view name;
  Kind kind;
};

constexpr std::array kKeys{
    KeyInfo{"command", Kind::word},
    KeyInfo{"host.variant", Kind::word},
    KeyInfo{"host.wpe", Kind::real},
    KeyInfo{"host.wte", Kind::real},
    KeyInfo{"host.ge", Kind::real},
    KeyInfo{"host.wpm", Kind::real},
    KeyInfo{"host.wtm", Kind::real},
    KeyInfo{"host.gm", Kind::real},
    KeyInfo{"host.mirror", Kind::word},
    KeyInfo{"atom_a.a0", Kind::real},
    KeyInfo{"atom_a.b0", Kind::real},
    KeyInfo{"atom_a.resonance", Kind::real},
    KeyInfo{"atom_b.a0", Kind::real},
    KeyInfo{"atom_b.b0", Kind::real},
    KeyInfo{"atom_b.resonance", Kind::real},
    KeyInfo{"freespace.l", Kind::real},
    KeyInfo{"bulk.l", Kind::real},
    KeyInfo{"bulk.local_field", Kind::boolean},
    KeyInfo{"halfspace.z", Kind::real},
    KeyInfo{"sphere.radius_R", Kind::real},
    KeyInfo{"sphere.r_a", Kind::real},
    KeyInfo{"sphere.r_b", Kind::real},
    KeyInfo{"sphere.theta", Kind::real},
    KeyInfo{"sphere.arrangement", Kind::word},
    KeyInfo{"sphere.l", Kind::real},
    KeyInfo{"sphere.include_ee_mm", Kind::boolean},
    KeyInfo{"sweep.target", Kind::word},
    KeyInfo{"sweep.variable", Kind::word},
    KeyInfo{"sweep.start", Kind::real},
    KeyInfo{"sweep.stop", Kind::real},
    KeyInfo{"sweep.count", Kind::integer},
    KeyInfo{"sweep.spacing", Kind::word},
    KeyInfo{"quadrature.rel_tol", Kind::real},
    KeyInfo{"quadrature.abs_tol", Kind::real},
    KeyInfo{"quadrature.max_subdivisions", Kind::integer},
    KeyInfo{"quadrature.transform", Kind::word},
    KeyInfo{"series.n_max", Kind::integer},
    KeyInfo{"output.path", Kind::word},
};

const KeyInfo *find_key(std::string_view name) {
  for (const auto &k : kKeys)
    if (k.name == name)
      return &k;
  return nullptr;
}

std::string_view trim(std::string_view s) {
  const auto ws = " \t\r\n\f\v";
  const auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos)
    return {};
  const auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

std::string_view section_of(std::string_view key) {
  const auto dot = key.find('.');
  return dot == std::string_view::npos ? std::string_view{} : key.substr(0, dot);
}

[[noreturn]] void fail(int line, const std::string &key, const std::string &msg) {
  throw ConfigError(line, key, msg);
}

class Reader {
public:
  explicit Reader(const std::map<std::string, ConfigEntry> &e) : e_(e) {}

  bool has(const std::string &key) const { return e_.count(key) != 0; }
  int line(const std::string &key) const {
    const auto it = e_.find(key);
    return it == e_.end() ? 0 : it->second.line;
  }

  double real(const std::string &key, double fallback) const {
    const auto it = e_.find(key);
    if (it == e_.end())
      return fallback;
    const std::string_view v = it->second.value;
    if (v == "pi")
      return std::numbers::pi;
    double out = 0.0;
    const auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc{} || p != v.data() + v.size() || !std::isfinite(out))
      fail(it->second.line, key, "expected a finite real number, got '" +
                                     it->second.value + "'");
    return out;
  }

  long integer(const std::string &key, long fallback) const {
    const auto it = e_.find(key);
    if (it == e_.end())
      return fallback;
    const std::string_view v = it->second.value;
    long out = 0;
    const auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc{} || p != v.data() + v.size())
      fail(it->second.line, key, "expected an integer, got '" + it->second.value + "'");
    return out;
  }

  bool boolean(const std::string &key, bool fallback) const {
    const auto it = e_.find(key);
    if (it == e_.end())
      return fallback;
    const auto &v = it->second.value;
    if (v == "true" || v == "yes" || v == "on" || v == "1")
      return true;
    if (v == "false" || v == "no" || v == "off" || v == "0")
      return false;
    fail(it->second.line, key, "expected true or false, got '" + v + "'");
  }

  std::string word(const std::string &key, const std::string &fallback) const {
    const auto it = e_.find(key);
    return it == e_.end() ? fallback : it->second.value;
  }

  // Value checks with the key's own line.
  double positive(const std::string &key, double fallback) const {
    const double v = real(key, fallback);
    if (!(v > 0.0))
      fail(line(key), key, key + " must be positive");
    return v;
  }
  double non_negative(const std::string &key, double fallback) const {
    const double v = real(key, fallback);
    if (!(v >= 0.0))
      fail(line(key), key, key + " must not be negative");
    return v;
  }

private:
  const std::map<std::string, ConfigEntry> &e_;
};

std::optional<Resonance> read_resonance(const Reader &r, const std::string &wp,
                                        const std::string &wt, const std::string &g) {
  if (!r.has(wp)) {
    for (const auto &k : {wt, g})
      if (r.has(k))
        fail(r.line(k), k, k + " needs " + wp);
    return std::nullopt;
  }
  Resonance res;
  res.plasma = r.non_negative(wp, 0.0);
  res.transverse = r.positive(wt, 1.0);
  res.damping = r.non_negative(g, 0.0);
  return res;
}

MaterialModel read_host(const Reader &r) {
  static const std::array<std::string, 6> resonance_keys{
      "host.wpe", "host.wte", "host.ge", "host.wpm", "host.wtm", "host.gm"};
  bool any_resonance = false;
  for (const auto &k : resonance_keys)
    any_resonance = any_resonance || r.has(k);

  const std::string variant =
      r.word("host.variant", any_resonance ? "drude_lorentz" : "vacuum");
  if (variant != "perfect_mirror" && r.has("host.mirror"))
    fail(r.line("host.mirror"), "host.mirror",
         "host.mirror needs host.variant = perfect_mirror");

  if (variant == "vacuum" || variant == "perfect_mirror") {
    for (const auto &k : resonance_keys)
      if (r.has(k))
        fail(r.line(k), k, k + " needs host.variant = drude_lorentz");
    if (variant == "vacuum")
      return MaterialModel::vacuum();
    const std::string type = r.word("host.mirror", "electric");
    if (type == "electric")
      return MaterialModel::perfect_mirror(MirrorType::electric);
    if (type == "magnetic")
      return MaterialModel::perfect_mirror(MirrorType::magnetic);
    fail(r.line("host.mirror"), "host.mirror",
         "host.mirror must be electric or magnetic, got '" + type + "'");
  }
  if (variant != "drude_lorentz")
    fail(r.line("host.variant"), "host.variant",
         "host.variant must be vacuum, drude_lorentz or perfect_mirror, got '" +
             variant + "'");
  return MaterialModel::drude_lorentz(
      read_resonance(r, "host.wpe", "host.wte", "host.ge"),
      read_resonance(r, "host.wpm", "host.wtm", "host.gm"));
}

AtomModel read_atom(const Reader &r, const std::string &name) {
  AtomModel a;
  a.a0 = r.non_negative(name + ".a0", 0.0);
  a.b0 = r.non_negative(name + ".b0", 0.0);
  a.resonance = r.positive(name + ".resonance", 1.0);
  return a;
}

bool is_scene(Command c) {
  return c == Command::freespace || c == Command::bulk ||
         c == Command::halfspace || c == Command::sphere;
}

// Section whose keys belong to a scene command.
bool section_allowed(std::string_view section, Command target) {
  if (section == "freespace" || section == "bulk" || section == "halfspace" ||
      section == "sphere")
    return section == to_string(target);
  if (section == "host")
    return target != Command::freespace;
  if (section == "atom_b")
    return target != Command::halfspace;
  return true;
}

void require(const Reader &r, const std::string &key, Command target) {
  if (!r.has(key))
    fail(0, key, "missing " + key + " required by command " +
                     std::string(to_string(target)));
}

void require_atom(const Reader &r, const std::string &name, Command target) {
  if (!r.has(name + ".a0") && !r.has(name + ".b0"))
    fail(0, name + ".a0",
         "missing " + name + ".a0 or " + name + ".b0 required by command " +
             std::string(to_string(target)));
}

Spacing read_spacing(const Reader &r) {
  const std::string s = r.word("sweep.spacing", "linear");
  if (s == "linear")
    return Spacing::linear;
  if (s == "log")
    return Spacing::log;
  fail(r.line("sweep.spacing"), "sweep.spacing",
       "sweep.spacing must be linear or log, got '" + s + "'");
}

Transform read_transform(const Reader &r) {
  const std::string s = r.word("quadrature.transform", "rational");
  if (s == "rational")
    return Transform::rational;
  if (s == "exponential")
    return Transform::exponential;
  fail(r.line("quadrature.transform"), "quadrature.transform",
       "quadrature.transform must be rational or exponential, got '" + s + "'");
}

// Everything except the sweep bounds; the swept key is supplied by the caller.
RunConfig build(const std::map<std::string, ConfigEntry> &entries) {
  const Reader r(entries);
  RunConfig c;
  c.entries = entries;

  if (!r.has("command"))
    fail(0, "command", "missing command");
  const auto cmd = parse_command(r.word("command", ""));
  if (!cmd)
    fail(r.line("command"), "command",
         "unknown command '" + r.word("command", "") + "'");
  c.command = *cmd;

  if (c.command == Command::sweep) {
    if (!r.has("sweep.target"))
      fail(0, "sweep.target", "missing sweep.target required by command sweep");
    const auto t = parse_command(r.word("sweep.target", ""));
    if (!t || !is_scene(*t))
      fail(r.line("sweep.target"), "sweep.target",
           "sweep.target must be freespace, bulk, halfspace or sphere");
    c.target = *t;
  } else {
    c.target = c.command;
    if (r.has("sweep.target") && r.word("sweep.target", "") != to_string(c.target))
      fail(r.line("sweep.target"), "sweep.target",
           "sweep.target differs from command");
  }

  if (c.command == Command::selftest) {
    for (const auto &[key, e] : entries) {
      const auto sec = section_of(key);
      if (key != "command" && sec != "quadrature" && sec != "series" &&
          sec != "output")
        fail(e.line, key, key + " is not used by command selftest");
    }
  } else {
    for (const auto &[key, e] : entries)
      if (!section_allowed(section_of(key), c.target))
        fail(e.line, key,
             key + " is not used by command " + std::string(to_string(c.target)));
  }

  c.quadrature.rel_tol = r.real("quadrature.rel_tol", c.quadrature.rel_tol);
  if (!(c.quadrature.rel_tol > 0.0 && c.quadrature.rel_tol < 1.0))
    fail(r.line("quadrature.rel_tol"), "quadrature.rel_tol",
         "quadrature.rel_tol must lie in (0, 1)");
  c.quadrature.abs_tol = r.non_negative("quadrature.abs_tol", c.quadrature.abs_tol);
  const long subdiv =
      r.integer("quadrature.max_subdivisions", c.quadrature.max_subdivisions);
  if (subdiv < 10 || subdiv > 10000000)
    fail(r.line("quadrature.max_subdivisions"), "quadrature.max_subdivisions",
         "quadrature.max_subdivisions must lie in [10, 1e7]");
  c.quadrature.max_subdivisions = static_cast<int>(subdiv);
  c.quadrature.transform = read_transform(r);

  const long n_max = r.integer("series.n_max", c.n_max);
  if (n_max < 20 || n_max > 100000000)
    fail(r.line("series.n_max"), "series.n_max", "series.n_max must lie in [20, 1e8]");
  c.n_max = static_cast<int>(n_max);
  c.output = r.word("output.path", "");

  if (c.command == Command::selftest)
    return c;

  for (const auto &k : {"freespace.l", "bulk.l", "halfspace.z", "sphere.radius_R",
                        "sphere.r_a", "sphere.r_b", "sphere.l"})
    if (r.has(k))
      r.positive(k, 1.0);
  if (r.has("sphere.theta")) {
    const double t = r.real("sphere.theta", 0.0);
    if (!(t >= 0.0 && t <= std::numbers::pi))
      fail(r.line("sphere.theta"), "sphere.theta", "sphere.theta must lie in [0, pi]");
  }

  c.host = read_host(r);
  c.atom_a = read_atom(r, "atom_a");
  c.atom_b = read_atom(r, "atom_b");
  require_atom(r, "atom_a", c.target);
  if (c.target != Command::halfspace)
    require_atom(r, "atom_b", c.target);

  switch (c.target) {
  case Command::freespace:
    require(r, "freespace.l", c.target);
    c.freespace_l = r.positive("freespace.l", 1.0);
    break;
  case Command::bulk:
    require(r, "bulk.l", c.target);
    c.bulk_l = r.positive("bulk.l", 1.0);
    c.local_field = r.boolean("bulk.local_field", true);
    if (c.host.is_perfect_mirror())
      fail(r.line("host.variant"), "host.variant",
           "a perfect mirror cannot be a host medium");
    break;
  case Command::halfspace:
    require(r, "halfspace.z", c.target);
    c.halfspace_z = r.positive("halfspace.z", 1.0);
    break;
  case Command::sphere: {
    require(r, "sphere.radius_R", c.target);
    require(r, "sphere.r_a", c.target);
    c.radius = r.positive("sphere.radius_R", 1.0);
    c.r_a = r.positive("sphere.r_a", 2.0);
    c.include_ee_mm = r.boolean("sphere.include_ee_mm", false);
    const std::string arrangement = r.word("sphere.arrangement", "general");
    if (arrangement == "linear") {
      for (const auto &k : {"sphere.r_b", "sphere.theta"})
        if (r.has(k))
          fail(r.line(k), k, std::string(k) + " conflicts with sphere.arrangement = linear");
      require(r, "sphere.l", c.target);
      c.linear = true;
      c.sphere_l = r.positive("sphere.l", 1.0);
      c.r_b = c.r_a + c.sphere_l;
      c.theta = 0.0;
    } else if (arrangement == "general") {
      if (r.has("sphere.l"))
        fail(r.line("sphere.l"), "sphere.l", "sphere.l needs sphere.arrangement = linear");
      require(r, "sphere.r_b", c.target);
      require(r, "sphere.theta", c.target);
      c.r_b = r.positive("sphere.r_b", 2.0);
      c.theta = r.real("sphere.theta", 0.0);
      if (!(c.theta >= 0.0 && c.theta <= std::numbers::pi))
        fail(r.line("sphere.theta"), "sphere.theta", "sphere.theta must lie in [0, pi]");
      if (c.theta == 0.0 && c.r_a == c.r_b)
        fail(r.line("sphere.r_b"), "sphere.r_b", "the two atoms coincide");
    } else {
      fail(r.line("sphere.arrangement"), "sphere.arrangement",
           "sphere.arrangement must be general or linear, got '" + arrangement + "'");
    }
    if (!(c.r_a > c.radius))
      fail(r.line("sphere.r_a"), "sphere.r_a", "atom A must lie outside the sphere");
    if (!(c.r_b > c.radius))
      fail(r.line(c.linear ? "sphere.l" : "sphere.r_b"),
           c.linear ? "sphere.l" : "sphere.r_b", "atom B must lie outside the sphere");
    break;
  }
  default:
    break;
  }
  return c;
}

std::string format_real(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

} // namespace

std::string_view to_string(Command c) {
  switch (c) {
  case Command::freespace:
    return "freespace";
  case Command::bulk:
    return "bulk";
  case Command::halfspace:
    return "halfspace";
  case Command::sphere:
    return "sphere";
  case Command::sweep:
    return "sweep";
  case Command::selftest:
    return "selftest";
  }
  return "?";
}

std::optional<Command> parse_command(std::string_view name) {
  for (auto c : {Command::freespace, Command::bulk, Command::halfspace,
                 Command::sphere, Command::sweep, Command::selftest})
    if (to_string(c) == name)
      return c;
  return std::nullopt;
}

double SweepSpec::point(int i) const {
  if (i == 0)
    return start;
  if (i == count - 1)
    return stop;
  const double t = static_cast<double>(i) / (count - 1);
  if (spacing == Spacing::log)
    return std::exp(std::log(start) + t * (std::log(stop) - std::log(start)));
  return start + t * (stop - start);
}

std::string SweepSpec::column() const {
  const auto dot = key.rfind('.');
  return dot == std::string::npos ? key : key.substr(dot + 1);
}

BulkScene RunConfig::bulk_scene() const {
  BulkScene s;
  s.host = host;
  s.atom_a = atom_a;
  s.atom_b = atom_b;
  s.separation = bulk_l;
  s.local_field = local_field;
  return s;
}

HalfSpaceScene RunConfig::halfspace_scene() const {
  return {host, atom_a, halfspace_z};
}

SphereScene RunConfig::sphere_scene() const {
  SphereScene s;
  s.sphere = host;
  s.radius = radius;
  s.atom_a = atom_a;
  s.atom_b = atom_b;
  s.r_a = r_a;
  s.r_b = r_b;
  s.theta = theta;
  return s;
}

RunConfig parse_config(std::string_view text, std::optional<Command> command) {
  std::map<std::string, ConfigEntry> entries;
  int line_no = 0;
  while (!text.empty()) {
    ++line_no;
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);

    if (const auto hash = line.find('#'); hash != std::string_view::npos)
      line = line.substr(0, hash);
    line = trim(line);
    if (line.empty())
      continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos)
      fail(line_no, std::string(line), "expected key = value");
    const std::string key(trim(line.substr(0, eq)));
    const std::string value(trim(line.substr(eq + 1)));
    if (key.empty())
      fail(line_no, key, "empty key");
    if (!find_key(key))
      fail(line_no, key, "unknown key " + key);
    if (value.empty())
      fail(line_no, key, "empty value for " + key);
    if (const auto it = entries.find(key); it != entries.end())
      fail(line_no, key,
           "duplicate key " + key + " (first set on line " +
               std::to_string(it->second.line) + ")");
    entries.emplace(key, ConfigEntry{value, line_no});
  }
  if (command && !entries.count("command"))
    entries.emplace("command", ConfigEntry{std::string(to_string(*command)), 0});

  // Type checks for keys the command does not read are still wanted.
  const Reader r(entries);
  for (const auto &[key, e] : entries) {
    switch (find_key(key)->kind) {
    case Kind::real:
      r.real(key, 0.0);
      break;
    case Kind::integer:
      r.integer(key, 0);
      break;
    case Kind::boolean:
      r.boolean(key, false);
      break;
    case Kind::word:
      break;
    }
  }

  const bool has_sweep = std::any_of(entries.begin(), entries.end(), [](const auto &kv) {
    return section_of(kv.first) == "sweep";
  });
  const std::string cmd_word = r.word("command", "");
  if (!has_sweep || cmd_word == "selftest")
    return build(entries);
  if (!r.has("sweep.variable"))
    fail(0, "sweep.variable", "missing sweep.variable");

  // The target decides which short variable names resolve where.
  auto probe = entries;
  RunConfig head;
  std::string target;
  if (cmd_word == "sweep")
    target = r.word("sweep.target", "");
  else
    target = cmd_word;
  const auto target_cmd = parse_command(target);
  if (!target_cmd || !is_scene(*target_cmd)) {
    if (cmd_word == "sweep" && !r.has("sweep.target"))
      fail(0, "sweep.target", "missing sweep.target required by command sweep");
    fail(r.line(cmd_word == "sweep" ? "sweep.target" : "command"),
         cmd_word == "sweep" ? "sweep.target" : "command",
         "a sweep needs a freespace, bulk, halfspace or sphere scene");
  }

  SweepSpec sw;
  sw.target = *target_cmd;
  std::string var = r.word("sweep.variable", "");
  if (var.find('.') == std::string::npos)
    var = std::string(target) + "." + var;
  const KeyInfo *info = find_key(var);
  if (!info || info->kind != Kind::real || section_of(var) == "sweep" ||
      section_of(var) == "quadrature" || !section_allowed(section_of(var), sw.target))
    fail(r.line("sweep.variable"), "sweep.variable",
         "sweep.variable '" + r.word("sweep.variable", "") +
             "' does not name a numeric field of the " + target + " scene");
  if (entries.count(var))
    fail(entries.at(var).line, var, var + " is also set by the sweep");
  sw.key = var;

  for (const auto &k : {"sweep.start", "sweep.stop", "sweep.count"})
    if (!r.has(k))
      fail(0, k, std::string("missing ") + k);
  sw.start = r.real("sweep.start", 0.0);
  sw.stop = r.real("sweep.stop", 0.0);
  const long count = r.integer("sweep.count", 0);
  if (count < 2 || count > 1000000)
    fail(r.line("sweep.count"), "sweep.count", "sweep.count must lie in [2, 1e6]");
  sw.count = static_cast<int>(count);
  sw.spacing = read_spacing(r);
  if (sw.spacing == Spacing::log && !(sw.start > 0.0 && sw.stop > 0.0))
    fail(r.line("sweep.spacing"), "sweep.spacing",
         "log spacing needs positive sweep.start and sweep.stop");

  // Both bounds must give valid scenes; monotone ranges cover the interior.
  for (const auto &bound : {"sweep.start", "sweep.stop"}) {
    probe[var] = ConfigEntry{format_real(r.real(bound, 0.0)), 0};
    try {
      head = build(probe);
    } catch (const ConfigError &e) {
      if (e.key() == var || e.line() == 0)
        fail(r.line(bound), bound, e.what());
      throw;
    }
  }
  probe[var] = ConfigEntry{format_real(sw.start), 0};
  head = build(probe);
  head.entries = entries;
  head.sweep = sw;
  return head;
}

RunConfig with_override(const RunConfig &config, const std::string &key,
                        const std::string &value) {
  if (!find_key(key))
    fail(0, key, "unknown key " + key);
  auto kept = config.entries;
  if (!config.sweep || key != config.sweep->key)
    kept[key] = ConfigEntry{value, 0};
  auto entries = kept;
  if (config.sweep)
    entries[config.sweep->key] =
        ConfigEntry{key == config.sweep->key ? value : format_real(config.sweep->start), 0};
  RunConfig out = build(entries);
  out.entries = std::move(kept);
  out.sweep = config.sweep;
  return out;
}

} // namespace vdw
