#include "vdw/runner.hpp"

#include "vdw/errors.hpp"

#include <charconv>
#include <exception>
#include <ostream>

namespace vdw {

namespace {

std::string natural_column(const RunConfig &c) {
  switch (c.target) {
  case Command::halfspace:
    return "z";
  case Command::sphere:
    return c.linear ? "l" : "theta";
  default:
    return "l";
  }
}

double natural_value(const RunConfig &c) {
  switch (c.target) {
  case Command::freespace:
    return c.freespace_l;
  case Command::bulk:
    return c.bulk_l;
  case Command::halfspace:
    return c.halfspace_z;
  case Command::sphere:
    return c.linear ? c.sphere_l : c.theta;
  default:
    return 0.0;
  }
}

std::vector<std::string> header_for(const RunConfig &c, const std::string &var) {
  switch (c.target) {
  case Command::freespace:
  case Command::bulk:
    return {var, "u_ee", "u_em", "u_me", "u_mm", "total", "err_estimate"};
  case Command::halfspace:
    return {var, "u_e", "u_m", "total", "err_estimate"};
  case Command::sphere: {
    std::vector<std::string> h{var,      "u_ee_0",     "u_em_0",     "u_me_0",
                               "u_mm_0", "u_em_total", "u_me_total", "ratio_em",
                               "err_estimate"};
    if (c.include_ee_mm) {
      h.push_back("u_ee_b");
      h.push_back("u_mm_b");
    }
    return h;
  }
  default:
    throw DomainError("command has no scene to evaluate");
  }
}

std::vector<double> pair_row(double var, const PotentialBreakdown &p) {
  return {var, p.ee, p.em, p.me, p.mm, p.total, p.error()};
}

std::vector<double> evaluate(const RunConfig &c, double var) {
  QuadratureSpec spec = c.quadrature;
  switch (c.target) {
  case Command::freespace:
    return pair_row(var, freespace_pair_potential(c.atom_a, c.atom_b,
                                                  c.freespace_l, spec));
  case Command::bulk:
    return pair_row(var, bulk_pair_potential(c.bulk_scene(), spec));
  case Command::halfspace: {
    const auto h = halfspace_potential(c.halfspace_scene(), spec);
    return {var, h.ue, h.um, h.total, h.error()};
  }
  case Command::sphere: {
    const SphereScene s = c.sphere_scene();
    const auto free = freespace_pair_potential(s.atom_a, s.atom_b, s.separation(), spec);
    const auto em = sphere_Uem(s, spec, c.n_max);
    const auto me = sphere_Ume(s, spec, c.n_max);
    std::vector<double> row{var,      free.ee,  free.em,
                            free.me,  free.mm,  em.total,
                            me.total, em.total / free.em,
                            free.err_ee + free.err_mm + em.error + me.error};
    if (c.include_ee_mm) {
      const auto body = sphere_Uee_Umm_numeric(s, spec, c.n_max);
      row[8] += body.err_ee + body.err_mm;
      row.push_back(body.ee);
      row.push_back(body.mm);
    }
    return row;
  }
  default:
    throw DomainError("command has no scene to evaluate");
  }
}

void write_field(std::ostream &out, double v) {
  if (v == 0.0)
    v = 0.0; // no "-0"
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  out.write(buf, res.ptr - buf);
}

} // namespace

Table run(const RunConfig &config) {
  Table t;
  if (!config.sweep) {
    t.header = header_for(config, natural_column(config));
    t.rows.push_back(evaluate(config, natural_value(config)));
    return t;
  }

  const SweepSpec &sw = *config.sweep;
  t.header = header_for(config, sw.column());
  std::vector<RunConfig> points;
  points.reserve(sw.count);
  for (int i = 0; i < sw.count; ++i) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, sw.point(i));
    points.push_back(with_override(config, sw.key, std::string(buf, res.ptr)));
  }

  t.rows.assign(sw.count, {});
  std::vector<std::exception_ptr> errors(sw.count);
#pragma omp parallel for schedule(dynamic, 1)
  for (int i = 0; i < sw.count; ++i) {
    try {
      t.rows[i] = evaluate(points[i], sw.point(i));
    } catch (...) {
      errors[i] = std::current_exception();
    }
  }
  for (const auto &e : errors)
    if (e)
      std::rethrow_exception(e);
  return t;
}

void write_csv(const Table &table, std::ostream &out) {
  for (std::size_t i = 0; i < table.header.size(); ++i)
    out << (i ? "," : "") << table.header[i];
  out << "\r\n";
  for (const auto &row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i)
        out << ',';
      write_field(out, row[i]);
    }
    out << "\r\n";
  }
}

} // namespace vdw
