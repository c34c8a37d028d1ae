#include "vdw/response.hpp"

#include "vdw/errors.hpp"

#include <cmath>
#include <limits>

namespace vdw {

MaterialModel MaterialModel::drude_lorentz(std::optional<Resonance> electric,
                                           std::optional<Resonance> magnetic) {
  MaterialModel m;
  m.kind_ = MaterialKind::drude_lorentz;
  m.electric_ = electric;
  m.magnetic_ = magnetic;
  return m;
}

MaterialModel MaterialModel::perfect_mirror(MirrorType type) {
  MaterialModel m;
  m.kind_ = MaterialKind::perfect_mirror;
  m.mirror_ = type;
  return m;
}

bool MaterialModel::is_vacuum() const {
  if (kind_ == MaterialKind::vacuum)
    return true;
  if (kind_ == MaterialKind::perfect_mirror)
    return false;
  const auto inert = [](const std::optional<Resonance> &r) {
    return !r || r->plasma == 0.0;
  };
  return inert(electric_) && inert(magnetic_);
}

double MaterialModel::eps_minus_one(double u) const {
  switch (kind_) {
  case MaterialKind::vacuum:
    return 0.0;
  case MaterialKind::perfect_mirror:
    return mirror_ == MirrorType::electric
               ? std::numeric_limits<double>::infinity()
               : 0.0;
  case MaterialKind::drude_lorentz:
    return electric_ ? electric_->susceptibility(u) : 0.0;
  }
  return 0.0;
}

double MaterialModel::mu_minus_one(double u) const {
  switch (kind_) {
  case MaterialKind::vacuum:
    return 0.0;
  case MaterialKind::perfect_mirror:
    return mirror_ == MirrorType::magnetic
               ? std::numeric_limits<double>::infinity()
               : 0.0;
  case MaterialKind::drude_lorentz:
    return magnetic_ ? magnetic_->susceptibility(u) : 0.0;
  }
  return 0.0;
}

double MaterialModel::index(double u) const { return std::sqrt(eps(u) * mu(u)); }

MaterialModel MaterialModel::dual() const {
  MaterialModel m = *this;
  m.electric_ = magnetic_;
  m.magnetic_ = electric_;
  m.mirror_ = mirror_ == MirrorType::electric ? MirrorType::magnetic
                                              : MirrorType::electric;
  return m;
}

double eps_iu(const MaterialModel &m, double u) { return m.eps(u); }
double mu_iu(const MaterialModel &m, double u) { return m.mu(u); }

double atom_alpha_iu(const AtomModel &atom, double u) { return atom.alpha(u); }
double atom_beta_iu(const AtomModel &atom, double u) { return atom.beta(u); }

double lf_electric(const MaterialModel &m, double u) {
  const double e = m.eps(u);
  if (std::isinf(e))
    return 1.5;
  return 3.0 * e / (2.0 * e + 1.0);
}

double lf_magnetic(const MaterialModel &m, double u) {
  const double mu = m.mu(u);
  if (std::isinf(mu))
    return 0.0;
  return 3.0 / (2.0 * mu + 1.0);
}

namespace {
void validate_resonance(const std::optional<Resonance> &r, const char *which) {
  if (!r)
    return;
  if (!(r->plasma >= 0.0) || !(r->transverse > 0.0) || !(r->damping >= 0.0) ||
      !std::isfinite(r->plasma) || !std::isfinite(r->transverse) ||
      !std::isfinite(r->damping))
    throw DomainError(std::string(which) +
                      " resonance needs plasma >= 0, transverse > 0, damping >= 0");
}
} // namespace

void validate(const MaterialModel &m) {
  validate_resonance(m.electric(), "electric");
  validate_resonance(m.magnetic(), "magnetic");
}

void validate(const AtomModel &a) {
  if (!(a.a0 >= 0.0) || !(a.b0 >= 0.0) || !std::isfinite(a.a0) ||
      !std::isfinite(a.b0))
    throw DomainError("atom needs finite a0 >= 0 and b0 >= 0");
  if (!(a.resonance > 0.0) || !std::isfinite(a.resonance))
    throw DomainError("atom resonance must be positive");
}

} // namespace vdw
