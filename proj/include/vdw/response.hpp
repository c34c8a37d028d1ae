#pragma once

#include <optional>

// Reduced units: frequencies u = xi / omega_ref, lengths in c / omega_ref,
// energies in hbar * omega_ref. Atom spectra are the dimensionless
//   a(u) = alpha(i xi) / (4 pi eps0 lambda^3),  b(u) = mu0 beta(i xi) / (4 pi lambda^3)
// so that the duality swap eps <-> mu, c^2 alpha <-> beta is a plain a <-> b.

namespace vdw {

/// Single Lorentz oscillator continued to imaginary frequency:
///   1 + plasma^2 / (transverse^2 + u^2 + damping * u).
struct Resonance {
  double plasma = 0.0;
  double transverse = 1.0;
  double damping = 0.0;

  double susceptibility(double u) const {
    return plasma * plasma / (transverse * transverse + u * u + damping * u);
  }

  friend bool operator==(const Resonance &, const Resonance &) = default;
};

enum class MaterialKind { vacuum, drude_lorentz, perfect_mirror };

/// Which response a perfect mirror drives to infinity. The dual of an
/// electric mirror (eps -> inf) is a magnetic one (mu -> inf).
enum class MirrorType { electric, magnetic };

class MaterialModel {
public:
  MaterialModel() = default;

  static MaterialModel vacuum() { return {}; }
  /// Either response may be absent, in which case it is identically 1.
  static MaterialModel drude_lorentz(std::optional<Resonance> electric,
                                     std::optional<Resonance> magnetic);
  static MaterialModel perfect_mirror(MirrorType type = MirrorType::electric);

  MaterialKind kind() const { return kind_; }
  MirrorType mirror_type() const { return mirror_; }
  bool is_vacuum() const;
  bool is_perfect_mirror() const { return kind_ == MaterialKind::perfect_mirror; }
  const std::optional<Resonance> &electric() const { return electric_; }
  const std::optional<Resonance> &magnetic() const { return magnetic_; }

  /// eps(iu) - 1 and mu(iu) - 1, without the cancellation of forming eps - 1.
  /// A perfect mirror returns +infinity for the diverging response.
  double eps_minus_one(double u) const;
  double mu_minus_one(double u) const;
  double eps(double u) const { return 1.0 + eps_minus_one(u); }
  double mu(double u) const { return 1.0 + mu_minus_one(u); }
  /// Refractive index sqrt(eps mu) on the imaginary axis.
  double index(double u) const;

  /// Electric and magnetic responses exchanged.
  MaterialModel dual() const;

  friend bool operator==(const MaterialModel &, const MaterialModel &) = default;

private:
  MaterialKind kind_ = MaterialKind::vacuum;
  MirrorType mirror_ = MirrorType::electric;
  std::optional<Resonance> electric_;
  std::optional<Resonance> magnetic_;
};

double eps_iu(const MaterialModel &m, double u);
double mu_iu(const MaterialModel &m, double u);

/// Two-level isotropic ground-state atom. a0 and b0 are the static
/// dimensionless polarisability and magnetisability; resonance is the
/// transition frequency in units of omega_ref.
struct AtomModel {
  double a0 = 0.0;
  double b0 = 0.0;
  double resonance = 1.0;

  double alpha(double u) const { return a0 * lorentzian(u); }
  double beta(double u) const { return b0 * lorentzian(u); }
  double lorentzian(double u) const {
    const double s = u / resonance;
    return 1.0 / (1.0 + s * s);
  }
  AtomModel dual() const { return {b0, a0, resonance}; }

  friend bool operator==(const AtomModel &, const AtomModel &) = default;
};

double atom_alpha_iu(const AtomModel &atom, double u);
double atom_beta_iu(const AtomModel &atom, double u);

/// Real-cavity local-field factors 3 eps/(2 eps + 1) and 3/(2 mu + 1).
double lf_electric(const MaterialModel &m, double u);
double lf_magnetic(const MaterialModel &m, double u);

/// Host medium for local-field corrections. The cavity radius drops out at
/// leading order and is not represented.
struct LocalFieldContext {
  MaterialModel host;
  bool enabled = true;

  double electric(double u) const { return enabled ? lf_electric(host, u) : 1.0; }
  double magnetic(double u) const { return enabled ? lf_magnetic(host, u) : 1.0; }
};

/// Throws DomainError unless the parameters describe a passive model
/// (non-negative plasma frequency and damping, positive transverse frequency).
void validate(const MaterialModel &m);
void validate(const AtomModel &a);

} // namespace vdw
