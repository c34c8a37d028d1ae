#pragma once

#include "vdw/quadrature.hpp"
#include "vdw/response.hpp"

namespace vdw {

/// Default cap on the multipole order of the sphere series.
inline constexpr int kDefaultSeriesCap = 200000;

/// Two atoms outside a homogeneous sphere centred at the origin. theta is
/// the angle between the two position vectors as seen from the centre.
struct SphereScene {
  MaterialModel sphere;
  double radius = 1.0;
  AtomModel atom_a;
  AtomModel atom_b;
  double r_a = 2.0;
  double r_b = 2.0;
  double theta = 0.0;

  /// Atom-atom distance.
  double separation() const;
  /// Component of l along r_A, r_B cos(theta) - r_A.
  double l_a() const;
  /// Component of l along -r_B, r_A cos(theta) - r_B.
  double l_b() const;
};

void validate(const SphereScene &scene);
SphereScene dual(const SphereScene &scene);
SphereScene exchange(const SphereScene &scene);

/// Real imaginary-frequency Mie coefficients B_n^M and B_n^N.
struct MieCoefficients {
  double bm = 0.0;
  double bn = 0.0;
};
MieCoefficients mie_coefficients(const MaterialModel &sphere, double radius,
                                 double u, int n);

/// Non-zero spherical components of a single-curl tensor, rows in the
/// basis at r_B and columns in the basis at r_A.
struct KComponents {
  double r_phi = 0.0;
  double theta_phi = 0.0;
  double phi_r = 0.0;
  double phi_theta = 0.0;
};

struct KTensor {
  KComponents free;      // K^(0)
  KComponents scattered; // K^(1)
  int terms = 0;         // multipole orders summed
  double tail = 0.0;     // estimated relative truncation error
};

/// K^(0) and K^(1) at r_B, r_A and frequency iu. The series is extended
/// until its estimated tail falls below rel_tol; ConvergenceError if that
/// needs more than n_max orders.
KTensor k_tensor_components(const SphereScene &scene, double u,
                            int n_max = kDefaultSeriesCap, double rel_tol = 1e-11);
/// Free-space part only.
KComponents k0_components(const SphereScene &scene, double u);

/// Non-zero spherical components of a Green tensor in the same bases.
struct GComponents {
  double rr = 0.0;
  double r_theta = 0.0;
  double theta_r = 0.0;
  double theta_theta = 0.0;
  double phi_phi = 0.0;
};

GComponents g0_components(const SphereScene &scene, double u);
/// Scattering part of the Green tensor.
GComponents g1_components(const SphereScene &scene, double u,
                          int n_max = kDefaultSeriesCap, double rel_tol = 1e-11);

/// Mixed electric-magnetic potential near the sphere: free-space part u0,
/// cross term u1 and pure scattering term u2.
struct SphereMixed {
  double u0 = 0.0, u1 = 0.0, u2 = 0.0;
  double total = 0.0;
  double error = 0.0;
};

SphereMixed sphere_Uem(const SphereScene &scene, const QuadratureSpec &spec = {},
                       int n_max = kDefaultSeriesCap);
/// Magnetic A, electric B: sphere_Uem of the exchanged scene.
SphereMixed sphere_Ume(const SphereScene &scene, const QuadratureSpec &spec = {},
                       int n_max = kDefaultSeriesCap);

/// Cross term from the component-wise trace of K^(0) and K^(1).
QuadResult sphere_Uem1_trace(const SphereScene &scene, const QuadratureSpec &spec = {},
                             int n_max = kDefaultSeriesCap);
/// Scattering term from the literal double series, serial quadrature.
QuadResult sphere_Uem2_reference(const SphereScene &scene,
                                 const QuadratureSpec &spec = {},
                                 int n_max = kDefaultSeriesCap);

/// Body-induced electric-electric and magnetic-magnetic parts from the
/// numeric trace of the Green tensor.
struct SphereBody {
  double ee = 0.0, mm = 0.0;
  double err_ee = 0.0, err_mm = 0.0;
};
SphereBody sphere_Uee_Umm_numeric(const SphereScene &scene,
                                  const QuadratureSpec &spec = {},
                                  int n_max = kDefaultSeriesCap);

/// Body-induced mixed potential, large-sphere closed form. DomainError
/// unless (r - R)/R < 0.1 for both atoms and l/R < 0.1.
double sphere_Uem_large(const SphereScene &scene, const QuadratureSpec &spec = {});

/// Body-induced mixed potential, dipolar small-sphere form. DomainError
/// unless R/r < 0.1 for both atoms.
double sphere_Uem_small(const SphereScene &scene, const QuadratureSpec &spec = {});

/// Small-sphere form with the sphere replaced by a third atom C whose
/// reduced polarisability and magnetisability are alpha_c(u), beta_c(u)
/// (the sphere itself is R^3 (eps-1)/(eps+2), R^3 (mu-1)/(mu+2)). Only the
/// geometry and the atoms of `geometry` are used.
double three_body_em(const SphereScene &geometry,
                     const std::function<double(double)> &alpha_c,
                     const std::function<double(double)> &beta_c,
                     const QuadratureSpec &spec = {});

} // namespace vdw
