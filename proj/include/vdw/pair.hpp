#pragma once

#include "vdw/quadrature.hpp"
#include "vdw/response.hpp"

namespace vdw {

/// Four-channel potential in units of hbar * omega_ref. err_* are the
/// quadrature error estimates of the channels in the same units.
struct PotentialBreakdown {
  double ee = 0.0, em = 0.0, me = 0.0, mm = 0.0;
  double total = 0.0;
  double err_ee = 0.0, err_em = 0.0, err_me = 0.0, err_mm = 0.0;

  double error() const { return err_ee + err_em + err_me + err_mm; }
};

/// Two atoms a distance `separation` apart inside an unbounded host.
struct BulkScene {
  MaterialModel host;
  AtomModel atom_a;
  AtomModel atom_b;
  double separation = 1.0;
  /// Real-cavity local-field correction.
  bool local_field = true;

  LocalFieldContext lf() const { return {host, local_field}; }
};

/// Throws DomainError for a non-positive separation, a perfect-mirror host
/// or invalid material/atom parameters.
void validate(const BulkScene &scene);

/// Host and atoms replaced by their duals (eps <-> mu, a <-> b).
BulkScene dual(const BulkScene &scene);
/// Atoms A and B interchanged.
BulkScene exchange(const BulkScene &scene);

double g_kernel(double x);
double h_kernel(double x);

// Medium factors multiplying the free-space integrands.
double medium_factor_ee(double eps, bool local_field = true);
double medium_factor_em(double eps, double mu, bool local_field = true);
double medium_factor_mm(double mu, bool local_field = true);

PotentialBreakdown bulk_pair_potential(const BulkScene &scene,
                                       const QuadratureSpec &spec = {});
/// Leading short-distance forms (g -> 3, h -> 1); ee and mm scale as l^-6,
/// em and me as l^-4.
PotentialBreakdown bulk_pair_nonretarded(const BulkScene &scene,
                                         const QuadratureSpec &spec = {});
/// Long-distance l^-7 forms with static responses; no quadrature.
PotentialBreakdown bulk_pair_retarded(const BulkScene &scene);

PotentialBreakdown freespace_pair_potential(const AtomModel &atom_a,
                                            const AtomModel &atom_b, double l,
                                            const QuadratureSpec &spec = {});

} // namespace vdw
