#pragma once

#include "vdw/quadrature.hpp"
#include "vdw/response.hpp"

namespace vdw {

/// Atom at distance z above the planar surface of a semi-infinite wall.
struct HalfSpaceScene {
  MaterialModel wall;
  AtomModel atom;
  double z = 1.0;
};

void validate(const HalfSpaceScene &scene);
/// Wall and atom replaced by their duals.
HalfSpaceScene dual(const HalfSpaceScene &scene);

/// s- and p-polarised reflection coefficients on the imaginary axis as
/// functions of v = c b / xi >= 1, for finite eps and mu.
double reflection_s(double eps_m1, double mu_m1, double v);
double reflection_p(double eps_m1, double mu_m1, double v);

struct HalfSpaceResult {
  double ue = 0.0, um = 0.0, total = 0.0;
  double err_ue = 0.0, err_um = 0.0;

  double error() const { return err_ue + err_um; }
};

/// Electric part with its quadrature error estimate.
QuadResult halfspace_electric(const HalfSpaceScene &scene,
                              const QuadratureSpec &spec = {});
double halfspace_Ue(const HalfSpaceScene &scene, const QuadratureSpec &spec = {});
/// Magnetic part: the electric part of the dual scene.
double halfspace_Um(const HalfSpaceScene &scene, const QuadratureSpec &spec = {});
HalfSpaceResult halfspace_potential(const HalfSpaceScene &scene,
                                    const QuadratureSpec &spec = {});

/// Leading z^-3 short-distance term.
double halfspace_Ue_nonretarded(const HalfSpaceScene &scene,
                                const QuadratureSpec &spec = {});
/// z^-4 long-distance form with static responses.
double halfspace_Ue_retarded(const HalfSpaceScene &scene,
                             const QuadratureSpec &spec = {});

} // namespace vdw
