#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "rictube/profile.hpp"
#include "rictube/report.hpp"

namespace rictube {

/// Numeric shape of a singular tube.  q is the Hopf fiber sphere dimension
/// (1 for a circle, 3 for SU(2)); the base projective space has real
/// dimension 2m (q=1) or 4m (q=3); the sphere cross-section has dimension
/// n = dimP + q.  eps0, when supplied, is an asserted (not computed) upper
/// bound for eps.
struct TubeParams {
  int q = 1;
  int m = 1;
  double eps = 1.0;
  double nu = 0.1;
  double lambda = 1.0;
  double Lambda = 0.3;
  double iota = 0.0;  // <= 0 means "choose automatically at design time"
  std::optional<double> eps0;

  int dimP() const { return q == 1 ? 2 * m : 4 * m; }
  int n() const { return dimP() + q; }
  void validate() const;
};

/// Diagonal Ricci components of the doubly warped disc metric
/// dr^2 + h^2(r) g_P + f^2(r) ds_q^2 in the orthonormal frame
/// {radial, horizontal, fiber}.  Mixed terms vanish identically.
struct DoublyWarpedRicci {
  double radial = 0.0;
  double horizontal = 0.0;
  double fiber = 0.0;
  double mixed = 0.0;
};

/// Einstein constant of the Fubini-Study metric on the Hopf base:
/// 2m+2 for the complex projective space, 4m+8 for the quaternionic one.
double einstein_constant(int q, int m);

/// Invariants of the A-tensor of the unit-round Hopf fibration:
/// |Av*|^2 = dim P, |AY|^2 = q, and the divergence pairing vanishes.
struct HopfATensor {
  double Av_norm = 0.0;
  double AY_norm = 0.0;
  double deltaA = 0.0;
};
HopfATensor hopf_a_tensor_constants(int q, int m);

DoublyWarpedRicci ricci_doubly_warped(const Jet2& fj, const Jet2& hj, const TubeParams& p);

/// Alternative sign grouping of the horizontal component that fails the
/// round-sphere identity; evaluated only for audit output.
double ricci_horizontal_alt_grouping(const Jet2& fj, const Jet2& hj, const TubeParams& p);

/// Ricci of ds^2 + psi^2(s) g_F for a d-dimensional fiber with Ricci
/// constant rhoF: radial = -d psi''/psi,
/// fiber = rhoF/psi^2 - psi''/psi - (d-1)(psi'/psi)^2.
struct WarpedIntervalRicci {
  double radial = 0.0;
  double fiber = 0.0;
};
WarpedIntervalRicci ricci_warped_interval(const Jet2& psij, int d, double rhoF);

/// Radial coefficient of the fiber mean-curvature field N = phi * d/dr
/// for the quotient construction: phi = -q f f' / (f^2 + (1+eps) nu).
double phi(const Jet2& fj, const TubeParams& p);

/// Coefficients of the covariant derivative of N along the frame directions.
struct NablaN {
  double X = 0.0;       // horizontal:    phi h'/h
  double w = 0.0;       // orbit-complement: identically zero
  double radial = 0.0;  // phi'
  double fiber = 0.0;   // phi f'/f
  double Delta = 0.0;   // twisted fiber: phi (f'/f) (1+eps)nu/((1+eps)nu+f^2)
};

struct QuotientReport {
  double phi = 0.0;
  double A_norm = 0.0;  // <A dr, A dr>
  double T_norm = 0.0;  // <T dr, T dr>
  NablaN nablaN;
  double rQ_radial = 0.0;
  double ineq521_margin = 0.0;  // rQ_radial - 2*A_norm
  double normDelta2 = 0.0;      // squared length of the twisted fiber frame field
  std::vector<std::string> conditional_flags;
};
QuotientReport quotient_quantities(const Jet2& fj, const Jet2& hj, const TubeParams& p);

/// The sufficient conditions for strict Ricci positivity of the doubly
/// warped disc: shared unit sine cap; concavity and monotonicity; ordering
/// f <= h with f'/f <= h'/h; and (f/h)^3 >= f' h'.
ConditionReport check_positivity_conditions(const Profile& f, const Profile& h,
                                            const std::vector<double>& grid,
                                            const Strictness& strictness = {});

/// Full verification of a designed tube: positivity conditions, the three
/// closed-form Ricci components, quotient radial positivity and its margin
/// over twice the A-tensor norm, the fiber plateau, boundary jet targets and
/// the nu bound.  Fiber-positivity assumptions are recorded, not checked.
ConditionReport verify_tube(const Profile& f, const Profile& h, const TubeParams& p,
                            const std::vector<double>& grid, const Strictness& strictness = {});

/// Boundary fiber scale mu*nu/(mu - 1) that makes the quotient orbits
/// normal homogeneous; with mu = 1+eps this is (1+eps)nu/eps.
double fiber_boundary_scale(double mu, double nu);

/// Hard upper bound lambda*eps/(1+eps) on admissible nu.
double nu_bound(double lambda, double eps);

/// Principal curvature -theta'/theta of the inner collar boundary with
/// outward normal.
double collar_principal_curvature(const Jet2& thetaj);

/// Gluing admissibility of a collar against a boundary with scale lambda and
/// principal curvature infimum p_inf > -1/lambda: the initial collar slope
/// must satisfy theta'(0) < lambda*p_inf strictly.  The admissible window
/// (-1, lambda*p_inf) is returned alongside the margin.
struct PerelmanResult {
  bool pass = false;
  double margin = 0.0;
  double window_lo = -1.0;
  double window_hi = 0.0;
};
PerelmanResult perelman_check(double lambda, double p_inf, double theta0_slope);

/// Grid dump with the stable header
/// r,f,f1,f2,h,h1,h2,ric_radial,ric_horizontal,ric_fiber,phi,A_norm,T_norm,rQ_radial,ineq521_margin
void write_grid_csv(std::ostream& os, const Profile& f, const Profile& h, const TubeParams& p,
                    const std::vector<double>& grid);

}  // namespace rictube
