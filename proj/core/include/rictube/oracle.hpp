#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "rictube/curvature.hpp"
#include "rictube/profile.hpp"

namespace rictube::oracle {

/// A coordinate metric given purely by its component matrix.  Everything the
/// oracle computes comes from finite differences of `components`, never from
/// analytic derivatives, so it stays an independent check on the closed
/// forms.  Components are evaluated in extended precision to keep the noise
/// floor below the discretization error.
struct ChartMetric {
  int dim = 0;
  std::string name;
  /// Per-coordinate [lo, hi] box on which the metric is valid.
  std::vector<std::pair<double, double>> valid_region;
  /// Fills g (row-major dim*dim, symmetric) at x.
  std::function<void(const long double* x, long double* g)> components;
};

/// Curvature data sampled at one point.  Tensors are flat row-major:
/// christoffel[k*dim*dim + i*dim + j] = Gamma^k_ij,
/// riemann[((i*dim + j)*dim + k)*dim + l] = R^i_jkl.
struct CurvatureSample {
  std::vector<double> point;
  std::vector<double> christoffel;
  std::vector<double> riemann;
  std::vector<double> ricci;        // dim*dim, symmetrized
  double ricci_asymmetry = 0.0;     // max |Ric_ij - Ric_ji| before symmetrizing
  std::vector<double> ricci_eigen;  // generalized eigenvalues w.r.t. g, ascending
  double sec_min_sampled = 0.0;     // min over random 2-planes at this point
};

/// Christoffel symbols by central differences of the metric components.
/// Throws Singular when g fails positive definiteness (eigenvalue below
/// 1e-10 of scale) or has condition number above 1e12, and InvalidParam when
/// x is closer than 2*step to the valid-region boundary.
std::vector<double> christoffel(const ChartMetric& metric, const std::vector<double>& x,
                                double step = 1e-5);

/// Full curvature sample: Riemann from second-level central differences of
/// the Christoffel symbols, Ricci by trace, generalized Ricci eigenvalues,
/// and a small deterministic sectional sweep.
CurvatureSample ricci_sample(const ChartMetric& metric, const std::vector<double>& x,
                             double step = 1e-5, int planes = 8, std::uint64_t seed = 0);

/// Minimum sectional curvature over `points` random interior points with
/// `planes` random 2-planes each; deterministic per seed.
double sectional_min(const ChartMetric& metric, int points, int planes, std::uint64_t seed,
                     double step = 1e-5);

/// 4-dim chart (2m+2-dim for m=2) of the doubly warped disc metric
/// dr^2 + h^2(r)(round Hopf horizontal) + f^2(r)(Hopf fiber), in fibration
/// coordinates chosen so f = h = 1 restricts to the unit round sphere on
/// r-slices.  Supported: q=1 with m in {1, 2}.
ChartMetric chart_doubly_warped(const Profile& f, const Profile& h, int q = 1, int m = 1);

/// Analytic warped charts (extended-precision closures rather than profiles);
/// used for calibration and convergence studies.
ChartMetric chart_round_s4();                    // f = h = sin, the unit round 4-sphere
ChartMetric chart_round_hopf_s3();               // unit round 3-sphere, fibration coordinates
ChartMetric chart_berger_cylinder(double c);     // f = c, h = 1 over an interval
ChartMetric chart_round_sphere_polar(int dim);   // nested polar coordinates, dim in {2,3,4}
ChartMetric chart_flat(int dim);

/// One closed-form vs oracle entry.  rel_err uses max(1, |closed_form|) as
/// denominator so near-zero components are compared absolutely.
struct ComparisonRow {
  std::string chart;
  std::vector<double> point;
  std::string component;
  double closed_form = 0.0;
  double oracle = 0.0;
  double rel_err = 0.0;
};

/// Compares the closed-form tube Ricci against oracle Rayleigh quotients in
/// the radial / horizontal / fiber directions (plus a mixed radial-fiber
/// entry against zero) at `samples` random points; deterministic per seed.
std::vector<ComparisonRow> compare_tube_ricci(const Profile& f, const Profile& h,
                                              const TubeParams& params, int samples,
                                              std::uint64_t seed, double step = 1e-5);

double max_rel_err(const std::vector<ComparisonRow>& rows);

}  // namespace rictube::oracle
