#include "rictube/curvature.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <sstream>

namespace rictube {

namespace {

// 1 - x^2 without cancellation for |x| near 1.
inline double one_minus_sq(double x) { return (1.0 - x) * (1.0 + x); }

inline double fiber_sphere_count(int q) { return q == 1 ? 2.0 : 8.0; }  // 2^q

void require_positive(const Jet2& j, const char* which) {
  if (!(j.value > 0.0)) {
    std::ostringstream os;
    os << which << " = " << j.value << " is not positive at the evaluation point";
    throw Singular(os.str());
  }
}

struct Extremum {
  double margin = std::numeric_limits<double>::infinity();
  double witness = 0.0;

  void take(double m, double r) {
    if (m < margin) {
      margin = m;
      witness = r;
    }
  }
};

ConditionEntry entry_from(const std::string& name, const Extremum& e, bool strict,
                          const Strictness& s) {
  return ConditionEntry{name, s.passes(e.margin, strict), e.margin, e.witness, strict};
}

bool is_unit_sine_head(const Profile& p) {
  const Segment& s0 = p.segments().front();
  const auto* arc = std::get_if<SineArc>(&s0.shape);
  return arc != nullptr && std::abs(arc->a - 1.0) <= 1e-12 && std::abs(arc->b) <= 1e-12 &&
         std::abs(s0.from) <= 1e-12;
}

}  // namespace

void TubeParams::validate() const {
  if (q != 1 && q != 3) throw InvalidParam("tube params: q must be 1 or 3");
  if (m < 1) throw InvalidParam("tube params: m must be at least 1");
  if (!(eps > 0.0)) throw InvalidParam("tube params: eps must be positive");
  if (eps0 && !(eps < *eps0))
    throw InvalidParam("tube params: eps must stay below the asserted eps0");
  if (!(nu > 0.0)) throw InvalidParam("tube params: nu must be positive");
  if (!(lambda > 0.0)) throw InvalidParam("tube params: lambda must be positive");
  if (!(Lambda > 0.0 && Lambda < 1.0)) throw InvalidParam("tube params: Lambda must lie in (0,1)");
}

double einstein_constant(int q, int m) {
  if (m < 1) throw InvalidParam("einstein_constant: m must be at least 1");
  if (q == 1) return 2.0 * m + 2.0;
  if (q == 3) return 4.0 * m + 8.0;
  throw InvalidParam("einstein_constant: q must be 1 or 3");
}

HopfATensor hopf_a_tensor_constants(int q, int m) {
  if (m < 1) throw InvalidParam("hopf_a_tensor_constants: m must be at least 1");
  if (q != 1 && q != 3) throw InvalidParam("hopf_a_tensor_constants: q must be 1 or 3");
  const double dimP = q == 1 ? 2.0 * m : 4.0 * m;
  return {dimP, static_cast<double>(q), 0.0};
}

DoublyWarpedRicci ricci_doubly_warped(const Jet2& fj, const Jet2& hj, const TubeParams& p) {
  require_positive(fj, "f");
  require_positive(hj, "h");
  const double f = fj.value, f1 = fj.d1, f2 = fj.d2;
  const double h = hj.value, h1 = hj.d1, h2 = hj.d2;
  const double dP = p.dimP();
  const double q = p.q;
  const double h_sq = h * h;

  DoublyWarpedRicci out;
  out.radial = -dP * h2 / h - q * f2 / f;
  out.horizontal = dP * one_minus_sq(h1) / h_sq + fiber_sphere_count(p.q) / h_sq - h2 / h +
                   (h1 / h) * (h1 / h) - q * f1 * h1 / (f * h) -
                   2.0 * q * (f * f) / (h_sq * h_sq);
  out.fiber = (q - 1.0) * one_minus_sq(f1) / (f * f) - f2 / f +
              dP * ((f * f) / (h_sq * h_sq) - f1 * h1 / (f * h));
  out.mixed = 0.0;
  return out;
}

double ricci_horizontal_alt_grouping(const Jet2& fj, const Jet2& hj, const TubeParams& p) {
  require_positive(fj, "f");
  require_positive(hj, "h");
  const double f = fj.value, f1 = fj.d1;
  const double h = hj.value, h1 = hj.d1, h2 = hj.d2;
  const double dP = p.dimP();
  const double q = p.q;
  const double h_sq = h * h;
  return dP * one_minus_sq(h1) / h_sq + fiber_sphere_count(p.q) / h_sq - h2 / h -
         (h1 / h) * (h1 / h) - q * (f1 * h1 / (f * h) - 2.0 * (f * f) / (h_sq * h_sq));
}

WarpedIntervalRicci ricci_warped_interval(const Jet2& psij, int d, double rhoF) {
  if (d < 1) throw InvalidParam("ricci_warped_interval: fiber dimension must be at least 1");
  if (!(psij.value > 0.0)) throw Singular("warp value must be positive");
  const double v = psij.value, v1 = psij.d1, v2 = psij.d2;
  WarpedIntervalRicci out;
  out.radial = -d * v2 / v;
  out.fiber = rhoF / (v * v) - v2 / v - (d - 1.0) * (v1 / v) * (v1 / v);
  return out;
}

double phi(const Jet2& fj, const TubeParams& p) {
  const double f = fj.value;
  const double den = f * f + (1.0 + p.eps) * p.nu;
  return -p.q * f * fj.d1 / den;
}

QuotientReport quotient_quantities(const Jet2& fj, const Jet2& hj, const TubeParams& p) {
  require_positive(fj, "f");
  require_positive(hj, "h");
  const double f = fj.value, f1 = fj.d1, f2 = fj.d2;
  const double h = hj.value, h1 = hj.d1, h2 = hj.d2;
  const double q = p.q;
  const double dP = p.dimP();
  const double mu_nu = (1.0 + p.eps) * p.nu;
  const double den = f * f + mu_nu;

  QuotientReport rep;
  rep.phi = -q * f * f1 / den;
  // Exact derivative of phi with den' = 2 f f'.
  rep.nablaN.radial = -q * ((f1 * f1 + f * f2) / den - 2.0 * (f * f1) * (f * f1) / (den * den));
  rep.nablaN.X = rep.phi * h1 / h;
  rep.nablaN.w = 0.0;
  rep.nablaN.fiber = rep.phi * f1 / f;
  rep.nablaN.Delta = rep.phi * (f1 / f) * mu_nu / (mu_nu + f * f);
  rep.T_norm = q * (f1 * f) * (f1 * f) / (den * den);
  rep.A_norm = q * mu_nu * f1 * f1 / (den * den);
  rep.rQ_radial = -dP * h2 / h + q * (mu_nu / den) * (3.0 * f1 * f1 / den - f2 / f);
  rep.ineq521_margin = rep.rQ_radial - 2.0 * rep.A_norm;
  rep.normDelta2 = mu_nu * (f * f + mu_nu) / (f * f);
  rep.conditional_flags = {
      "assumes_fiber_positivity:horizontal_quotient",
      "assumes_fiber_positivity:twisted_fiber_quotient",
      "assumes_fiber_positivity:orbit_complement_quotient",
      "assumes_fiber_positivity:mixed_span_quotient",
  };
  return rep;
}

ConditionReport check_positivity_conditions(const Profile& f, const Profile& h,
                                            const std::vector<double>& grid,
                                            const Strictness& strictness) {
  ConditionReport rep;

  const bool cap_f = is_unit_sine_head(f);
  const bool cap_h = is_unit_sine_head(h);
  const double shared_cap =
      std::min(f.segments().front().to, h.segments().front().to);
  rep.add(ConditionEntry{"initial_sine_cap", cap_f && cap_h && shared_cap > 0.0, shared_cap,
                         0.0, true});

  Extremum f_conc, h_conc, joint, f_mono, h_mono, below, log_slope, cube;
  for (double r : grid) {
    const Jet2 jf = f.eval(r);
    const Jet2 jh = h.eval(r);
    f_conc.take(-jf.d2, r);
    h_conc.take(-jh.d2, r);
    joint.take(-(jf.d2 + jh.d2), r);
    f_mono.take(jf.d1, r);
    h_mono.take(jh.d1, r);
    below.take(jh.value - jf.value, r);
    log_slope.take(jh.d1 / jh.value - jf.d1 / jf.value, r);
    const double ratio = jf.value / jh.value;
    cube.take(ratio * ratio * ratio - jf.d1 * jh.d1, r);
  }
  rep.add(entry_from("f_concave", f_conc, false, strictness));
  rep.add(entry_from("h_concave", h_conc, false, strictness));
  rep.add(entry_from("joint_strict_concavity", joint, true, strictness));
  rep.add(entry_from("f_nondecreasing", f_mono, false, strictness));
  rep.add(entry_from("h_nondecreasing", h_mono, false, strictness));
  rep.add(entry_from("fiber_below_base", below, false, strictness));
  rep.add(entry_from("log_slope_ordering", log_slope, false, strictness));
  rep.add(entry_from("warp_ratio_cube_bound", cube, false, strictness));
  return rep;
}

ConditionReport verify_tube(const Profile& f, const Profile& h, const TubeParams& p,
                            const std::vector<double>& grid, const Strictness& strictness) {
  p.validate();
  ConditionReport rep = check_positivity_conditions(f, h, grid, strictness);

  Extremum radial, horizontal, fiber, quotient_radial, twist;
  double alt_delta = 0.0;
  for (double r : grid) {
    const Jet2 jf = f.eval(r);
    const Jet2 jh = h.eval(r);
    const DoublyWarpedRicci ric = ricci_doubly_warped(jf, jh, p);
    radial.take(ric.radial, r);
    horizontal.take(ric.horizontal, r);
    fiber.take(ric.fiber, r);
    const QuotientReport qq = quotient_quantities(jf, jh, p);
    quotient_radial.take(qq.rQ_radial, r);
    twist.take(qq.ineq521_margin, r);
    alt_delta = std::max(alt_delta,
                         std::abs(ric.horizontal - ricci_horizontal_alt_grouping(jf, jh, p)));
  }
  rep.add(entry_from("ricci_radial_positive", radial, true, strictness));
  rep.add(entry_from("ricci_horizontal_positive", horizontal, true, strictness));
  rep.add(entry_from("ricci_fiber_positive", fiber, true, strictness));
  rep.add(entry_from("quotient_radial_positive", quotient_radial, true, strictness));
  rep.add(entry_from("quotient_radial_dominates_twist", twist, true, strictness));

  // Fiber plateau on [R - iota, R].
  const double R = h.hi();
  const double target = fiber_boundary_scale(1.0 + p.eps, p.nu);
  const double iota = p.iota > 0.0 ? p.iota : 0.05 * R;
  Extremum plateau;
  {
    GridSpec tail{64, R - iota, R};
    for (double r : tail.make_points())
      plateau.take(1e-10 - std::abs(f.eval(r).value - target), r);
  }
  rep.add(entry_from("fiber_plateau", plateau, false, strictness));

  const Jet2 jb = h.eval(R);
  rep.add(ConditionEntry{"boundary_value",
                         std::abs(jb.value - p.lambda) <= 1e-10,
                         1e-10 - std::abs(jb.value - p.lambda), R, false});
  rep.add(ConditionEntry{"boundary_slope",
                         std::abs(jb.d1 - p.Lambda) <= 1e-10,
                         1e-10 - std::abs(jb.d1 - p.Lambda), R, false});

  const double bound = nu_bound(p.lambda, p.eps);
  rep.add(ConditionEntry{"nu_below_bound", strictness.passes(bound - p.nu, true),
                         bound - p.nu, R, true});

  rep.assumptions = {
      "fiber_positivity: scaled normal homogeneous fiber metric has positive Ricci "
      "curvature for eps below the user-supplied eps0 (asserted, not computed)",
  };
  rep.notes["horizontal_alt_grouping_max_abs_delta"] = alt_delta;
  return rep;
}

double fiber_boundary_scale(double mu, double nu) {
  if (!(mu > 1.0)) throw InvalidParam("fiber_boundary_scale: mu must exceed 1");
  return mu * nu / (mu - 1.0);
}

double nu_bound(double lambda, double eps) {
  return lambda * eps / (1.0 + eps);
}

double collar_principal_curvature(const Jet2& thetaj) {
  if (!(thetaj.value > 0.0)) throw Singular("collar scale must be positive");
  return -thetaj.d1 / thetaj.value;
}

PerelmanResult perelman_check(double lambda, double p_inf, double theta0_slope) {
  if (!(lambda > 0.0)) throw InvalidParam("perelman_check: lambda must be positive");
  if (!(p_inf > -1.0 / lambda))
    throw InvalidParam("perelman_check: boundary principal curvature infimum must exceed "
                       "-1/lambda");
  PerelmanResult out;
  out.window_lo = -1.0;
  out.window_hi = lambda * p_inf;  // = -1 + lambda*(p_inf + 1/lambda)
  out.margin = lambda * p_inf - theta0_slope;
  out.pass = out.margin > 0.0;
  return out;
}

bool ConditionReport::all_pass() const {
  return std::all_of(entries.begin(), entries.end(),
                     [](const ConditionEntry& e) { return e.pass; });
}

const ConditionEntry* ConditionReport::find(const std::string& name) const {
  for (const auto& e : entries)
    if (e.name == name) return &e;
  return nullptr;
}

void ConditionReport::merge(const ConditionReport& other, const std::string& prefix) {
  for (ConditionEntry e : other.entries) {
    e.name = prefix + e.name;
    entries.push_back(std::move(e));
  }
  for (const auto& a : other.assumptions) {
    if (std::find(assumptions.begin(), assumptions.end(), a) == assumptions.end())
      assumptions.push_back(a);
  }
  for (const auto& [k, v] : other.notes) notes[prefix + k] = v;
}

void write_grid_csv(std::ostream& os, const Profile& f, const Profile& h, const TubeParams& p,
                    const std::vector<double>& grid) {
  os << "r,f,f1,f2,h,h1,h2,ric_radial,ric_horizontal,ric_fiber,phi,A_norm,T_norm,"
        "rQ_radial,ineq521_margin\n";
  os << std::setprecision(17);
  for (double r : grid) {
    const Jet2 jf = f.eval(r);
    const Jet2 jh = h.eval(r);
    const DoublyWarpedRicci ric = ricci_doubly_warped(jf, jh, p);
    const QuotientReport qq = quotient_quantities(jf, jh, p);
    os << r << ',' << jf.value << ',' << jf.d1 << ',' << jf.d2 << ',' << jh.value << ','
       << jh.d1 << ',' << jh.d2 << ',' << ric.radial << ',' << ric.horizontal << ','
       << ric.fiber << ',' << qq.phi << ',' << qq.A_norm << ',' << qq.T_norm << ','
       << qq.rQ_radial << ',' << qq.ineq521_margin << '\n';
  }
}

}  // namespace rictube
