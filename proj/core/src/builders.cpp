#include "rictube/builders.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace rictube {

namespace {

struct ScanResult {
  double min_neg_d2 = 0.0;  // min of -p'' over the grid
  double slope_min = 0.0;
  double slope_max = 0.0;
};

ScanResult scan_profile(const Profile& p, int points = 2048) {
  ScanResult out;
  bool first = true;
  for (double r : check_grid(p, points)) {
    const Jet2 j = p.eval(r);
    if (first) {
      out.min_neg_d2 = -j.d2;
      out.slope_min = out.slope_max = j.d1;
      first = false;
    } else {
      out.min_neg_d2 = std::min(out.min_neg_d2, -j.d2);
      out.slope_min = std::min(out.slope_min, j.d1);
      out.slope_max = std::max(out.slope_max, j.d1);
    }
  }
  return out;
}

}  // namespace

TubeBaseResult build_tube_base(double lambda, double Lambda, double delta) {
  if (!(lambda > 0.0)) throw InvalidParam("build_tube_base: lambda must be positive");
  if (!(Lambda > 0.0 && Lambda < 1.0))
    throw InvalidParam("build_tube_base: Lambda must lie in (0,1)");
  if (!(delta > 0.0 && delta < M_PI / 4.0))
    throw InvalidParam("build_tube_base: delta must lie in (0, pi/4)");

  const double sd = std::sin(delta);
  const double cd = std::cos(delta);
  if (sd >= lambda)
    throw DesignFailure("build_tube_base: sin(delta) >= lambda, a nondecreasing profile "
                        "cannot reach lambda; use a smaller delta");
  if (Lambda >= cd)
    throw DesignFailure("build_tube_base: Lambda >= cos(delta), slope cannot decrease "
                        "concavely onto the boundary; use a smaller delta");

  const double kappa = 0.01 * std::min(1.0, lambda);
  const Jet2 cap_jet{sd, cd, -sd};
  const Jet2 boundary_jet{lambda, Lambda, -kappa};
  // Width centred so the mean slope sits in the middle of the window
  // [(2cd+3L)/5, (3cd+2L)/5] where the quintic stays concave.
  const double width_star = 2.0 * (lambda - sd) / (cd + Lambda);
  static constexpr double ladder[] = {1.0,  0.98, 1.02, 0.95, 1.05, 0.92, 1.08, 0.88,
                                      1.12, 0.84, 1.16, 0.8,  1.2,  0.7,  1.3};

  for (double rho : ladder) {
    const double radius = delta + width_star * rho;
    Profile h({Segment{0.0, delta, SineArc{1.0, 0.0}},
               Segment{delta, radius,
                       QuinticSeg::from_jets(delta, cap_jet, radius, boundary_jet)}});
    const ScanResult s = scan_profile(h);
    if (s.min_neg_d2 > 0.0 && s.slope_min >= 0.0 && s.slope_max < 1.0) {
      return {std::move(h), radius, s.min_neg_d2, s.slope_min, s.slope_max};
    }
  }
  std::ostringstream os;
  os << "build_tube_base: no radius near " << delta + width_star
     << " yields a concave nondecreasing profile (lambda=" << lambda << ", Lambda=" << Lambda
     << ", delta=" << delta << ")";
  throw DesignFailure(os.str());
}

Profile build_tube_fiber(const Profile& base, double plateau, double iota, double window) {
  const double R = base.hi();
  const double boundary_value = base.eval(R).value;
  if (!(plateau > 0.0)) throw InvalidParam("build_tube_fiber: plateau must be positive");
  if (!(window > 0.0)) throw InvalidParam("build_tube_fiber: window must be positive");
  if (plateau >= boundary_value)
    throw DesignFailure("build_tube_fiber: plateau target is not below the base boundary value");

  const double glo = std::max(base.lo(), 1e-3);
  if (base.eval(glo).value >= plateau)
    throw DesignFailure("build_tube_fiber: plateau lies below the initial cap");

  // Level crossing of the (nondecreasing) base.
  double lo = glo, hi = R;
  for (int i = 0; i < 200 && hi - lo > 1e-12 * std::max(1.0, R); ++i) {
    const double mid = 0.5 * (lo + hi);
    (base.eval(mid).value < plateau ? lo : hi) = mid;
  }
  const double level = 0.5 * (lo + hi);

  // Bridge anchor: h(a) + 0.5*window*h'(a) = plateau puts the quintic's mean
  // slope at half the takeoff slope, which keeps it concave.
  auto anchor_gap = [&](double x) {
    const Jet2 j = base.eval(x);
    return j.value + 0.5 * window * j.d1 - plateau;
  };
  const double scan_lo = std::max(glo, level - window);
  double a_lo = level, a_hi = level;
  bool bracketed = false;
  double prev_x = level, prev_g = anchor_gap(level);
  for (int i = 1; i <= 64; ++i) {
    const double x = level + (scan_lo - level) * (static_cast<double>(i) / 64.0);
    const double g = anchor_gap(x);
    if ((g <= 0.0) != (prev_g <= 0.0)) {
      a_lo = std::min(x, prev_x);
      a_hi = std::max(x, prev_x);
      bracketed = true;
      break;
    }
    prev_x = x;
    prev_g = g;
  }
  if (!bracketed)
    throw DesignFailure("build_tube_fiber: no bridge anchor in range; shrink the window");
  for (int i = 0; i < 200 && a_hi - a_lo > 1e-13 * std::max(1.0, R); ++i) {
    const double mid = 0.5 * (a_lo + a_hi);
    (anchor_gap(mid) <= 0.0 ? a_lo : a_hi) = mid;
  }
  const double a = 0.5 * (a_lo + a_hi);
  const double plateau_start = a + window;

  const double iota_eff = iota > 0.0 ? iota : std::min(0.05 * R, 0.5 * (R - plateau_start));
  if (!(plateau_start < R - iota_eff) || !(iota_eff > 0.0))
    throw DesignFailure("build_tube_fiber: plateau would start after R - iota; "
                        "shrink the window or iota");

  std::vector<Segment> segs;
  for (const auto& s : base.restricted(base.lo(), a).segments()) segs.push_back(s);
  segs.push_back(Segment{a, plateau_start,
                         QuinticSeg::from_jets(a, base.eval(a), plateau_start,
                                               Jet2{plateau, 0.0, 0.0})});
  segs.push_back(Segment{plateau_start, R, ConstantSeg{plateau}});
  Profile f(std::move(segs));

  // The bridge must not break concavity or monotonicity, and f must remain
  // below the base profile.
  double max_d2 = -1e300, min_d1 = 1e300, min_gap = 1e300;
  for (double r : check_grid2(f, base)) {
    const Jet2 jf = f.eval(r);
    max_d2 = std::max(max_d2, jf.d2);
    min_d1 = std::min(min_d1, jf.d1);
    min_gap = std::min(min_gap, base.eval(r).value - jf.value);
  }
  if (max_d2 > 1e-12)
    throw DesignFailure("build_tube_fiber: bridge violates concavity; shrink the window");
  if (min_d1 < -1e-12)
    throw DesignFailure("build_tube_fiber: bridge violates monotonicity; shrink the window");
  if (min_gap < -1e-12)
    throw DesignFailure("build_tube_fiber: fiber profile exceeds the base profile");
  return f;
}

Profile build_collar(double lambda, double slope0, double slope1, double length) {
  if (!(lambda > 0.0)) throw InvalidParam("build_collar: lambda must be positive");
  if (!(length > 0.0)) throw InvalidParam("build_collar: length must be positive");
  if (!(std::abs(slope0) < 1.0 && std::abs(slope1) < 1.0))
    throw DesignFailure("build_collar: slopes must lie strictly inside (-1, 1)");
  if (!(slope1 < slope0))
    throw DesignFailure("build_collar: concavity forces a strictly decreasing slope");

  const double curv = (slope1 - slope0) / length;
  const double end_value = lambda + 0.5 * length * (slope0 + slope1);
  // Concave, so the minimum sits at an endpoint.
  if (std::min(lambda, end_value) <= 0.0)
    throw DesignFailure("build_collar: profile would touch zero on the given length");
  return Profile::quintic(0.0, Jet2{lambda, slope0, curv}, length,
                          Jet2{end_value, slope1, curv});
}

}  // namespace rictube
