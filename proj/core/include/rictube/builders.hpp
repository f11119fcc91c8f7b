#pragma once

#include "rictube/profile.hpp"

namespace rictube {

struct TubeBaseResult {
  Profile profile;
  double radius = 0.0;            // right end of the domain
  double concavity_margin = 0.0;  // min(-h'') over the check grid
  double slope_min = 0.0;
  double slope_max = 0.0;
};

/// Base warping profile for a tube: equals sin on [0, delta], then a single
/// quintic bridge to the boundary jet (lambda, Lambda, -kappa) at a radius R
/// chosen so the whole profile is strictly concave with slope in [0, 1).
/// kappa = 0.01*min(1, lambda).  R is centred on the concavity-feasible mean
/// slope (cos(delta)+Lambda)/2 and refined over a small deterministic ladder.
TubeBaseResult build_tube_base(double lambda, double Lambda, double delta);

/// Fiber warping profile: follows `base` from the cone point, then a concave
/// quintic bridge of width `window` onto the constant `plateau`, which must
/// hold on at least [R - iota, R].  Throws DesignFailure when the bridge
/// cannot stay concave or the plateau would start too late; callers retry
/// with a smaller window.
Profile build_tube_fiber(const Profile& base, double plateau, double iota, double window);

/// Collar scaling profile on [0, length]: theta(0) = lambda,
/// theta'(0) = slope0, theta'(length) = slope1 with constant negative
/// curvature (the interpolating quadratic).  Requires slope1 < slope0,
/// both in (-1, 1), and positivity along the collar.
Profile build_collar(double lambda, double slope0, double slope1, double length);

}  // namespace rictube
