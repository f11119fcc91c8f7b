#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <variant>
#include <vector>

#include "rictube/errors.hpp"

namespace rictube {

/// Pointwise 2-jet of a scalar function: value, first and second derivative.
struct Jet2 {
  double value = 0.0;
  double d1 = 0.0;
  double d2 = 0.0;
};

/// r -> a*sin(r/a + b).  Slope at the origin of the arc is 1 by construction,
/// which is what makes cone points close smoothly.
struct SineArc {
  double a = 1.0;
  double b = 0.0;
};

/// r -> c.
struct ConstantSeg {
  double c = 1.0;
};

/// The unique degree-5 polynomial matching a full 2-jet at each endpoint.
/// Stored as monomial coefficients in the local variable u = r - x0.
struct QuinticSeg {
  double x0 = 0.0;
  std::array<double, 6> coef{};  // c0 + c1 u + ... + c5 u^5

  static QuinticSeg from_jets(double x0, const Jet2& left, double x1, const Jet2& right);
  Jet2 eval(double r) const;
  double d3(double r) const;
};

struct Segment {
  double from = 0.0;
  double to = 0.0;
  std::variant<SineArc, ConstantSeg, QuinticSeg> shape;

  Jet2 eval(double r) const;
  double d3(double r) const;
  /// Same underlying function on a subinterval of [from, to].
  Segment restricted(double new_from, double new_to) const;
};

/// Uniform evaluation grid, endpoints included.
struct GridSpec {
  int points = 2048;
  double lo = 0.0;
  double hi = 1.0;

  std::vector<double> make_points() const;
};

/// A piecewise analytic positive function on an interval with exact 2-jet
/// evaluation.  Segments tile the domain; value and slope are continuous at
/// every knot to 1e-12.  Second-derivative jumps are recorded and a profile
/// is flagged smooth when every jump is below 1e-9.
class Profile {
 public:
  explicit Profile(std::vector<Segment> segments);

  double lo() const { return segments_.front().from; }
  double hi() const { return segments_.back().to; }
  double length() const { return hi() - lo(); }

  /// Analytic 2-jet of the active segment; at a knot, the right segment wins.
  Jet2 eval(double r) const;
  /// Analytic third derivative of the active segment at r.
  double d3(double r) const;

  const std::vector<Segment>& segments() const { return segments_; }
  /// Interior segment boundaries.
  std::vector<double> knots() const;
  double max_d2_jump() const { return max_d2_jump_; }
  bool smooth() const { return max_d2_jump_ <= 1e-9; }

  /// Restriction to [new_lo, new_hi] (must be inside the domain).
  Profile restricted(double new_lo, double new_hi) const;

  static Profile sine(double a, double b, double lo, double hi);
  static Profile constant(double c, double lo, double hi);
  static Profile quintic(double x0, const Jet2& left, double x1, const Jet2& right);

 private:
  std::vector<Segment> segments_;
  double max_d2_jump_ = 0.0;
};

/// s -> p(lo + hi - s) on the same interval; first derivatives flip sign,
/// second derivatives are preserved.  Exact on the segment algebra
/// (a reflected sine arc is again a sine arc, etc.), hence an involution.
Profile mirror(const Profile& p);

/// Evaluation grid for verification scans: `points` uniform samples on
/// [max(floor, domain lo), domain hi] merged with all knots.  The default
/// floor 1e-3 keeps 1/f, 1/h formulas away from cone points.
std::vector<double> check_grid(const Profile& p, int points = 2048, double floor = 1e-3);
std::vector<double> check_grid2(const Profile& a, const Profile& b, int points = 2048,
                                double floor = 1e-3);

/// Jet agreement between the right end of `left` and the left end of `right`.
struct MatchReport {
  std::vector<double> residuals;  // order 0 .. order
  bool pass = false;
  double tolerance = 1e-6;
};

/// residual[k] = |d^k left(left.hi) - d^k right(right.lo)|, analytic through
/// order 3.  pass iff every residual is <= tol.
MatchReport jet_match(const Profile& left, const Profile& right, int order, double tol = 1e-6);

}  // namespace rictube
