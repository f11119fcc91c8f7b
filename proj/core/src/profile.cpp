#include "rictube/profile.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace rictube {

namespace {

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

}  // namespace

QuinticSeg QuinticSeg::from_jets(double x0, const Jet2& left, double x1, const Jet2& right) {
  const double w = x1 - x0;
  if (!(w > 0.0)) throw InvalidParam("quintic segment needs x1 > x0");
  QuinticSeg q;
  q.x0 = x0;
  const double c0 = left.value;
  const double c1 = left.d1;
  const double c2 = 0.5 * left.d2;
  // Remaining coefficients from the right-end jet.
  const double dv = right.value - (c0 + w * (c1 + w * c2));
  const double ds = right.d1 - (c1 + 2.0 * c2 * w);
  const double dc = right.d2 - 2.0 * c2;
  const double w2 = w * w, w3 = w2 * w;
  q.coef = {c0,
            c1,
            c2,
            (10.0 * dv - 4.0 * ds * w + 0.5 * dc * w2) / w3,
            (-15.0 * dv + 7.0 * ds * w - dc * w2) / (w3 * w),
            (6.0 * dv - 3.0 * ds * w + 0.5 * dc * w2) / (w3 * w2)};
  return q;
}

Jet2 QuinticSeg::eval(double r) const {
  const double u = r - x0;
  const auto& c = coef;
  Jet2 j;
  j.value = ((((c[5] * u + c[4]) * u + c[3]) * u + c[2]) * u + c[1]) * u + c[0];
  j.d1 = (((5.0 * c[5] * u + 4.0 * c[4]) * u + 3.0 * c[3]) * u + 2.0 * c[2]) * u + c[1];
  j.d2 = ((20.0 * c[5] * u + 12.0 * c[4]) * u + 6.0 * c[3]) * u + 2.0 * c[2];
  return j;
}

double QuinticSeg::d3(double r) const {
  const double u = r - x0;
  return (60.0 * coef[5] * u + 24.0 * coef[4]) * u + 6.0 * coef[3];
}

Jet2 Segment::eval(double r) const {
  if (const auto* s = std::get_if<SineArc>(&shape)) {
    const double arg = r / s->a + s->b;
    const double sn = std::sin(arg), cs = std::cos(arg);
    return {s->a * sn, cs, -sn / s->a};
  }
  if (const auto* c = std::get_if<ConstantSeg>(&shape)) {
    return {c->c, 0.0, 0.0};
  }
  return std::get<QuinticSeg>(shape).eval(r);
}

double Segment::d3(double r) const {
  if (const auto* s = std::get_if<SineArc>(&shape)) {
    return -std::cos(r / s->a + s->b) / (s->a * s->a);
  }
  if (std::holds_alternative<ConstantSeg>(shape)) return 0.0;
  return std::get<QuinticSeg>(shape).d3(r);
}

Segment Segment::restricted(double new_from, double new_to) const {
  if (new_from < from - 1e-12 || new_to > to + 1e-12 || !(new_from < new_to))
    throw InvalidParam("segment restriction outside [from, to]");
  Segment out = *this;
  out.from = new_from;
  out.to = new_to;
  if (std::holds_alternative<QuinticSeg>(shape)) {
    // A quintic matching the original's 2-jets at the new endpoints is the
    // same polynomial (Hermite interpolation is unique).
    out.shape = QuinticSeg::from_jets(new_from, eval(new_from), new_to, eval(new_to));
  }
  return out;
}

std::vector<double> GridSpec::make_points() const {
  if (points < 2) throw InvalidParam("grid needs at least 2 points");
  if (!(lo < hi)) throw InvalidParam("grid needs lo < hi");
  std::vector<double> xs(static_cast<size_t>(points));
  const double step = (hi - lo) / (points - 1);
  for (int i = 0; i < points; ++i) xs[static_cast<size_t>(i)] = lo + step * i;
  xs.back() = hi;
  return xs;
}

Profile::Profile(std::vector<Segment> segments) : segments_(std::move(segments)) {
  if (segments_.empty()) throw InvalidParam("profile needs at least one segment");
  for (const auto& s : segments_) {
    if (!(s.from < s.to)) throw InvalidParam("segment with empty interior");
  }
  for (size_t i = 1; i < segments_.size(); ++i) {
    const auto& a = segments_[i - 1];
    const auto& b = segments_[i];
    if (std::abs(a.to - b.from) > 1e-12)
      throw InvalidParam("segments must tile the domain without gaps or overlaps");
    const Jet2 la = a.eval(a.to);
    const Jet2 rb = b.eval(b.from);
    if (std::abs(la.value - rb.value) > 1e-12 || std::abs(la.d1 - rb.d1) > 1e-12)
      throw InvalidParam("profile is not C^1 at knot r=" + fmt(b.from));
    max_d2_jump_ = std::max(max_d2_jump_, std::abs(la.d2 - rb.d2));
  }
}

Jet2 Profile::eval(double r) const {
  if (r < lo() || r > hi())
    throw OutOfDomain("r=" + fmt(r) + " outside [" + fmt(lo()) + ", " + fmt(hi()) + "]");
  // Last segment whose `from` does not exceed r: at a knot the right segment wins.
  auto it = std::upper_bound(segments_.begin(), segments_.end(), r,
                             [](double v, const Segment& s) { return v < s.from; });
  if (it != segments_.begin()) --it;
  return it->eval(r);
}

double Profile::d3(double r) const {
  if (r < lo() || r > hi()) throw OutOfDomain("r=" + fmt(r) + " outside profile domain");
  auto it = std::upper_bound(segments_.begin(), segments_.end(), r,
                             [](double v, const Segment& s) { return v < s.from; });
  if (it != segments_.begin()) --it;
  return it->d3(r);
}

std::vector<double> Profile::knots() const {
  std::vector<double> ks;
  for (size_t i = 1; i < segments_.size(); ++i) ks.push_back(segments_[i].from);
  return ks;
}

Profile Profile::restricted(double new_lo, double new_hi) const {
  if (new_lo < lo() - 1e-12 || new_hi > hi() + 1e-12 || !(new_lo < new_hi))
    throw InvalidParam("profile restriction outside domain");
  std::vector<Segment> out;
  for (const auto& s : segments_) {
    const double a = std::max(s.from, new_lo);
    const double b = std::min(s.to, new_hi);
    if (a < b) out.push_back(s.restricted(a, b));
  }
  return Profile(std::move(out));
}

Profile Profile::sine(double a, double b, double lo, double hi) {
  if (!(a > 0.0)) throw InvalidParam("sine arc needs a > 0");
  return Profile({Segment{lo, hi, SineArc{a, b}}});
}

Profile Profile::constant(double c, double lo, double hi) {
  if (!(c > 0.0)) throw InvalidParam("constant profile needs c > 0");
  return Profile({Segment{lo, hi, ConstantSeg{c}}});
}

Profile Profile::quintic(double x0, const Jet2& left, double x1, const Jet2& right) {
  return Profile({Segment{x0, x1, QuinticSeg::from_jets(x0, left, x1, right)}});
}

Profile mirror(const Profile& p) {
  const double sum = p.lo() + p.hi();
  std::vector<Segment> out;
  const auto& segs = p.segments();
  for (auto it = segs.rbegin(); it != segs.rend(); ++it) {
    Segment m;
    m.from = sum - it->to;
    m.to = sum - it->from;
    if (const auto* s = std::get_if<SineArc>(&it->shape)) {
      // a*sin((sum - u)/a + b) = a*sin(u/a + (pi - sum/a - b))
      m.shape = SineArc{s->a, M_PI - sum / s->a - s->b};
    } else if (const auto* c = std::get_if<ConstantSeg>(&it->shape)) {
      m.shape = ConstantSeg{*c};
    } else {
      const Jet2 jl = it->eval(it->to);
      const Jet2 jr = it->eval(it->from);
      m.shape = QuinticSeg::from_jets(m.from, Jet2{jl.value, -jl.d1, jl.d2}, m.to,
                                      Jet2{jr.value, -jr.d1, jr.d2});
    }
    out.push_back(m);
  }
  return Profile(std::move(out));
}

std::vector<double> check_grid(const Profile& p, int points, double floor) {
  return check_grid2(p, p, points, floor);
}

std::vector<double> check_grid2(const Profile& a, const Profile& b, int points, double floor) {
  const double lo = std::max({a.lo(), b.lo(), floor});
  const double hi = std::min(a.hi(), b.hi());
  GridSpec grid{points, lo, hi};
  std::vector<double> xs = grid.make_points();
  for (const Profile* p : {&a, &b}) {
    for (double k : p->knots()) {
      if (k >= lo && k <= hi) xs.push_back(k);
    }
  }
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  return xs;
}

MatchReport jet_match(const Profile& left, const Profile& right, int order, double tol) {
  if (order < 0 || order > 3) throw InvalidParam("jet_match supports orders 0..3");
  MatchReport rep;
  rep.tolerance = tol;
  const Jet2 lj = left.eval(left.hi());
  const Jet2 rj = right.eval(right.lo());
  rep.residuals.push_back(std::abs(lj.value - rj.value));
  if (order >= 1) rep.residuals.push_back(std::abs(lj.d1 - rj.d1));
  if (order >= 2) rep.residuals.push_back(std::abs(lj.d2 - rj.d2));
  if (order >= 3) rep.residuals.push_back(std::abs(left.d3(left.hi()) - right.d3(right.lo())));
  rep.pass = std::all_of(rep.residuals.begin(), rep.residuals.end(),
                         [tol](double r) { return r <= tol; });
  return rep;
}

}  // namespace rictube
