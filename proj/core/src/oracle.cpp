#include "rictube/oracle.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

namespace rictube::oracle {

namespace {

using Real = long double;
using Mat = Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic>;
using Vec = Eigen::Matrix<Real, Eigen::Dynamic, 1>;

Mat eval_metric(const ChartMetric& metric, const std::vector<Real>& x) {
  const int d = metric.dim;
  std::vector<Real> buf(static_cast<size_t>(d) * d, 0.0L);
  metric.components(x.data(), buf.data());
  Mat g(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) g(i, j) = buf[static_cast<size_t>(i) * d + j];
  return g;
}

void require_interior(const ChartMetric& metric, const std::vector<double>& x, double margin) {
  if (static_cast<int>(x.size()) != metric.dim)
    throw InvalidParam("oracle: point dimension does not match the chart");
  for (int i = 0; i < metric.dim; ++i) {
    const auto& [lo, hi] = metric.valid_region[static_cast<size_t>(i)];
    if (x[static_cast<size_t>(i)] < lo + margin || x[static_cast<size_t>(i)] > hi - margin) {
      std::ostringstream os;
      os << "oracle: coordinate " << i << " = " << x[static_cast<size_t>(i)]
         << " too close to the valid-region boundary [" << lo << ", " << hi << "]";
      throw InvalidParam(os.str());
    }
  }
}

Mat metric_inverse_checked(const ChartMetric& metric, const Mat& g) {
  Eigen::SelfAdjointEigenSolver<Mat> es(g);
  const Real lo = es.eigenvalues().minCoeff();
  const Real hi = es.eigenvalues().maxCoeff();
  if (!(lo > 1e-10L * std::max<Real>(1.0L, hi)) || hi / lo > 1e12L) {
    std::ostringstream os;
    os << "oracle: metric on chart '" << metric.name
       << "' is not safely positive definite (eigenvalue range " << static_cast<double>(lo)
       << " .. " << static_cast<double>(hi) << ")";
    throw Singular(os.str());
  }
  return g.inverse();
}

// Gamma^k_ij in long double; core of the public christoffel().
std::vector<Real> christoffel_impl(const ChartMetric& metric, const std::vector<Real>& x,
                                   Real step) {
  const int d = metric.dim;
  const Mat g0 = eval_metric(metric, x);
  const Mat ginv = metric_inverse_checked(metric, g0);

  // dg[l](i,j) = d g_ij / d x_l
  std::vector<Mat> dg(static_cast<size_t>(d));
  std::vector<Real> xp = x;
  for (int l = 0; l < d; ++l) {
    xp[static_cast<size_t>(l)] = x[static_cast<size_t>(l)] + step;
    const Mat gp = eval_metric(metric, xp);
    xp[static_cast<size_t>(l)] = x[static_cast<size_t>(l)] - step;
    const Mat gm = eval_metric(metric, xp);
    xp[static_cast<size_t>(l)] = x[static_cast<size_t>(l)];
    dg[static_cast<size_t>(l)] = (gp - gm) / (2.0L * step);
  }

  std::vector<Real> gamma(static_cast<size_t>(d) * d * d, 0.0L);
  for (int k = 0; k < d; ++k)
    for (int i = 0; i < d; ++i)
      for (int j = i; j < d; ++j) {
        Real s = 0.0L;
        for (int l = 0; l < d; ++l)
          s += ginv(k, l) * (dg[static_cast<size_t>(i)](j, l) + dg[static_cast<size_t>(j)](i, l) -
                             dg[static_cast<size_t>(l)](i, j));
        s *= 0.5L;
        gamma[(static_cast<size_t>(k) * d + i) * d + j] = s;
        gamma[(static_cast<size_t>(k) * d + j) * d + i] = s;
      }
  return gamma;
}

struct RiemannData {
  std::vector<Real> gamma;    // at x
  std::vector<Real> riemann;  // R^i_jkl
  Mat g;
};

RiemannData riemann_impl(const ChartMetric& metric, const std::vector<Real>& x, Real step) {
  const int d = metric.dim;
  RiemannData out;
  out.g = eval_metric(metric, x);
  out.gamma = christoffel_impl(metric, x, step);

  // dGamma[l] = d Gamma / d x_l by central differences of christoffel_impl.
  std::vector<std::vector<Real>> dgamma(static_cast<size_t>(d));
  std::vector<Real> xp = x;
  for (int l = 0; l < d; ++l) {
    xp[static_cast<size_t>(l)] = x[static_cast<size_t>(l)] + step;
    const std::vector<Real> gp = christoffel_impl(metric, xp, step);
    xp[static_cast<size_t>(l)] = x[static_cast<size_t>(l)] - step;
    const std::vector<Real> gm = christoffel_impl(metric, xp, step);
    xp[static_cast<size_t>(l)] = x[static_cast<size_t>(l)];
    std::vector<Real> dl(gp.size());
    for (size_t t = 0; t < gp.size(); ++t) dl[t] = (gp[t] - gm[t]) / (2.0L * step);
    dgamma[static_cast<size_t>(l)] = std::move(dl);
  }

  const auto G = [&](int up, int lo1, int lo2) -> Real {
    return out.gamma[(static_cast<size_t>(up) * d + lo1) * d + lo2];
  };
  const auto dG = [&](int wrt, int up, int lo1, int lo2) -> Real {
    return dgamma[static_cast<size_t>(wrt)][(static_cast<size_t>(up) * d + lo1) * d + lo2];
  };

  // R^i_jkl = d_k Gamma^i_lj - d_l Gamma^i_kj + Gamma^i_km Gamma^m_lj
  //           - Gamma^i_lm Gamma^m_kj
  out.riemann.assign(static_cast<size_t>(d) * d * d * d, 0.0L);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k)
        for (int l = 0; l < d; ++l) {
          Real s = dG(k, i, l, j) - dG(l, i, k, j);
          for (int mm = 0; mm < d; ++mm) s += G(i, k, mm) * G(mm, l, j) - G(i, l, mm) * G(mm, k, j);
          out.riemann[((static_cast<size_t>(i) * d + j) * d + k) * d + l] = s;
        }
  return out;
}

Real sectional(const RiemannData& rd, int d, const Vec& X, const Vec& Y) {
  // Lower the first index and contract: K = g(R(X,Y)Y, X) / |X ^ Y|^2.
  const auto R = [&](int i, int j, int k, int l) -> Real {
    return rd.riemann[((static_cast<size_t>(i) * d + j) * d + k) * d + l];
  };
  Real num = 0.0L;
  for (int p = 0; p < d; ++p)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k)
        for (int l = 0; l < d; ++l) {
          Real gRi = 0.0L;
          for (int i = 0; i < d; ++i) gRi += rd.g(p, i) * R(i, j, k, l);
          num += gRi * X(p) * Y(j) * X(k) * Y(l);
        }
  const Real xx = X.dot(rd.g * X);
  const Real yy = Y.dot(rd.g * Y);
  const Real xy = X.dot(rd.g * Y);
  return num / (xx * yy - xy * xy);
}

Real min_sectional_at(const RiemannData& rd, int d, int planes, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Real best = std::numeric_limits<Real>::infinity();
  int done = 0;
  while (done < planes) {
    Vec X(d), Y(d);
    for (int i = 0; i < d; ++i) {
      X(i) = gauss(rng);
      Y(i) = gauss(rng);
    }
    // g-orthonormalize; reject nearly dependent draws.
    const Real nx = std::sqrt(static_cast<double>(X.dot(rd.g * X)));
    X /= nx;
    Y -= X * static_cast<Real>(X.dot(rd.g * Y));
    const Real ny2 = Y.dot(rd.g * Y);
    if (ny2 < 1e-8L) continue;
    Y /= std::sqrt(static_cast<double>(ny2));
    best = std::min(best, sectional(rd, d, X, Y));
    ++done;
  }
  return best;
}

std::vector<Real> widen(const std::vector<double>& x) {
  return std::vector<Real>(x.begin(), x.end());
}

std::vector<double> narrow(const std::vector<Real>& x) {
  std::vector<double> out(x.size());
  for (size_t i = 0; i < x.size(); ++i) out[i] = static_cast<double>(x[i]);
  return out;
}

}  // namespace

std::vector<double> christoffel(const ChartMetric& metric, const std::vector<double>& x,
                                double step) {
  require_interior(metric, x, 2.0 * step);
  return narrow(christoffel_impl(metric, widen(x), static_cast<Real>(step)));
}

CurvatureSample ricci_sample(const ChartMetric& metric, const std::vector<double>& x, double step,
                             int planes, std::uint64_t seed) {
  require_interior(metric, x, 3.0 * step);
  const int d = metric.dim;
  const RiemannData rd = riemann_impl(metric, widen(x), static_cast<Real>(step));

  CurvatureSample s;
  s.point = x;
  s.christoffel = narrow(rd.gamma);
  s.riemann = narrow(rd.riemann);

  Mat ric(d, d);
  for (int j = 0; j < d; ++j)
    for (int l = 0; l < d; ++l) {
      Real sum = 0.0L;
      for (int k = 0; k < d; ++k)
        sum += rd.riemann[((static_cast<size_t>(k) * d + j) * d + k) * d + l];
      ric(j, l) = sum;
    }
  s.ricci_asymmetry = static_cast<double>((ric - ric.transpose()).cwiseAbs().maxCoeff());
  const Mat ric_sym = 0.5L * (ric + ric.transpose());
  s.ricci.resize(static_cast<size_t>(d) * d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) s.ricci[static_cast<size_t>(i) * d + j] =
        static_cast<double>(ric_sym(i, j));

  Eigen::GeneralizedSelfAdjointEigenSolver<Mat> ges(ric_sym, rd.g);
  s.ricci_eigen.resize(static_cast<size_t>(d));
  for (int i = 0; i < d; ++i) s.ricci_eigen[static_cast<size_t>(i)] =
      static_cast<double>(ges.eigenvalues()(i));

  if (planes > 0) {
    std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
    s.sec_min_sampled = static_cast<double>(min_sectional_at(rd, d, planes, rng));
  } else {
    s.sec_min_sampled = std::numeric_limits<double>::quiet_NaN();
  }
  return s;
}

double sectional_min(const ChartMetric& metric, int points, int planes, std::uint64_t seed,
                     double step) {
  std::mt19937_64 rng(seed);
  Real best = std::numeric_limits<Real>::infinity();
  const double margin_frac = 0.02;
  for (int p = 0; p < points; ++p) {
    std::vector<double> x(static_cast<size_t>(metric.dim));
    for (int i = 0; i < metric.dim; ++i) {
      const auto& [lo, hi] = metric.valid_region[static_cast<size_t>(i)];
      const double inset = std::max(3.0 * step, margin_frac * (hi - lo));
      std::uniform_real_distribution<double> u(lo + inset, hi - inset);
      x[static_cast<size_t>(i)] = u(rng);
    }
    const RiemannData rd = riemann_impl(metric, widen(x), static_cast<Real>(step));
    best = std::min(best, min_sectional_at(rd, metric.dim, planes, rng));
  }
  return static_cast<double>(best);
}

namespace {

// Shared construction for q=1 charts.  Coordinates for m=1: (r, eta, xi1, xi2)
// with the round 3-sphere split  g_S3 = deta^2 + sin^2 eta cos^2 eta (dxi1 - dxi2)^2
//                                       + (cos^2 eta dxi1 + sin^2 eta dxi2)^2,
// fiber form nu = cos^2 eta dxi1 + sin^2 eta dxi2.  For m=2 the analogous
// 6-coordinate split of the round 5-sphere is used.
ChartMetric warped_fn_chart(std::function<Real(Real)> fv, std::function<Real(Real)> hv, int m,
                            double rlo, double rhi, const std::string& name) {
  ChartMetric c;
  c.name = name;
  if (m == 1) {
    c.dim = 4;
    c.valid_region = {{rlo, rhi}, {0.15, M_PI / 2 - 0.15}, {0.0, 6.2}, {0.0, 6.2}};
    c.components = [fv, hv](const Real* x, Real* g) {
      const Real r = x[0], eta = x[1];
      const Real f2 = fv(r) * fv(r);
      const Real h2 = hv(r) * hv(r);
      const Real ce = std::cos(eta), se = std::sin(eta);
      const Real c2 = ce * ce, s2 = se * se;
      // round part minus fiber-form square, all times h^2, plus f^2 fiber form
      Real round[4][4] = {};
      round[1][1] = 1.0L;
      round[2][2] = c2;
      round[3][3] = s2;
      const Real nu[4] = {0.0L, 0.0L, c2, s2};
      for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
          g[i * 4 + j] = h2 * (round[i][j] - nu[i] * nu[j]) + f2 * nu[i] * nu[j];
      g[0] = 1.0L;  // dr^2
    };
  } else {
    c.dim = 6;
    c.valid_region = {{rlo, rhi},   {0.15, M_PI / 2 - 0.15}, {0.15, M_PI / 2 - 0.15},
                      {0.0, 6.2},   {0.0, 6.2},              {0.0, 6.2}};
    c.components = [fv, hv](const Real* x, Real* g) {
      const Real r = x[0], eta = x[1], chi = x[2];
      const Real f2 = fv(r) * fv(r);
      const Real h2 = hv(r) * hv(r);
      const Real ce = std::cos(eta), se = std::sin(eta);
      const Real cc = std::cos(chi), sc = std::sin(chi);
      Real round[6][6] = {};
      round[1][1] = 1.0L;
      round[2][2] = se * se;
      round[3][3] = ce * ce;
      round[4][4] = se * se * cc * cc;
      round[5][5] = se * se * sc * sc;
      const Real nu[6] = {0.0L, 0.0L, 0.0L, ce * ce, se * se * cc * cc, se * se * sc * sc};
      for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j)
          g[i * 6 + j] = h2 * (round[i][j] - nu[i] * nu[j]) + f2 * nu[i] * nu[j];
      g[0] = 1.0L;
    };
  }
  return c;
}

}  // namespace

ChartMetric chart_doubly_warped(const Profile& f, const Profile& h, int q, int m) {
  if (q != 1 || (m != 1 && m != 2))
    throw InvalidParam("chart_doubly_warped supports q=1 with m in {1, 2}");
  const double rlo = std::max({f.lo(), h.lo(), 1e-3});
  const double rhi = std::min(f.hi(), h.hi());
  auto fv = [f](Real r) -> Real { return f.eval(static_cast<double>(r)).value; };
  auto hv = [h](Real r) -> Real { return h.eval(static_cast<double>(r)).value; };
  return warped_fn_chart(fv, hv, m, rlo, rhi,
                         m == 1 ? "doubly-warped-profiles" : "doubly-warped-profiles-m2");
}

ChartMetric chart_round_s4() {
  return warped_fn_chart([](Real r) { return std::sin(r); }, [](Real r) { return std::sin(r); },
                         1, 0.05, M_PI - 0.05, "round-s4");
}

ChartMetric chart_round_hopf_s3() {
  ChartMetric c;
  c.dim = 3;
  c.name = "round-s3";
  c.valid_region = {{0.15, M_PI / 2 - 0.15}, {0.0, 6.2}, {0.0, 6.2}};
  c.components = [](const Real* x, Real* g) {
    const Real eta = x[0];
    const Real c2 = std::cos(eta) * std::cos(eta);
    const Real s2 = std::sin(eta) * std::sin(eta);
    for (int i = 0; i < 9; ++i) g[i] = 0.0L;
    g[0] = 1.0L;
    g[4] = c2;
    g[8] = s2;
  };
  return c;
}

ChartMetric chart_berger_cylinder(double c) {
  if (!(c > 0.0)) throw InvalidParam("chart_berger_cylinder: fiber scale must be positive");
  return warped_fn_chart([c](Real) { return static_cast<Real>(c); },
                         [](Real) { return 1.0L; }, 1, 0.0, 2.0, "berger-cylinder");
}

ChartMetric chart_round_sphere_polar(int dim) {
  if (dim < 2 || dim > 4) throw InvalidParam("chart_round_sphere_polar: dim must be 2..4");
  ChartMetric c;
  c.dim = dim;
  c.name = "round-s" + std::to_string(dim) + "-polar";
  c.valid_region.assign(static_cast<size_t>(dim), {0.3, M_PI - 0.3});
  c.valid_region.back() = {0.0, 6.2};
  c.components = [dim](const Real* x, Real* g) {
    for (int i = 0; i < dim * dim; ++i) g[i] = 0.0L;
    Real scale = 1.0L;
    for (int i = 0; i < dim; ++i) {
      g[i * dim + i] = scale;
      const Real s = std::sin(x[i]);
      scale *= s * s;
    }
  };
  return c;
}

ChartMetric chart_flat(int dim) {
  if (dim < 1) throw InvalidParam("chart_flat: dim must be positive");
  ChartMetric c;
  c.dim = dim;
  c.name = "flat";
  c.valid_region.assign(static_cast<size_t>(dim), {-1.0, 1.0});
  c.components = [dim](const Real*, Real* g) {
    for (int i = 0; i < dim * dim; ++i) g[i] = 0.0L;
    for (int i = 0; i < dim; ++i) g[i * dim + i] = 1.0L;
  };
  return c;
}

namespace {

double rayleigh(const CurvatureSample& s, const ChartMetric& metric,
                const std::vector<double>& x, const std::vector<double>& dir) {
  const int d = metric.dim;
  std::vector<Real> buf(static_cast<size_t>(d) * d);
  const std::vector<Real> xl = widen(x);
  metric.components(xl.data(), buf.data());
  double num = 0.0, den = 0.0;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      num += s.ricci[static_cast<size_t>(i) * d + j] * dir[static_cast<size_t>(i)] *
             dir[static_cast<size_t>(j)];
      den += static_cast<double>(buf[static_cast<size_t>(i) * d + j]) *
             dir[static_cast<size_t>(i)] * dir[static_cast<size_t>(j)];
    }
  return num / den;
}

double mixed_form(const CurvatureSample& s, const ChartMetric& metric,
                  const std::vector<double>& x, const std::vector<double>& u,
                  const std::vector<double>& v) {
  const int d = metric.dim;
  std::vector<Real> buf(static_cast<size_t>(d) * d);
  const std::vector<Real> xl = widen(x);
  metric.components(xl.data(), buf.data());
  double num = 0.0, nu = 0.0, nv = 0.0;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      num += s.ricci[static_cast<size_t>(i) * d + j] * u[static_cast<size_t>(i)] *
             v[static_cast<size_t>(j)];
      nu += static_cast<double>(buf[static_cast<size_t>(i) * d + j]) *
            u[static_cast<size_t>(i)] * u[static_cast<size_t>(j)];
      nv += static_cast<double>(buf[static_cast<size_t>(i) * d + j]) *
            v[static_cast<size_t>(i)] * v[static_cast<size_t>(j)];
    }
  return num / std::sqrt(nu * nv);
}

}  // namespace

std::vector<ComparisonRow> compare_tube_ricci(const Profile& f, const Profile& h,
                                              const TubeParams& params, int samples,
                                              std::uint64_t seed, double step) {
  const ChartMetric chart = chart_doubly_warped(f, h, params.q, params.m);
  const int d = chart.dim;
  std::mt19937_64 rng(seed);
  std::vector<ComparisonRow> rows;

  for (int s = 0; s < samples; ++s) {
    std::vector<double> x(static_cast<size_t>(d));
    for (int i = 0; i < d; ++i) {
      const auto& [lo, hi] = chart.valid_region[static_cast<size_t>(i)];
      const double inset = std::max(4.0 * step, 0.01 * (hi - lo));
      std::uniform_real_distribution<double> u(lo + inset, hi - inset);
      x[static_cast<size_t>(i)] = u(rng);
    }
    const double r = x[0];
    const CurvatureSample cs = ricci_sample(chart, x, step, 0, seed);
    const DoublyWarpedRicci cf = ricci_doubly_warped(f.eval(r), h.eval(r), params);

    std::vector<double> radial(static_cast<size_t>(d), 0.0);
    radial[0] = 1.0;
    std::vector<double> horizontal(static_cast<size_t>(d), 0.0);
    horizontal[1] = 1.0;
    std::vector<double> fiber(static_cast<size_t>(d), 0.0);
    if (d == 4) {
      fiber[2] = fiber[3] = 1.0;
    } else {
      fiber[3] = fiber[4] = fiber[5] = 1.0;
    }

    const auto push = [&](const std::string& comp, double cfv, double orv) {
      rows.push_back(ComparisonRow{chart.name, x, comp, cfv, orv,
                                   std::abs(cfv - orv) / std::max(1.0, std::abs(cfv))});
    };
    push("radial", cf.radial, rayleigh(cs, chart, x, radial));
    push("horizontal", cf.horizontal, rayleigh(cs, chart, x, horizontal));
    push("fiber", cf.fiber, rayleigh(cs, chart, x, fiber));
    push("mixed_radial_fiber", 0.0, mixed_form(cs, chart, x, radial, fiber));
  }
  return rows;
}

double max_rel_err(const std::vector<ComparisonRow>& rows) {
  double m = 0.0;
  for (const auto& r : rows) m = std::max(m, r.rel_err);
  return m;
}

}  // namespace rictube::oracle
