#include "rictube/assembly.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <iomanip>
#include <set>
#include <sstream>

#include "rictube/oracle.hpp"

namespace rictube::assembly {

namespace {

constexpr const char* kNu0Assumption =
    "nu0: a horizontal-distribution constant nu0 > 0 exists so the regular-part submersion "
    "metric is Ricci positive for all nu < nu0 (asserted, not computed)";

double auto_delta(double lambda, double Lambda) {
  double d = 0.1;
  d = std::min(d, 0.5 * std::asin(std::min(lambda, 1.0)));
  d = std::min(d, 0.5 * std::acos(Lambda));
  return d;
}

ConditionEntry make_entry(const std::string& name, double margin, double witness, bool strict,
                          const Strictness& s) {
  return ConditionEntry{name, s.passes(margin, strict), margin, witness, strict};
}

/// Collar + tube construction for one boundary; failures along the way are
/// converted into failing report entries so the other boundaries still run.
struct BoundaryPipeline {
  BoundaryData data;
  const TubeAttachment* attachment = nullptr;
  double collar_length = 0.0;
  int d = 2;
  double rhoF = 1.0;
};

}  // namespace

int FiberKind::dim() const {
  switch (kind) {
    case CP:
    case CPodd_mod_Z2:
      return 2 * m;
    case HP:
      return 4 * m;
    case S_mod_Gamma:
      return n;
  }
  return 0;
}

double FiberKind::rhoF() const {
  switch (kind) {
    case CP:
    case CPodd_mod_Z2:
      return einstein_constant(1, m);
    case HP:
      return einstein_constant(3, m);
    case S_mod_Gamma:
      return n - 1.0;
  }
  return 0.0;
}

std::string FiberKind::to_string() const {
  std::ostringstream os;
  switch (kind) {
    case CP: os << "CP(" << m << ")"; break;
    case HP: os << "HP(" << m << ")"; break;
    case CPodd_mod_Z2: os << "CPodd_mod_Z2(" << m << ")"; break;
    case S_mod_Gamma: os << "S_mod_Gamma(" << n << ", " << group_label << ")"; break;
  }
  return os.str();
}

bool FeasibilityReport::stage_pass(const std::string& stage) const {
  for (const auto& s : stages)
    if (s.stage == stage) return s.report.all_pass();
  return false;
}

TubeDesign design_tube(const TubeParams& params, const DesignOptions& options) {
  params.validate();
  const double bound = nu_bound(params.lambda, params.eps);
  if (!(params.nu < bound)) {
    std::ostringstream os;
    os << "infeasible: requires nu < lambda*eps/(1+eps) = " << bound << ", got nu = "
       << params.nu;
    throw InfeasibleParams(os.str());
  }
  const double plateau = fiber_boundary_scale(1.0 + params.eps, params.nu);

  const double delta =
      options.delta > 0.0 ? options.delta : auto_delta(params.lambda, params.Lambda);
  TubeBaseResult base = build_tube_base(params.lambda, params.Lambda, delta);

  double window = options.smoothing_window_frac * base.radius;
  std::string last_failure;
  for (int attempt = 0; attempt <= options.max_retries; ++attempt) {
    try {
      Profile f = build_tube_fiber(base.profile, plateau, params.iota, window);
      TubeParams resolved = params;
      if (resolved.iota <= 0.0) {
        // Plateau start is the second-to-last knot by construction.
        const auto ks = f.knots();
        const double plateau_start = ks.back();
        resolved.iota = std::min(0.05 * base.radius, 0.5 * (base.radius - plateau_start));
      }
      const std::vector<double> grid =
          check_grid2(f, base.profile, options.grid_points);
      ConditionReport rep =
          verify_tube(f, base.profile, resolved, grid, options.strictness);
      if (rep.all_pass()) {
        return TubeDesign{std::move(f), base.profile, resolved, std::move(rep), window};
      }
      std::ostringstream os;
      os << "verification failed:";
      for (const auto& e : rep.entries)
        if (!e.pass) os << ' ' << e.name;
      last_failure = os.str();
    } catch (const DesignFailure& e) {
      last_failure = e.what();
    }
    window *= 0.5;
  }
  throw DesignFailure("design_tube: retries exhausted; last failure: " + last_failure);
}

ExceptionalTube build_exceptional_tube(int n, double lambda, double Lambda, double nu) {
  if (n < 1) throw InvalidParam("build_exceptional_tube: n must be at least 1");
  if (!(Lambda > 0.0 && Lambda < 1.0))
    throw InvalidParam("build_exceptional_tube: Lambda must lie in (0,1)");
  if (!(lambda > 0.0)) throw InvalidParam("build_exceptional_tube: lambda must be positive");
  if (!(nu > 0.0)) throw InvalidParam("build_exceptional_tube: nu must be positive");

  TubeBaseResult base = build_tube_base(lambda, Lambda, auto_delta(lambda, Lambda));
  ConditionReport rep;
  Strictness strict;

  double min_radial = 1e300, min_fiber = 1e300, wit_r = 0.0, wit_f = 0.0;
  for (double r : check_grid(base.profile)) {
    const WarpedIntervalRicci ric =
        ricci_warped_interval(base.profile.eval(r), n, n - 1.0);
    if (ric.radial < min_radial) { min_radial = ric.radial; wit_r = r; }
    if (ric.fiber < min_fiber) { min_fiber = ric.fiber; wit_f = r; }
  }
  rep.add(make_entry("disc_ricci_radial_positive", min_radial, wit_r, true, strict));
  rep.add(make_entry("disc_ricci_fiber_positive", min_fiber, wit_f, true, strict));

  const Jet2 jb = base.profile.eval(base.radius);
  rep.add(ConditionEntry{"boundary_value", std::abs(jb.value - lambda) <= 1e-10,
                         1e-10 - std::abs(jb.value - lambda), base.radius, false});
  rep.add(ConditionEntry{"boundary_slope", std::abs(jb.d1 - Lambda) <= 1e-10,
                         1e-10 - std::abs(jb.d1 - Lambda), base.radius, false});
  rep.assumptions = {
      "product_fiber_positivity: the normal homogeneous factor nu*g0 has positive Ricci "
      "curvature by hypothesis (finite fundamental group)",
      "finite_quotient: the group acts isometrically, so the quotient metric is locally "
      "isometric to the product (label only)"};
  return ExceptionalTube{std::move(base.profile), base.radius, std::move(rep)};
}

namespace {

struct BoundaryResult {
  BoundaryOutcome outcome;
  ConditionReport collar_report;
  ConditionReport tube_report;
  ConditionReport junction_report;
  std::vector<std::string> assumptions;
  bool has_tube_bound = false;  // singular tubes constrain nu
  double nu_bound_value = 0.0;
};

/// Stage A of a boundary: condition (2), Perelman window, collar build.
/// Returns everything the nu selection and tube design need.
BoundaryResult run_collar_stage(const BoundaryPipeline& bp, const Strictness& strict) {
  BoundaryResult out;
  out.outcome.label = bp.data.label;
  out.outcome.lambda = bp.data.lambda;
  out.outcome.p_inf = bp.data.p_inf;
  ConditionReport& rep = out.collar_report;

  const double lambda = bp.data.lambda;
  const double p = bp.data.p_inf;
  const double cond2 = p + 1.0 / lambda;
  rep.add(make_entry("boundary_condition2", cond2, 0.0, true, strict));
  if (!(cond2 > 0.0)) return out;

  const double window_hi = std::min(lambda * p, 0.0);
  if (!(window_hi > -1.0)) {
    rep.add(ConditionEntry{"collar_slope_window_nonempty", false, window_hi + 1.0, 0.0, true});
    return out;
  }
  rep.add(make_entry("collar_slope_window_nonempty", window_hi + 1.0, 0.0, true, strict));

  const double slope0 = 0.5 * (-1.0 + window_hi);
  const PerelmanResult pr = perelman_check(lambda, p, slope0);
  rep.add(make_entry("perelman_margin", pr.margin, 0.0, true, strict));

  const double slope1 = slope0 - 0.1 * (1.0 + slope0);
  const double length = bp.collar_length > 0.0 ? bp.collar_length : 0.1 * lambda;
  Profile collar = build_collar(lambda, slope0, slope1, length);

  double min_theta = 1e300, min_neg_d2 = 1e300, min_slope_gap = 1e300;
  double wt = 0.0, wd = 0.0, ws = 0.0;
  double min_radial = 1e300, min_fiber = 1e300;
  double wr = 0.0, wf = 0.0;
  for (double s : check_grid(collar, 512, -1e300)) {
    const Jet2 j = collar.eval(s);
    if (j.value < min_theta) { min_theta = j.value; wt = s; }
    if (-j.d2 < min_neg_d2) { min_neg_d2 = -j.d2; wd = s; }
    if (1.0 - std::abs(j.d1) < min_slope_gap) { min_slope_gap = 1.0 - std::abs(j.d1); ws = s; }
    const WarpedIntervalRicci ric = ricci_warped_interval(j, bp.d, bp.rhoF);
    if (ric.radial < min_radial) { min_radial = ric.radial; wr = s; }
    if (ric.fiber < min_fiber) { min_fiber = ric.fiber; wf = s; }
  }
  rep.add(make_entry("collar_positive", min_theta, wt, true, strict));
  rep.add(make_entry("collar_concave", min_neg_d2, wd, true, strict));
  rep.add(make_entry("collar_slope_below_one", min_slope_gap, ws, true, strict));
  rep.add(make_entry("collar_ricci_radial_positive", min_radial, wr, true, strict));
  rep.add(make_entry("collar_ricci_fiber_positive", min_fiber, wf, true, strict));
  rep.add(make_entry("collar_far_slope_above_minus_one", slope1 + 1.0, length, true, strict));

  out.outcome.collar_slope0 = slope0;
  out.outcome.collar_slope1 = slope1;
  out.outcome.collar_length = length;
  out.outcome.tube_lambda = collar.eval(length).value;
  out.outcome.tube_Lambda = -slope1;
  out.outcome.collar = std::move(collar);
  return out;
}

/// Stage B: tube design/verification against the collar end, then the
/// order-1 junction match and the smoothing plan for the order-2 jump.
void run_tube_stage(BoundaryResult& br, const BoundaryPipeline& bp, double eps, double nu,
                    const AssemblyConfig& cfg, const Strictness& strict) {
  if (!br.outcome.collar) return;
  ConditionReport& rep = br.tube_report;
  const double lam = br.outcome.tube_lambda;
  const double Lam = br.outcome.tube_Lambda;

  try {
    if (const auto* sing = std::get_if<SingularTubeSpec>(&bp.attachment->spec)) {
      TubeParams tp;
      tp.q = sing->q;
      tp.m = sing->m;
      tp.eps = eps;
      tp.nu = nu;
      tp.lambda = lam;
      tp.Lambda = Lam;
      DesignOptions opt;
      opt.smoothing_window_frac = cfg.smoothing_window_frac;
      opt.grid_points = cfg.grid_points;
      opt.strictness = strict;
      TubeDesign td = design_tube(tp, opt);
      rep.merge(td.report, "tube_");
      br.outcome.tube_params = td.params;
      br.outcome.smoothing_window = td.smoothing_window;
      br.outcome.tube_f = std::move(td.f);
      br.outcome.tube_h = std::move(td.h);
      if (sing->z2_quotient)
        br.assumptions.push_back(
            "z2_quotient: the order-two quotient acts isometrically on the circle-case tube "
            "(label only)");
    } else {
      const auto& exc = std::get<ExceptionalTubeSpec>(bp.attachment->spec);
      ExceptionalTube et = build_exceptional_tube(exc.n, lam, Lam, nu);
      rep.merge(et.report, "tube_");
      br.assumptions = et.report.assumptions;
      br.outcome.exceptional_n = exc.n;
      br.outcome.tube_h = std::move(et.h);
    }
  } catch (const std::exception& e) {
    rep.add(ConditionEntry{std::string("tube_design: ") + e.what(), false, -1.0, 0.0, true});
    return;
  }

  // Junction: the tube boundary meets the collar's far end with the collar
  // parameter reversed.
  const Profile& tube_h = *br.outcome.tube_h;
  const Profile flipped = mirror(*br.outcome.collar);
  const MatchReport jm = jet_match(tube_h, flipped, 1);
  ConditionReport& jr = br.junction_report;
  jr.add(ConditionEntry{"junction_value_match", jm.residuals[0] <= jm.tolerance,
                        jm.tolerance - jm.residuals[0], tube_h.hi(), false});
  jr.add(ConditionEntry{"junction_slope_match", jm.residuals[1] <= jm.tolerance,
                        jm.tolerance - jm.residuals[1], tube_h.hi(), false});
  const double d2_tube = tube_h.eval(tube_h.hi()).d2;
  const double d2_collar = flipped.eval(flipped.lo()).d2;
  br.outcome.smoothing_d2_mismatch = std::abs(d2_tube - d2_collar);
  if (br.outcome.smoothing_window <= 0.0)
    br.outcome.smoothing_window = 1e-2 * (tube_h.hi() - tube_h.lo());
}

void base_positivity_stage(const AssemblyConfig& cfg, FeasibilityReport& out,
                           std::vector<BoundaryData>& boundaries, int& d, double& rhoF,
                           const Strictness& strict) {
  ConditionReport rep;
  if (const auto* shell = std::get_if<ShellBase>(&cfg.base)) {
    d = shell->d;
    rhoF = shell->rhoF;
    double min_radial = 1e300, min_fiber = 1e300, wr = 0.0, wf = 0.0;
    for (double s : check_grid(shell->psi, cfg.grid_points, -1e300)) {
      const WarpedIntervalRicci ric =
          ricci_warped_interval(shell->psi.eval(s), shell->d, shell->rhoF);
      if (ric.radial < min_radial) { min_radial = ric.radial; wr = s; }
      if (ric.fiber < min_fiber) { min_fiber = ric.fiber; wf = s; }
    }
    rep.add(make_entry("base_ricci_radial_positive", min_radial, wr, true, strict));
    rep.add(make_entry("base_ricci_fiber_positive", min_fiber, wf, true, strict));

    const Jet2 ja = shell->psi.eval(shell->psi.lo());
    const Jet2 jb = shell->psi.eval(shell->psi.hi());
    boundaries.push_back(BoundaryData{"left", ja.value, -ja.d1 / ja.value, FiberKind{}});
    boundaries.push_back(BoundaryData{"right", jb.value, jb.d1 / jb.value, FiberKind{}});
  } else if (const auto* cap = std::get_if<CapBase>(&cfg.base)) {
    d = cap->d;
    rhoF = cap->rhoF;
    const Jet2 j0 = cap->psi.eval(cap->psi.lo());
    rep.add(ConditionEntry{"cap_cone_value", std::abs(j0.value) <= 1e-12,
                           1e-12 - std::abs(j0.value), cap->psi.lo(), false});
    rep.add(ConditionEntry{"cap_cone_slope", std::abs(j0.d1 - 1.0) <= 1e-10,
                           1e-10 - std::abs(j0.d1 - 1.0), cap->psi.lo(), false});
    double min_radial = 1e300, min_fiber = 1e300, wr = 0.0, wf = 0.0;
    for (double s : check_grid(cap->psi, cfg.grid_points)) {
      const WarpedIntervalRicci ric = ricci_warped_interval(cap->psi.eval(s), cap->d, cap->rhoF);
      if (ric.radial < min_radial) { min_radial = ric.radial; wr = s; }
      if (ric.fiber < min_fiber) { min_fiber = ric.fiber; wf = s; }
    }
    rep.add(make_entry("base_ricci_radial_positive", min_radial, wr, true, strict));
    rep.add(make_entry("base_ricci_fiber_positive", min_fiber, wf, true, strict));

    const Jet2 jb = cap->psi.eval(cap->psi.hi());
    boundaries.push_back(BoundaryData{"boundary", jb.value, jb.d1 / jb.value, FiberKind{}});
  } else {
    const auto& abs_base = std::get<AbstractBase>(cfg.base);
    rep.add(ConditionEntry{"base_ricci_positive_asserted", abs_base.ric_positive_assertion,
                           abs_base.ric_positive_assertion ? 0.0 : -1.0, 0.0, false});
    out.assumptions.push_back(
        "abstract_base: interior Ricci positivity of the base is asserted, not checked");
    boundaries = abs_base.boundaries;
    if (!boundaries.empty()) {
      d = boundaries.front().fiber_kind.dim();
      rhoF = boundaries.front().fiber_kind.rhoF();
    }
  }
  out.stages.push_back(StageReport{"base_positivity", std::move(rep)});
}

}  // namespace

FeasibilityReport assemble(const AssemblyConfig& config) {
  FeasibilityReport out;
  out.conventions["collar_metric"] =
      "theta is the length scale: collar metric ds^2 + theta(s)^2 g_P, boundary scale "
      "lambda_i = theta(0)";

  std::vector<BoundaryData> boundaries;
  int d = 2;
  double rhoF = 1.0;
  Strictness strict;
  base_positivity_stage(config, out, boundaries, d, rhoF, strict);

  // Structural matching of boundaries and tubes.
  std::set<std::string> boundary_labels, tube_labels;
  for (const auto& b : boundaries) {
    if (!boundary_labels.insert(b.label).second)
      throw ConfigError("duplicate boundary label '" + b.label + "'");
  }
  for (const auto& t : config.tubes) {
    if (!tube_labels.insert(t.boundary_label).second)
      throw ConfigError("duplicate tube attachment for boundary '" + t.boundary_label + "'");
    if (!boundary_labels.count(t.boundary_label))
      throw ConfigError("tube attached to unknown boundary '" + t.boundary_label + "'");
  }
  for (const auto& b : boundaries)
    if (!tube_labels.count(b.label))
      throw ConfigError("boundary '" + b.label + "' has no tube attachment");

  std::vector<BoundaryPipeline> pipelines;
  for (const auto& b : boundaries) {
    BoundaryPipeline bp;
    bp.data = b;
    for (const auto& t : config.tubes)
      if (t.boundary_label == b.label) bp.attachment = &t;
    const auto it = config.collar_lengths.find(b.label);
    bp.collar_length = it == config.collar_lengths.end() ? 0.0 : it->second;
    if (std::holds_alternative<AbstractBase>(config.base)) {
      bp.d = b.fiber_kind.dim();
      bp.rhoF = b.fiber_kind.rhoF();
    } else {
      bp.d = d;
      bp.rhoF = rhoF;
    }
    pipelines.push_back(bp);
  }
  std::sort(pipelines.begin(), pipelines.end(),
            [](const BoundaryPipeline& a, const BoundaryPipeline& b) {
              return a.data.label < b.data.label;
            });

  // Collar stage (independent per boundary).
  std::vector<BoundaryResult> results(pipelines.size());
  {
    std::vector<std::future<BoundaryResult>> futs;
    futs.reserve(pipelines.size());
    for (const auto& bp : pipelines)
      futs.push_back(std::async(std::launch::async,
                                [&bp, &strict] { return run_collar_stage(bp, strict); }));
    for (size_t i = 0; i < futs.size(); ++i) results[i] = futs[i].get();
  }
  {
    ConditionReport collars;
    for (auto& r : results) collars.merge(r.collar_report, r.outcome.label + "_");
    out.stages.push_back(StageReport{"collars_and_perelman", std::move(collars)});
  }

  // nu selection: strictly inside every singular-tube bound.
  double nu = config.nu;
  double min_bound = 1e300;
  for (size_t i = 0; i < pipelines.size(); ++i) {
    if (std::holds_alternative<SingularTubeSpec>(pipelines[i].attachment->spec) &&
        results[i].outcome.collar) {
      results[i].has_tube_bound = true;
      results[i].nu_bound_value = nu_bound(results[i].outcome.tube_lambda, config.eps);
      min_bound = std::min(min_bound, results[i].nu_bound_value);
    }
  }
  if (nu <= 0.0) nu = min_bound < 1e300 ? 0.9 * min_bound : 0.1;
  out.nu_used = nu;
  {
    ConditionReport budget;
    for (const auto& r : results) {
      if (!r.has_tube_bound) continue;
      budget.add(ConditionEntry{r.outcome.label + "_nu_budget",
                                strict.passes(r.nu_bound_value - nu, true),
                                r.nu_bound_value - nu, 0.0, true});
    }
    budget.assumptions.push_back(kNu0Assumption);
    out.stages.push_back(StageReport{"nu_budget", std::move(budget)});
  }

  // Tube stage (concurrent; merged in label order).
  {
    std::vector<std::future<void>> futs;
    for (size_t i = 0; i < pipelines.size(); ++i) {
      BoundaryResult& br = results[i];
      const BoundaryPipeline& bp = pipelines[i];
      futs.push_back(std::async(std::launch::async, [&br, &bp, nu, &config, &strict] {
        run_tube_stage(br, bp, config.eps, nu, config, strict);
      }));
    }
    for (auto& f : futs) f.get();
  }
  {
    ConditionReport tubes, junctions;
    for (auto& r : results) {
      tubes.merge(r.tube_report, r.outcome.label + "_");
      junctions.merge(r.junction_report, r.outcome.label + "_");
      for (const auto& a : r.assumptions) out.assumptions.push_back(a);
    }
    out.stages.push_back(StageReport{"tubes", std::move(tubes)});
    out.stages.push_back(StageReport{"junctions", std::move(junctions)});
  }

  for (auto& r : results) {
    out.notes[r.outcome.label + "_smoothing_window"] = r.outcome.smoothing_window;
    out.notes[r.outcome.label + "_smoothing_d2_mismatch"] = r.outcome.smoothing_d2_mismatch;
    out.boundaries.push_back(std::move(r.outcome));
  }

  // Deduplicate assumptions, preserving first occurrence.
  {
    std::vector<std::string> uniq;
    for (auto& a : out.assumptions)
      if (std::find(uniq.begin(), uniq.end(), a) == uniq.end()) uniq.push_back(a);
    for (const auto& s : out.stages)
      for (const auto& a : s.report.assumptions)
        if (std::find(uniq.begin(), uniq.end(), a) == uniq.end()) uniq.push_back(a);
    out.assumptions = std::move(uniq);
  }

  out.overall = true;
  for (const auto& s : out.stages)
    if (!s.report.all_pass()) out.overall = false;
  return out;
}

FeasibilityReport assemble_double(const Profile& f, const Profile& h,
                                  const DoubleOptions& options) {
  const auto is_unit_sine_cap = [](const Profile& p) {
    if (p.segments().size() != 1) return false;
    const auto* arc = std::get_if<SineArc>(&p.segments().front().shape);
    return arc != nullptr && std::abs(arc->a - 1.0) <= 1e-12 && std::abs(arc->b) <= 1e-12 &&
           std::abs(p.lo()) <= 1e-12 && std::abs(p.hi() - M_PI / 2.0) <= 1e-12;
  };
  if (!is_unit_sine_cap(f) || !is_unit_sine_cap(h))
    throw InvalidParam("assemble_double requires f = h = the unit sine cap on [0, pi/2]");

  FeasibilityReport out;
  out.conventions["double"] =
      "disc of radius pi/2 with the round profile, glued to its mirror across the equator";

  ConditionReport jets;
  const MatchReport jm = jet_match(f, mirror(f), 3);
  const char* names[4] = {"double_value_match", "double_slope_match", "double_curv_match",
                          "double_jerk_match"};
  for (int k = 0; k < 4; ++k) {
    jets.add(ConditionEntry{names[static_cast<size_t>(k)],
                            jm.residuals[static_cast<size_t>(k)] <= 1e-12,
                            1e-12 - jm.residuals[static_cast<size_t>(k)], f.hi(), false});
  }
  out.stages.push_back(StageReport{"jet_match", std::move(jets)});

  ConditionReport sec;
  const oracle::ChartMetric chart = oracle::chart_doubly_warped(f, h, 1, 1);
  const double sec_min = oracle::sectional_min(chart, options.sec_points, options.sec_planes,
                                               options.seed, options.step);
  sec.add(ConditionEntry{"sampled_sectional_nonnegative", sec_min >= -1e-8, sec_min + 1e-8,
                         0.0, false});
  out.notes["sec_min_sampled"] = sec_min;
  out.conventions["quotient_sectional"] =
      "submersions do not decrease sectional curvature; the quotient verdict follows from "
      "the sampled product bound and is not computed separately";
  out.stages.push_back(StageReport{"sectional", std::move(sec)});

  out.overall = true;
  for (const auto& s : out.stages)
    if (!s.report.all_pass()) out.overall = false;
  return out;
}

void experiment_shell_scan(int d, double rhoF, const std::vector<ShellFamilyMember>& family,
                           std::ostream& csv, int grid_points) {
  csv << "kind,amplitude,trim,value,lo,hi,lambda_left,p_left,margin2_left,lambda_right,"
         "p_right,margin2_right,min_radial,min_fiber,feasible\n";
  csv << std::setprecision(17);
  for (const auto& mem : family) {
    Profile psi = mem.kind == "constant"
                      ? Profile::constant(mem.value, mem.lo, mem.hi)
                      : Profile::sine(mem.amplitude, 0.0, mem.trim, M_PI - mem.trim);
    const Jet2 ja = psi.eval(psi.lo());
    const Jet2 jb = psi.eval(psi.hi());
    const double lam_l = ja.value, p_l = -ja.d1 / ja.value;
    const double lam_r = jb.value, p_r = jb.d1 / jb.value;
    const double m2_l = p_l + 1.0 / lam_l;
    const double m2_r = p_r + 1.0 / lam_r;
    double min_radial = 1e300, min_fiber = 1e300;
    for (double s : check_grid(psi, grid_points, -1e300)) {
      const WarpedIntervalRicci ric = ricci_warped_interval(psi.eval(s), d, rhoF);
      min_radial = std::min(min_radial, ric.radial);
      min_fiber = std::min(min_fiber, ric.fiber);
    }
    const bool feasible =
        m2_l > 0.0 && m2_r > 0.0 && min_radial > 0.0 && min_fiber > 0.0;
    csv << mem.kind << ',' << mem.amplitude << ',' << mem.trim << ',' << mem.value << ','
        << psi.lo() << ',' << psi.hi() << ',' << lam_l << ',' << p_l << ',' << m2_l << ','
        << lam_r << ',' << p_r << ',' << m2_r << ',' << min_radial << ',' << min_fiber << ','
        << (feasible ? 1 : 0) << '\n';
  }
}

}  // namespace rictube::assembly
