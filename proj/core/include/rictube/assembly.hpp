#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

#include "rictube/builders.hpp"
#include "rictube/curvature.hpp"
#include "rictube/profile.hpp"
#include "rictube/report.hpp"

namespace rictube::assembly {

/// Boundary manifold of the orbit space, named by the quotient it realizes.
/// The pair (dim, rhoF) fixes the reference fiber metric used for collars.
struct FiberKind {
  enum Kind { CP, HP, CPodd_mod_Z2, S_mod_Gamma } kind = CP;
  int m = 1;                // projective index (CP/HP/CPodd)
  int n = 2;                // sphere dimension (S_mod_Gamma)
  std::string group_label;  // finite group, label only

  int dim() const;
  double rhoF() const;
  std::string to_string() const;
};

/// Boundary of the orbit-space base: scale, principal-curvature infimum
/// (outward normal) and the fiber it carries.
struct BoundaryData {
  std::string label;
  double lambda = 1.0;
  double p_inf = 0.0;
  FiberKind fiber_kind;
};

/// Warped-interval base ds^2 + psi^2 g_F on [a, b] with both ends open for
/// gluing.  Boundaries are labelled "left" and "right".
struct ShellBase {
  Profile psi;
  int d = 2;
  double rhoF = 1.0;
};

/// Warped-interval base closing smoothly at the left end (psi(a) = 0,
/// psi'(a) = 1); single boundary labelled "boundary".
struct CapBase {
  Profile psi;
  int d = 2;
  double rhoF = 1.0;
};

/// A base given only through its boundary data plus a Ricci-positivity
/// assertion; nothing about the interior is checked.
struct AbstractBase {
  std::vector<BoundaryData> boundaries;
  bool ric_positive_assertion = true;
};

using BaseSpec = std::variant<AbstractBase, ShellBase, CapBase>;

struct SingularTubeSpec {
  int q = 1;
  int m = 1;
  bool z2_quotient = false;  // normalizer case: same pipeline, isometric quotient
};

struct ExceptionalTubeSpec {
  int n = 2;
  std::string group_label = "Gamma";
};

struct TubeAttachment {
  std::string boundary_label;
  std::variant<SingularTubeSpec, ExceptionalTubeSpec> spec;
};

struct AssemblyConfig {
  BaseSpec base;
  std::vector<TubeAttachment> tubes;
  double eps = 0.5;
  double nu = 0.0;  // <= 0 selects nu automatically from the tube bounds
  std::map<std::string, double> collar_lengths;  // per label; missing = auto
  int grid_points = 2048;
  double smoothing_window_frac = 1e-2;
  std::uint64_t seed = 1;
};

/// Designed data for one boundary, embedded in the report so every verdict
/// can be reproduced from the emitted document alone.
struct BoundaryOutcome {
  std::string label;
  double lambda = 0.0;
  double p_inf = 0.0;
  double collar_slope0 = 0.0;
  double collar_slope1 = 0.0;
  double collar_length = 0.0;
  std::optional<Profile> collar;
  double tube_lambda = 0.0;
  double tube_Lambda = 0.0;
  std::optional<Profile> tube_f;
  std::optional<Profile> tube_h;
  std::optional<TubeParams> tube_params;
  std::optional<int> exceptional_n;
  double smoothing_window = 0.0;
  double smoothing_d2_mismatch = 0.0;
};

struct StageReport {
  std::string stage;
  ConditionReport report;
};

struct FeasibilityReport {
  std::vector<StageReport> stages;
  std::vector<BoundaryOutcome> boundaries;
  std::vector<std::string> assumptions;
  std::map<std::string, double> notes;
  std::map<std::string, std::string> conventions;
  double nu_used = 0.0;
  bool overall = false;

  bool stage_pass(const std::string& stage) const;
};

struct DesignOptions {
  double smoothing_window_frac = 1e-2;
  double delta = 0.0;  // <= 0: choose from lambda and Lambda
  int grid_points = 2048;
  int max_retries = 8;
  Strictness strictness;
};

struct TubeDesign {
  Profile f;
  Profile h;
  TubeParams params;  // with iota resolved
  ConditionReport report;
  double smoothing_window = 0.0;
};

/// Full tube construction: base profile, plateau level set, fiber bridge,
/// then verification; the bridge window shrinks on retry.  Throws
/// InfeasibleParams when nu violates its hard bound (message names it).
TubeDesign design_tube(const TubeParams& params, const DesignOptions& options = {});

/// Tube around an isolated exceptional orbit: a single concave profile with
/// the product fiber, checked through the warped-interval Ricci formulas.
struct ExceptionalTube {
  Profile h;
  double radius = 0.0;
  ConditionReport report;
};
ExceptionalTube build_exceptional_tube(int n, double lambda, double Lambda, double nu);

/// Runs the full gluing feasibility pipeline: base positivity, collars,
/// Perelman margins, nu budget, tube design and verification, junction jet
/// matching.  Stage failures are report entries; only structural config
/// errors throw.
FeasibilityReport assemble(const AssemblyConfig& config);

struct DoubleOptions {
  int sec_points = 40;
  int sec_planes = 30;
  std::uint64_t seed = 7;
  double step = 1e-5;
};

/// The mirror-double of the round disc: verifies the order-3 jet match of
/// the sine cap against its reverse and samples the sectional minimum of the
/// disc chart.  Requires f = h = the unit sine cap on [0, pi/2].
FeasibilityReport assemble_double(const Profile& f, const Profile& h,
                                  const DoubleOptions& options = {});

/// Two-boundary feasibility scan over a family of warped-interval bases;
/// one CSV row per family member.
struct ShellFamilyMember {
  std::string kind;  // "sine" or "constant"
  double amplitude = 1.0;
  double trim = 0.3;      // sine: domain [trim, pi - trim]
  double value = 1.0;     // constant: psi level
  double lo = 0.0, hi = 1.0;  // constant: interval
};
void experiment_shell_scan(int d, double rhoF, const std::vector<ShellFamilyMember>& family,
                           std::ostream& csv, int grid_points = 512);

}  // namespace rictube::assembly
