#include "rictube/serialize.hpp"

#include <json.hpp>

namespace rictube {

namespace {

using nlohmann::json;

json jet_to_json(const Jet2& j) { return json::array({j.value, j.d1, j.d2}); }

Jet2 jet_from_json(const json& a) {
  if (!a.is_array() || a.size() != 3) throw InvalidParam("jet must be [value, d1, d2]");
  return Jet2{a[0].get<double>(), a[1].get<double>(), a[2].get<double>()};
}

json profile_to_json(const Profile& p) {
  json segs = json::array();
  for (const auto& s : p.segments()) {
    json e;
    e["from"] = s.from;
    e["to"] = s.to;
    if (const auto* arc = std::get_if<SineArc>(&s.shape)) {
      e["kind"] = "sine_arc";
      e["a"] = arc->a;
      e["b"] = arc->b;
    } else if (const auto* c = std::get_if<ConstantSeg>(&s.shape)) {
      e["kind"] = "constant";
      e["c"] = c->c;
    } else {
      e["kind"] = "quintic_hermite";
      e["left"] = jet_to_json(s.eval(s.from));
      e["right"] = jet_to_json(s.eval(s.to));
    }
    segs.push_back(std::move(e));
  }
  return json{{"domain", {p.lo(), p.hi()}}, {"segments", std::move(segs)}};
}

Profile profile_from_json(const json& doc) {
  if (!doc.contains("segments")) throw InvalidParam("profile document needs 'segments'");
  std::vector<Segment> segs;
  for (const auto& e : doc.at("segments")) {
    Segment s;
    s.from = e.at("from").get<double>();
    s.to = e.at("to").get<double>();
    const std::string kind = e.at("kind").get<std::string>();
    if (kind == "sine_arc") {
      s.shape = SineArc{e.at("a").get<double>(), e.at("b").get<double>()};
    } else if (kind == "constant") {
      s.shape = ConstantSeg{e.at("c").get<double>()};
    } else if (kind == "quintic_hermite") {
      s.shape = QuinticSeg::from_jets(s.from, jet_from_json(e.at("left")), s.to,
                                      jet_from_json(e.at("right")));
    } else {
      throw InvalidParam("unknown segment kind '" + kind + "'");
    }
    segs.push_back(std::move(s));
  }
  return Profile(std::move(segs));
}

json report_to_json(const ConditionReport& rep) {
  json entries = json::array();
  for (const auto& e : rep.entries) {
    entries.push_back(json{{"name", e.name},
                           {"pass", e.pass},
                           {"worst_margin", e.worst_margin},
                           {"witness_r", e.witness_r},
                           {"strict", e.strict}});
  }
  json notes = json::object();
  for (const auto& [k, v] : rep.notes) notes[k] = v;
  return json{{"entries", std::move(entries)},
              {"pass", rep.all_pass()},
              {"assumptions", rep.assumptions},
              {"notes", std::move(notes)}};
}

json params_to_json(const TubeParams& p) {
  json j{{"q", p.q},       {"m", p.m},           {"dimP", p.dimP()},
         {"n", p.n()},     {"eps", p.eps},       {"nu", p.nu},
         {"lambda", p.lambda}, {"Lambda", p.Lambda}, {"iota", p.iota}};
  if (p.eps0) j["eps0"] = *p.eps0;
  return j;
}

TubeParams params_from_json(const json& j) {
  TubeParams p;
  p.q = j.at("q").get<int>();
  p.m = j.at("m").get<int>();
  p.eps = j.at("eps").get<double>();
  p.nu = j.at("nu").get<double>();
  p.lambda = j.at("lambda").get<double>();
  p.Lambda = j.at("Lambda").get<double>();
  p.iota = j.value("iota", 0.0);
  if (j.contains("eps0")) p.eps0 = j.at("eps0").get<double>();
  return p;
}

}  // namespace

std::string to_json_string(const Profile& p) { return profile_to_json(p).dump(2); }

Profile profile_from_json_string(const std::string& text) {
  return profile_from_json(json::parse(text));
}

std::string to_json_string(const ConditionReport& rep) { return report_to_json(rep).dump(2); }

std::string to_json_string(const QuotientReport& rep) {
  json j{{"phi", rep.phi},
         {"A_norm", rep.A_norm},
         {"T_norm", rep.T_norm},
         {"nablaN",
          json{{"X", rep.nablaN.X},
               {"w", rep.nablaN.w},
               {"radial", rep.nablaN.radial},
               {"fiber", rep.nablaN.fiber},
               {"Delta", rep.nablaN.Delta}}},
         {"rQ_radial", rep.rQ_radial},
         {"ineq521_margin", rep.ineq521_margin},
         {"normDelta2", rep.normDelta2},
         {"conditional_flags", rep.conditional_flags}};
  return j.dump(2);
}

std::string to_json_string(const MatchReport& rep) {
  return json{{"residuals", rep.residuals}, {"pass", rep.pass}, {"tolerance", rep.tolerance}}
      .dump(2);
}

std::string to_json_string(const TubeParams& p) { return params_to_json(p).dump(2); }

TubeParams tube_params_from_json_string(const std::string& text) {
  return params_from_json(json::parse(text));
}

std::string tube_document_to_json_string(const TubeParams& params, const Profile& f,
                                         const Profile& h, const ConditionReport& report,
                                         const std::string& config_echo_json) {
  json doc{{"params", params_to_json(params)},
           {"f", profile_to_json(f)},
           {"h", profile_to_json(h)},
           {"report", report_to_json(report)}};
  if (!config_echo_json.empty()) doc["config"] = json::parse(config_echo_json);
  return doc.dump(2);
}

TubeDocument tube_document_from_json_string(const std::string& text) {
  const json doc = json::parse(text);
  return TubeDocument{params_from_json(doc.at("params")), profile_from_json(doc.at("f")),
                      profile_from_json(doc.at("h"))};
}

std::string comparison_rows_to_json_string(const std::vector<oracle::ComparisonRow>& rows,
                                           const std::string& config_echo_json) {
  json arr = json::array();
  for (const auto& r : rows) {
    arr.push_back(json{{"chart", r.chart},
                       {"point", r.point},
                       {"component", r.component},
                       {"closed_form", r.closed_form},
                       {"oracle", r.oracle},
                       {"rel_err", r.rel_err}});
  }
  json doc{{"comparisons", std::move(arr)}, {"max_rel_err", oracle::max_rel_err(rows)}};
  if (!config_echo_json.empty()) doc["config"] = json::parse(config_echo_json);
  return doc.dump(2);
}

}  // namespace rictube

namespace rictube::assembly {

namespace {

using nlohmann::json;

json fiber_kind_to_json(const FiberKind& fk) {
  json j;
  switch (fk.kind) {
    case FiberKind::CP: j["kind"] = "CP"; j["m"] = fk.m; break;
    case FiberKind::HP: j["kind"] = "HP"; j["m"] = fk.m; break;
    case FiberKind::CPodd_mod_Z2: j["kind"] = "CPodd_mod_Z2"; j["m"] = fk.m; break;
    case FiberKind::S_mod_Gamma:
      j["kind"] = "S_mod_Gamma";
      j["n"] = fk.n;
      j["group"] = fk.group_label;
      break;
  }
  return j;
}

FiberKind fiber_kind_from_json(const json& j) {
  FiberKind fk;
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "CP") { fk.kind = FiberKind::CP; fk.m = j.at("m").get<int>(); }
  else if (kind == "HP") { fk.kind = FiberKind::HP; fk.m = j.at("m").get<int>(); }
  else if (kind == "CPodd_mod_Z2") { fk.kind = FiberKind::CPodd_mod_Z2; fk.m = j.at("m").get<int>(); }
  else if (kind == "S_mod_Gamma") {
    fk.kind = FiberKind::S_mod_Gamma;
    fk.n = j.at("n").get<int>();
    fk.group_label = j.value("group", "Gamma");
  } else {
    throw ConfigError("unknown fiber kind '" + kind + "'");
  }
  return fk;
}

json base_to_json(const BaseSpec& base) {
  json j;
  if (const auto* shell = std::get_if<ShellBase>(&base)) {
    j["kind"] = "shell";
    j["psi"] = json::parse(rictube::to_json_string(shell->psi));
    j["d"] = shell->d;
    j["rhoF"] = shell->rhoF;
  } else if (const auto* cap = std::get_if<CapBase>(&base)) {
    j["kind"] = "cap";
    j["psi"] = json::parse(rictube::to_json_string(cap->psi));
    j["d"] = cap->d;
    j["rhoF"] = cap->rhoF;
  } else {
    const auto& ab = std::get<AbstractBase>(base);
    j["kind"] = "abstract";
    j["ric_positive_assertion"] = ab.ric_positive_assertion;
    json bs = json::array();
    for (const auto& b : ab.boundaries) {
      bs.push_back(json{{"label", b.label},
                        {"lambda", b.lambda},
                        {"p_inf", b.p_inf},
                        {"fiber", fiber_kind_to_json(b.fiber_kind)}});
    }
    j["boundaries"] = std::move(bs);
  }
  return j;
}

BaseSpec base_from_json(const json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "shell" || kind == "cap") {
    Profile psi = rictube::profile_from_json_string(j.at("psi").dump());
    const int d = j.at("d").get<int>();
    const double rhoF = j.at("rhoF").get<double>();
    if (kind == "shell") return ShellBase{std::move(psi), d, rhoF};
    return CapBase{std::move(psi), d, rhoF};
  }
  if (kind == "abstract") {
    AbstractBase ab;
    ab.ric_positive_assertion = j.value("ric_positive_assertion", true);
    for (const auto& b : j.at("boundaries")) {
      ab.boundaries.push_back(BoundaryData{b.at("label").get<std::string>(),
                                           b.at("lambda").get<double>(),
                                           b.at("p_inf").get<double>(),
                                           fiber_kind_from_json(b.at("fiber"))});
    }
    return ab;
  }
  throw ConfigError("unknown base kind '" + kind + "'");
}

json tube_to_json(const TubeAttachment& t) {
  json j{{"boundary", t.boundary_label}};
  if (const auto* s = std::get_if<SingularTubeSpec>(&t.spec)) {
    j["type"] = "singular";
    j["q"] = s->q;
    j["m"] = s->m;
    if (s->z2_quotient) j["z2_quotient"] = true;
  } else {
    const auto& e = std::get<ExceptionalTubeSpec>(t.spec);
    j["type"] = "exceptional";
    j["n"] = e.n;
    j["group"] = e.group_label;
  }
  return j;
}

TubeAttachment tube_from_json(const json& j) {
  TubeAttachment t;
  t.boundary_label = j.at("boundary").get<std::string>();
  const std::string type = j.at("type").get<std::string>();
  if (type == "singular") {
    SingularTubeSpec s;
    s.q = j.at("q").get<int>();
    s.m = j.at("m").get<int>();
    s.z2_quotient = j.value("z2_quotient", false);
    t.spec = s;
  } else if (type == "exceptional") {
    ExceptionalTubeSpec e;
    e.n = j.at("n").get<int>();
    e.group_label = j.value("group", "Gamma");
    t.spec = e;
  } else {
    throw ConfigError("unknown tube type '" + type + "'");
  }
  return t;
}

}  // namespace

std::string to_json_string(const AssemblyConfig& cfg) {
  json j{{"base", base_to_json(cfg.base)},
         {"eps", cfg.eps},
         {"grid_points", cfg.grid_points},
         {"smoothing_window_frac", cfg.smoothing_window_frac},
         {"seed", cfg.seed}};
  j["nu"] = cfg.nu > 0.0 ? json(cfg.nu) : json("auto");
  json tubes = json::array();
  for (const auto& t : cfg.tubes) tubes.push_back(tube_to_json(t));
  j["tubes"] = std::move(tubes);
  json cl = json::object();
  for (const auto& [k, v] : cfg.collar_lengths) cl[k] = v;
  j["collar_lengths"] = std::move(cl);
  return j.dump(2);
}

AssemblyConfig config_from_json_string(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  try {
    AssemblyConfig cfg;
    cfg.base = base_from_json(j.at("base"));
    for (const auto& t : j.at("tubes")) cfg.tubes.push_back(tube_from_json(t));
    cfg.eps = j.value("eps", 0.5);
    if (j.contains("nu") && j.at("nu").is_number()) cfg.nu = j.at("nu").get<double>();
    if (j.contains("collar_lengths"))
      for (const auto& [k, v] : j.at("collar_lengths").items())
        cfg.collar_lengths[k] = v.get<double>();
    cfg.grid_points = j.value("grid_points", 2048);
    cfg.smoothing_window_frac = j.value("smoothing_window_frac", 1e-2);
    cfg.seed = j.value("seed", std::uint64_t{1});
    return cfg;
  } catch (const json::exception& e) {
    throw ConfigError(std::string("bad assembly config: ") + e.what());
  }
}

std::string to_json_string(const FeasibilityReport& rep, const std::string& config_echo_json) {
  json stages = json::array();
  for (const auto& s : rep.stages) {
    stages.push_back(
        json{{"stage", s.stage},
             {"report", json::parse(rictube::to_json_string(s.report))}});
  }
  json bnds = json::array();
  for (const auto& b : rep.boundaries) {
    json e{{"label", b.label},
           {"lambda", b.lambda},
           {"p_inf", b.p_inf},
           {"collar_slope0", b.collar_slope0},
           {"collar_slope1", b.collar_slope1},
           {"collar_length", b.collar_length},
           {"tube_lambda", b.tube_lambda},
           {"tube_Lambda", b.tube_Lambda},
           {"smoothing_window", b.smoothing_window},
           {"smoothing_d2_mismatch", b.smoothing_d2_mismatch}};
    if (b.collar) e["collar"] = json::parse(rictube::to_json_string(*b.collar));
    if (b.tube_f) e["tube_f"] = json::parse(rictube::to_json_string(*b.tube_f));
    if (b.tube_h) e["tube_h"] = json::parse(rictube::to_json_string(*b.tube_h));
    if (b.tube_params) e["tube_params"] = json::parse(rictube::to_json_string(*b.tube_params));
    if (b.exceptional_n) e["exceptional_n"] = *b.exceptional_n;
    bnds.push_back(std::move(e));
  }
  json notes = json::object();
  for (const auto& [k, v] : rep.notes) notes[k] = v;
  json conv = json::object();
  for (const auto& [k, v] : rep.conventions) conv[k] = v;
  json doc{{"stages", std::move(stages)},
           {"boundaries", std::move(bnds)},
           {"assumptions", rep.assumptions},
           {"notes", std::move(notes)},
           {"conventions", std::move(conv)},
           {"nu_used", rep.nu_used},
           {"overall", rep.overall}};
  if (!config_echo_json.empty()) doc["config"] = json::parse(config_echo_json);
  return doc.dump(2);
}

}  // namespace rictube::assembly
