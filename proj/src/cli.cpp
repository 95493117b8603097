#include "lgfrob/cli.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <iostream>
#include <iterator>
#include <map>
#include <sstream>

#include <CLI11.hpp>

#include "lgfrob/errors.hpp"
#include "lgfrob/jacobian.hpp"
#include "lgfrob/parser.hpp"

namespace lgfrob {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

// ---------------------------------------------------------------- input

template <class T>
T field(const json& obj, const char* key, const char* where) {
  auto it = obj.find(key);
  if (it == obj.end()) throw InvalidInput(std::string(where) + ": missing field '" + key + "'");
  try {
    return it->get<T>();
  } catch (const json::exception& e) {
    throw InvalidInput(std::string(where) + ": field '" + key + "' has the wrong type");
  }
}

void reject_unknown(const json& obj, std::initializer_list<const char*> known, const char* where) {
  for (const auto& [key, value] : obj.items()) {
    (void)value;
    if (std::none_of(known.begin(), known.end(), [&](const char* k) { return key == k; }))
      throw InvalidInput(std::string(where) + ": unknown field '" + key + "'");
  }
}

std::size_t variable_index(const std::vector<std::string>& names, const std::string& name) {
  auto it = std::find(names.begin(), names.end(), name);
  if (it == names.end()) throw InvalidInput("zero_sets: unknown variable '" + name + "'");
  return static_cast<std::size_t>(it - names.begin());
}

RunOptions parse_options(const json& o) {
  if (!o.is_object()) throw InvalidInput("options: expected an object");
  reject_unknown(o,
                 {"trace_strategy", "macaulay_max_extra", "sample_seed", "sample_count", "modular_prefilter", "threads",
                  "max_degree_a"},
                 "options");
  RunOptions opt;
  if (o.contains("trace_strategy")) opt.trace_strategy = parse_trace_strategy(field<std::string>(o, "trace_strategy", "options"));
  if (o.contains("macaulay_max_extra")) opt.macaulay_max_extra = field<std::int64_t>(o, "macaulay_max_extra", "options");
  if (o.contains("sample_seed")) opt.sample_seed = field<std::uint64_t>(o, "sample_seed", "options");
  if (o.contains("sample_count")) opt.sample_count = field<std::size_t>(o, "sample_count", "options");
  if (o.contains("modular_prefilter")) opt.modular_prefilter = field<bool>(o, "modular_prefilter", "options");
  if (o.contains("threads")) opt.threads = field<std::size_t>(o, "threads", "options");
  if (o.contains("max_degree_a") && !o["max_degree_a"].is_null())
    opt.max_degree_a = field<std::int64_t>(o, "max_degree_a", "options");
  if (opt.macaulay_max_extra < 0 || opt.macaulay_max_extra > 8)
    throw InvalidInput("options: macaulay_max_extra must lie in 0..8");
  if (opt.sample_count > 1000000) throw InvalidInput("options: sample_count must be at most 1000000");
  if (opt.threads < 1 || opt.threads > 256) throw InvalidInput("options: threads must lie in 1..256");
  if (opt.max_degree_a && *opt.max_degree_a < 0) throw InvalidInput("options: max_degree_a must be non-negative");
  return opt;
}

// ---------------------------------------------------------------- output

ordered_json to_json(const ClassElement& c) { return ordered_json(c); }

ordered_json to_json(const std::vector<Rational>& v) {
  ordered_json a = ordered_json::array();
  for (const auto& x : v) a.push_back(to_string(x));
  return a;
}

ordered_json to_json(const Check& c) {
  ordered_json j;
  j["pass"] = c.pass;
  if (!c.pass) j["witness"] = c.witness;
  return j;
}

ordered_json to_json(const AxiomResult& a) {
  ordered_json j;
  j["pass"] = a.pass;
  j["checked"] = a.checked;
  if (!a.pass) j["witnesses"] = a.witnesses;
  return j;
}

ordered_json monomial_list(const std::vector<Monomial>& ms, const std::vector<std::string>& names) {
  ordered_json a = ordered_json::array();
  for (const auto& m : ms) a.push_back(to_string(m, names));
  return a;
}

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
  std::string s;
  for (std::size_t i = 0; i < parts.size(); ++i) s += (i ? sep : "") + parts[i];
  return s;
}

template <class T>
std::string tuple_string(const std::vector<T>& v) {
  std::ostringstream s;
  s << "(";
  for (std::size_t i = 0; i < v.size(); ++i) s << (i ? ", " : "") << v[i];
  s << ")";
  return s.str();
}

class Table {
 public:
  void row(const std::string& key, const std::string& value) {
    out_ << "  " << key << std::string(key.size() < 18 ? 18 - key.size() : 1, ' ') << value << "\n";
  }
  void head(const std::string& line) { out_ << line << "\n"; }
  std::string str() const { return out_.str(); }

 private:
  std::ostringstream out_;
};

class Timer {
 public:
  explicit Timer(bool on) : on_(on) {}
  void stage(const std::string& name) {
    if (!on_) return;
    auto now = std::chrono::steady_clock::now();
    times_[name] = std::chrono::duration<double, std::milli>(now - last_).count();
    last_ = now;
  }
  void attach(ordered_json& report) const {
    if (!on_) return;
    ordered_json t;
    for (const auto& [k, v] : times_) t[k] = v;
    report["timings_ms"] = t;
  }

 private:
  bool on_;
  std::chrono::steady_clock::time_point last_ = std::chrono::steady_clock::now();
  std::map<std::string, double> times_;
};

const char* error_name(const Error& e) {
  if (dynamic_cast<const TorsionClassGroup*>(&e)) return "TorsionClassGroup";
  if (dynamic_cast<const NotReflexivePipeline*>(&e)) return "NotReflexivePipeline";
  if (dynamic_cast<const DegeneratePolytope*>(&e)) return "DegeneratePolytope";
  if (dynamic_cast<const NoFunctional*>(&e)) return "NoFunctional";
  if (dynamic_cast<const SocleNotOneDimensional*>(&e)) return "SocleNotOneDimensional";
  if (dynamic_cast<const HessianGeneratorZero*>(&e)) return "HessianGeneratorZero";
  return "Error";
}

void record_error(CommandResult& res, Table& table, const Error& e) {
  res.report["error"] = {{"kind", error_name(e)}, {"message", e.what()}};
  table.row("error", std::string(error_name(e)) + ": " + e.what());
  res.exit_code = e.kind() == Error::Kind::Validation ? kExitValidation : kExitCertificate;
}

// Shared front half of validate and report. Returns false when the run
// cannot continue.
struct Geometry {
  FanData fan;
  GradingMap grading;
};

bool geometry_stage(const RunConfig& config, CommandResult& res, Table& table, Timer& timer, Geometry& geo) {
  geo.fan = config.fan;
  geo.fan.normalize();
  ValidationReport v = validate_fan(geo.fan);
  ordered_json jv;
  jv["all_pass"] = v.all_pass();
  jv["primitive"] = to_json(v.primitive);
  jv["simplicial"] = to_json(v.simplicial);
  jv["complete"] = to_json(v.complete);
  jv["gorenstein"] = to_json(v.gorenstein);
  jv["ample"] = to_json(v.ample);
  jv["torsion_free"] = to_json(v.torsion_free);
  ordered_json verts = ordered_json::array();
  for (const auto& m : v.cone_vertices) verts.push_back(to_json(m));
  jv["cone_vertices"] = verts;
  res.report["validation"] = jv;
  timer.stage("validation");

  std::vector<std::string> failed;
  for (auto [name, c] : {std::pair{"primitive", &v.primitive}, {"simplicial", &v.simplicial}, {"complete", &v.complete},
                         {"gorenstein", &v.gorenstein}, {"ample", &v.ample}, {"torsion_free", &v.torsion_free}})
    if (!c->pass) failed.push_back(std::string(name) + ": " + c->witness);
  table.row("validation", failed.empty() ? "pass" : "FAIL");
  for (const auto& f : failed) table.row("", f);
  if (!v.all_pass()) {
    res.exit_code = kExitValidation;
    return false;
  }

  try {
    geo.grading = class_group(geo.fan);
    ordered_json jg;
    jg["rank"] = geo.grading.rank;
    ordered_json degs = ordered_json::array();
    for (const auto& d : geo.grading.degrees) degs.push_back(to_json(d));
    jg["degrees"] = degs;
    jg["beta"] = to_json(geo.grading.beta);
    std::vector<std::string> parts;
    for (const auto& d : geo.grading.degrees) parts.push_back(tuple_string(d));
    table.row("class group", "Z^" + std::to_string(geo.grading.rank) + ", degrees " + join(parts, " ") + ", beta " +
                                 tuple_string(geo.grading.beta));
    if (config.expected_degrees) {
      auto g = unimodular_transform(geo.grading.degrees, *config.expected_degrees);
      ordered_json je;
      je["pass"] = g.has_value();
      if (g) {
        ordered_json rows = ordered_json::array();
        for (std::size_t i = 0; i < g->rows(); ++i) {
          ordered_json row = ordered_json::array();
          for (std::size_t j = 0; j < g->cols(); ++j) row.push_back(to_string((*g)(i, j)));
          rows.push_back(row);
        }
        je["transform"] = rows;
      } else {
        je["witness"] = "no unimodular change of basis maps the computed degrees to the declared ones";
        res.exit_code = kExitCertificate;
      }
      jg["declared_degrees"] = je;
      table.row("declared degrees", g ? "match (unimodular transform)" : "MISMATCH");
    }
    res.report["grading"] = jg;
    timer.stage("class_group");

    AnticanPolytope poly = anticanonical_polytope(geo.fan);
    Integer vol = normalized_volume(poly);
    ordered_json jp;
    ordered_json pv = ordered_json::array();
    for (const auto& vtx : poly.vertices) pv.push_back(vtx);
    jp["vertices"] = pv;
    jp["normalized_volume"] = to_string(vol);
    res.report["polytope"] = jp;
    table.row("m!Vol(Delta)", to_string(vol) + " (" + std::to_string(poly.vertices.size()) + " vertices)");
    timer.stage("polytope");

    std::vector<Integer> betti = betti_numbers(geo.fan);
    ordered_json jb = ordered_json::array();
    std::vector<std::string> bs;
    for (const auto& b : betti) {
      jb.push_back(to_string(b));
      bs.push_back(to_string(b));
    }
    res.report["betti"] = jb;
    table.row("betti", join(bs, " "));

    ExtraIsomResult ex = extraisom_necessary_check(geo.fan);
    ordered_json jx;
    jx["status"] = to_string(ex.status);
    jx["b_below"] = to_string(ex.b_below);
    jx["b_middle"] = to_string(ex.b_middle);
    res.report["extraisom"] = jx;
    table.row("extraisom", to_string(ex.status));
    timer.stage("betti");
  } catch (const Error& e) {
    if (e.kind() == Error::Kind::Input) throw;
    record_error(res, table, e);
    return false;
  }
  return true;
}

CommandResult start(const RunConfig& config, const char* command) {
  CommandResult res;
  res.report["schema_version"] = kReportSchemaVersion;
  res.report["command"] = command;
  res.report["name"] = config.name;
  res.report["input"] = {{"variables", config.variables}, {"polynomial", config.polynomial}};
  return res;
}

void finish(CommandResult& res, Table& table, const std::vector<std::string>& failures) {
  ordered_json st;
  st["exit_code"] = res.exit_code;
  st["failures"] = failures;
  res.report["status"] = st;
  table.row("exit", std::to_string(res.exit_code) + (failures.empty() ? "" : " (" + join(failures, ", ") + ")"));
  res.table = table.str();
}

PieceOptions piece_options(const RunOptions& o) { return PieceOptions{o.modular_prefilter}; }

JacobianSystem make_system(const RunConfig& config, const Geometry& geo) {
  Polynomial f = parse_polynomial(config.polynomial, config.variables);
  return JacobianSystem(std::move(f), geo.fan, geo.grading, config.variables);
}

}  // namespace

// ---------------------------------------------------------------- config

RunConfig parse_run_config(const json& doc) {
  if (!doc.is_object()) throw InvalidInput("input: expected a JSON object");
  reject_unknown(doc,
                 {"schema_version", "name", "description", "fan", "variables", "polynomial", "zero_sets",
                  "expected_degrees", "options", "hypotheses"},
                 "input");
  const int version = field<int>(doc, "schema_version", "input");
  if (version != kInputSchemaVersion)
    throw InvalidInput("input: unsupported schema_version " + std::to_string(version));
  RunConfig c;
  c.name = doc.contains("name") ? field<std::string>(doc, "name", "input") : "input";
  const json& fan = doc.at("fan");
  if (!fan.is_object()) throw InvalidInput("fan: expected an object");
  reject_unknown(fan, {"dim", "rays", "max_cones"}, "fan");
  c.fan.dim = field<std::size_t>(fan, "dim", "fan");
  c.fan.rays = field<std::vector<IntVector>>(fan, "rays", "fan");
  c.fan.max_cones = field<std::vector<std::vector<std::size_t>>>(fan, "max_cones", "fan");
  c.variables = field<std::vector<std::string>>(doc, "variables", "input");
  c.polynomial = field<std::string>(doc, "polynomial", "input");
  if (c.variables.size() != c.fan.rays.size())
    throw InvalidInput("input: " + std::to_string(c.variables.size()) + " variables for " +
                       std::to_string(c.fan.rays.size()) + " rays");
  for (std::size_t i = 0; i < c.variables.size(); ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (c.variables[i] == c.variables[j]) throw InvalidInput("input: duplicate variable '" + c.variables[i] + "'");
  if (doc.contains("zero_sets")) {
    for (const auto& set : field<std::vector<std::vector<std::string>>>(doc, "zero_sets", "input")) {
      std::vector<std::size_t> idx;
      for (const auto& name : set) idx.push_back(variable_index(c.variables, name));
      c.zero_sets.push_back(std::move(idx));
    }
  }
  if (doc.contains("expected_degrees")) {
    c.expected_degrees = field<std::vector<ClassElement>>(doc, "expected_degrees", "input");
    if (c.expected_degrees->size() != c.variables.size())
      throw InvalidInput("input: expected_degrees needs one entry per variable");
  }
  if (doc.contains("hypotheses")) c.hypotheses = field<std::vector<std::string>>(doc, "hypotheses", "input");
  if (doc.contains("options")) c.options = parse_options(doc["options"]);
  c.fan.normalize();
  return c;
}

ordered_json to_json(const RunConfig& c) {
  ordered_json doc;
  doc["schema_version"] = kInputSchemaVersion;
  doc["name"] = c.name;
  ordered_json fan;
  fan["dim"] = c.fan.dim;
  fan["rays"] = c.fan.rays;
  fan["max_cones"] = c.fan.max_cones;
  doc["fan"] = fan;
  doc["variables"] = c.variables;
  doc["polynomial"] = c.polynomial;
  if (!c.zero_sets.empty()) {
    ordered_json sets = ordered_json::array();
    for (const auto& s : c.zero_sets) {
      ordered_json names = ordered_json::array();
      for (auto i : s) names.push_back(c.variables[i]);
      sets.push_back(names);
    }
    doc["zero_sets"] = sets;
  }
  if (c.expected_degrees) doc["expected_degrees"] = *c.expected_degrees;
  if (!c.hypotheses.empty()) doc["hypotheses"] = c.hypotheses;
  ordered_json o;
  o["trace_strategy"] = to_string(c.options.trace_strategy);
  o["macaulay_max_extra"] = c.options.macaulay_max_extra;
  o["sample_seed"] = c.options.sample_seed;
  o["sample_count"] = c.options.sample_count;
  o["modular_prefilter"] = c.options.modular_prefilter;
  o["threads"] = c.options.threads;
  if (c.options.max_degree_a) o["max_degree_a"] = *c.options.max_degree_a;
  doc["options"] = o;
  return doc;
}

RunConfig config_from_fixture(const Fixture& fx) {
  RunConfig c;
  c.name = fx.name;
  c.fan = fx.fan;
  c.variables = fx.variables;
  c.polynomial = fx.polynomial;
  c.zero_sets = fx.zero_sets;
  c.expected_degrees = fx.expected_degrees;
  c.hypotheses = fx.asserted_hypotheses;
  c.options.max_degree_a = fx.max_degree_a;
  return c;
}

// ---------------------------------------------------------------- commands

CommandResult cmd_validate(const RunConfig& config, bool timings) {
  CommandResult res = start(config, "validate");
  Table table;
  table.head("lgfrob validate: " + config.name);
  Timer timer(timings);
  Geometry geo;
  geometry_stage(config, res, table, timer, geo);
  timer.attach(res.report);
  std::vector<std::string> failures;
  if (res.exit_code == kExitValidation) failures.push_back("validation");
  if (res.exit_code == kExitCertificate) failures.push_back("declared_degrees");
  finish(res, table, failures);
  return res;
}

CommandResult cmd_report(const RunConfig& config, bool timings) {
  CommandResult res = start(config, "report");
  Table table;
  table.head("lgfrob report: " + config.name);
  Timer timer(timings);
  Geometry geo;
  std::vector<std::string> failures;
  if (!geometry_stage(config, res, table, timer, geo)) {
    failures.push_back(res.exit_code == kExitValidation ? "validation" : "geometry");
    timer.attach(res.report);
    finish(res, table, failures);
    return res;
  }
  if (res.exit_code == kExitCertificate) failures.push_back("declared_degrees");
  if (res.report["extraisom"]["status"] == to_string(ExtraIsomStatus::NecessaryConditionFails)) {
    res.exit_code = kExitCertificate;
    failures.push_back("extraisom");
  }

  const RunOptions& opt = config.options;
  const PieceOptions po = piece_options(opt);
  JacobianSystem sys = make_system(config, geo);
  const std::int64_t m = static_cast<std::int64_t>(sys.dim());
  bool quasi_smooth_checked = false;
  bool quasi_smooth_ok = true;

  try {
    EulerCheck eu = euler_membership_check(sys);
    res.report["euler"] = {{"pass", eu.pass}, {"functional", eu.functional}, {"lambda_beta", eu.lambda_beta}};
    table.row("euler relation", eu.pass ? "pass" : "FAIL");
    if (!eu.pass) failures.push_back("euler");

    ordered_json jc = ordered_json::array();
    for (const auto& c : crit_containment_check(sys, config.zero_sets)) {
      std::vector<std::string> names;
      for (auto i : c.zero_vars) names.push_back(config.variables[i]);
      ordered_json e;
      e["zero_vars"] = names;
      e["pass"] = c.pass;
      if (!c.pass) e["witness"] = c.witness;
      jc.push_back(e);
      table.row("Crit(f) in V", "{" + join(names, ", ") + "} " + (c.pass ? "pass" : "FAIL: " + c.witness));
      if (!c.pass) failures.push_back("crit_containment");
    }
    res.report["crit_containment"] = jc;
    timer.stage("certificates");

    std::int64_t cap = m - 1;
    if (opt.max_degree_a) cap = std::min(cap, *opt.max_degree_a);
    std::vector<PieceRequest> reqs;
    for (std::int64_t a = 0; a <= cap; ++a) reqs.push_back({Ideal::Jacobian, geo.grading.multiple_of_beta(a)});
    std::vector<QuotientBasis> pieces = graded_pieces(sys, reqs, po, opt.threads);
    ordered_json jd = ordered_json::array();
    std::vector<std::size_t> dims;
    for (std::size_t a = 0; a < pieces.size(); ++a) {
      ordered_json e;
      e["a"] = a;
      e["dim"] = pieces[a].dim();
      e["monomials"] = pieces[a].ambient().size();
      e["relation_rank"] = pieces[a].rank();
      jd.push_back(e);
      dims.push_back(pieces[a].dim());
    }
    pieces.clear();
    res.report["dims"] = jd;
    table.row("dim R(f)_{a beta}", tuple_string(dims) + (cap < m - 1 ? "  (a <= " + std::to_string(cap) + ")" : ""));
    timer.stage("dims");

    if (cap < m - 1) {
      const std::string why = "max_degree_a = " + std::to_string(cap) + " < m - 1 = " + std::to_string(m - 1);
      res.report["skipped"] = {{"reason", why},
                               {"stages", {"hodge_row", "macaulay", "socle", "trace", "gram", "axioms"}}};
      table.row("skipped", why + "; rerun with --full for the rest");
    } else {
      res.report["hodge_row"] = dims;
      bool symmetric = true;
      for (std::size_t a = 0; a < dims.size(); ++a) symmetric = symmetric && dims[a] == dims[dims.size() - 1 - a];
      res.report["hodge_symmetry"] = symmetric;
      if (!symmetric) failures.push_back("hodge_symmetry");

      MacaulayCheck mac = macaulay_vanishing_check(sys, m, opt.macaulay_max_extra, po);
      ordered_json jm;
      jm["pass"] = mac.pass;
      ordered_json md = ordered_json::array();
      std::vector<std::string> ms;
      for (const auto& [p, d] : mac.dims) {
        md.push_back({{"p", p}, {"dim", d}});
        ms.push_back("p=" + std::to_string(p) + ": " + std::to_string(d));
      }
      jm["dims"] = md;
      res.report["macaulay"] = jm;
      table.row("macaulay", std::string(mac.pass ? "pass" : "FAIL") + " (" + join(ms, ", ") + ")");
      if (!mac.pass) failures.push_back("macaulay");
      timer.stage("macaulay");

      // The algebra build computes both socle pieces; the standalone
      // certificate is only needed to report a failing socle.
      std::optional<FrobeniusAlgebraData> built;
      SocleCertificate soc;
      try {
        built = build_algebra(sys, opt.trace_strategy, AlgebraOptions{po, opt.threads});
        soc.top_dim = built->pieces[m - 1].dim();
        soc.euler_dim = built->euler_piece.dim();
        soc.top_generators = built->pieces[m - 1].basis();
        soc.euler_generators = built->euler_piece.basis();
      } catch (const SocleNotOneDimensional&) {
        soc = socle_certificates(sys, m, po);
      }
      ordered_json js;
      js["pass"] = soc.consistent();
      js["top_dim"] = soc.top_dim;
      js["euler_dim"] = soc.euler_dim;
      js["top_generators"] = monomial_list(soc.top_generators, config.variables);
      js["euler_generators"] = monomial_list(soc.euler_generators, config.variables);
      res.report["socle"] = js;
      table.row("socle", "(" + std::to_string(soc.top_dim) + ", " + std::to_string(soc.euler_dim) + ") " +
                             (soc.consistent() ? "pass" : "FAIL"));
      timer.stage("socle_and_algebra");
      quasi_smooth_checked = true;
      quasi_smooth_ok = mac.pass && soc.consistent();
      if (!soc.consistent()) {
        failures.push_back("socle");
        throw SocleNotOneDimensional("dim R(f)_{(m-1) beta} = " + std::to_string(soc.top_dim) +
                                     ", dim R0(f)_{m beta} = " + std::to_string(soc.euler_dim) + "; both must be 1");
      }
      const FrobeniusAlgebraData& d = *built;
      std::vector<Rational> one{Rational(1)};
      TraceScalar t = trace(one, d);
      ordered_json jt;
      jt["strategy"] = to_string(d.strategy);
      jt["socle_generator"] = to_string(d.socle_generator, config.variables);
      jt["euler_basis_monomial"] = to_string(d.euler_basis_monomial, config.variables);
      jt["generator_coordinate"] = to_string(d.generator_coordinate);
      jt["normalized_volume"] = to_string(d.normalized_volume);
      jt["value"] = to_string(t.value);
      jt["unit"] = "(2*pi*i)^" + std::to_string(t.unit_exponent);
      res.report["trace"] = jt;
      table.row("trace", "Tr[" + to_string(d.socle_generator, config.variables) + "] = " + t.to_string() + " [" +
                             to_string(d.strategy) + "]");

      ordered_json jg = ordered_json::array();
      std::vector<std::string> gs;
      bool gram_ok = true;
      for (std::size_t a = 0; a < d.m; ++a) {
        GramMatrix gm = pairing_gram(d, a);
        const bool square = gm.values.rows() == gm.values.cols();
        const std::size_t rk = rank(gm.values);
        const bool full = square && rk == gm.values.rows();
        gram_ok = gram_ok && full;
        jg.push_back({{"a", a}, {"rows", gm.values.rows()}, {"cols", gm.values.cols()}, {"rank", rk}, {"full_rank", full}});
        gs.push_back("G_" + std::to_string(a) + " " + std::to_string(gm.values.rows()) + "x" +
                     std::to_string(gm.values.cols()) + " rank " + std::to_string(rk));
      }
      res.report["gram"] = jg;
      table.row("gram", join(gs, ", "));
      if (!gram_ok) failures.push_back("gram");
      timer.stage("gram");

      AxiomReport ax = frobenius_axiom_check(d, opt.sample_seed, opt.sample_count);
      ordered_json ja;
      ja["pass"] = ax.all_pass();
      ja["sample_seed"] = opt.sample_seed;
      ja["sample_count"] = opt.sample_count;
      ja["exhaustive_associativity"] = ax.exhaustive_associativity;
      ja["unit"] = to_json(ax.unit);
      ja["commutativity"] = to_json(ax.commutativity);
      ja["associativity"] = to_json(ax.associativity);
      ja["invariance"] = to_json(ax.invariance);
      ja["nondegeneracy"] = to_json(ax.nondegeneracy);
      ja["vanishing"] = to_json(ax.vanishing);
      res.report["axioms"] = ja;
      std::vector<std::string> bad;
      for (auto [name, r] : {std::pair{"unit", &ax.unit}, {"commutativity", &ax.commutativity},
                             {"associativity", &ax.associativity}, {"invariance", &ax.invariance},
                             {"nondegeneracy", &ax.nondegeneracy}, {"vanishing", &ax.vanishing}})
        if (!r->pass) {
          bad.push_back(name);
          failures.push_back(std::string("axioms.") + name);
        }
      table.row("axioms", bad.empty() ? "pass" : "FAIL: " + join(bad, ", "));
      timer.stage("axioms");
    }
  } catch (const Error& e) {
    if (e.kind() == Error::Kind::Input) throw;
    record_error(res, table, e);
    if (failures.empty()) failures.push_back(error_name(e));
  }

  ordered_json jh;
  jh["quasi_smooth"] = !quasi_smooth_checked ? "asserted" : quasi_smooth_ok ? "consistent" : "inconsistent";
  jh["non_degenerate"] = "asserted";
  jh["asserted"] = config.hypotheses;
  res.report["hypotheses"] = jh;

  if (!failures.empty()) res.exit_code = std::max(res.exit_code, static_cast<int>(kExitCertificate));
  timer.attach(res.report);
  finish(res, table, failures);
  return res;
}

CommandResult cmd_dims(const RunConfig& config) {
  CommandResult res = start(config, "dims");
  Table table;
  table.head("lgfrob dims: " + config.name);
  Timer timer(false);
  Geometry geo;
  std::vector<std::string> failures;
  if (geometry_stage(config, res, table, timer, geo)) {
    JacobianSystem sys = make_system(config, geo);
    const std::int64_t m = static_cast<std::int64_t>(sys.dim());
    std::int64_t cap = m - 1;
    if (config.options.max_degree_a) cap = std::min(cap, *config.options.max_degree_a);
    std::vector<PieceRequest> reqs;
    for (std::int64_t a = 0; a <= cap; ++a) reqs.push_back({Ideal::Jacobian, geo.grading.multiple_of_beta(a)});
    std::vector<std::size_t> dims;
    for (const auto& q : graded_pieces(sys, reqs, piece_options(config.options), config.options.threads))
      dims.push_back(q.dim());
    res.report["dims"] = dims;
    table.row("dim R(f)_{a beta}", tuple_string(dims));
  } else {
    failures.push_back("validation");
  }
  finish(res, table, failures);
  return res;
}

CommandResult cmd_gram(const RunConfig& config, std::optional<std::size_t> degree) {
  CommandResult res = start(config, "gram");
  Table table;
  table.head("lgfrob gram: " + config.name);
  Timer timer(false);
  Geometry geo;
  std::vector<std::string> failures;
  if (!geometry_stage(config, res, table, timer, geo)) {
    failures.push_back("validation");
    finish(res, table, failures);
    return res;
  }
  JacobianSystem sys = make_system(config, geo);
  try {
    FrobeniusAlgebraData d =
        build_algebra(sys, config.options.trace_strategy, AlgebraOptions{piece_options(config.options), config.options.threads});
    if (degree && *degree >= d.m)
      throw InvalidInput("--degree must lie in 0.." + std::to_string(d.m - 1));
    ordered_json out = ordered_json::array();
    for (std::size_t a = 0; a < d.m; ++a) {
      if (degree && a != *degree) continue;
      GramMatrix gm = pairing_gram(d, a);
      ordered_json rows = ordered_json::array();
      for (std::size_t i = 0; i < gm.values.rows(); ++i) {
        ordered_json row = ordered_json::array();
        for (std::size_t j = 0; j < gm.values.cols(); ++j) row.push_back(to_string(gm.values(i, j)));
        rows.push_back(row);
      }
      out.push_back({{"a", a},
                     {"row_basis", monomial_list(d.pieces[a].basis(), config.variables)},
                     {"col_basis", monomial_list(d.pieces[d.m - 1 - a].basis(), config.variables)},
                     {"unit", "(2*pi*i)^" + std::to_string(gm.unit_exponent)},
                     {"rank", rank(gm.values)},
                     {"matrix", rows}});
      table.row("G_" + std::to_string(a), std::to_string(gm.values.rows()) + "x" + std::to_string(gm.values.cols()) +
                                              " rank " + std::to_string(rank(gm.values)));
    }
    res.report["gram"] = out;
  } catch (const Error& e) {
    if (e.kind() == Error::Kind::Input) throw;
    record_error(res, table, e);
    failures.push_back(error_name(e));
  }
  finish(res, table, failures);
  return res;
}

// ---------------------------------------------------------------- main

namespace {

json read_document(const std::string& path, std::istream& in) {
  std::string text;
  if (path == "-") {
    text.assign(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
  } else {
    std::ifstream file(path);
    if (!file) throw InvalidInput("cannot open input file '" + path + "'");
    text.assign(std::istreambuf_iterator<char>(file), std::istreambuf_iterator<char>());
  }
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw InvalidInput(std::string("malformed JSON: ") + e.what());
  }
}

struct Flags {
  std::string input = "-";
  std::string strategy;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> samples;
  std::optional<std::size_t> threads;
  std::optional<std::int64_t> max_degree_a;
  std::optional<std::size_t> degree;
  bool full = false;
  bool json_only = false;
  bool timings = false;
  bool no_prefilter = false;
  bool list = false;
  std::string fixture;
};

void add_run_flags(CLI::App* cmd, Flags& f, bool heavy) {
  cmd->add_option("--input", f.input, "input JSON document, '-' for stdin");
  cmd->add_flag("--json-only", f.json_only, "suppress the summary table on stderr");
  if (!heavy) return;
  cmd->add_option("--strategy", f.strategy, "trace normalization: generic | projective-hessian");
  cmd->add_option("--seed", f.seed, "sample seed for the axiom checks");
  cmd->add_option("--samples", f.samples, "number of sampled triples");
  cmd->add_option("--threads", f.threads, "worker threads for graded pieces");
  cmd->add_option("--max-degree-a", f.max_degree_a, "compute R(f)_{a beta} only for a up to N");
  cmd->add_flag("--full", f.full, "lift any max_degree_a cap");
  cmd->add_flag("--no-prefilter", f.no_prefilter, "disable the modular rank prefilter");
}

void apply_flags(RunConfig& c, const Flags& f) {
  if (!f.strategy.empty()) c.options.trace_strategy = parse_trace_strategy(f.strategy);
  if (f.seed) c.options.sample_seed = *f.seed;
  if (f.samples) c.options.sample_count = *f.samples;
  if (f.threads) {
    if (*f.threads < 1 || *f.threads > 256) throw InvalidInput("--threads must lie in 1..256");
    c.options.threads = *f.threads;
  }
  if (f.max_degree_a) {
    if (*f.max_degree_a < 0) throw InvalidInput("--max-degree-a must be non-negative");
    c.options.max_degree_a = *f.max_degree_a;
  }
  if (f.full) c.options.max_degree_a.reset();
  if (f.no_prefilter) c.options.modular_prefilter = false;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Landau-Ginzburg Frobenius algebra certificates for toric Calabi-Yau hypersurfaces", "lgfrob"};
  app.require_subcommand(1);
  Flags f;
  CLI::App* validate = app.add_subcommand("validate", "fan validation, class group, polytope, Betti numbers");
  CLI::App* report = app.add_subcommand("report", "full certificate report");
  CLI::App* fixture = app.add_subcommand("fixture", "print a built-in fixture as an input document");
  CLI::App* dims = app.add_subcommand("dims", "dimensions of R(f)_{a beta}");
  CLI::App* gram = app.add_subcommand("gram", "Gram matrices of the residue pairing");
  add_run_flags(validate, f, false);
  add_run_flags(report, f, true);
  add_run_flags(dims, f, true);
  add_run_flags(gram, f, true);
  report->add_flag("--timings", f.timings, "add per-stage wall times (breaks byte-identical output)");
  gram->add_option("--degree", f.degree, "only G_a for this a");
  fixture->add_option("name", f.fixture, "fixture name");
  fixture->add_flag("--list", f.list, "list fixture names");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "lgfrob: " << e.what() << "\n";
    return kExitInput;
  }

  try {
    if (fixture->parsed()) {
      if (f.list) {
        for (const auto& n : fixture_names()) out << n << "\n";
        return kExitOk;
      }
      if (f.fixture.empty()) throw InvalidInput("fixture: missing name (see --list)");
      out << to_json(config_from_fixture(make_fixture(f.fixture))).dump(2) << "\n";
      return kExitOk;
    }
    RunConfig config = parse_run_config(read_document(f.input, in));
    apply_flags(config, f);
    CommandResult res;
    if (validate->parsed()) res = cmd_validate(config);
    else if (report->parsed()) res = cmd_report(config, f.timings);
    else if (dims->parsed()) res = cmd_dims(config);
    else res = cmd_gram(config, f.degree);
    out << res.report.dump(2) << "\n";
    if (!f.json_only) err << res.table;
    return res.exit_code;
  } catch (const Error& e) {
    err << "lgfrob: " << e.what() << "\n";
    switch (e.kind()) {
      case Error::Kind::Input: return kExitInput;
      case Error::Kind::Validation: return kExitValidation;
      case Error::Kind::Certificate: return kExitCertificate;
    }
    return kExitInput;
  }
}

}  // namespace lgfrob
