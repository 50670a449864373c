#include "fusionkit/report.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <memory>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "fusionkit/cohom.hpp"
#include "fusionkit/errors.hpp"
#include "fusionkit/fusion.hpp"
#include "fusionkit/kappa.hpp"
#include "fusionkit/locality.hpp"
#include "fusionkit/rigid.hpp"
#include "fusionkit/translink.hpp"

namespace fusionkit {

namespace fs = std::filesystem;

const std::vector<std::string>& all_tasks() {
  static const std::vector<std::string> tasks{"classify", "linking", "locality", "roundtrip",
                                              "lim1",     "out0",    "kappa"};
  return tasks;
}

std::vector<std::string> normalize_tasks(const std::vector<std::string>& tasks) {
  const auto& all = all_tasks();
  std::vector<bool> on(all.size(), false);
  for (const std::string& t : tasks) {
    if (t == "all") {
      std::fill(on.begin(), on.end(), true);
      continue;
    }
    auto it = std::find(all.begin(), all.end(), t);
    if (it == all.end()) throw std::invalid_argument("unknown task '" + t + "'");
    on[static_cast<std::size_t>(it - all.begin())] = true;
  }
  std::vector<std::string> out;
  for (std::size_t i = 0; i < all.size(); ++i)
    if (on[i]) out.push_back(all[i]);
  return out;
}

std::vector<std::string> tasks_for_theorem(int theorem) {
  switch (theorem) {
    case 1: return {"locality", "roundtrip", "out0"};
    case 2: return {"linking", "out0"};
    case 3: return {"lim1"};
    case 4: return {"kappa"};
    default: throw std::invalid_argument("theorem must be 1, 2, 3 or 4");
  }
}

namespace {

Json error_json(const std::string& kind, const std::string& message) {
  Json e;
  e["kind"] = kind;
  e["message"] = message;
  return e;
}

Json invariants_json(const std::vector<Int>& v) {
  Json out = Json::array();
  for (Int x : v) out.push_back(x);
  return out;
}

Int exponent_of(const std::vector<Int>& invariants) {
  return invariants.empty() ? 1 : invariants.back();
}

// A task block: checks by name, failure witnesses, notes.
class Block {
 public:
  Json data = Json::object();

  void add(const AxiomResult& r, const std::string& prefix = "") {
    std::string key = prefix + r.name;
    while (checks_.contains(key)) key += "'";
    checks_[key] = r.pass;
    if (!r.pass) failures_.push_back(key + ": " + r.witness);
  }
  void add(const AxiomReport& rs, const std::string& prefix = "") {
    for (const AxiomResult& r : rs) add(r, prefix);
  }
  void note(const std::string& s) { notes_.push_back(s); }
  void error(const Error& e) { error_ = error_json(e.kind(), e.what()); }
  void error(const std::exception& e) { error_ = error_json("Exception", e.what()); }

  bool pass() const { return error_.is_null() && failures_.empty(); }

  Json finish() const {
    Json out;
    out["verdict"] = pass() ? "pass" : "fail";
    for (auto it = data.begin(); it != data.end(); ++it) out[it.key()] = it.value();
    out["checks"] = checks_;
    if (!notes_.empty()) out["notes"] = notes_;
    if (!failures_.empty()) out["failures"] = failures_;
    if (!error_.is_null()) out["error"] = error_;
    return out;
  }

 private:
  Json checks_ = Json::object();
  Json failures_ = Json::array();
  Json notes_ = Json::array();
  Json error_;
};

// Shared, lazily built pipeline state for one group.
class Context {
 public:
  Context(std::shared_ptr<const FusionSystem> f, const RunOptions& opt) : f_(std::move(f)), opt_(opt) {}

  const FusionSystem& fusion() const { return *f_; }
  std::shared_ptr<const FusionSystem> fusion_ptr() const { return f_; }
  const RunOptions& options() const { return opt_; }

  const FiniteCategory& linking() {
    if (!l_) l_ = build_centric_linking(f_);
    return *l_;
  }
  const CenterFunctor& center_functor() {
    if (!zf_) zf_ = CenterFunctor(orbit_category(f_));
    return *zf_;
  }
  const CocycleSolution& cocycles() {
    if (!s_) s_ = solve_z1hat(center_functor());
    return *s_;
  }
  const Aut0& aut0() {
    if (!a_) a_ = compute_aut0(linking(), center_functor(), cocycles());
    return *a_;
  }

  std::vector<SubId> objects() const {
    const Classification& c = f_->classification();
    if (opt_.objects == "centric") return c.centric();
    if (opt_.objects == "subcentric") return c.subcentric();
    std::vector<SubId> out;
    for (SubId p = 1; p < f_->subgroups().size(); ++p) out.push_back(p);
    if (f_->sylow().order() == 1) out.push_back(0);
    return out;
  }

 private:
  std::shared_ptr<const FusionSystem> f_;
  RunOptions opt_;
  std::optional<FiniteCategory> l_;
  std::optional<CenterFunctor> zf_;
  std::optional<CocycleSolution> s_;
  std::optional<Aut0> a_;
};

std::string cycles(const FiniteGroup& g, Elem x) {
  const std::string c = g.perm(x).cycles();
  return c.empty() ? "()" : c;
}

Json cochain_json(const Context& ctx, const OrbitCategory& o, const Cochain1& t) {
  const FiniteGroup& G = ctx.fusion().group();
  Json out = Json::array();
  for (std::size_t m = 0; m < o.size(); ++m)
    if (t[m] != G.identity()) {
      Json e;
      e["morphism"] = m;
      e["src"] = o.mor(m).src;
      e["dst"] = o.mor(m).dst;
      e["value"] = cycles(G, t[m]);
      out.push_back(e);
    }
  return out;
}

bool linking_kernels_trivial(const FusionSystem& f, const std::vector<SubId>& objects) {
  return std::all_of(objects.begin(), objects.end(),
                     [&](SubId q) { return linking_kernel(f, q).order() == 1; });
}

// ---------------------------------------------------------------- tasks

void task_classify(Context& ctx, Block& b) {
  const FusionSystem& F = ctx.fusion();
  const Classification& c = F.classification();
  std::size_t fn = 0, radical = 0;
  for (const SubgroupFlags& x : c.flags) {
    fn += x.fully_normalized;
    radical += x.radical;
  }
  const auto centric = c.centric(), cr = c.centric_radical(), sc = c.subcentric();
  b.data["sylow_order"] = F.sylow().order();
  b.data["sylow"] = describe(F.group(), F.sylow());
  b.data["subgroups"] = F.subgroups().size();
  b.data["classes"] = c.classes.size();
  b.data["fully_normalized"] = fn;
  b.data["centric"] = centric.size();
  b.data["radical"] = radical;
  b.data["centric_radical"] = cr.size();
  b.data["subcentric"] = sc.size();
  b.data["op_order"] = op_of_fusion(F).order();
  b.data["op_prime_group_order"] = cores(F.group(), F.prime()).op_prime.order();

  auto subset = [](const std::vector<SubId>& a, const std::vector<SubId>& x) {
    return std::includes(x.begin(), x.end(), a.begin(), a.end());
  };
  b.add({"cr-in-centric-in-subcentric", subset(cr, centric) && subset(centric, sc),
         "F^cr ⊆ F^c ⊆ F^s fails"});
  std::vector<SubId> family = cr;
  if (std::find(family.begin(), family.end(), F.sylow_id()) == family.end())
    family.push_back(F.sylow_id());
  b.add({"alperin-conjugation-family", verify_conjugation_family(F, family),
         "F^cr ∪ {S} does not generate F"});
}

void task_linking(Context& ctx, Block& b) {
  const FiniteCategory& l = ctx.linking();
  b.data["objects"] = l.objects().size();
  b.data["morphisms"] = l.size();
  b.add(verify_transporter_axioms(l, true), "linking/");

  const std::vector<SubId> delta = ctx.objects();
  const FiniteCategory t = build_transporter(ctx.fusion_ptr(), delta);
  b.data["transporter_objects"] = delta.size();
  b.data["transporter_morphisms"] = t.size();
  b.add(verify_transporter_axioms(t, false), "transporter/");
}

void task_locality(Context& ctx, Block& b) {
  const RunOptions& opt = ctx.options();
  const FusionSystem& F = ctx.fusion();
  const std::vector<SubId> delta = ctx.objects();
  const Locality gl = build_group_locality(ctx.fusion_ptr(), delta);
  const bool linking = opt.objects == "centric" && linking_kernels_trivial(F, delta);
  b.data["word_length"] = opt.word_length;
  b.data["group_locality"] = {{"objects", delta.size()}, {"size", gl.size()}, {"linking", linking}};
  b.add(verify_locality_axioms(gl, linking, opt.word_length), "group/");
  if (!linking) b.note("L_Δ(G) checked as a locality only: it is not expected to be a linking locality");

  const LambdaLocality lt = lambda(ctx.linking());
  b.data["lambda_locality"] = {{"objects", lt.locality->delta().size()}, {"size", lt.locality->size()}};
  b.add(verify_locality_axioms(*lt.locality, true, opt.word_length), "lambda/");

  if (!opt.oracle) return;
  const Classification& c = F.classification();
  const std::vector<SubId> sc = c.subcentric(), centric = c.centric();
  Json r;
  r["subcentric"] = sc.size();
  r["centric"] = centric.size();
  if (sc == centric) {
    r["status"] = "F^s = F^c";
  } else {
    const Locality plus = build_group_locality(ctx.fusion_ptr(), sc);
    if (!all_pass(verify_locality_axioms(plus, true, 2))) {
      r["status"] = "skipped: L_{F^s}(G) is not a linking locality";
    } else {
      const Locality base = restrict_locality(plus, centric);
      const RestrictionReport rr = verify_restriction_iso(plus, base);
      r["status"] = "checked";
      r["aut0_plus"] = rr.plus;
      r["aut0"] = rr.base;
      r["autz_plus"] = rr.z_plus;
      r["autz"] = rr.z_base;
      b.add(rr.checks, "restriction/");
    }
  }
  b.data["restriction"] = r;
}

void task_roundtrip(Context& ctx, Block& b) {
  const RunOptions& opt = ctx.options();
  const FusionSystem& F = ctx.fusion();
  const FiniteCategory& l = ctx.linking();
  const SubId s = F.sylow_id();

  std::vector<CatAutomorphism> tests;
  for (MorId g : l.hom(s, s)) tests.push_back(conjugation_by(l, g));
  const Aut0& a = ctx.aut0();
  tests.insert(tests.end(), a.aut0.elements.begin(), a.aut0.elements.end());
  b.data["linking_tests"] = tests.size();
  b.add(roundtrip_check(l, tests), "eta/");

  const auto gl = std::make_shared<const Locality>(build_group_locality(ctx.fusion_ptr(), ctx.objects()));
  std::vector<LocAutomorphism> ltests;
  for (LocElem x : gl->normalizer(s)) ltests.push_back(conjugation_by(*gl, x));
  if (opt.oracle) {
    const RigidSearch rs = rigid_automorphisms_bruteforce(*gl, opt.node_cap);
    ltests.insert(ltests.end(), rs.automorphisms.begin(), rs.automorphisms.end());
    b.data["group_locality_aut0"] = rs.automorphisms.size();
  }
  b.data["locality_tests"] = ltests.size();
  b.add(roundtrip_check(gl, ltests), "zeta/");

  if (opt.oracle) {
    b.data["aut0"] = a.aut0.size();
    b.add(compare_with_locality(l, a, opt.node_cap), "lambda/");
  }
}

void task_lim1(Context& ctx, Block& b) {
  const RunOptions& opt = ctx.options();
  const CenterFunctor& zf = ctx.center_functor();
  const CocycleSolution& s = ctx.cocycles();
  const unsigned k = k_of(ctx.fusion().prime());
  b.data["orbit_objects"] = zf.category().objects().size();
  b.data["orbit_morphisms"] = zf.category().size();
  b.data["unknowns"] = s.unknowns;
  b.data["equations"] = static_cast<std::size_t>(s.equations.rows());
  b.data["center_S"] = invariants_json(zf.z(ctx.fusion().sylow_id()).invariants());
  b.data["lim0"] = invariants_json(lim0(zf).invariants());
  b.data["z1"] = invariants_json(s.z1_invariants);
  b.data["b1"] = invariants_json(s.b1_invariants);
  b.data["lim1"] = invariants_json(s.lim1_invariants);
  b.data["lim1_order"] = s.lim1_order();
  b.data["k"] = k;

  b.add({"z1-order", s.z1_order() == s.b1_order() * s.lim1_order(), "|Ẑ¹| ≠ |B̂¹||lim¹|"});
  b.add({"lim1-exponent", k % exponent_of(s.lim1_invariants) == 0,
         "exponent " + std::to_string(exponent_of(s.lim1_invariants))});
  const auto c = z1_complement(zf, s);
  b.add({"b1-split", c.has_value(), "no complement to B̂¹ in Ẑ¹"});
  if (c) {
    Json gens = Json::array();
    for (const Cochain1& t : c->generators) gens.push_back(cochain_json(ctx, zf.category(), t));
    b.data["complement"] = {{"order", c->order}, {"generators", gens}};
  }

  if (!opt.oracle) return;
  try {
    const std::vector<Cochain1> brute = brute_z1hat(zf.category(), opt.oracle_bound);
    b.data["oracle"] = "checked";
    b.add({"oracle-elementwise", brute == enumerate_z1hat(zf, s), "cocycle sets differ"});
  } catch (const SearchSpaceTooLarge& e) {
    b.data["oracle"] = "skipped";
    b.note(e.what());
  }
}

void task_out0(Context& ctx, Block& b) {
  const FiniteCategory& l = ctx.linking();
  const Aut0& a = ctx.aut0();
  b.data["aut0"] = a.aut0.size();
  b.data["autz"] = a.aut_z.order();
  b.data["out0"] = invariants_json(a.out0_invariants);
  b.data["exponent"] = exponent_of(a.out0_invariants);
  b.data["k"] = k_of(ctx.fusion().prime());
  b.add(a.checks);
  b.add(verify_mu(l, a));

  const SplitReport split = verify_exponent_and_split(l, a);
  b.add(split.checks);
  if (split.complement) {
    Json gens = Json::array();
    for (std::size_t i : split.generators)
      gens.push_back(cochain_json(ctx, ctx.center_functor().category(), a.cocycles[i]));
    b.data["complement"] = {{"order", split.complement->order()},
                            {"inside_E", split.from_thompson},
                            {"generators", gens}};
  }

  try {
    const ThompsonPowerReport r = thompson_power_check(l, a);
    b.data["thompson_power"] = {{"hypothesis", r.hypothesis}, {"excluded_z", r.excluded_z}};
    b.add(r.result);
  } catch (const BadObjectSet& e) {
    b.note(std::string("J(S) power check skipped: ") + e.what());
  }
}

void task_kappa(Context& ctx, Block& b) {
  const FiniteCategory& l = ctx.linking();
  const KappaData k = kappa_tilde(l, ctx.options().aut_cap);
  b.data["aut_order"] = k.aut.perm_group.order();
  b.data["out_order"] = k.out_order();
  b.data["domain"] = k.domain.size();
  b.data["kernel_classes"] = k.kernel;
  b.add(k.checks);

  const KernelVerdict v = kappa_kernel(l, k);
  b.data["hypothesis"] = v.hypothesis;
  b.data["kernel_order"] = v.kernel_order;
  b.add(v.p_prime);
  b.add(v.sylow_injective);
  if (!v.hypothesis) b.note("O_p'(G) ≠ 1: the p'-verdict is reported, not asserted");

  const AStructure s = centralizing_aut_structure(l, k);
  b.data["A"] = {{"order", s.order},
                 {"op_prime", s.op_prime},
                 {"trivial_on_L", s.trivial_on_l},
                 {"B", invariants_json(s.b_invariants)}};
  b.add(s.checks);
}

using TaskFn = void (*)(Context&, Block&);

TaskFn task_fn(const std::string& name) {
  if (name == "classify") return task_classify;
  if (name == "linking") return task_linking;
  if (name == "locality") return task_locality;
  if (name == "roundtrip") return task_roundtrip;
  if (name == "lim1") return task_lim1;
  if (name == "out0") return task_out0;
  return task_kappa;
}

void finish(Json& report, const Json& failures) {
  report["failures"] = failures;
  report["verdict"] = failures.empty() ? "pass" : "fail";
}

}  // namespace

Json run_report(const std::string& group_file, unsigned p, const std::vector<std::string>& tasks,
                const RunOptions& opt) {
  Json report;
  report["schema"] = kReportSchema;
  report["group"] = {{"file", fs::path(group_file).filename().string()}};
  report["prime"] = p;
  report["objects"] = opt.objects;
  report["oracle"] = opt.oracle;
  Json failures = Json::array();

  std::vector<std::string> names;
  std::shared_ptr<const FusionSystem> f;
  try {
    names = normalize_tasks(tasks);
    if (opt.objects != "centric" && opt.objects != "subcentric" && opt.objects != "all-nonidentity")
      throw std::invalid_argument("objects must be centric, subcentric or all-nonidentity");
    if (!is_prime(p)) throw std::invalid_argument(std::to_string(p) + " is not prime");
    auto g = std::make_shared<const FiniteGroup>(load_group(group_file, opt.group_cap));
    report["group"]["degree"] = g->degree();
    report["group"]["order"] = g->order();
    Json gens = Json::array();
    for (const Perm& x : g->generators()) gens.push_back(x.cycles().empty() ? "()" : x.cycles());
    report["group"]["generators"] = gens;
    if (g->order() % p != 0)
      report["warnings"] = Json::array({std::to_string(p) + " does not divide |G|"});
    f = std::make_shared<const FusionSystem>(g, p);
  } catch (const Error& e) {
    report["error"] = error_json(e.kind(), e.what());
  } catch (const std::exception& e) {
    report["error"] = error_json("InvalidArgument", e.what());
  }
  report["tasks"] = Json::object();
  if (report.contains("error")) {
    failures.push_back("input: " + report["error"]["message"].get<std::string>());
    finish(report, failures);
    return report;
  }

  Context ctx(f, opt);
  Json timing = Json::object();
  for (const std::string& name : names) {
    Block b;
    const auto start = std::chrono::steady_clock::now();
    try {
      task_fn(name)(ctx, b);
    } catch (const Error& e) {
      b.error(e);
    } catch (const std::exception& e) {
      b.error(e);
    }
    const Json block = b.finish();
    if (block.contains("failures"))
      for (const auto& x : block["failures"]) failures.push_back(name + "/" + x.get<std::string>());
    if (block.contains("error"))
      failures.push_back(name + ": " + block["error"]["message"].get<std::string>());
    report["tasks"][name] = block;
    const std::chrono::duration<double> secs = std::chrono::steady_clock::now() - start;
    timing[name] = std::round(secs.count() * 1000) / 1000;
  }
  if (opt.timing) report["timing"] = timing;
  finish(report, failures);
  return report;
}

std::vector<ManifestEntry> parse_manifest(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  const fs::path dir = fs::path(path).parent_path();
  std::vector<ManifestEntry> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ss(line);
    std::string file;
    if (!(ss >> file)) continue;
    long prime = 0;
    std::string extra;
    if (!(ss >> prime) || prime <= 0 || (ss >> extra))
      throw ParseError("line " + std::to_string(lineno) + ": expected 'group-file prime'");
    const fs::path resolved = fs::path(file).is_absolute() ? fs::path(file) : dir / file;
    out.push_back({resolved.lexically_normal().string(), static_cast<unsigned>(prime)});
  }
  return out;
}

Json catalog_report(const std::string& manifest, const std::vector<std::string>& tasks,
                    const RunOptions& opt) {
  Json out;
  out["schema"] = kCatalogSchema;
  out["manifest"] = fs::path(manifest).filename().string();
  out["tasks"] = normalize_tasks(tasks);
  Json rows = Json::array(), reports = Json::array();
  bool all = true;
  for (const ManifestEntry& e : parse_manifest(manifest)) {
    const Json r = run_report(e.file, e.prime, tasks, opt);
    Json row;
    row["group"] = r["group"]["file"];
    row["prime"] = e.prime;
    row["verdict"] = r["verdict"];
    Json per = Json::object();
    for (auto it = r["tasks"].begin(); it != r["tasks"].end(); ++it) per[it.key()] = it.value()["verdict"];
    row["tasks"] = per;
    if (r.contains("error")) row["error"] = r["error"]["kind"];
    all = all && passed(r);
    rows.push_back(row);
    reports.push_back(r);
  }
  out["rows"] = rows;
  out["verdict"] = all ? "pass" : "fail";
  out["reports"] = reports;
  return out;
}

bool passed(const Json& report) {
  return report.contains("verdict") && report["verdict"] == "pass";
}

std::string summary_table(const Json& catalog) {
  std::ostringstream os;
  const auto& tasks = catalog["tasks"];
  os << std::left << std::setw(16) << "group" << std::setw(4) << "p";
  for (const auto& t : tasks) os << std::setw(11) << t.get<std::string>();
  os << "verdict\n";
  for (const auto& row : catalog["rows"]) {
    os << std::setw(16) << row["group"].get<std::string>() << std::setw(4) << row["prime"].get<unsigned>();
    for (const auto& t : tasks) {
      const std::string name = t.get<std::string>();
      os << std::setw(11)
         << (row["tasks"].contains(name) ? row["tasks"][name].get<std::string>() : std::string("-"));
    }
    os << row["verdict"].get<std::string>();
    if (row.contains("error")) os << " (" << row["error"].get<std::string>() << ")";
    os << "\n";
  }
  os << "catalog: " << catalog["verdict"].get<std::string>() << " (" << catalog["rows"].size()
     << " rows)\n";
  return os.str();
}

}  // namespace fusionkit
