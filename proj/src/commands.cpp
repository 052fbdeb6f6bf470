#include "toricq/commands.hpp"

#include "toricq/cox.hpp"
#include "toricq/oracles.hpp"
#include "toricq/quotient.hpp"
#include "toricq/random.hpp"
#include "toricq/report.hpp"
#include "toricq/sweep.hpp"
#include "toricq/symmetry.hpp"

#include <algorithm>
#include <functional>
#include <map>

namespace toricq {

namespace {

using nlohmann::json;

// Notions the verdicts refer to.
const char* const kGoodQuotient = "good quotient: affine invariant charts over a fan in N/L";
const char* const kSaturated = "H-saturated: union of fibres of the quotient map";
const char* const kMaximal = "(H,k)-maximal open subset";
const char* const kOpen = "open invariant subset: face-closed selection";
const char* const kTranslates = "W(U): intersection of all translates of U";
const char* const kComposite = "G-saturated: union of fibres of W -> W//H -> W//G";
const char* const kQuotientProperties = "standard properties of a good quotient";
const char* const kCox = "Cox construction: X as a quotient of an open subset of affine space";

class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

json vec_json(const IntVector& v) {
  json a = json::array();
  for (const auto& x : v) {
    if (x.fits_slong_p())
      a.push_back(x.get_si());
    else
      a.push_back(x.get_str());
  }
  return a;
}

json cone_json(const Fan& f, std::size_t c) {
  json a = json::array();
  for (auto r : f.cone_rays(c)) a.push_back(r);
  return a;
}

// A selection as the ray lists of its maximal members.
json selection_json(const Fan& f, const ConeSet& u) {
  json a = json::array();
  for (auto c : maximal_members(f, u)) a.push_back(cone_json(f, c));
  return a;
}

json cones_json(const Fan& f, const ConeSet& u) {
  json a = json::array();
  u.for_each([&](std::size_t c) { a.push_back(cone_json(f, c)); });
  return a;
}

std::string describe_selection(const Fan& f, const ConeSet& u) {
  if (u.empty()) return "empty";
  std::string s;
  for (auto c : maximal_members(f, u)) s += (s.empty() ? "" : " ") + f.describe_cone(c);
  return "generated by " + s;
}

json matrix_json(const IntMatrix& m) {
  json a = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) a.push_back(vec_json(m.row(r)));
  return a;
}

json lattice_json(const Sublattice& l) {
  json a = json::array();
  for (const auto& v : l.basis()) a.push_back(vec_json(v));
  return a;
}

const ProblemFile& need(const ProblemFile* pf) {
  if (!pf) throw InputError("this command needs a problem file");
  return *pf;
}

SubtorusAction action_of(const ProblemFile& pf, Report& rep) {
  const auto act = normalize_action(pf.fan, pf.subtorus);
  rep.value("subtorus lattice L", lattice_json(act.cochar));
  if (!act.input_saturated) rep.note("subtorus generators span a non-saturated lattice; replaced by its saturation");
  return act;
}

GroupActionData group_of(const ProblemFile& pf, Report& rep) {
  auto sym = SymmetryGroup::generated_by(pf.fan, pf.symmetries);
  rep.value("symmetry group order", sym.order());
  try {
    return GroupActionData(action_of(pf, rep), std::move(sym));
  } catch (const std::invalid_argument& e) {
    throw InputError(std::string("/symmetries: ") + e.what());
  }
}

void cmd_check(const ProblemFile& pf, const RunOptions&, Report& rep) {
  const Fan& f = *pf.fan;
  rep.section("fan");
  rep.value("rank", f.dim());
  json rays = json::array();
  for (const auto& r : f.rays()) rays.push_back(vec_json(r));
  rep.value("rays", rays);
  rep.value("maximal cones", selection_json(f, f.all_cones()));
  rep.value("number of cones", f.num_cones());
  rep.verdict("fan is valid", validate_fan(f).valid, "fan: strongly convex cones meeting in common faces");
  rep.verdict("complete", is_complete(f), "complete fan: support is all of N_R");
  rep.verdict("simplicial", is_simplicial(f), "simplicial fan: Q-factorial toric variety");
  rep.value("smooth", is_smooth(f));
  if (rank_of(f.rays()) == f.dim()) rep.value("fan automorphisms", fan_automorphisms(f).size());
  rep.value("open invariant subsets", enumerate_open_subsets(f).size());
}

void cmd_quotient(const ProblemFile& pf, const RunOptions& opt, Report& rep) {
  const Fan& f = *pf.fan;
  const ConeSet& u = pf.selection(opt.selection);
  rep.section("input");
  rep.value("selection", opt.selection);
  rep.value("selection cones", selection_json(f, u));
  const QuotientEngine engine(action_of(pf, rep));
  rep.section("good quotient");
  const auto out = engine.good_quotient(u);
  if (const auto* ob = std::get_if<Obstruction>(&out)) {
    rep.verdict("good quotient exists", false, kGoodQuotient, describe(*ob, f));
    return;
  }
  const auto& q = std::get<QuotientFan>(out);
  rep.verdict("good quotient exists", true, kGoodQuotient);
  rep.value("quotient lattice rank", q.target_rank);
  rep.value("projection N -> quotient lattice", matrix_json(q.projection));
  json qrays = json::array();
  for (const auto& r : q.fan->rays()) qrays.push_back(vec_json(r));
  rep.value("quotient rays", qrays);
  rep.value("quotient maximal cones", selection_json(*q.fan, q.fan->all_cones()));
  json charts = json::array();
  for (const auto& [bar, chart] : q.charts)
    charts.push_back({{"quotient_cone", cone_json(*q.fan, bar)}, {"chart", cone_json(f, chart)}});
  rep.value("charts", charts);
  json orbits = json::array();
  u.for_each([&](std::size_t t) {
    orbits.push_back({{"cone", cone_json(f, t)}, {"image", cone_json(*q.fan, q.orbit_map[t])}});
  });
  rep.value("orbit map", orbits);
  rep.value("geometric", q.geometric);
  const auto inv = quotient_invariant_violations(engine, q);
  rep.verdict("quotient fan invariants", inv.empty(), "quotient fan with certifying charts",
              inv.empty() ? "" : inv.front());
  const auto props = check_quotient_properties(engine, u);
  rep.verdict("quotient properties", props.ok(), kQuotientProperties,
              props.ok() ? "closed images, disjoint images, saturated opens, restrictions"
                         : props.violations.front());
}

void cmd_enumerate(const ProblemFile& pf, const RunOptions& opt, Report& rep) {
  if (opt.k != 1 && opt.k != 2) throw InputError("--k must be 1 or 2");
  const Fan& f = *pf.fan;
  const QuotientEngine engine(action_of(pf, rep));
  rep.section("maximal open subsets");
  rep.value("k", opt.k);
  rep.value("good selections", enumerate_good_subsets(engine, opt.max_subsets).size());
  auto maxs = t_maximal_subsets(engine, opt.k, opt.max_subsets);
  std::sort(maxs.begin(), maxs.end());
  rep.value("count", maxs.size());
  json list = json::array();
  for (const auto& u : maxs) list.push_back(selection_json(f, u));
  rep.value("maximal selections", list);
  for (const auto& u : maxs) rep.note(describe_selection(f, u));
  const InvariantOracle oracle(f, engine.action().cochar, opt.bound);
  auto brute = brute_force_t_maximal(oracle, f);
  std::sort(brute.begin(), brute.end());
  rep.verdict("agrees with brute force", brute == maxs, kMaximal,
              "every selection checked with the invariant-character oracle");
}

void cmd_cox(const ProblemFile& pf, const RunOptions& opt, Report& rep) {
  const Fan& f = *pf.fan;
  const auto p = cox_presentation(pf.fan);
  const std::size_t n = p.num_rays();
  rep.section("class group");
  rep.value("free rank", p.grading.free_rank);
  json tors = json::array();
  for (const auto& t : p.grading.torsion) tors.push_back(t.get_str());
  rep.value("torsion", tors);
  json weights = json::array();
  for (std::size_t i = 0; i < n; ++i) weights.push_back(vec_json(p.grading.degree_map.col(i)));
  rep.value("degrees of the variables", weights);
  rep.value("torus cocharacters", lattice_json(p.torus_cochar));

  rep.section("relevant locus");
  rep.value("relevant faces", p.relevant.size());
  json irr = json::array();
  for (auto c : f.maximal_cones()) {
    IntVector e(n, Integer(0));
    for (std::size_t i = 0; i < n; ++i)
      if (!std::binary_search(f.cone_rays(c).begin(), f.cone_rays(c).end(), i)) e[i] = 1;
    irr.push_back(vec_json(e));
  }
  rep.value("irrelevant ideal generators (exponents)", irr);

  rep.section("isotropy");
  json nontrivial = json::array();
  bool orders_match = true;
  for (std::size_t c = 0; c < f.num_cones(); ++c) {
    const auto iso = isotropy(p, p.lift[c]);
    Integer order = 1;
    for (const auto& t : iso.torsion) order *= t;
    if (iso.free_rank != 0 || order != multiplicity(f, c)) orders_match = false;
    if (order > 1) nontrivial.push_back({{"cone", cone_json(f, c)}, {"order", order.get_str()}});
  }
  rep.value("cones with nontrivial finite isotropy", nontrivial);
  rep.verdict("isotropy is finite of order the multiplicity", orders_match, kCox);

  rep.section("canonical sections");
  SeededRng rng(opt.seed);
  std::size_t agree = 0;
  for (std::size_t k = 0; k < opt.samples; ++k) {
    IntVector a(n, Integer(0));
    for (auto& x : a) x = rng.between(0, 3);
    const auto s = canonical_section(p, a);
    if (section_zero_image(p, s) == divisor_support(p, a)) ++agree;
  }
  rep.value("random divisors", opt.samples);
  rep.verdict("zero set of the canonical section is the preimage of the support", agree == opt.samples, kCox,
              std::to_string(agree) + " of " + std::to_string(opt.samples));

  rep.section("round trip");
  const ConeSet& u = pf.selection(opt.selection);
  rep.value("selection", opt.selection);
  const auto rt = cox_round_trip(p, u);
  rep.value("lattice index", rt.lattice_index.get_str());
  rep.verdict("quotient of the lift reproduces the selection", rt.quotient_exists && rt.reproduces, kCox, rt.note);

  if (pf.sections.empty()) return;
  const auto act = normalize_action(pf.fan, pf.subtorus);
  const Sublattice acting = lifted_acting_lattice(p, act.cochar);
  for (const auto& [name, fam] : pf.sections) {
    rep.section("section family " + name);
    const ConeSet u_hat = lift_open(p, pf.selection(fam.selection));
    std::vector<Section> members;
    for (const auto& m : fam.members) {
      if (const auto* mono = std::get_if<MonomialSection>(&m))
        members.push_back(canonical_section(p, mono->exponents));
      else
        members.push_back(m);
    }
    const auto w = verify_globally_defined(p, u_hat, acting, members, opt.seed, opt.samples);
    json mv = json::array();
    for (const auto& v : w.members)
      mv.push_back({{"homogeneous", v.homogeneous}, {"affine", to_string(v.affine)}, {"contained", v.contained}});
    rep.value("members", mv);
    rep.value("pairs covered", std::to_string(w.pairs_covered) + " of " + std::to_string(w.pairs_checked));
    for (const auto& note : w.notes) rep.note(note);
    rep.verdict("family is globally defined on the lift", w.witness,
                "homogeneous sections with affine non-vanishing loci covering all pairs of points");
  }
}

void cmd_w_set(const ProblemFile& pf, const RunOptions& opt, Report& rep) {
  const Fan& f = *pf.fan;
  const auto g = group_of(pf, rep);
  const ConeSet& u = pf.selection(opt.selection);
  rep.section("translates");
  rep.value("selection", opt.selection);
  rep.value("U", selection_json(f, u));
  json translates = json::array();
  for (const auto& e : g.sym().elements()) translates.push_back(selection_json(f, translate(e, u)));
  rep.value("translates", translates);
  const ConeSet w = w_set(g.sym(), u);
  rep.value("W(U)", selection_json(f, w));
  rep.note(describe_selection(f, w));
  rep.verdict("W(U) is open", is_face_closed(f, w), kTranslates);
  rep.value("W(U) = U", w == u);
}

void theorem_section(const GroupActionData& g, const TheoremReport& t, Report& rep) {
  const Fan& f = g.fan();
  rep.value("U", selection_json(f, t.u));
  rep.value("W(U)", selection_json(f, t.w));
  rep.verdict("W(U) is open", t.open, kTranslates);
  rep.verdict("W(U) has a good quotient", t.good, kGoodQuotient,
              t.obstruction ? describe(*t.obstruction, f) : "");
  rep.verdict("W(U) is H-saturated in U", t.saturated, kSaturated);
  if (t.good) {
    rep.value("cones of W(U)//H", t.quotient_cones);
    json orbits = json::array();
    for (const auto& o : t.class_orbits) {
      json a = json::array();
      for (auto c : o) a.push_back(cone_json(f, c));
      orbits.push_back(a);
    }
    rep.value("orbits of the symmetries on W(U)//H (image classes)", orbits);
  }
  for (const auto& c : t.caveats) rep.note(c);
}

void cmd_verify_theorem(const ProblemFile& pf, const RunOptions& opt, Report& rep) {
  const auto g = group_of(pf, rep);
  const ConeSet& u = pf.selection(opt.selection);
  const auto t = verify_theorem_conclusions(g, u, t_maximal_subsets(g.engine(), 2, opt.max_subsets));
  if (t.refused) throw InputError("selection \"" + opt.selection + "\" is not (H,2)-maximal: " + t.diagnosis);
  rep.section("conclusions on W(U)");
  rep.value("selection", opt.selection);
  theorem_section(g, t, rep);
}

void cmd_verify_corollary(const ProblemFile& pf, const RunOptions& opt, Report& rep) {
  const Fan& f = *pf.fan;
  const auto g = group_of(pf, rep);
  const auto c = verify_corollary(g, opt.max_subsets);
  for (std::size_t i = 0; i < c.maximal.size(); ++i) {
    rep.section("maximal selection " + std::to_string(i));
    const auto& m = c.maximal[i];
    rep.value("U", selection_json(f, m.theorem.u));
    rep.value("W(U)", selection_json(f, m.theorem.w));
    rep.verdict("W(U) is open with a good quotient", m.ok, kGoodQuotient);
    rep.value("W(U) is H-saturated in U", m.theorem.saturated);
    for (const auto& cv : m.theorem.caveats) rep.note(cv);
  }
  rep.section("invariant good selections");
  for (const auto& v : c.invariant) {
    const std::string detail = v.host ? "inside W of maximal selection " + std::to_string(*v.host) : "no host found";
    rep.verdict("{" + describe_selection(f, v.v) + "} is G-saturated in some W(U)", v.ok, kComposite, detail);
  }
}

void cmd_eq1(const ProblemFile& pf, const RunOptions& opt, Report& rep) {
  const Fan& f = *pf.fan;
  if (!opt.inner) throw InputError("eq1-check needs --inner NAME for the open subset X");
  const auto g = group_of(pf, rep);
  const ConeSet& xp = pf.selection(opt.selection);
  const ConeSet& x = pf.selection(*opt.inner);
  const auto r = eq1_crosscheck(g, xp, x);
  rep.section("hypotheses");
  rep.value("X'", selection_json(f, xp));
  rep.value("X", selection_json(f, x));
  rep.value("B = X' \\ X", cones_json(f, r.b));
  rep.verdict("X' has a good quotient", r.x_prime_good, kGoodQuotient);
  rep.verdict("X is open in X'", r.x_open_in_x_prime, kOpen);
  rep.verdict("X is invariant", r.x_invariant, kTranslates);
  rep.verdict("W(X') has a good quotient", r.w_x_prime_good, kGoodQuotient);
  rep.verdict("W(X') is H-saturated in X'", r.w_x_prime_saturated, kSaturated);
  for (const auto& n : r.notes) rep.note(n);
  if (!r.hypotheses_hold()) return;
  rep.section("two routes to W(U)");
  rep.value("U (largest H-saturated subset of X' inside X)", selection_json(f, r.u));
  rep.value("W(U)", selection_json(f, r.left));
  rep.value("W(X') minus the G-saturation of W(B)", selection_json(f, r.right));
  rep.verdict("W(X') ∩ B = W(B)", r.w_b_identity, kTranslates);
  rep.verdict("routes agree", r.equal, kComposite,
              r.witness ? "differ at " + f.describe_cone(*r.witness) : "");
}

void cmd_sweep(const ProblemFile* pf, const RunOptions& opt, Report& rep) {
  std::vector<CorpusFan> corpus;
  if (pf)
    corpus.push_back({"input", pf->fan});
  else
    corpus = sweep_fans();
  SweepOptions so;
  so.bound = opt.bound;
  so.max_subsets = opt.max_subsets;
  const auto s = run_sweep(corpus, so);
  rep.section("corpus");
  rep.value("fans", s.fans);
  rep.value("fan and line pairs", s.instances);
  rep.value("selections", s.selections);
  rep.value("good selections", s.good);
  rep.section("criterion against invariant oracle");
  rep.verdict("good-quotient verdicts agree", s.oracle_disagreements == 0, kGoodQuotient,
              std::to_string(s.oracle_disagreements) + " disagreements");
  rep.value("charts checked", s.charts_checked);
  rep.value("Hilbert basis comparisons", s.hilbert_comparisons);
  rep.verdict("invariant monoids of charts match the quotient", s.chart_ring_failures == 0,
              "invariant ring of a chart equals the ring of its image",
              std::to_string(s.chart_ring_failures) + " failures");
  rep.section("quotient fans");
  rep.value("quotient fans built", s.quotient_fans);
  rep.verdict("quotient fan invariants hold", s.invariant_violations == 0, "quotient fan with certifying charts",
              std::to_string(s.invariant_violations) + " violations");
  rep.verdict("good quotient properties hold", s.property_violations == 0, kQuotientProperties,
              std::to_string(s.property_violations) + " violations");
  rep.section("maximal subsets");
  rep.value("maximal selections", s.t_maximal_sets);
  rep.verdict("k = 1 and k = 2 agree", s.ak_mismatches == 0, kMaximal,
              std::to_string(s.ak_mismatches) + " mismatches");
  rep.verdict("conclusions hold with trivial symmetry", s.theorem_failures == 0, kTranslates,
              std::to_string(s.theorem_checks) + " maximal selections checked");
  rep.section("staging");
  rep.value("staged runs", s.staged_runs);
  rep.value("both routes exist", s.staged_both_exist);
  rep.verdict("staged and direct quotients agree", s.staged_inconsistent == 0,
              "quotient by H2 through the quotient by H1",
              std::to_string(s.staged_inconsistent) + " inconsistent");
  rep.section("saturation");
  rep.value("largest saturated subset checks", s.max_sat_checks);
  rep.verdict("largest saturated subset matches brute force", s.max_sat_mismatches == 0, kSaturated,
              std::to_string(s.max_sat_mismatches) + " mismatches");
  rep.value("symmetry groups", s.eq1_groups);
  rep.value("instances", s.eq1_instances);
  rep.value("instances failing hypotheses", s.eq1_skipped);
  rep.verdict("two routes to W(U) agree", s.eq1_unequal == 0 && s.eq1_identity_failures == 0, kComposite,
              std::to_string(s.eq1_equal) + " equal, " + std::to_string(s.eq1_unequal) + " unequal");
  for (const auto& fl : s.failures) rep.note(fl);
}

}  // namespace

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names{"check",    "quotient",         "enumerate-maximal",
                                              "cox",      "w-set",            "verify-theorem",
                                              "verify-corollary", "eq1-check", "oracle-sweep"};
  return names;
}

bool command_needs_problem(const std::string& command) { return command != "oracle-sweep"; }

RunResult run_command(const RunOptions& options, const ProblemFile* problem) {
  RunResult res;
  Report rep(options.command, options.seed);
  try {
    const std::string& c = options.command;
    if (c == "check") cmd_check(need(problem), options, rep);
    else if (c == "quotient") cmd_quotient(need(problem), options, rep);
    else if (c == "enumerate-maximal") cmd_enumerate(need(problem), options, rep);
    else if (c == "cox") cmd_cox(need(problem), options, rep);
    else if (c == "w-set") cmd_w_set(need(problem), options, rep);
    else if (c == "verify-theorem") cmd_verify_theorem(need(problem), options, rep);
    else if (c == "verify-corollary") cmd_verify_corollary(need(problem), options, rep);
    else if (c == "eq1-check") cmd_eq1(need(problem), options, rep);
    else if (c == "oracle-sweep") cmd_sweep(problem, options, rep);
    else throw InputError("unknown command \"" + c + "\"");
  } catch (const InputError& e) {
    res.error = e.what();
    return res;
  } catch (const ProblemError& e) {
    res.error = e.what();
    return res;
  } catch (const SizeGuardError& e) {
    res.error = std::string("size guard: ") + e.what();
    return res;
  } catch (const std::invalid_argument& e) {
    res.error = e.what();
    return res;
  }
  res.exit_code = rep.passed() ? 0 : 1;
  res.text = rep.text();
  res.json = rep.document().dump(2) + "\n";
  return res;
}

RunResult run_command(const RunOptions& options) {
  const auto& names = command_names();
  if (std::find(names.begin(), names.end(), options.command) == names.end()) return run_command(options, nullptr);
  if (!command_needs_problem(options.command) && !options.problem_path) return run_command(options, nullptr);
  if (!options.problem_path) {
    RunResult res;
    res.error = "command \"" + options.command + "\" needs a problem file";
    return res;
  }
  try {
    const ProblemFile pf = load_problem(*options.problem_path);
    return run_command(options, &pf);
  } catch (const ProblemError& e) {
    RunResult res;
    res.error = *options.problem_path + ": " + e.what();
    return res;
  }
}

}  // namespace toricq
