#include "toricq/commands.hpp"
#include "toricq/corpus.hpp"
#include "toricq/cox.hpp"
#include "toricq/oracles.hpp"
#include "toricq/quotient.hpp"
#include "toricq/random.hpp"
#include "toricq/sweep.hpp"
#include "toricq/symmetry.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

using namespace toricq;

namespace {

struct Outcome {
  bool ok = false;
  std::string detail;
};

IntVector iv(std::initializer_list<long> xs) {
  IntVector v;
  for (long x : xs) v.emplace_back(x);
  return v;
}

std::shared_ptr<const Fan> make_fan(std::size_t d, std::vector<IntVector> rays, std::vector<RaySet> cones) {
  return std::make_shared<const Fan>(d, std::move(rays), std::move(cones));
}

ConeSet cones_of(const Fan& f, std::initializer_list<RaySet> ray_sets) {
  ConeSet s;
  for (const auto& r : ray_sets) s.insert(*f.index_of(r));
  return s;
}

std::vector<ConeSet> sorted(std::vector<ConeSet> v) {
  std::sort(v.begin(), v.end());
  return v;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt_seconds(double s) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2fs", s);
  return buf;
}

// ---- 1 ----------------------------------------------------------------------

Outcome punctured_plane() {
  const auto f = make_fan(2, {iv({1, 0}), iv({0, 1})}, {{0}, {1}});
  const QuotientEngine e(normalize_action(f, {iv({1, 1})}));
  const auto out = e.good_quotient(f->all_cones());
  if (!std::holds_alternative<QuotientFan>(out)) return {false, "no good quotient"};
  const auto& q = std::get<QuotientFan>(out);
  const bool p1 = q.target_rank == 1 && q.fan->rays().size() == 2 &&
                  q.fan->rays()[0] == negated(q.fan->rays()[1]) && q.fan->maximal_cones().size() == 2;
  // each ray of the plane is the chart of one half-line, the origin goes to the origin
  bool charts = q.charts.size() == 2 && q.charts[0].second != q.charts[1].second;
  for (const auto& [bar, chart] : q.charts) charts = charts && f->cone_rays(chart).size() == 1;
  const std::size_t origin = *f->index_of({});
  charts = charts && q.orbit_map[origin] == *q.fan->index_of({});
  for (std::size_t r = 0; r < 2; ++r) {
    const auto target = q.orbit_map[*f->ray_cone(r)];
    charts = charts && target != kNoCone && q.fan->cone_rays(target).size() == 1;
  }
  const bool clean = quotient_invariant_violations(e, q).empty();
  return {p1 && charts && clean && q.geometric, "rank 1 target, rays +-1, two ray charts, geometric"};
}

// ---- 2 ----------------------------------------------------------------------

Outcome p1_obstruction() {
  const auto f = make_fan(1, {iv({1}), iv({-1})}, {{0}, {1}});
  const QuotientEngine e(normalize_action(f, {iv({1})}));
  const auto out = e.good_quotient(f->all_cones());
  if (!std::holds_alternative<Obstruction>(out)) return {false, "a quotient was produced"};
  const auto& o = std::get<Obstruction>(out);
  const InvariantOracle oracle(*f, e.action().cochar);
  const bool agrees = !oracle.admits_good_quotient(f->all_cones());
  return {o.kind == Obstruction::Kind::ChartNotAffine && agrees, describe(o, *f)};
}

// ---- 3 ----------------------------------------------------------------------

Outcome t_maximal_small() {
  const auto p1 = make_fan(1, {iv({1}), iv({-1})}, {{0}, {1}});
  const auto a1 = make_fan(1, {iv({1})}, {{0}});
  std::string detail;
  bool ok = true;
  for (const auto& [f, expected, name] :
       {std::tuple{p1, std::vector{cones_of(*p1, {{}, {0}}), cones_of(*p1, {{}, {1}}), cones_of(*p1, {{}})}, "P1"},
        std::tuple{a1, std::vector{a1->all_cones(), cones_of(*a1, {{}})}, "A1"}}) {
    const auto t0 = std::chrono::steady_clock::now();
    const QuotientEngine e(normalize_action(f, {iv({1})}));
    const auto got = sorted(t_maximal_subsets(e, 2));
    const InvariantOracle oracle(*f, e.action().cochar);
    const auto brute = sorted(brute_force_t_maximal(oracle, *f));
    const double s = seconds_since(t0);
    const bool this_ok = got == sorted(expected) && brute == got && s < 1.0;
    ok = ok && this_ok;
    detail += std::string(detail.empty() ? "" : ", ") + name + ": " + std::to_string(got.size()) + " sets " +
              (this_ok ? "match" : "MISMATCH") + " in " + fmt_seconds(s);
  }
  return {ok, detail};
}

// ---- 4-8, 10 (corpus part) --------------------------------------------------

struct SweepRun {
  SweepStats stats;
  double seconds = 0;
};

std::string first_failure(const SweepStats& s) { return s.failures.empty() ? "" : "; first: " + s.failures.front(); }

Outcome oracle_equivalence(const SweepRun& r) {
  const auto& s = r.stats;
  std::ostringstream d;
  d << s.fans << " fans, " << s.instances << " (fan, line) pairs, " << s.selections << " selections, " << s.good
    << " good, " << s.oracle_disagreements << " disagreements; " << s.hilbert_comparisons
    << " chart rings vs Hilbert bases, " << s.chart_ring_failures << " failures; the sweep checks criteria 4-8 and 10 in one pass";
  return {s.fans > 0 && s.oracle_disagreements == 0 && s.chart_ring_failures == 0,
          d.str() + first_failure(s)};
}

Outcome ak_coincide(const SweepRun& r) {
  const auto& s = r.stats;
  return {s.instances > 0 && s.ak_mismatches == 0,
          std::to_string(s.t_maximal_sets) + " maximal sets, " + std::to_string(s.ak_mismatches) +
              " instances where k = 1 and k = 2 differ"};
}

Outcome quotient_properties(const SweepRun& r) {
  const auto& s = r.stats;
  return {s.quotient_fans > 0 && s.invariant_violations == 0 && s.property_violations == 0,
          std::to_string(s.quotient_fans) + " quotient fans, " + std::to_string(s.property_violations) +
              " property violations, " + std::to_string(s.invariant_violations) + " invariant violations"};
}

Outcome staging(const SweepRun& r) {
  const auto& s = r.stats;
  return {s.staged_runs > 0 && s.staged_inconsistent == 0,
          std::to_string(s.staged_runs) + " nested pairs (" + std::to_string(s.staged_both_exist) +
              " with both quotients), " + std::to_string(s.staged_inconsistent) + " inconsistent"};
}

Outcome saturation_operators(const SweepRun& r) {
  const auto& s = r.stats;
  const bool ok = s.max_sat_checks > 0 && s.max_sat_mismatches == 0 && s.eq1_instances > 0 && s.eq1_unequal == 0 &&
                  s.eq1_identity_failures == 0;
  return {ok, std::to_string(s.max_sat_checks) + " max-saturated checks, " + std::to_string(s.max_sat_mismatches) +
                  " mismatches; " + std::to_string(s.eq1_instances) + " two-route instances over " +
                  std::to_string(s.eq1_groups) + " symmetry groups, " + std::to_string(s.eq1_unequal) +
                  " unequal, " + std::to_string(s.eq1_skipped) + " outside the hypotheses"};
}

// ---- 9 ----------------------------------------------------------------------

bool zero_sets_match(const CoxPresentation& p, SeededRng& rng, std::size_t samples) {
  for (std::size_t k = 0; k < samples; ++k) {
    IntVector a;
    for (std::size_t i = 0; i < p.num_rays(); ++i) a.emplace_back(rng.between(0, 3));
    const auto s = canonical_section(p, a);
    ConeSet lifted;
    divisor_support(p, a).for_each([&](std::size_t c) { lifted.insert(p.lift[c]); });
    if (section_zero_set(p, s) != lifted || section_zero_image(p, s) != divisor_support(p, a)) return false;
  }
  return true;
}

Outcome cox_examples() {
  const auto p2 = make_fan(2, {iv({1, 0}), iv({0, 1}), iv({-1, -1})}, {{0, 1}, {1, 2}, {0, 2}});
  const auto p112 = make_fan(2, {iv({1, 0}), iv({0, 1}), iv({-1, -2})}, {{0, 1}, {1, 2}, {0, 2}});
  SeededRng rng(1);
  std::vector<std::string> bad;

  const auto a = cox_presentation(p2);
  ConeSet punctured = a.orthant->all_cones();
  punctured.erase(*a.orthant->index_of({0, 1, 2}));
  if (!(a.grading.free_rank == 1 && a.grading.torsion.empty() && a.grading.degree_map.row(0) == iv({1, 1, 1})))
    bad.push_back("P2 class group");
  if (a.relevant != punctured) bad.push_back("P2 relevant locus");
  if (!zero_sets_match(a, rng, 100)) bad.push_back("P2 zero sets");
  if (!cox_round_trip(a, p2->all_cones()).reproduces) bad.push_back("P2 round trip");

  const auto b = cox_presentation(p112);
  if (!(b.grading.free_rank == 1 && b.grading.torsion.empty() && b.grading.degree_map.row(0) == iv({1, 2, 1})))
    bad.push_back("P(1,1,2) class group");
  bool witness = false;
  b.relevant.for_each([&](std::size_t c) {
    const auto iso = isotropy(b, c);
    if (iso.free_rank == 0 && !iso.torsion.empty()) witness = true;
  });
  if (!witness) bad.push_back("P(1,1,2) isotropy witness");
  if (!zero_sets_match(b, rng, 100)) bad.push_back("P(1,1,2) zero sets");
  if (!cox_round_trip(b, p112->all_cones()).reproduces) bad.push_back("P(1,1,2) round trip");

  std::string detail = "Cl = Z, weights (1,1,1) and (1,2,1), isotropy Z/2 at a P(1,1,2) chart, 100 divisors each";
  for (const auto& x : bad) detail += "; failed: " + x;
  return {bad.empty(), detail};
}

// ---- 10 ---------------------------------------------------------------------

Outcome theorem_checker(const SweepRun& r) {
  const auto& s = r.stats;
  const bool corpus = s.theorem_checks > 0 && s.theorem_failures == 0;

  const auto f = make_fan(1, {iv({1}), iv({-1})}, {{0}, {1}});
  const GroupActionData g(normalize_action(f, {iv({1})}), SymmetryGroup::generated_by(f, {IntMatrix::from_rows(1, {iv({-1})})}));
  const auto c = cones_of(*f, {{}, {0}});
  const auto rep = verify_theorem_conclusions(g, c);
  const bool honest = !rep.refused && rep.w == cones_of(*f, {{}}) && rep.open && rep.good && !rep.saturated &&
                      !rep.connected && !rep.caveats.empty();
  return {corpus && honest, std::to_string(s.theorem_checks) + " maximal selections with trivial symmetry, " +
                                std::to_string(s.theorem_failures) + " failures; P1 with the swap: W = torus, good, " +
                                (rep.saturated ? "saturated" : "not saturated") + ", caveat " +
                                (rep.caveats.empty() ? "missing" : "attached")};
}

// ---- 11 ---------------------------------------------------------------------

Outcome determinism() {
  std::vector<RunOptions> runs;
  RunOptions sweep;
  sweep.command = "oracle-sweep";
  runs.push_back(sweep);
  struct Case {
    const char* command;
    const char* file;
    const char* selection;
    const char* inner;
  };
  const Case cases[] = {
      {"check", "p2.json", "all", nullptr},
      {"quotient", "punctured_plane.json", "all", nullptr},
      {"quotient", "p1.json", "all", nullptr},
      {"enumerate-maximal", "p1xp1.json", "all", nullptr},
      {"cox", "p112.json", "all", nullptr},
      {"cox", "p2.json", "all", nullptr},
      {"w-set", "p1.json", "C", nullptr},
      {"verify-theorem", "p1.json", "C", nullptr},
      {"verify-corollary", "p2.json", "all", nullptr},
      {"eq1-check", "p1xp1.json", "upper", "upper_rays"},
  };
  for (const auto& c : cases) {
    RunOptions o;
    o.command = c.command;
    o.problem_path = std::string(TORICQ_PROBLEMS_DIR) + "/" + c.file;
    o.selection = c.selection;
    if (c.inner) o.inner = std::string(c.inner);
    o.seed = 20240;
    runs.push_back(o);
  }
  std::size_t identical = 0;
  std::string bad;
  for (const auto& o : runs) {
    const auto a = run_command(o);
    const auto b = run_command(o);
    if (a.exit_code != 2 && a.exit_code == b.exit_code && a.text == b.text && a.json == b.json)
      ++identical;
    else
      bad += " " + o.command;
  }
  return {identical == runs.size(), std::to_string(identical) + " of " + std::to_string(runs.size()) +
                                        " reports byte-identical across two runs (full corpus sweep included)" +
                                        (bad.empty() ? "" : "; differing:" + bad)};
}

}  // namespace

int main() {
  int failed = 0;
  auto report = [&](int n, const char* title, const std::function<Outcome()>& f, std::optional<double> limit = {},
                    double shared = 0) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = f();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double s = seconds_since(t0) + shared;
    if (limit && s >= *limit) {
      o.ok = false;
      o.detail += "; over the " + fmt_seconds(*limit) + " limit";
    }
    if (!o.ok) ++failed;
    std::printf("criterion %2d %s  %s  [%s]  %s\n", n, o.ok ? "PASS" : "FAIL", title, fmt_seconds(s).c_str(),
                o.detail.c_str());
    std::fflush(stdout);
  };

  report(1, "punctured plane by the diagonal gives P1", punctured_plane, 1.0);
  report(2, "P1 by the full torus is obstructed", p1_obstruction, 1.0);
  report(3, "T-maximal sets of P1 and A1 match brute force", t_maximal_small, 2.0);

  SweepRun run;
  {
    const auto t0 = std::chrono::steady_clock::now();
    try {
      run.stats = run_sweep(sweep_fans());
    } catch (const std::exception& e) {
      run.stats.failures.push_back(std::string("sweep threw: ") + e.what());
    }
    run.seconds = seconds_since(t0);
  }
  report(4, "good-quotient criterion agrees with the invariant oracle", [&] { return oracle_equivalence(run); }, 300.0,
         run.seconds);
  report(5, "k = 1 and k = 2 maximal sets coincide", [&] { return ak_coincide(run); });
  report(6, "quotient property suite", [&] { return quotient_properties(run); });
  report(7, "staged and direct quotients agree", [&] { return staging(run); });
  report(8, "maximal saturated subsets and the two-route identity", [&] { return saturation_operators(run); });
  report(9, "Cox construction of P2 and P(1,1,2)", cox_examples);
  report(10, "theorem-conclusion checker", [&] { return theorem_checker(run); });
  report(11, "determinism", determinism);

  std::printf("%d of 11 criteria failed\n", failed);
  return failed == 0 ? 0 : 1;
}
