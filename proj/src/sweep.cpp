#include "toricq/sweep.hpp"

#include "toricq/oracles.hpp"

#include <algorithm>
#include <set>

namespace toricq {

namespace {

std::vector<std::vector<std::size_t>> signature(const SymmetryGroup& g) {
  std::vector<std::vector<std::size_t>> out;
  for (const auto& e : g.elements()) out.push_back(e.cone_permutation);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<IntVector> unit_vectors(std::size_t d) {
  std::vector<IntVector> out;
  for (std::size_t i = 0; i < d; ++i) {
    IntVector e(d, Integer(0));
    e[i] = 1;
    out.push_back(e);
  }
  return out;
}

struct Recorder {
  SweepStats& stats;
  const SweepOptions& options;
  std::string where;

  void fail(const std::string& what, const Fan& f, const ConeSet& u) {
    if (stats.failures.size() >= options.max_failures) return;
    std::string s = where + ": " + what + " on {";
    bool first = true;
    u.for_each([&](std::size_t c) {
      s += (first ? "" : ", ") + f.describe_cone(c);
      first = false;
    });
    stats.failures.push_back(s + "}");
  }
};

}  // namespace

std::vector<SymmetryGroup> compatible_symmetry_groups(std::shared_ptr<const Fan> fan, const Sublattice& l) {
  std::vector<SymmetryGroup> out{SymmetryGroup::trivial(fan)};
  std::set<std::vector<std::vector<std::size_t>>> seen{signature(out.front())};
  std::vector<IntMatrix> stabiliser;
  auto add = [&](SymmetryGroup g) {
    if (seen.insert(signature(g)).second) out.push_back(std::move(g));
  };
  for (const auto& a : fan_automorphisms(*fan)) {
    if (!preserves_lattice(a, l)) continue;
    stabiliser.push_back(a.matrix);
    add(SymmetryGroup::generated_by(fan, {a.matrix}));
  }
  add(SymmetryGroup::generated_by(fan, stabiliser));
  return out;
}

SweepStats run_sweep(const std::vector<CorpusFan>& fans, const SweepOptions& options) {
  SweepStats st;
  for (const auto& cf : fans) {
    const auto& fp = cf.fan;
    const Fan& f = *fp;
    ++st.fans;
    const auto opens = enumerate_open_subsets(f, options.max_subsets);
    const QuotientEngine trivial_engine(normalize_action(fp, {}));
    const QuotientEngine full_engine(normalize_action(fp, unit_vectors(f.dim())));

    for (const auto& line : sweep_lines(f.dim())) {
      ++st.instances;
      Recorder rec{st, options, cf.name + " L=" + to_string(line)};
      const GroupActionData plain(normalize_action(fp, {line}), SymmetryGroup::trivial(fp));
      const QuotientEngine& engine = plain.engine();
      const InvariantOracle oracle(f, engine.action().cochar, options.bound);

      std::vector<ConeSet> goods;
      for (const auto& u : opens) {
        ++st.selections;
        const bool g = engine.admits_good_quotient(u);
        if (g != oracle.admits_good_quotient(u)) {
          ++st.oracle_disagreements;
          rec.fail(g ? "criterion accepts, oracle rejects" : "oracle accepts, criterion rejects", f, u);
        }
        if (g) goods.push_back(u);
      }
      st.good += goods.size();

      for (std::size_t s = 0; s < f.num_cones(); ++s) {
        ++st.charts_checked;
        const auto c = oracle.chart_ring_identity(s);
        if (c.hilbert_bases_compared) ++st.hilbert_comparisons;
        if (!c.ok()) {
          ++st.chart_ring_failures;
          ConeSet one;
          one.insert(s);
          rec.fail("chart ring identity fails", f, one);
        }
      }

      for (const auto& u : goods) {
        ++st.quotient_fans;
        const auto q = build_quotient_fan(engine, u);
        const auto inv = quotient_invariant_violations(engine, q);
        st.invariant_violations += inv.size();
        if (!inv.empty()) rec.fail("quotient fan invariant: " + inv.front(), f, u);
        const auto props = check_quotient_properties(engine, u);
        st.property_violations += props.violations.size();
        if (!props.ok()) rec.fail("quotient property " + props.violations.front(), f, u);
      }

      auto k1 = t_maximal_subsets(engine, 1, options.max_subsets);
      auto k2 = t_maximal_subsets(engine, 2, options.max_subsets);
      std::sort(k1.begin(), k1.end());
      std::sort(k2.begin(), k2.end());
      st.t_maximal_sets += k2.size();
      if (k1 != k2) {
        ++st.ak_mismatches;
        rec.fail("(T,1)- and (T,2)-maximal selections differ", f, ConeSet{});
      }
      for (const auto& u : k2) {
        ++st.theorem_checks;
        const auto rep = verify_theorem_conclusions(plain, u, k2);
        if (!rep.conclusions_hold() || rep.w != u) {
          ++st.theorem_failures;
          rec.fail("theorem conclusions fail", f, u);
        }
      }

      std::vector<std::pair<const QuotientEngine*, const QuotientEngine*>> pairs{{&trivial_engine, &engine}};
      if (engine.action().cochar.rank() < f.dim()) pairs.emplace_back(&engine, &full_engine);
      for (const auto& [first, second] : pairs)
        for (const auto& u : opens) {
          if (!first->admits_good_quotient(u)) continue;
          ++st.staged_runs;
          const auto rep = staged_quotient(*first, *second, u);
          if (rep.staged_exists && rep.direct_exists) ++st.staged_both_exist;
          if (!rep.consistent) {
            ++st.staged_inconsistent;
            rec.fail("staged quotient: " + (rep.notes.empty() ? std::string("inconsistent") : rep.notes.back()),
                     f, u);
          }
        }

      for (const auto& xp : goods) {
        const auto sats = saturated_subsets(oracle, f, xp, opens);
        for (const auto& w : opens) {
          if (!w.is_subset_of(xp)) continue;
          ++st.max_sat_checks;
          bool same = false;
          try {
            same = engine.max_saturated_inside(xp, w) == brute_force_max_saturated(sats, w);
          } catch (const std::logic_error&) {
            same = false;
          }
          if (!same) {
            ++st.max_sat_mismatches;
            rec.fail("largest saturated selection differs from brute force", f, w);
          }
        }
      }

      for (auto& sym : compatible_symmetry_groups(fp, engine.action().cochar)) {
        ++st.eq1_groups;
        const GroupActionData g(engine.action(), std::move(sym));
        std::vector<ConeSet> invariant_opens;
        for (const auto& x : opens)
          if (is_invariant(g.sym(), x)) invariant_opens.push_back(x);
        for (const auto& xp : goods) {
          const Eq1Checker checker(g, xp);
          for (const auto& x : invariant_opens) {
            if (!x.is_subset_of(xp)) continue;
            const auto rep = checker.check(x);
            if (!rep.hypotheses_hold()) {
              ++st.eq1_skipped;
              continue;
            }
            ++st.eq1_instances;
            if (!rep.w_b_identity) {
              ++st.eq1_identity_failures;
              rec.fail("W(X') ∩ B differs from W(B)", f, x);
            }
            if (rep.equal) {
              ++st.eq1_equal;
            } else {
              ++st.eq1_unequal;
              rec.fail("W(U) routes differ (X' shown next)", f, x);
              rec.fail("X'", f, xp);
            }
          }
        }
      }
    }
  }
  return st;
}

}  // namespace toricq
