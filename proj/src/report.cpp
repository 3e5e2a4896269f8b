#include "tilinv/report.hpp"

#include <algorithm>
#include <set>

#include "tilinv/matrix.hpp"

namespace tilinv {

namespace {

// Members of asymptotic groups counted after identifying each word with its
// dual relabeling: a derived word and its dual code the same proximal pair,
// so they represent one composant of the derived space.
int dual_reduced_members(const DerivedSubstitution& ds,
                         const AsymptoticStructure& as,
                         const std::vector<AsymptoticGroup>& groups,
                         int depth) {
  std::vector<Letter> dual(ds.letter_pairs.size());
  for (std::size_t i = 0; i < ds.letter_pairs.size(); ++i) {
    int j = ds.letter_of(ds.letter_pairs[i].dual());
    dual[i] = j >= 0 ? j : static_cast<Letter>(i);
  }
  auto relabel = [&](std::vector<Letter> w) {
    for (Letter& x : w) x = dual[static_cast<std::size_t>(x)];
    return w;
  };
  std::vector<int> members;
  for (const auto& g : groups)
    members.insert(members.end(), g.members.begin(), g.members.end());
  std::vector<TwoSidedWord> words;
  for (int m : members)
    words.push_back(
        expand_periodic(ds.base, as.points[static_cast<std::size_t>(m)], depth));
  auto same = [&](const TwoSidedWord& a, const TwoSidedWord& b) {
    std::size_t ll = std::min(a.left.size(), b.left.size());
    std::size_t rl = std::min(a.right.size(), b.right.size());
    return std::equal(a.left.begin(), a.left.begin() + static_cast<long>(ll),
                      b.left.begin()) &&
           std::equal(a.right.begin(), a.right.begin() + static_cast<long>(rl),
                      b.right.begin());
  };
  const int n = static_cast<int>(members.size());
  std::vector<char> dropped(static_cast<std::size_t>(n), 0);
  int count = 0;
  for (int i = 0; i < n; ++i) {
    if (dropped[static_cast<std::size_t>(i)]) continue;
    ++count;
    TwoSidedWord d;
    d.left = relabel(words[static_cast<std::size_t>(i)].left);
    d.right = relabel(words[static_cast<std::size_t>(i)].right);
    for (int j = i + 1; j < n; ++j)
      if (!dropped[static_cast<std::size_t>(j)] &&
          same(d, words[static_cast<std::size_t>(j)]))
        dropped[static_cast<std::size_t>(j)] = 1;
  }
  return count;
}

}  // namespace

AnalysisReport invariant_report(const Substitution& sigma,
                                const RunConfig& cfg) {
  AnalysisReport r;
  r.name = sigma.name();
  IntMatrix a = IntMatrix::from_counts(sigma.abelianization_counts());
  r.spectral = spectral_profile(a, cfg.tol);
  r.properness = is_proper(sigma);

  r.table = pair_table(sigma, cfg.power);
  r.cycles = no_cycle_check(r.table);
  r.equivalence_classes = static_cast<int>(equivalence_classes(r.table).size());

  try {
    r.gcc = gcc_check(sigma, cfg.max_pairs);
    r.gcc_ok = true;
    if (r.gcc.verdict == Verdict::Unknown)
      r.flags.push_back("gcc: closure hit max_pairs=" +
                        std::to_string(cfg.max_pairs));
  } catch (const std::exception& e) {
    r.flags.push_back(std::string("gcc: ") + e.what());
  }

  try {
    r.asym = asymptotic_pairs(sigma, cfg.power, cfg.depth);
    r.asym_ok = true;
    if (r.asym.heuristic)
      r.flags.push_back("asymptotic: a ray comparison sat at the depth margin");
  } catch (const std::exception& e) {
    r.flags.push_back(std::string("asymptotic: ") + e.what());
  }

  DerivedSubstitution abp;
  if (r.asym_ok) {
    try {
      abp = build_phi_ABP(sigma, r.asym, cfg.depth);
      r.abp_ok = true;
      for (const auto& p : abp.letter_pairs)
        if (!p.trivial()) r.abp_nontrivial.push_back(p);
    } catch (const std::exception& e) {
      r.flags.push_back(std::string("abp: ") + e.what());
    }
  }

  try {
    r.essential = essential_set(sigma, cfg.max_len);
    r.essential_ok = !r.essential.overflow;
    if (r.essential.overflow)
      r.flags.push_back("essential: universe overflow at max_len=" +
                        std::to_string(r.essential.max_len_used));
    if (!r.essential.forward_closed)
      r.flags.push_back("essential: not forward closed at max_len=" +
                        std::to_string(r.essential.max_len_used));
    if (r.essential_ok && r.abp_ok) {
      r.essential.contains_abp_closure = true;
      for (const auto& p : r.abp_nontrivial)
        if (!r.essential.contains(p)) r.essential.contains_abp_closure = false;
    }
  } catch (const std::exception& e) {
    r.flags.push_back(std::string("essential: ") + e.what());
  }

  if (r.essential_ok && r.essential.forward_closed) {
    try {
      DerivedSubstitution ebp = build_phi_EBP(sigma, r.essential);
      r.ebp_ok = true;
      r.ebp_lambda = ebp.lambda;
      r.ebp_beta = ebp.beta;
      try {
        AsymptoticStructure ea =
            asymptotic_pairs(ebp.base, cfg.power, cfg.depth);
        r.ebp_asym_ok = true;
        r.ebp_backward =
            dual_reduced_members(ebp, ea, ea.backward_groups, cfg.depth);
        r.ebp_forward =
            dual_reduced_members(ebp, ea, ea.forward_groups, cfg.depth);
        r.ebp_heuristic = ea.heuristic;
        if (ea.heuristic)
          r.flags.push_back("ebp asymptotic: comparison sat at the margin");
      } catch (const std::exception& e) {
        r.flags.push_back(std::string("ebp asymptotic: ") + e.what());
      }
    } catch (const std::exception& e) {
      r.flags.push_back(std::string("ebp: ") + e.what());
    }
  }

  if (r.abp_ok && !r.abp_nontrivial.empty()) {
    try {
      Substitution pa = build_phi_A(abp);
      r.phi_a_ok = true;
      r.phi_a_letters = pa.letters();
      IntMatrix m = IntMatrix::from_counts(pa.abelianization_counts());
      r.phi_a_primitive = is_primitive(m);
      EventualRangeData erd = eventual_range_data(m.transpose());
      r.phi_a_rank = erd.eventual_rank;
      r.phi_a_poly = erd.restricted_char_poly;
    } catch (const std::exception& e) {
      r.flags.push_back(std::string("phi_a: ") + e.what());
    }
  }
  return r;
}

CompareResult compare(const Substitution& s1, const Substitution& s2,
                      const RunConfig& cfg) {
  CompareResult c;
  c.left = invariant_report(s1, cfg);
  c.right = invariant_report(s2, cfg);
  const AnalysisReport& l = c.left;
  const AnalysisReport& r = c.right;

  auto differ = [&](const std::string& field, auto a, auto b, bool certain) {
    c.compared.push_back(field);
    if (certain && a != b) {
      c.distinguished = true;
      return true;
    }
    return false;
  };

  // Asymptotic composant counts of the spaces themselves.
  if (l.asym_ok && r.asym_ok && !l.asym.heuristic && !r.asym.heuristic) {
    int lb = backward_member_count(l.asym), rb = backward_member_count(r.asym);
    int lf = forward_member_count(l.asym), rf = forward_member_count(r.asym);
    if (differ("backward-asymptotic counts", lb, rb, true))
      c.reasons.push_back("backward-asymptotic counts " + std::to_string(lb) +
                          " vs " + std::to_string(rb));
    if (differ("forward-asymptotic counts", lf, rf, true))
      c.reasons.push_back("forward-asymptotic counts " + std::to_string(lf) +
                          " vs " + std::to_string(rf));
  }

  // Asymptotic composant counts of the derived EBP spaces.
  if (l.ebp_asym_ok && r.ebp_asym_ok && !l.ebp_heuristic && !r.ebp_heuristic) {
    if (differ("backward-asymptotic EBP counts", l.ebp_backward,
               r.ebp_backward, true))
      c.reasons.push_back("backward-asymptotic EBP counts " +
                          std::to_string(l.ebp_backward) + " vs " +
                          std::to_string(r.ebp_backward));
    if (differ("forward-asymptotic EBP counts", l.ebp_forward, r.ebp_forward,
               true))
      c.reasons.push_back("forward-asymptotic EBP counts " +
                          std::to_string(l.ebp_forward) + " vs " +
                          std::to_string(r.ebp_forward));
  }

  // Direct-limit invariants of the trivial-forgetting reduction.
  if (l.phi_a_ok && r.phi_a_ok) {
    if (differ("phi_A letters", l.phi_a_letters, r.phi_a_letters, true))
      c.reasons.push_back("phi_A letters " + std::to_string(l.phi_a_letters) +
                          " vs " + std::to_string(r.phi_a_letters));
    if (differ("phi_A eventual rank", l.phi_a_rank, r.phi_a_rank, true))
      c.reasons.push_back("phi_A eventual rank " +
                          std::to_string(l.phi_a_rank) + " vs " +
                          std::to_string(r.phi_a_rank));
    if (differ("phi_A restricted char poly", l.phi_a_poly, r.phi_a_poly, true))
      c.reasons.push_back("phi_A restricted char poly " +
                          poly_str(l.phi_a_poly) + " vs " +
                          poly_str(r.phi_a_poly));
    if (differ("phi_A primitivity", l.phi_a_primitive, r.phi_a_primitive,
               true))
      c.reasons.push_back(
          std::string("phi_A primitivity ") +
          (l.phi_a_primitive ? "true" : "false") + " vs " +
          (r.phi_a_primitive ? "true" : "false") +
          " (primitive aperiodic inverse limits are indecomposable)");
  }
  return c;
}

}  // namespace tilinv
