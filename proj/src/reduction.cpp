#include "tilinv/reduction.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace tilinv {

namespace {

// Membership test for the factor language. A word of length n spans at most
// two inflation blocks once the minimum image length at power k reaches n-1,
// so it is allowed exactly when it occurs inside sigma^k(xy) for some allowed
// two-letter word xy. Results are memoized.
class FactorCache {
 public:
  explicit FactorCache(const Substitution& sigma) : sigma_(sigma) {
    for (const Word& w : allowed_words(sigma, 2))
      if (w.size() == 2) grams_.push_back(w);
    texts_ = grams_;
  }

  bool allowed(const Word& w) {
    if (w.size() <= 1) return true;
    auto it = memo_.find(w);
    if (it != memo_.end()) return it->second;
    const long need = static_cast<long>(w.size()) - 1;
    while (min_len_ < need && power_ < 64) {
      ++power_;
      min_len_ = kMaxLong;
      for (Letter a = 0; a < sigma_.alphabet().size(); ++a)
        min_len_ = std::min(
            min_len_, static_cast<long>(sigma_.apply(Word{a}, power_).size()));
      texts_.clear();
      for (const Word& g : grams_) texts_.push_back(sigma_.apply(g, power_));
    }
    if (min_len_ < need) {
      // Some letter never grows; give up on pruning for this word.
      memo_.emplace(w, true);
      return true;
    }
    bool ok = false;
    for (const Word& t : texts_) {
      if (std::search(t.begin(), t.end(), w.begin(), w.end()) != t.end()) {
        ok = true;
        break;
      }
    }
    memo_.emplace(w, ok);
    return ok;
  }

 private:
  static constexpr long kMaxLong = 1L << 60;
  const Substitution& sigma_;
  std::vector<Word> grams_;
  std::vector<Word> texts_;
  std::map<Word, bool> memo_;
  int power_ = 0;
  long min_len_ = 1;
};

// Append the images, strip every complete balanced prefix, and report the
// reduced remainder.
void step(const Substitution& sigma, const AutomatonState& s, Letter a1,
          Letter a2, AutomatonState* next, std::vector<BalancedPair>* emitted) {
  const int d = sigma.alphabet().size();
  Word nu = s.rem_u, nv = s.rem_v;
  const Word& i1 = sigma.image(a1);
  const Word& i2 = sigma.image(a2);
  nu.insert(nu.end(), i1.begin(), i1.end());
  nv.insert(nv.end(), i2.begin(), i2.end());
  next->discrepancy = s.discrepancy;
  next->discrepancy[static_cast<std::size_t>(a1)] += 1;
  next->discrepancy[static_cast<std::size_t>(a2)] -= 1;
  emitted->clear();
  std::vector<long long> diff(static_cast<std::size_t>(d), 0);
  std::size_t start = 0;
  const std::size_t lim = std::min(nu.size(), nv.size());
  for (std::size_t i = 0; i < lim; ++i) {
    ++diff[static_cast<std::size_t>(nu[i])];
    --diff[static_cast<std::size_t>(nv[i])];
    if (std::all_of(diff.begin(), diff.end(),
                    [](long long x) { return x == 0; })) {
      emitted->emplace_back(Word(nu.begin() + static_cast<long>(start),
                                 nu.begin() + static_cast<long>(i) + 1),
                            Word(nv.begin() + static_cast<long>(start),
                                 nv.begin() + static_cast<long>(i) + 1));
      start = i + 1;
    }
  }
  next->rem_u.assign(nu.begin() + static_cast<long>(start), nu.end());
  next->rem_v.assign(nv.begin() + static_cast<long>(start), nv.end());
}

long long norm1(const std::vector<long long>& v) {
  long long n = 0;
  for (long long x : v) n += x < 0 ? -x : x;
  return n;
}

}  // namespace

ReductionGraph build_reduction_graph(const Substitution& sigma,
                                     int max_discrepancy, int max_states) {
  const int d = sigma.alphabet().size();
  ReductionGraph g;
  g.max_discrepancy = max_discrepancy;
  FactorCache lang(sigma);

  std::map<AutomatonState, int> index;
  AutomatonState start;
  start.discrepancy.assign(static_cast<std::size_t>(d), 0);
  index.emplace(start, 0);
  g.states.push_back(start);
  g.out.emplace_back();

  std::vector<int> frontier{0};
  while (!frontier.empty() && !g.overflow) {
    std::vector<int> next_frontier;
    for (int sid : frontier) {
      for (Letter a1 = 0; a1 < d && !g.overflow; ++a1)
        for (Letter a2 = 0; a2 < d && !g.overflow; ++a2) {
          AutomatonState cur = g.states[static_cast<std::size_t>(sid)];
          AutomatonState nxt;
          ReductionTransition t;
          t.a1 = a1;
          t.a2 = a2;
          step(sigma, cur, a1, a2, &nxt, &t.emitted);
          if (norm1(nxt.discrepancy) > 2LL * max_discrepancy) continue;
          // The remainders are suffixes of image words; keeping them inside
          // the factor language prunes inputs the language cannot spell.
          Word wu = cur.rem_u;
          const Word& i1 = sigma.image(a1);
          wu.insert(wu.end(), i1.begin(), i1.end());
          Word wv = cur.rem_v;
          const Word& i2 = sigma.image(a2);
          wv.insert(wv.end(), i2.begin(), i2.end());
          if (!lang.allowed(wu) || !lang.allowed(wv)) continue;
          auto it = index.find(nxt);
          int nid;
          if (it != index.end()) {
            nid = it->second;
          } else {
            nid = static_cast<int>(g.states.size());
            if (nid >= max_states) {
              g.overflow = true;
              break;
            }
            index.emplace(nxt, nid);
            g.states.push_back(nxt);
            g.out.emplace_back();
            next_frontier.push_back(nid);
          }
          t.target = nid;
          g.out[static_cast<std::size_t>(sid)].push_back(std::move(t));
        }
    }
    frontier = std::move(next_frontier);
  }

  // A factor really occurs in the reduction of a balanced input pair exactly
  // when its transition can continue back to the start state (discrepancy
  // zero, nothing left over).
  const int n = static_cast<int>(g.states.size());
  std::vector<std::vector<int>> rin(static_cast<std::size_t>(n));
  for (int s = 0; s < n; ++s)
    for (const auto& t : g.out[static_cast<std::size_t>(s)])
      rin[static_cast<std::size_t>(t.target)].push_back(s);
  g.can_return.assign(static_cast<std::size_t>(n), 0);
  std::vector<int> stack{0};
  g.can_return[0] = 1;
  while (!stack.empty()) {
    int x = stack.back();
    stack.pop_back();
    for (int y : rin[static_cast<std::size_t>(x)])
      if (!g.can_return[static_cast<std::size_t>(y)]) {
        g.can_return[static_cast<std::size_t>(y)] = 1;
        stack.push_back(y);
      }
  }
  for (int s = 0; s < n; ++s)
    for (const auto& t : g.out[static_cast<std::size_t>(s)])
      if (g.can_return[static_cast<std::size_t>(t.target)])
        for (const auto& p : t.emitted) g.emitted.insert(p);
  return g;
}

UniverseResult verify_universe(const Substitution& sigma,
                               const std::vector<BalancedPair>& candidates,
                               int max_discrepancy, int max_states) {
  UniverseResult r;
  r.graph = build_reduction_graph(sigma, max_discrepancy, max_states);
  if (r.graph.overflow) {
    r.kind = UniverseVerdict::Unknown;
    return r;
  }
  std::set<BalancedPair> cand(candidates.begin(), candidates.end());
  for (const auto& p : r.graph.emitted)
    if (!cand.count(p)) {
      r.kind = UniverseVerdict::Counterexample;
      r.counterexample = p;
      return r;
    }
  r.kind = UniverseVerdict::Verified;
  return r;
}

int discrepancy_bound(const ReductionGraph& graph) {
  long long best = 0;
  for (std::size_t i = 0; i < graph.states.size(); ++i)
    if (graph.can_return.empty() || graph.can_return[i])
      best = std::max(best, norm1(graph.states[i].discrepancy));
  return static_cast<int>(best / 2);
}

ReductionTrace reduce_pair(const Substitution& sigma, const Word& u,
                           const Word& v) {
  const int d = sigma.alphabet().size();
  if (!is_balanced(u, v, d)) throw std::domain_error("pair is not balanced");
  ReductionTrace tr;
  AutomatonState s;
  s.discrepancy.assign(static_cast<std::size_t>(d), 0);
  tr.visited.push_back(s);
  for (std::size_t i = 0; i < u.size(); ++i) {
    AutomatonState nxt;
    std::vector<BalancedPair> em;
    step(sigma, s, u[i], v[i], &nxt, &em);
    tr.emitted.insert(tr.emitted.end(), em.begin(), em.end());
    s = std::move(nxt);
    tr.visited.push_back(s);
  }
  return tr;
}

std::string to_dot(const ReductionGraph& graph, const Alphabet& a) {
  std::ostringstream os;
  os << "digraph reduction {\n";
  for (std::size_t i = 0; i < graph.states.size(); ++i) {
    const auto& s = graph.states[i];
    os << "  s" << i << " [label=\"disc=";
    for (std::size_t k = 0; k < s.discrepancy.size(); ++k)
      os << (k ? "," : "") << s.discrepancy[k];
    os << ";rem=" << a.spell(s.rem_u) << "|" << a.spell(s.rem_v) << "\"];\n";
  }
  for (std::size_t i = 0; i < graph.out.size(); ++i)
    for (const auto& t : graph.out[i]) {
      os << "  s" << i << " -> s" << t.target << " [label=\"" << a.name(t.a1)
         << "/" << a.name(t.a2);
      for (const auto& p : t.emitted)
        if (!p.trivial()) os << " " << pair_str(a, p);
      os << "\"];\n";
    }
  os << "}\n";
  return os.str();
}

}  // namespace tilinv
