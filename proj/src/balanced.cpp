#include "tilinv/balanced.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

#include <algorithm>
#include <map>
#include <stdexcept>

#include "tilinv/matrix.hpp"
#include "tilinv/spectra.hpp"

namespace tilinv {

BalancedPair canonical(const BalancedPair& p, bool* was_dual) {
  if (p.v < p.u) {
    if (was_dual) *was_dual = true;
    return p.dual();
  }
  if (was_dual) *was_dual = false;
  return p;
}

std::string pair_str(const Alphabet& a, const BalancedPair& p) {
  return "(" + a.spell(p.u) + "/" + a.spell(p.v) + ")";
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Yes: return "Yes";
    case Verdict::No: return "No";
    case Verdict::Unknown: return "Unknown";
  }
  return "?";
}

bool is_balanced(const Word& u, const Word& v, int d) {
  if (u.empty() || v.empty()) return false;
  return abelianization(u, d) == abelianization(v, d);
}

namespace {

IntMatrix eventual_projector(const Substitution& sigma) {
  IntMatrix a = IntMatrix::from_counts(sigma.abelianization_counts());
  return a.pow(a.dim());
}

bool null_after(const IntMatrix& ad, const std::vector<long long>& diff) {
  std::vector<BigInt> v(diff.begin(), diff.end());
  for (const BigInt& x : ad.apply(v))
    if (x != 0) return false;
  return true;
}

}  // namespace

bool is_geometrically_balanced(const Substitution& sigma, const Word& u,
                               const Word& v) {
  if (u.empty() || v.empty()) return false;
  const int d = sigma.alphabet().size();
  std::vector<long long> du = abelianization(u, d), dv = abelianization(v, d);
  for (int i = 0; i < d; ++i) du[static_cast<std::size_t>(i)] -= dv[static_cast<std::size_t>(i)];
  return null_after(eventual_projector(sigma), du);
}

BPWord factorize(const Word& u, const Word& v, int d) {
  if (u.size() != v.size() || u.empty())
    throw std::domain_error("pair is not balanced");
  BPWord out;
  std::vector<long long> diff(static_cast<std::size_t>(d), 0);
  std::size_t start = 0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    ++diff[static_cast<std::size_t>(u[i])];
    --diff[static_cast<std::size_t>(v[i])];
    bool zero = std::all_of(diff.begin(), diff.end(),
                            [](long long x) { return x == 0; });
    if (zero) {
      out.emplace_back(Word(u.begin() + static_cast<long>(start),
                            u.begin() + static_cast<long>(i) + 1),
                       Word(v.begin() + static_cast<long>(start),
                            v.begin() + static_cast<long>(i) + 1));
      start = i + 1;
    }
  }
  if (start != u.size()) throw std::domain_error("pair is not balanced");
  return out;
}

BPWord factorize_geometric(const Substitution& sigma, const Word& u,
                           const Word& v) {
  const int d = sigma.alphabet().size();
  IntMatrix ad = eventual_projector(sigma);
  BPWord out;
  std::size_t iu = 0, iv = 0;
  while (iu < u.size() || iv < v.size()) {
    std::size_t best_i = 0, best_j = 0;
    bool found = false;
    const std::size_t ru = u.size() - iu, rv = v.size() - iv;
    for (std::size_t total = 2; total <= ru + rv && !found; ++total)
      for (std::size_t i = 1; i <= std::min(total - 1, ru) && !found; ++i) {
        const std::size_t j = total - i;
        if (j > rv) continue;
        std::vector<long long> diff(static_cast<std::size_t>(d), 0);
        for (std::size_t k = 0; k < i; ++k) ++diff[static_cast<std::size_t>(u[iu + k])];
        for (std::size_t k = 0; k < j; ++k) --diff[static_cast<std::size_t>(v[iv + k])];
        if (null_after(ad, diff)) {
          best_i = i;
          best_j = j;
          found = true;
        }
      }
    if (!found) throw std::domain_error("pair is not geometrically balanced");
    out.emplace_back(Word(u.begin() + static_cast<long>(iu),
                          u.begin() + static_cast<long>(iu + best_i)),
                     Word(v.begin() + static_cast<long>(iv),
                          v.begin() + static_cast<long>(iv + best_j)));
    iu += best_i;
    iv += best_j;
  }
  return out;
}

BPWord subst_bp(const Substitution& sigma, const BalancedPair& p) {
  return factorize(sigma.apply(p.u), sigma.apply(p.v),
                   sigma.alphabet().size());
}

int FactorGraph::find(const BalancedPair& p) const {
  BalancedPair c = canonical(p);
  for (std::size_t i = 0; i < vertices.size(); ++i)
    if (vertices[i] == c) return static_cast<int>(i);
  return -1;
}

FactorGraph closure(const Substitution& sigma,
                    const std::vector<BalancedPair>& seeds, int max_pairs,
                    bool parallel) {
  const int d = sigma.alphabet().size();
  FactorGraph g;
  std::map<BalancedPair, int> index;
  auto add = [&](const BalancedPair& p) {
    BalancedPair c = canonical(p);
    auto it = index.find(c);
    if (it != index.end()) return it->second;
    int id = static_cast<int>(g.vertices.size());
    index.emplace(c, id);
    g.vertices.push_back(c);
    g.out.emplace_back();
    g.trivial.push_back(c.trivial());
    return id;
  };

  std::vector<int> frontier;
  for (const auto& s : seeds)
    for (const auto& f : factorize(s.u, s.v, d)) {
      std::size_t before = g.vertices.size();
      int id = add(f);
      if (g.vertices.size() > before) frontier.push_back(id);
    }

  while (!frontier.empty() && !g.overflow) {
    std::vector<BPWord> images(frontier.size());
    const int n = static_cast<int>(frontier.size());
    if (parallel) {
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
      for (int k = 0; k < n; ++k)
        images[static_cast<std::size_t>(k)] =
            subst_bp(sigma, g.vertices[static_cast<std::size_t>(
                                frontier[static_cast<std::size_t>(k)])]);
    } else {
      for (int k = 0; k < n; ++k)
        images[static_cast<std::size_t>(k)] =
            subst_bp(sigma, g.vertices[static_cast<std::size_t>(
                                frontier[static_cast<std::size_t>(k)])]);
    }
    std::vector<int> next;
    for (int k = 0; k < n && !g.overflow; ++k) {
      int y = frontier[static_cast<std::size_t>(k)];
      for (const auto& f : images[static_cast<std::size_t>(k)]) {
        std::size_t before = g.vertices.size();
        int x = add(f);
        if (g.vertices.size() > before) next.push_back(x);
        auto& o = g.out[static_cast<std::size_t>(y)];
        if (std::find(o.begin(), o.end(), x) == o.end()) o.push_back(x);
        if (static_cast<int>(g.vertices.size()) > max_pairs) {
          g.overflow = true;
          break;
        }
      }
    }
    frontier = std::move(next);
  }
  return g;
}

TerminationResult terminates_with_coincidence(const Substitution& sigma,
                                              const BalancedPair& p,
                                              int max_pairs, bool parallel) {
  TerminationResult r;
  r.graph = closure(sigma, {p}, max_pairs, parallel);
  if (r.graph.overflow) {
    r.verdict = Verdict::Unknown;
    return r;
  }
  const int n = static_cast<int>(r.graph.vertices.size());
  // Reverse reachability from the trivial vertices.
  std::vector<std::vector<int>> rin(static_cast<std::size_t>(n));
  for (int y = 0; y < n; ++y)
    for (int x : r.graph.out[static_cast<std::size_t>(y)])
      rin[static_cast<std::size_t>(x)].push_back(y);
  std::vector<char> reaches(static_cast<std::size_t>(n), 0);
  std::vector<int> stack;
  for (int i = 0; i < n; ++i)
    if (r.graph.trivial[static_cast<std::size_t>(i)]) {
      reaches[static_cast<std::size_t>(i)] = 1;
      stack.push_back(i);
    }
  while (!stack.empty()) {
    int x = stack.back();
    stack.pop_back();
    for (int y : rin[static_cast<std::size_t>(x)])
      if (!reaches[static_cast<std::size_t>(y)]) {
        reaches[static_cast<std::size_t>(y)] = 1;
        stack.push_back(y);
      }
  }
  bool all = true;
  for (int i = 0; i < n; ++i)
    if (!reaches[static_cast<std::size_t>(i)]) {
      all = false;
      r.pairs.push_back(r.graph.vertices[static_cast<std::size_t>(i)]);
    }
  if (all) {
    r.verdict = Verdict::Yes;
    r.pairs = r.graph.vertices;
  } else {
    r.verdict = Verdict::No;
  }
  return r;
}

GccResult gcc_check(const Substitution& sigma, int max_pairs, bool parallel) {
  GccResult r;
  IntMatrix a = IntMatrix::from_counts(sigma.abelianization_counts());
  // The spectral side is advisory here; the decision below is purely the
  // balanced-pair criterion.
  try {
    r.strong_pisot_checked = pisot_class(a, 1e-9) == PisotClass::StrongPisot;
  } catch (const std::exception&) {
    r.strong_pisot_checked = false;
  }
  std::set<Word> two = allowed_words(sigma, 2);
  const int d = sigma.alphabet().size();
  bool any_unknown = false;
  bool any_candidate = false;
  for (Letter x = 0; x < d; ++x)
    for (Letter y = x + 1; y < d; ++y) {
      if (!two.count(Word{x, y}) || !two.count(Word{y, x})) continue;
      any_candidate = true;
      TerminationResult t = terminates_with_coincidence(
          sigma, BalancedPair(Word{x, y}, Word{y, x}), max_pairs, parallel);
      if (t.verdict == Verdict::Yes) {
        r.verdict = Verdict::Yes;
        r.a = x;
        r.b = y;
        return r;
      }
      if (t.verdict == Verdict::Unknown) any_unknown = true;
    }
  if (!any_candidate)
    throw std::domain_error(
        "no letter exchange pair (ab/ba) has both orders allowed");
  r.verdict = any_unknown ? Verdict::Unknown : Verdict::No;
  if (!r.strong_pisot_checked)
    r.note = "balanced-pair criterion only; spectral hypotheses unverified";
  return r;
}

}  // namespace tilinv
