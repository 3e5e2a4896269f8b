#include "tilinv/periodic.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <stdexcept>

namespace tilinv {

namespace {

// Eventual range of a letter-to-letter map and the least power that is the
// identity on it.
void eventual_range(const std::vector<Letter>& f, std::vector<Letter>* range,
                    int* period) {
  const int d = static_cast<int>(f.size());
  std::vector<char> in_range(static_cast<std::size_t>(d), 0);
  for (int a = 0; a < d; ++a) {
    Letter x = a;
    for (int k = 0; k < d; ++k) x = f[static_cast<std::size_t>(x)];
    in_range[static_cast<std::size_t>(x)] = 1;
  }
  range->clear();
  for (int a = 0; a < d; ++a)
    if (in_range[static_cast<std::size_t>(a)]) range->push_back(a);
  // f permutes its eventual range; the period is the lcm of cycle lengths.
  long long m = 1;
  std::vector<char> seen(static_cast<std::size_t>(d), 0);
  for (Letter a : *range) {
    if (seen[static_cast<std::size_t>(a)]) continue;
    int len = 0;
    Letter x = a;
    do {
      seen[static_cast<std::size_t>(x)] = 1;
      x = f[static_cast<std::size_t>(x)];
      ++len;
    } while (x != a);
    m = std::lcm(m, static_cast<long long>(len));
  }
  *period = static_cast<int>(m);
}

int resolve_power(const Substitution& sigma, int m) {
  if (m > 0) return m;
  BoundaryMaps bm = boundary_maps(sigma);
  return static_cast<int>(
      std::lcm(static_cast<long long>(bm.m_plus), static_cast<long long>(bm.m_minus)));
}

Word iterate_word(const Substitution& sigma, int m, const Word& w) {
  Word r = w;
  for (int i = 0; i < m; ++i) r = sigma.apply(r);
  return r;
}

}  // namespace

BoundaryMaps boundary_maps(const Substitution& sigma) {
  const int d = sigma.alphabet().size();
  BoundaryMaps bm;
  bm.phi_plus.resize(static_cast<std::size_t>(d));
  bm.phi_minus.resize(static_cast<std::size_t>(d));
  for (int a = 0; a < d; ++a) {
    bm.phi_plus[static_cast<std::size_t>(a)] = sigma.first_letter(a);
    bm.phi_minus[static_cast<std::size_t>(a)] = sigma.last_letter(a);
  }
  eventual_range(bm.phi_plus, &bm.s_plus, &bm.m_plus);
  eventual_range(bm.phi_minus, &bm.s_minus, &bm.m_minus);
  return bm;
}

PairTable pair_table(const Substitution& sigma, int m) {
  BoundaryMaps bm = boundary_maps(sigma);
  PairTable t;
  t.power = m > 0 ? m : static_cast<int>(std::lcm(
                            static_cast<long long>(bm.m_plus),
                            static_cast<long long>(bm.m_minus)));
  std::set<Word> two = allowed_words(sigma, 2);
  for (Letter a : bm.s_minus)
    for (Letter b : bm.s_plus)
      if (two.count(Word{a, b})) t.pairs.emplace_back(a, b);
  return t;
}

CycleVerdict no_cycle_check(const PairTable& table) {
  CycleVerdict v;
  // Bipartite graph: node per distinct left letter and per distinct right
  // letter, one edge per pair.
  std::vector<Letter> lefts, rights;
  for (auto [a, b] : table.pairs) {
    lefts.push_back(a);
    rights.push_back(b);
  }
  std::sort(lefts.begin(), lefts.end());
  lefts.erase(std::unique(lefts.begin(), lefts.end()), lefts.end());
  std::sort(rights.begin(), rights.end());
  rights.erase(std::unique(rights.begin(), rights.end()), rights.end());
  auto lid = [&](Letter a) {
    return static_cast<int>(std::lower_bound(lefts.begin(), lefts.end(), a) -
                            lefts.begin());
  };
  auto rid = [&](Letter b) {
    return static_cast<int>(lefts.size()) +
           static_cast<int>(std::lower_bound(rights.begin(), rights.end(), b) -
                            rights.begin());
  };
  const int n = static_cast<int>(lefts.size() + rights.size());
  std::vector<std::vector<std::pair<int, int>>> adj(
      static_cast<std::size_t>(n));  // (neighbor, edge id)
  for (std::size_t e = 0; e < table.pairs.size(); ++e) {
    int u = lid(table.pairs[e].first);
    int w = rid(table.pairs[e].second);
    adj[static_cast<std::size_t>(u)].emplace_back(w, static_cast<int>(e));
    adj[static_cast<std::size_t>(w)].emplace_back(u, static_cast<int>(e));
  }
  std::vector<int> parent(static_cast<std::size_t>(n), -1);
  std::vector<int> parent_edge(static_cast<std::size_t>(n), -1);
  std::vector<char> visited(static_cast<std::size_t>(n), 0);
  for (int s = 0; s < n && v.no_cycles; ++s) {
    if (visited[static_cast<std::size_t>(s)]) continue;
    std::vector<int> stack{s};
    visited[static_cast<std::size_t>(s)] = 1;
    while (!stack.empty() && v.no_cycles) {
      int u = stack.back();
      stack.pop_back();
      for (auto [w, e] : adj[static_cast<std::size_t>(u)]) {
        if (e == parent_edge[static_cast<std::size_t>(u)]) continue;
        if (!visited[static_cast<std::size_t>(w)]) {
          visited[static_cast<std::size_t>(w)] = 1;
          parent[static_cast<std::size_t>(w)] = u;
          parent_edge[static_cast<std::size_t>(w)] = e;
          stack.push_back(w);
        } else {
          // Back edge: walk both endpoints up to their common ancestor.
          v.no_cycles = false;
          std::vector<int> pu, pw;
          for (int x = u; x != -1; x = parent[static_cast<std::size_t>(x)])
            pu.push_back(x);
          for (int x = w; x != -1; x = parent[static_cast<std::size_t>(x)])
            pw.push_back(x);
          std::reverse(pu.begin(), pu.end());
          std::reverse(pw.begin(), pw.end());
          std::size_t k = 0;
          while (k + 1 < pu.size() && k + 1 < pw.size() &&
                 pu[k + 1] == pw[k + 1])
            ++k;
          std::vector<int> cycle;  // closed node walk u .. lca .. w, u
          for (std::size_t i = pu.size(); i-- > k;) cycle.push_back(pu[i]);
          for (std::size_t i = k + 1; i < pw.size(); ++i) cycle.push_back(pw[i]);
          cycle.push_back(u);
          // Consecutive nodes alternate sides; each step is a table pair.
          auto edge_pair = [&](int x, int y) {
            int l = x, r = y;
            if (l >= static_cast<int>(lefts.size())) std::swap(l, r);
            return std::make_pair(lefts[static_cast<std::size_t>(l)],
                                  rights[static_cast<std::size_t>(
                                      r - static_cast<int>(lefts.size()))]);
          };
          for (std::size_t i = 0; i + 1 < cycle.size(); ++i)
            v.witness.push_back(edge_pair(cycle[i], cycle[i + 1]));
          v.witness.push_back(v.witness.front());
          break;
        }
      }
    }
  }
  return v;
}

std::vector<std::vector<std::pair<Letter, Letter>>> equivalence_classes(
    const PairTable& table) {
  const int n = static_cast<int>(table.pairs.size());
  std::vector<int> uf(static_cast<std::size_t>(n));
  std::iota(uf.begin(), uf.end(), 0);
  std::function<int(int)> find = [&](int x) {
    while (uf[static_cast<std::size_t>(x)] != x) {
      uf[static_cast<std::size_t>(x)] =
          uf[static_cast<std::size_t>(uf[static_cast<std::size_t>(x)])];
      x = uf[static_cast<std::size_t>(x)];
    }
    return x;
  };
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (table.pairs[static_cast<std::size_t>(i)].first ==
              table.pairs[static_cast<std::size_t>(j)].first ||
          table.pairs[static_cast<std::size_t>(i)].second ==
              table.pairs[static_cast<std::size_t>(j)].second)
        uf[static_cast<std::size_t>(find(i))] = find(j);
  std::map<int, std::vector<std::pair<Letter, Letter>>> comps;
  for (int i = 0; i < n; ++i)
    comps[find(i)].push_back(table.pairs[static_cast<std::size_t>(i)]);
  std::vector<std::vector<std::pair<Letter, Letter>>> out;
  for (auto& [root, ps] : comps) {
    std::sort(ps.begin(), ps.end());
    out.push_back(std::move(ps));
  }
  return out;
}

std::vector<PeriodicPoint> periodic_points(const Substitution& sigma, int m) {
  const int mm = resolve_power(sigma, m);
  std::vector<PeriodicPoint> pts;
  PairTable t = pair_table(sigma, mm);
  for (auto [a, b] : t.pairs) {
    PeriodicPoint p;
    p.kind = PeriodicPoint::Kind::Vertex;
    p.a = a;
    p.b = b;
    p.period = mm;
    pts.push_back(p);
  }
  const int d = sigma.alphabet().size();
  for (Letter a = 0; a < d; ++a) {
    Word w = iterate_word(sigma, mm, Word{a});
    int occ = 0;
    for (std::size_t pos = 0; pos < w.size(); ++pos) {
      if (w[pos] != a) continue;
      ++occ;
      if (pos > 0 && pos + 1 < w.size()) {
        PeriodicPoint p;
        p.kind = PeriodicPoint::Kind::Interior;
        p.a = a;
        p.occurrence = occ;
        p.period = mm;
        pts.push_back(p);
      }
    }
  }
  return pts;
}

TwoSidedWord expand_periodic(const Substitution& sigma,
                             const PeriodicPoint& seed, int depth) {
  if (depth < 1) throw std::invalid_argument("depth must be >= 1");
  const int m = seed.period;
  const std::size_t cap = static_cast<std::size_t>(depth);
  auto grow = [&](Word w, const Word& left_pad, const Word& right_pad,
                  bool keep_suffix) {
    // Iterate w -> left_pad . sigma^m(w) . right_pad, keeping the relevant
    // end, until depth symbols are materialized or growth stalls.
    for (int it = 0; it < 256 && w.size() < cap; ++it) {
      std::size_t before = w.size();
      Word next = left_pad;
      Word im = iterate_word(sigma, m, w);
      next.insert(next.end(), im.begin(), im.end());
      next.insert(next.end(), right_pad.begin(), right_pad.end());
      if (next.size() > cap) {
        if (keep_suffix)
          next.erase(next.begin(),
                     next.begin() + static_cast<long>(next.size() - cap));
        else
          next.resize(cap);
      }
      w = std::move(next);
      if (w.size() == before) break;
    }
    return w;
  };

  TwoSidedWord out;
  if (seed.kind == PeriodicPoint::Kind::Vertex) {
    Word ia = iterate_word(sigma, m, Word{seed.a});
    Word ib = iterate_word(sigma, m, Word{seed.b});
    if (ia.back() != seed.a || ib.front() != seed.b)
      throw std::invalid_argument("seed is not fixed by the requested power");
    Word lw = grow(Word{seed.a}, {}, {}, /*keep_suffix=*/true);
    out.right = grow(Word{seed.b}, {}, {}, /*keep_suffix=*/false);
    out.left.assign(lw.rbegin(), lw.rend());
    return out;
  }
  Word w = iterate_word(sigma, m, Word{seed.a});
  int occ = 0;
  std::size_t pos = w.size();
  for (std::size_t i = 0; i < w.size(); ++i)
    if (w[i] == seed.a && ++occ == seed.occurrence) {
      pos = i;
      break;
    }
  if (pos >= w.size() || pos == 0 || pos + 1 == w.size())
    throw std::invalid_argument("occurrence is not interior to its image");
  Word p(w.begin(), w.begin() + static_cast<long>(pos));
  Word s(w.begin() + static_cast<long>(pos) + 1, w.end());
  // Right ray: a . s . sigma^m(s) . sigma^{2m}(s) ...
  Word tail = grow(s, s, {}, /*keep_suffix=*/false);
  out.right.clear();
  out.right.push_back(seed.a);
  out.right.insert(out.right.end(), tail.begin(), tail.end());
  if (out.right.size() > cap) out.right.resize(cap);
  // Left ray: ... sigma^{2m}(p) . sigma^m(p) . p
  Word lw = grow(p, {}, p, /*keep_suffix=*/true);
  out.left.assign(lw.rbegin(), lw.rend());
  return out;
}

namespace {

// Rays agree from a bounded divergence region near the origin out to the end
// of the materialized overlap, after a shift.
struct RayMatch {
  bool matched = false;
  long long shift = 0;
  long long div = 0;  // agreement holds from this index of the first ray on
  bool at_margin = false;
};

// Divergence point of r1[t] vs r2[t + s]: one past the last disagreement in
// the overlap, or the start of the overlap if the rays agree throughout.
void align(const std::vector<Letter>& r1, const std::vector<Letter>& r2, int s,
           long* div, long* overlap_end) {
  const long t0 = std::max<long>(0, -s);
  const long t1 = std::min<long>(static_cast<long>(r1.size()),
                                 static_cast<long>(r2.size()) - s);
  long last_bad = t0 - 1;
  for (long t = t0; t < t1; ++t)
    if (r1[static_cast<std::size_t>(t)] != r2[static_cast<std::size_t>(t + s)])
      last_bad = t;
  *div = last_bad + 1;
  *overlap_end = t1;
}

// Two-stage tail-equality test: candidate shifts from the depth-n rays, each
// certified against the rays materialized one further expansion deeper, where
// the agreement must still reach the (much longer) overlap end.
//
// For fixed points of the substitution, a genuine divergence boundary sits
// within a few tiles of the origin: the boundary coordinate is fixed by the
// expanding map x -> lambda^m x up to a bounded adjustment, so |x| stays
// below (max tile length)/(lambda^m - 1). Wide windows admit lambda-scaled
// almost-periods of the rays as false matches, so both the divergence bound
// and the shift window are kept small.
constexpr int kDivBound = 16;
constexpr int kShiftBound = 32;

RayMatch match_rays(const std::vector<Letter>& r1, const std::vector<Letter>& r2,
                    const std::vector<Letter>& d1, const std::vector<Letter>& d2,
                    int n) {
  const int w = std::min(n / 2, kDivBound);
  const int ws = std::min(n / 2, kShiftBound);
  RayMatch best;
  for (int abs_s = 0; abs_s <= ws && !best.matched; ++abs_s) {
    for (int sgn = 0; sgn < (abs_s == 0 ? 1 : 2); ++sgn) {
      const int s = sgn == 0 ? abs_s : -abs_s;
      long div = 0, end = 0;
      align(r1, r2, s, &div, &end);
      if (div > w || end - div < w) continue;
      long ddiv = 0, dend = 0;
      align(d1, d2, s, &ddiv, &dend);
      if (ddiv > w || dend - ddiv < n) continue;
      best.matched = true;
      best.shift = s;
      best.div = ddiv;
      best.at_margin = (dend - ddiv == n) || (abs_s == w);
      break;
    }
  }
  return best;
}

AsymptoticStructure asymptotic_pairs_at(const Substitution& sigma, int m,
                                        int depth) {
  AsymptoticStructure out;
  out.depth = depth;
  std::vector<PeriodicPoint> pts = periodic_points(sigma, m);
  // Certification depth: one further sigma^m expansion of a depth-N ray, with
  // a cap so huge inflation factors stay affordable.
  long growth = 1;
  {
    const int mm = pts.empty() ? resolve_power(sigma, m) : pts.front().period;
    for (Letter a = 0; a < sigma.alphabet().size(); ++a)
      growth = std::max(growth, static_cast<long>(
                                    iterate_word(sigma, mm, Word{a}).size()));
  }
  const int deep = static_cast<int>(
      std::min<long>(64L * depth, std::max<long>(4L * depth, growth * depth)));
  const int np = static_cast<int>(pts.size());
  std::vector<TwoSidedWord> words(pts.size()), deep_words(pts.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
  for (int i = 0; i < np; ++i) {
    words[static_cast<std::size_t>(i)] =
        expand_periodic(sigma, pts[static_cast<std::size_t>(i)], depth);
    deep_words[static_cast<std::size_t>(i)] =
        expand_periodic(sigma, pts[static_cast<std::size_t>(i)], deep);
  }
  // Distinct periodic points can expand to the same bi-infinite word
  // (e.g. a vertex seed that is also read off as an interior occurrence).
  std::vector<int> keep;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    bool dup = false;
    for (int j : keep) {
      const auto& a = deep_words[i];
      const auto& b = deep_words[static_cast<std::size_t>(j)];
      std::size_t ll = std::min(a.left.size(), b.left.size());
      std::size_t rl = std::min(a.right.size(), b.right.size());
      if (std::equal(a.left.begin(), a.left.begin() + static_cast<long>(ll),
                     b.left.begin()) &&
          std::equal(a.right.begin(), a.right.begin() + static_cast<long>(rl),
                     b.right.begin())) {
        dup = true;
        break;
      }
    }
    if (!dup) keep.push_back(static_cast<int>(i));
  }
  std::vector<TwoSidedWord> kw, kd;
  for (int i : keep) {
    out.points.push_back(pts[static_cast<std::size_t>(i)]);
    kw.push_back(std::move(words[static_cast<std::size_t>(i)]));
    kd.push_back(std::move(deep_words[static_cast<std::size_t>(i)]));
  }

  const int n = static_cast<int>(kw.size());
  auto group_by = [&](bool forward) {
    std::vector<int> uf(static_cast<std::size_t>(n));
    std::iota(uf.begin(), uf.end(), 0);
    std::function<int(int)> find = [&](int x) {
      while (uf[static_cast<std::size_t>(x)] != x) {
        uf[static_cast<std::size_t>(x)] =
            uf[static_cast<std::size_t>(uf[static_cast<std::size_t>(x)])];
        x = uf[static_cast<std::size_t>(x)];
      }
      return x;
    };
    std::vector<std::vector<RayMatch>> cache(
        static_cast<std::size_t>(n), std::vector<RayMatch>(static_cast<std::size_t>(n)));
    std::vector<std::pair<int, int>> todo;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) todo.emplace_back(i, j);
    const int nt = static_cast<int>(todo.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
    for (int k = 0; k < nt; ++k) {
      const auto [i, j] = todo[static_cast<std::size_t>(k)];
      const auto& a = forward ? kw[static_cast<std::size_t>(i)].right
                              : kw[static_cast<std::size_t>(i)].left;
      const auto& b = forward ? kw[static_cast<std::size_t>(j)].right
                              : kw[static_cast<std::size_t>(j)].left;
      const auto& da = forward ? kd[static_cast<std::size_t>(i)].right
                               : kd[static_cast<std::size_t>(i)].left;
      const auto& db = forward ? kd[static_cast<std::size_t>(j)].right
                               : kd[static_cast<std::size_t>(j)].left;
      cache[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
          match_rays(a, b, da, db, depth);
    }
    for (const auto& [i, j] : todo) {
      const RayMatch& rm =
          cache[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
      if (rm.matched) {
        uf[static_cast<std::size_t>(find(i))] = find(j);
        if (rm.at_margin) out.heuristic = true;
      }
    }
    std::map<int, std::vector<int>> comps;
    for (int i = 0; i < n; ++i) comps[find(i)].push_back(i);
    std::vector<AsymptoticGroup> groups;
    for (auto& [root, members] : comps) {
      if (members.size() < 2) continue;
      AsymptoticGroup g;
      g.members = members;
      g.shifts.assign(members.size(), 0);
      g.divs.assign(members.size(), 0);
      for (std::size_t k = 1; k < members.size(); ++k) {
        int i = std::min(members[0], members[k]);
        int j = std::max(members[0], members[k]);
        const RayMatch& rm = cache[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
        if (members[0] < members[k]) {
          g.shifts[k] = rm.shift;
          g.divs[k] = rm.div;
        } else {
          g.shifts[k] = -rm.shift;
          g.divs[k] = rm.div + rm.shift;
        }
      }
      groups.push_back(std::move(g));
    }
    return groups;
  };
  out.forward_groups = group_by(true);
  out.backward_groups = group_by(false);
  return out;
}

}  // namespace

AsymptoticStructure asymptotic_pairs(const Substitution& sigma, int m,
                                     int depth) {
  if (depth < 2) throw std::invalid_argument("depth must be >= 2");
  if (m > 0) return asymptotic_pairs_at(sigma, m, depth);
  // The asymptotic tilings may form a periodic orbit of the inflation map
  // rather than fixed points of its base power, so if either direction comes
  // back empty the power is doubled (twice) before settling.
  const int m0 = resolve_power(sigma, 0);
  AsymptoticStructure best = asymptotic_pairs_at(sigma, m0, depth);
  for (int k = 2;
       k <= 4 && (best.forward_groups.empty() || best.backward_groups.empty());
       k *= 2) {
    AsymptoticStructure next = asymptotic_pairs_at(sigma, m0 * k, depth);
    if (forward_member_count(next) + backward_member_count(next) >
        forward_member_count(best) + backward_member_count(best))
      best = std::move(next);
  }
  return best;
}

}  // namespace tilinv
