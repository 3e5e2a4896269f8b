#include "tilinv/essential.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "tilinv/spectra.hpp"

namespace tilinv {

namespace {

bool is_irreducible(const Word& u, const Word& v, int d) {
  std::vector<long long> diff(static_cast<std::size_t>(d), 0);
  for (std::size_t i = 0; i + 1 < u.size(); ++i) {
    ++diff[static_cast<std::size_t>(u[i])];
    --diff[static_cast<std::size_t>(v[i])];
    if (std::all_of(diff.begin(), diff.end(),
                    [](long long x) { return x == 0; }))
      return false;
  }
  return true;
}

// Trivial pairs first (by letter), then by (length, upper, lower).
bool letter_order(const BalancedPair& x, const BalancedPair& y) {
  const bool tx = x.trivial() && x.u.size() == 1;
  const bool ty = y.trivial() && y.u.size() == 1;
  if (tx != ty) return tx;
  if (x.u.size() != y.u.size()) return x.u.size() < y.u.size();
  if (x.u != y.u) return x.u < y.u;
  return x.v < y.v;
}

}  // namespace

std::vector<BalancedPair> enumerate_irreducible_pairs(const Substitution& sigma,
                                                      int max_len,
                                                      std::size_t cap) {
  const int d = sigma.alphabet().size();
  std::set<Word> words = allowed_words(sigma, max_len);
  std::map<std::vector<long long>, std::vector<const Word*>> by_abel;
  for (const Word& w : words)
    by_abel[abelianization(w, d)].push_back(&w);
  std::vector<BalancedPair> out;
  for (Letter a = 0; a < d; ++a)
    if (words.count(Word{a})) out.emplace_back(Word{a}, Word{a});
  for (const auto& [vec, group] : by_abel)
    for (const Word* u : group)
      for (const Word* v : group) {
        if (*u == *v) continue;
        if (!is_irreducible(*u, *v, d)) continue;
        out.emplace_back(*u, *v);
        if (out.size() > cap)
          throw std::length_error("irreducible pair universe overflow");
      }
  std::sort(out.begin(), out.end(), letter_order);
  return out;
}

bool EssentialSet::contains(const BalancedPair& p) const {
  return std::find(pairs.begin(), pairs.end(), p) != pairs.end();
}

std::vector<BalancedPair> EssentialSet::nontrivial() const {
  std::vector<BalancedPair> out;
  for (const auto& p : pairs)
    if (!p.trivial()) out.push_back(p);
  return out;
}

EssentialSet essential_set(const Substitution& sigma, int max_len,
                           int max_iter) {
  EssentialSet e;
  int len = max_len;
  for (int attempt = 0; attempt < 4; ++attempt) {
    std::vector<BalancedPair> universe;
    try {
      universe = enumerate_irreducible_pairs(sigma, len);
    } catch (const std::length_error&) {
      e.overflow = true;
      e.max_len_used = len;
      return e;
    }
    std::map<BalancedPair, int> index;
    for (std::size_t i = 0; i < universe.size(); ++i)
      index.emplace(universe[i], static_cast<int>(i));
    const int n = static_cast<int>(universe.size());
    std::vector<BPWord> images(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
      images[static_cast<std::size_t>(i)] =
          subst_bp(sigma, universe[static_cast<std::size_t>(i)]);
    std::vector<char> alive(static_cast<std::size_t>(n), 1);
    bool changed = true;
    for (int it = 0; it < max_iter && changed; ++it) {
      changed = false;
      std::vector<char> covered(static_cast<std::size_t>(n), 0);
      for (int y = 0; y < n; ++y) {
        if (!alive[static_cast<std::size_t>(y)]) continue;
        for (const auto& f : images[static_cast<std::size_t>(y)]) {
          auto jt = index.find(f);
          if (jt != index.end()) covered[static_cast<std::size_t>(jt->second)] = 1;
        }
      }
      for (int x = 0; x < n; ++x)
        if (alive[static_cast<std::size_t>(x)] &&
            !covered[static_cast<std::size_t>(x)]) {
          alive[static_cast<std::size_t>(x)] = 0;
          changed = true;
        }
    }
    e.pairs.clear();
    for (int i = 0; i < n; ++i)
      if (alive[static_cast<std::size_t>(i)])
        e.pairs.push_back(universe[static_cast<std::size_t>(i)]);
    e.max_len_used = len;
    // Certificates. Forward closure can only fail when an image factor is
    // longer than the universe allows; retry wider.
    e.forward_closed = true;
    bool too_short = false;
    for (const auto& p : e.pairs)
      for (const auto& f : subst_bp(sigma, p))
        if (!e.contains(f)) {
          e.forward_closed = false;
          if (static_cast<int>(f.u.size()) > len) too_short = true;
        }
    e.backward_covered = true;
    for (const auto& x : e.pairs) {
      bool cov = false;
      for (const auto& y : e.pairs) {
        for (const auto& f : subst_bp(sigma, y))
          if (f == x) {
            cov = true;
            break;
          }
        if (cov) break;
      }
      if (!cov) {
        e.backward_covered = false;
        break;
      }
    }
    if (e.forward_closed || !too_short) return e;
    len *= 2;
  }
  return e;
}

namespace {

std::string derived_name(int k, bool dual) {
  if (k < 26) return std::string(1, static_cast<char>((dual ? 'A' : 'a') + k));
  return (dual ? "X" : "x") + std::to_string(k);
}

DerivedSubstitution assemble(const Substitution& sigma,
                             const std::vector<BalancedPair>& letters) {
  const int d = sigma.alphabet().size();
  DerivedSubstitution ds;
  ds.letter_pairs = letters;
  ds.trivial_count = 0;
  for (const auto& p : letters)
    if (p.trivial()) ++ds.trivial_count;

  Alphabet al;
  int nt = 0;
  std::map<BalancedPair, int> seen;  // canonical -> plain index for naming
  for (const auto& p : letters) {
    if (p.trivial()) {
      al.add(sigma.alphabet().name(p.u.front()));
      continue;
    }
    BalancedPair c = canonical(p);
    auto it = seen.find(c);
    if (it == seen.end()) {
      al.add(derived_name(nt, p.u != c.u));
      seen.emplace(c, nt);
      ++nt;
    } else {
      al.add(derived_name(it->second, p.u != c.u));
    }
  }

  std::vector<Word> rules;
  for (const auto& p : letters) {
    Word img;
    for (const auto& f : subst_bp(sigma, p)) {
      int id = -1;
      for (std::size_t k = 0; k < letters.size(); ++k)
        if (letters[k] == f) {
          id = static_cast<int>(k);
          break;
        }
      if (id < 0)
        throw ClosureViolation("image factor outside the derived alphabet", f);
      img.push_back(id);
    }
    rules.push_back(std::move(img));
  }
  ds.base = Substitution(al, rules, sigma.name().empty()
                                        ? ""
                                        : sigma.name() + "-derived");

  const int n = static_cast<int>(letters.size());
  const int t = ds.trivial_count;
  IntMatrix full = IntMatrix::from_counts(ds.base.abelianization_counts());
  ds.block_a = IntMatrix(t);
  ds.block_b = IntMatrix(0);
  ds.block_c = IntMatrix(n - t);
  for (int i = 0; i < t; ++i)
    for (int j = 0; j < t; ++j) ds.block_a(i, j) = full(i, j);
  // block_b is t x (n-t); IntMatrix is square, so keep it in a square of
  // size max(t, n-t) padded with zeros.
  {
    const int m = std::max(t, n - t);
    ds.block_b = IntMatrix(m);
    for (int i = 0; i < t; ++i)
      for (int j = 0; j < n - t; ++j) ds.block_b(i, j) = full(i, t + j);
  }
  for (int i = 0; i < n - t; ++i)
    for (int j = 0; j < n - t; ++j) ds.block_c(i, j) = full(t + i, t + j);
  // Lower-left block must vanish: trivial images contain no nontrivial
  // letter.
  for (int i = 0; i < n - t; ++i)
    for (int j = 0; j < t; ++j)
      if (full(t + i, j) != 0)
        throw std::logic_error("derived abelianization is not block triangular");

  IntMatrix a_sigma = IntMatrix::from_counts(sigma.abelianization_counts());
  if (!(ds.block_a == a_sigma))
    throw std::logic_error("trivial block differs from source abelianization");

  auto spectral_radius = [](const IntMatrix& m) {
    if (m.dim() == 0) return 0.0;
    double r = 0.0;
    for (const auto& z : poly_roots(char_poly(m)))
      r = std::max(r, std::abs(z));
    return r;
  };
  ds.lambda = spectral_radius(ds.block_a);
  ds.beta = spectral_radius(ds.block_c);
  return ds;
}

}  // namespace

int DerivedSubstitution::letter_of(const BalancedPair& p) const {
  for (std::size_t k = 0; k < letter_pairs.size(); ++k)
    if (letter_pairs[k] == p) return static_cast<int>(k);
  return -1;
}

DerivedSubstitution build_phi_EBP(const Substitution& sigma,
                                  const EssentialSet& e) {
  std::vector<BalancedPair> letters = e.pairs;
  std::sort(letters.begin(), letters.end(), letter_order);
  return assemble(sigma, letters);
}

DerivedSubstitution build_phi_ABP(const Substitution& sigma,
                                  const AsymptoticStructure& asym, int depth,
                                  std::vector<int>* nontrivial_out) {
  const int d = sigma.alphabet().size();
  // Bubbles: walk each group's aligned words from the divergence boundary
  // toward the non-shared side, cutting at prefix balance points.
  std::set<BalancedPair> collected;
  std::vector<TwoSidedWord> words;
  for (const auto& p : asym.points)
    words.push_back(expand_periodic(sigma, p, 4 * depth));

  auto scan_pair = [&](const std::vector<Letter>& s1,
                       const std::vector<Letter>& s2, bool reversed) {
    std::vector<long long> diff(static_cast<std::size_t>(d), 0);
    std::size_t start = 0;
    const std::size_t lim =
        std::min({s1.size(), s2.size(), static_cast<std::size_t>(depth)});
    bool any = false;
    for (std::size_t i = 0; i < lim; ++i) {
      ++diff[static_cast<std::size_t>(s1[i])];
      --diff[static_cast<std::size_t>(s2[i])];
      if (std::all_of(diff.begin(), diff.end(),
                      [](long long x) { return x == 0; })) {
        Word u(s1.begin() + static_cast<long>(start),
               s1.begin() + static_cast<long>(i) + 1);
        Word v(s2.begin() + static_cast<long>(start),
               s2.begin() + static_cast<long>(i) + 1);
        if (reversed) {
          std::reverse(u.begin(), u.end());
          std::reverse(v.begin(), v.end());
        }
        if (u != v) collected.insert(BalancedPair(u, v));
        start = i + 1;
        any = true;
      }
    }
    if (!any)
      throw std::runtime_error(
          "no balance point on the divergence side within depth; "
          "coincidence condition suspect");
  };

  // The walk starts at the divergence boundary on the shared side (the last
  // disagreement is part of the first bubble) and proceeds through the
  // non-shared side.
  auto boundary_seq = [](const TwoSidedWord& w, long div, bool forward) {
    std::vector<Letter> seq;
    if (forward) {
      // Shared right rays: consume right[div-1 .. 0], then the left ray.
      for (long t = std::min<long>(div, static_cast<long>(w.right.size()));
           t-- > 0;)
        seq.push_back(w.right[static_cast<std::size_t>(t)]);
      seq.insert(seq.end(), w.left.begin(), w.left.end());
    } else {
      for (long t = std::min<long>(div, static_cast<long>(w.left.size()));
           t-- > 0;)
        seq.push_back(w.left[static_cast<std::size_t>(t)]);
      seq.insert(seq.end(), w.right.begin(), w.right.end());
    }
    return seq;
  };
  auto handle_groups = [&](const std::vector<AsymptoticGroup>& groups,
                           bool forward) {
    for (const auto& g : groups)
      for (std::size_t k = 1; k < g.members.size(); ++k) {
        const TwoSidedWord& wi = words[static_cast<std::size_t>(g.members[0])];
        const TwoSidedWord& wj = words[static_cast<std::size_t>(g.members[k])];
        scan_pair(boundary_seq(wi, g.divs[k], forward),
                  boundary_seq(wj, g.divs[k] + g.shifts[k], forward),
                  /*reversed=*/forward);
      }
  };
  handle_groups(asym.forward_groups, true);
  handle_groups(asym.backward_groups, false);

  // Close under image factorization.
  std::vector<BalancedPair> seeds(collected.begin(), collected.end());
  std::set<BalancedPair> abp;
  if (!seeds.empty()) {
    FactorGraph g = closure(sigma, seeds, 100000);
    if (g.overflow) throw std::runtime_error("bubble closure overflow");
    for (const auto& v : g.vertices)
      if (!v.trivial()) {
        abp.insert(v);
        abp.insert(v.dual());
      }
    for (const auto& p : seeds) {
      abp.insert(p);
      abp.insert(p.dual());
    }
  }

  std::vector<BalancedPair> letters;
  for (Letter a = 0; a < d; ++a) letters.emplace_back(Word{a}, Word{a});
  std::vector<BalancedPair> nt(abp.begin(), abp.end());
  std::sort(nt.begin(), nt.end(), letter_order);
  letters.insert(letters.end(), nt.begin(), nt.end());
  DerivedSubstitution ds = assemble(sigma, letters);
  if (nontrivial_out) {
    nontrivial_out->clear();
    for (std::size_t i = 0; i < letters.size(); ++i)
      if (!letters[i].trivial()) nontrivial_out->push_back(static_cast<int>(i));
  }
  return ds;
}

namespace {

Substitution forget_trivial(const DerivedSubstitution& ds) {
  const int n = static_cast<int>(ds.letter_pairs.size());
  std::vector<int> remap(static_cast<std::size_t>(n), -1);
  Alphabet al;
  for (int i = 0; i < n; ++i)
    if (!ds.letter_pairs[static_cast<std::size_t>(i)].trivial()) {
      remap[static_cast<std::size_t>(i)] =
          al.add(ds.base.alphabet().name(i));
    }
  if (al.size() == 0)
    throw std::domain_error("no nontrivial letters to retain");
  std::vector<Word> rules;
  for (int i = 0; i < n; ++i) {
    if (remap[static_cast<std::size_t>(i)] < 0) continue;
    Word img;
    for (Letter x : ds.base.image(i))
      if (remap[static_cast<std::size_t>(x)] >= 0)
        img.push_back(remap[static_cast<std::size_t>(x)]);
    if (img.empty())
      throw std::domain_error("nontrivial letter image collapses to nothing");
    rules.push_back(std::move(img));
  }
  return Substitution(al, rules);
}

}  // namespace

Substitution build_phi_A(const DerivedSubstitution& abp) {
  return forget_trivial(abp);
}

Substitution build_phi_P(const DerivedSubstitution& ebp) {
  return forget_trivial(ebp);
}

}  // namespace tilinv
