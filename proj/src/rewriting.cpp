#include "tilinv/rewriting.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "tilinv/matrix.hpp"
#include "tilinv/periodic.hpp"
#include "tilinv/spectra.hpp"

namespace tilinv {

namespace {

double spectral_radius(const IntMatrix& m) {
  if (m.dim() == 0) return 0.0;
  double r = 0.0;
  for (const auto& z : poly_roots(char_poly(m))) r = std::max(r, std::abs(z));
  return r;
}

std::string block_name(int k) {
  if (k < 26) return std::string(1, static_cast<char>('a' + k));
  return "w" + std::to_string(k);
}

}  // namespace

std::string CutSpec::str(const Alphabet& al) const {
  if (kind == Kind::Interior)
    return "interior:" + al.name(a) + ":" + std::to_string(occurrence);
  return "vertex:" + al.name(a) + ":" + al.name(b);
}

std::vector<CutSpec> enumerate_cuts(const Substitution& sigma, int m) {
  std::vector<CutSpec> out;
  const Substitution tau = sigma.power(m);
  for (Letter a = 0; a < sigma.alphabet().size(); ++a) {
    const Word& w = tau.image(a);
    int occ = 0;
    for (std::size_t i = 0; i < w.size(); ++i) {
      if (w[i] != a) continue;
      ++occ;
      if (i > 0 && i + 1 < w.size()) {
        CutSpec c;
        c.kind = CutSpec::Kind::Interior;
        c.a = a;
        c.occurrence = occ;
        c.power = m;
        out.push_back(c);
      }
    }
  }
  for (auto [a, b] : pair_table(sigma, m).pairs) {
    CutSpec c;
    c.kind = CutSpec::Kind::Vertex;
    c.a = a;
    c.b = b;
    c.power = m;
    out.push_back(c);
  }
  return out;
}

Word RewritingResult::rho_word(const Word& w) const {
  Word out;
  for (Letter x : w) {
    const Word& b = rho[static_cast<std::size_t>(x)];
    out.insert(out.end(), b.begin(), b.end());
  }
  return out;
}

RewritingResult rewrite_with_rules(const Substitution& sigma,
                                   const std::vector<Letter>& start,
                                   const std::vector<Letter>& stop) {
  const int d = sigma.alphabet().size();
  std::vector<char> is_start(static_cast<std::size_t>(d), 0);
  std::vector<char> is_stop(static_cast<std::size_t>(d), 0);
  for (Letter x : start) is_start[static_cast<std::size_t>(x)] = 1;
  for (Letter x : stop) is_stop[static_cast<std::size_t>(x)] = 1;
  auto is_cut = [&](Letter x, Letter y) {
    return is_stop[static_cast<std::size_t>(x)] &&
           is_start[static_cast<std::size_t>(y)];
  };

  // Cut points must exist and must be carried to cut points by the
  // substitution.
  std::set<Word> grams = allowed_words(sigma, 2);
  bool any_cut = false;
  for (const Word& g : grams) {
    if (g.size() != 2 || !is_cut(g[0], g[1])) continue;
    any_cut = true;
    if (!is_stop[static_cast<std::size_t>(sigma.last_letter(g[0]))] ||
        !is_start[static_cast<std::size_t>(sigma.first_letter(g[1]))])
      throw NotCuttable("substitution does not map cut points to cut points",
                        g);
  }
  if (!any_cut)
    throw NotCuttable("the language admits no cut adjacency", Word{});

  // Segments of a word between consecutive interior cut adjacencies.
  auto segments = [&](const Word& w) {
    std::vector<Word> segs;
    std::size_t s = 0;
    for (std::size_t i = 0; i + 1 < w.size(); ++i)
      if (is_cut(w[i], w[i + 1])) {
        segs.emplace_back(w.begin() + static_cast<long>(s),
                          w.begin() + static_cast<long>(i) + 1);
        s = i + 1;
      }
    segs.emplace_back(w.begin() + static_cast<long>(s), w.end());
    return segs;
  };

  // Discover blocks: complete segments of deep images of allowed two-letter
  // words (ends truncated), then close under image re-cutting.
  std::set<Word> blocks;
  for (int k = 1; k <= 12; ++k) {
    std::set<Word> found;
    for (const Word& g : grams) {
      if (g.size() != 2) continue;
      std::vector<Word> segs = segments(sigma.apply(g, k));
      for (std::size_t i = 1; i + 1 < segs.size(); ++i) found.insert(segs[i]);
    }
    bool grew = false;
    for (const Word& b : found)
      if (blocks.insert(b).second) grew = true;
    if (k > 3 && !grew) break;
  }
  for (;;) {
    bool grew = false;
    for (const Word& b : std::vector<Word>(blocks.begin(), blocks.end()))
      for (const Word& s : segments(sigma.apply(b)))
        if (blocks.insert(s).second) grew = true;
    if (!grew) break;
    if (blocks.size() > 10000)
      throw NotCuttable("block vocabulary does not close", Word{});
  }
  for (const Word& b : blocks)
    if (!is_start[static_cast<std::size_t>(b.front())] ||
        !is_stop[static_cast<std::size_t>(b.back())])
      throw NotCuttable("segment is not a start-to-stop block", b);

  std::vector<Word> ordered(blocks.begin(), blocks.end());
  std::sort(ordered.begin(), ordered.end(), [](const Word& x, const Word& y) {
    if (x.size() != y.size()) return x.size() < y.size();
    return x < y;
  });
  std::map<Word, int> id;
  Alphabet al;
  for (std::size_t i = 0; i < ordered.size(); ++i) {
    id.emplace(ordered[i], static_cast<int>(i));
    al.add(block_name(static_cast<int>(i)));
  }
  std::vector<Word> rules;
  for (const Word& b : ordered) {
    Word img;
    for (const Word& s : segments(sigma.apply(b)))
      img.push_back(id.at(s));
    rules.push_back(std::move(img));
  }

  RewritingResult r;
  r.sigma_tilde = Substitution(al, rules);
  r.rho = ordered;
  r.source = sigma;
  // Conjugacy at the word level: spelling out the image of a block equals the
  // substitution applied to its spelling.
  for (Letter x = 0; x < r.sigma_tilde.alphabet().size(); ++x)
    if (r.rho_word(r.sigma_tilde.image(x)) !=
        sigma.apply(r.rho[static_cast<std::size_t>(x)]))
      throw std::logic_error("block recoding does not intertwine the images");
  return r;
}

RewritingResult one_cut_rewrite(const Substitution& sigma, const CutSpec& cut) {
  const Substitution tau = sigma.power(cut.power);
  const int d = sigma.alphabet().size();
  RewritingResult r;
  if (cut.kind == CutSpec::Kind::Vertex) {
    if (cut.a < 0 || cut.a >= d || cut.b < 0 || cut.b >= d ||
        tau.last_letter(cut.a) != cut.a || tau.first_letter(cut.b) != cut.b)
      throw std::domain_error("invalid vertex cut");
    r = rewrite_with_rules(tau, {cut.b}, {cut.a});
    r.to_original.resize(static_cast<std::size_t>(d));
    for (Letter x = 0; x < d; ++x)
      r.to_original[static_cast<std::size_t>(x)] = x;
  } else {
    if (cut.a < 0 || cut.a >= d) throw std::domain_error("invalid cut letter");
    const Word& w = tau.image(cut.a);
    int occ = 0;
    std::size_t pos = w.size();
    for (std::size_t i = 0; i < w.size(); ++i)
      if (w[i] == cut.a && ++occ == cut.occurrence) {
        pos = i;
        break;
      }
    if (pos >= w.size() || pos == 0 || pos + 1 == w.size())
      throw std::domain_error("invalid interior cut");
    // Split alphabet and the splitting morphism alpha.
    Alphabet al;
    std::vector<Word> alpha(static_cast<std::size_t>(d));
    Letter a1 = -1, a2 = -1;
    for (Letter x = 0; x < d; ++x) {
      if (x == cut.a) {
        a1 = al.add(sigma.alphabet().name(x) + "_1");
        a2 = al.add(sigma.alphabet().name(x) + "_2");
        alpha[static_cast<std::size_t>(x)] = Word{a1, a2};
      } else {
        alpha[static_cast<std::size_t>(x)] =
            Word{al.add(sigma.alphabet().name(x))};
      }
    }
    auto apply_alpha = [&](const Word& v) {
      Word out;
      for (Letter x : v) {
        const Word& img = alpha[static_cast<std::size_t>(x)];
        out.insert(out.end(), img.begin(), img.end());
      }
      return out;
    };
    std::vector<Word> rules(static_cast<std::size_t>(al.size()));
    for (Letter x = 0; x < d; ++x) {
      if (x == cut.a) continue;
      rules[static_cast<std::size_t>(alpha[static_cast<std::size_t>(x)][0])] =
          apply_alpha(tau.image(x));
    }
    Word p(w.begin(), w.begin() + static_cast<long>(pos));
    Word s(w.begin() + static_cast<long>(pos) + 1, w.end());
    Word r1 = apply_alpha(p);
    r1.push_back(a1);
    Word r2{a2};
    Word as = apply_alpha(s);
    r2.insert(r2.end(), as.begin(), as.end());
    rules[static_cast<std::size_t>(a1)] = r1;
    rules[static_cast<std::size_t>(a2)] = r2;
    Substitution prime(al, rules);
    r = rewrite_with_rules(prime, {a2}, {a1});
    r.split = true;
    r.a1 = a1;
    r.a2 = a2;
    r.to_original.resize(static_cast<std::size_t>(al.size()));
    for (Letter x = 0; x < d; ++x)
      r.to_original[static_cast<std::size_t>(
          alpha[static_cast<std::size_t>(x)][0])] = x;
    r.to_original[static_cast<std::size_t>(a2)] = cut.a;
  }
  r.cut = cut;
  // Rewriting invariants: properness and an unchanged expansion factor.
  if (is_proper(r.sigma_tilde).kind != Properness::Proper)
    throw std::logic_error("one-cut rewriting is not proper");
  const double lt = spectral_radius(
      IntMatrix::from_counts(r.sigma_tilde.abelianization_counts()));
  const double ls =
      spectral_radius(IntMatrix::from_counts(r.source.abelianization_counts()));
  if (std::abs(lt - ls) > 1e-9)
    throw std::logic_error("one-cut rewriting changed the expansion factor");
  return r;
}

std::vector<BalancedPair> essential_gbp(const Substitution& sigma,
                                        int max_len) {
  const int d = sigma.alphabet().size();
  IntMatrix ad = IntMatrix::from_counts(sigma.abelianization_counts());
  ad = ad.pow(ad.dim());
  auto projected = [&](const Word& w) {
    std::vector<BigInt> v(static_cast<std::size_t>(d), 0);
    for (Letter x : w) v[static_cast<std::size_t>(x)] += 1;
    return ad.apply(v);
  };
  auto irreducible = [&](const Word& u, const Word& v) {
    try {
      return factorize_geometric(sigma, u, v).size() == 1;
    } catch (const std::domain_error&) {
      return false;
    }
  };

  int len = max_len;
  std::vector<BalancedPair> result;
  for (int attempt = 0; attempt < 4; ++attempt) {
    std::set<Word> words = allowed_words(sigma, len);
    std::map<std::vector<BigInt>, std::vector<const Word*>> by_class;
    for (const Word& w : words) by_class[projected(w)].push_back(&w);
    std::vector<BalancedPair> universe;
    for (Letter a = 0; a < d; ++a)
      if (words.count(Word{a})) universe.emplace_back(Word{a}, Word{a});
    for (const auto& [cls, group] : by_class)
      for (const Word* u : group)
        for (const Word* v : group) {
          if (*u == *v) continue;
          if (!irreducible(*u, *v)) continue;
          universe.emplace_back(*u, *v);
          if (universe.size() > 200000)
            throw std::length_error("geometric pair universe overflow");
        }

    std::map<BalancedPair, int> index;
    for (std::size_t i = 0; i < universe.size(); ++i)
      index.emplace(universe[i], static_cast<int>(i));
    const int n = static_cast<int>(universe.size());
    std::vector<std::vector<BalancedPair>> images(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
      const auto& p = universe[static_cast<std::size_t>(i)];
      images[static_cast<std::size_t>(i)] =
          factorize_geometric(sigma, sigma.apply(p.u), sigma.apply(p.v));
    }
    std::vector<char> alive(static_cast<std::size_t>(n), 1);
    bool changed = true;
    while (changed) {
      changed = false;
      std::vector<char> covered(static_cast<std::size_t>(n), 0);
      for (int y = 0; y < n; ++y) {
        if (!alive[static_cast<std::size_t>(y)]) continue;
        for (const auto& f : images[static_cast<std::size_t>(y)]) {
          auto jt = index.find(f);
          if (jt != index.end())
            covered[static_cast<std::size_t>(jt->second)] = 1;
        }
      }
      for (int x = 0; x < n; ++x)
        if (alive[static_cast<std::size_t>(x)] &&
            !covered[static_cast<std::size_t>(x)]) {
          alive[static_cast<std::size_t>(x)] = 0;
          changed = true;
        }
    }
    result.clear();
    bool too_short = false;
    for (int i = 0; i < n; ++i)
      if (alive[static_cast<std::size_t>(i)]) {
        result.push_back(universe[static_cast<std::size_t>(i)]);
        for (const auto& f : images[static_cast<std::size_t>(i)])
          if (!index.count(f) &&
              static_cast<int>(std::max(f.u.size(), f.v.size())) > len)
            too_short = true;
      }
    if (!too_short) return result;
    len *= 2;
  }
  return result;
}

std::vector<BridgedPair> egbp_bridge(const RewritingResult& rw,
                                     const Substitution& sigma, int max_len) {
  std::vector<BridgedPair> out;
  auto unsplit = [&](const Word& w) {
    if (!rw.split) return w;
    // a2 x' a1 corresponds to a x with x' the split spelling of x.
    if (w.empty() || w.front() != rw.a2 || w.back() != rw.a1)
      throw std::logic_error("spelled pair is not of the form a2...a1");
    Word u{rw.to_original[static_cast<std::size_t>(rw.a2)]};
    for (std::size_t i = 1; i + 1 < w.size();) {
      if (w[i] == rw.a1) {
        if (i + 2 >= w.size() || w[i + 1] != rw.a2)
          throw std::logic_error("split halves are not adjacent");
        u.push_back(rw.to_original[static_cast<std::size_t>(rw.a2)]);
        i += 2;
      } else if (w[i] == rw.a2) {
        throw std::logic_error("split halves are not adjacent");
      } else {
        u.push_back(rw.to_original[static_cast<std::size_t>(w[i])]);
        ++i;
      }
    }
    return u;
  };
  for (const BalancedPair& p : essential_gbp(rw.sigma_tilde, max_len)) {
    BridgedPair bp;
    bp.gbp = p;
    bp.balanced =
        is_balanced(p.u, p.v, rw.sigma_tilde.alphabet().size());
    Word su = rw.rho_word(p.u), sv = rw.rho_word(p.v);
    bp.associated = BalancedPair(unsplit(su), unsplit(sv));
    if (!is_balanced(bp.associated.u, bp.associated.v,
                     sigma.alphabet().size()))
      throw std::logic_error(
          "associated pair of a geometrically balanced pair is unbalanced");
    out.push_back(std::move(bp));
  }
  return out;
}

}  // namespace tilinv
