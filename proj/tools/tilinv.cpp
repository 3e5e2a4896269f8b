#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "tilinv/io.hpp"
#include "tilinv/matrix.hpp"
#include "tilinv/reduction.hpp"
#include "tilinv/report.hpp"
#include "tilinv/rewriting.hpp"

namespace {

using namespace tilinv;

Substitution load(const std::string& path) {
  return parse_substitution_json(read_file(path));
}

CutSpec parse_cut(const Substitution& sigma, const std::string& s, int power) {
  std::vector<std::string> parts;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ':')) parts.push_back(item);
  const Alphabet& a = sigma.alphabet();
  CutSpec cut;
  cut.power = power;
  if (parts.size() == 3 && parts[0] == "interior") {
    cut.kind = CutSpec::Kind::Interior;
    cut.a = a.index(parts[1]);
    cut.occurrence = std::stoi(parts[2]);
  } else if (parts.size() == 3 && parts[0] == "vertex") {
    cut.kind = CutSpec::Kind::Vertex;
    cut.a = a.index(parts[1]);
    cut.b = a.index(parts[2]);
  } else {
    throw ParseError("cut must look like interior:<letter>:<occurrence> or "
                     "vertex:<left>:<right>");
  }
  return cut;
}

void print_substitution(const Substitution& s, const std::string& label) {
  const Alphabet& a = s.alphabet();
  std::cout << label << ":";
  for (Letter x = 0; x < a.size(); ++x)
    std::cout << " " << a.name(x) << "->" << a.spell(s.image(x), "");
  std::cout << "\n";
}

int cmd_analyze(const std::string& path, const RunConfig& cfg) {
  Substitution s = load(path);
  AnalysisReport r = invariant_report(s, cfg);
  std::cout << (cfg.format == "json" ? render_report_json(r, s)
                                     : render_report_text(r, s));
  return r.bounded() ? 2 : 0;
}

int cmd_compare(const std::string& p1, const std::string& p2,
                const RunConfig& cfg) {
  Substitution s1 = load(p1), s2 = load(p2);
  CompareResult c = compare(s1, s2, cfg);
  std::cout << (cfg.format == "json" ? render_compare_json(c)
                                     : render_compare_text(c));
  return (c.left.bounded() || c.right.bounded()) && !c.distinguished ? 2 : 0;
}

int cmd_essential(const std::string& path, const RunConfig& cfg) {
  Substitution s = load(path);
  EssentialSet e = essential_set(s, cfg.max_len);
  const Alphabet& a = s.alphabet();
  if (cfg.format == "json") {
    std::cout << pairs_to_json(e.pairs, a);
  } else {
    for (const auto& p : e.pairs) std::cout << pair_str(a, p) << "\n";
    std::cout << "forward_closed: " << (e.forward_closed ? "yes" : "no")
              << "  backward_covered: " << (e.backward_covered ? "yes" : "no")
              << "  max_len: " << e.max_len_used << "\n";
  }
  return e.overflow || !e.forward_closed ? 2 : 0;
}

int cmd_gcc(const std::string& path, const RunConfig& cfg) {
  Substitution s = load(path);
  GccResult g = gcc_check(s, cfg.max_pairs);
  std::cout << "gcc: " << to_string(g.verdict);
  if (g.verdict == Verdict::Yes)
    std::cout << " (witness " << s.alphabet().name(g.a) << ","
              << s.alphabet().name(g.b) << ")";
  if (!g.note.empty()) std::cout << " [" << g.note << "]";
  std::cout << "\n";
  return g.verdict == Verdict::Unknown ? 2 : 0;
}

int cmd_rewrite(const std::string& path, const std::string& cut_str, bool list,
                const RunConfig& cfg) {
  Substitution s = load(path);
  if (list) {
    for (const auto& c : enumerate_cuts(s, cfg.power > 0 ? cfg.power : 1))
      std::cout << c.str(s.alphabet()) << "\n";
    return 0;
  }
  CutSpec cut = parse_cut(s, cut_str, cfg.power > 0 ? cfg.power : 1);
  RewritingResult rw = one_cut_rewrite(s, cut);
  print_substitution(rw.source, rw.split ? "split source" : "source");
  const Alphabet& na = rw.sigma_tilde.alphabet();
  const Alphabet& sa = rw.source.alphabet();
  std::cout << "blocks:";
  for (Letter x = 0; x < na.size(); ++x)
    std::cout << " " << na.name(x) << "=" << sa.spell(rw.rho[x], "");
  std::cout << "\n";
  print_substitution(rw.sigma_tilde, "rewritten");
  for (const auto& b : egbp_bridge(rw, s, cfg.max_len))
    std::cout << "essential-geometric " << pair_str(na, b.gbp)
              << (b.balanced ? " [balanced]" : " [unbalanced]")
              << " -> " << pair_str(s.alphabet(), b.associated) << "\n";
  return 0;
}

int cmd_automaton(const std::string& path, const std::string& verify_path,
                  int max_disc, const std::string& dot_path,
                  const RunConfig& cfg) {
  Substitution s = load(path);
  ReductionGraph g;
  int rc = 0;
  if (!verify_path.empty()) {
    std::vector<BalancedPair> cand =
        parse_pairs_json(read_file(verify_path), s.alphabet());
    if (max_disc <= 0) {
      // the candidates' own prefix discrepancy: larger inputs cannot occur
      // when reducing products of candidate pairs
      const int d = s.letters();
      for (const auto& p : cand) {
        std::vector<long long> diff(static_cast<std::size_t>(d), 0);
        for (std::size_t k = 0; k < std::min(p.u.size(), p.v.size()); ++k) {
          ++diff[static_cast<std::size_t>(p.u[k])];
          --diff[static_cast<std::size_t>(p.v[k])];
          long long n = 0;
          for (long long x : diff) n += std::abs(x);
          max_disc = std::max<int>(max_disc, static_cast<int>((n + 1) / 2));
        }
      }
      max_disc = std::max(max_disc, 1);
    }
    UniverseResult u = verify_universe(s, cand, max_disc, cfg.max_states);
    g = std::move(u.graph);
    switch (u.kind) {
      case UniverseVerdict::Verified:
        std::cout << "verify: Verified\n";
        break;
      case UniverseVerdict::Counterexample:
        std::cout << "verify: Counterexample "
                  << pair_str(s.alphabet(), u.counterexample) << "\n";
        break;
      case UniverseVerdict::Unknown:
        std::cout << "verify: Unknown (state cap hit)\n";
        rc = 2;
        break;
    }
  } else {
    if (max_disc <= 0) max_disc = 2;
    g = build_reduction_graph(s, max_disc, cfg.max_states);
    if (g.overflow) rc = 2;
  }
  std::cout << "states: " << g.states.size()
            << "  discrepancy bound: " << discrepancy_bound(g)
            << (g.overflow ? "  (state cap hit)" : "") << "\n";
  std::cout << "emitted:";
  for (const auto& p : g.emitted)
    std::cout << " " << pair_str(s.alphabet(), p);
  std::cout << "\n";
  if (!dot_path.empty()) {
    std::ofstream out(dot_path);
    if (!out) throw ParseError("cannot write " + dot_path);
    out << to_dot(g, s.alphabet());
  }
  return rc;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Invariants of one-dimensional substitution tiling spaces"};
  app.require_subcommand(1);

  RunConfig cfg;
  app.add_option("--max-len", cfg.max_len, "Pair length bound");
  app.add_option("--max-pairs", cfg.max_pairs, "Closure size cap");
  app.add_option("--max-states", cfg.max_states, "Automaton state cap");
  app.add_option("--depth", cfg.depth, "Ray comparison depth");
  app.add_option("--tol", cfg.tol, "Numeric tolerance");
  app.add_option("--power", cfg.power, "Substitution power (0 = automatic)");
  app.add_option("--format", cfg.format, "Output format: text or json")
      ->check(CLI::IsMember({"text", "json"}));

  std::string path, path2, cut_str, verify_path, dot_path;
  int max_disc = 0;
  bool list_cuts = false;

  auto* analyze = app.add_subcommand("analyze", "Full invariant report");
  analyze->alias("report");
  analyze->add_option("substitution", path)->required();

  auto* cmp = app.add_subcommand("compare", "Distinguish two tiling spaces");
  cmp->add_option("first", path)->required();
  cmp->add_option("second", path2)->required();

  auto* ess = app.add_subcommand("essential", "Essential balanced pairs");
  ess->add_option("substitution", path)->required();

  auto* gcc = app.add_subcommand("gcc", "Geometric coincidence check");
  gcc->add_option("substitution", path)->required();

  auto* rw = app.add_subcommand("rewrite", "One-cut block recoding");
  rw->add_option("substitution", path)->required();
  rw->add_option("--cut", cut_str,
                 "interior:<letter>:<occurrence> or vertex:<left>:<right>");
  rw->add_flag("--list", list_cuts, "List the available cuts and exit");

  auto* aut = app.add_subcommand("automaton", "Image-reduction machine");
  aut->add_option("substitution", path)->required();
  aut->add_option("--verify", verify_path,
                  "Candidate pairs file; certify the emitted set");
  aut->add_option("--max-discrepancy", max_disc,
                  "Pruning bound (0 = derive from the candidates, else 2)");
  aut->add_option("--dot", dot_path, "Write the graph in dot format");

  // shared bound/format options may appear after the subcommand arguments
  for (CLI::App* sub : {analyze, cmp, ess, gcc, rw, aut}) sub->fallthrough();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*analyze) return cmd_analyze(path, cfg);
    if (*cmp) return cmd_compare(path, path2, cfg);
    if (*ess) return cmd_essential(path, cfg);
    if (*gcc) return cmd_gcc(path, cfg);
    if (*rw) {
      if (!list_cuts && cut_str.empty())
        throw ParseError("rewrite needs --cut or --list");
      return cmd_rewrite(path, cut_str, list_cuts, cfg);
    }
    if (*aut) return cmd_automaton(path, verify_path, max_disc, dot_path, cfg);
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const NotCuttable& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
