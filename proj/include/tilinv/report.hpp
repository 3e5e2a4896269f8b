#pragma once

#include <string>
#include <vector>

#include "tilinv/balanced.hpp"
#include "tilinv/essential.hpp"
#include "tilinv/periodic.hpp"
#include "tilinv/spectra.hpp"
#include "tilinv/substitution.hpp"

namespace tilinv {

struct RunConfig {
  int max_len = 12;
  int max_pairs = 20000;
  int max_states = 50000;
  int depth = 256;
  double tol = 1e-9;
  int power = 0;  // 0 selects the boundary-period lcm automatically
  std::string format = "text";
};

// Everything the comparison pipeline knows about one substitution. Fields
// that could not be computed carry ok=false and a note in flags; the report
// itself never aborts.
struct AnalysisReport {
  std::string name;

  SpectralProfile spectral;
  PropernessVerdict properness;

  PairTable table;
  CycleVerdict cycles;
  int equivalence_classes = 0;

  bool gcc_ok = false;
  GccResult gcc;

  bool asym_ok = false;
  AsymptoticStructure asym;

  bool abp_ok = false;
  std::vector<BalancedPair> abp_nontrivial;

  bool essential_ok = false;
  EssentialSet essential;

  bool ebp_ok = false;
  double ebp_lambda = 0.0;
  double ebp_beta = 0.0;
  bool ebp_asym_ok = false;
  int ebp_backward = 0;
  int ebp_forward = 0;
  bool ebp_heuristic = false;

  bool phi_a_ok = false;
  int phi_a_letters = 0;
  bool phi_a_primitive = false;
  int phi_a_rank = 0;
  std::vector<BigInt> phi_a_poly;  // restriction to the eventual range

  std::vector<std::string> flags;  // bounded/heuristic/failed-step notes

  bool bounded() const { return !flags.empty(); }
};

AnalysisReport invariant_report(const Substitution& sigma,
                                const RunConfig& cfg = {});

struct CompareResult {
  bool distinguished = false;
  std::vector<std::string> reasons;   // why the spaces differ
  std::vector<std::string> compared;  // fields examined either way
  AnalysisReport left;
  AnalysisReport right;
};

// Distinguished only on topological invariants that are certain at the given
// bounds; never claims the spaces are homeomorphic.
CompareResult compare(const Substitution& s1, const Substitution& s2,
                      const RunConfig& cfg = {});

}  // namespace tilinv
