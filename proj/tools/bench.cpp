#include <omp.h>

#include <chrono>
#include <cstdio>
#include <functional>

#include "tilinv/balanced.hpp"
#include "tilinv/periodic.hpp"
#include "tilinv/substitution.hpp"

using namespace tilinv;

namespace {

Substitution mk(const char* name, const char* r1, const char* r2) {
  Alphabet a;
  a.add("1");
  a.add("2");
  Word w1, w2;
  for (const char* c = r1; *c; ++c) w1.push_back(*c - '1');
  for (const char* c = r2; *c; ++c) w2.push_back(*c - '1');
  return Substitution(a, {w1, w2}, name);
}

double time_once(const std::function<void()>& f) {
  auto t0 = std::chrono::steady_clock::now();
  f();
  auto t1 = std::chrono::steady_clock::now();
  return std::chrono::duration<double>(t1 - t0).count();
}

void row(const char* what, const std::function<void()>& serial,
         const std::function<void()>& parallel) {
  serial();  // warm caches before timing
  double s = time_once(serial);
  double p = time_once(parallel);
  std::printf("%-34s serial %8.4fs  parallel %8.4fs  speedup %.2fx\n", what, s,
              p, p > 0 ? s / p : 0.0);
}

}  // namespace

int main() {
  std::printf("threads: %d\n", omp_get_max_threads());

  Substitution dphi = mk("two-letter A", "1112211122111221212", "1112212");
  Substitution dpsi = mk("two-letter B", "1112211121212121212", "1112212");
  Substitution wpsi = mk("two-letter C", "112222", "12");

  for (const Substitution* s : {&dphi, &dpsi, &wpsi}) {
    std::printf("-- %s\n", s->name().c_str());
    std::vector<BalancedPair> seeds{BalancedPair({0, 1}, {1, 0})};
    row("closure frontier",
        [&] { closure(*s, seeds, 200000, false); },
        [&] { closure(*s, seeds, 200000, true); });
    row("gcc candidates",
        [&] { gcc_check(*s, 200000, false); },
        [&] { gcc_check(*s, 200000, true); });
    int threads = omp_get_max_threads();
    row("asymptotic ray comparisons",
        [&] {
          omp_set_num_threads(1);
          asymptotic_pairs(*s, 0, 4096);
          omp_set_num_threads(threads);
        },
        [&] { asymptotic_pairs(*s, 0, 4096); });
  }
  return 0;
}
