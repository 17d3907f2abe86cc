// Acceptance suite runner: one pass/fail line per criterion.
#include <iostream>

#include "quiverhom/selftest.hpp"

int main(int argc, char** argv) {
  qh::SelftestOptions opt;
  for (int i = 1; i < argc; ++i) {
    std::string a = argv[i];
    if (a == "--quick") opt.eval_cases = 40;
    if (a == "--seed" && i + 1 < argc) opt.seed = std::stoull(argv[++i]);
  }
  auto rs = qh::run_acceptance(opt, &std::cout);
  bool all = true;
  for (const auto& r : rs) all = all && r.pass;
  std::cout << (all ? "ALL CRITERIA PASS" : "SOME CRITERIA FAIL") << std::endl;
  return all ? 0 : 1;
}
