// Acceptance suite: one PASS/FAIL line per criterion.
//   acceptance            run every criterion
//   acceptance fast|full  run one level
//   acceptance <id>...    run the listed criteria
#include <cstdlib>
#include <iostream>
#include <string>

#include "aqed/verify.hpp"

int main(int argc, char** argv) {
  using namespace aqed::verify;
  std::vector<CriterionResult> results;
  if (argc == 1) {
    results = run(Level::Full);
  } else {
    for (int i = 1; i < argc; ++i) {
      const std::string arg = argv[i];
      if (arg == "fast" || arg == "full") {
        for (auto& r : run(parse_level(arg))) results.push_back(r);
        continue;
      }
      const int id = std::atoi(arg.c_str());
      bool found = false;
      for (const auto& c : criteria())
        if (c.id == id) {
          results.push_back(run_criterion(c));
          found = true;
        }
      if (!found) {
        std::cerr << "unknown criterion '" << arg << "'\n";
        return 2;
      }
    }
  }
  bool ok = true;
  for (const auto& r : results) {
    std::cout << summary_line(r) << "\n";
    for (const auto& n : r.notes) std::cout << "       note: " << n << "\n";
    ok &= r.passed;
  }
  std::cout << (ok ? "all criteria passed" : "some criteria failed") << std::endl;
  return ok ? 0 : 1;
}
