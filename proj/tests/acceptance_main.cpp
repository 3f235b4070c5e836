// Release-gate runner: one line per criterion, nonzero exit on any failure.

#include <cstring>
#include <iostream>

#include "bbm/acceptance.hpp"

int main(int argc, char** argv) {
  const bool long_time =
      argc > 1 && std::strcmp(argv[1], "--long-time") == 0;

  bool all_pass = true;
  if (long_time) {
    const bbm::CriterionResult r = bbm::run_long_time_criterion();
    std::cout << (r.pass ? "PASS" : "FAIL") << " " << r.name << ": "
              << r.detail << "\n";
    all_pass = r.pass;
  } else {
    for (const bbm::CriterionResult& r : bbm::run_acceptance()) {
      std::cout << (r.pass ? "PASS" : "FAIL") << " criterion " << r.id << " ("
                << r.name << "): " << r.detail << "\n";
      std::cout.flush();
      all_pass = all_pass && r.pass;
    }
  }
  return all_pass ? 0 : 1;
}
