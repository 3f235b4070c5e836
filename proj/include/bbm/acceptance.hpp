#pragma once

#include <string>
#include <vector>

namespace bbm {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
};

// The ten release gates.  Each runs its own experiments; a thrown exception
// fails the criterion with the message as detail.
std::vector<CriterionResult> run_acceptance();

// Optional slow gate: solitary propagation to T = 1000 with the energy-drift
// bound; runtime tens of minutes.
CriterionResult run_long_time_criterion();

}  // namespace bbm
