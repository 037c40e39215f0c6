#pragma once

#include <string>
#include <vector>

namespace ndcwt::verify {

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

/// Filter identities, round trips, oracle equivalence, energy identity.
/// quick trims the size grid to keep the run under a couple of seconds.
std::vector<CheckResult> run_suites(bool quick);

/// Timed 1-D (1024, p=4) and 2-D (1024x1024, p1=p2=4) cdaub6 transforms with
/// their wall-clock budgets. The 2-D case allocates about 4.3 GB.
std::vector<CheckResult> run_bench();

/// Prints one status line per result; returns true when everything passed.
bool report(const std::vector<CheckResult>& results);

}  // namespace ndcwt::verify
