#pragma once

#include <string>
#include <vector>

namespace atomkit::verify {

struct CheckResult {
    int id = 0;
    std::string name;
    bool pass = false;
    double residual = 0;   // worst measured deviation
    double tolerance = 0;  // bound it is compared against
    double seconds = 0;
    std::string detail;
};

int check_count();
// Runs criterion id (1-based); exceptions are reported as failures.
CheckResult run_check(int id);
std::vector<CheckResult> run_all();

}  // namespace atomkit::verify
