#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace qp::verify {

struct Options {
    std::vector<int> ns;     // empty: the suite default
    int trials = 0;          // 0: the suite default; trials cycle through ns
    std::uint64_t seed = 1;
    double tol = 0.0;        // 0: the suite default
};

struct Result {
    std::string suite;
    int trials = 0;
    int passed = 0;
    double maxResidual = 0.0;
    double tol = 0.0;
    bool ok = false;
    std::vector<std::pair<std::string, double>> metrics; // suite specific, fixed order
    std::string note;
};

const std::vector<std::string>& suite_names();

// Throws std::invalid_argument for an unknown suite name.
Result run(const std::string& suite, const Options& opt);

} // namespace qp::verify
