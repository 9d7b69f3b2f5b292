#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace ustlab {

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct VerifyOptions {
    int moon_n = 5;          // brute-force pair enumeration, keep small
    int lemma1_n = 6;        // all forests of K_2..K_n
    int chen_stein_n = 100;
    std::uint64_t sampler_trials = 50'000;
    std::uint64_t seed = 0x75737462;
};

// Check names accepted by run_verification: moon, lemma1, lcy, sampler,
// chen-stein.
std::vector<std::string> verify_check_names();

// Runs the named oracle-agreement checks (all of them when `checks` is
// empty). Unknown names throw std::invalid_argument.
std::vector<CheckResult> run_verification(const std::vector<std::string>& checks,
                                          const VerifyOptions& options = {});

}  // namespace ustlab
