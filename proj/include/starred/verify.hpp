#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "starred/hbar.hpp"

namespace starred {

struct VerifyOptions {
    uint64_t seed = 20250810;
    int n = 0;          // 0: suite default configuration set
    int s = 0;          // 0: suite default
    bool has_hbar = false;
    Rat hbar = Rat(0);
    unsigned k = 0;     // falling-rising index; 0: run k = 1..6
    unsigned order = 12;
    unsigned deg = 0;   // 0: suite default
    int cases = 0;      // 0: suite default
    double radius = 0.0; // 0: suite default 1/(2 sqrt(n))
    unsigned nodes = 64;
    double tol = 1e-8;
};

struct VerifyReport {
    std::string suite;
    int cases = 0;
    struct Failure {
        std::string case_id;
        std::string diff;
    };
    std::vector<Failure> failures;
    std::vector<std::string> notes; // expected-negative witnesses and the like
    double wall_ms = 0.0;

    bool pass() const { return failures.empty(); }
    nlohmann::json to_json() const;
};

const std::vector<std::string>& verify_suite_names();

/// Runs one named suite; throws std::invalid_argument for unknown names.
VerifyReport run_verify_suite(const std::string& name, const VerifyOptions& opts);

} // namespace starred
