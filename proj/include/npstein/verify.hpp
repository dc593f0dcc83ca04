// The full acceptance suite: every criterion is pinned here, with its exact
// tolerance, and reports one pass/fail line. Shared by the standalone
// acceptance binary and the CLI `verify-all` subcommand.
#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace npstein {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail;
    double millis = 0.0;
};

struct VerifyOptions {
    std::uint64_t seed = 0x5eed2024cafe01ULL;  // drives the randomized criteria
};

std::vector<CriterionResult> run_acceptance(const VerifyOptions& opt = {});

// Prints one line per criterion; returns the number of failures.
int print_acceptance(std::ostream& out, const VerifyOptions& opt = {});

}  // namespace npstein
