#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace ldg {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail;
    double seconds = 0.0;
};

struct AcceptanceOptions {
    std::uint64_t seed = 0x1d6a5ULL;  // default master seed; cli --seed overrides
    bool verbose = false;
};

// Runs the full acceptance suite; one result per criterion, in order.
std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opts, std::ostream& log);

// Seeded data products of a verify run (rate table, tail estimates, spectral
// counts) as one CSV string; byte-identical across runs with the same seed.
std::string verify_outputs_csv(std::uint64_t seed);

// One pass/fail line per criterion; returns true when everything passed.
bool print_acceptance_report(const std::vector<CriterionResult>& results, std::ostream& out);

}  // namespace ldg
