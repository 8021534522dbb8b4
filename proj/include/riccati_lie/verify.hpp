#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "riccati_lie/liealg.hpp"
#include "riccati_lie/scenario.hpp"

namespace riccati_lie {

enum class Suite { integrals, brackets, action, superposition, all };

/// Throws ParseError for an unknown suite name.
Suite parse_suite(std::string_view name);
const char* to_string(Suite suite) noexcept;

struct CheckResult {
    std::string name;
    bool passed = false;
    double max_residual = 0.0;
    double tolerance = 0.0;
    std::string note;  ///< counts, failed assertions, first error message
};

struct VerifyReport {
    std::vector<CheckResult> checks;
    bool all_passed() const;
};

struct VerifyOptions {
    /// Random trials per check; 0 selects the per-suite default (100 points for
    /// brackets and action, 1000 tuples for the inversion check, 4 solution
    /// sets for the integration-based checks).
    int trials = 0;
    std::uint64_t seed = 0;
    /// Table the bracket suite is checked against. Tests substitute a
    /// corrupted copy as a negative control.
    StructureConstants table = structure_constants();
};

/// Runs a suite against the scenario's potential, window, tolerance and ICs.
/// Integration checks use the first four ICs of the scenario for their first
/// set when it has at least four, and random ICs otherwise.
VerifyReport run_verify(Suite suite, const Scenario& scenario, const VerifyOptions& opt = {});

/// One line per check:
///   PASS brackets.commutation max_residual=2.2e-16 tol=1e-10 n=100
void print_report(std::ostream& os, const VerifyReport& report);

}  // namespace riccati_lie
