#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "riccati_lie/error.hpp"
#include "riccati_lie/liealg.hpp"

namespace riccati_lie::cli {

enum ExitCode : int {
    kOk = 0,
    kVerifyFailed = 1,
    kInputError = 2,  ///< usage, config, CSV or I/O problem
    kDomainError = 3,
    kGenericityError = 4,  ///< includes the branch failure of the superposition rule
    kNumericError = 5,
    kRangeError = 6,
};

int exit_code_for(ErrorKind kind) noexcept;

/// Runs `riccati-lie` with `args` (program name excluded). CSV goes to `out`
/// unless --out is given; diagnostics go to `err`. `table` replaces the
/// structure constants used by `verify` (negative-control hook for tests).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
        const StructureConstants& table = structure_constants());

}  // namespace riccati_lie::cli
