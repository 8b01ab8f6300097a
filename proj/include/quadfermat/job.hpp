#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>

#include "quadfermat/families.hpp"

namespace quadfermat {

enum class Command { Classify, Reduce, Solve, Verify, CheckDerivatives, SweepNonexistence };
enum class OutputMode { Text, Json };

/// One CLI invocation, fully resolved. `params` carries the free constants
/// of the constructors (R4, R5, R6, B11, MU, B, PCONST, ALPHA1, ALPHA2) and
/// the integer-valued K for thm 3.5.
struct JobConfig {
    Command command = Command::Classify;
    QuadraticForm form;
    std::optional<EquationTag> kind;
    std::optional<Shift> shift;
    Branch branch = Branch::Plus;
    Sign ksign = Sign::Plus;
    int case_index = 1;
    std::map<std::string, Cx> params;
    std::optional<std::string> candidate;
    SampleSpec samples{200, 2.0, 42};
    ToleranceConfig tol{};
    OutputMode output = OutputMode::Text;
};

/// Exit codes: 0 PASS/success, 1 FAIL, 2 input error, 3 unsupported or
/// degenerate case. JSON mode writes exactly one document to `out`.
int run(const JobConfig& config, std::ostream& out, std::ostream& err);

/// Seed resolution for front ends: QUADFERMAT_SEED when set, else 42.
std::uint64_t default_seed();

std::string to_string(Command c);
std::string to_string(Branch b);

}  // namespace quadfermat
