#pragma once

#include <optional>
#include <string>

#include "quadfermat/expr.hpp"

namespace quadfermat {

/// The five quadratic operator equations. L-kinds are pure PDEs; M-kinds mix
/// a shift with partial derivatives (PDDEs) and require a nonzero shift.
enum class EquationTag { L1L2, L1L3, L1L4, M1M2, M1M3 };

struct EquationKind {
    EquationTag tag = EquationTag::L1L2;
    std::optional<Shift> shift;

    bool is_difference_kind() const {
        return tag == EquationTag::M1M2 || tag == EquationTag::M1M3;
    }

    /// shift present iff M-kind, and then nonzero.
    void validate() const;
};

std::string to_string(EquationTag tag);
std::optional<EquationTag> equation_tag_from_string(const std::string& s);

}  // namespace quadfermat
