#pragma once

#include <string_view>
#include <vector>

namespace shadow_transport {

enum class LpStatus { Optimal, Infeasible, Unbounded };

std::string_view to_string(LpStatus s) noexcept;

// minimise c.x  subject to  A_eq x = b_eq,  A_le x <= b_le,  x >= 0
struct LinearProgram {
    std::vector<double> cost;
    std::vector<std::vector<double>> a_eq;
    std::vector<double> b_eq;
    std::vector<std::vector<double>> a_le;
    std::vector<double> b_le;
};

struct LpSolution {
    LpStatus status = LpStatus::Infeasible;
    double objective = 0.0;
    std::vector<double> x;
    std::vector<double> dual_eq;  // multipliers of the equality rows
    std::vector<double> dual_le;  // multipliers of the inequality rows (<= 0)
    double duality_gap = 0.0;     // |c.x - b.y|
    double dual_infeasibility = 0.0;  // max violation of c - A^T y >= 0
};

/// Dense two-phase tableau simplex with Bland's rule. Redundant equality rows
/// are detected at the end of phase one and dropped (their multiplier is 0).
LpSolution solve_lp(const LinearProgram& lp);

}  // namespace shadow_transport
