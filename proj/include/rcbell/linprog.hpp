#pragma once

#include <cstddef>
#include <vector>

#include "rcbell/rational.hpp"

namespace rcbell {

/// maximize objective . x  subject to  rows . x = rhs,  x >= 0.
struct LinearProgram {
    std::size_t num_vars = 0;
    std::vector<Rational> objective;
    std::vector<std::vector<Rational>> rows;
    std::vector<Rational> rhs;

    void add_row(std::vector<Rational> row, Rational b) {
        if (row.size() != num_vars) throw std::invalid_argument("lp: row size mismatch");
        rows.push_back(std::move(row));
        rhs.push_back(std::move(b));
    }
};

enum class LPStatus { optimal, infeasible, unbounded };

struct LPSolution {
    LPStatus status = LPStatus::infeasible;
    Rational value;
    std::vector<Rational> optimizer;  // primal point, empty unless optimal
    std::vector<Rational> dual;       // one multiplier per original row (0 on redundant rows)
};

/// Exact two-phase primal simplex with Bland's anti-cycling rule. On an
/// optimal exit the primal point, objective value, and dual certificate
/// (A^T y >= c, b^T y = value) are re-verified by substitution; a failed
/// certificate throws std::logic_error.
LPSolution solve_lp(const LinearProgram& lp);

}  // namespace rcbell
