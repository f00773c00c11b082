// Exact rational linear feasibility (dense two-phase simplex, Bland's rule).
#pragma once

#include "gkz/arith.hpp"

#include <optional>

namespace gkz {

/// A point x (free variables) with ineq * x >= ineq_rhs and eq * x = eq_rhs,
/// or nullopt if none exists. Either system may have zero rows.
std::optional<RatVec> feasible_point(const RatMatrix& ineq, const RatVec& ineq_rhs, const RatMatrix& eq = RatMatrix(),
                                     const RatVec& eq_rhs = RatVec());

}  // namespace gkz
