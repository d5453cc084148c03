#pragma once

#include "thetanull/characteristics.hpp"
#include "thetanull/types.hpp"

#include <optional>
#include <vector>

namespace thetanull {

/// Singular values and the tolerance-parametrized numerical rank of a matrix.
/// A singular value counts toward the rank iff it exceeds
/// max(rel_tol * sigma_1, abs_floor); the floor ties rank decisions to the
/// certified evaluation error of the entries rather than machine epsilon.
struct RankReport {
    int rows = 0;
    int cols = 0;
    std::vector<double> singular_values;  // descending
    int numerical_rank = 0;
    double rel_tol_used = 0.0;
    double abs_floor_used = 0.0;
    std::optional<Characteristic> witness;

    double threshold() const;
};

RankReport numerical_rank(const CMat& M, double rel_tol, double abs_floor);

}  // namespace thetanull
