#include "thetanull/rank.hpp"

#include <Eigen/SVD>

#include <algorithm>

namespace thetanull {

double RankReport::threshold() const {
    const double s1 = singular_values.empty() ? 0.0 : singular_values.front();
    return std::max(rel_tol_used * s1, abs_floor_used);
}

RankReport numerical_rank(const CMat& M, double rel_tol, double abs_floor) {
    require(rel_tol >= 0 && abs_floor >= 0, errc::invalid_argument,
            "rank tolerances must be nonnegative");
    RankReport r;
    r.rows = static_cast<int>(M.rows());
    r.cols = static_cast<int>(M.cols());
    r.rel_tol_used = rel_tol;
    r.abs_floor_used = abs_floor;
    Eigen::JacobiSVD<CMat> svd(M);
    const auto& sv = svd.singularValues();
    r.singular_values.assign(sv.data(), sv.data() + sv.size());
    const double thresh = r.threshold();
    r.numerical_rank = static_cast<int>(
        std::count_if(r.singular_values.begin(), r.singular_values.end(),
                      [&](double s) { return s > thresh; }));
    return r;
}

}  // namespace thetanull
