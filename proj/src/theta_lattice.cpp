#include "thetanull/theta.hpp"

#include <cmath>

namespace thetanull {

namespace {

struct Enumerator {
    const RMat& T;
    const RVec& center;
    double R2;
    const std::function<void(const IVec&)>& visit;
    std::int64_t max_points;
    std::int64_t count = 0;
    int n;
    IVec m;
    RVec u;  // m + center, coordinates fixed so far

    // Interval slack; candidates are re-checked against the exact predicate,
    // so the slack can only add rejected boundary candidates, never points.
    static constexpr double kSlack = 1e-7;

    void descend(int depth, double used) {
        double s = 0.0;
        for (int j = 0; j < depth; ++j) s += T(depth, j) * u[j];
        const double rem = R2 - used;
        if (rem < -kSlack) return;
        const double half = std::sqrt(std::max(rem, 0.0));
        const double tii = T(depth, depth);
        const double lo = (-half - s) / tii - center[depth] - kSlack;
        const double hi = (half - s) / tii - center[depth] + kSlack;
        if (lo > hi) return;
        const auto mlo = static_cast<std::int64_t>(std::ceil(lo));
        const auto mhi = static_cast<std::int64_t>(std::floor(hi));
        for (std::int64_t mi = mlo; mi <= mhi; ++mi) {
            m[depth] = mi;
            u[depth] = static_cast<double>(mi) + center[depth];
            const double row = tii * u[depth] + s;
            const double used_next = used + row * row;
            if (depth + 1 == n) {
                // exact membership check, same expression a brute-force scan uses
                if ((T * u).squaredNorm() <= R2) {
                    if (++count > max_points)
                        fail(errc::radius_cap_exceeded,
                             "lattice enumeration exceeded " + std::to_string(max_points) +
                                 " points");
                    visit(m);
                }
            } else {
                descend(depth + 1, used_next);
            }
        }
    }
};

}  // namespace

void lattice_points(const RMat& T, const RVec& center, double R,
                    const std::function<void(const IVec&)>& visit,
                    std::int64_t max_points) {
    const int n = static_cast<int>(T.rows());
    require(T.cols() == n && center.size() == n && n >= 1, errc::invalid_argument,
            "lattice factor and center dimensions must agree");
    require(R >= 0, errc::invalid_argument, "radius must be nonnegative");
    for (int i = 0; i < n; ++i) {
        require(T(i, i) > 0, errc::invalid_argument, "factor must have positive diagonal");
        for (int j = i + 1; j < n; ++j)
            require(T(i, j) == 0.0, errc::invalid_argument, "factor must be lower triangular");
    }
    Enumerator e{T, center, R * R, visit, max_points, 0, n, IVec(n), RVec(n)};
    e.descend(0, 0.0);
}

std::vector<IVec> lattice_points_collect(const RMat& T, const RVec& center, double R,
                                         std::int64_t max_points) {
    std::vector<IVec> out;
    lattice_points(T, center, R, [&](const IVec& m) { out.push_back(m); }, max_points);
    return out;
}

}  // namespace thetanull
