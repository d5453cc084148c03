#pragma once

#include "thetanull/characteristics.hpp"
#include "thetanull/siegel.hpp"
#include "thetanull/types.hpp"

#include <functional>
#include <vector>

namespace thetanull {

struct EvalConfig {
    double target_abs_error = 1e-12;
    double max_radius = 40.0;  // cap on the lattice ellipsoid radius
    int max_derivative_order = 4;
    std::int64_t max_lattice_points = 10'000'000;
};

/// All multi-indices alpha in N^g with |alpha| <= order, graded then
/// lexicographic. This fixes the layout of ThetaJet::partials.
struct MultiIndexSet {
    int g = 0;
    int order = 0;
    std::vector<std::vector<int>> indices;

    static MultiIndexSet make(int g, int order);
    int find(const std::vector<int>& alpha) const;  // -1 if absent
    std::size_t size() const { return indices.size(); }
};

/// Value and z-partials of theta[eps,delta](tau, .) at a point, with the
/// certified truncation error of the lattice sum that produced them.
struct ThetaJet {
    int genus = 0;
    Characteristic ch;
    int order = 0;
    MultiIndexSet mis;
    std::vector<cx> partials;  // aligned with mis.indices
    double tail_bound_used = 0.0;
    double radius_used = 0.0;
    std::int64_t terms_summed = 0;

    cx value() const;
    cx partial(const std::vector<int>& alpha) const;
    CVec gradient() const;           // order >= 1
    CMat hessian() const;            // order >= 2
    cx third(int i, int j, int k) const;  // order >= 3
};

/// Visits every m in Z^g with ||T(m + center)||_2 <= R, T lower triangular
/// with positive diagonal, by recursive coordinate-interval descent.
/// Deterministic order: m_1 ascending, then m_2, ... Raises
/// RadiusCapExceeded when more than max_points points would be produced.
void lattice_points(const RMat& T, const RVec& center, double R,
                    const std::function<void(const IVec&)>& visit,
                    std::int64_t max_points = 10'000'000);

std::vector<IVec> lattice_points_collect(const RMat& T, const RVec& center, double R,
                                         std::int64_t max_points = 10'000'000);

/// Rigorous bound on the absolute sum of all omitted terms of the series for
/// every z-partial of order <= order, when truncating at ||T(m+c)|| <= R,
/// valid uniformly in the characteristic and for real z. Monotone
/// decreasing in R; +infinity when R is below the admissible shift margin.
double tail_bound(const PeriodMatrix& tau, int order, double R);

/// Certified evaluation of the jet of theta[ch](tau, .) at z up to `order`.
/// The truncation radius is the smallest one whose tail bound meets
/// cfg.target_abs_error; exceeding cfg.max_radius or cfg.max_lattice_points
/// raises RadiusCapExceeded rather than degrading silently.
ThetaJet eval_jet(const PeriodMatrix& tau, const CVec& z, const Characteristic& ch,
                  int order, const EvalConfig& cfg);

/// theta[ch](tau, z) itself.
cx theta_value(const PeriodMatrix& tau, const CVec& z, const Characteristic& ch,
               const EvalConfig& cfg);

/// d theta[ch] / d tau_jk at (tau, z), for the independent coordinates
/// {tau_jk}_{j<=k} of symmetric matrices: equals Hess_z(j,k) / (2 pi i (1+delta_jk))
/// by the heat equation, computed from a single order-2 jet.
cx tau_derivative(const PeriodMatrix& tau, const CVec& z, const Characteristic& ch,
                  int j, int k, const EvalConfig& cfg);

/// Derivative of s -> theta[ch](tau + s E, 0) at s = 0 for a symmetric
/// direction E; equals trace(E Hess_z)/(4 pi i).
cx directional_tau_derivative(const PeriodMatrix& tau, const CMat& E,
                              const Characteristic& ch, const EvalConfig& cfg);

/// | theta[0,0](tau, z + tau eps/2 + delta/2) - kappa * theta[ch](tau, z) |
/// with kappa = exp(pi i (-(eps/2)^t tau (eps/2) - eps^t (z + delta/2))).
double shift_identity_residual(const PeriodMatrix& tau, const CVec& z,
                               const Characteristic& ch, const EvalConfig& cfg);

}  // namespace thetanull
