#pragma once

#include "thetanull/rank.hpp"
#include "thetanull/theta.hpp"

#include <string>
#include <utility>
#include <vector>

namespace thetanull {

/// Jacobian of the defining equations of the universal singularity scheme S
/// (theta and its z-gradient) or of S_null (theta and z = half-period),
/// with respect to the coordinates (tau_11, tau_12, ..., tau_gg | z_1, ..., z_g).
/// Rows: the g+1 equation gradients. tau-columns of theta rows are obtained
/// from z-jets through the heat equation.
struct SchemeJacobian {
    enum class Which { s, s_null };
    Which which = Which::s;
    int genus = 0;
    CMat entries;  // (g+1) x (g(g+1)/2 + g)
    std::vector<std::string> column_names;
    double tail_bound = 0.0;
    double theta_residual = 0.0;     // |theta| at the point
    double gradient_residual = 0.0;  // max |d theta/d z_i| at the point
};

std::vector<std::string> scheme_column_names(int g);

/// Jacobian of (Sn): theta(tau,z) = 0, d theta/d z_i (tau,z) = 0.
SchemeJacobian sing_S_jacobian(const PeriodMatrix& tau, const CVec& z, const EvalConfig& cfg);

/// Requires (tau,z) to satisfy (Sn) within res_tol; reports the numerical
/// rank and whether it is <= g, i.e. whether (tau,z) lies on Sing S.
std::pair<RankReport, bool> sing_S_rank_test(const PeriodMatrix& tau, const CVec& z,
                                             const EvalConfig& cfg, double res_tol = 1e-8,
                                             double rank_rel_tol = 1e-6);

/// Jacobian of S_null at the half-period of an even characteristic:
/// row 0 is the gradient of theta there, rows 1..g the gradients of the
/// constraints z_i - ((tau eps + delta)/2)_i.
SchemeJacobian snull_jacobian(const PeriodMatrix& tau, const Characteristic& ch,
                              const EvalConfig& cfg);

/// True iff theta[ch](tau, .) vanishes at 0 to order >= 4: the constant and
/// all second z-partials below tolerance (odd orders vanish by parity).
bool order_four_diagnostic(const PeriodMatrix& tau, const Characteristic& ch,
                           const EvalConfig& cfg, double tol = 1e-8);

}  // namespace thetanull
