#pragma once

#include "thetanull/rank.hpp"
#include "thetanull/theta.hpp"

namespace thetanull {

/// The (n+1) x (n+1) symmetric assembly (H dF; dF^t 0) built from the
/// z-gradient and z-Hessian of theta[ch](tau, .) at a point.
struct BorderedHessian {
    CMat H;
    CVec dF;
    CMat B;
    cx theta_at_point;
    double tail_bound = 0.0;
};

BorderedHessian bordered_hessian(const PeriodMatrix& tau, const CVec& x,
                                 const Characteristic& ch, const EvalConfig& cfg);

/// Entry (j,k) = (-1)^{j+k} minor_{jk}(M); satisfies M cof(M)^t = det(M) I.
CMat cofactor_matrix(const CMat& M);

/// eta = dF^t cof(H) dF on the theta divisor; vanishes exactly at the
/// ramification points of the Gauss map. Every call cross-checks the
/// bordered-determinant identity det B = -eta and hard-fails on disagreement.
struct EtaResult {
    cx eta;
    cx det_b;
    bool on_divisor = false;  // |theta(tau,x)| within divisor_tol
    double theta_abs = 0.0;
    double scale = 0.0;  // ||dF||^2 ||H||, the natural magnitude of eta
};

EtaResult eta(const PeriodMatrix& tau, const CVec& x, const Characteristic& ch,
              const EvalConfig& cfg, double divisor_tol = 1e-8);

struct RamificationResult {
    bool ramified = false;
    RankReport report;
    EtaResult eta;
};

/// x must lie on the divisor of theta[ch](tau, .) with nonvanishing gradient;
/// ramification is detected as a rank drop of the bordered Hessian.
RamificationResult is_gauss_ramification(const PeriodMatrix& tau, const CVec& x,
                                         const Characteristic& ch, const EvalConfig& cfg,
                                         double rank_rel_tol = 1e-6,
                                         double divisor_tol = 1e-8);

/// Rank of the bordered Hessian of theta[0,0](tau_prime, .) at z/2 for a
/// genus g-1 period matrix: full rank g certifies that the corresponding
/// boundary degeneration carries an ordinary double point.
RankReport boundary_rank(const PeriodMatrix& tau_prime, const CVec& z, const EvalConfig& cfg,
                         double rank_rel_tol = 1e-6, double divisor_tol = 1e-8);

/// det of the d_matrix of ch at tau: the scalar whose vanishing along
/// theta[ch](tau,0)=0 detects tangent-cone rank drop. Equals
/// det(Hess_z theta[ch](tau,0)) / (2 pi i)^g.
cx hessian_form_F(const PeriodMatrix& tau, const Characteristic& ch, const EvalConfig& cfg);

}  // namespace thetanull
