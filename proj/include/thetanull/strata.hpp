#pragma once

#include "thetanull/rank.hpp"
#include "thetanull/theta.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace thetanull {

/// Tangent-cone matrix of the theta constant of ch at its 2-torsion point,
/// normalized as Hess_z theta[ch](tau, 0) / (2 pi i). Symmetric g x g; its
/// rank is the rank of the quadric cutting out the tangent cone.
CMat d_matrix(const PeriodMatrix& tau, const Characteristic& ch, const EvalConfig& cfg);

/// Values of all even theta constants, in enumerate_even order.
std::vector<std::pair<Characteristic, cx>> theta_constant_vector(const PeriodMatrix& tau,
                                                                 const EvalConfig& cfg);

struct VanishingEntry {
    Characteristic ch;
    cx constant;
    RankReport rank;
};

/// Which even constants vanish at tau (relative to the largest one), and the
/// tangent-cone rank at each vanishing 2-torsion point. min_h is the least
/// such rank; tolerances are recorded for reproducibility.
struct StratumClassification {
    std::vector<std::pair<Characteristic, cx>> constants;
    std::vector<VanishingEntry> vanishing;
    std::optional<int> min_h;
    bool in_theta_null = false;
    double vanish_tol_used = 0.0;
    double rank_rel_tol_used = 0.0;
    double scale = 0.0;  // max |even constant|
};

StratumClassification classify_stratum(const PeriodMatrix& tau, const EvalConfig& cfg,
                                       double vanish_tol = 1e-9,
                                       double rank_rel_tol = 1e-6);

struct DivisorPoint {
    cx s;
    PeriodMatrix tau;
    double residual = 0.0;
    int iterations = 0;
};

/// Newton iteration on s -> theta[ch](tau0 + s E, 0) with the exact
/// directional derivative; steps are halved while |theta| fails to decrease
/// or the candidate leaves the Siegel upper half-space.
DivisorPoint find_on_divisor(const PeriodMatrix& tau0, const CMat& E,
                             const Characteristic& ch, const EvalConfig& cfg,
                             double newton_tol = 1e-11, int max_iter = 50);

/// Residual |theta[ch](sigma.tau, 0)^2 - det(c tau + d) theta[ch](tau, 0)^2|
/// for sigma in Gamma_g(4,8); squaring removes the square-root branch of the
/// transformation factor.
double modular_weight_check_squared(const SymplecticElement& sigma, const PeriodMatrix& tau,
                                    const Characteristic& ch, const EvalConfig& cfg);

}  // namespace thetanull
