#include "thetanull/strata.hpp"

#include <Eigen/LU>

#include <cmath>

namespace thetanull {

CMat d_matrix(const PeriodMatrix& tau, const Characteristic& ch, const EvalConfig& cfg) {
    ThetaJet jet = eval_jet(tau, CVec::Zero(tau.genus()), ch, 2, cfg);
    return jet.hessian() / (2.0 * kPi * kI);
}

std::vector<std::pair<Characteristic, cx>> theta_constant_vector(const PeriodMatrix& tau,
                                                                 const EvalConfig& cfg) {
    const int g = tau.genus();
    std::vector<std::pair<Characteristic, cx>> out;
    for (const auto& ch : enumerate_even(g))
        out.emplace_back(ch, theta_value(tau, CVec::Zero(g), ch, cfg));
    return out;
}

StratumClassification classify_stratum(const PeriodMatrix& tau, const EvalConfig& cfg,
                                       double vanish_tol, double rank_rel_tol) {
    require(vanish_tol > 0 && rank_rel_tol > 0, errc::invalid_argument,
            "tolerances must be positive");
    const int g = tau.genus();
    StratumClassification out;
    out.vanish_tol_used = vanish_tol;
    out.rank_rel_tol_used = rank_rel_tol;
    out.constants = theta_constant_vector(tau, cfg);
    for (const auto& [ch, v] : out.constants) out.scale = std::max(out.scale, std::abs(v));

    for (const auto& [ch, v] : out.constants) {
        if (std::abs(v) > vanish_tol * out.scale) continue;
        ThetaJet jet = eval_jet(tau, CVec::Zero(g), ch, 2, cfg);
        CMat D = jet.hessian() / (2.0 * kPi * kI);
        // certified floor: the D entries carry the jet tail divided by |2 pi i|
        const double floor =
            10.0 * static_cast<double>(g) * static_cast<double>(g) * jet.tail_bound_used /
            (2.0 * kPi);
        RankReport rep = numerical_rank(D, rank_rel_tol, floor);
        rep.witness = ch;
        out.vanishing.push_back({ch, v, std::move(rep)});
    }
    out.in_theta_null = !out.vanishing.empty();
    if (out.in_theta_null) {
        int mh = g + 1;
        for (const auto& e : out.vanishing) mh = std::min(mh, e.rank.numerical_rank);
        out.min_h = mh;
    }
    return out;
}

DivisorPoint find_on_divisor(const PeriodMatrix& tau0, const CMat& E,
                             const Characteristic& ch, const EvalConfig& cfg,
                             double newton_tol, int max_iter) {
    require(ch.is_even(), errc::invalid_argument,
            "odd characteristics have identically vanishing constants");
    const int g = tau0.genus();
    const CVec z0 = CVec::Zero(g);

    cx s = 0.0;
    PeriodMatrix cur = tau0;
    cx val = theta_value(cur, z0, ch, cfg);
    for (int it = 0; it < max_iter; ++it) {
        if (std::abs(val) <= newton_tol) return {s, cur, std::abs(val), it};
        const cx deriv = directional_tau_derivative(cur, E, ch, cfg);
        require(std::abs(deriv) > 0, errc::no_convergence, "vanishing derivative along E");
        cx step = -val / deriv;
        bool accepted = false;
        bool ever_inside = false;
        for (int halve = 0; halve <= 30; ++halve) {
            const cx s_try = s + step;
            CMat cand = tau0.tau + s_try * E;
            PeriodMatrix next;
            try {
                next = PeriodMatrix::validate(cand, 1e-6);
            } catch (const theta_error&) {
                step *= 0.5;
                continue;
            }
            ever_inside = true;
            const cx val_try = theta_value(next, z0, ch, cfg);
            if (std::abs(val_try) < std::abs(val) || std::abs(val_try) <= newton_tol) {
                s = s_try;
                cur = next;
                val = val_try;
                accepted = true;
                break;
            }
            step *= 0.5;
        }
        if (!accepted) {
            if (!ever_inside)
                fail(errc::left_siegel_space,
                     "damped step cannot re-enter the Siegel upper half-space");
            fail(errc::no_convergence, "step damping exhausted without decrease");
        }
    }
    if (std::abs(val) <= newton_tol) return {s, cur, std::abs(val), max_iter};
    fail(errc::no_convergence,
         "|theta| = " + std::to_string(std::abs(val)) + " after " + std::to_string(max_iter) +
             " iterations");
}

double modular_weight_check_squared(const SymplecticElement& sigma, const PeriodMatrix& tau,
                                    const Characteristic& ch, const EvalConfig& cfg) {
    require(in_gamma_n_2n(sigma, 4), errc::not_in_gamma48,
            "element is not in Gamma_g(4,8)");
    const int g = tau.genus();
    const PeriodMatrix tau2 = act(sigma, tau);
    const cx v1 = theta_value(tau, CVec::Zero(g), ch, cfg);
    const cx v2 = theta_value(tau2, CVec::Zero(g), ch, cfg);
    const CMat M =
        sigma.c.cast<double>().cast<cx>() * tau.tau + sigma.d.cast<double>().cast<cx>();
    const cx det = M.determinant();
    return std::abs(v2 * v2 - det * v1 * v1);
}

}  // namespace thetanull
