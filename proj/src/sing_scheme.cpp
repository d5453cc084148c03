#include "thetanull/sing_scheme.hpp"

#include <cmath>

namespace thetanull {

namespace {

std::vector<std::pair<int, int>> tau_columns(int g) {
    std::vector<std::pair<int, int>> cols;
    for (int j = 0; j < g; ++j)
        for (int k = j; k < g; ++k) cols.emplace_back(j, k);
    return cols;
}

}  // namespace

std::vector<std::string> scheme_column_names(int g) {
    std::vector<std::string> names;
    for (const auto& [j, k] : tau_columns(g))
        names.push_back("tau_" + std::to_string(j + 1) + std::to_string(k + 1));
    for (int i = 0; i < g; ++i) names.push_back("z_" + std::to_string(i + 1));
    return names;
}

SchemeJacobian sing_S_jacobian(const PeriodMatrix& tau, const CVec& z, const EvalConfig& cfg) {
    const int g = tau.genus();
    const auto tc = tau_columns(g);
    const int ntau = static_cast<int>(tc.size());

    // a single order-3 jet feeds the whole matrix
    ThetaJet jet = eval_jet(tau, z, Characteristic::zero(g), 3, cfg);

    SchemeJacobian out;
    out.which = SchemeJacobian::Which::s;
    out.genus = g;
    out.column_names = scheme_column_names(g);
    out.tail_bound = jet.tail_bound_used;
    out.entries = CMat::Zero(g + 1, ntau + g);

    const CVec grad = jet.gradient();
    const CMat hess = jet.hessian();
    out.theta_residual = std::abs(jet.value());
    out.gradient_residual = grad.size() ? grad.cwiseAbs().maxCoeff() : 0.0;

    for (int col = 0; col < ntau; ++col) {
        const auto [j, k] = tc[static_cast<std::size_t>(col)];
        const cx heat = 2.0 * kPi * kI * (j == k ? 2.0 : 1.0);
        out.entries(0, col) = hess(j, k) / heat;
        for (int i = 0; i < g; ++i) out.entries(i + 1, col) = jet.third(i, j, k) / heat;
    }
    for (int i = 0; i < g; ++i) {
        out.entries(0, ntau + i) = grad[i];
        for (int r = 0; r < g; ++r) out.entries(r + 1, ntau + i) = hess(r, i);
    }
    return out;
}

std::pair<RankReport, bool> sing_S_rank_test(const PeriodMatrix& tau, const CVec& z,
                                             const EvalConfig& cfg, double res_tol,
                                             double rank_rel_tol) {
    SchemeJacobian jac = sing_S_jacobian(tau, z, cfg);
    if (jac.theta_residual > res_tol || jac.gradient_residual > res_tol)
        fail(errc::not_on_singularity_scheme,
             "residuals |theta| = " + std::to_string(jac.theta_residual) +
                 ", max|grad| = " + std::to_string(jac.gradient_residual) +
                 " exceed tolerance " + std::to_string(res_tol));
    RankReport rep = numerical_rank(jac.entries, rank_rel_tol, 10.0 * jac.tail_bound);
    const bool in_sing_s = rep.numerical_rank <= tau.genus();
    return {std::move(rep), in_sing_s};
}

SchemeJacobian snull_jacobian(const PeriodMatrix& tau, const Characteristic& ch,
                              const EvalConfig& cfg) {
    require(ch.is_even(), errc::invalid_argument, "S_null is indexed by even characteristics");
    const int g = tau.genus();
    const auto tc = tau_columns(g);
    const int ntau = static_cast<int>(tc.size());

    const CVec x = half_period(tau, ch);
    ThetaJet jet = eval_jet(tau, x, Characteristic::zero(g), 2, cfg);

    SchemeJacobian out;
    out.which = SchemeJacobian::Which::s_null;
    out.genus = g;
    out.column_names = scheme_column_names(g);
    out.tail_bound = jet.tail_bound_used;
    out.entries = CMat::Zero(g + 1, ntau + g);
    out.theta_residual = std::abs(jet.value());
    out.gradient_residual = jet.gradient().cwiseAbs().maxCoeff();

    const CVec grad = jet.gradient();
    const CMat hess = jet.hessian();
    for (int col = 0; col < ntau; ++col) {
        const auto [j, k] = tc[static_cast<std::size_t>(col)];
        const cx heat = 2.0 * kPi * kI * (j == k ? 2.0 : 1.0);
        out.entries(0, col) = hess(j, k) / heat;
        // gradient of z_i - ((tau eps + delta)/2)_i in tau_jk
        for (int i = 0; i < g; ++i) {
            double v = 0.0;
            if (i == j) v += 0.5 * ch.eps[k];
            if (i == k && j != k) v += 0.5 * ch.eps[j];
            out.entries(i + 1, col) = -v;
        }
    }
    for (int i = 0; i < g; ++i) {
        out.entries(0, ntau + i) = grad[i];
        out.entries(i + 1, ntau + i) = 1.0;
    }
    return out;
}

bool order_four_diagnostic(const PeriodMatrix& tau, const Characteristic& ch,
                           const EvalConfig& cfg, double tol) {
    require(ch.is_even(), errc::invalid_argument, "diagnostic applies to even characteristics");
    const int g = tau.genus();
    ThetaJet jet = eval_jet(tau, CVec::Zero(g), ch, 4, cfg);
    double order4_scale = 1.0;
    for (std::size_t i = 0; i < jet.mis.size(); ++i) {
        int deg = 0;
        for (int d : jet.mis.indices[i]) deg += d;
        if (deg == 4) order4_scale = std::max(order4_scale, std::abs(jet.partials[i]));
    }
    if (std::abs(jet.value()) > tol * order4_scale) return false;
    const CMat hess = jet.hessian();
    for (int i = 0; i < g; ++i)
        for (int j = 0; j < g; ++j)
            if (std::abs(hess(i, j)) > tol * order4_scale) return false;
    return true;
}

}  // namespace thetanull
