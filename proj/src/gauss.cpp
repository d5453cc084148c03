#include "thetanull/gauss.hpp"

#include "thetanull/strata.hpp"

#include <Eigen/LU>

#include <cmath>

namespace thetanull {

namespace {

// own partial-pivot LU determinant, so the cofactor route of eta shares no
// code with the Eigen determinant used for det B
cx det_lu(CMat m) {
    const int n = static_cast<int>(m.rows());
    if (n == 0) return 1.0;
    cx det = 1.0;
    for (int i = 0; i < n; ++i) {
        int piv = i;
        double best = std::abs(m(i, i));
        for (int r = i + 1; r < n; ++r)
            if (std::abs(m(r, i)) > best) {
                best = std::abs(m(r, i));
                piv = r;
            }
        if (best == 0.0) return 0.0;
        if (piv != i) {
            m.row(piv).swap(m.row(i));
            det = -det;
        }
        det *= m(i, i);
        for (int r = i + 1; r < n; ++r) {
            const cx f = m(r, i) / m(i, i);
            for (int col = i + 1; col < n; ++col) m(r, col) -= f * m(i, col);
        }
    }
    return det;
}

CMat drop_row_col(const CMat& M, int row, int col) {
    const int n = static_cast<int>(M.rows());
    CMat out(n - 1, n - 1);
    for (int i = 0, io = 0; i < n; ++i) {
        if (i == row) continue;
        for (int j = 0, jo = 0; j < n; ++j) {
            if (j == col) continue;
            out(io, jo) = M(i, j);
            ++jo;
        }
        ++io;
    }
    return out;
}

}  // namespace

BorderedHessian bordered_hessian(const PeriodMatrix& tau, const CVec& x,
                                 const Characteristic& ch, const EvalConfig& cfg) {
    const int g = tau.genus();
    ThetaJet jet = eval_jet(tau, x, ch, 2, cfg);
    BorderedHessian out;
    out.H = jet.hessian();
    out.dF = jet.gradient();
    out.theta_at_point = jet.value();
    out.tail_bound = jet.tail_bound_used;
    out.B = CMat::Zero(g + 1, g + 1);
    out.B.topLeftCorner(g, g) = out.H;
    out.B.topRightCorner(g, 1) = out.dF;
    out.B.bottomLeftCorner(1, g) = out.dF.transpose();
    return out;
}

CMat cofactor_matrix(const CMat& M) {
    require(M.rows() == M.cols() && M.rows() >= 1, errc::invalid_argument,
            "cofactor matrix needs a square input");
    const int n = static_cast<int>(M.rows());
    CMat out(n, n);
    if (n == 1) {
        out(0, 0) = 1.0;
        return out;
    }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const double sgn = ((i + j) % 2 == 0) ? 1.0 : -1.0;
            out(i, j) = sgn * det_lu(drop_row_col(M, i, j));
        }
    return out;
}

EtaResult eta(const PeriodMatrix& tau, const CVec& x, const Characteristic& ch,
              const EvalConfig& cfg, double divisor_tol) {
    const int g = tau.genus();
    BorderedHessian bh = bordered_hessian(tau, x, ch, cfg);

    EtaResult out;
    const CMat cof = cofactor_matrix(bh.H);
    out.eta = (bh.dF.transpose() * cof * bh.dF)(0, 0);
    out.det_b = bh.B.determinant();
    out.theta_abs = std::abs(bh.theta_at_point);
    out.on_divisor = out.theta_abs <= divisor_tol;
    const double h_norm = bh.H.cwiseAbs().maxCoeff();
    out.scale = bh.dF.squaredNorm() * std::pow(std::max(h_norm, 1e-300), g - 1);

    // det B = -eta is the consistency anchor between the two routes
    double hadamard = 1.0;
    for (int j = 0; j <= g; ++j) hadamard *= bh.B.col(j).norm() + 1e-300;
    const double tol = 1e-8 * (hadamard + std::abs(out.det_b) + std::abs(out.eta) + 1.0);
    if (std::abs(out.det_b + out.eta) > tol)
        throw std::logic_error("bordered-determinant identity violated: det B = " +
                               std::to_string(std::abs(out.det_b)) + ", eta = " +
                               std::to_string(std::abs(out.eta)));
    return out;
}

RamificationResult is_gauss_ramification(const PeriodMatrix& tau, const CVec& x,
                                         const Characteristic& ch, const EvalConfig& cfg,
                                         double rank_rel_tol, double divisor_tol) {
    const int g = tau.genus();
    BorderedHessian bh = bordered_hessian(tau, x, ch, cfg);
    if (std::abs(bh.theta_at_point) > divisor_tol)
        fail(errc::not_on_divisor, "|theta(tau,x)| = " + std::to_string(std::abs(bh.theta_at_point)));
    const double h_norm = std::max(bh.H.cwiseAbs().maxCoeff(), 1.0);
    if (bh.dF.cwiseAbs().maxCoeff() <= 1e-8 * h_norm)
        fail(errc::singular_point_of_theta,
             "gradient vanishes at x: singular point of the theta divisor");

    RamificationResult out;
    out.eta = eta(tau, x, ch, cfg, divisor_tol);
    const double floor = 10.0 * bh.tail_bound;
    out.report = numerical_rank(bh.B, rank_rel_tol, floor);
    out.ramified = out.report.numerical_rank < g + 1;
    return out;
}

RankReport boundary_rank(const PeriodMatrix& tau_prime, const CVec& z, const EvalConfig& cfg,
                         double rank_rel_tol, double divisor_tol) {
    BorderedHessian bh = bordered_hessian(tau_prime, 0.5 * z, Characteristic::zero(tau_prime.genus()), cfg);
    if (std::abs(bh.theta_at_point) > divisor_tol)
        fail(errc::not_on_divisor,
             "|theta(tau', z/2)| = " + std::to_string(std::abs(bh.theta_at_point)));
    return numerical_rank(bh.B, rank_rel_tol, 10.0 * bh.tail_bound);
}

cx hessian_form_F(const PeriodMatrix& tau, const Characteristic& ch, const EvalConfig& cfg) {
    return d_matrix(tau, ch, cfg).determinant();
}

}  // namespace thetanull
