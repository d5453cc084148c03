#include "thetanull/theta_internal.hpp"

#include <Eigen/SVD>

#include <cmath>
#include <limits>

namespace thetanull {

namespace {

// I_j(L) = integral_L^infty t^j exp(-t^2) dt, j >= 0, by the recurrence
// I_j = ((j-1)/2) I_{j-2} + (1/2) L^{j-1} exp(-L^2).
std::vector<double> gaussian_moment_integrals(int jmax, double L) {
    std::vector<double> I(static_cast<std::size_t>(jmax) + 1, 0.0);
    const double e = std::exp(-L * L);
    I[0] = 0.5 * std::sqrt(kPi) * std::erfc(L);
    if (jmax >= 1) I[1] = 0.5 * e;
    double Lpow = L;  // L^{j-1} for j = 2
    for (int j = 2; j <= jmax; ++j) {
        I[static_cast<std::size_t>(j)] =
            0.5 * (j - 1) * I[static_cast<std::size_t>(j - 2)] + 0.5 * Lpow * e;
        Lpow *= L;
    }
    return I;
}

double binom(int n, int k) {
    double r = 1.0;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

}  // namespace

LatticeGeometry lattice_geometry(const PeriodMatrix& tau) {
    const int g = tau.genus();
    RMat A = kPi * tau.tau.imag();
    const double floor = 1e-12 * std::max(A.trace() / g, 0.0);
    LatticeGeometry geo;
    geo.g = g;
    geo.T = backward_cholesky(A, floor);

    Eigen::JacobiSVD<RMat> svd(geo.T);
    geo.sigma_min = svd.singularValues()(g - 1);

    // shortest nonzero vector of T Z^g: seed with the shortest column image,
    // then scan the ball of that radius
    double r0 = std::numeric_limits<double>::infinity();
    for (int j = 0; j < g; ++j) r0 = std::min(r0, geo.T.col(j).norm());
    double best = r0;
    lattice_points(
        geo.T, RVec::Zero(g), r0,
        [&](const IVec& m) {
            if (m.isZero()) return;
            RVec u = m.cast<double>();
            best = std::min(best, (geo.T * u).norm());
        },
        1'000'000);
    geo.rho = best;
    return geo;
}

double shifted_tail_bound(const LatticeGeometry& geo, int order, double R, double mu,
                          double log_c0) {
    const int g = geo.g;
    const double rho = geo.rho;
    const double L = R - rho;
    // the comparison integrand (t/sigma+mu)^k (t+rho/2)^{g-1} e^{-t^2} must be
    // decreasing on [L, inf)
    const double margin = std::max(1.0, std::sqrt(0.5 * (order + g)));
    if (!(L >= margin)) return std::numeric_limits<double>::infinity();

    const int jmax = order + g - 1;
    const std::vector<double> I = gaussian_moment_integrals(jmax, L);
    const double prefix = std::exp(log_c0) * g * std::pow(2.0 / rho, g);

    double worst = 0.0;
    for (int k = 0; k <= order; ++k) {
        // coefficients of (t/sigma + mu)^k (t + rho/2)^{g-1}
        std::vector<double> c(static_cast<std::size_t>(k + g), 0.0);
        for (int p = 0; p <= k; ++p) {
            const double cp =
                binom(k, p) * std::pow(1.0 / geo.sigma_min, p) * std::pow(mu, k - p);
            for (int q = 0; q <= g - 1; ++q) {
                const double cq = binom(g - 1, q) * std::pow(0.5 * rho, g - 1 - q);
                c[static_cast<std::size_t>(p + q)] += cp * cq;
            }
        }
        double sum = 0.0;
        for (int j = 0; j <= k + g - 1; ++j)
            sum += c[static_cast<std::size_t>(j)] * I[static_cast<std::size_t>(j)];
        worst = std::max(worst, prefix * std::pow(2.0 * kPi, k) * sum);
    }
    return worst;
}

double tail_bound(const PeriodMatrix& tau, int order, double R) {
    require(order >= 0, errc::invalid_argument, "order must be nonnegative");
    return shifted_tail_bound(lattice_geometry(tau), order, R, 0.0, 0.0);
}

}  // namespace thetanull
