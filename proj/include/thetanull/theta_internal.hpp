#pragma once

#include "thetanull/theta.hpp"

namespace thetanull {

/// Shared truncation geometry derived from pi * Im(tau) = T^t T.
struct LatticeGeometry {
    int g = 0;
    RMat T;            // lower triangular factor
    double rho = 0;    // shortest nonzero vector of T Z^g
    double sigma_min = 0;
};

LatticeGeometry lattice_geometry(const PeriodMatrix& tau);

/// Tail bound for the ellipsoid cutoff ||T(m+c)|| <= R at a point with
/// mu = ||Im(tau)^{-1} Im z|| and log_c0 = pi * Im(z)^t Im(tau)^{-1} Im(z),
/// covering every partial of order <= order.
double shifted_tail_bound(const LatticeGeometry& geo, int order, double R, double mu,
                          double log_c0);

}  // namespace thetanull
