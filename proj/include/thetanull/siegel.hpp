#pragma once

#include "thetanull/characteristics.hpp"
#include "thetanull/types.hpp"

namespace thetanull {

/// A point of the Siegel upper half-space: complex symmetric with
/// positive definite imaginary part. Construct through validate() so the
/// invariants are certified; internal operations that preserve them use
/// the unchecked constructor.
struct PeriodMatrix {
    CMat tau;

    int genus() const { return static_cast<int>(tau.rows()); }

    /// Symmetrizes (raw + raw^t)/2 after checking the asymmetry is within
    /// symmetry_tol * max(1, max|entry|), then certifies Im > 0 by a
    /// floored triangular factorization of Im.
    static PeriodMatrix validate(const CMat& raw, double symmetry_tol = 1e-9);

    static PeriodMatrix unchecked(CMat symmetric) { return PeriodMatrix{std::move(symmetric)}; }
};

/// Factor A = T^t T with T real lower triangular, processing pivots from the
/// bottom-right corner. Every pivot must exceed pivot_floor; failure means A
/// is not (numerically) positive definite. This is the factorization shared
/// by the Siegel validator and the lattice enumerator.
RMat backward_cholesky(const RMat& A, double pivot_floor);

/// Block-diagonal assembly diag(tau1, tau2) of genus g1+g2.
PeriodMatrix direct_sum(const PeriodMatrix& tau1, const PeriodMatrix& tau2);

/// Integer symplectic matrix in g x g block form (a b; c d).
/// The defining relation sigma^t J sigma = J is checked in exact integer
/// arithmetic on construction; entries are bounded so that products of two
/// elements cannot wrap around in 64 bits.
struct SymplecticElement {
    IMat a, b, c, d;

    SymplecticElement(IMat a_, IMat b_, IMat c_, IMat d_);
    static SymplecticElement identity(int g);
    static SymplecticElement inversion(int g);  // (0 I; -I 0)

    int genus() const { return static_cast<int>(a.rows()); }
    SymplecticElement operator*(const SymplecticElement& rhs) const;

    /// Block-diagonal embedding acting on direct sums.
    SymplecticElement direct_sum(const SymplecticElement& other) const;
};

/// sigma . tau = (a tau + b)(c tau + d)^{-1}. Raises NumericallySingular if
/// c tau + d is too ill-conditioned to invert reliably.
PeriodMatrix act(const SymplecticElement& sigma, const PeriodMatrix& tau,
                 double cond_threshold = 1e12);

/// Principal congruence subgroup: sigma == 1 mod n.
bool in_gamma(const SymplecticElement& sigma, std::int64_t n);
/// Igusa subgroup: additionally diag(a b^t) == diag(c d^t) == 0 mod 2n.
bool in_gamma_n_2n(const SymplecticElement& sigma, std::int64_t n);

/// sigma(eps; delta) = (d, -c; -b, a)(eps; delta) + (diag(c d^t); diag(a b^t)),
/// reduced mod 2. Defined on all of Sp(g, Z).
Characteristic act_char(const SymplecticElement& sigma, const Characteristic& ch);

}  // namespace thetanull
