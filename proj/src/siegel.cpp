#include "thetanull/siegel.hpp"

#include <Eigen/LU>

#include <cmath>
#include <sstream>

namespace thetanull {

namespace {

// Entries are kept small enough that a product of two elements stays far
// from int64 overflow (2g * bound^2 < 2^62).
constexpr std::int64_t kEntryBound = std::int64_t{1} << 28;

void check_entry_bounds(const IMat& m) {
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j)
            require(std::abs(m(i, j)) <= kEntryBound, errc::symplectic_overflow,
                    "integer entry exceeds the safe arithmetic bound");
}

std::int64_t mod_reduced(std::int64_t v, std::int64_t n) {
    std::int64_t r = v % n;
    return r < 0 ? r + n : r;
}

}  // namespace

PeriodMatrix PeriodMatrix::validate(const CMat& raw, double symmetry_tol) {
    require(raw.rows() == raw.cols() && raw.rows() >= 1, errc::invalid_argument,
            "period matrix must be square and nonempty");
    require(symmetry_tol >= 0, errc::invalid_argument, "symmetry tolerance must be nonnegative");
    const int g = static_cast<int>(raw.rows());

    double max_abs = 1.0;
    for (int i = 0; i < g; ++i)
        for (int j = 0; j < g; ++j) max_abs = std::max(max_abs, std::abs(raw(i, j)));
    for (int i = 0; i < g; ++i)
        for (int j = i + 1; j < g; ++j) {
            const double asym = std::abs(raw(i, j) - raw(j, i));
            if (asym > symmetry_tol * max_abs) {
                std::ostringstream os;
                os << "entry (" << i << "," << j << ") asymmetry " << asym
                   << " exceeds tolerance " << symmetry_tol * max_abs;
                fail(errc::not_symmetric, os.str());
            }
        }

    CMat sym = 0.5 * (raw + raw.transpose());
    RMat im = sym.imag();
    const double floor = 1e-12 * std::max(im.trace() / g, 0.0);
    backward_cholesky(im, floor);  // throws if Im is not positive definite
    return PeriodMatrix{std::move(sym)};
}

RMat backward_cholesky(const RMat& A, double pivot_floor) {
    const int n = static_cast<int>(A.rows());
    RMat T = RMat::Zero(n, n);
    for (int i = n - 1; i >= 0; --i) {
        double pivot = A(i, i);
        for (int k = i + 1; k < n; ++k) pivot -= T(k, i) * T(k, i);
        if (!(pivot > pivot_floor))
            fail(errc::imag_not_positive_definite,
                 "pivot " + std::to_string(pivot) + " at index " + std::to_string(i) +
                     " below floor " + std::to_string(pivot_floor));
        T(i, i) = std::sqrt(pivot);
        for (int j = 0; j < i; ++j) {
            double acc = A(i, j);
            for (int k = i + 1; k < n; ++k) acc -= T(k, i) * T(k, j);
            T(i, j) = acc / T(i, i);
        }
    }
    return T;
}

PeriodMatrix direct_sum(const PeriodMatrix& tau1, const PeriodMatrix& tau2) {
    const int g1 = tau1.genus(), g2 = tau2.genus();
    CMat out = CMat::Zero(g1 + g2, g1 + g2);
    out.topLeftCorner(g1, g1) = tau1.tau;
    out.bottomRightCorner(g2, g2) = tau2.tau;
    return PeriodMatrix::unchecked(std::move(out));
}

SymplecticElement::SymplecticElement(IMat a_, IMat b_, IMat c_, IMat d_)
    : a(std::move(a_)), b(std::move(b_)), c(std::move(c_)), d(std::move(d_)) {
    const int g = static_cast<int>(a.rows());
    require(g >= 1, errc::invalid_argument, "empty symplectic element");
    for (const IMat* m : {&a, &b, &c, &d})
        require(m->rows() == g && m->cols() == g, errc::invalid_argument,
                "symplectic blocks must be g x g");
    check_entry_bounds(a);
    check_entry_bounds(b);
    check_entry_bounds(c);
    check_entry_bounds(d);

    // sigma^t J sigma = J, exactly:
    //   a^t c, b^t d symmetric and a^t d - c^t b = 1.
    IMat atc = a.transpose() * c;
    IMat btd = b.transpose() * d;
    IMat atd_ctb = a.transpose() * d - c.transpose() * b;
    require(atc == atc.transpose() && btd == btd.transpose() &&
                atd_ctb == IMat::Identity(g, g),
            errc::invalid_argument, "matrix is not symplectic");
}

SymplecticElement SymplecticElement::identity(int g) {
    return SymplecticElement(IMat::Identity(g, g), IMat::Zero(g, g), IMat::Zero(g, g),
                             IMat::Identity(g, g));
}

SymplecticElement SymplecticElement::inversion(int g) {
    return SymplecticElement(IMat::Zero(g, g), IMat::Identity(g, g),
                             -IMat::Identity(g, g), IMat::Zero(g, g));
}

SymplecticElement SymplecticElement::operator*(const SymplecticElement& rhs) const {
    require(genus() == rhs.genus(), errc::invalid_argument, "genus mismatch");
    return SymplecticElement(a * rhs.a + b * rhs.c, a * rhs.b + b * rhs.d,
                             c * rhs.a + d * rhs.c, c * rhs.b + d * rhs.d);
}

SymplecticElement SymplecticElement::direct_sum(const SymplecticElement& other) const {
    const int g1 = genus(), g2 = other.genus(), g = g1 + g2;
    auto embed = [&](const IMat& m1, const IMat& m2) {
        IMat out = IMat::Zero(g, g);
        out.topLeftCorner(g1, g1) = m1;
        out.bottomRightCorner(g2, g2) = m2;
        return out;
    };
    return SymplecticElement(embed(a, other.a), embed(b, other.b), embed(c, other.c),
                             embed(d, other.d));
}

PeriodMatrix act(const SymplecticElement& sigma, const PeriodMatrix& tau,
                 double cond_threshold) {
    require(sigma.genus() == tau.genus(), errc::invalid_argument, "genus mismatch");
    CMat M = sigma.c.cast<double>().cast<cx>() * tau.tau + sigma.d.cast<double>().cast<cx>();
    Eigen::PartialPivLU<CMat> lu(M);
    CMat Minv = lu.inverse();
    const double cond = M.cwiseAbs().rowwise().sum().maxCoeff() *
                        Minv.cwiseAbs().rowwise().sum().maxCoeff();
    if (!std::isfinite(cond) || cond > cond_threshold)
        fail(errc::numerically_singular,
             "c tau + d has condition estimate " + std::to_string(cond));
    CMat N = sigma.a.cast<double>().cast<cx>() * tau.tau + sigma.b.cast<double>().cast<cx>();
    return PeriodMatrix::validate(N * Minv, 1e-9);
}

bool in_gamma(const SymplecticElement& sigma, std::int64_t n) {
    require(n >= 1, errc::invalid_argument, "level must be positive");
    const int g = sigma.genus();
    const IMat id = IMat::Identity(g, g);
    auto zero_mod = [&](const IMat& m) {
        for (int i = 0; i < g; ++i)
            for (int j = 0; j < g; ++j)
                if (mod_reduced(m(i, j), n) != 0) return false;
        return true;
    };
    return zero_mod(sigma.a - id) && zero_mod(sigma.b) && zero_mod(sigma.c) &&
           zero_mod(sigma.d - id);
}

bool in_gamma_n_2n(const SymplecticElement& sigma, std::int64_t n) {
    if (!in_gamma(sigma, n)) return false;
    const int g = sigma.genus();
    IMat abt = sigma.a * sigma.b.transpose();
    IMat cdt = sigma.c * sigma.d.transpose();
    for (int i = 0; i < g; ++i) {
        if (mod_reduced(abt(i, i), 2 * n) != 0) return false;
        if (mod_reduced(cdt(i, i), 2 * n) != 0) return false;
    }
    return true;
}

Characteristic act_char(const SymplecticElement& sigma, const Characteristic& ch) {
    require(sigma.genus() == ch.genus(), errc::invalid_argument, "genus mismatch");
    const int g = ch.genus();
    IVec e(g), d(g);
    for (int i = 0; i < g; ++i) {
        e[i] = ch.eps[i];
        d[i] = ch.delta[i];
    }
    IVec new_eps = sigma.d * e - sigma.c * d;
    IVec new_delta = -sigma.b * e + sigma.a * d;
    IMat cdt = sigma.c * sigma.d.transpose();
    IMat abt = sigma.a * sigma.b.transpose();
    Eigen::VectorXi re(g), rd(g);
    for (int i = 0; i < g; ++i) {
        re[i] = static_cast<int>(mod_reduced(new_eps[i] + cdt(i, i), 2));
        rd[i] = static_cast<int>(mod_reduced(new_delta[i] + abt(i, i), 2));
    }
    return Characteristic(std::move(re), std::move(rd));
}

}  // namespace thetanull
