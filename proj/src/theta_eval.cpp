#include "thetanull/theta_internal.hpp"

#include <algorithm>
#include <cmath>

namespace thetanull {

namespace {

void gen_indices(int g, int degree, int coord, std::vector<int>& cur,
                 std::vector<std::vector<int>>& out) {
    if (coord == g - 1) {
        cur[static_cast<std::size_t>(coord)] = degree;
        out.push_back(cur);
        return;
    }
    for (int v = 0; v <= degree; ++v) {
        cur[static_cast<std::size_t>(coord)] = v;
        gen_indices(g, degree - v, coord + 1, cur, out);
    }
}

// complex Neumaier-compensated accumulator; fixed summation order keeps
// results deterministic
struct Accum {
    double re = 0, re_c = 0, im = 0, im_c = 0;

    static void add1(double& s, double& comp, double v) {
        const double t = s + v;
        if (std::abs(s) >= std::abs(v))
            comp += (s - t) + v;
        else
            comp += (v - t) + s;
        s = t;
    }
    void add(cx v) {
        add1(re, re_c, v.real());
        add1(im, im_c, v.imag());
    }
    cx get() const { return {re + re_c, im + im_c}; }
};

}  // namespace

MultiIndexSet MultiIndexSet::make(int g, int order) {
    MultiIndexSet s;
    s.g = g;
    s.order = order;
    std::vector<int> cur(static_cast<std::size_t>(g), 0);
    for (int deg = 0; deg <= order; ++deg) gen_indices(g, deg, 0, cur, s.indices);
    // within a degree the recursion yields lexicographic order already
    return s;
}

int MultiIndexSet::find(const std::vector<int>& alpha) const {
    for (std::size_t i = 0; i < indices.size(); ++i)
        if (indices[i] == alpha) return static_cast<int>(i);
    return -1;
}

cx ThetaJet::value() const { return partials.at(0); }

cx ThetaJet::partial(const std::vector<int>& alpha) const {
    const int idx = mis.find(alpha);
    require(idx >= 0, errc::invalid_argument, "multi-index not in jet");
    return partials[static_cast<std::size_t>(idx)];
}

CVec ThetaJet::gradient() const {
    CVec gvec(genus);
    std::vector<int> alpha(static_cast<std::size_t>(genus), 0);
    for (int i = 0; i < genus; ++i) {
        alpha[static_cast<std::size_t>(i)] = 1;
        gvec[i] = partial(alpha);
        alpha[static_cast<std::size_t>(i)] = 0;
    }
    return gvec;
}

CMat ThetaJet::hessian() const {
    CMat h(genus, genus);
    std::vector<int> alpha(static_cast<std::size_t>(genus), 0);
    for (int i = 0; i < genus; ++i)
        for (int j = 0; j < genus; ++j) {
            alpha[static_cast<std::size_t>(i)] += 1;
            alpha[static_cast<std::size_t>(j)] += 1;
            h(i, j) = partial(alpha);
            alpha[static_cast<std::size_t>(i)] = 0;
            alpha[static_cast<std::size_t>(j)] = 0;
        }
    return h;
}

cx ThetaJet::third(int i, int j, int k) const {
    std::vector<int> alpha(static_cast<std::size_t>(genus), 0);
    alpha[static_cast<std::size_t>(i)] += 1;
    alpha[static_cast<std::size_t>(j)] += 1;
    alpha[static_cast<std::size_t>(k)] += 1;
    return partial(alpha);
}

ThetaJet eval_jet(const PeriodMatrix& tau, const CVec& z, const Characteristic& ch,
                  int order, const EvalConfig& cfg) {
    const int g = tau.genus();
    require(ch.genus() == g && z.size() == g, errc::invalid_argument, "genus mismatch");
    require(cfg.max_derivative_order >= 0 && cfg.max_derivative_order <= 4,
            errc::invalid_argument, "max_derivative_order must lie in [0,4]");
    require(order >= 0 && order <= cfg.max_derivative_order, errc::invalid_argument,
            "derivative order exceeds configured cap");
    require(cfg.target_abs_error > 0 && cfg.max_radius > 0, errc::invalid_argument,
            "tolerances must be positive");

    const LatticeGeometry geo = lattice_geometry(tau);
    const RMat& T = geo.T;

    // center of the Gaussian bulk: eps/2 + Im(tau)^{-1} Im z
    RVec y = z.imag();
    RVec v = T.transpose().triangularView<Eigen::Upper>().solve(y);
    RVec w = T.triangularView<Eigen::Lower>().solve(v);
    RVec yinv = kPi * w;  // Im(tau)^{-1} Im z
    const double mu = yinv.norm();
    const double log_c0 = kPi * y.dot(yinv);

    RVec a(g), center(g);
    for (int i = 0; i < g; ++i) {
        a[i] = 0.5 * ch.eps[i];
        center[i] = a[i] + yinv[i];
    }

    // smallest admissible radius whose certified tail meets the target
    const double r_min = geo.rho + std::max(1.0, std::sqrt(0.5 * (order + g))) + 1e-9;
    if (r_min > cfg.max_radius)
        fail(errc::radius_cap_exceeded, "admissible radius already exceeds max_radius");
    double r_hi = r_min;
    while (shifted_tail_bound(geo, order, r_hi, mu, log_c0) > cfg.target_abs_error) {
        r_hi *= 1.5;
        if (r_hi > cfg.max_radius)
            fail(errc::radius_cap_exceeded,
                 "tail bound cannot meet target within max_radius");
    }
    double r_lo = std::max(r_min, r_hi / 1.5);
    for (int it = 0; it < 60; ++it) {
        const double mid = 0.5 * (r_lo + r_hi);
        if (shifted_tail_bound(geo, order, mid, mu, log_c0) <= cfg.target_abs_error)
            r_hi = mid;
        else
            r_lo = mid;
    }
    const double R = r_hi;

    ThetaJet jet;
    jet.genus = g;
    jet.ch = ch;
    jet.order = order;
    jet.mis = MultiIndexSet::make(g, order);
    jet.radius_used = R;
    jet.tail_bound_used = shifted_tail_bound(geo, order, R, mu, log_c0);

    const std::size_t n_alpha = jet.mis.size();
    std::vector<Accum> acc(n_alpha);

    CVec zb(g);
    for (int i = 0; i < g; ++i) zb[i] = z[i] + 0.5 * static_cast<double>(ch.delta[i]);

    std::vector<std::vector<cx>> pw(static_cast<std::size_t>(g));
    std::int64_t count = 0;
    const cx pii = kPi * kI;

    lattice_points(
        T, center, R,
        [&](const IVec& m) {
            ++count;
            RVec u(g);
            for (int i = 0; i < g; ++i) u[i] = static_cast<double>(m[i]) + a[i];
            // quadratic and linear pieces of the exponent
            cx q = 0;
            for (int i = 0; i < g; ++i) {
                cx row = 0;
                for (int j = 0; j < g; ++j) row += tau.tau(i, j) * u[j];
                q += u[i] * row;
            }
            cx l = 0;
            for (int i = 0; i < g; ++i) l += 2.0 * u[i] * zb[i];
            const cx term = std::exp(pii * (q + l) - log_c0);

            for (int i = 0; i < g; ++i) {
                auto& p = pw[static_cast<std::size_t>(i)];
                p.assign(static_cast<std::size_t>(order) + 1, cx(1.0, 0.0));
                const cx base = 2.0 * pii * u[i];
                for (int k = 1; k <= order; ++k)
                    p[static_cast<std::size_t>(k)] = p[static_cast<std::size_t>(k - 1)] * base;
            }
            for (std::size_t ia = 0; ia < n_alpha; ++ia) {
                cx weight = term;
                const auto& alpha = jet.mis.indices[ia];
                for (int i = 0; i < g; ++i)
                    weight *= pw[static_cast<std::size_t>(i)]
                                [static_cast<std::size_t>(alpha[static_cast<std::size_t>(i)])];
                acc[ia].add(weight);
            }
        },
        cfg.max_lattice_points);

    const double scale = std::exp(log_c0);
    jet.partials.resize(n_alpha);
    for (std::size_t ia = 0; ia < n_alpha; ++ia) jet.partials[ia] = scale * acc[ia].get();
    jet.terms_summed = count;
    return jet;
}

cx theta_value(const PeriodMatrix& tau, const CVec& z, const Characteristic& ch,
               const EvalConfig& cfg) {
    return eval_jet(tau, z, ch, 0, cfg).value();
}

cx tau_derivative(const PeriodMatrix& tau, const CVec& z, const Characteristic& ch,
                  int j, int k, const EvalConfig& cfg) {
    const int g = tau.genus();
    require(j >= 0 && j < g && k >= 0 && k < g, errc::invalid_argument, "index out of range");
    ThetaJet jet = eval_jet(tau, z, ch, 2, cfg);
    const double dk = (j == k) ? 1.0 : 0.0;
    return jet.hessian()(j, k) / (2.0 * kPi * kI * (1.0 + dk));
}

cx directional_tau_derivative(const PeriodMatrix& tau, const CMat& E,
                              const Characteristic& ch, const EvalConfig& cfg) {
    const int g = tau.genus();
    require(E.rows() == g && E.cols() == g, errc::invalid_argument, "direction size mismatch");
    double scale = 1.0;
    for (int i = 0; i < g; ++i)
        for (int j = 0; j < g; ++j) scale = std::max(scale, std::abs(E(i, j)));
    for (int i = 0; i < g; ++i)
        for (int j = i + 1; j < g; ++j)
            require(std::abs(E(i, j) - E(j, i)) <= 1e-12 * scale, errc::invalid_argument,
                    "direction must be symmetric");
    ThetaJet jet = eval_jet(tau, CVec::Zero(g), ch, 2, cfg);
    const cx tr = (E * jet.hessian()).trace();
    return tr / (4.0 * kPi * kI);
}

double shift_identity_residual(const PeriodMatrix& tau, const CVec& z,
                               const Characteristic& ch, const EvalConfig& cfg) {
    const int g = tau.genus();
    require(ch.genus() == g && z.size() == g, errc::invalid_argument, "genus mismatch");
    CVec shift = half_period(tau, ch);
    const cx lhs = theta_value(tau, z + shift, Characteristic::zero(g), cfg);

    // kappa = exp(pi i (-(eps/2)^t tau (eps/2) - eps^t (z + delta/2)))
    cx quad = 0;
    for (int i = 0; i < g; ++i)
        for (int j = 0; j < g; ++j)
            quad += 0.25 * tau.tau(i, j) * static_cast<double>(ch.eps[i]) *
                    static_cast<double>(ch.eps[j]);
    cx lin = 0;
    for (int i = 0; i < g; ++i)
        lin += static_cast<double>(ch.eps[i]) * (z[i] + 0.5 * static_cast<double>(ch.delta[i]));
    const cx kappa = std::exp(kPi * kI * (-quad - lin));
    const cx rhs = kappa * theta_value(tau, z, ch, cfg);
    return std::abs(lhs - rhs);
}

}  // namespace thetanull
