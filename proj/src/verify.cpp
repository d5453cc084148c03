#include "thetanull/verify.hpp"

#include <Eigen/LU>

#include <algorithm>
#include <cmath>

namespace thetanull::verify {

namespace {

constexpr double kHeatTol = 1e-7;
constexpr double kShiftTol = 1e-10;
constexpr double kFactorizationTol = 1e-11;
constexpr double kJacobiTol = 1e-10;
constexpr double kModularTol = 1e-9;
constexpr double kEtaIdentityTol = 1e-10;
constexpr double kParityTol = 1e-11;
constexpr double kBoundaryZeroTol = 1e-8;    // det measure at odd half-periods
constexpr double kBoundaryNonzeroTol = 1e-4; // det measure at generic points
constexpr double kFdStep = 1e-5;

void push_case(SuiteReport& rep, std::string label, double residual, double tol) {
    const bool ok = residual < tol;
    rep.max_residual = std::max(rep.max_residual, residual);
    rep.pass = rep.pass && ok;
    rep.cases.push_back({std::move(label), residual, ok});
}

SuiteReport heat_suite(int samples, std::uint64_t seed, const EvalConfig& cfg, double tol) {
    SuiteReport rep{"heat", seed, samples, tol, 0.0, true, {}};
    Rng rng(seed);
    for (int i = 0; i < samples; ++i) {
        const int g = 1 + i % 3;
        const PeriodMatrix tau = random_period(g, rng);
        const CVec z = random_z(g, rng);
        std::vector<Characteristic> chars = enumerate_even(g);
        if (g == 3) {
            std::vector<Characteristic> pick;
            for (int t = 0; t < 4; ++t)
                pick.push_back(chars[static_cast<std::size_t>(
                    rng.uniform_int(0, static_cast<std::int64_t>(chars.size()) - 1))]);
            chars = std::move(pick);
        }
        for (const auto& ch : chars) {
            const ThetaJet jet = eval_jet(tau, z, ch, 2, cfg);
            const CMat H = jet.hessian();
            const double hmax = std::max(H.cwiseAbs().maxCoeff(), 1e-30);
            double worst = 0.0;
            for (int j = 0; j < g; ++j)
                for (int k = j; k < g; ++k) {
                    const CMat E = symmetric_unit(g, j, k);
                    const PeriodMatrix tp = PeriodMatrix::unchecked(tau.tau + kFdStep * E);
                    const PeriodMatrix tm = PeriodMatrix::unchecked(tau.tau - kFdStep * E);
                    const cx fd =
                        (theta_value(tp, z, ch, cfg) - theta_value(tm, z, ch, cfg)) /
                        (2.0 * kFdStep);
                    const double dk = (j == k) ? 1.0 : 0.0;
                    const cx lhs = H(j, k);
                    const cx rhs = 2.0 * kPi * kI * (1.0 + dk) * fd;
                    worst = std::max(worst, std::abs(lhs - rhs) / hmax);
                }
            push_case(rep, "g" + std::to_string(g) + " sample " + std::to_string(i) + " ch " +
                          ch.str(),
                      worst, tol);
        }
    }
    return rep;
}

SuiteReport shift_suite(int samples, std::uint64_t seed, const EvalConfig& cfg, double tol) {
    SuiteReport rep{"shift", seed, samples, tol, 0.0, true, {}};
    Rng rng(seed);
    for (int i = 0; i < samples; ++i) {
        const int g = 1 + i % 2;
        const auto chars = enumerate_all(g);
        const PeriodMatrix tau = random_period(g, rng);
        const CVec z = random_z(g, rng);
        const Characteristic ch = chars[static_cast<std::size_t>(i) % chars.size()];
        const double res = shift_identity_residual(tau, z, ch, cfg);
        push_case(rep, "g" + std::to_string(g) + " ch " + ch.str(), res, tol);
    }
    return rep;
}

SuiteReport factorization_suite(int samples, std::uint64_t seed, const EvalConfig& cfg,
                                double tol) {
    SuiteReport rep{"factorization", seed, samples, tol, 0.0, true, {}};
    Rng rng(seed);
    const auto chars1 = enumerate_all(1);
    for (int i = 0; i < samples; ++i) {
        const PeriodMatrix t1 = random_period(1, rng);
        const PeriodMatrix t2 = random_period(1, rng);
        const CVec z1 = random_z(1, rng), z2 = random_z(1, rng);
        const Characteristic c1 = chars1[static_cast<std::size_t>(i) % 4];
        const Characteristic c2 = chars1[static_cast<std::size_t>(i / 4) % 4];
        const PeriodMatrix ts = direct_sum(t1, t2);
        CVec z(2);
        z << z1[0], z2[0];
        const cx lhs = theta_value(ts, z, c1.direct_sum(c2), cfg);
        const cx rhs = theta_value(t1, z1, c1, cfg) * theta_value(t2, z2, c2, cfg);
        push_case(rep, "ch " + c1.str() + " x " + c2.str(), std::abs(lhs - rhs), tol);
    }
    return rep;
}

SuiteReport jacobi_suite(int samples, std::uint64_t seed, const EvalConfig& cfg, double tol) {
    SuiteReport rep{"jacobi", seed, samples, tol, 0.0, true, {}};
    Rng rng(seed);
    const CVec z0 = CVec::Zero(1);
    const auto c00 = Characteristic::from_bits({0}, {0});
    const auto c01 = Characteristic::from_bits({0}, {1});
    const auto c10 = Characteristic::from_bits({1}, {0});
    for (int i = 0; i < samples; ++i) {
        const PeriodMatrix tau = random_period(1, rng);
        const cx a = theta_value(tau, z0, c00, cfg);
        const cx b = theta_value(tau, z0, c01, cfg);
        const cx c = theta_value(tau, z0, c10, cfg);
        const cx lhs = a * a * a * a;
        const double res = std::abs(lhs - b * b * b * b - c * c * c * c) /
                           std::max(1.0, std::abs(lhs));
        push_case(rep, "sample " + std::to_string(i), res, tol);
    }
    return rep;
}

SuiteReport modular_suite(int samples, std::uint64_t seed, const EvalConfig& cfg, double tol) {
    SuiteReport rep{"modular", seed, samples, tol, 0.0, true, {}};
    Rng rng(seed);

    IMat one = IMat::Identity(1, 1), zero = IMat::Zero(1, 1), eight = 8 * one;
    const SymplecticElement upper(one, eight, zero, one);
    const SymplecticElement lower(one, zero, eight, one);
    struct Listed {
        SymplecticElement sigma;
        std::string label;
    };
    std::vector<Listed> listed;
    listed.push_back({upper, "g1 (1,8;0,1)"});
    listed.push_back({lower, "g1 (1,0;8,1)"});
    listed.push_back({upper.direct_sum(lower), "g2 (1,8;0,1)+(1,0;8,1)"});
    listed.push_back({lower.direct_sum(upper), "g2 (1,0;8,1)+(1,8;0,1)"});

    for (const auto& item : listed) {
        const int g = item.sigma.genus();
        PeriodMatrix tau = g == 1 ? PeriodMatrix::validate((CMat(1, 1) << cx(0, 1)).finished())
                                  : PeriodMatrix::validate(
                                        (CMat(2, 2) << cx(0, 1), 0, 0, cx(0, 2)).finished());
        const double res = modular_weight_check_squared(item.sigma, tau, enumerate_even(g)[0], cfg);
        push_case(rep, item.label, res, tol);
    }

    for (int i = 0; i < samples; ++i) {
        const int g = 1 + i % 2;
        const PeriodMatrix tau = random_period(g, rng);
        const SymplecticElement sigma = random_gamma48_conditioned(g, rng, tau);
        const auto evens = enumerate_even(g);
        const Characteristic ch = evens[static_cast<std::size_t>(
            rng.uniform_int(0, static_cast<std::int64_t>(evens.size()) - 1))];
        const double res = modular_weight_check_squared(sigma, tau, ch, cfg);
        push_case(rep, "g" + std::to_string(g) + " word " + std::to_string(i) + " ch " + ch.str(),
                  res, tol);
    }
    return rep;
}

SuiteReport eta_identity_suite(int samples, std::uint64_t seed, double tol) {
    SuiteReport rep{"eta-identity", seed, samples, tol, 0.0, true, {}};
    Rng rng(seed);

    {
        CMat H = CMat::Identity(2, 2);
        CVec dF(2);
        dF << 1.0, 2.0;
        CMat B = CMat::Zero(3, 3);
        B.topLeftCorner(2, 2) = H;
        B.topRightCorner(2, 1) = dF;
        B.bottomLeftCorner(1, 2) = dF.transpose();
        const cx det_b = B.determinant();
        const cx e = (dF.transpose() * cofactor_matrix(H) * dF)(0, 0);
        const double res = std::max(std::abs(det_b - cx(-5.0)), std::abs(e - cx(5.0)));
        push_case(rep, "exact H=I2 dF=(1,2)", res, tol);
    }

    for (int i = 0; i < samples; ++i) {
        const int n = 1 + i % 5;
        const CMat H = random_symmetric_complex(n, rng);
        CVec dF(n);
        for (int j = 0; j < n; ++j) dF[j] = rng.box(1.0);
        CMat B = CMat::Zero(n + 1, n + 1);
        B.topLeftCorner(n, n) = H;
        B.topRightCorner(n, 1) = dF;
        B.bottomLeftCorner(1, n) = dF.transpose();
        const cx det_b = B.determinant();
        const cx e = (dF.transpose() * cofactor_matrix(H) * dF)(0, 0);
        const double res =
            std::abs(det_b + e) / std::max({std::abs(det_b), std::abs(e), 1e-30});
        push_case(rep, "n=" + std::to_string(n) + " sample " + std::to_string(i), res, tol);
    }
    return rep;
}

SuiteReport parity_suite(int samples, std::uint64_t seed, const EvalConfig& cfg, double tol) {
    SuiteReport rep{"parity", seed, samples, tol, 0.0, true, {}};
    Rng rng(seed);
    for (int i = 0; i < samples; ++i) {
        const int g = 1 + i % 3;
        const PeriodMatrix tau = random_period(g, rng);
        const CVec z = random_z(g, rng);
        std::vector<Characteristic> chars = enumerate_all(g);
        if (g == 3) {
            std::vector<Characteristic> pick;
            for (int t = 0; t < 8; ++t)
                pick.push_back(chars[static_cast<std::size_t>(
                    rng.uniform_int(0, static_cast<std::int64_t>(chars.size()) - 1))]);
            chars = std::move(pick);
        }
        double worst = 0.0;
        for (const auto& ch : chars) {
            const cx plus = theta_value(tau, z, ch, cfg);
            const cx minus = theta_value(tau, -z, ch, cfg);
            const double sgn = ch.is_even() ? 1.0 : -1.0;
            worst = std::max(worst, std::abs(minus - sgn * plus));
            if (!ch.is_even())
                worst = std::max(worst,
                                 std::abs(theta_value(tau, CVec::Zero(g), ch, cfg)));
        }
        push_case(rep, "g" + std::to_string(g) + " sample " + std::to_string(i), worst, tol);
    }
    return rep;
}

SuiteReport boundary_suite(int samples, std::uint64_t seed, const EvalConfig& cfg,
                           double tol) {
    SuiteReport rep{"boundary", seed, samples, tol, 0.0, true, {}};
    Rng rng(seed);
    const PeriodMatrix tau = smooth_g2_tau();

    auto det_measure = [&](const CVec& x) {
        const BorderedHessian bh = bordered_hessian(tau, x, Characteristic::zero(2), cfg);
        const double scale =
            bh.dF.squaredNorm() * std::max(bh.H.cwiseAbs().maxCoeff(), 1e-300);
        return std::abs(bh.B.determinant()) / scale;
    };

    // the determinant must vanish at the six odd half-periods
    for (const auto& ch : enumerate_odd(2)) {
        const double m = det_measure(half_period(tau, ch));
        push_case(rep, "odd half-period " + ch.str(), m, tol);
    }

    // and be bounded away from zero at generic divisor points
    int nonzero = 0;
    double worst_generic = std::numeric_limits<double>::infinity();
    for (int i = 0; i < samples; ++i) {
        const CVec x = newton_theta_point(tau, rng, cfg);
        const double m = det_measure(x);
        worst_generic = std::min(worst_generic, m);
        if (m > kBoundaryNonzeroTol) ++nonzero;
    }
    const bool generic_ok = nonzero >= samples - (samples + 39) / 40;  // >= 97.5%
    rep.pass = rep.pass && generic_ok;
    rep.cases.push_back({"generic points nonzero " + std::to_string(nonzero) + "/" +
                             std::to_string(samples) + " (min measure " +
                             std::to_string(worst_generic) + ")",
                         static_cast<double>(samples - nonzero), generic_ok});
    return rep;
}

}  // namespace

std::int64_t Rng::uniform_int(std::int64_t a, std::int64_t b) {
    const auto span = static_cast<std::uint64_t>(b - a + 1);
    return a + static_cast<std::int64_t>(bits() % span);
}

PeriodMatrix random_period(int g, Rng& rng) {
    RMat re(g, g), b(g, g);
    for (int i = 0; i < g; ++i)
        for (int j = 0; j < g; ++j) {
            re(i, j) = rng.uniform(-0.4, 0.4);
            b(i, j) = rng.uniform(-0.3, 0.3);
        }
    RMat res = 0.5 * (re + re.transpose());
    RMat im = b * b.transpose() + rng.uniform(0.7, 1.1) * RMat::Identity(g, g);
    CMat tau(g, g);
    for (int i = 0; i < g; ++i)
        for (int j = 0; j < g; ++j) tau(i, j) = cx(res(i, j), im(i, j));
    return PeriodMatrix::validate(tau);
}

CVec random_z(int g, Rng& rng, double scale) {
    CVec z(g);
    for (int i = 0; i < g; ++i) z[i] = rng.box(scale);
    return z;
}

CMat random_symmetric_complex(int n, Rng& rng, double scale) {
    CMat m(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            m(i, j) = rng.box(scale);
            m(j, i) = m(i, j);
        }
    return m;
}

CMat symmetric_unit(int g, int j, int k) {
    CMat E = CMat::Zero(g, g);
    E(j, k) += 1.0;
    if (j != k) E(k, j) += 1.0;
    return E;
}

SymplecticElement random_symplectic(int g, Rng& rng, int max_entry) {
    for (int attempt = 0; attempt < 200; ++attempt) {
        SymplecticElement out = SymplecticElement::identity(g);
        const int len = static_cast<int>(rng.uniform_int(2, 4));
        for (int w = 0; w < len; ++w) {
            const int kind = static_cast<int>(rng.uniform_int(0, 3));
            if (kind == 0 || kind == 1) {
                IMat S = IMat::Zero(g, g);
                for (int i = 0; i < g; ++i)
                    for (int j = i; j < g; ++j) {
                        S(i, j) = rng.uniform_int(-1, 1);
                        S(j, i) = S(i, j);
                    }
                const IMat id = IMat::Identity(g, g), zero = IMat::Zero(g, g);
                out = out * (kind == 0 ? SymplecticElement(id, S, zero, id)
                                       : SymplecticElement(id, zero, S, id));
            } else if (kind == 2) {
                out = out * SymplecticElement::inversion(g);
            } else {
                IMat U = IMat::Identity(g, g);
                if (g > 1) {
                    const int i = static_cast<int>(rng.uniform_int(0, g - 1));
                    int j = static_cast<int>(rng.uniform_int(0, g - 2));
                    if (j >= i) ++j;
                    U(i, j) = rng.uniform_int(0, 1);
                }
                // (U, 0; 0, U^{-t}) with U unipotent upper/lower
                IMat Uinv = IMat::Identity(g, g);
                if (g > 1) Uinv = 2 * IMat::Identity(g, g) - U;  // inverse of I + E_ij
                out = out * SymplecticElement(U, IMat::Zero(g, g), IMat::Zero(g, g),
                                              Uinv.transpose());
            }
        }
        bool small = true;
        for (const IMat* m : {&out.a, &out.b, &out.c, &out.d})
            if (m->cwiseAbs().maxCoeff() > max_entry) small = false;
        if (small) return out;
    }
    return SymplecticElement::identity(g);
}

SymplecticElement random_gamma48_word(int g, Rng& rng, int max_len) {
    SymplecticElement out = SymplecticElement::identity(g);
    const int len = static_cast<int>(rng.uniform_int(1, max_len));
    const IMat id = IMat::Identity(g, g), zero = IMat::Zero(g, g);
    for (int w = 0; w < len; ++w) {
        IMat S = IMat::Zero(g, g);
        for (int i = 0; i < g; ++i)
            for (int j = i; j < g; ++j) {
                S(i, j) = 4 * rng.uniform_int(-1, 1);
                S(j, i) = S(i, j);
            }
        for (int i = 0; i < g; ++i) S(i, i) = 8 * rng.uniform_int(-1, 1);
        out = out * (rng.uniform_int(0, 1) == 0 ? SymplecticElement(id, S, zero, id)
                                                : SymplecticElement(id, zero, S, id));
    }
    return out;
}

SymplecticElement random_gamma48_conditioned(int g, Rng& rng, const PeriodMatrix& tau,
                                             double min_det, int max_len) {
    for (int attempt = 0; attempt < 200; ++attempt) {
        SymplecticElement sigma = random_gamma48_word(g, rng, max_len);
        try {
            const PeriodMatrix img = act(sigma, tau);
            if (img.tau.imag().determinant() >= min_det) return sigma;
        } catch (const theta_error&) {
        }
    }
    return SymplecticElement::identity(g);
}

PeriodMatrix smooth_g2_tau() {
    CMat t(2, 2);
    t << cx(0.0, 1.0), cx(0.15, 0.05), cx(0.15, 0.05), cx(0.0, 2.0);
    return PeriodMatrix::validate(t);
}

CVec newton_theta_point(const PeriodMatrix& tau, Rng& rng, const EvalConfig& cfg,
                        double tol) {
    require(tau.genus() == 2, errc::invalid_argument, "divisor sampling is genus-2 only");
    const Characteristic ch = Characteristic::zero(2);
    for (int attempt = 0; attempt < 12; ++attempt) {
        CVec z(2);
        z << rng.box(0.35), rng.box(0.35);
        bool ok = false;
        for (int it = 0; it < 40; ++it) {
            const ThetaJet jet = eval_jet(tau, z, ch, 1, cfg);
            const cx v = jet.value();
            if (std::abs(v) <= tol) {
                ok = true;
                break;
            }
            const cx d = jet.gradient()[0];
            if (std::abs(d) < 1e-8) break;
            z[0] -= v / d;
            if (std::abs(z[0].imag()) > 1.5 || std::abs(z[0].real()) > 3.0) break;
        }
        if (ok) return z;
    }
    fail(errc::no_convergence, "could not place a point on the theta divisor");
}

std::vector<std::string> suite_names() {
    return {"heat",    "shift",       "factorization", "jacobi",
            "modular", "eta-identity", "parity",        "boundary"};
}

SuiteReport run_suite(const std::string& name, int samples, std::uint64_t seed,
                      const EvalConfig& cfg, double tol_override) {
    require(samples > 0, errc::invalid_argument, "samples must be positive");
    auto tol = [&](double pinned) { return tol_override > 0 ? tol_override : pinned; };
    if (name == "heat") return heat_suite(samples, seed, cfg, tol(kHeatTol));
    if (name == "shift") return shift_suite(samples, seed, cfg, tol(kShiftTol));
    if (name == "factorization")
        return factorization_suite(samples, seed, cfg, tol(kFactorizationTol));
    if (name == "jacobi") return jacobi_suite(samples, seed, cfg, tol(kJacobiTol));
    if (name == "modular") return modular_suite(samples, seed, cfg, tol(kModularTol));
    if (name == "eta-identity") return eta_identity_suite(samples, seed, tol(kEtaIdentityTol));
    if (name == "parity") return parity_suite(samples, seed, cfg, tol(kParityTol));
    if (name == "boundary") return boundary_suite(samples, seed, cfg, tol(kBoundaryZeroTol));
    fail(errc::invalid_argument, "unknown suite: " + name);
}

}  // namespace thetanull::verify
