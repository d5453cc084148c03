#pragma once

#include "thetanull/gauss.hpp"
#include "thetanull/strata.hpp"

#include <random>
#include <string>
#include <vector>

namespace thetanull::verify {

/// Deterministic sampling: raw mt19937_64 bits are mapped to doubles by
/// hand so sampled suites reproduce bit-for-bit across standard libraries.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}
    std::uint64_t bits() { return eng_(); }
    double unit() { return static_cast<double>(bits() >> 11) * 0x1.0p-53; }
    double uniform(double a, double b) { return a + (b - a) * unit(); }
    std::int64_t uniform_int(std::int64_t a, std::int64_t b);  // inclusive
    cx box(double r) { return {uniform(-r, r), uniform(-r, r)}; }

private:
    std::mt19937_64 eng_;
};

/// Well-conditioned random point of H_g: bounded real part, Im = B B^t + c I.
PeriodMatrix random_period(int g, Rng& rng);
CVec random_z(int g, Rng& rng, double scale = 0.4);
CMat random_symmetric_complex(int n, Rng& rng, double scale = 1.0);
/// e_jk + e_kj for j != k, e_jj otherwise.
CMat symmetric_unit(int g, int j, int k);

/// Short random word in symplectic generators with all entries in [-max_entry, max_entry].
SymplecticElement random_symplectic(int g, Rng& rng, int max_entry = 3);
/// Random word of length <= max_len in Gamma_g(4,8) generators.
SymplecticElement random_gamma48_word(int g, Rng& rng, int max_len = 3);
/// Same, but redrawn until sigma.tau keeps det Im above min_det so the
/// transformed evaluation stays within the lattice-point budget.
SymplecticElement random_gamma48_conditioned(int g, Rng& rng, const PeriodMatrix& tau,
                                             double min_det = 5e-3, int max_len = 3);

/// Fixed indecomposable genus-2 period matrix with smooth theta divisor.
PeriodMatrix smooth_g2_tau();

/// Newton-solve theta[0,0](tau, (z1, z2)) = 0 in z1 from a random seed.
CVec newton_theta_point(const PeriodMatrix& tau, Rng& rng, const EvalConfig& cfg,
                        double tol = 1e-11);

struct SuiteCase {
    std::string label;
    double residual = 0.0;
    bool pass = true;
};

struct SuiteReport {
    std::string suite;
    std::uint64_t seed = 0;
    int samples = 0;
    double tolerance = 0.0;
    double max_residual = 0.0;
    bool pass = true;
    std::vector<SuiteCase> cases;
};

std::vector<std::string> suite_names();

/// Runs one of: heat, shift, factorization, jacobi, modular, eta-identity,
/// parity, boundary. tol_override replaces the pinned suite tolerance when
/// positive. Unknown names raise InvalidArgument.
SuiteReport run_suite(const std::string& name, int samples, std::uint64_t seed,
                      const EvalConfig& cfg, double tol_override = 0.0);

}  // namespace thetanull::verify
