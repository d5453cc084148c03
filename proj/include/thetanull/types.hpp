#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace thetanull {

using cx = std::complex<double>;
using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;
using RMat = Eigen::MatrixXd;
using RVec = Eigen::VectorXd;
using IMat = Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic>;
using IVec = Eigen::Matrix<std::int64_t, Eigen::Dynamic, 1>;

inline constexpr double kPi = 3.14159265358979323846264338327950288;
inline constexpr cx kI{0.0, 1.0};

enum class errc {
    not_symmetric,
    imag_not_positive_definite,
    numerically_singular,
    radius_cap_exceeded,
    no_convergence,
    left_siegel_space,
    not_in_gamma48,
    not_on_divisor,
    singular_point_of_theta,
    not_on_singularity_scheme,
    symplectic_overflow,
    invalid_argument,
};

inline const char* errc_name(errc c) {
    switch (c) {
        case errc::not_symmetric: return "NotSymmetric";
        case errc::imag_not_positive_definite: return "ImagNotPositiveDefinite";
        case errc::numerically_singular: return "NumericallySingular";
        case errc::radius_cap_exceeded: return "RadiusCapExceeded";
        case errc::no_convergence: return "NoConvergence";
        case errc::left_siegel_space: return "LeftSiegelSpace";
        case errc::not_in_gamma48: return "NotInGamma48";
        case errc::not_on_divisor: return "NotOnDivisor";
        case errc::singular_point_of_theta: return "SingularPointOfTheta";
        case errc::not_on_singularity_scheme: return "NotOnSingularityScheme";
        case errc::symplectic_overflow: return "SymplecticOverflow";
        case errc::invalid_argument: return "InvalidArgument";
    }
    return "Unknown";
}

class theta_error : public std::runtime_error {
public:
    theta_error(errc code, const std::string& what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}
    errc code() const noexcept { return code_; }

private:
    errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& what) {
    throw theta_error(code, what);
}

inline void require(bool ok, errc code, const std::string& what) {
    if (!ok) fail(code, what);
}

}  // namespace thetanull
