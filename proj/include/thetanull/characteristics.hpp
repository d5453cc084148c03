#pragma once

#include "thetanull/types.hpp"

#include <vector>

namespace thetanull {

struct PeriodMatrix;

enum class Parity { even, odd };

/// Half-integer theta characteristic [eps, delta], components in {0,1}.
/// Parity is eps.delta mod 2; even characteristics index the theta constants.
struct Characteristic {
    Eigen::VectorXi eps;
    Eigen::VectorXi delta;

    Characteristic() = default;
    Characteristic(Eigen::VectorXi e, Eigen::VectorXi d);
    static Characteristic zero(int g);
    static Characteristic from_bits(const std::vector<int>& e, const std::vector<int>& d);

    int genus() const { return static_cast<int>(eps.size()); }
    Parity parity() const;
    bool is_even() const { return parity() == Parity::even; }

    /// Concatenation [eps1 eps2, delta1 delta2], matching direct sums of periods.
    Characteristic direct_sum(const Characteristic& other) const;

    bool operator==(const Characteristic& other) const;
    bool operator!=(const Characteristic& other) const { return !(*this == other); }

    std::string str() const;
};

/// All 4^g characteristics, lexicographic with eps major.
std::vector<Characteristic> enumerate_all(int g);
/// The 2^{g-1}(2^g+1) even ones, in enumerate_all order.
std::vector<Characteristic> enumerate_even(int g);
/// The 2^{g-1}(2^g-1) odd ones, in enumerate_all order.
std::vector<Characteristic> enumerate_odd(int g);

/// The 2-torsion point (tau.eps + delta)/2 attached to a characteristic.
CVec half_period(const PeriodMatrix& tau, const Characteristic& ch);

}  // namespace thetanull
