#include "thetanull/characteristics.hpp"

#include "thetanull/siegel.hpp"

#include <sstream>

namespace thetanull {

namespace {

int bit_reduced(int v) {
    int r = v % 2;
    return r < 0 ? r + 2 : r;
}

}  // namespace

Characteristic::Characteristic(Eigen::VectorXi e, Eigen::VectorXi d)
    : eps(std::move(e)), delta(std::move(d)) {
    require(eps.size() == delta.size() && eps.size() >= 1, errc::invalid_argument,
            "characteristic halves must have equal positive length");
    for (int i = 0; i < eps.size(); ++i) {
        eps[i] = bit_reduced(eps[i]);
        delta[i] = bit_reduced(delta[i]);
    }
}

Characteristic Characteristic::zero(int g) {
    return Characteristic(Eigen::VectorXi::Zero(g), Eigen::VectorXi::Zero(g));
}

Characteristic Characteristic::from_bits(const std::vector<int>& e, const std::vector<int>& d) {
    Eigen::VectorXi ev(static_cast<int>(e.size())), dv(static_cast<int>(d.size()));
    for (std::size_t i = 0; i < e.size(); ++i) ev[static_cast<int>(i)] = e[i];
    for (std::size_t i = 0; i < d.size(); ++i) dv[static_cast<int>(i)] = d[i];
    return Characteristic(std::move(ev), std::move(dv));
}

Parity Characteristic::parity() const {
    int dot = 0;
    for (int i = 0; i < eps.size(); ++i) dot += eps[i] * delta[i];
    return dot % 2 == 0 ? Parity::even : Parity::odd;
}

Characteristic Characteristic::direct_sum(const Characteristic& other) const {
    Eigen::VectorXi e(genus() + other.genus()), d(genus() + other.genus());
    e << eps, other.eps;
    d << delta, other.delta;
    return Characteristic(std::move(e), std::move(d));
}

bool Characteristic::operator==(const Characteristic& other) const {
    return eps.size() == other.eps.size() && eps == other.eps && delta == other.delta;
}

std::string Characteristic::str() const {
    std::ostringstream os;
    os << "[";
    for (int i = 0; i < eps.size(); ++i) os << eps[i];
    os << ",";
    for (int i = 0; i < delta.size(); ++i) os << delta[i];
    os << "]";
    return os.str();
}

std::vector<Characteristic> enumerate_all(int g) {
    require(g >= 1, errc::invalid_argument, "genus must be positive");
    std::vector<Characteristic> out;
    out.reserve(std::size_t{1} << (2 * g));
    const int n = 1 << g;
    // eps major, each half lexicographic with component 0 most significant
    for (int be = 0; be < n; ++be) {
        for (int bd = 0; bd < n; ++bd) {
            Eigen::VectorXi e(g), d(g);
            for (int i = 0; i < g; ++i) {
                e[i] = (be >> (g - 1 - i)) & 1;
                d[i] = (bd >> (g - 1 - i)) & 1;
            }
            out.emplace_back(std::move(e), std::move(d));
        }
    }
    return out;
}

std::vector<Characteristic> enumerate_even(int g) {
    std::vector<Characteristic> out;
    for (auto& ch : enumerate_all(g))
        if (ch.is_even()) out.push_back(ch);
    return out;
}

std::vector<Characteristic> enumerate_odd(int g) {
    std::vector<Characteristic> out;
    for (auto& ch : enumerate_all(g))
        if (!ch.is_even()) out.push_back(ch);
    return out;
}

CVec half_period(const PeriodMatrix& tau, const Characteristic& ch) {
    require(tau.genus() == ch.genus(), errc::invalid_argument, "genus mismatch");
    const int g = tau.genus();
    CVec x = CVec::Zero(g);
    for (int i = 0; i < g; ++i) {
        cx acc = 0.5 * static_cast<double>(ch.delta[i]);
        for (int j = 0; j < g; ++j) acc += 0.5 * tau.tau(i, j) * static_cast<double>(ch.eps[j]);
        x[i] = acc;
    }
    return x;
}

}  // namespace thetanull
