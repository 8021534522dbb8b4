#pragma once

#include <array>
#include <cmath>
#include <cstddef>

namespace riccati_lie {

/// Truncated Taylor expansion of a scalar function of t around a fixed t.
///
/// Coefficient k holds f^(k)(t) / k!. Arithmetic propagates the expansion
/// exactly (up to rounding), so derivatives of sums, products, quotients and
/// square roots of TimeFns are available without finite differencing.
/// Coefficients above kJetOrder are dropped; `derivative()` therefore loses
/// one order of validity.
class Jet {
public:
    static constexpr std::size_t kOrder = 6;
    using Coeffs = std::array<double, kOrder + 1>;

    constexpr Jet() : c_{} {}
    constexpr explicit Jet(const Coeffs& c) : c_(c) {}

    static constexpr Jet constant(double value) {
        Jet j;
        j.c_[0] = value;
        return j;
    }

    /// Build from derivative values d[k] = f^(k)(t).
    static Jet from_derivatives(const std::array<double, kOrder + 1>& d) {
        Jet j;
        double fact = 1.0;
        for (std::size_t k = 0; k <= kOrder; ++k) {
            if (k > 0) fact *= static_cast<double>(k);
            j.c_[k] = d[k] / fact;
        }
        return j;
    }

    double value() const { return c_[0]; }
    double coeff(std::size_t k) const { return k <= kOrder ? c_[k] : 0.0; }
    const Coeffs& coeffs() const { return c_; }

    /// n-th derivative at the expansion point; zero beyond kOrder.
    double derivative_value(std::size_t n) const {
        if (n > kOrder) return 0.0;
        double fact = 1.0;
        for (std::size_t k = 2; k <= n; ++k) fact *= static_cast<double>(k);
        return c_[n] * fact;
    }

    Jet derivative() const {
        Jet d;
        for (std::size_t k = 0; k < kOrder; ++k) d.c_[k] = static_cast<double>(k + 1) * c_[k + 1];
        return d;
    }

    Jet& operator+=(const Jet& o) {
        for (std::size_t k = 0; k <= kOrder; ++k) c_[k] += o.c_[k];
        return *this;
    }
    Jet& operator-=(const Jet& o) {
        for (std::size_t k = 0; k <= kOrder; ++k) c_[k] -= o.c_[k];
        return *this;
    }
    Jet& operator*=(double s) {
        for (auto& v : c_) v *= s;
        return *this;
    }

    friend Jet operator+(Jet a, const Jet& b) { return a += b; }
    friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
    friend Jet operator-(Jet a) { return a *= -1.0; }
    friend Jet operator*(Jet a, double s) { return a *= s; }
    friend Jet operator*(double s, Jet a) { return a *= s; }

    friend Jet operator*(const Jet& a, const Jet& b) {
        Jet r;
        for (std::size_t k = 0; k <= kOrder; ++k) {
            double acc = 0.0;
            for (std::size_t i = 0; i <= k; ++i) acc += a.c_[i] * b.c_[k - i];
            r.c_[k] = acc;
        }
        return r;
    }

    /// Requires b.value() != 0.
    friend Jet operator/(const Jet& a, const Jet& b) {
        Jet q;
        for (std::size_t k = 0; k <= kOrder; ++k) {
            double acc = a.c_[k];
            for (std::size_t i = 1; i <= k; ++i) acc -= b.c_[i] * q.c_[k - i];
            q.c_[k] = acc / b.c_[0];
        }
        return q;
    }

    /// Requires value() > 0.
    friend Jet sqrt(const Jet& a) {
        Jet s;
        s.c_[0] = std::sqrt(a.c_[0]);
        for (std::size_t k = 1; k <= kOrder; ++k) {
            double acc = a.c_[k];
            for (std::size_t i = 1; i < k; ++i) acc -= s.c_[i] * s.c_[k - i];
            s.c_[k] = acc / (2.0 * s.c_[0]);
        }
        return s;
    }

private:
    Coeffs c_;
};

}  // namespace riccati_lie
