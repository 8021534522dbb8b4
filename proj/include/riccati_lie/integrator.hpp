#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "riccati_lie/error.hpp"
#include "riccati_lie/model.hpp"

namespace riccati_lie {

enum class SystemTag { hamiltonian, riccati2, other };

const char* to_string(SystemTag tag) noexcept;

struct IntegratorStats {
    std::size_t accepted = 0;
    std::size_t rejected = 0;
    std::size_t guard_rejections = 0;
    std::size_t rhs_evals = 0;
};

template <std::size_t N>
struct Sample {
    double t = 0.0;
    std::array<double, N> state{};
    std::array<double, N> deriv{};
};

/// Time-ordered samples of a solution with stored derivatives. Immutable once
/// built; `sample_at` interpolates with cubic Hermite polynomials.
template <std::size_t N>
class BasicTrajectory {
public:
    using State = std::array<double, N>;

    BasicTrajectory() = default;

    /// Throws ContractError unless samples are non-empty with strictly increasing t.
    BasicTrajectory(std::vector<Sample<N>> samples, SystemTag tag, IntegratorStats stats = {})
        : samples_(std::move(samples)), tag_(tag), stats_(stats) {
        if (samples_.empty()) throw ContractError("trajectory: no samples");
        for (std::size_t i = 1; i < samples_.size(); ++i) {
            if (!(samples_[i].t > samples_[i - 1].t)) {
                throw ContractError("trajectory: sample times must be strictly increasing");
            }
        }
    }

    const std::vector<Sample<N>>& samples() const { return samples_; }
    SystemTag tag() const { return tag_; }
    const IntegratorStats& stats() const { return stats_; }
    double t0() const { return samples_.front().t; }
    double t_end() const { return samples_.back().t; }
    const State& final_state() const { return samples_.back().state; }

    State sample_at(double t) const {
        if (samples_.empty() || !(t >= t0() && t <= t_end())) {
            throw RangeError("sample_at: t=" + std::to_string(t) + " outside [" + std::to_string(t0()) + ", " +
                             std::to_string(t_end()) + "]");
        }
        const auto it = std::upper_bound(samples_.begin(), samples_.end(), t,
                                         [](double v, const Sample<N>& s) { return v < s.t; });
        const std::size_t j = static_cast<std::size_t>(it - samples_.begin());
        if (j == 0) return samples_.front().state;
        const Sample<N>& a = samples_[j - 1];
        if (t == a.t || j == samples_.size()) return a.state;
        const Sample<N>& b = samples_[j];
        const double h = b.t - a.t;
        const double th = (t - a.t) / h;
        const double th2 = th * th;
        const double th3 = th2 * th;
        const double h00 = 2.0 * th3 - 3.0 * th2 + 1.0;
        const double h10 = th3 - 2.0 * th2 + th;
        const double h01 = -2.0 * th3 + 3.0 * th2;
        const double h11 = th3 - th2;
        State out{};
        for (std::size_t i = 0; i < N; ++i) {
            out[i] = h00 * a.state[i] + h10 * h * a.deriv[i] + h01 * b.state[i] + h11 * h * b.deriv[i];
        }
        return out;
    }

    /// Time derivative of the Hermite interpolant; the stored derivative at nodes.
    State derivative_at(double t) const {
        if (samples_.empty() || !(t >= t0() && t <= t_end())) {
            throw RangeError("derivative_at: t=" + std::to_string(t) + " outside [" + std::to_string(t0()) + ", " +
                             std::to_string(t_end()) + "]");
        }
        const auto it = std::upper_bound(samples_.begin(), samples_.end(), t,
                                         [](double v, const Sample<N>& s) { return v < s.t; });
        const std::size_t j = static_cast<std::size_t>(it - samples_.begin());
        if (j == 0) return samples_.front().deriv;
        const Sample<N>& a = samples_[j - 1];
        if (t == a.t || j == samples_.size()) return a.deriv;
        const Sample<N>& b = samples_[j];
        const double h = b.t - a.t;
        const double th = (t - a.t) / h;
        const double th2 = th * th;
        const double d00 = (6.0 * th2 - 6.0 * th) / h;
        const double d10 = 3.0 * th2 - 4.0 * th + 1.0;
        const double d01 = (-6.0 * th2 + 6.0 * th) / h;
        const double d11 = 3.0 * th2 - 2.0 * th;
        State out{};
        for (std::size_t i = 0; i < N; ++i) {
            out[i] = d00 * a.state[i] + d10 * a.deriv[i] + d01 * b.state[i] + d11 * b.deriv[i];
        }
        return out;
    }

private:
    std::vector<Sample<N>> samples_;
    SystemTag tag_ = SystemTag::other;
    IntegratorStats stats_;
};

using Trajectory = BasicTrajectory<2>;

struct IntegratorOptions {
    double tol = 1e-10;               ///< used as both absolute and relative tolerance
    double guard_resolution = 1e-10;  ///< guard bisection stops once the trial step is this short
    std::size_t max_steps = 2'000'000;
    SystemTag tag = SystemTag::other;
};

template <std::size_t N>
using RhsFn = std::function<std::array<double, N>(double, const std::array<double, N>&)>;

template <std::size_t N>
using GuardFn = std::function<bool(const std::array<double, N>&)>;

namespace detail {

// Dormand-Prince 5(4) tableau.
struct Dopri5 {
    static constexpr double c2 = 1.0 / 5.0, c3 = 3.0 / 10.0, c4 = 4.0 / 5.0, c5 = 8.0 / 9.0;
    static constexpr double a21 = 1.0 / 5.0;
    static constexpr double a31 = 3.0 / 40.0, a32 = 9.0 / 40.0;
    static constexpr double a41 = 44.0 / 45.0, a42 = -56.0 / 15.0, a43 = 32.0 / 9.0;
    static constexpr double a51 = 19372.0 / 6561.0, a52 = -25360.0 / 2187.0, a53 = 64448.0 / 6561.0,
                            a54 = -212.0 / 729.0;
    static constexpr double a61 = 9017.0 / 3168.0, a62 = -355.0 / 33.0, a63 = 46732.0 / 5247.0,
                            a64 = 49.0 / 176.0, a65 = -5103.0 / 18656.0;
    static constexpr double a71 = 35.0 / 384.0, a73 = 500.0 / 1113.0, a74 = 125.0 / 192.0,
                            a75 = -2187.0 / 6784.0, a76 = 11.0 / 84.0;
    static constexpr double e1 = 71.0 / 57600.0, e3 = -71.0 / 16695.0, e4 = 71.0 / 1920.0,
                            e5 = -17253.0 / 339200.0, e6 = 22.0 / 525.0, e7 = -1.0 / 40.0;
};

template <std::size_t N>
bool all_finite(const std::array<double, N>& v) {
    return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
}

}  // namespace detail

/// Adaptive Dormand-Prince 5(4) with PI step-size control.
///
/// Output is one sample per accepted step; the last sample lands exactly on
/// t1. Every stage state is checked against `guard` before the right-hand side
/// is evaluated there. A failing stage halves the step; once the step would
/// fall below `guard_resolution` a GuardViolation reports the last accepted t.
/// Error-driven step collapse (finite-time blow-up) raises StepUnderflow.
template <std::size_t N>
BasicTrajectory<N> integrate(const RhsFn<N>& rhs, double t0, const std::array<double, N>& y0, double t1,
                             const IntegratorOptions& opt, const GuardFn<N>& guard = {}) {
    using State = std::array<double, N>;
    using T = detail::Dopri5;

    if (!(t1 > t0)) throw ContractError("integrate: requires t1 > t0");
    if (!(opt.tol > 0.0)) throw ContractError("integrate: requires tol > 0");
    const auto ok = [&](const State& y) { return detail::all_finite(y) && (!guard || guard(y)); };
    if (!ok(y0)) throw GuardViolation("integrate: initial state violates the domain guard", t0);

    IntegratorStats stats;
    auto f = [&](double t, const State& y) {
        ++stats.rhs_evals;
        return rhs(t, y);
    };
    auto axpy = [](const State& y, double h, std::initializer_list<std::pair<double, const State*>> terms) {
        State out = y;
        for (const auto& [w, k] : terms) {
            if (w == 0.0) continue;
            for (std::size_t i = 0; i < N; ++i) out[i] += h * w * (*k)[i];
        }
        return out;
    };
    auto weighted_norm = [&](const State& v, const State& ya, const State& yb) {
        double acc = 0.0;
        for (std::size_t i = 0; i < N; ++i) {
            const double sk = opt.tol + opt.tol * std::max(std::abs(ya[i]), std::abs(yb[i]));
            acc += (v[i] / sk) * (v[i] / sk);
        }
        return std::sqrt(acc / static_cast<double>(N));
    };

    std::vector<Sample<N>> out;
    State y = y0;
    double t = t0;
    State k1 = f(t, y);
    out.push_back({t, y, k1});

    // Initial step (Hairer, Norsett & Wanner, II.4).
    const double span = t1 - t0;
    double h;
    {
        const double d0 = weighted_norm(y, y, y);
        const double d1 = weighted_norm(k1, y, y);
        double h0 = (d0 < 1e-5 || d1 < 1e-5) ? 1e-6 : 0.01 * d0 / d1;
        h0 = std::min(h0, span);
        State y1 = axpy(y, h0, {{1.0, &k1}});
        while (!ok(y1) && h0 > opt.guard_resolution) {
            h0 *= 0.5;
            y1 = axpy(y, h0, {{1.0, &k1}});
        }
        double h1 = h0;
        if (ok(y1)) {
            const State k2 = f(t + h0, y1);
            State diff{};
            for (std::size_t i = 0; i < N; ++i) diff[i] = k2[i] - k1[i];
            const double d2 = weighted_norm(diff, y, y) / h0;
            const double dm = std::max(d1, d2);
            h1 = dm <= 1e-15 ? std::max(1e-6, h0 * 1e-3) : std::pow(0.01 / dm, 1.0 / 5.0);
        }
        h = std::min({100.0 * h0, h1, span});
    }

    constexpr double kSafe = 0.9, kFacMin = 0.2, kFacMax = 10.0, kBeta = 0.04;
    constexpr double kExpo = 0.2 - kBeta * 0.75;
    double err_old = 1e-4;
    bool last_rejected = false;

    while (t < t1) {
        if (stats.accepted + stats.rejected + stats.guard_rejections >= opt.max_steps) {
            throw Error(ErrorKind::numeric, "integrate: step budget exhausted at t=" + std::to_string(t));
        }
        const double h_min = 1e-13 * std::max(1.0, std::abs(t));
        if (h < h_min) {
            throw StepUnderflow("integrate: step size underflow at t=" + std::to_string(t) +
                                    " (stiffness or finite-time blow-up)",
                                t);
        }
        bool final_step = false;
        if (t + h >= t1 || t + 1.01 * h >= t1) {
            h = t1 - t;
            final_step = true;
        }

        // Stages; each stage state must satisfy the guard.
        bool guard_failed = false;
        auto stage = [&](double c, const State& ys) -> State {
            if (guard_failed || !ok(ys)) {
                guard_failed = true;
                return State{};
            }
            return f(t + c * h, ys);
        };
        const State k2 = stage(T::c2, axpy(y, h, {{T::a21, &k1}}));
        const State k3 = stage(T::c3, axpy(y, h, {{T::a31, &k1}, {T::a32, &k2}}));
        const State k4 = stage(T::c4, axpy(y, h, {{T::a41, &k1}, {T::a42, &k2}, {T::a43, &k3}}));
        const State k5 = stage(T::c5, axpy(y, h, {{T::a51, &k1}, {T::a52, &k2}, {T::a53, &k3}, {T::a54, &k4}}));
        const State k6 =
            stage(1.0, axpy(y, h, {{T::a61, &k1}, {T::a62, &k2}, {T::a63, &k3}, {T::a64, &k4}, {T::a65, &k5}}));
        const State y_new =
            axpy(y, h, {{T::a71, &k1}, {T::a73, &k3}, {T::a74, &k4}, {T::a75, &k5}, {T::a76, &k6}});
        const State k7 = stage(1.0, y_new);

        if (guard_failed) {
            ++stats.guard_rejections;
            h *= 0.5;
            if (h < opt.guard_resolution) {
                throw GuardViolation("integrate: trajectory leaves the guarded domain after t=" + std::to_string(t),
                                     t);
            }
            last_rejected = true;
            continue;
        }

        State err_vec{};
        for (std::size_t i = 0; i < N; ++i) {
            err_vec[i] = h * (T::e1 * k1[i] + T::e3 * k3[i] + T::e4 * k4[i] + T::e5 * k5[i] + T::e6 * k6[i] +
                              T::e7 * k7[i]);
        }
        double err = weighted_norm(err_vec, y, y_new);
        if (!std::isfinite(err) || !detail::all_finite(k7)) err = 1e10;

        if (err <= 1.0) {
            const double fac11 = std::pow(err, kExpo);
            double fac = fac11 / std::pow(err_old, kBeta);
            fac = std::clamp(fac / kSafe, 1.0 / kFacMax, 1.0 / kFacMin);
            double h_new = h / fac;
            if (last_rejected) h_new = std::min(h_new, h);
            err_old = std::max(err, 1e-4);

            t = final_step ? t1 : t + h;
            y = y_new;
            k1 = k7;
            out.push_back({t, y, k1});
            ++stats.accepted;
            last_rejected = false;
            h = h_new;
        } else {
            const double fac11 = std::pow(err, kExpo);
            h /= std::min(1.0 / kFacMin, fac11 / kSafe);
            ++stats.rejected;
            last_rejected = true;
        }
    }
    return BasicTrajectory<N>(std::move(out), opt.tag, stats);
}

/// Momentum threshold for the Hamiltonian guard: states need p <= -kMomentumGuard.
inline constexpr double kMomentumGuard = 1e-9;

/// Integrates Hamilton's equations from (t0, s0) with the p <= -1e-9 guard.
Trajectory integrate_hamiltonian(const PotentialSpec& P, double t0, const PhasePoint& s0, double t1, double tol);

/// Integrates the second-order Riccati equation as a first-order system in (x, v).
Trajectory integrate_riccati2(const RiccatiSpec& R, double t0, const LagrangianPoint& s0, double t1, double tol);

/// Four copies of the Hamiltonian system integrated as one 8-dimensional
/// system, so all copies share the same accepted time steps.
BasicTrajectory<8> integrate_hamiltonian_copies(const PotentialSpec& P, double t0,
                                                const std::array<PhasePoint, 4>& s0, double t1, double tol);

}  // namespace riccati_lie
