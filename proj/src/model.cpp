#include "riccati_lie/model.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "riccati_lie/error.hpp"

namespace riccati_lie {

namespace {

void require_positive_on_grid(const Coefficient& c, const TimeGrid& grid, const char* what) {
    for (double t : grid.nodes()) {
        const double v = c(t);
        if (!(v > 0.0)) {
            throw DomainError(std::string(what) + " must be > 0 on the working interval; got " + std::to_string(v) +
                              " at t=" + std::to_string(t));
        }
    }
}

}  // namespace

std::vector<double> TimeGrid::nodes() const {
    std::vector<double> out;
    if (points == 0) return out;
    if (points == 1) return {t0};
    out.reserve(points);
    const double step = (t1 - t0) / static_cast<double>(points - 1);
    for (std::size_t i = 0; i + 1 < points; ++i) out.push_back(t0 + step * static_cast<double>(i));
    out.push_back(t1);
    return out;
}

RiccatiSpec RiccatiSpec::from_coefficients(Coefficient c0, Coefficient c1, Coefficient c2, Coefficient c3) {
    RiccatiSpec r;
    const Coefficient root = sqrt(c3);
    r.f1 = 3.0 * root;
    r.f0 = c2 / root - c3.derivative() / (2.0 * c3);
    r.c0 = std::move(c0);
    r.c1 = std::move(c1);
    r.c2 = std::move(c2);
    r.c3 = std::move(c3);
    return r;
}

void require_in_O(const PhasePoint& s, const char* where) {
    if (!(s.p < 0.0)) {
        throw DomainError(std::string(where) + ": momentum must satisfy p < 0, got p=" + std::to_string(s.p));
    }
}

PotentialValue eval_U(const PotentialSpec& P, double t, double x) {
    const Jet a0 = P.a0.jet(t);
    const Jet a1 = P.a1.jet(t);
    const Jet a2 = P.a2.jet(t);
    PotentialValue out;
    out.u = a0.value() + a1.value() * x + a2.value() * x * x;
    out.du_dx = a1.value() + 2.0 * a2.value() * x;
    out.du_dt = a0.coeff(1) + a1.coeff(1) * x + a2.coeff(1) * x * x;
    return out;
}

RiccatiSpec coefficients_from_potential(const PotentialSpec& P, const TimeGrid& grid) {
    require_positive_on_grid(P.a2, grid, "a2");
    const Coefficient& a0 = P.a0;
    const Coefficient& a1 = P.a1;
    const Coefficient& a2 = P.a2;
    RiccatiSpec r;
    r.c3 = a2 * a2;
    r.c2 = a2.derivative() + 1.5 * (a1 * a2);
    r.c1 = a1.derivative() + 0.5 * (a1 * a1) + a0 * a2;
    r.c0 = a0.derivative() + 0.5 * (a0 * a1);
    r.f1 = 3.0 * a2;
    r.f0 = 1.5 * a1;
    return r;
}

RecoveredPotential potential_from_coefficients(const RiccatiSpec& R, const TimeGrid& grid) {
    require_positive_on_grid(R.c3, grid, "c3");
    RecoveredPotential out;
    const Coefficient root = sqrt(R.c3);
    const Coefficient a2 = root;
    const Coefficient a1 = (2.0 / 3.0) * (R.c2 / root - R.c3.derivative() / (2.0 * R.c3));
    const Coefficient a0 = (R.c1 - a1.derivative() - 0.5 * (a1 * a1)) / a2;
    out.potential = PotentialSpec{a0, a1, a2};

    double residual = 0.0;
    for (double t : grid.nodes()) {
        const Jet j0 = a0.jet(t);
        const double defect = R.c0(t) - j0.coeff(1) - 0.5 * j0.value() * a1(t);
        residual = std::max(residual, std::abs(defect));
    }
    out.residual = residual;
    return out;
}

ConstraintResidual constraint_residuals(const RiccatiSpec& R, const TimeGrid& grid) {
    require_positive_on_grid(R.c3, grid, "c3");
    ConstraintResidual out;
    for (double t : grid.nodes()) {
        const Jet c3 = R.c3.jet(t);
        const double root = std::sqrt(c3.value());
        const double f1 = 3.0 * root;
        const double f0 = R.c2(t) / root - c3.coeff(1) / (2.0 * c3.value());
        out.f1 = std::max(out.f1, std::abs(R.f1(t) - f1) / std::max(1.0, std::abs(f1)));
        out.f0 = std::max(out.f0, std::abs(R.f0(t) - f0) / std::max(1.0, std::abs(f0)));
    }
    return out;
}

Vec2 riccati2_rhs(const RiccatiSpec& R, double t, const LagrangianPoint& s) {
    const double x = s.x;
    const double damping = R.f0(t) + R.f1(t) * x;
    const double cubic = R.c0(t) + x * (R.c1(t) + x * (R.c2(t) + x * R.c3(t)));
    return {s.v, -damping * s.v - cubic};
}

Vec2 hamilton_rhs(const PotentialSpec& P, double t, const PhasePoint& s) {
    require_in_O(s, "hamilton_rhs");
    const PotentialValue u = eval_U(P, t, s.x);
    return {1.0 / std::sqrt(-s.p) - u.u, s.p * u.du_dx};
}

double hamiltonian(const PotentialSpec& P, double t, const PhasePoint& s) {
    require_in_O(s, "hamiltonian");
    return -2.0 * std::sqrt(-s.p) - s.p * eval_U(P, t, s.x).u;
}

PhasePoint legendre_forward(const PotentialSpec& P, double t, const LagrangianPoint& s) {
    const double w = s.v + eval_U(P, t, s.x).u;
    if (!(w > 0.0)) {
        throw DomainError("legendre_forward: v + U must be > 0 (W+ branch), got " + std::to_string(w));
    }
    return {s.x, -1.0 / (w * w)};
}

LagrangianPoint legendre_inverse(const PotentialSpec& P, double t, const PhasePoint& s) {
    require_in_O(s, "legendre_inverse");
    return {s.x, 1.0 / std::sqrt(-s.p) - eval_U(P, t, s.x).u};
}

}  // namespace riccati_lie
