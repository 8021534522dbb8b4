#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "riccati_lie/timefn.hpp"

namespace riccati_lie {

using Vec2 = std::array<double, 2>;
using Mat2 = std::array<std::array<double, 2>, 2>;

/// A point of O = {(x, p) : p < 0}.
struct PhasePoint {
    double x = 0.0;
    double p = -1.0;

    Vec2 vec() const { return {x, p}; }
    static PhasePoint from(const Vec2& v) { return {v[0], v[1]}; }
    bool operator==(const PhasePoint&) const = default;
};

/// (x, v) with v = dx/dt. Only the W+ branch v + U(t, x) > 0 is handled.
struct LagrangianPoint {
    double x = 0.0;
    double v = 0.0;

    Vec2 vec() const { return {x, v}; }
    static LagrangianPoint from(const Vec2& v) { return {v[0], v[1]}; }
    bool operator==(const LagrangianPoint&) const = default;
};

/// Uniform sampling of a working interval, used for sign checks and residuals.
struct TimeGrid {
    double t0 = 0.0;
    double t1 = 1.0;
    std::size_t points = 101;

    std::vector<double> nodes() const;
};

/// U(t, x) = a0(t) + a1(t) x + a2(t) x^2.
struct PotentialSpec {
    Coefficient a0;
    Coefficient a1;
    Coefficient a2;
};

/// x'' + (f0 + f1 x) x' + c0 + c1 x + c2 x^2 + c3 x^3 = 0.
struct RiccatiSpec {
    Coefficient c0;
    Coefficient c1;
    Coefficient c2;
    Coefficient c3;
    Coefficient f0;
    Coefficient f1;

    /// Fills f1 = 3 sqrt(c3) and f0 = c2 / sqrt(c3) - c3' / (2 c3). Callers
    /// must ensure c3 > 0 wherever the spec is evaluated.
    static RiccatiSpec from_coefficients(Coefficient c0, Coefficient c1, Coefficient c2, Coefficient c3);
};

struct PotentialValue {
    double u = 0.0;
    double du_dx = 0.0;
    double du_dt = 0.0;
};

PotentialValue eval_U(const PotentialSpec& P, double t, double x);

/// Riccati coefficients of the Euler-Lagrange equation of L = 1 / (v + U):
/// c3 = a2^2, c2 = a2' + 3/2 a1 a2, c1 = a1' + a1^2/2 + a0 a2,
/// c0 = a0' + a0 a1 / 2, f1 = 3 a2, f0 = 3/2 a1.
/// Throws DomainError if a2 <= 0 at any node of `grid`.
RiccatiSpec coefficients_from_potential(const PotentialSpec& P, const TimeGrid& grid = {});

struct RecoveredPotential {
    PotentialSpec potential;
    /// sup over the grid of |c0 - a0' - a0 a1 / 2|.
    double residual = 0.0;
};

/// Inverse of coefficients_from_potential. The c -> a problem is
/// overdetermined; a0, a1, a2 are fixed by c1, c2, c3 and the mismatch in c0
/// is reported as `residual`. Throws DomainError if c3 <= 0 on the grid.
RecoveredPotential potential_from_coefficients(const RiccatiSpec& R, const TimeGrid& grid = {});

/// Largest relative defect of the f1, f0 constraint formulas on the grid.
struct ConstraintResidual {
    double f1 = 0.0;
    double f0 = 0.0;
};
ConstraintResidual constraint_residuals(const RiccatiSpec& R, const TimeGrid& grid = {});

/// (dx/dt, dv/dt) of the second-order Riccati equation.
Vec2 riccati2_rhs(const RiccatiSpec& R, double t, const LagrangianPoint& s);

/// (dx/dt, dp/dt) of Hamilton's equations for h. Throws DomainError if p >= 0.
Vec2 hamilton_rhs(const PotentialSpec& P, double t, const PhasePoint& s);

/// h(t, x, p) = -2 sqrt(-p) - p U(t, x). Throws DomainError if p >= 0.
double hamiltonian(const PotentialSpec& P, double t, const PhasePoint& s);

/// (x, v) -> (x, -1 / (v + U)^2). Throws DomainError unless v + U > 0.
PhasePoint legendre_forward(const PotentialSpec& P, double t, const LagrangianPoint& s);

/// (x, p) -> (x, 1 / sqrt(-p) - U). Throws DomainError if p >= 0.
LagrangianPoint legendre_inverse(const PotentialSpec& P, double t, const PhasePoint& s);

/// Throws DomainError unless s.p < 0 (NaN rejected).
void require_in_O(const PhasePoint& s, const char* where);

}  // namespace riccati_lie
