#pragma once

#include <span>
#include <utility>
#include <vector>

#include "riccati_lie/integrator.hpp"
#include "riccati_lie/model.hpp"

namespace riccati_lie {

/// Four points of O. Copy 0 is the unknown slot recovered by the rule.
struct PhaseTuple {
    PhasePoint xi0;
    PhasePoint xi1;
    PhasePoint xi2;
    PhasePoint xi3;
};

/// Values of the first integrals: k1 = F1, k2 = F2, and F0 (copies 1-3 only).
struct Constants {
    double k1 = 0.0;
    double k2 = 0.0;
    double F0 = 0.0;
};

/// Relative threshold for the genericity guards. A quantity is treated as
/// zero when its magnitude is at most rel_eps times the sum of the magnitudes
/// of the terms it is built from.
struct GenericityOptions {
    double rel_eps = 1e-12;
};

// sqrt(p_i p_j) is always evaluated as sqrt(-p_i) * sqrt(-p_j).

/// F0 = (x2-x3) sqrt(p2 p3) + (x3-x1) sqrt(p3 p1) + (x1-x2) sqrt(p1 p2)
double integral_F0(const PhasePoint& xi1, const PhasePoint& xi2, const PhasePoint& xi3);

/// F1 = (x1-x2) sqrt(p1 p2) + (x2-x0) sqrt(p2 p0) + (x0-x1) sqrt(p0 p1)
double integral_F1(const PhasePoint& xi0, const PhasePoint& xi1, const PhasePoint& xi2);

/// F2 = (x1-x3) sqrt(p1 p3) + (x3-x0) sqrt(p3 p0) + (x0-x1) sqrt(p0 p1)
double integral_F2(const PhasePoint& xi0, const PhasePoint& xi1, const PhasePoint& xi3);

Constants constants_from_four(const PhaseTuple& tuple);

/// Relative size of F0 and of the x0 denominator for this tuple, each divided
/// by the sum of the magnitudes of its terms. Values near zero mean the tuple
/// is close to the degenerate set where the rule is ill-conditioned.
double tuple_conditioning(const PhaseTuple& tuple);

/// Closed-form superposition rule: the point (x0, p0) whose integrals with
/// the particular solutions xi1..xi3 equal k.k1 and k.k2. Uses k.F0 as the
/// value of F0(xi1, xi2, xi3).
///
/// Throws GenericityError when F0 or the x0 denominator vanishes to within
/// the genericity threshold, BranchError when the bracket defining
/// sqrt(-p0) is not positive.
PhasePoint superpose_point(const PhasePoint& xi1, const PhasePoint& xi2, const PhasePoint& xi3, const Constants& k,
                           const GenericityOptions& opt = {});

/// Applies the rule at every grid time to samples of three Hamiltonian
/// solutions. F0 is re-evaluated from the samples at each time; only k1, k2
/// are taken from `k`. Stored derivatives are the exact time derivatives of
/// the rule along the inputs (chain rule through their stored derivatives).
///
/// Throws RangeError for grid times outside any input's range; genericity and
/// branch errors carry the offending t in their message.
Trajectory superpose_trajectory(const Trajectory& traj1, const Trajectory& traj2, const Trajectory& traj3,
                                const Constants& k, std::span<const double> grid, const GenericityOptions& opt = {});

/// The projection x0(t) of a reconstructed trajectory: the general solution of
/// the second-order Riccati equation.
std::vector<std::pair<double, double>> upsilon(const Trajectory& reconstructed);

}  // namespace riccati_lie
