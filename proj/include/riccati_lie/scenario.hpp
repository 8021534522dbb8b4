#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "riccati_lie/model.hpp"
#include "riccati_lie/timefn.hpp"

namespace riccati_lie {

enum class IcKind { phase, lagrangian };

/// Potential as written in a config file.
struct PotentialConfig {
    TimeFn a0;
    TimeFn a1;
    TimeFn a2;
    PotentialSpec spec() const { return {a0, a1, a2}; }
    bool operator==(const PotentialConfig&) const = default;
};

/// Riccati coefficients as written in a config file; f0, f1 follow from the constraints.
struct RiccatiConfig {
    TimeFn c0;
    TimeFn c1;
    TimeFn c2;
    TimeFn c3;
    RiccatiSpec spec() const { return RiccatiSpec::from_coefficients(c0, c1, c2, c3); }
    bool operator==(const RiccatiConfig&) const = default;
};

/// A run configuration. Exactly one of `potential` / `riccati` is set.
///
/// INI layout:
///
///     [potential]            # or [riccati] with keys c0..c3
///     a0 = poly 0
///     a1 = poly 0
///     a2 = poly 1
///     [run]
///     t0 = 0
///     t1 = 1
///     dt = 0.01              # output step, default (t1 - t0) / 100
///     tol = 1e-10
///     seed = 1
///     [ics]
///     kind = phase           # phase: "x p", lagrangian: "x v"
///     ic = 0 -0.25           # repeatable
///
/// `#` starts a comment. Values of a*, c* keys use the timefn grammar.
struct Scenario {
    std::optional<PotentialConfig> potential;
    std::optional<RiccatiConfig> riccati;
    double t0 = 0.0;
    double t1 = 1.0;
    double dt = 0.0;  ///< 0 selects (t1 - t0) / 100
    double tol = 1e-10;
    std::uint64_t seed = 0;
    IcKind ic_kind = IcKind::phase;
    std::vector<Vec2> ics;

    double output_step() const { return dt > 0.0 ? dt : (t1 - t0) / 100.0; }
    TimeGrid validation_grid() const { return {t0, t1, 101}; }

    /// Uniform output times t0, t0 + dt, ..., ending exactly at t1.
    std::vector<double> output_grid() const;

    /// The Hamiltonian potential: direct, or recovered from the Riccati
    /// coefficients (the c0 defect is returned through `residual` when given).
    PotentialSpec potential_spec(double* residual = nullptr) const;

    /// The Riccati spec: direct, or derived from the potential.
    RiccatiSpec riccati_spec() const;

    /// ICs as points of O at t0 (Lagrangian ICs go through the Legendre map).
    /// Throws DomainError when an IC violates its domain constraint.
    std::vector<PhasePoint> phase_ics() const;

    /// ICs as (x, v) at t0 (phase ICs go through the inverse Legendre map).
    std::vector<LagrangianPoint> lagrangian_ics() const;

    bool operator==(const Scenario&) const = default;
};

/// a = (0, 0, 1) on [0, 1] at tol 1e-10 with no ICs: x'' + 3 x x' + x^3 = 0.
Scenario canonical_scenario();

/// Throws ParseError (position = 1-based line number) on malformed input and
/// for t1 <= t0, tol <= 0 or a missing/duplicated coefficient section.
Scenario parse_scenario(std::string_view text);

/// Reads and parses a file; I/O failures are reported as ParseError.
Scenario load_scenario(const std::string& path);

/// Canonical INI text; parse_scenario(render_scenario(s)) == s.
std::string render_scenario(const Scenario& s);

/// Parses "x,y" or "x y" into a pair of reals.
Vec2 parse_pair(std::string_view text);

}  // namespace riccati_lie
