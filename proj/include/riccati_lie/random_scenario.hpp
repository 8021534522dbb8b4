#pragma once

#include <array>
#include <cstdint>
#include <random>

#include "riccati_lie/model.hpp"
#include "riccati_lie/timefn.hpp"

namespace riccati_lie {

/// Random potential built from poly/trig terms, keeping its TimeFn form so it
/// can be rendered into a config file.
struct RandomPotential {
    TimeFn a0;
    TimeFn a1;
    TimeFn a2;

    PotentialSpec spec() const { return {a0, a1, a2}; }
};

struct RandomPotentialOptions {
    double a2_min = 0.5;     ///< lower bound of a2 on [0, horizon]
    double amplitude = 0.5;  ///< scale of the a0, a1 terms and of a2's variation
    double horizon = 2.0;    ///< a2 >= a2_min is guaranteed on [0, horizon]
};

/// a0, a1: linear polynomial plus a sine; a2: positive constant plus a sine and
/// a linear drift, offset so that a2 >= a2_min on [0, horizon].
RandomPotential random_potential(std::mt19937_64& rng, const RandomPotentialOptions& opt = {});

struct PhaseBox {
    double x_max = 3.0;
    double p_min = -4.0;
    double p_max = -0.25;
};

PhasePoint random_phase_point(std::mt19937_64& rng, const PhaseBox& box = {});

/// The seed actually used: RICCATI_LIE_SEED when set and numeric, else `fallback`.
std::uint64_t effective_seed(std::uint64_t fallback);

}  // namespace riccati_lie
