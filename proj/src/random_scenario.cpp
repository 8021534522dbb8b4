#include "riccati_lie/random_scenario.hpp"

#include <cmath>
#include <cstdlib>
#include <string>

namespace riccati_lie {

RandomPotential random_potential(std::mt19937_64& rng, const RandomPotentialOptions& opt) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::uniform_real_distribution<double> freq(0.5, 3.0);
    std::uniform_real_distribution<double> phase(0.0, 6.283185307179586);
    const double A = opt.amplitude;

    RandomPotential r;
    r.a0 = TimeFn::poly({A * u(rng), A * u(rng)}) + TimeFn::sin(A * u(rng), freq(rng), phase(rng));
    r.a1 = TimeFn::poly({A * u(rng), A * u(rng)}) + TimeFn::cos(A * u(rng), freq(rng), phase(rng));

    const double amp = A * u(rng);
    const double drift = 0.5 * A * u(rng);
    // Minimum of drift * t on [0, horizon] is min(0, drift * horizon).
    const double base = opt.a2_min + std::abs(amp) - std::min(0.0, drift * opt.horizon) + 0.5 * A * (u(rng) + 1.0);
    r.a2 = TimeFn::poly({base, drift}) + TimeFn::sin(amp, freq(rng), phase(rng));
    return r;
}

PhasePoint random_phase_point(std::mt19937_64& rng, const PhaseBox& box) {
    std::uniform_real_distribution<double> ux(-box.x_max, box.x_max);
    std::uniform_real_distribution<double> up(box.p_min, box.p_max);
    return {ux(rng), up(rng)};
}

std::uint64_t effective_seed(std::uint64_t fallback) {
    const char* env = std::getenv("RICCATI_LIE_SEED");
    if (env == nullptr || *env == '\0') return fallback;
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end == nullptr || *end != '\0') return fallback;
    return static_cast<std::uint64_t>(v);
}

}  // namespace riccati_lie
