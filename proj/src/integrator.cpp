#include "riccati_lie/integrator.hpp"

namespace riccati_lie {

const char* to_string(SystemTag tag) noexcept {
    switch (tag) {
        case SystemTag::hamiltonian: return "hamiltonian";
        case SystemTag::riccati2: return "riccati2";
        case SystemTag::other: return "other";
    }
    return "other";
}

Trajectory integrate_hamiltonian(const PotentialSpec& P, double t0, const PhasePoint& s0, double t1, double tol) {
    require_in_O(s0, "integrate_hamiltonian");
    IntegratorOptions opt;
    opt.tol = tol;
    opt.tag = SystemTag::hamiltonian;
    return integrate<2>([&P](double t, const Vec2& y) { return hamilton_rhs(P, t, PhasePoint::from(y)); }, t0,
                        s0.vec(), t1, opt, [](const Vec2& y) { return y[1] <= -kMomentumGuard; });
}

Trajectory integrate_riccati2(const RiccatiSpec& R, double t0, const LagrangianPoint& s0, double t1, double tol) {
    IntegratorOptions opt;
    opt.tol = tol;
    opt.tag = SystemTag::riccati2;
    return integrate<2>([&R](double t, const Vec2& y) { return riccati2_rhs(R, t, LagrangianPoint::from(y)); }, t0,
                        s0.vec(), t1, opt);
}

BasicTrajectory<8> integrate_hamiltonian_copies(const PotentialSpec& P, double t0,
                                                const std::array<PhasePoint, 4>& s0, double t1, double tol) {
    using State8 = std::array<double, 8>;
    State8 y0{};
    for (std::size_t i = 0; i < 4; ++i) {
        require_in_O(s0[i], "integrate_hamiltonian_copies");
        y0[2 * i] = s0[i].x;
        y0[2 * i + 1] = s0[i].p;
    }
    IntegratorOptions opt;
    opt.tol = tol;
    opt.tag = SystemTag::hamiltonian;
    return integrate<8>(
        [&P](double t, const State8& y) {
            State8 d{};
            for (std::size_t i = 0; i < 4; ++i) {
                const Vec2 r = hamilton_rhs(P, t, {y[2 * i], y[2 * i + 1]});
                d[2 * i] = r[0];
                d[2 * i + 1] = r[1];
            }
            return d;
        },
        t0, y0, t1, opt,
        [](const State8& y) {
            for (std::size_t i = 0; i < 4; ++i) {
                if (!(y[2 * i + 1] <= -kMomentumGuard)) return false;
            }
            return true;
        });
}

}  // namespace riccati_lie
