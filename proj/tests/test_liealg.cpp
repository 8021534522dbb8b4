#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "riccati_lie/error.hpp"
#include "riccati_lie/liealg.hpp"
#include "riccati_lie/random_scenario.hpp"

using namespace riccati_lie;
using enum VectorField;

namespace {

bool near(const Vec2& a, const Vec2& b, double tol) {
    return std::abs(a[0] - b[0]) <= tol && std::abs(a[1] - b[1]) <= tol;
}

std::vector<PhasePoint> random_points(std::uint64_t seed, int n) {
    std::mt19937_64 rng(seed);
    std::vector<PhasePoint> pts;
    for (int i = 0; i < n; ++i) pts.push_back(random_phase_point(rng));
    return pts;
}

// Jacobian of Y = [X_b, X_c] by central differences with step h, Richardson
// extrapolated against step h/2 to cancel the O(h^2) truncation term.
Mat2 bracket_jacobian_fd(VectorField b, VectorField c, const PhasePoint& s, double h) {
    auto central = [&](double step) {
        const Vec2 yx = lie_bracket(b, c, {s.x + step, s.p});
        const Vec2 yx_ = lie_bracket(b, c, {s.x - step, s.p});
        const Vec2 yp = lie_bracket(b, c, {s.x, s.p + step});
        const Vec2 yp_ = lie_bracket(b, c, {s.x, s.p - step});
        Mat2 j{};
        for (std::size_t i = 0; i < 2; ++i) {
            j[i][0] = (yx[i] - yx_[i]) / (2 * step);
            j[i][1] = (yp[i] - yp_[i]) / (2 * step);
        }
        return j;
    };
    const Mat2 coarse = central(h);
    const Mat2 fine = central(0.5 * h);
    Mat2 out{};
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t k = 0; k < 2; ++k) out[i][k] = (4.0 * fine[i][k] - coarse[i][k]) / 3.0;
    return out;
}

struct Nested {
    Vec2 value;
    double magnitude;  // max |X_a| * max(|Y|, |J_Y|), sets the round-off scale
};

// [X_a, Y] with Y = [X_b, X_c].
Nested nested_bracket(VectorField a, VectorField b, VectorField c, const PhasePoint& s, double h) {
    const Vec2 y = lie_bracket(b, c, s);
    const Mat2 jy = bracket_jacobian_fd(b, c, s, h);
    const Vec2 xa = vf_eval(a, s);
    const Mat2 ja = vf_jacobian(a, s);
    Vec2 out{};
    for (std::size_t i = 0; i < 2; ++i) {
        out[i] = jy[i][0] * xa[0] + jy[i][1] * xa[1] - (ja[i][0] * y[0] + ja[i][1] * y[1]);
    }
    double big = std::max(std::abs(y[0]), std::abs(y[1]));
    for (const auto& row : jy) big = std::max({big, std::abs(row[0]), std::abs(row[1])});
    return {out, std::max(std::abs(xa[0]), std::abs(xa[1])) * big};
}

}  // namespace

TEST_CASE("vf_eval") {
    CHECK(vf_eval(X1, {0, -1}) == Vec2{1, 0});
    CHECK(vf_eval(X3, {2, -1}) == Vec2{2, 1});
    CHECK(vf_eval(X5, {1, -4}) == Vec2{0.5, 4});
    CHECK(vf_eval(X4, {3, -2}) == Vec2{9, 12});
    CHECK_THROWS_AS(vf_eval(X2, {0, 0}), DomainError);
}

TEST_CASE("vf_jacobian: closed forms") {
    CHECK(vf_jacobian(X2, {5, -3}) == Mat2{{{0, 0}, {0, 0}}});
    CHECK(vf_jacobian(X4, {1, -1}) == Mat2{{{2, 0}, {2, -2}}});
    CHECK(vf_jacobian(X1, {0, -1}) == Mat2{{{0, 0.5}, {0, 0}}});
    CHECK_THROWS_AS(vf_jacobian(X1, {0, 1}), DomainError);
}

TEST_CASE("property: vf_jacobian matches finite differences") {
    const double h = 1e-6;
    for (const PhasePoint& s : random_points(31, 50)) {
        for (VectorField f : kAllFields) {
            const Mat2 j = vf_jacobian(f, s);
            const Vec2 dx = vf_eval(f, {s.x + h, s.p}), dx_ = vf_eval(f, {s.x - h, s.p});
            const Vec2 dp = vf_eval(f, {s.x, s.p + h}), dp_ = vf_eval(f, {s.x, s.p - h});
            for (std::size_t i = 0; i < 2; ++i) {
                CHECK(j[i][0] == doctest::Approx((dx[i] - dx_[i]) / (2 * h)).epsilon(1e-6).scale(1.0));
                CHECK(j[i][1] == doctest::Approx((dp[i] - dp_[i]) / (2 * h)).epsilon(1e-6).scale(1.0));
            }
        }
    }
}

TEST_CASE("lie_bracket: worked values") {
    CHECK(near(lie_bracket(X2, X3, {1, -1}), {1, 0}, 1e-15));
    CHECK(near(lie_bracket(X2, X4, {1, -1}), {2, 2}, 1e-15));
    for (const PhasePoint& s : random_points(32, 10)) CHECK(lie_bracket(X1, X2, s) == Vec2{0, 0});
}

TEST_CASE("property: bracket antisymmetry is exact") {
    for (const PhasePoint& s : random_points(33, 50)) {
        for (VectorField a : kAllFields) {
            for (VectorField b : kAllFields) {
                const Vec2 ab = lie_bracket(a, b, s);
                const Vec2 ba = lie_bracket(b, a, s);
                CHECK(ab[0] == -ba[0]);
                CHECK(ab[1] == -ba[1]);
            }
        }
    }
}

TEST_CASE("property: Jacobi identity") {
    for (const PhasePoint& s : random_points(34, 30)) {
        for (std::size_t i = 0; i < 5; ++i) {
            for (std::size_t j = i + 1; j < 5; ++j) {
                for (std::size_t k = j + 1; k < 5; ++k) {
                    const VectorField a = kAllFields[i], b = kAllFields[j], c = kAllFields[k];
                    const Nested t1 = nested_bracket(a, b, c, s, 1e-5);
                    const Nested t2 = nested_bracket(b, c, a, s, 1e-5);
                    const Nested t3 = nested_bracket(c, a, b, s, 1e-5);
                    const double tol = 1e-9 * std::max({1.0, t1.magnitude, t2.magnitude, t3.magnitude});
                    CHECK(std::abs(t1.value[0] + t2.value[0] + t3.value[0]) <= tol);
                    CHECK(std::abs(t1.value[1] + t2.value[1] + t3.value[1]) <= tol);
                }
            }
        }
    }
}

TEST_CASE("check_commutation_table") {
    const auto pts = random_points(35, 100);
    CHECK(check_commutation_table(pts) <= 1e-10);
    const PhasePoint one{0, -1};
    CHECK(check_commutation_table(std::span(&one, 1)) <= 1e-12);
    CHECK(check_commutation_table({}) == 0.0);

    StructureConstants corrupted = structure_constants();
    corrupted[index_of(X2)][index_of(X4)][index_of(X3)] = 2.5;
    CHECK(check_commutation_table(pts, corrupted) > 0.1);
    CHECK_THROWS_AS(check_commutation_table(std::vector<PhasePoint>{{0, 1}}), DomainError);
}

TEST_CASE("levi_structure_check") {
    const LeviReport report = levi_structure_check();
    CHECK(report.all_passed());
    for (const auto& a : report.assertions) {
        INFO(a.name);
        CHECK(a.passed);
    }
    auto has = [&report](const std::string& name) {
        for (const auto& a : report.assertions)
            if (a.name == name) return a.passed;
        return false;
    };
    CHECK(has("V2 closes: [X2,X4] in <X2,X3,X4>"));
    CHECK(has("V1 abelian: [X1,X5] = 0"));
    CHECK(has("V1 ideal: [X4,X1] in <X1,X5>"));

    StructureConstants corrupted = structure_constants();
    corrupted[index_of(X1)][index_of(X4)][index_of(X3)] = 1.0;  // [X1,X4] leaks into V2
    corrupted[index_of(X4)][index_of(X1)][index_of(X3)] = -1.0;
    CHECK_FALSE(levi_structure_check(corrupted).all_passed());
}

TEST_CASE("decompose_rhs_check") {
    const PotentialSpec canon{TimeFn::constant(0), TimeFn::constant(0), TimeFn::constant(1)};
    CHECK(decompose_rhs_check(canon, 0.0, {0, -0.25}) <= 1e-15);
    const PotentialSpec zero{};
    CHECK(decompose_rhs_check(zero, 0.3, {2.5, -0.7}) == 0.0);

    std::mt19937_64 rng(36);
    std::uniform_real_distribution<double> ut(0.0, 2.0);
    for (int i = 0; i < 100; ++i) {
        const PotentialSpec P = random_potential(rng).spec();
        const PhasePoint s = random_phase_point(rng);
        const double t = ut(rng);
        const double scale = 1.0 + std::abs(s.x) * std::abs(s.x) + std::abs(s.p) * (1.0 + std::abs(s.x));
        CHECK(decompose_rhs_check(P, t, s) <= 1e-14 * scale);
    }
}

TEST_CASE("act: worked values") {
    for (const PhasePoint& s : random_points(37, 20)) CHECK(act(GroupElement::identity(), s) == s);
    CHECK(act(GroupElement::translation(1, 0), {0, -1}) == PhasePoint{-1, -1});
    CHECK(act(GroupElement::linear(Mat2{{{2, 0}, {0, 0.5}}}), {1, -1}) == PhasePoint{4, -0.25});

    CHECK_THROWS_AS(GroupElement(0, 0, Mat2{{{2, 0}, {0, 1}}}), ContractError);
    CHECK_THROWS_AS(act(GroupElement::linear(Mat2{{{0, -1}, {1, 0}}}), {0, -1}), DomainError);  // gamma x + delta = 0
    CHECK_THROWS_AS(act(GroupElement::translation(0, -2), {0, -1}), DomainError);             // leaves chart
    CHECK_THROWS_AS(act(GroupElement::identity(), {0, 0}), DomainError);
}

TEST_CASE("compose_subgroup") {
    const GroupElement g = compose_subgroup(GroupElement::translation(1, 0), GroupElement::translation(2, 3));
    CHECK(g.lambda1() == 3.0);
    CHECK(g.lambda5() == 3.0);
    CHECK(g.is_translation());

    const Mat2 A{{{2, 1}, {1, 1}}};
    const GroupElement h = compose_subgroup(GroupElement::linear(A), GroupElement::identity());
    CHECK(h.matrix() == A);
    CHECK(h.is_linear());

    CHECK_THROWS_AS(compose_subgroup(GroupElement::translation(1, 0), GroupElement::linear(A)), ContractError);
}

TEST_CASE("action_conditioning") {
    CHECK(action_conditioning(GroupElement::translation(1, 2), {3, -1}) == 1.0);
    CHECK(action_conditioning(GroupElement::linear(Mat2{{{0, -1}, {1, 0}}}), {0, -1}) == 0.0);
    CHECK(action_conditioning(GroupElement::linear(Mat2{{{1, 0}, {1, 1}}}), {-0.5, -1}) == doctest::Approx(1.0 / 3.0));
}

TEST_CASE("property: subgroup composition respects the action") {
    std::mt19937_64 rng(38);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    int checked = 0;
    for (int i = 0; i < 400; ++i) {
        const PhasePoint s = random_phase_point(rng);
        const bool translations = i % 2 == 0;
        GroupElement g1 = GroupElement::identity(), g2 = GroupElement::identity();
        if (translations) {
            g1 = GroupElement::translation(u(rng), 0.3 * u(rng));
            g2 = GroupElement::translation(u(rng), 0.3 * u(rng));
        } else {
            auto random_sl2 = [&] {
                const double a = 1.0 + 0.5 * u(rng), b = u(rng), c = u(rng);
                return Mat2{{{a, b}, {c, (1.0 + b * c) / a}}};
            };
            g1 = GroupElement::linear(random_sl2());
            g2 = GroupElement::linear(random_sl2());
        }
        PhasePoint lhs, rhs;
        try {
            const GroupElement g12 = compose_subgroup(g1, g2);
            const PhasePoint mid = act(g2, s);
            if (std::min({action_conditioning(g2, s), action_conditioning(g1, mid), action_conditioning(g12, s)}) <
                1e-2) {
                continue;  // next to the pole of a fraction
            }
            lhs = act(g12, s);
            rhs = act(g1, mid);
        } catch (const DomainError&) {
            continue;  // outside the local action's chart
        }
        const double sx = std::max(1.0, std::abs(rhs.x));
        const double sp = std::max(1.0, std::abs(rhs.p));
        CHECK(std::abs(lhs.x - rhs.x) <= 1e-12 * sx);
        CHECK(std::abs(lhs.p - rhs.p) <= 1e-12 * sp);
        ++checked;
    }
    CHECK(checked > 300);
}

TEST_CASE("fundamental vector fields") {
    CHECK(near(fundamental_vf(GroupDirection::lambda1, {0, -1}), {-1, 0}, 1e-6));
    CHECK(near(fundamental_vf(GroupDirection::beta, {1, -1}), {1, 0}, 1e-6));
    CHECK(near(fundamental_vf(GroupDirection::diag, {1, -1}), {2, 2}, 1e-6));

    for (const PhasePoint& s : random_points(39, 100)) {
        for (GroupDirection d : {GroupDirection::lambda1, GroupDirection::lambda5, GroupDirection::beta,
                                 GroupDirection::gamma, GroupDirection::diag}) {
            INFO(to_string(d));
            CHECK(near(fundamental_vf(d, s), combination_eval(expected_fundamental_field(d), s), 1e-6 * (1 + s.x * s.x)));
        }
    }
}
