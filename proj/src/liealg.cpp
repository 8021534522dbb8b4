#include "riccati_lie/liealg.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "riccati_lie/error.hpp"

namespace riccati_lie {

namespace {

StructureConstants build_table() {
    StructureConstants t{};
    auto set = [&t](VectorField a, VectorField b, VectorField c, double coeff) {
        t[index_of(a)][index_of(b)][index_of(c)] = coeff;
        t[index_of(b)][index_of(a)][index_of(c)] = -coeff;
    };
    using enum VectorField;
    set(X1, X3, X1, 0.5);
    set(X1, X4, X5, 1.0);
    set(X2, X3, X2, 1.0);
    set(X2, X4, X3, 2.0);
    set(X2, X5, X1, 1.0);
    set(X3, X4, X4, 1.0);
    set(X3, X5, X5, 0.5);
    return t;
}

bool is_zero(double v) { return v == 0.0; }

}  // namespace

const StructureConstants& structure_constants() {
    static const StructureConstants table = build_table();
    return table;
}

Vec2 vf_eval(VectorField id, const PhasePoint& s) {
    require_in_O(s, "vf_eval");
    const double x = s.x;
    const double p = s.p;
    const double r = std::sqrt(-p);
    switch (id) {
        case VectorField::X1: return {1.0 / r, 0.0};
        case VectorField::X2: return {1.0, 0.0};
        case VectorField::X3: return {x, -p};
        case VectorField::X4: return {x * x, -2.0 * x * p};
        case VectorField::X5: return {x / r, 2.0 * r};
    }
    throw ContractError("vf_eval: unknown vector field");
}

Mat2 vf_jacobian(VectorField id, const PhasePoint& s) {
    require_in_O(s, "vf_jacobian");
    const double x = s.x;
    const double p = s.p;
    const double r = std::sqrt(-p);
    const double r3 = r * r * r;
    switch (id) {
        case VectorField::X1: return Mat2{{{0.0, 0.5 / r3}, {0.0, 0.0}}};
        case VectorField::X2: return Mat2{{{0.0, 0.0}, {0.0, 0.0}}};
        case VectorField::X3: return Mat2{{{1.0, 0.0}, {0.0, -1.0}}};
        case VectorField::X4: return Mat2{{{2.0 * x, 0.0}, {-2.0 * p, -2.0 * x}}};
        case VectorField::X5: return Mat2{{{1.0 / r, 0.5 * x / r3}, {0.0, -1.0 / r}}};
    }
    throw ContractError("vf_jacobian: unknown vector field");
}

Vec2 combination_eval(const FieldCombination& c, const PhasePoint& s) {
    Vec2 out{0.0, 0.0};
    for (VectorField f : kAllFields) {
        const double w = c[index_of(f)];
        if (w == 0.0) continue;
        const Vec2 v = vf_eval(f, s);
        out[0] += w * v[0];
        out[1] += w * v[1];
    }
    return out;
}

Vec2 lie_bracket(VectorField a, VectorField b, const PhasePoint& s) {
    const Vec2 va = vf_eval(a, s);
    const Vec2 vb = vf_eval(b, s);
    const Mat2 ja = vf_jacobian(a, s);
    const Mat2 jb = vf_jacobian(b, s);
    Vec2 out{};
    for (std::size_t i = 0; i < 2; ++i) {
        const double ab = jb[i][0] * va[0] + jb[i][1] * va[1];
        const double ba = ja[i][0] * vb[0] + ja[i][1] * vb[1];
        out[i] = ab - ba;
    }
    return out;
}

double check_commutation_table(std::span<const PhasePoint> points, const StructureConstants& table) {
    double worst = 0.0;
    for (const PhasePoint& s : points) {
        for (std::size_t a = 0; a < 5; ++a) {
            for (std::size_t b = a + 1; b < 5; ++b) {
                const Vec2 got = lie_bracket(kAllFields[a], kAllFields[b], s);
                const Vec2 want = combination_eval(table[a][b], s);
                worst = std::max({worst, std::abs(got[0] - want[0]), std::abs(got[1] - want[1])});
            }
        }
    }
    return worst;
}

bool LeviReport::all_passed() const {
    return std::all_of(assertions.begin(), assertions.end(), [](const auto& a) { return a.passed; });
}

LeviReport levi_structure_check(const StructureConstants& table) {
    using enum VectorField;
    constexpr std::array<VectorField, 3> v2{X2, X3, X4};
    constexpr std::array<VectorField, 2> v1{X1, X5};
    auto coeff = [&table](VectorField a, VectorField b, VectorField c) {
        return table[index_of(a)][index_of(b)][index_of(c)];
    };

    LeviReport report;
    auto add = [&report](std::string name, bool ok) { report.assertions.push_back({std::move(name), ok}); };

    // Antisymmetry of the table itself.
    bool antisym = true;
    for (VectorField a : kAllFields)
        for (VectorField b : kAllFields)
            for (VectorField c : kAllFields) antisym = antisym && coeff(a, b, c) == -coeff(b, a, c);
    add("table antisymmetric", antisym);

    // Jacobi identity on the constants: sum_cyclic [[a,b],c] = 0.
    double jacobi = 0.0;
    for (VectorField a : kAllFields) {
        for (VectorField b : kAllFields) {
            for (VectorField c : kAllFields) {
                for (VectorField e : kAllFields) {
                    double acc = 0.0;
                    for (VectorField d : kAllFields) {
                        acc += coeff(a, b, d) * coeff(d, c, e) + coeff(b, c, d) * coeff(d, a, e) +
                               coeff(c, a, d) * coeff(d, b, e);
                    }
                    jacobi = std::max(jacobi, std::abs(acc));
                }
            }
        }
    }
    add("jacobi identity on structure constants", jacobi == 0.0);

    // V2 = <X2, X3, X4> is a subalgebra.
    for (VectorField a : v2) {
        for (VectorField b : v2) {
            if (index_of(a) >= index_of(b)) continue;
            bool closes = true;
            for (VectorField c : v1) closes = closes && is_zero(coeff(a, b, c));
            add("V2 closes: [X" + std::to_string(static_cast<int>(a)) + ",X" + std::to_string(static_cast<int>(b)) +
                    "] in <X2,X3,X4>",
                closes);
        }
    }

    // Killing form of V2: non-degenerate and indefinite, i.e. sl(2,R) rather than so(3).
    std::array<std::array<std::array<double, 3>, 3>, 3> ad{};  // ad[i][row][col]
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j)
            for (std::size_t k = 0; k < 3; ++k) ad[i][k][j] = coeff(v2[i], v2[j], v2[k]);
    std::array<std::array<double, 3>, 3> killing{};
    for (std::size_t i = 0; i < 3; ++i) {
        for (std::size_t j = 0; j < 3; ++j) {
            double tr = 0.0;
            for (std::size_t r = 0; r < 3; ++r)
                for (std::size_t c = 0; c < 3; ++c) tr += ad[i][r][c] * ad[j][c][r];
            killing[i][j] = tr;
        }
    }
    const auto& K = killing;
    const double det = K[0][0] * (K[1][1] * K[2][2] - K[1][2] * K[2][1]) -
                       K[0][1] * (K[1][0] * K[2][2] - K[1][2] * K[2][0]) +
                       K[0][2] * (K[1][0] * K[2][1] - K[1][1] * K[2][0]);
    const double minor2 = K[0][0] * K[1][1] - K[0][1] * K[1][0];
    const bool negative_definite = K[0][0] < 0.0 && minor2 > 0.0 && det < 0.0;
    add("V2 semisimple (Killing form non-degenerate)", det != 0.0);
    add("V2 of sl(2,R) type (Killing form indefinite)", det != 0.0 && !negative_definite);

    // V1 = <X1, X5> is abelian.
    bool abelian = true;
    for (VectorField c : kAllFields) abelian = abelian && is_zero(coeff(X1, X5, c));
    add("V1 abelian: [X1,X5] = 0", abelian);

    // [V, V1] subset of V1.
    for (VectorField a : kAllFields) {
        for (VectorField b : v1) {
            bool inside = true;
            for (VectorField c : v2) inside = inside && is_zero(coeff(a, b, c));
            add("V1 ideal: [X" + std::to_string(static_cast<int>(a)) + ",X" + std::to_string(static_cast<int>(b)) +
                    "] in <X1,X5>",
                inside);
        }
    }
    return report;
}

double decompose_rhs_check(const PotentialSpec& P, double t, const PhasePoint& s) {
    const Vec2 rhs = hamilton_rhs(P, t, s);
    const FieldCombination c{1.0, -P.a0(t), -P.a1(t), -P.a2(t), 0.0};
    const Vec2 combo = combination_eval(c, s);
    return std::max(std::abs(rhs[0] - combo[0]), std::abs(rhs[1] - combo[1]));
}

double decompose_rhs_scale(const PotentialSpec& P, double t, const PhasePoint& s) {
    require_in_O(s, "decompose_rhs_scale");
    const double a0 = std::abs(P.a0(t)), a1 = std::abs(P.a1(t)), a2 = std::abs(P.a2(t));
    const double ax = std::abs(s.x), ap = std::abs(s.p);
    return std::max(1.0 / std::sqrt(ap) + a0 + a1 * ax + a2 * ax * ax, a1 * ap + 2.0 * a2 * ax * ap);
}

// --- group action ------------------------------------------------------------

namespace {
constexpr Mat2 kIdentity{{{1.0, 0.0}, {0.0, 1.0}}};
}

GroupElement::GroupElement(double lambda1, double lambda5, const Mat2& a)
    : lambda1_(lambda1), lambda5_(lambda5), a_(a) {
    const double det = a[0][0] * a[1][1] - a[0][1] * a[1][0];
    if (!(std::abs(det - 1.0) <= 1e-12)) {
        throw ContractError("GroupElement: det A must be 1, got " + std::to_string(det));
    }
}

GroupElement GroupElement::identity() { return {0.0, 0.0, kIdentity}; }
GroupElement GroupElement::translation(double lambda1, double lambda5) { return {lambda1, lambda5, kIdentity}; }
GroupElement GroupElement::linear(const Mat2& a) { return {0.0, 0.0, a}; }

bool GroupElement::is_translation() const { return a_ == kIdentity; }
bool GroupElement::is_linear() const { return lambda1_ == 0.0 && lambda5_ == 0.0; }

PhasePoint act(const GroupElement& g, const PhasePoint& s) {
    require_in_O(s, "act");
    const Mat2& A = g.matrix();
    const double den = A[1][0] * s.x + A[1][1];
    if (den == 0.0) throw DomainError("act: singular fraction, gamma*x + delta = 0");
    const double x_bar = (A[0][0] * s.x + A[0][1]) / den;
    const double p_bar = s.p * den * den;
    if (g.lambda5() == 0.0) {
        // The general expression reduces to (x_bar - lambda1 / sqrt(-p_bar), p_bar).
        return {g.lambda1() == 0.0 ? x_bar : x_bar - g.lambda1() / std::sqrt(-p_bar), p_bar};
    }
    const double r = std::sqrt(-p_bar) + g.lambda5();
    if (!(r > 0.0)) {
        throw DomainError("act: sqrt(-p_bar) + lambda5 must be > 0, got " + std::to_string(r));
    }
    return {(std::sqrt(-p_bar) * x_bar - g.lambda1()) / r, -(r * r)};
}

double action_conditioning(const GroupElement& g, const PhasePoint& s) {
    const double gx = g.matrix()[1][0] * s.x, d = g.matrix()[1][1];
    const double scale = std::abs(gx) + std::abs(d);
    return scale == 0.0 ? 0.0 : std::abs(gx + d) / scale;
}

GroupElement compose_subgroup(const GroupElement& g1, const GroupElement& g2) {
    if (g1.is_translation() && g2.is_translation()) {
        return GroupElement::translation(g1.lambda1() + g2.lambda1(), g1.lambda5() + g2.lambda5());
    }
    if (g1.is_linear() && g2.is_linear()) {
        const Mat2& a = g1.matrix();
        const Mat2& b = g2.matrix();
        Mat2 m{};
        for (std::size_t i = 0; i < 2; ++i)
            for (std::size_t j = 0; j < 2; ++j) m[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        // The product of unimodular matrices can drift from det 1 by rounding
        // only, well inside the constructor's tolerance.
        return GroupElement::linear(m);
    }
    throw ContractError("compose_subgroup: elements must both be translations or both lie in SL(2,R)");
}

namespace {

GroupElement one_parameter(GroupDirection d, double s) {
    switch (d) {
        case GroupDirection::lambda1: return GroupElement::translation(s, 0.0);
        case GroupDirection::lambda5: return GroupElement::translation(0.0, s);
        case GroupDirection::beta: return GroupElement::linear(Mat2{{{1.0, s}, {0.0, 1.0}}});
        case GroupDirection::gamma: return GroupElement::linear(Mat2{{{1.0, 0.0}, {s, 1.0}}});
        case GroupDirection::diag: return GroupElement::linear(Mat2{{{std::exp(s), 0.0}, {0.0, std::exp(-s)}}});
    }
    throw ContractError("one_parameter: unknown direction");
}

}  // namespace

Vec2 fundamental_vf(GroupDirection direction, const PhasePoint& s, double h) {
    const PhasePoint fwd = act(one_parameter(direction, h), s);
    const PhasePoint bwd = act(one_parameter(direction, -h), s);
    return {(fwd.x - bwd.x) / (2.0 * h), (fwd.p - bwd.p) / (2.0 * h)};
}

FieldCombination expected_fundamental_field(GroupDirection direction) {
    switch (direction) {
        case GroupDirection::lambda1: return {-1.0, 0.0, 0.0, 0.0, 0.0};
        case GroupDirection::lambda5: return {0.0, 0.0, 0.0, 0.0, -1.0};
        case GroupDirection::beta: return {0.0, 1.0, 0.0, 0.0, 0.0};
        case GroupDirection::gamma: return {0.0, 0.0, 0.0, -1.0, 0.0};
        case GroupDirection::diag: return {0.0, 0.0, 2.0, 0.0, 0.0};
    }
    return {};
}

const char* to_string(GroupDirection d) noexcept {
    switch (d) {
        case GroupDirection::lambda1: return "lambda1";
        case GroupDirection::lambda5: return "lambda5";
        case GroupDirection::beta: return "beta";
        case GroupDirection::gamma: return "gamma";
        case GroupDirection::diag: return "diag";
    }
    return "unknown";
}

}  // namespace riccati_lie
