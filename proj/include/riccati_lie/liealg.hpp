#pragma once

#include <array>
#include <span>
#include <string>
#include <vector>

#include "riccati_lie/model.hpp"

namespace riccati_lie {

/// Basis X1..X5 of the five-dimensional Lie algebra of vector fields on O:
///   X1 = (1/sqrt(-p)) d_x
///   X2 = d_x
///   X3 = x d_x - p d_p
///   X4 = x^2 d_x - 2xp d_p
///   X5 = (x/sqrt(-p)) d_x + 2 sqrt(-p) d_p
enum class VectorField : int { X1 = 1, X2 = 2, X3 = 3, X4 = 4, X5 = 5 };

inline constexpr std::array<VectorField, 5> kAllFields{VectorField::X1, VectorField::X2, VectorField::X3,
                                                       VectorField::X4, VectorField::X5};

/// 0-based position of a field in coefficient vectors.
constexpr std::size_t index_of(VectorField v) { return static_cast<std::size_t>(static_cast<int>(v) - 1); }

/// Coefficients of a linear combination sum_i coeffs[i] * X_{i+1}.
using FieldCombination = std::array<double, 5>;

/// [X_a, X_b] expressed in the basis, for all ordered pairs (a, b).
using StructureConstants = std::array<std::array<FieldCombination, 5>, 5>;

/// The commutation table of the basis, filled antisymmetrically from
/// [X1,X3]=X1/2, [X1,X4]=X5, [X2,X3]=X2, [X2,X4]=2X3, [X2,X5]=X1,
/// [X3,X4]=X4, [X3,X5]=X5/2, all other brackets zero.
const StructureConstants& structure_constants();

Vec2 vf_eval(VectorField id, const PhasePoint& s);

/// Rows are components (x, p), columns are partials (d_x, d_p).
Mat2 vf_jacobian(VectorField id, const PhasePoint& s);

/// Evaluates a linear combination of the basis fields at s.
Vec2 combination_eval(const FieldCombination& c, const PhasePoint& s);

/// [X_a, X_b]^i = X_a^j d_j X_b^i - X_b^j d_j X_a^i.
Vec2 lie_bracket(VectorField a, VectorField b, const PhasePoint& s);

/// Max component-wise |lie_bracket - table| over all 10 unordered pairs and
/// all points. Empty `points` gives 0.
double check_commutation_table(std::span<const PhasePoint> points,
                               const StructureConstants& table = structure_constants());

struct StructureAssertion {
    std::string name;
    bool passed = false;
};

struct LeviReport {
    std::vector<StructureAssertion> assertions;
    bool all_passed() const;
};

/// Coefficient-level checks of the Levi decomposition V = V1 (+)_s V2 with
/// V1 = <X1, X5> and V2 = <X2, X3, X4>.
LeviReport levi_structure_check(const StructureConstants& table = structure_constants());

/// max component of |hamilton_rhs - (X1 - a0 X2 - a1 X3 - a2 X4)| at (t, s).
double decompose_rhs_check(const PotentialSpec& P, double t, const PhasePoint& s);

/// Largest per-component sum of |term| in X1 - a0 X2 - a1 X3 - a2 X4 at (t, s);
/// the scale that makes decompose_rhs_check relative.
double decompose_rhs_scale(const PotentialSpec& P, double t, const PhasePoint& s);

/// ((lambda1, lambda5), A) in R^2 x| SL(2, R). A = ((alpha, beta), (gamma, delta)).
class GroupElement {
public:
    /// Throws ContractError if |det A - 1| > 1e-12.
    GroupElement(double lambda1, double lambda5, const Mat2& a);

    static GroupElement identity();
    static GroupElement translation(double lambda1, double lambda5);
    static GroupElement linear(const Mat2& a);

    double lambda1() const { return lambda1_; }
    double lambda5() const { return lambda5_; }
    const Mat2& matrix() const { return a_; }

    bool is_translation() const;  // A == I
    bool is_linear() const;       // lambda == 0

private:
    double lambda1_;
    double lambda5_;
    Mat2 a_;
};

/// The local action of G on O:
///   x_bar = (alpha x + beta) / (gamma x + delta),  p_bar = p (gamma x + delta)^2,
///   act(g, (x, p)) = ((sqrt(-p_bar) x_bar - lambda1) / (sqrt(-p_bar) + lambda5), -(sqrt(-p_bar) + lambda5)^2).
/// Throws DomainError when p >= 0, when gamma x + delta = 0 (singular fraction)
/// or when sqrt(-p_bar) + lambda5 <= 0 (the point leaves the orbit chart).
PhasePoint act(const GroupElement& g, const PhasePoint& s);

/// |gamma x + delta| / (|gamma x| + |delta|): distance of s from the pole of
/// the fraction in act(g, .). Round-off in act grows like eps / this value.
double action_conditioning(const GroupElement& g, const PhasePoint& s);

/// Composition inside the translation subgroup or inside SL(2, R); throws
/// ContractError for any other pair.
GroupElement compose_subgroup(const GroupElement& g1, const GroupElement& g2);

enum class GroupDirection { lambda1, lambda5, beta, gamma, diag };

/// Fundamental vector field of a one-parameter subgroup by central differences
/// of the action.
Vec2 fundamental_vf(GroupDirection direction, const PhasePoint& s, double h = 1e-5);

/// The basis combination each direction generates:
/// lambda1 -> -X1, lambda5 -> -X5, beta -> X2, gamma -> -X4, diag -> 2 X3.
FieldCombination expected_fundamental_field(GroupDirection direction);

const char* to_string(GroupDirection d) noexcept;

}  // namespace riccati_lie
