#include "riccati_lie/superpose.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

#include "riccati_lie/error.hpp"

namespace riccati_lie {

namespace {

// Forward-mode value/derivative pair, used to differentiate the rule along t.
struct Dual {
    double v = 0.0;
    double d = 0.0;
};

Dual operator+(Dual a, Dual b) { return {a.v + b.v, a.d + b.d}; }
Dual operator-(Dual a, Dual b) { return {a.v - b.v, a.d - b.d}; }
Dual operator-(Dual a) { return {-a.v, -a.d}; }
Dual operator*(Dual a, Dual b) { return {a.v * b.v, a.d * b.v + a.v * b.d}; }
Dual operator/(Dual a, Dual b) { return {a.v / b.v, (a.d * b.v - a.v * b.d) / (b.v * b.v)}; }
Dual sqrt(Dual a) {
    const double r = std::sqrt(a.v);
    return {r, a.d / (2.0 * r)};
}

double val(double x) { return x; }
double val(Dual x) { return x.v; }

template <typename T>
struct Point {
    T x;
    T p;
};

template <typename T>
T root(const T& p) {
    using std::sqrt;
    return sqrt(-p);
}

/// Cyclic three-term integral (xa-xb) sa sb + (xb-xc) sb sc + (xc-xa) sc sa,
/// plus the sum of the term magnitudes.
template <typename T>
std::pair<T, double> cyclic_integral(const Point<T>& a, const Point<T>& b, const Point<T>& c) {
    const T ra = root(a.p), rb = root(b.p), rc = root(c.p);
    const T t1 = (a.x - b.x) * (ra * rb);
    const T t2 = (b.x - c.x) * (rb * rc);
    const T t3 = (c.x - a.x) * (rc * ra);
    return {t1 + t2 + t3, std::abs(val(t1)) + std::abs(val(t2)) + std::abs(val(t3))};
}

std::string at_time(double t) {
    if (std::isnan(t)) return {};
    std::ostringstream os;
    os << " at t=" << t;
    return os.str();
}

template <typename T>
Point<T> apply_rule(const Point<T>& q1, const Point<T>& q2, const Point<T>& q3, double k1, double k2, const T& F0,
                    double f0_scale, const GenericityOptions& opt, double t) {
    const double eps = opt.rel_eps;
    if (!(std::abs(val(F0)) > eps * f0_scale)) {
        throw GenericityError("superpose: F0 vanishes for the particular solutions (non-generic family)" +
                              at_time(t));
    }
    const T s1 = root(q1.p), s2 = root(q2.p), s3 = root(q3.p);
    const T gamma13 = s1 * q1.x - s3 * q3.x;
    const T gamma21 = s2 * q2.x - s1 * q1.x;

    const T n1 = T(k1) * gamma13;
    const T n2 = T(k2) * gamma21;
    const T n3 = F0 * s1 * q1.x;
    const T d1 = T(k1) * (s1 - s3);
    const T d2 = T(k2) * (s2 - s1);
    const T d3 = s1 * F0;
    const T den = d1 + d2 - d3;
    const double den_scale = std::abs(val(d1)) + std::abs(val(d2)) + std::abs(val(d3));
    if (!(std::abs(val(den)) > eps * den_scale)) {
        throw GenericityError("superpose: x0 denominator vanishes (non-generic constants)" + at_time(t));
    }
    const T x0 = (n1 + n2 - n3) / den;

    const T b1 = (T(k1) / F0) * (s3 - s1);
    const T b2 = (T(k2) / F0) * (s1 - s2);
    const T bracket = b1 + b2 + s1;
    const double bracket_scale = std::abs(val(b1)) + std::abs(val(b2)) + std::abs(val(s1));
    if (!(val(bracket) > eps * bracket_scale)) {
        throw BranchError("superpose: sqrt(-p0) bracket is not positive; no solution in O for these constants" +
                          at_time(t));
    }
    return {x0, -(bracket * bracket)};
}

Point<double> lift(const PhasePoint& s) { return {s.x, s.p}; }

void require_all_in_O(std::initializer_list<const PhasePoint*> pts, const char* where) {
    for (const PhasePoint* p : pts) require_in_O(*p, where);
}

}  // namespace

double integral_F0(const PhasePoint& xi1, const PhasePoint& xi2, const PhasePoint& xi3) {
    require_all_in_O({&xi1, &xi2, &xi3}, "integral_F0");
    const double r1 = std::sqrt(-xi1.p), r2 = std::sqrt(-xi2.p), r3 = std::sqrt(-xi3.p);
    return (xi2.x - xi3.x) * (r2 * r3) + (xi3.x - xi1.x) * (r3 * r1) + (xi1.x - xi2.x) * (r1 * r2);
}

double integral_F1(const PhasePoint& xi0, const PhasePoint& xi1, const PhasePoint& xi2) {
    require_all_in_O({&xi0, &xi1, &xi2}, "integral_F1");
    const double r0 = std::sqrt(-xi0.p), r1 = std::sqrt(-xi1.p), r2 = std::sqrt(-xi2.p);
    return (xi1.x - xi2.x) * (r1 * r2) + (xi2.x - xi0.x) * (r2 * r0) + (xi0.x - xi1.x) * (r0 * r1);
}

double integral_F2(const PhasePoint& xi0, const PhasePoint& xi1, const PhasePoint& xi3) {
    require_all_in_O({&xi0, &xi1, &xi3}, "integral_F2");
    const double r0 = std::sqrt(-xi0.p), r1 = std::sqrt(-xi1.p), r3 = std::sqrt(-xi3.p);
    return (xi1.x - xi3.x) * (r1 * r3) + (xi3.x - xi0.x) * (r3 * r0) + (xi0.x - xi1.x) * (r0 * r1);
}

Constants constants_from_four(const PhaseTuple& tuple) {
    return {integral_F1(tuple.xi0, tuple.xi1, tuple.xi2), integral_F2(tuple.xi0, tuple.xi1, tuple.xi3),
            integral_F0(tuple.xi1, tuple.xi2, tuple.xi3)};
}

double tuple_conditioning(const PhaseTuple& q) {
    const Constants k = constants_from_four(q);
    const double s1 = std::sqrt(-q.xi1.p), s2 = std::sqrt(-q.xi2.p), s3 = std::sqrt(-q.xi3.p);
    const double f0_scale = std::abs(q.xi2.x - q.xi3.x) * s2 * s3 + std::abs(q.xi3.x - q.xi1.x) * s3 * s1 +
                            std::abs(q.xi1.x - q.xi2.x) * s1 * s2;
    const double d1 = k.k1 * (s1 - s3), d2 = k.k2 * (s2 - s1), d3 = s1 * k.F0;
    const double den_scale = std::abs(d1) + std::abs(d2) + std::abs(d3);
    if (f0_scale == 0.0 || den_scale == 0.0) return 0.0;
    return std::min(std::abs(k.F0) / f0_scale, std::abs(d1 + d2 - d3) / den_scale);
}

PhasePoint superpose_point(const PhasePoint& xi1, const PhasePoint& xi2, const PhasePoint& xi3, const Constants& k,
                           const GenericityOptions& opt) {
    require_all_in_O({&xi1, &xi2, &xi3}, "superpose_point");
    const auto q1 = lift(xi1), q2 = lift(xi2), q3 = lift(xi3);
    // Guard scale comes from the particular solutions; the value used is k.F0.
    const double f0_scale = cyclic_integral(q2, q3, q1).second;
    const auto out = apply_rule<double>(q1, q2, q3, k.k1, k.k2, k.F0, f0_scale, opt, std::nan(""));
    return {out.x, out.p};
}

Trajectory superpose_trajectory(const Trajectory& traj1, const Trajectory& traj2, const Trajectory& traj3,
                                const Constants& k, std::span<const double> grid, const GenericityOptions& opt) {
    std::vector<Sample<2>> samples;
    samples.reserve(grid.size());
    for (double t : grid) {
        Point<Dual> q[3];
        const Trajectory* trajs[3] = {&traj1, &traj2, &traj3};
        for (std::size_t i = 0; i < 3; ++i) {
            const Vec2 s = trajs[i]->sample_at(t);
            const Vec2 d = trajs[i]->derivative_at(t);
            require_in_O(PhasePoint::from(s), "superpose_trajectory");
            q[i] = {{s[0], d[0]}, {s[1], d[1]}};
        }
        const auto [F0, f0_scale] = cyclic_integral(q[1], q[2], q[0]);
        const Point<Dual> r = apply_rule<Dual>(q[0], q[1], q[2], k.k1, k.k2, F0, f0_scale, opt, t);
        samples.push_back({t, {r.x.v, r.p.v}, {r.x.d, r.p.d}});
    }
    return Trajectory(std::move(samples), SystemTag::hamiltonian);
}

std::vector<std::pair<double, double>> upsilon(const Trajectory& reconstructed) {
    std::vector<std::pair<double, double>> out;
    out.reserve(reconstructed.samples().size());
    for (const auto& s : reconstructed.samples()) out.emplace_back(s.t, s.state[0]);
    return out;
}

}  // namespace riccati_lie
