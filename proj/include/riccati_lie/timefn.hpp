#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "riccati_lie/jet.hpp"

namespace riccati_lie {

namespace term {

/// sum_k coeffs[k] * t^k
struct Poly {
    std::vector<double> coeffs;
    bool operator==(const Poly&) const = default;
};

/// amp * sin(omega * t + phase)
struct Sin {
    double amp = 0.0;
    double omega = 0.0;
    double phase = 0.0;
    bool operator==(const Sin&) const = default;
};

/// amp * cos(omega * t + phase)
struct Cos {
    double amp = 0.0;
    double omega = 0.0;
    double phase = 0.0;
    bool operator==(const Cos&) const = default;
};

/// amp * exp(rate * t)
struct Exp {
    double amp = 0.0;
    double rate = 0.0;
    bool operator==(const Exp&) const = default;
};

}  // namespace term

using Term = std::variant<term::Poly, term::Sin, term::Cos, term::Exp>;

/// A real function of t given as a finite sum of polynomial, trigonometric and
/// exponential terms. The class is closed under differentiation, so every
/// derivative is evaluated in closed form.
class TimeFn {
public:
    TimeFn() = default;
    explicit TimeFn(std::vector<Term> terms) : terms_(std::move(terms)) {}

    static TimeFn constant(double c) { return TimeFn({term::Poly{{c}}}); }
    static TimeFn poly(std::vector<double> coeffs) { return TimeFn({term::Poly{std::move(coeffs)}}); }
    static TimeFn sin(double amp, double omega, double phase = 0.0) { return TimeFn({term::Sin{amp, omega, phase}}); }
    static TimeFn cos(double amp, double omega, double phase = 0.0) { return TimeFn({term::Cos{amp, omega, phase}}); }
    static TimeFn exp(double amp, double rate) { return TimeFn({term::Exp{amp, rate}}); }

    const std::vector<Term>& terms() const { return terms_; }

    /// order-th derivative at t (order 0 is the value).
    double eval(double t, std::size_t order = 0) const;

    /// Taylor expansion at t up to Jet::kOrder.
    Jet jet(double t) const;

    /// Sum by concatenation of the term lists.
    friend TimeFn operator+(const TimeFn& a, const TimeFn& b);

    bool operator==(const TimeFn&) const = default;

private:
    std::vector<Term> terms_;
};

/// Parses `term (";" term)*` with
/// `term := "poly" real+ | "sin" real real real | "cos" real real real | "exp" real real`.
/// Throws ParseError carrying the character offset of the offending token.
TimeFn parse_timefn(std::string_view text);

/// Canonical text form; reals are written with 17 significant digits so that
/// parse_timefn(render_timefn(f)) == f.
std::string render_timefn(const TimeFn& f);

/// A smooth coefficient function of t that may be a TimeFn or an exact
/// algebraic combination of other coefficients (sums, products, quotients,
/// square roots, derivatives). Evaluation goes through Jet arithmetic, so
/// derivatives of derived coefficients are exact up to rounding.
///
/// Immutable; copies share the underlying expression.
class Coefficient {
public:
    using JetFn = std::function<Jet(double)>;

    Coefficient();  // identically zero
    Coefficient(TimeFn f);  // NOLINT(google-explicit-constructor)
    static Coefficient constant(double c);
    static Coefficient from_jet_fn(JetFn fn);

    Jet jet(double t) const { return (*fn_)(t); }

    /// order-th derivative at t. Exact for order <= Jet::kOrder minus the
    /// number of derivative() applications in the expression.
    double operator()(double t, std::size_t order = 0) const { return jet(t).derivative_value(order); }

    /// The source TimeFn when this coefficient was built directly from one.
    const TimeFn* timefn() const { return source_.get(); }

    Coefficient derivative() const;

    friend Coefficient operator+(const Coefficient& a, const Coefficient& b);
    friend Coefficient operator-(const Coefficient& a, const Coefficient& b);
    friend Coefficient operator*(const Coefficient& a, const Coefficient& b);
    friend Coefficient operator/(const Coefficient& a, const Coefficient& b);
    friend Coefficient operator*(double s, const Coefficient& a);
    friend Coefficient sqrt(const Coefficient& a);

private:
    std::shared_ptr<const JetFn> fn_;
    std::shared_ptr<const TimeFn> source_;
};

}  // namespace riccati_lie
