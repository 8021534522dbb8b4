#include "riccati_lie/timefn.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <iomanip>
#include <sstream>

#include "riccati_lie/error.hpp"

namespace riccati_lie {

namespace {

double int_pow(double base, std::size_t n) {
    double r = 1.0;
    for (std::size_t i = 0; i < n; ++i) r *= base;
    return r;
}

double eval_term(const term::Poly& p, double t, std::size_t order) {
    const std::size_t n = p.coeffs.size();
    if (order >= n) return 0.0;
    // Horner on the differentiated coefficients c_k * k!/(k-order)!.
    double acc = 0.0;
    for (std::size_t k = n; k-- > order;) {
        double falling = 1.0;
        for (std::size_t j = 0; j < order; ++j) falling *= static_cast<double>(k - j);
        acc = acc * t + p.coeffs[k] * falling;
    }
    return acc;
}

// Derivatives of sin/cos cycle with period four; select the branch instead of
// adding multiples of pi/2 to the phase.
double sin_derivative(double theta, std::size_t order) {
    switch (order % 4) {
        case 0: return std::sin(theta);
        case 1: return std::cos(theta);
        case 2: return -std::sin(theta);
        default: return -std::cos(theta);
    }
}

double eval_term(const term::Sin& s, double t, std::size_t order) {
    return s.amp * int_pow(s.omega, order) * sin_derivative(s.omega * t + s.phase, order);
}

double eval_term(const term::Cos& c, double t, std::size_t order) {
    return c.amp * int_pow(c.omega, order) * sin_derivative(c.omega * t + c.phase, order + 1);
}

double eval_term(const term::Exp& e, double t, std::size_t order) {
    return e.amp * int_pow(e.rate, order) * std::exp(e.rate * t);
}

bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }

struct Token {
    std::string_view text;
    std::size_t offset;
};

std::vector<Token> split_tokens(std::string_view text, std::size_t base) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < text.size()) {
        while (i < text.size() && is_space(text[i])) ++i;
        if (i >= text.size()) break;
        const std::size_t start = i;
        while (i < text.size() && !is_space(text[i])) ++i;
        out.push_back({text.substr(start, i - start), base + start});
    }
    return out;
}

double parse_real(const Token& tok) {
    std::string_view s = tok.text;
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc{} || ptr != s.data() + s.size() || !std::isfinite(value) || s.empty()) {
        throw ParseError("timefn: expected a finite real at offset " + std::to_string(tok.offset) + ", got \"" +
                             std::string(tok.text) + "\"",
                         tok.offset);
    }
    return value;
}

Term parse_term(std::string_view text, std::size_t base) {
    const auto tokens = split_tokens(text, base);
    if (tokens.empty()) throw ParseError("timefn: empty term at offset " + std::to_string(base), base);
    const Token& kw = tokens.front();
    std::vector<double> args;
    args.reserve(tokens.size() - 1);
    for (std::size_t i = 1; i < tokens.size(); ++i) args.push_back(parse_real(tokens[i]));

    auto require = [&](std::size_t n) {
        if (args.size() != n) {
            throw ParseError("timefn: \"" + std::string(kw.text) + "\" takes " + std::to_string(n) + " reals, got " +
                                 std::to_string(args.size()) + " (offset " + std::to_string(kw.offset) + ")",
                             kw.offset);
        }
    };

    if (kw.text == "poly") {
        if (args.empty()) throw ParseError("timefn: \"poly\" needs at least one coefficient", kw.offset);
        return term::Poly{std::move(args)};
    }
    if (kw.text == "sin") {
        require(3);
        return term::Sin{args[0], args[1], args[2]};
    }
    if (kw.text == "cos") {
        require(3);
        return term::Cos{args[0], args[1], args[2]};
    }
    if (kw.text == "exp") {
        require(2);
        return term::Exp{args[0], args[1]};
    }
    throw ParseError("timefn: unknown term keyword \"" + std::string(kw.text) + "\" at offset " +
                         std::to_string(kw.offset),
                     kw.offset);
}

}  // namespace

double TimeFn::eval(double t, std::size_t order) const {
    double acc = 0.0;
    for (const auto& term : terms_) {
        acc += std::visit([&](const auto& x) { return eval_term(x, t, order); }, term);
    }
    return acc;
}

Jet TimeFn::jet(double t) const {
    std::array<double, Jet::kOrder + 1> d{};
    for (std::size_t k = 0; k <= Jet::kOrder; ++k) d[k] = eval(t, k);
    return Jet::from_derivatives(d);
}

TimeFn operator+(const TimeFn& a, const TimeFn& b) {
    std::vector<Term> terms = a.terms_;
    terms.insert(terms.end(), b.terms_.begin(), b.terms_.end());
    return TimeFn(std::move(terms));
}

TimeFn parse_timefn(std::string_view text) {
    std::vector<Term> terms;
    std::size_t start = 0;
    while (true) {
        const std::size_t semi = text.find(';', start);
        const std::size_t end = semi == std::string_view::npos ? text.size() : semi;
        terms.push_back(parse_term(text.substr(start, end - start), start));
        if (semi == std::string_view::npos) break;
        start = semi + 1;
    }
    return TimeFn(std::move(terms));
}

std::string render_timefn(const TimeFn& f) {
    std::ostringstream os;
    os << std::setprecision(17);
    bool first = true;
    for (const auto& t : f.terms()) {
        if (!first) os << "; ";
        first = false;
        if (const auto* p = std::get_if<term::Poly>(&t)) {
            os << "poly";
            for (double c : p->coeffs) os << ' ' << c;
        } else if (const auto* s = std::get_if<term::Sin>(&t)) {
            os << "sin " << s->amp << ' ' << s->omega << ' ' << s->phase;
        } else if (const auto* c = std::get_if<term::Cos>(&t)) {
            os << "cos " << c->amp << ' ' << c->omega << ' ' << c->phase;
        } else if (const auto* e = std::get_if<term::Exp>(&t)) {
            os << "exp " << e->amp << ' ' << e->rate;
        }
    }
    if (first) os << "poly 0";
    return os.str();
}

// --- Coefficient -----------------------------------------------------------

Coefficient::Coefficient() : Coefficient(constant(0.0)) {}

Coefficient::Coefficient(TimeFn f) : source_(std::make_shared<const TimeFn>(std::move(f))) {
    fn_ = std::make_shared<const JetFn>([src = source_](double t) { return src->jet(t); });
}

Coefficient Coefficient::constant(double c) {
    return Coefficient(TimeFn::constant(c));
}

Coefficient Coefficient::from_jet_fn(JetFn fn) {
    Coefficient out = constant(0.0);
    out.source_.reset();
    out.fn_ = std::make_shared<const JetFn>(std::move(fn));
    return out;
}

Coefficient Coefficient::derivative() const {
    return from_jet_fn([f = fn_](double t) { return (*f)(t).derivative(); });
}

Coefficient operator+(const Coefficient& a, const Coefficient& b) {
    return Coefficient::from_jet_fn([f = a.fn_, g = b.fn_](double t) { return (*f)(t) + (*g)(t); });
}

Coefficient operator-(const Coefficient& a, const Coefficient& b) {
    return Coefficient::from_jet_fn([f = a.fn_, g = b.fn_](double t) { return (*f)(t) - (*g)(t); });
}

Coefficient operator*(const Coefficient& a, const Coefficient& b) {
    return Coefficient::from_jet_fn([f = a.fn_, g = b.fn_](double t) { return (*f)(t) * (*g)(t); });
}

Coefficient operator/(const Coefficient& a, const Coefficient& b) {
    return Coefficient::from_jet_fn([f = a.fn_, g = b.fn_](double t) { return (*f)(t) / (*g)(t); });
}

Coefficient operator*(double s, const Coefficient& a) {
    return Coefficient::from_jet_fn([s, f = a.fn_](double t) { return s * (*f)(t); });
}

Coefficient sqrt(const Coefficient& a) {
    return Coefficient::from_jet_fn([f = a.fn_](double t) { return sqrt((*f)(t)); });
}

}  // namespace riccati_lie
