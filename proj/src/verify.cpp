#include "riccati_lie/verify.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <ostream>
#include <random>
#include <sstream>

#include "riccati_lie/error.hpp"
#include "riccati_lie/integrator.hpp"
#include "riccati_lie/random_scenario.hpp"
#include "riccati_lie/superpose.hpp"

namespace riccati_lie {

namespace {

// Initial conditions for integration-based checks stay in a small box so the
// solutions remain inside O over the window.
constexpr PhaseBox kIcBox{0.5, -2.0, -0.25};

int trials_or(const VerifyOptions& opt, int fallback) { return opt.trials > 0 ? opt.trials : fallback; }

CheckResult make_check(std::string name, double residual, double tol, std::string note = {}) {
    const bool ok = std::isfinite(residual) && residual <= tol;
    return {std::move(name), ok, residual, tol, std::move(note)};
}

std::string count_note(int n, int skipped = 0, const std::string& extra = {}) {
    std::string s = "n=" + std::to_string(n);
    if (skipped > 0) s += " skipped=" + std::to_string(skipped);
    if (!extra.empty()) s += " " + extra;
    return s;
}

// IC set i: the scenario's first four ICs for i == 0 when available, random otherwise.
std::array<PhasePoint, 4> ic_set(const Scenario& sc, int i, std::mt19937_64& rng) {
    std::array<PhasePoint, 4> out;
    if (i == 0 && sc.ics.size() >= 4) {
        const auto ics = sc.phase_ics();
        std::copy_n(ics.begin(), 4, out.begin());
        return out;
    }
    for (auto& s : out) s = random_phase_point(rng, kIcBox);
    return out;
}

void bracket_suite(const Scenario& sc, const VerifyOptions& opt, VerifyReport& rep) {
    std::mt19937_64 rng(opt.seed + 101);
    const int n = trials_or(opt, 100);
    std::vector<PhasePoint> pts;
    for (int i = 0; i < n; ++i) pts.push_back(random_phase_point(rng));
    rep.checks.push_back(make_check("brackets.commutation", check_commutation_table(pts, opt.table), 1e-10,
                                    count_note(n)));

    const LeviReport levi = levi_structure_check(opt.table);
    std::string failed;
    for (const auto& a : levi.assertions)
        if (!a.passed) failed += (failed.empty() ? "failed=\"" : "; ") + a.name;
    if (!failed.empty()) failed += "\"";
    rep.checks.push_back({"brackets.levi", levi.all_passed(), levi.all_passed() ? 0.0 : 1.0, 0.0,
                          "assertions=" + std::to_string(levi.assertions.size()) + (failed.empty() ? "" : " " + failed)});

    const PotentialSpec P = sc.potential_spec();
    std::uniform_real_distribution<double> ut(sc.t0, sc.t1);
    double worst = 0.0;
    for (int i = 0; i < n; ++i) {
        const PhasePoint s = random_phase_point(rng);
        const double t = ut(rng);
        worst = std::max(worst, decompose_rhs_check(P, t, s) / decompose_rhs_scale(P, t, s));
    }
    rep.checks.push_back(make_check("brackets.decomposition", worst, 1e-14, count_note(n)));
}

void action_suite(const VerifyOptions& opt, VerifyReport& rep) {
    std::mt19937_64 rng(opt.seed + 202);
    const int n = trials_or(opt, 100);

    double id_worst = 0.0;
    for (int i = 0; i < n; ++i) {
        const PhasePoint s = random_phase_point(rng);
        const PhasePoint r = act(GroupElement::identity(), s);
        id_worst = std::max({id_worst, std::abs(r.x - s.x), std::abs(r.p - s.p)});
    }
    rep.checks.push_back(make_check("action.identity", id_worst, 0.0, count_note(n)));

    std::uniform_real_distribution<double> u(-1.0, 1.0);
    auto random_sl2 = [&] {
        const double a = 1.0 + 0.5 * u(rng), b = u(rng), c = u(rng);
        return Mat2{{{a, b}, {c, (1.0 + b * c) / a}}};
    };
    double comp_worst = 0.0;
    int checked = 0, skipped = 0;
    for (int i = 0; i < 2 * n; ++i) {
        const PhasePoint s = random_phase_point(rng);
        GroupElement g1 = GroupElement::identity(), g2 = GroupElement::identity();
        if (i % 2 == 0) {
            g1 = GroupElement::translation(u(rng), 0.3 * u(rng));
            g2 = GroupElement::translation(u(rng), 0.3 * u(rng));
        } else {
            g1 = GroupElement::linear(random_sl2());
            g2 = GroupElement::linear(random_sl2());
        }
        PhasePoint lhs, rhs;
        try {
            const GroupElement g12 = compose_subgroup(g1, g2);
            const PhasePoint mid = act(g2, s);
            // Near the pole of a fraction round-off alone exceeds the bound.
            if (std::min({action_conditioning(g2, s), action_conditioning(g1, mid), action_conditioning(g12, s)}) <
                1e-2) {
                ++skipped;
                continue;
            }
            lhs = act(g12, s);
            rhs = act(g1, mid);
        } catch (const DomainError&) {
            ++skipped;  // outside the local action's chart
            continue;
        }
        comp_worst = std::max({comp_worst, std::abs(lhs.x - rhs.x) / std::max(1.0, std::abs(rhs.x)),
                               std::abs(lhs.p - rhs.p) / std::max(1.0, std::abs(rhs.p))});
        ++checked;
    }
    rep.checks.push_back(make_check("action.composition", comp_worst, 1e-12, count_note(checked, skipped)));

    std::vector<PhasePoint> pts;
    for (int i = 0; i < n; ++i) pts.push_back(random_phase_point(rng));
    for (GroupDirection d : {GroupDirection::lambda1, GroupDirection::lambda5, GroupDirection::beta,
                             GroupDirection::gamma, GroupDirection::diag}) {
        double worst = 0.0;
        for (const PhasePoint& s : pts) {
            const Vec2 fd = fundamental_vf(d, s);
            const Vec2 ex = combination_eval(expected_fundamental_field(d), s);
            const double scale = 1.0 + s.x * s.x;
            worst = std::max({worst, std::abs(fd[0] - ex[0]) / scale, std::abs(fd[1] - ex[1]) / scale});
        }
        rep.checks.push_back(make_check(std::string("action.fundamental.") + to_string(d), worst, 1e-6, count_note(n)));
    }
}

void integrals_suite(const Scenario& sc, const VerifyOptions& opt, VerifyReport& rep) {
    std::mt19937_64 rng(opt.seed + 303);
    const int n = trials_or(opt, 4);
    const PotentialSpec P = sc.potential_spec();
    double worst = 0.0;
    int failures = 0;
    std::string first_error;
    for (int i = 0; i < n; ++i) {
        const auto ics = ic_set(sc, i, rng);
        try {
            const auto tr = integrate_hamiltonian_copies(P, sc.t0, ics, sc.t1, sc.tol);
            auto integrals = [](const std::array<double, 8>& y) {
                const PhasePoint q0{y[0], y[1]}, q1{y[2], y[3]}, q2{y[4], y[5]}, q3{y[6], y[7]};
                return std::array<double, 3>{integral_F0(q1, q2, q3), integral_F1(q0, q1, q2),
                                             integral_F2(q0, q1, q3)};
            };
            const auto start = integrals(tr.samples().front().state);
            for (const auto& s : tr.samples()) {
                const auto now = integrals(s.state);
                for (std::size_t j = 0; j < 3; ++j)
                    worst = std::max(worst, std::abs(now[j] - start[j]) / std::max(1.0, std::abs(start[j])));
            }
        } catch (const Error& e) {
            ++failures;
            if (first_error.empty()) first_error = e.what();
        }
    }
    CheckResult c = make_check("integrals.conservation", worst, 1e-7, count_note(n));
    if (failures > 0) {
        c.passed = false;
        c.note += " integration_failures=" + std::to_string(failures) + " first_error=\"" + first_error + "\"";
    }
    rep.checks.push_back(std::move(c));
}

void superposition_suite(const Scenario& sc, const VerifyOptions& opt, VerifyReport& rep) {
    std::mt19937_64 rng(opt.seed + 404);

    const PhasePoint w = superpose_point({1, -1}, {2, -4}, {3, -9}, {1, 2, -2});
    rep.checks.push_back(
        make_check("superposition.worked_tuple", std::max(std::abs(w.x - 0.0), std::abs(w.p + 1.0)), 1e-15));

    const int n = trials_or(opt, 1000);
    double worst = 0.0;
    int accepted = 0, skipped = 0;
    while (accepted < n) {
        const PhaseTuple q{random_phase_point(rng), random_phase_point(rng), random_phase_point(rng),
                           random_phase_point(rng)};
        if (tuple_conditioning(q) < 1e-3) {
            ++skipped;
            continue;
        }
        double r = 0.0;
        try {
            const PhasePoint x = superpose_point(q.xi1, q.xi2, q.xi3, constants_from_four(q));
            r = std::max(std::abs(x.x - q.xi0.x) / std::max(1.0, std::abs(q.xi0.x)),
                         std::abs(x.p - q.xi0.p) / std::abs(q.xi0.p));
        } catch (const Error&) {
            r = std::numeric_limits<double>::infinity();
        }
        worst = std::max(worst, r);
        ++accepted;
    }
    rep.checks.push_back(make_check("superposition.inversion", worst, 1e-9, count_note(accepted, skipped)));

    const int sets = trials_or(opt, 4);
    const PotentialSpec P = sc.potential_spec();
    const auto grid = sc.output_grid();
    double rec_worst = 0.0;
    int failures = 0, ill = 0;
    std::string first_error;
    for (int i = 0; i < sets; ++i) {
        const auto ics = ic_set(sc, i, rng);
        if (tuple_conditioning({ics[0], ics[1], ics[2], ics[3]}) < 1e-3) {
            ++ill;
            continue;
        }
        try {
            std::array<Trajectory, 4> tr{integrate_hamiltonian(P, sc.t0, ics[0], sc.t1, sc.tol),
                                         integrate_hamiltonian(P, sc.t0, ics[1], sc.t1, sc.tol),
                                         integrate_hamiltonian(P, sc.t0, ics[2], sc.t1, sc.tol),
                                         integrate_hamiltonian(P, sc.t0, ics[3], sc.t1, sc.tol)};
            const Constants k = constants_from_four({ics[0], ics[1], ics[2], ics[3]});
            const Trajectory rec = superpose_trajectory(tr[1], tr[2], tr[3], k, grid);
            double dx = 0, dp = 0, nx = 0, np = 0;
            for (const auto& s : rec.samples()) {
                const Vec2 d = tr[0].sample_at(s.t);
                dx = std::max(dx, std::abs(s.state[0] - d[0]));
                dp = std::max(dp, std::abs(s.state[1] - d[1]));
                nx = std::max(nx, std::abs(d[0]));
                np = std::max(np, std::abs(d[1]));
            }
            rec_worst = std::max({rec_worst, dx / std::max(1.0, nx), dp / std::max(1.0, np)});
        } catch (const Error& e) {
            ++failures;
            if (first_error.empty()) first_error = e.what();
        }
    }
    CheckResult c = make_check("superposition.reconstruction", rec_worst, 1e-5, count_note(sets - ill, ill));
    if (failures > 0) {
        c.passed = false;
        c.note += " failures=" + std::to_string(failures) + " first_error=\"" + first_error + "\"";
    }
    rep.checks.push_back(std::move(c));
}

}  // namespace

Suite parse_suite(std::string_view name) {
    for (Suite s : {Suite::integrals, Suite::brackets, Suite::action, Suite::superposition, Suite::all})
        if (name == to_string(s)) return s;
    throw ParseError("unknown verify suite \"" + std::string(name) +
                         "\" (expected integrals, brackets, action, superposition or all)",
                     0);
}

const char* to_string(Suite suite) noexcept {
    switch (suite) {
        case Suite::integrals: return "integrals";
        case Suite::brackets: return "brackets";
        case Suite::action: return "action";
        case Suite::superposition: return "superposition";
        case Suite::all: return "all";
    }
    return "?";
}

bool VerifyReport::all_passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

VerifyReport run_verify(Suite suite, const Scenario& scenario, const VerifyOptions& opt) {
    VerifyReport rep;
    if (suite == Suite::integrals || suite == Suite::all) integrals_suite(scenario, opt, rep);
    if (suite == Suite::brackets || suite == Suite::all) bracket_suite(scenario, opt, rep);
    if (suite == Suite::action || suite == Suite::all) action_suite(opt, rep);
    if (suite == Suite::superposition || suite == Suite::all) superposition_suite(scenario, opt, rep);
    return rep;
}

void print_report(std::ostream& os, const VerifyReport& report) {
    const auto flags = os.flags();
    const auto prec = os.precision();
    os << std::setprecision(3);
    for (const auto& c : report.checks) {
        os << (c.passed ? "PASS " : "FAIL ") << c.name << " max_residual=" << c.max_residual << " tol=" << c.tolerance;
        if (!c.note.empty()) os << ' ' << c.note;
        os << '\n';
    }
    os << (report.all_passed() ? "PASS" : "FAIL") << " summary checks=" << report.checks.size() << '\n';
    os.flags(flags);
    os.precision(prec);
}

}  // namespace riccati_lie
