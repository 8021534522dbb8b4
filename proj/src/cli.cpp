#include "riccati_lie/cli.hpp"

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>

#include "riccati_lie/csv.hpp"
#include "riccati_lie/integrator.hpp"
#include "riccati_lie/random_scenario.hpp"
#include "riccati_lie/scenario.hpp"
#include "riccati_lie/superpose.hpp"
#include "riccati_lie/verify.hpp"

namespace riccati_lie::cli {

namespace {

// Recovered-potential c0 defects above this are reported on stderr.
constexpr double kDefectWarning = 1e-8;

struct SimulateArgs {
    std::string config;
    std::string system = "hamiltonian";
    std::vector<std::string> ics;
    std::string out;
};

struct DeriveArgs {
    std::string config;
    int points = 11;
};

struct SuperposeArgs {
    std::string config;
    std::string sols;
    std::optional<double> k1;
    std::optional<double> k2;
    std::string fourth_ic;
    std::string out;
    std::string upsilon;
};

struct VerifyArgs {
    std::string suite;
    std::string config;
    int trials = 0;
    std::optional<std::uint64_t> seed;
};

void emit(const SolutionTable& table, const std::string& path, std::ostream& out) {
    if (path.empty()) write_csv(out, table);
    else write_csv_file(path, table);
}

std::vector<std::string> solution_header(std::size_t count, const char* second) {
    std::vector<std::string> h{"t"};
    for (std::size_t i = 0; i < count; ++i) {
        const std::string suffix = count == 1 ? "" : std::to_string(i + 1);
        h.push_back("x" + suffix);
        h.push_back(second + suffix);
    }
    return h;
}

SolutionTable tabulate(const std::vector<Trajectory>& trs, const std::vector<double>& grid, const char* second) {
    SolutionTable table;
    table.header = solution_header(trs.size(), second);
    for (double t : grid) {
        std::vector<double> row{t};
        for (const auto& tr : trs) {
            const Vec2 s = tr.sample_at(t);
            row.push_back(s[0]);
            row.push_back(s[1]);
        }
        table.rows.push_back(std::move(row));
    }
    return table;
}

int cmd_simulate(const SimulateArgs& a, std::ostream& out, std::ostream& err) {
    Scenario sc = load_scenario(a.config);
    if (!a.ics.empty()) {
        sc.ics.clear();
        for (const auto& s : a.ics) sc.ics.push_back(parse_pair(s));
    }
    if (sc.ics.empty()) throw ParseError("no initial conditions: add ic lines to [ics] or pass --ic", 0);

    std::vector<Trajectory> trs;
    const char* second = "p";
    if (a.system == "hamiltonian") {
        double defect = 0.0;
        const PotentialSpec P = sc.potential_spec(&defect);
        if (defect > kDefectWarning) {
            err << "warning: the Riccati coefficients are not in Lagrangian form; recovered potential has c0 defect "
                << defect << "\n";
        }
        for (const PhasePoint& s : sc.phase_ics()) trs.push_back(integrate_hamiltonian(P, sc.t0, s, sc.t1, sc.tol));
    } else {
        const RiccatiSpec R = sc.riccati_spec();
        for (const LagrangianPoint& s : sc.lagrangian_ics()) trs.push_back(integrate_riccati2(R, sc.t0, s, sc.t1, sc.tol));
        second = "v";
    }
    emit(tabulate(trs, sc.output_grid(), second), a.out, out);
    return kOk;
}

int cmd_derive(const DeriveArgs& a, std::ostream& out) {
    const Scenario sc = load_scenario(a.config);
    const TimeGrid grid = sc.validation_grid();
    const TimeGrid report{sc.t0, sc.t1, static_cast<std::size_t>(a.points)};
    out << std::setprecision(17);
    if (sc.potential) {
        const RiccatiSpec R = coefficients_from_potential(sc.potential->spec(), grid);
        const ConstraintResidual cr = constraint_residuals(R, grid);
        out << "source = potential\n";
        SolutionTable t;
        t.header = {"t", "c0", "c1", "c2", "c3", "f0", "f1"};
        for (double x : report.nodes()) t.rows.push_back({x, R.c0(x), R.c1(x), R.c2(x), R.c3(x), R.f0(x), R.f1(x)});
        write_csv(out, t);
        out << std::setprecision(17) << "residual_f1 = " << cr.f1 << "\nresidual_f0 = " << cr.f0 << "\n";
    } else {
        const RecoveredPotential rec = potential_from_coefficients(sc.riccati->spec(), grid);
        out << "source = riccati\n";
        SolutionTable t;
        t.header = {"t", "a0", "a1", "a2"};
        for (double x : report.nodes())
            t.rows.push_back({x, rec.potential.a0(x), rec.potential.a1(x), rec.potential.a2(x)});
        write_csv(out, t);
        out << std::setprecision(17) << "residual_c0 = " << rec.residual << "\n";
    }
    return kOk;
}

Trajectory trajectory_from_columns(const SolutionTable& table, std::size_t xcol, const PotentialSpec& P) {
    std::vector<Sample<2>> samples;
    for (const auto& r : table.rows) {
        const PhasePoint s{r[xcol], r[xcol + 1]};
        require_in_O(s, "solution table");
        const Vec2 d = hamilton_rhs(P, r[0], s);
        samples.push_back({r[0], s.vec(), d});
    }
    return Trajectory(std::move(samples), SystemTag::hamiltonian);
}

int cmd_superpose(const SuperposeArgs& a, std::ostream& out) {
    const Scenario sc = load_scenario(a.config);
    const PotentialSpec P = sc.potential_spec();
    const SolutionTable table = read_csv_file(a.sols);
    if (table.columns() < 7) {
        throw ParseError("solution table needs t plus three (x,p) column pairs, got " +
                             std::to_string(table.columns()) + " columns",
                         1);
    }
    if (table.rows.empty()) throw ParseError("solution table has no rows", 1);

    const Trajectory t1 = trajectory_from_columns(table, 1, P);
    const Trajectory t2 = trajectory_from_columns(table, 3, P);
    const Trajectory t3 = trajectory_from_columns(table, 5, P);
    const auto& r0 = table.rows.front();
    const PhasePoint q1{r0[1], r0[2]}, q2{r0[3], r0[4]}, q3{r0[5], r0[6]};

    Constants k;
    if (!a.fourth_ic.empty()) {
        const PhasePoint q0 = PhasePoint::from(parse_pair(a.fourth_ic));
        require_in_O(q0, "--fourth-ic");
        k = constants_from_four({q0, q1, q2, q3});
    } else {
        k = {*a.k1, *a.k2, integral_F0(q1, q2, q3)};
    }

    const std::vector<double> grid = table.column_values(0);
    const Trajectory rec = superpose_trajectory(t1, t2, t3, k, grid);

    SolutionTable result;
    result.header = {"t", "x0", "p0"};
    SolutionTable ups;
    ups.header = {"t", "x0"};
    for (const auto& s : rec.samples()) result.rows.push_back({s.t, s.state[0], s.state[1]});
    for (const auto& [t, x] : upsilon(rec)) ups.rows.push_back({t, x});

    emit(result, a.out, out);
    std::string ups_path = a.upsilon;
    if (ups_path.empty() && !a.out.empty()) {
        const std::filesystem::path p(a.out);
        ups_path = (p.parent_path() / (p.stem().string() + "_upsilon" + p.extension().string())).string();
    }
    if (!ups_path.empty()) write_csv_file(ups_path, ups);
    return kOk;
}

int cmd_verify(const VerifyArgs& a, std::ostream& out, const StructureConstants& table) {
    const Suite suite = parse_suite(a.suite);
    const Scenario sc = a.config.empty() ? canonical_scenario() : load_scenario(a.config);
    VerifyOptions opt;
    opt.trials = a.trials;
    opt.seed = effective_seed(a.seed.value_or(sc.seed));
    opt.table = table;
    out << "seed = " << opt.seed << "\n";
    const VerifyReport rep = run_verify(suite, sc, opt);
    print_report(out, rep);
    return rep.all_passed() ? kOk : kVerifyFailed;
}

}  // namespace

int exit_code_for(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::parse:
        case ErrorKind::contract: return kInputError;
        case ErrorKind::domain: return kDomainError;
        case ErrorKind::genericity:
        case ErrorKind::branch: return kGenericityError;
        case ErrorKind::numeric: return kNumericError;
        case ErrorKind::range: return kRangeError;
    }
    return kNumericError;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, const StructureConstants& table) {
    CLI::App app{"Second-order Riccati equations as Lie systems: simulation, superposition and verification",
                 "riccati-lie"};
    app.require_subcommand(1);

    SimulateArgs sim;
    auto* s = app.add_subcommand("simulate", "Integrate the Hamiltonian system or the Riccati equation, write CSV");
    s->add_option("config", sim.config, "INI scenario file")->required();
    s->add_option("--system", sim.system, "hamiltonian (t,x,p) or riccati2 (t,x,v)")
        ->check(CLI::IsMember({"hamiltonian", "riccati2"}));
    s->add_option("--ic", sim.ics, "Initial condition \"x,y\"; repeatable, replaces the config ICs")
        ->allow_extra_args(false);
    s->add_option("--out", sim.out, "Output CSV path (default stdout)");

    DeriveArgs der;
    auto* d = app.add_subcommand("derive", "Print the coefficient map for the configured potential or equation");
    d->add_option("config", der.config, "INI scenario file")->required();
    d->add_option("--points", der.points, "Rows in the printed table")->check(CLI::Range(2, 100000));

    SuperposeArgs sup;
    auto* p = app.add_subcommand("superpose", "Reconstruct a solution from three particular solutions");
    p->add_option("config", sup.config, "INI scenario file")->required();
    p->add_option("--sols", sup.sols, "CSV with columns t,x1,p1,x2,p2,x3,p3")->required();
    auto* k1 = p->add_option("--k1", sup.k1, "Value of the first integral F1");
    auto* k2 = p->add_option("--k2", sup.k2, "Value of the first integral F2");
    auto* fourth = p->add_option("--fourth-ic", sup.fourth_ic, "Point \"x,p\" of the target solution at the first t");
    k1->needs(k2);
    k2->needs(k1);
    fourth->excludes(k1)->excludes(k2);
    p->add_option("--out", sup.out, "Reconstruction CSV t,x0,p0 (default stdout)");
    p->add_option("--upsilon", sup.upsilon, "CSV t,x0 (default <out stem>_upsilon.csv when --out is given)");

    VerifyArgs ver;
    auto* v = app.add_subcommand("verify", "Run invariant suites; exit 0 iff every check passes");
    v->add_option("suite", ver.suite, "integrals, brackets, action, superposition or all")->required();
    v->add_option("config", ver.config, "INI scenario file (default: canonical scenario)");
    v->add_option("--trials", ver.trials, "Random trials per check")->check(CLI::Range(1, 100000000));
    v->add_option("--seed", ver.seed, "Seed (RICCATI_LIE_SEED takes precedence)");

    std::vector<std::string> argv_s{"riccati-lie"};
    argv_s.insert(argv_s.end(), args.begin(), args.end());
    std::vector<const char*> argv;
    for (const auto& a : argv_s) argv.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kInputError;
    }
    if (p->parsed() && sup.fourth_ic.empty() && !sup.k1) {
        err << "riccati-lie: superpose needs --k1 and --k2, or --fourth-ic\n";
        return kInputError;
    }

    try {
        if (s->parsed()) return cmd_simulate(sim, out, err);
        if (d->parsed()) return cmd_derive(der, out);
        if (p->parsed()) return cmd_superpose(sup, out);
        return cmd_verify(ver, out, table);
    } catch (const Error& e) {
        err << "riccati-lie: " << to_string(e.kind()) << " error: " << e.what() << "\n";
        return exit_code_for(e.kind());
    }
}

}  // namespace riccati_lie::cli
