#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "doctest.h"
#include "riccati_lie/cli.hpp"
#include "riccati_lie/csv.hpp"
#include "riccati_lie/integrator.hpp"
#include "riccati_lie/scenario.hpp"
#include "riccati_lie/verify.hpp"

using namespace riccati_lie;
namespace fs = std::filesystem;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run invoke(const std::vector<std::string>& args, const StructureConstants& table = structure_constants()) {
    std::ostringstream out, err;
    const int code = cli::run(args, out, err, table);
    return {code, out.str(), err.str()};
}

class TempDir {
public:
    TempDir() {
        std::random_device rd;
        path_ = fs::temp_directory_path() / ("riccati_lie_test_" + std::to_string(rd()));
        fs::create_directories(path_);
    }
    ~TempDir() { fs::remove_all(path_); }
    std::string file(const std::string& name, const std::string& content = {}) const {
        const fs::path p = path_ / name;
        if (!content.empty()) std::ofstream(p) << content;
        return p.string();
    }

private:
    fs::path path_;
};

const char* kCanonical = R"(# x'' + 3 x x' + x^3 = 0
[potential]
a0 = poly 0
a1 = poly 0
a2 = poly 1
[run]
t0 = 0
t1 = 1
dt = 0.01
tol = 1e-10
[ics]
ic = 0 -0.25
)";

}  // namespace

TEST_CASE("parse_scenario") {
    const Scenario s = parse_scenario(kCanonical);
    REQUIRE(s.potential.has_value());
    CHECK_FALSE(s.riccati.has_value());
    CHECK(s.potential->a2 == TimeFn::constant(1));
    CHECK(s.t1 == 1.0);
    CHECK(s.output_step() == 0.01);
    CHECK(s.ic_kind == IcKind::phase);
    REQUIRE(s.ics.size() == 1);
    CHECK(s.ics[0] == Vec2{0, -0.25});

    const auto grid = s.output_grid();
    CHECK(grid.size() == 101);
    CHECK(grid.front() == 0.0);
    CHECK(grid.back() == 1.0);

    const Scenario r = parse_scenario("[riccati]\nc0 = poly 0\nc1 = poly 0\nc2 = poly 0\nc3 = exp 1 0.5\n[ics]\n"
                                      "kind = lagrangian\nic = 1, 2\n");
    REQUIRE(r.riccati.has_value());
    CHECK(r.ic_kind == IcKind::lagrangian);
    CHECK(r.output_step() == doctest::Approx(0.01));
}

TEST_CASE("parse_scenario: errors") {
    auto line_of = [](const std::string& text) -> std::size_t {
        try {
            parse_scenario(text);
        } catch (const ParseError& e) {
            return e.position();
        }
        return 9999;
    };
    CHECK(line_of("[potential]\na0 = poly 0\na1 = poly 0\na2 = pol 1\n") == 4);
    CHECK(line_of("[potential]\na0 = poly 0\na1 = poly 0\na2 = poly 1\n[run]\nt0 = zero\n") == 6);
    CHECK(line_of("[potential]\na0 = poly 0\na1 = poly 0\na2 = poly 1\n[bogus]\n") == 5);
    CHECK(line_of("[potential]\na0 = poly 0\na0 = poly 0\n") == 3);
    CHECK_THROWS_AS(parse_scenario("[run]\nt0 = 0\n"), ParseError);  // no coefficient section
    CHECK_THROWS_AS(parse_scenario("[potential]\na0 = poly 0\na1 = poly 0\n"), ParseError);  // missing a2
    CHECK_THROWS_AS(parse_scenario(std::string(kCanonical) + "[riccati]\nc0 = poly 0\n"), ParseError);
    CHECK_THROWS_AS(parse_scenario("[potential]\na0 = poly 0\na1 = poly 0\na2 = poly 1\n[run]\nt0 = 1\nt1 = 1\n"),
                    ParseError);
    CHECK_THROWS_AS(parse_scenario("[potential]\na0 = poly 0\na1 = poly 0\na2 = poly 1\n[run]\ntol = 0\n"),
                    ParseError);
    CHECK_THROWS_AS(parse_scenario("[potential]\na0 = poly 0\na1 = poly 0\na2 = poly 1\n[ics]\nic = 1\n"),
                    ParseError);
    CHECK_THROWS_AS(load_scenario("/nonexistent/riccati.ini"), ParseError);
}

TEST_CASE("scenario ICs are checked against their domains") {
    Scenario s = parse_scenario(kCanonical);
    s.ics = {{0, 1}};
    CHECK_THROWS_AS(s.phase_ics(), DomainError);
    s.ic_kind = IcKind::lagrangian;
    s.ics = {{0, -1}};  // v + U = -1
    CHECK_THROWS_AS(s.phase_ics(), DomainError);
    s.ics = {{1, 1}};  // v + U = 2 -> p = -1/4
    CHECK(s.phase_ics()[0] == PhasePoint{1, -0.25});
}

TEST_CASE("property: config render/parse roundtrip keeps every digit") {
    std::mt19937_64 rng(61);
    std::uniform_real_distribution<double> u(-10, 10);
    for (int i = 0; i < 50; ++i) {
        Scenario s;
        if (i % 2 == 0) {
            s.potential = PotentialConfig{TimeFn::poly({u(rng), u(rng)}), TimeFn::sin(u(rng), u(rng), u(rng)),
                                          TimeFn::constant(std::abs(u(rng))) + TimeFn::exp(u(rng), u(rng))};
        } else {
            s.riccati = RiccatiConfig{TimeFn::cos(u(rng), 1.0 / 3.0, 0.1), TimeFn::constant(u(rng)),
                                      TimeFn::poly({1e-300, u(rng)}), TimeFn::constant(1.0 + std::abs(u(rng)))};
        }
        s.t0 = u(rng);
        s.t1 = s.t0 + std::abs(u(rng)) + 0.1;
        s.dt = 1.0 / 7.0;
        s.tol = 3.3e-11;
        s.seed = rng();
        s.ic_kind = i % 3 == 0 ? IcKind::lagrangian : IcKind::phase;
        s.ics = {{u(rng), -std::abs(u(rng))}, {u(rng), -std::abs(u(rng))}};
        CHECK(parse_scenario(render_scenario(s)) == s);
    }
}

TEST_CASE("csv: parse, validate, roundtrip") {
    const SolutionTable t = parse_csv("t,x,p\n0,1,-1\n0.5, 2 ,-3\n\n");
    CHECK(t.header == std::vector<std::string>{"t", "x", "p"});
    CHECK(t.rows.size() == 2);
    CHECK(t.rows[1][1] == 2.0);
    CHECK(t.column("p") == 2);
    CHECK_THROWS_AS(t.column("v"), ParseError);

    CHECK_THROWS_AS(parse_csv("t,x\n0,1\n0,2\n"), ParseError);     // t not increasing
    CHECK_THROWS_AS(parse_csv("t,x\n0,1\n1\n"), ParseError);       // ragged
    CHECK_THROWS_AS(parse_csv("t,x\n0,abc\n"), ParseError);        // non-numeric
    CHECK_THROWS_AS(parse_csv("t,x\n0,nan\n"), ParseError);        // non-finite
    CHECK_THROWS_AS(read_csv_file("/nonexistent/x.csv"), ParseError);

    std::mt19937_64 rng(62);
    std::uniform_real_distribution<double> u(-1, 1);
    SolutionTable big;
    big.header = {"t", "a", "b"};
    double tt = 0;
    for (int i = 0; i < 500; ++i) {
        tt += std::abs(u(rng)) + 1e-9;
        big.rows.push_back({tt, u(rng) * std::pow(10.0, 40 * u(rng)), std::nextafter(u(rng), 2.0)});
    }
    std::ostringstream os;
    write_csv(os, big);
    CHECK(parse_csv(os.str()) == big);
}

TEST_CASE("exit codes are distinct per error class") {
    CHECK(cli::exit_code_for(ErrorKind::parse) == cli::kInputError);
    CHECK(cli::exit_code_for(ErrorKind::domain) == cli::kDomainError);
    CHECK(cli::exit_code_for(ErrorKind::genericity) == cli::kGenericityError);
    CHECK(cli::exit_code_for(ErrorKind::branch) == cli::kGenericityError);
    CHECK(cli::exit_code_for(ErrorKind::numeric) == cli::kNumericError);
    CHECK(cli::exit_code_for(ErrorKind::range) == cli::kRangeError);
    CHECK(invoke({}).code == cli::kInputError);
    CHECK(invoke({"simulate"}).code == cli::kInputError);
    CHECK(invoke({"simulate", "/nonexistent.ini"}).code == cli::kInputError);
    CHECK(invoke({"--help"}).code == cli::kOk);
}

TEST_CASE("simulate") {
    TempDir dir;
    const std::string cfg = dir.file("canonical.ini", kCanonical);

    SUBCASE("canonical scenario ends near (1, 1, -1)") {
        const Run r = invoke({"simulate", cfg});
        REQUIRE(r.code == 0);
        const SolutionTable t = parse_csv(r.out);
        CHECK(t.header == std::vector<std::string>{"t", "x", "p"});
        REQUIRE(t.rows.size() == 101);
        CHECK(t.rows.back()[0] == 1.0);
        CHECK(t.rows.back()[1] == doctest::Approx(1.0).epsilon(1e-6));
        CHECK(t.rows.back()[2] == doctest::Approx(-1.0).epsilon(1e-6));
    }
    SUBCASE("output roundtrips the trajectory to 1e-15") {
        const std::string out = dir.file("out.csv");
        REQUIRE(invoke({"simulate", cfg, "--out", out}).code == 0);
        const SolutionTable t = read_csv_file(out);
        const Trajectory tr = integrate_hamiltonian(parse_scenario(kCanonical).potential_spec(), 0, {0, -0.25}, 1, 1e-10);
        for (const auto& row : t.rows) {
            const Vec2 s = tr.sample_at(row[0]);
            CHECK(std::abs(row[1] - s[0]) <= 1e-15 * std::max(1.0, std::abs(s[0])));
            CHECK(std::abs(row[2] - s[1]) <= 1e-15 * std::abs(s[1]));
        }
    }
    SUBCASE("zero potential gives x = t") {
        const std::string zero = dir.file("zero.ini", "[potential]\na0 = poly 0\na1 = poly 0\na2 = poly 0\n");
        const Run r = invoke({"simulate", zero, "--ic", "0,-1"});
        REQUIRE(r.code == 0);
        for (const auto& row : parse_csv(r.out).rows) CHECK(std::abs(row[1] - row[0]) <= 1e-10);
    }
    SUBCASE("several ICs and the riccati2 system") {
        Run r = invoke({"simulate", cfg, "--ic", "0,-0.25", "--ic", "0.3 -0.5"});
        REQUIRE(r.code == 0);
        CHECK(parse_csv(r.out).header == std::vector<std::string>{"t", "x1", "p1", "x2", "p2"});
        r = invoke({"simulate", cfg, "--system", "riccati2"});
        REQUIRE(r.code == 0);
        const SolutionTable t = parse_csv(r.out);
        CHECK(t.header == std::vector<std::string>{"t", "x", "v"});
        CHECK(t.rows.back()[1] == doctest::Approx(1.0).epsilon(1e-6));
        CHECK(std::abs(t.rows.back()[2]) <= 1e-6);  // x' = 2(1 - t^2)/(1 + t^2)^2
    }
    SUBCASE("p >= 0 IC is a domain error") {
        const Run r = invoke({"simulate", cfg, "--ic", "0,1"});
        CHECK(r.code == cli::kDomainError);
        CHECK(r.err.find("domain error") != std::string::npos);
    }
    SUBCASE("bad flags") {
        CHECK(invoke({"simulate", cfg, "--system", "lagrange"}).code == cli::kInputError);
        CHECK(invoke({"simulate", cfg, "--ic", "0"}).code == cli::kInputError);
    }
}

TEST_CASE("derive") {
    TempDir dir;
    SUBCASE("potential (0,0,1)") {
        const Run r = invoke({"derive", dir.file("p.ini", "[potential]\na0 = poly 0\na1 = poly 0\na2 = poly 1\n")});
        REQUIRE(r.code == 0);
        CHECK(r.out.find("source = potential") != std::string::npos);
        CHECK(r.out.find("\n0,0,0,0,1,0,3\n") != std::string::npos);
        CHECK(r.out.find("residual_f1 = 0\n") != std::string::npos);
        CHECK(r.out.find("residual_f0 = 0\n") != std::string::npos);
    }
    SUBCASE("riccati (0,0,0,1)") {
        const Run r = invoke({"derive", dir.file("r.ini", "[riccati]\nc0 = poly 0\nc1 = poly 0\nc2 = poly 0\nc3 = poly 1\n")});
        REQUIRE(r.code == 0);
        CHECK(r.out.find("t,a0,a1,a2\n0,0,0,1\n") != std::string::npos);
        CHECK(r.out.find("residual_c0 = 0\n") != std::string::npos);
    }
    SUBCASE("c3 = -1 is a domain error") {
        const Run r = invoke({"derive", dir.file("n.ini", "[riccati]\nc0 = poly 0\nc1 = poly 0\nc2 = poly 0\nc3 = poly -1\n")});
        CHECK(r.code == cli::kDomainError);
    }
    SUBCASE("a2 <= 0 is a domain error") {
        const Run r = invoke({"derive", dir.file("a.ini", "[potential]\na0 = poly 0\na1 = poly 0\na2 = poly 0\n")});
        CHECK(r.code == cli::kDomainError);
    }
}

TEST_CASE("superpose") {
    TempDir dir;
    const std::string cfg = dir.file("canonical.ini", kCanonical);
    const std::string sols = dir.file("sols.csv");
    const std::string fourth = dir.file("fourth.csv");
    REQUIRE(invoke({"simulate", cfg, "--ic", "0.3,-0.5", "--ic", "-0.2,-1", "--ic", "0.1,-2", "--out", sols}).code == 0);
    REQUIRE(invoke({"simulate", cfg, "--out", fourth}).code == 0);

    SUBCASE("fourth IC reproduces the simulated fourth solution") {
        const std::string rec = dir.file("rec.csv");
        REQUIRE(invoke({"superpose", cfg, "--sols", sols, "--fourth-ic", "0,-0.25", "--out", rec}).code == 0);
        const SolutionTable a = read_csv_file(rec), b = read_csv_file(fourth);
        CHECK(a.header == std::vector<std::string>{"t", "x0", "p0"});
        REQUIRE(a.rows.size() == b.rows.size());
        for (std::size_t i = 0; i < a.rows.size(); ++i) {
            CHECK(a.rows[i][0] == b.rows[i][0]);
            CHECK(std::abs(a.rows[i][1] - b.rows[i][1]) <= 1e-5 * std::max(1.0, std::abs(b.rows[i][1])));
            CHECK(std::abs(a.rows[i][2] - b.rows[i][2]) <= 1e-5 * std::max(1.0, std::abs(b.rows[i][2])));
        }
        const SolutionTable ups = read_csv_file(dir.file("rec_upsilon.csv"));
        CHECK(ups.header == std::vector<std::string>{"t", "x0"});
        CHECK(ups.column_values(1) == a.column_values(1));
    }
    SUBCASE("k1 = k2 = 0 returns the first solution") {
        const Run r = invoke({"superpose", cfg, "--sols", sols, "--k1", "0", "--k2", "0"});
        REQUIRE(r.code == 0);
        const SolutionTable a = parse_csv(r.out), b = read_csv_file(sols);
        for (std::size_t i = 0; i < a.rows.size(); ++i) {
            CHECK(std::abs(a.rows[i][1] - b.rows[i][1]) <= 1e-14 * std::max(1.0, std::abs(b.rows[i][1])));
            CHECK(std::abs(a.rows[i][2] - b.rows[i][2]) <= 1e-14 * std::abs(b.rows[i][2]));
        }
    }
    SUBCASE("two identical solutions are a genericity error") {
        const SolutionTable s = read_csv_file(sols);
        SolutionTable dup = s;
        for (auto& row : dup.rows) {
            row[3] = row[1];
            row[4] = row[2];
        }
        const std::string path = dir.file("dup.csv");
        write_csv_file(path, dup);
        const Run r = invoke({"superpose", cfg, "--sols", path, "--k1", "1", "--k2", "1"});
        CHECK(r.code == cli::kGenericityError);
    }
    SUBCASE("input errors") {
        CHECK(invoke({"superpose", cfg, "--sols", sols}).code == cli::kInputError);
        CHECK(invoke({"superpose", cfg, "--sols", sols, "--k1", "1"}).code == cli::kInputError);
        CHECK(invoke({"superpose", cfg, "--sols", sols, "--k1", "1", "--k2", "1", "--fourth-ic", "0,-1"}).code ==
              cli::kInputError);
        CHECK(invoke({"superpose", cfg, "--sols", fourth, "--k1", "1", "--k2", "1"}).code == cli::kInputError);
        CHECK(invoke({"superpose", cfg, "--sols", sols, "--fourth-ic", "0,0.5"}).code == cli::kDomainError);
    }
}

TEST_CASE("verify") {
    TempDir dir;
    const std::string cfg = dir.file("canonical.ini", kCanonical);

    SUBCASE("brackets at 100 trials") {
        const Run r = invoke({"verify", "brackets", "--trials", "100"});
        CHECK(r.code == 0);
        const auto pos = r.out.find("PASS brackets.commutation max_residual=");
        REQUIRE(pos != std::string::npos);
        const double residual = std::stod(r.out.substr(pos + std::string("PASS brackets.commutation max_residual=").size()));
        CHECK(residual <= 1e-10);
    }
    SUBCASE("integrals on the canonical scenario") {
        const Run r = invoke({"verify", "integrals", cfg});
        CHECK(r.code == 0);
        CHECK(r.out.find("PASS integrals.conservation") != std::string::npos);
    }
    SUBCASE("corrupted bracket table fails") {
        StructureConstants bad = structure_constants();
        bad[index_of(VectorField::X2)][index_of(VectorField::X4)][index_of(VectorField::X3)] = 2.5;
        const Run r = invoke({"verify", "all", cfg, "--trials", "20"}, bad);
        CHECK(r.code == cli::kVerifyFailed);
        CHECK(r.out.find("FAIL brackets.commutation") != std::string::npos);
        CHECK(r.out.find("FAIL summary") != std::string::npos);
    }
    SUBCASE("library report for every suite") {
        const VerifyReport rep = run_verify(Suite::all, parse_scenario(kCanonical), {.trials = 10, .seed = 3});
        CHECK(rep.all_passed());
        CHECK(rep.checks.size() == 14);
        CHECK_THROWS_AS(parse_suite("everything"), ParseError);
    }
    SUBCASE("seed override") {
        Run r = invoke({"verify", "action", "--seed", "11", "--trials", "5"});
        CHECK(r.out.rfind("seed = 11\n", 0) == 0);
        setenv("RICCATI_LIE_SEED", "99", 1);
        r = invoke({"verify", "action", "--seed", "11", "--trials", "5"});
        unsetenv("RICCATI_LIE_SEED");
        CHECK(r.out.rfind("seed = 99\n", 0) == 0);
    }
}
