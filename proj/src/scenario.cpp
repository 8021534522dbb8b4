#include "riccati_lie/scenario.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <map>
#include <sstream>

#include "riccati_lie/error.hpp"

namespace riccati_lie {

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

double parse_number(std::string_view text, std::size_t line, const std::string& key) {
    std::string_view s = trim(text);
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size() || !std::isfinite(v)) {
        throw ParseError("config line " + std::to_string(line) + ": " + key + " expects a finite real, got \"" +
                             std::string(text) + "\"",
                         line);
    }
    return v;
}

std::uint64_t parse_unsigned(std::string_view text, std::size_t line, const std::string& key) {
    const std::string_view s = trim(text);
    std::uint64_t v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size()) {
        throw ParseError("config line " + std::to_string(line) + ": " + key + " expects a non-negative integer", line);
    }
    return v;
}

TimeFn parse_fn(std::string_view text, std::size_t line, const std::string& key) {
    try {
        return parse_timefn(text);
    } catch (const ParseError& e) {
        throw ParseError("config line " + std::to_string(line) + ": " + key + ": " + e.what(), line);
    }
}

}  // namespace

Vec2 parse_pair(std::string_view text) {
    std::string buf(text);
    for (char& c : buf)
        if (c == ',') c = ' ';
    std::istringstream is(buf);
    std::string a, b, extra;
    if (!(is >> a >> b) || (is >> extra)) {
        throw ParseError("expected a pair of reals \"x,y\", got \"" + std::string(text) + "\"", 0);
    }
    return {parse_number(a, 0, "pair"), parse_number(b, 0, "pair")};
}

std::vector<double> Scenario::output_grid() const {
    const double step = output_step();
    std::vector<double> out;
    const double span = t1 - t0;
    const auto n = static_cast<std::size_t>(std::floor(span / step + 1e-9));
    for (std::size_t i = 0; i < n; ++i) out.push_back(t0 + step * static_cast<double>(i));
    // Drop a node that would sit within rounding of t1, then close on t1 exactly.
    while (!out.empty() && out.back() >= t1 - 1e-12 * std::max(1.0, std::abs(t1))) out.pop_back();
    out.push_back(t1);
    if (out.front() != t0) out.insert(out.begin(), t0);
    return out;
}

PotentialSpec Scenario::potential_spec(double* residual) const {
    if (potential) {
        if (residual != nullptr) *residual = 0.0;
        return potential->spec();
    }
    if (!riccati) throw ContractError("scenario has neither [potential] nor [riccati]");
    auto rec = potential_from_coefficients(riccati->spec(), validation_grid());
    if (residual != nullptr) *residual = rec.residual;
    return rec.potential;
}

RiccatiSpec Scenario::riccati_spec() const {
    if (riccati) {
        // f0, f1 need sqrt(c3); surface the sign condition before any evaluation.
        for (double t : validation_grid().nodes()) {
            if (!(riccati->c3.eval(t) > 0.0)) {
                throw DomainError("c3 must be > 0 on the working interval; got " + std::to_string(riccati->c3.eval(t)) +
                                  " at t=" + std::to_string(t));
            }
        }
        return riccati->spec();
    }
    if (!potential) throw ContractError("scenario has neither [potential] nor [riccati]");
    return coefficients_from_potential(potential->spec(), validation_grid());
}

std::vector<PhasePoint> Scenario::phase_ics() const {
    std::vector<PhasePoint> out;
    if (ic_kind == IcKind::phase) {
        for (const Vec2& ic : ics) {
            const PhasePoint s = PhasePoint::from(ic);
            require_in_O(s, "initial condition");
            out.push_back(s);
        }
        return out;
    }
    const PotentialSpec P = potential_spec();
    for (const Vec2& ic : ics) out.push_back(legendre_forward(P, t0, {ic[0], ic[1]}));
    return out;
}

std::vector<LagrangianPoint> Scenario::lagrangian_ics() const {
    std::vector<LagrangianPoint> out;
    if (ic_kind == IcKind::lagrangian) {
        for (const Vec2& ic : ics) out.push_back({ic[0], ic[1]});
        return out;
    }
    const PotentialSpec P = potential_spec();
    for (const PhasePoint& s : phase_ics()) out.push_back(legendre_inverse(P, t0, s));
    return out;
}

Scenario canonical_scenario() {
    Scenario s;
    s.potential = PotentialConfig{TimeFn::constant(0.0), TimeFn::constant(0.0), TimeFn::constant(1.0)};
    return s;
}

Scenario parse_scenario(std::string_view text) {
    Scenario s;
    std::map<std::string, std::map<std::string, std::pair<std::string, std::size_t>>> kv;
    std::vector<std::pair<std::string, std::size_t>> ic_lines;
    std::string section;

    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t nl = text.find('\n', pos);
        std::string_view line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
        pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;

        if (line.front() == '[') {
            if (line.back() != ']') throw ParseError("config line " + std::to_string(line_no) + ": bad section", line_no);
            section = std::string(trim(line.substr(1, line.size() - 2)));
            if (section != "potential" && section != "riccati" && section != "run" && section != "ics") {
                throw ParseError("config line " + std::to_string(line_no) + ": unknown section [" + section + "]",
                                 line_no);
            }
            if (kv.count(section) != 0 && section != "ics") {
                throw ParseError("config line " + std::to_string(line_no) + ": duplicate section [" + section + "]",
                                 line_no);
            }
            kv[section];
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string_view::npos || section.empty()) {
            throw ParseError("config line " + std::to_string(line_no) + ": expected key = value inside a section",
                             line_no);
        }
        const std::string key(trim(line.substr(0, eq)));
        const std::string value(trim(line.substr(eq + 1)));
        if (section == "ics" && key == "ic") {
            ic_lines.emplace_back(value, line_no);
            continue;
        }
        auto& sec = kv[section];
        if (sec.count(key) != 0) {
            throw ParseError("config line " + std::to_string(line_no) + ": duplicate key " + key, line_no);
        }
        sec[key] = {value, line_no};
    }

    auto take_fns = [&](const std::string& sec, std::initializer_list<const char*> keys) {
        std::vector<TimeFn> out;
        auto& entries = kv[sec];
        for (const char* k : keys) {
            const auto it = entries.find(k);
            if (it == entries.end()) throw ParseError("config: [" + sec + "] is missing key " + k, 0);
            out.push_back(parse_fn(it->second.first, it->second.second, k));
            entries.erase(it);
        }
        if (!entries.empty()) {
            const auto& [k, v] = *entries.begin();
            throw ParseError("config line " + std::to_string(v.second) + ": unknown key " + k + " in [" + sec + "]",
                             v.second);
        }
        return out;
    };

    const bool has_p = kv.count("potential") != 0, has_r = kv.count("riccati") != 0;
    if (has_p == has_r) throw ParseError("config: exactly one of [potential] or [riccati] is required", 0);
    if (has_p) {
        auto f = take_fns("potential", {"a0", "a1", "a2"});
        s.potential = PotentialConfig{f[0], f[1], f[2]};
    } else {
        auto f = take_fns("riccati", {"c0", "c1", "c2", "c3"});
        s.riccati = RiccatiConfig{f[0], f[1], f[2], f[3]};
    }

    for (const auto& [key, v] : kv["run"]) {
        const auto& [value, ln] = v;
        if (key == "t0") s.t0 = parse_number(value, ln, key);
        else if (key == "t1") s.t1 = parse_number(value, ln, key);
        else if (key == "dt") s.dt = parse_number(value, ln, key);
        else if (key == "tol") s.tol = parse_number(value, ln, key);
        else if (key == "seed") s.seed = parse_unsigned(value, ln, key);
        else throw ParseError("config line " + std::to_string(ln) + ": unknown key " + key + " in [run]", ln);
    }
    for (const auto& [key, v] : kv["ics"]) {
        const auto& [value, ln] = v;
        if (key != "kind") throw ParseError("config line " + std::to_string(ln) + ": unknown key " + key + " in [ics]", ln);
        if (value == "phase") s.ic_kind = IcKind::phase;
        else if (value == "lagrangian") s.ic_kind = IcKind::lagrangian;
        else throw ParseError("config line " + std::to_string(ln) + ": kind must be phase or lagrangian", ln);
    }
    for (const auto& [value, ln] : ic_lines) {
        try {
            s.ics.push_back(parse_pair(value));
        } catch (const ParseError& e) {
            throw ParseError("config line " + std::to_string(ln) + ": ic: " + e.what(), ln);
        }
    }

    if (!(s.t1 > s.t0)) throw ParseError("config: [run] requires t1 > t0", 0);
    if (!(s.tol > 0.0)) throw ParseError("config: [run] requires tol > 0", 0);
    if (s.dt < 0.0) throw ParseError("config: [run] requires dt >= 0", 0);
    return s;
}

Scenario load_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open config file " + path, 0);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_scenario(ss.str());
}

std::string render_scenario(const Scenario& s) {
    std::ostringstream os;
    os << std::setprecision(17);
    if (s.potential) {
        os << "[potential]\n"
           << "a0 = " << render_timefn(s.potential->a0) << "\n"
           << "a1 = " << render_timefn(s.potential->a1) << "\n"
           << "a2 = " << render_timefn(s.potential->a2) << "\n";
    }
    if (s.riccati) {
        os << "[riccati]\n"
           << "c0 = " << render_timefn(s.riccati->c0) << "\n"
           << "c1 = " << render_timefn(s.riccati->c1) << "\n"
           << "c2 = " << render_timefn(s.riccati->c2) << "\n"
           << "c3 = " << render_timefn(s.riccati->c3) << "\n";
    }
    os << "\n[run]\n"
       << "t0 = " << s.t0 << "\n"
       << "t1 = " << s.t1 << "\n"
       << "dt = " << s.dt << "\n"
       << "tol = " << s.tol << "\n"
       << "seed = " << s.seed << "\n";
    os << "\n[ics]\n"
       << "kind = " << (s.ic_kind == IcKind::phase ? "phase" : "lagrangian") << "\n";
    for (const Vec2& ic : s.ics) os << "ic = " << ic[0] << ' ' << ic[1] << "\n";
    return os.str();
}

}  // namespace riccati_lie
