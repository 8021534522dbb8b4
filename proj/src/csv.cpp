#include "riccati_lie/csv.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "riccati_lie/error.hpp"

namespace riccati_lie {

namespace {

std::vector<std::string_view> split(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t pos = 0;
    while (true) {
        const auto comma = line.find(',', pos);
        out.push_back(line.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos));
        if (comma == std::string_view::npos) break;
        pos = comma + 1;
    }
    for (auto& cell : out) {
        while (!cell.empty() && (cell.front() == ' ' || cell.front() == '\t')) cell.remove_prefix(1);
        while (!cell.empty() && (cell.back() == ' ' || cell.back() == '\t' || cell.back() == '\r')) cell.remove_suffix(1);
    }
    return out;
}

}  // namespace

std::size_t SolutionTable::column(std::string_view name) const {
    for (std::size_t i = 0; i < header.size(); ++i)
        if (header[i] == name) return i;
    throw ParseError("CSV has no column named " + std::string(name), 0);
}

std::vector<double> SolutionTable::column_values(std::size_t index) const {
    std::vector<double> out;
    out.reserve(rows.size());
    for (const auto& r : rows) out.push_back(r.at(index));
    return out;
}

void validate_table(const SolutionTable& table) {
    if (table.header.empty()) throw ParseError("CSV header is empty", 1);
    for (std::size_t i = 0; i < table.rows.size(); ++i) {
        const auto& r = table.rows[i];
        if (r.size() != table.header.size()) {
            throw ParseError("CSV row " + std::to_string(i + 2) + " has " + std::to_string(r.size()) +
                                 " cells, header has " + std::to_string(table.header.size()),
                             i + 2);
        }
        if (i > 0 && !(r[0] > table.rows[i - 1][0])) {
            throw ParseError("CSV t column is not strictly increasing at line " + std::to_string(i + 2), i + 2);
        }
    }
}

void write_csv(std::ostream& os, const SolutionTable& table) {
    validate_table(table);
    for (std::size_t i = 0; i < table.header.size(); ++i) os << (i ? "," : "") << table.header[i];
    os << '\n' << std::setprecision(17);
    for (const auto& r : table.rows) {
        for (std::size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << r[i];
        os << '\n';
    }
}

void write_csv_file(const std::string& path, const SolutionTable& table) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot open " + path + " for writing", 0);
    write_csv(out, table);
    if (!out) throw ParseError("write to " + path + " failed", 0);
}

SolutionTable parse_csv(std::string_view text) {
    SolutionTable table;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos < text.size()) {
        const auto nl = text.find('\n', pos);
        std::string_view line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
        pos = nl == std::string_view::npos ? text.size() : nl + 1;
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string_view::npos) continue;
        const auto cells = split(line);
        if (table.header.empty()) {
            for (auto c : cells) {
                if (c.empty()) throw ParseError("CSV header has an empty column name", line_no);
                table.header.emplace_back(c);
            }
            continue;
        }
        std::vector<double> row;
        for (auto c : cells) {
            std::string_view s = c;
            if (!s.empty() && s.front() == '+') s.remove_prefix(1);
            double v = 0.0;
            const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
            if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size() || !std::isfinite(v)) {
                throw ParseError("CSV line " + std::to_string(line_no) + ": non-numeric cell \"" + std::string(c) + "\"",
                                 line_no);
            }
            row.push_back(v);
        }
        table.rows.push_back(std::move(row));
    }
    validate_table(table);
    return table;
}

SolutionTable read_csv_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open CSV file " + path, 0);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_csv(ss.str());
}

}  // namespace riccati_lie
