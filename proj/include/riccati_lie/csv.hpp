#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace riccati_lie {

/// CSV-backed matrix: a header row and numeric rows. The first column is t and
/// must be strictly increasing.
struct SolutionTable {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;

    std::size_t columns() const { return header.size(); }
    /// Index of a named column; throws ParseError if absent.
    std::size_t column(std::string_view name) const;
    std::vector<double> column_values(std::size_t index) const;
    bool operator==(const SolutionTable&) const = default;
};

/// Checks header/row widths and the t column; throws ParseError.
void validate_table(const SolutionTable& table);

/// Writes with 17 significant digits so doubles survive a roundtrip exactly.
void write_csv(std::ostream& os, const SolutionTable& table);
void write_csv_file(const std::string& path, const SolutionTable& table);

/// ParseError positions are 1-based line numbers.
SolutionTable parse_csv(std::string_view text);
SolutionTable read_csv_file(const std::string& path);

}  // namespace riccati_lie
