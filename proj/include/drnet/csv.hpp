#pragma once

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace drnet::csv {

/// Output file could not be written (or read back).
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Doubles print with 6 significant digits; integers and text print verbatim.
using Cell = std::variant<double, std::uint64_t, std::string>;
using Row = std::vector<Cell>;

struct Table {
    std::vector<std::string> header;
    std::vector<Row> rows;
};

std::string format_number(double value);
std::string format_cell(const Cell& cell);

/// Comma-separated, LF line endings, header first.
std::string to_string(const Table& table);

/// Throws IoError when the file cannot be written.
void write_file(const std::filesystem::path& path, const std::string& contents);
void write_table(const std::filesystem::path& path, const Table& table);

struct Parsed {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

/// Reads back a file written by write_table (no quoting support needed).
Parsed read_table(const std::filesystem::path& path);

}  // namespace drnet::csv
