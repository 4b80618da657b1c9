#include "drnet/csv.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace drnet::csv {

std::string format_number(double value) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", value);
    return buf;
}

std::string format_cell(const Cell& cell) {
    if (const auto* d = std::get_if<double>(&cell)) return format_number(*d);
    if (const auto* u = std::get_if<std::uint64_t>(&cell)) return std::to_string(*u);
    return std::get<std::string>(cell);
}

std::string to_string(const Table& table) {
    std::string out;
    auto line = [&out](const auto& cells, auto&& render) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i) out += ',';
            out += render(cells[i]);
        }
        out += '\n';
    };
    line(table.header, [](const std::string& h) { return h; });
    for (const auto& row : table.rows) {
        line(row, [](const Cell& c) { return format_cell(c); });
    }
    return out;
}

void write_file(const std::filesystem::path& path, const std::string& contents) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw IoError("cannot open '" + path.string() + "' for writing");
    }
    out << contents;
    out.flush();
    if (!out) {
        throw IoError("failed writing '" + path.string() + "'");
    }
}

void write_table(const std::filesystem::path& path, const Table& table) {
    write_file(path, to_string(table));
}

Parsed read_table(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open '" + path.string() + "' for reading");
    }
    auto split = [](const std::string& line) {
        std::vector<std::string> cells;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) cells.push_back(cell);
        if (!line.empty() && line.back() == ',') cells.emplace_back();
        return cells;
    };
    Parsed parsed;
    std::string line;
    if (std::getline(in, line)) {
        parsed.header = split(line);
    }
    while (std::getline(in, line)) {
        parsed.rows.push_back(split(line));
    }
    return parsed;
}

}  // namespace drnet::csv
