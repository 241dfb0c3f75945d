#include "ruincap/curve_table.hpp"

#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <system_error>

namespace ruincap {

std::size_t CurveTable::column(const std::string& name) const {
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (header[i] == name) return i;
    }
    throw std::out_of_range("no column named " + name);
}

void CurveTable::append_columns(const CurveTable& other) {
    if (other.rows.size() != rows.size()) throw std::invalid_argument("append_columns: row count mismatch");
    for (std::size_t j = 1; j < other.header.size(); ++j) header.push_back(other.header[j]);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        rows[i].insert(rows[i].end(), other.rows[i].begin() + 1, other.rows[i].end());
    }
    metadata.insert(metadata.end(), other.metadata.begin(), other.metadata.end());
}

std::string format_double(double v) {
    if (std::isnan(v)) return "NA";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    auto r = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
    return std::string(buf, r.ptr);
}

void write_csv(std::ostream& os, const CurveTable& table) {
    for (const auto& [k, v] : table.metadata) {
        std::string value = v;
        for (char& ch : value) {
            if (ch == '\n' || ch == '\r') ch = ' ';
        }
        os << "# " << k << ": " << value << '\n';
    }
    for (std::size_t j = 0; j < table.header.size(); ++j) {
        if (j) os << ',';
        os << table.header[j];
    }
    os << '\n';
    for (const auto& row : table.rows) {
        for (std::size_t j = 0; j < row.size(); ++j) {
            if (j) os << ',';
            os << (row[j] ? format_double(*row[j]) : std::string("NA"));
        }
        os << '\n';
    }
}

std::string to_csv(const CurveTable& table) {
    std::ostringstream os;
    write_csv(os, table);
    return os.str();
}

namespace {

std::vector<std::string> split(const std::string& line) {
    std::vector<std::string> out;
    std::string cell;
    std::istringstream ss(line);
    while (std::getline(ss, cell, ',')) out.push_back(cell);
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

std::optional<double> parse_cell(const std::string& s) {
    if (s == "NA") return std::nullopt;
    if (s == "inf") return INFINITY;
    if (s == "-inf") return -INFINITY;
    double v = 0.0;
    auto r = std::from_chars(s.data(), s.data() + s.size(), v);
    if (r.ec != std::errc() || r.ptr != s.data() + s.size()) {
        throw std::invalid_argument("curve table: bad numeric cell '" + s + "'");
    }
    return v;
}

}  // namespace

CurveTable read_csv(std::istream& is) {
    CurveTable t;
    std::string line;
    bool have_header = false;
    while (std::getline(is, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (line[0] == '#') {
            auto body = line.substr(1);
            if (!body.empty() && body[0] == ' ') body.erase(0, 1);
            auto pos = body.find(": ");
            if (pos == std::string::npos) {
                t.add_meta(body, "");
            } else {
                t.add_meta(body.substr(0, pos), body.substr(pos + 2));
            }
            continue;
        }
        auto cells = split(line);
        if (!have_header) {
            t.header = cells;
            have_header = true;
            continue;
        }
        if (cells.size() != t.header.size()) throw std::invalid_argument("curve table: ragged row");
        std::vector<std::optional<double>> row;
        row.reserve(cells.size());
        for (const auto& c : cells) row.push_back(parse_cell(c));
        t.rows.push_back(std::move(row));
    }
    if (!have_header) throw std::invalid_argument("curve table: missing header");
    return t;
}

}  // namespace ruincap
