#include "ifslab/emit.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>

namespace ifslab {

OutputFormat parse_format(const std::string& name) {
    if (name == "csv") return OutputFormat::csv;
    if (name == "json-lines" || name == "jsonl") return OutputFormat::jsonl;
    throw ValidationError("format must be csv or json-lines");
}

std::string fmt_real(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

void Table::require_width(std::size_t w) const {
    if (columns.size() != w) throw InternalCheckError("table row width mismatch");
}

std::vector<std::string>& Table::add_row() {
    rows.emplace_back(columns.size());
    return rows.back();
}

void write_csv(const Table& t, std::ostream& out) {
    for (std::size_t c = 0; c < t.columns.size(); ++c) {
        if (c) out << ',';
        out << t.columns[c].name;
    }
    out << '\n';
    for (const auto& row : t.rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c) out << ',';
            out << row[c];
        }
        out << '\n';
    }
}

static void json_string(std::ostream& out, const std::string& s) {
    out << '"';
    for (char ch : s) {
        switch (ch) {
            case '"': out << "\\\""; break;
            case '\\': out << "\\\\"; break;
            case '\n': out << "\\n"; break;
            default: out << ch;
        }
    }
    out << '"';
}

void write_jsonl(const Table& t, std::ostream& out) {
    for (const auto& row : t.rows) {
        out << '{';
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c) out << ',';
            json_string(out, t.columns[c].name);
            out << ':';
            const std::string& cell = row[c];
            bool as_number = t.columns[c].numeric && !cell.empty() && cell != "inf" &&
                             cell != "-inf" && cell != "nan";
            if (cell.empty())
                out << "null";
            else if (as_number)
                out << cell;
            else
                json_string(out, cell);
        }
        out << "}\n";
    }
}

void write_table(const Table& t, OutputFormat f, std::ostream& out) {
    if (f == OutputFormat::csv)
        write_csv(t, out);
    else
        write_jsonl(t, out);
}

void write_table_file(const Table& t, OutputFormat f, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ValidationError("cannot open output path '" + path + "'");
    write_table(t, f, out);
    if (!out) throw ValidationError("failed writing '" + path + "'");
}

}  // namespace ifslab
