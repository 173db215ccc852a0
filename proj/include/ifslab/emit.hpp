#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "ifslab/rational.hpp"

namespace ifslab {

enum class OutputFormat { csv, jsonl };

OutputFormat parse_format(const std::string& name);

// fixed 12-significant-digit formatting; the determinism contract depends on it
std::string fmt_real(double v);

struct Column {
    std::string name;
    bool numeric = true;
};

// Row-major string table; cells are pre-formatted so csv and jsonl emit
// byte-stable output.
struct Table {
    std::vector<Column> columns;
    std::vector<std::vector<std::string>> rows;

    void require_width(std::size_t w) const;
    std::vector<std::string>& add_row();
};

void write_csv(const Table& t, std::ostream& out);
void write_jsonl(const Table& t, std::ostream& out);
void write_table(const Table& t, OutputFormat f, std::ostream& out);
void write_table_file(const Table& t, OutputFormat f, const std::string& path);

}  // namespace ifslab
