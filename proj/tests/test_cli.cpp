#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "ifslab/runner.hpp"

using namespace ifslab;

namespace {

std::string table_bytes(const Table& t, OutputFormat f) {
    std::ostringstream out;
    write_table(t, f, out);
    return out.str();
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

const char* bin_path() { return std::getenv("IFSLAB_BIN"); }
const char* repro_dir() { return std::getenv("IFSLAB_REPRO_DIR"); }

int run_binary(const std::string& args) {
    REQUIRE(bin_path() != nullptr);
    std::string cmd = std::string(bin_path()) + " " + args + " >/dev/null 2>&1";
    int status = std::system(cmd.c_str());
    return WEXITSTATUS(status);
}

}  // namespace

TEST_CASE("formatting: 12 significant digits, stable") {
    CHECK(fmt_real(0.1) == "0.1");
    CHECK(fmt_real(1.0 / 3.0) == "0.333333333333");
    CHECK(fmt_real(2.4965e18) == "2.4965e+18");
    CHECK(fmt_real(1.0) == "1");
}

TEST_CASE("csv and jsonl writers agree on row counts and stay byte-stable") {
    Table t;
    t.columns = {{"name", false}, {"value", true}, {"note", false}};
    auto& r1 = t.add_row();
    r1[0] = "alpha";
    r1[1] = fmt_real(0.5);
    r1[2] = "hello \"quoted\"";
    auto& r2 = t.add_row();
    r2[0] = "beta";
    r2[1] = "";
    r2[2] = "x";

    std::string csv = table_bytes(t, OutputFormat::csv);
    CHECK(csv == "name,value,note\nalpha,0.5,hello \"quoted\"\nbeta,,x\n");
    CHECK(csv == table_bytes(t, OutputFormat::csv));

    std::string jsonl = table_bytes(t, OutputFormat::jsonl);
    std::size_t lines = 0;
    for (char ch : jsonl) lines += ch == '\n';
    CHECK(lines == t.rows.size());
    CHECK(jsonl.find("\"value\":0.5") != std::string::npos);
    CHECK(jsonl.find("\\\"quoted\\\"") != std::string::npos);
    CHECK(jsonl.find("null") != std::string::npos);  // empty numeric cell

    CHECK(parse_format("csv") == OutputFormat::csv);
    CHECK(parse_format("json-lines") == OutputFormat::jsonl);
    CHECK_THROWS_AS(parse_format("xml"), ValidationError);
}

TEST_CASE("runner: dim output record") {
    DimOptions o;
    o.common.preset = "cantor3";
    RunResult r = run_dim(o);
    REQUIRE(r.table.rows.size() == 1);
    CHECK(r.table.rows[0][0] == "cantor3");
    CHECK(r.table.rows[0][1] == "exact-similarity");
    CHECK(r.table.rows[0][2] == "0.630929753571");
    CHECK(r.table.rows[0][5] == "certified");
}

TEST_CASE("runner: repeat runs are byte-identical") {
    KhintchineOptions o;
    o.common.preset = "cantor3";
    o.common.seed = 5;
    o.ranks = 12;
    o.samples = 80;
    o.k_min = 3;
    std::string a = table_bytes(run_khintchine(o).table, OutputFormat::csv);
    std::string b = table_bytes(run_khintchine(o).table, OutputFormat::csv);
    CHECK(a == b);

    Example22Options e;
    e.exact_ranks = 30;
    e.samples = 40;
    CHECK(table_bytes(run_example22(e).table, OutputFormat::csv) ==
          table_bytes(run_example22(e).table, OutputFormat::csv));

    // a different seed changes the table
    KhintchineOptions o2 = o;
    o2.common.seed = 6;
    CHECK(a != table_bytes(run_khintchine(o2).table, OutputFormat::csv));
}

TEST_CASE("runner: khintchine column layout") {
    KhintchineOptions o;
    o.ranks = 4;
    o.samples = 10;
    o.k_min = 2;
    RunResult r = run_khintchine(o);
    REQUIRE(r.table.columns.size() == 7);
    CHECK(r.table.columns[0].name == "rank");
    CHECK(r.table.columns[4].name == "covered_measure");
    CHECK(r.table.columns[5].name == "hitter_fraction_k1");
    CHECK(r.table.columns[6].name == "hitter_fraction_k2");
    CHECK(r.table.rows.size() == 4);
}

TEST_CASE("runner: validation failures name the offending input") {
    DimOptions bad;
    bad.common.preset = "unknown";
    CHECK_THROWS_WITH_AS(run_dim(bad), "unknown preset 'unknown'", ValidationError);

    KhintchineOptions kb;
    kb.theta = "power:oops";
    CHECK_THROWS_AS(run_khintchine(kb), ValidationError);

    MahlerOptions mb;
    mb.common.preset = "cf12";
    CHECK_THROWS_AS(run_mahler(mb), ValidationError);
}

TEST_CASE("cli binary: determinism of shipped repro configs") {
    REQUIRE(bin_path() != nullptr);
    REQUIRE(repro_dir() != nullptr);
    std::string repro = repro_dir();

    for (const char* pair : {"khintchine khintchine_cantor3.cfg", "dim dim_cantor3.cfg",
                             "overlap overlap_demo.cfg"}) {
        std::istringstream ss{std::string(pair)};
        std::string sub, cfg;
        ss >> sub >> cfg;
        std::string out1 = "/tmp/ifslab_clitest_1.csv";
        std::string out2 = "/tmp/ifslab_clitest_2.csv";
        CHECK(run_binary(sub + " --config " + repro + "/" + cfg + " --out " + out1) == 0);
        CHECK(run_binary(sub + " --config " + repro + "/" + cfg + " --out " + out2) == 0);
        CHECK(read_file(out1) == read_file(out2));
        std::remove(out1.c_str());
        std::remove(out2.c_str());
    }
}

TEST_CASE("cli binary: exit codes") {
    CHECK(run_binary("dim --preset nope") == 2);                       // validation
    CHECK(run_binary("dim --preset cf12 --n 40") == 3);                // word budget
    CHECK(run_binary("nonsense-subcommand") != 0);
    CHECK(run_binary("dim --preset cantor3") == 0);
    // --format json-lines also succeeds and emits one record per row
    CHECK(run_binary("dim --preset cantor3 --format json-lines --out /tmp/ifslab_dim.jsonl") == 0);
    std::string jsonl = read_file("/tmp/ifslab_dim.jsonl");
    CHECK(jsonl.find("\"preset\":\"cantor3\"") != std::string::npos);
    std::remove("/tmp/ifslab_dim.jsonl");
}
