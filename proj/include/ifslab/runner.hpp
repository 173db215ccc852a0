#pragma once

#include "ifslab/emit.hpp"
#include "ifslab/enumerate.hpp"
#include "ifslab/ifs.hpp"

namespace ifslab {

struct RunResult {
    Table table;
    std::string summary;
};

struct CommonOptions {
    std::string preset = "cantor3";
    std::string ifs_file;  // wins over preset when nonempty
    std::uint64_t seed = 1;
    Budgets budgets;
    ExecMode mode = ExecMode::parallel;
};

Ifs1D load_ifs(const CommonOptions& o);

struct DimOptions {
    CommonOptions common;
    int level = 0;  // 0: largest n with |D|^n <= 2^20
    double tol = 1e-10;
};
RunResult run_dim(const DimOptions& o);

struct KhintchineOptions {
    CommonOptions common;
    std::string z = "fixpoint:1";
    std::string theta = "power:1,-1";
    bool diameter_bypass = false;
    int ranks = 20;
    long samples = 500;
    int k_min = 5;
    std::uint64_t cover_cap = std::uint64_t(1) << 14;
};
RunResult run_khintchine(const KhintchineOptions& o);

struct Example21Options {
    CommonOptions common;
    int m_table = 64;     // per-m ledger rows
    int m_exact = 1000;   // exact-count sweep bound
    int tail_n = 300;
    std::vector<int> windows = {1, 11, 21, 31};
    int window_len = 21;
    long samples = 5000;
    int k = 5;
    double contrast_c = 0.5;
};
RunResult run_example21(const Example21Options& o);

struct Example22Options {
    CommonOptions common;
    std::string j_word = "1";
    int exact_ranks = 400;
    long samples = 2000;
    int window_start = 60;
    int window_len = 21;
    int k = 1;
};
RunResult run_example22(const Example22Options& o);

struct LeadingBlockOptions {
    CommonOptions common;
    std::string coding;
    int prefix_len = 1;
};
RunResult run_leadingblock(const LeadingBlockOptions& o);

struct MassTransferOptions {
    CommonOptions common;
    double t = 1.0;
    int grid_points = 64;
    double grid_lo = 0.0;  // <= 0: default 0.05 * dim_s
    double grid_hi = 0.0;  // <= 0: default 1.2 * dim_s
    int level = 8;
};
RunResult run_masstransfer(const MassTransferOptions& o);

struct MahlerOptions {
    CommonOptions common;
    std::string start = "0/1";
    int depth = 8;
    std::string x;  // rational to estimate tau against; empty skips
    int top_k = 5;
};
RunResult run_mahler(const MahlerOptions& o);

struct QuadraticOptions {
    CommonOptions common;
    std::vector<long> digits = {1, 2};
    std::string poly = "1,0,-2";  // a,b,c
    std::string root = "plus";
    int depth = 10;
};
RunResult run_quadratic(const QuadraticOptions& o);

struct OverlapOptions {
    CommonOptions common;
    int k = 2;
    bool dimension_drop = true;
};
RunResult run_overlap(const OverlapOptions& o);

}  // namespace ifslab
