// Command-line experiment runner. Subcommands mirror the library modules; every
// run prints a summary block to stderr and writes its table to --out (or
// stdout) in csv or json-lines form.

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <fstream>
#include <iostream>

#include "ifslab/runner.hpp"

namespace {

using namespace ifslab;

struct GlobalFlags {
    std::string out;
    std::string format = "csv";
    std::string config;  // handled before CLI11 parsing; kept here for --help
    std::uint64_t seed = 1;
    std::uint64_t budget_words = std::uint64_t(1) << 24;
    std::uint64_t budget_samples = std::uint64_t(1) << 22;
    bool serial = false;
};

void add_global(CLI::App* cmd, GlobalFlags& g) {
    cmd->add_option("--out", g.out, "output file path (default: stdout)");
    cmd->add_option("--format", g.format, "csv or json-lines")->default_str("csv");
    cmd->add_option("--seed", g.seed, "rng seed");
    cmd->add_option("--budget-words", g.budget_words, "max cylinders per enumeration");
    cmd->add_option("--budget-samples", g.budget_samples, "max Monte-Carlo samples");
    cmd->add_flag("--serial", g.serial, "disable the OpenMP kernels");
    cmd->add_option("--config", g.config,
                    "key = value file supplying defaults; explicit flags override");
}

// Expands `--config FILE` into option tokens placed right after the
// subcommand, so explicit flags still win (TakeLast policy). The file format
// is one `key = value` pair per line, '#' comments, values taken verbatim.
std::vector<std::string> expand_config_args(int argc, char** argv) {
    std::vector<std::string> args;
    std::string config_path;
    for (int i = 1; i < argc; ++i) {
        std::string a = argv[i];
        if (a == "--config") {
            if (i + 1 >= argc) throw ValidationError("--config needs a file path");
            config_path = argv[++i];
            continue;
        }
        if (a.rfind("--config=", 0) == 0) {
            config_path = a.substr(9);
            continue;
        }
        args.push_back(std::move(a));
    }
    if (config_path.empty()) return args;

    std::ifstream in(config_path);
    if (!in) throw ValidationError("cannot open config file '" + config_path + "'");
    std::vector<std::string> extra;
    std::string line;
    while (std::getline(in, line)) {
        if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
        auto eq = line.find('=');
        if (eq == std::string::npos) {
            bool blank = line.find_first_not_of(" \t\r") == std::string::npos;
            if (!blank) throw ValidationError("config line is not 'key = value': " + line);
            continue;
        }
        auto trim = [](std::string s) {
            auto b = s.find_first_not_of(" \t\r");
            auto e = s.find_last_not_of(" \t\r");
            return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
        };
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (key.empty()) throw ValidationError("config line has an empty key: " + line);
        extra.push_back("--" + key);
        if (!value.empty()) extra.push_back(value);
    }

    // insert after the subcommand token
    std::size_t pos = 0;
    while (pos < args.size() && !args[pos].empty() && args[pos][0] == '-') ++pos;
    if (pos < args.size()) ++pos;
    args.insert(args.begin() + static_cast<std::ptrdiff_t>(pos), extra.begin(), extra.end());
    return args;
}

void apply_common(const GlobalFlags& g, CommonOptions& c) {
    c.seed = g.seed;
    c.budgets.max_words = g.budget_words;
    c.budgets.max_samples = g.budget_samples;
    c.mode = g.serial ? ExecMode::serial : ExecMode::parallel;
}

void deliver(const RunResult& r, const GlobalFlags& g) {
    OutputFormat f = parse_format(g.format);
    if (g.out.empty())
        write_table(r.table, f, std::cout);
    else
        write_table_file(r.table, f, g.out);
    std::cerr << "summary:\n" << r.summary << "\n";
}

CLI::App* make_sub(CLI::App& app, const std::string& name, const std::string& desc) {
    CLI::App* cmd = app.add_subcommand(name, desc);
    cmd->option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    return cmd;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"metric number theory experiments on 1-D IFS attractors"};
    app.require_subcommand(1);

    GlobalFlags g_dim, g_khi, g_e21, g_e22, g_lb, g_mt, g_mah, g_quad, g_ov;

    DimOptions dim_opts;
    auto* c_dim = make_sub(app, "dim", "similarity dimension / Bowen bracket");
    c_dim->add_option("--preset", dim_opts.common.preset, "IFS preset name");
    c_dim->add_option("--ifs", dim_opts.common.ifs_file, "IFS config file");
    c_dim->add_option("--n", dim_opts.level, "pressure level (0 = auto)");
    c_dim->add_option("--tol", dim_opts.tol, "bisection tolerance");
    add_global(c_dim, g_dim);

    KhintchineOptions khi_opts;
    auto* c_khi = make_sub(app, "khintchine", "divergence sums and hit experiment");
    c_khi->add_option("--preset", khi_opts.common.preset, "IFS preset name");
    c_khi->add_option("--ifs", khi_opts.common.ifs_file, "IFS config file");
    c_khi->add_option("--z", khi_opts.z, "fixpoint:<digit> or a coding word");
    c_khi->add_option("--theta", khi_opts.theta, "power:c,e | const:c | exp:c,b | table:v1,..");
    c_khi->add_flag("--bypass-diameter", khi_opts.diameter_bypass,
                    "radius = theta(|I|) alone, no diameter factor");
    c_khi->add_option("--ranks", khi_opts.ranks, "number of ranks N");
    c_khi->add_option("--samples", khi_opts.samples, "Monte-Carlo samples");
    c_khi->add_option("--kmin", khi_opts.k_min, "report k-hitters for k = 1..kmin");
    c_khi->add_option("--cover-cap", khi_opts.cover_cap,
                      "exact covered measure only while |D|^n <= this");
    add_global(c_khi, g_khi);

    Example21Options e21_opts;
    auto* c_e21 = make_sub(app, "example21", "rank-only radii lose typical points");
    c_e21->add_option("--m-table", e21_opts.m_table, "per-m ledger rows");
    c_e21->add_option("--m-exact", e21_opts.m_exact, "exact-count sweep bound");
    c_e21->add_option("--tail-n", e21_opts.tail_n, "tail start");
    c_e21->add_option("--windows", e21_opts.windows, "window start ranks");
    c_e21->add_option("--window-len", e21_opts.window_len, "ranks per window");
    c_e21->add_option("--samples", e21_opts.samples, "Monte-Carlo samples");
    c_e21->add_option("--k", e21_opts.k, "hits needed inside a window");
    c_e21->add_option("--contrast-c", e21_opts.contrast_c, "theta for the contrast run");
    add_global(c_e21, g_e21);

    Example22Options e22_opts;
    auto* c_e22 = make_sub(app, "example22", "subtree-starved approximating function");
    c_e22->add_option("--J", e22_opts.j_word, "subtree word over {1,2}");
    c_e22->add_option("--ranks", e22_opts.exact_ranks, "exact series ranks");
    c_e22->add_option("--samples", e22_opts.samples, "Monte-Carlo samples");
    c_e22->add_option("--window-start", e22_opts.window_start, "first rank of the MC window");
    c_e22->add_option("--window-len", e22_opts.window_len, "ranks per window");
    c_e22->add_option("--k", e22_opts.k, "hits needed inside the window");
    add_global(c_e22, g_e22);

    LeadingBlockOptions lb_opts;
    auto* c_lb = make_sub(app, "leadingblock", "scan a coding for its leading block");
    c_lb->add_option("--coding", lb_opts.coding, "digit word")->required();
    c_lb->add_option("--l", lb_opts.prefix_len, "prefix length");
    add_global(c_lb, g_lb);

    MassTransferOptions mt_opts;
    auto* c_mt = make_sub(app, "masstransfer", "critical cover-exponent scan");
    c_mt->add_option("--preset", mt_opts.common.preset, "IFS preset name");
    c_mt->add_option("--ifs", mt_opts.common.ifs_file, "IFS config file");
    c_mt->add_option("--t", mt_opts.t, "radius power t >= 1");
    c_mt->add_option("--grid-points", mt_opts.grid_points, "scan grid size");
    c_mt->add_option("--grid-lo", mt_opts.grid_lo, "scan lower bound");
    c_mt->add_option("--grid-hi", mt_opts.grid_hi, "scan upper bound");
    c_mt->add_option("--n", mt_opts.level, "level for rate estimation");
    add_global(c_mt, g_mt);

    MahlerOptions mah_opts;
    auto* c_mah = make_sub(app, "mahler", "rational orbit heights and tau estimates");
    c_mah->add_option("--preset", mah_opts.common.preset, "IFS preset name");
    c_mah->add_option("--ifs", mah_opts.common.ifs_file, "IFS config file");
    c_mah->add_option("--start", mah_opts.start, "rational start point p/q");
    c_mah->add_option("--depth", mah_opts.depth, "orbit depth");
    c_mah->add_option("--x", mah_opts.x, "rational target for tau estimates");
    c_mah->add_option("--top-k", mah_opts.top_k, "top tau records kept");
    add_global(c_mah, g_mah);

    QuadraticOptions quad_opts;
    auto* c_quad = make_sub(app, "quadratic", "quadratic-irrational orbit growth");
    c_quad->add_option("--digits", quad_opts.digits, "continued-fraction digit set");
    c_quad->add_option("--poly", quad_opts.poly, "minimal polynomial a,b,c");
    c_quad->add_option("--root", quad_opts.root, "plus or minus");
    c_quad->add_option("--depth", quad_opts.depth, "orbit depth");
    add_global(c_quad, g_quad);

    OverlapOptions ov_opts;
    auto* c_ov = make_sub(app, "overlap", "exact-overlap detection and dimension drop");
    c_ov->add_option("--preset", ov_opts.common.preset, "IFS preset name");
    c_ov->add_option("--ifs", ov_opts.common.ifs_file, "IFS config file");
    c_ov->add_option("--k", ov_opts.k, "level to scan");
    c_ov->add_flag("!--no-drop", ov_opts.dimension_drop, "skip the dimension-drop solve");
    add_global(c_ov, g_ov);

    try {
        std::vector<std::string> args = expand_config_args(argc, argv);
        std::reverse(args.begin(), args.end());  // CLI11's vector parse is reversed
        app.parse(args);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }

    try {
        auto t0 = std::chrono::steady_clock::now();
        RunResult result;
        GlobalFlags* g = nullptr;
        if (c_dim->parsed()) {
            apply_common(g_dim, dim_opts.common);
            result = run_dim(dim_opts);
            g = &g_dim;
        } else if (c_khi->parsed()) {
            apply_common(g_khi, khi_opts.common);
            result = run_khintchine(khi_opts);
            g = &g_khi;
        } else if (c_e21->parsed()) {
            apply_common(g_e21, e21_opts.common);
            result = run_example21(e21_opts);
            g = &g_e21;
        } else if (c_e22->parsed()) {
            apply_common(g_e22, e22_opts.common);
            result = run_example22(e22_opts);
            g = &g_e22;
        } else if (c_lb->parsed()) {
            apply_common(g_lb, lb_opts.common);
            result = run_leadingblock(lb_opts);
            g = &g_lb;
        } else if (c_mt->parsed()) {
            apply_common(g_mt, mt_opts.common);
            result = run_masstransfer(mt_opts);
            g = &g_mt;
        } else if (c_mah->parsed()) {
            apply_common(g_mah, mah_opts.common);
            result = run_mahler(mah_opts);
            g = &g_mah;
        } else if (c_quad->parsed()) {
            apply_common(g_quad, quad_opts.common);
            result = run_quadratic(quad_opts);
            g = &g_quad;
        } else if (c_ov->parsed()) {
            apply_common(g_ov, ov_opts.common);
            result = run_overlap(ov_opts);
            g = &g_ov;
        }
        auto t1 = std::chrono::steady_clock::now();
        double ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
        result.summary += "\nruntime_ms: " + fmt_real(ms);
        deliver(result, *g);
        return 0;
    } catch (const ifslab::InternalCheckError& e) {
        std::cerr << "internal assertion failed: " << e.what() << "\n";
        return 4;
    } catch (const ifslab::ResourceError& e) {
        std::cerr << "resource error: " << e.what() << "\n";
        return 3;
    } catch (const ifslab::PrecisionError& e) {
        std::cerr << "precision error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
