// feastlab command line front-end: generate test matrices, run the FEAST
// family solvers, sweep the rational filter, and run comparison grids.
//
// Exit codes: 0 success/converged, 1 not converged, 2 usage error,
// 3 I/O or numerical failure.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>

#include "feastlab/drivers.hpp"
#include "feastlab/matrix_market.hpp"

namespace fs = std::filesystem;
using json = nlohmann::json;
using namespace feastlab;

namespace {

constexpr int kExitConverged = 0;
constexpr int kExitNotConverged = 1;
constexpr int kExitUsage = 2;
constexpr int kExitFailure = 3;

std::string fmt17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void write_file_atomic(const std::string& path, const std::string& contents) {
    std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp);
        if (!out) throw std::runtime_error("cannot open '" + tmp + "' for writing");
        out << contents;
        if (!out) throw std::runtime_error("write failed for '" + tmp + "'");
    }
    fs::rename(tmp, path);
}

std::string sidecar_path(const std::string& matrix_path) { return matrix_path + ".truth"; }

void write_sidecar(const std::string& path, const Eigen::VectorXd& values) {
    std::ostringstream os;
    for (Eigen::Index i = 0; i < values.size(); ++i) os << fmt17(values[i]) << "\n";
    write_file_atomic(path, os.str());
}

std::vector<double> read_sidecar(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open sidecar '" + path + "'");
    std::vector<double> values;
    double v;
    while (in >> v) values.push_back(v);
    std::sort(values.begin(), values.end());
    return values;
}

// ---------------------------------------------------------------- gen

struct GenOptions {
    std::string kind;
    int n = 545;
    int m_inside = 50;
    std::vector<double> interval{-1.0, 1.0};
    std::vector<double> outer;
    int clusters = 4;
    double cluster_width = 0.05;
    std::uint64_t seed = 42;
    std::string out;
    std::string format = "coordinate";
};

int run_gen(const GenOptions& opt) {
    std::vector<double> outer = opt.outer;
    if (outer.empty()) {
        if (opt.kind == "sparse") outer = {1.01, 20.81};
        else if (opt.kind == "dense") outer = {1.01, 1.1};
        else outer = {1.01, 5.0};
    }
    SpectrumLayout layout{
        opt.n,
        SearchInterval(opt.interval[0], opt.interval[1]),
        opt.m_inside,
        SearchInterval(outer[0], outer[1]),
        opt.n - opt.m_inside,
        opt.kind == "clustered" ? Placement::clustered : Placement::uniform,
        opt.clusters,
        opt.cluster_width,
        opt.seed};

    EigenDecomposition decomp = generate_spectrum(layout);
    SymmetricMatrix A = assemble_matrix(decomp);
    write_matrix_market(A, opt.out,
                        opt.format == "array" ? MatrixMarketFormat::array
                                              : MatrixMarketFormat::coordinate);
    write_sidecar(sidecar_path(opt.out), decomp.values);

    int m = true_count_in_interval(decomp, SearchInterval(opt.interval[0], opt.interval[1]));
    std::cout << "wrote " << opt.out << " (n = " << opt.n << ") and "
              << sidecar_path(opt.out) << "\n";
    std::cout << "true_count_in_interval(" << opt.interval[0] << ", " << opt.interval[1]
              << ") = " << m << "\n";
    return kExitConverged;
}

// ---------------------------------------------------------------- solve

struct SolveOptions {
    std::string algo;
    std::string matrix;
    std::vector<double> interval{-1.0, 1.0};
    SolverConfig config;
    std::string orthogonalizer = "svd";
    std::string trace_path;
    std::string sidecar;
};

Solution dispatch_solve(const std::string& algo, const SymmetricMatrix& A,
                        const SearchInterval& interval, const SolverConfig& config) {
    if (algo == "feast") return feast_solve(A, interval, config);
    if (algo == "xfeast") return xfeast_solve(A, interval, config);
    if (algo == "rfeast") return rfeast_solve(A, interval, config);
    throw std::invalid_argument("unknown algorithm '" + algo +
                                "' (expected feast, xfeast, or rfeast)");
}

int run_solve(SolveOptions opt) {
    opt.config.orthogonalizer =
        opt.orthogonalizer == "qr" ? Orthogonalizer::qr : Orthogonalizer::svd;
    SymmetricMatrix A = read_matrix_market(opt.matrix);
    SearchInterval interval(opt.interval[0], opt.interval[1]);
    Solution sol = dispatch_solve(opt.algo, A, interval, opt.config);

    if (!opt.trace_path.empty()) {
        std::ostringstream os;
        write_trace_csv(os, sol.trace);
        write_file_atomic(opt.trace_path, os.str());
    }

    double final_residual = sol.trace.records.empty()
                                ? std::numeric_limits<double>::quiet_NaN()
                                : sol.trace.records.back().max_residual;
    std::cout << "algorithm:      " << opt.algo << "\n";
    std::cout << "converged:      " << (sol.converged ? "yes" : "no") << "\n";
    std::cout << "iterations:     " << sol.iterations << "\n";
    std::cout << "rhs_solved:     " << sol.accounting.rhs_solved << "\n";
    std::cout << "final_residual: " << fmt17(final_residual) << "\n";
    std::cout << "m_found:        " << sol.eigenvalues.size() << "\n";
    std::cout << "eigenvalues:";
    for (Eigen::Index i = 0; i < sol.eigenvalues.size(); ++i)
        std::cout << " " << fmt17(sol.eigenvalues[i]);
    std::cout << "\n";

    std::string sidecar = opt.sidecar.empty() && fs::exists(sidecar_path(opt.matrix))
                              ? sidecar_path(opt.matrix)
                              : opt.sidecar;
    if (!sidecar.empty()) {
        std::vector<double> truth = read_sidecar(sidecar);
        double max_err = 0.0;
        for (Eigen::Index i = 0; i < sol.eigenvalues.size(); ++i) {
            double best = std::numeric_limits<double>::infinity();
            for (double t : truth) best = std::min(best, std::abs(sol.eigenvalues[i] - t));
            max_err = std::max(max_err, best);
        }
        std::cout << "oracle_max_err: " << fmt17(max_err) << "\n";
    }
    return sol.converged ? kExitConverged : kExitNotConverged;
}

// ---------------------------------------------------------------- compare

struct CellResult {
    std::string algo;
    int m0, nc, s;
    bool converged = false;
    bool failed = false;
    int iters = 0;
    long long rhs_solved = 0;
    double final_residual = std::numeric_limits<double>::quiet_NaN();
    double oracle_max_err = std::numeric_limits<double>::quiet_NaN();
    long long rhs_at_tol = std::numeric_limits<long long>::max();
    ConvergenceTrace trace;
};

SpectrumLayout layout_from_json(const json& j) {
    SpectrumLayout layout{
        j.at("n").get<int>(),
        SearchInterval(j.at("inside").at(0).get<double>(), j.at("inside").at(1).get<double>()),
        j.at("inside_count").get<int>(),
        SearchInterval(j.at("outside").at(0).get<double>(),
                       j.at("outside").at(1).get<double>()),
        j.at("outside_count").get<int>(),
        j.at("placement").get<std::string>() == "clustered" ? Placement::clustered
                                                            : Placement::uniform,
        j.value("num_clusters", 1),
        j.value("cluster_width", 0.0),
        j.at("seed").get<std::uint64_t>()};
    return layout;
}

int run_compare(const std::string& config_path, std::string out_dir_override) {
    std::ifstream in(config_path);
    if (!in) throw std::runtime_error("cannot open config '" + config_path + "'");
    json cfg = json::parse(in);

    std::optional<EigenDecomposition> truth_decomp;
    std::vector<double> truth;
    SymmetricMatrix A = [&]() -> SymmetricMatrix {
        const json& m = cfg.at("matrix");
        if (m.contains("path")) {
            std::string p = m.at("path").get<std::string>();
            if (fs::exists(sidecar_path(p))) truth = read_sidecar(sidecar_path(p));
            return read_matrix_market(p);
        }
        EigenDecomposition d = generate_spectrum(layout_from_json(m.at("layout")));
        truth.assign(d.values.data(), d.values.data() + d.values.size());
        truth_decomp = std::move(d);
        return assemble_matrix(*truth_decomp);
    }();

    SearchInterval interval(cfg.at("interval").at(0).get<double>(),
                            cfg.at("interval").at(1).get<double>());
    double tol = cfg.at("tol").get<double>();
    int max_iter = cfg.at("max_iter").get<int>();
    std::uint64_t seed = cfg.at("seed").get<std::uint64_t>();
    std::string out_dir = out_dir_override.empty()
                              ? cfg.at("output_dir").get<std::string>()
                              : out_dir_override;
    const json& cells = cfg.at("cells");
    if (cells.empty()) throw std::invalid_argument("compare: config has no cells");
    bool cache = cfg.value("cache_factorizations", false);

    fs::create_directories(out_dir);

    auto run_cell = [&](const json& cell) -> CellResult {
        CellResult res;
        res.algo = cell.at("algo").get<std::string>();
        res.m0 = cell.at("m0").get<int>();
        res.nc = cell.at("nc").get<int>();
        res.s = cell.value("s", 1);
        try {
            SolverConfig config;
            config.m0 = res.m0;
            config.n_c = res.nc;
            config.s = res.s;
            config.tol = tol;
            config.max_iter = max_iter;
            config.seed = seed;
            config.cache_factorizations = cache;
            Solution sol = dispatch_solve(res.algo, A, interval, config);
            res.converged = sol.converged;
            res.iters = sol.iterations;
            res.rhs_solved = sol.accounting.rhs_solved;
            res.trace = sol.trace;
            if (!sol.trace.records.empty())
                res.final_residual = sol.trace.records.back().max_residual;
            for (const auto& rec : sol.trace.records)
                if (rec.max_residual <= tol) {
                    res.rhs_at_tol = rec.rhs_cumulative;
                    break;
                }
            if (!truth.empty()) {
                double max_err = 0.0;
                for (Eigen::Index i = 0; i < sol.eigenvalues.size(); ++i) {
                    double best = std::numeric_limits<double>::infinity();
                    for (double t : truth)
                        best = std::min(best, std::abs(sol.eigenvalues[i] - t));
                    max_err = std::max(max_err, best);
                }
                res.oracle_max_err = max_err;
            }
        } catch (const std::exception& e) {
            res.failed = true;
            std::fprintf(stderr, "compare: cell %s m0=%d nc=%d s=%d failed: %s\n",
                         res.algo.c_str(), res.m0, res.nc, res.s, e.what());
        }
        return res;
    };

    std::vector<std::future<CellResult>> futures;
    for (const auto& cell : cells)
        futures.push_back(std::async(std::launch::async, run_cell, cell));
    std::vector<CellResult> results;
    for (auto& f : futures) results.push_back(f.get());

    for (const auto& res : results) {
        char name[128];
        std::snprintf(name, sizeof(name), "trace_%s_m0%d_nc%d_s%d.csv", res.algo.c_str(),
                      res.m0, res.nc, res.s);
        std::ostringstream os;
        write_trace_csv(os, res.trace);
        write_file_atomic((fs::path(out_dir) / name).string(), os.str());
    }

    std::stable_sort(results.begin(), results.end(),
                     [](const CellResult& a, const CellResult& b) {
                         if (a.rhs_at_tol != b.rhs_at_tol) return a.rhs_at_tol < b.rhs_at_tol;
                         return a.rhs_solved < b.rhs_solved;
                     });

    std::ostringstream report;
    report << "algo,m0,nc,s,converged,iters,rhs_solved,final_residual,oracle_max_err\n";
    for (const auto& res : results) {
        report << res.algo << "," << res.m0 << "," << res.nc << "," << res.s << ","
               << (res.converged ? 1 : 0) << "," << res.iters << "," << res.rhs_solved << ","
               << fmt17(res.final_residual) << "," << fmt17(res.oracle_max_err) << "\n";
    }
    std::string report_path = (fs::path(out_dir) / "report.csv").string();
    write_file_atomic(report_path, report.str());
    std::cout << report.str();
    std::cout << "wrote " << report_path << "\n";

    for (const auto& res : results)
        if (res.failed) return kExitFailure;
    return kExitConverged;
}

// ---------------------------------------------------------------- filter

struct FilterOptions {
    std::vector<double> interval{-1.0, 1.0};
    int nc = 8;
    std::vector<double> sweep{-3.0, 3.0};
    int points = 1201;
    std::string out;
    std::string sidecar;
    int m0 = 0;
};

int run_filter(const FilterOptions& opt) {
    SearchInterval interval(opt.interval[0], opt.interval[1]);
    ContourRule rule = build_contour_rule(interval, opt.nc);
    auto sweep = filter_sweep(rule, opt.sweep[0], opt.sweep[1], opt.points);
    std::ostringstream os;
    write_filter_sweep_csv(os, sweep);
    write_file_atomic(opt.out, os.str());
    std::cout << "wrote " << opt.out << " (" << sweep.size() << " samples)\n";

    if (!opt.sidecar.empty() && opt.m0 > 0) {
        std::vector<double> truth = read_sidecar(opt.sidecar);
        if (opt.m0 >= static_cast<int>(truth.size()))
            throw std::invalid_argument("filter: m0 must be smaller than the spectrum size");
        std::vector<double> rho(truth.size());
        for (std::size_t i = 0; i < truth.size(); ++i) rho[i] = filter_value(rule, truth[i]);
        std::vector<double> sorted = rho;
        std::sort(sorted.begin(), sorted.end(), std::greater<double>());
        std::cout << "rho(lambda_{m0+1}) = " << fmt17(sorted[opt.m0]) << " (m0 = " << opt.m0
                  << ")\n";
        std::cout << "predicted_rate     = " << fmt17(sorted[opt.m0] / sorted[opt.m0 - 1])
                  << "\n";
    }
    return kExitConverged;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"FEAST/XFEAST/RFEAST interior eigensolver laboratory"};
    app.require_subcommand(1);

    GenOptions gen;
    auto* cmd_gen = app.add_subcommand("gen", "Generate a synthetic test matrix");
    cmd_gen->add_option("--kind", gen.kind, "sparse | dense | clustered | uniform")
        ->required()
        ->check(CLI::IsMember({"sparse", "dense", "clustered", "uniform"}));
    cmd_gen->add_option("--n", gen.n, "matrix dimension");
    cmd_gen->add_option("--m-inside", gen.m_inside, "eigenvalues inside the interval");
    cmd_gen->add_option("--interval", gen.interval, "inside interval lo hi")->expected(2);
    cmd_gen->add_option("--outer", gen.outer, "outside interval lo hi")->expected(2);
    cmd_gen->add_option("--clusters", gen.clusters, "cluster count (clustered kind)");
    cmd_gen->add_option("--cluster-width", gen.cluster_width, "cluster width");
    cmd_gen->add_option("--seed", gen.seed, "RNG seed");
    cmd_gen->add_option("--out", gen.out, "output Matrix Market path")->required();
    cmd_gen->add_option("--format", gen.format, "coordinate | array")
        ->check(CLI::IsMember({"coordinate", "array"}));

    SolveOptions solve;
    auto* cmd_solve = app.add_subcommand("solve", "Run one solver on a matrix");
    cmd_solve->add_option("--algo", solve.algo, "feast | xfeast | rfeast")
        ->required()
        ->check(CLI::IsMember({"feast", "xfeast", "rfeast"}));
    cmd_solve->add_option("--matrix", solve.matrix, "Matrix Market file")->required();
    cmd_solve->add_option("--interval", solve.interval, "search interval lo hi")
        ->expected(2)
        ->required();
    cmd_solve->add_option("--m0", solve.config.m0, "subspace size")->required();
    cmd_solve->add_option("--nc", solve.config.n_c, "quadrature points");
    cmd_solve->add_option("--s", solve.config.s, "expansion depth");
    cmd_solve->add_option("--tol", solve.config.tol, "residual tolerance");
    cmd_solve->add_option("--max-iter", solve.config.max_iter, "iteration limit");
    cmd_solve->add_option("--seed", solve.config.seed, "initial guess seed");
    cmd_solve->add_option("--orthogonalizer", solve.orthogonalizer, "svd | qr")
        ->check(CLI::IsMember({"svd", "qr"}));
    cmd_solve->add_flag("--cache-factorizations", solve.config.cache_factorizations,
                        "reuse per-node factorizations across iterations");
    cmd_solve->add_option("--trace", solve.trace_path, "trace CSV output path");
    cmd_solve->add_option("--sidecar", solve.sidecar, "ground-truth eigenvalue file");

    std::string compare_config, compare_out;
    auto* cmd_compare = app.add_subcommand("compare", "Run a grid of solver cells");
    cmd_compare->add_option("--config", compare_config, "JSON experiment config")->required();
    cmd_compare->add_option("--out", compare_out, "output directory (overrides config)");

    FilterOptions filter;
    auto* cmd_filter = app.add_subcommand("filter", "Emit a rational filter sweep");
    cmd_filter->add_option("--interval", filter.interval, "search interval lo hi")
        ->expected(2)
        ->required();
    cmd_filter->add_option("--nc", filter.nc, "quadrature points");
    cmd_filter->add_option("--sweep", filter.sweep, "sweep range lo hi")->expected(2);
    cmd_filter->add_option("--points", filter.points, "sample count");
    cmd_filter->add_option("--out", filter.out, "CSV output path")->required();
    cmd_filter->add_option("--sidecar", filter.sidecar, "ground-truth eigenvalue file");
    cmd_filter->add_option("--m0", filter.m0, "annotate rho(lambda_{m0+1})");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        if (cmd_gen->parsed()) return run_gen(gen);
        if (cmd_solve->parsed()) return run_solve(solve);
        if (cmd_compare->parsed()) return run_compare(compare_config, compare_out);
        if (cmd_filter->parsed()) return run_filter(filter);
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitUsage;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitFailure;
    }
    return kExitUsage;
}
