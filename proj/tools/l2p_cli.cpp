// l2p: solve l_{2,p} pseudo-norm minimizations and run the joint-sparse
// feature-selection pipeline from the command line.
//
// Exit codes: 0 success/converged, 1 usage or input error, 2 non-convergence.

#include <chrono>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "l2p/data_io.hpp"
#include "l2p/feature_selection.hpp"
#include "l2p/regression.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitNoConvergence = 2;

std::string timestamp_now() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
    return buf;
}

std::string default_out_dir() {
    if (const char* env = std::getenv("L2P_OUT_DIR")) return env;
    return "l2p_out";
}

std::string trace_csv(const l2p::SolverTrace& trace) {
    std::ostringstream out;
    out << "k,objective,rho,kkt_residual\n";
    for (const auto& rec : trace.records)
        out << rec.k << ',' << l2p::format_double(rec.objective) << ','
            << l2p::format_double(rec.rho) << ',' << l2p::format_double(rec.kkt_residual)
            << '\n';
    return out.str();
}

void write_manifest(const fs::path& path, const json& manifest) {
    l2p::write_text_atomic(path.string(), manifest.dump(2) + "\n");
}

json load_manifest(const std::string& path, const std::string& expected_command) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open manifest " + path);
    json m = json::parse(in);
    if (m.value("command", "") != expected_command)
        throw std::runtime_error("manifest " + path + " is not a '" + expected_command +
                                 "' manifest");
    return m;
}

struct SolveArgs {
    std::string m_path, b_path, out_dir, manifest_path, timestamp;
    double p = 0.5, tol = 1e-8, epsilon = 1e-12;
    int max_iters = 100;
};

int run_solve(SolveArgs args) {
    if (!args.manifest_path.empty()) {
        const json m = load_manifest(args.manifest_path, "solve");
        args.m_path = m.at("m");
        args.b_path = m.at("b");
        args.p = m.at("p");
        args.tol = m.at("tol");
        args.epsilon = m.at("epsilon");
        args.max_iters = m.at("max_iters");
        args.timestamp = m.at("timestamp");
    } else {
        args.timestamp = timestamp_now();
    }

    const l2p::Exponent p(args.p);
    l2p::ConstrainedProblem problem(l2p::load_matrix_csv(args.m_path),
                                    l2p::load_matrix_csv(args.b_path), p);
    l2p::SolverConfig config;
    config.tol_rho = args.tol;
    config.epsilon = args.epsilon;
    config.max_iters = args.max_iters;
    const l2p::Solution sol = l2p::solve(problem, config);

    const fs::path out(args.out_dir);
    fs::create_directories(out);
    l2p::write_matrix_csv((out / "Y.csv").string(), sol.Y);
    l2p::write_matrix_csv((out / "lambda.csv").string(), sol.lambda);
    l2p::write_text_atomic((out / "trace.csv").string(), trace_csv(*sol.trace));

    json manifest;
    manifest["command"] = "solve";
    manifest["m"] = args.m_path;
    manifest["b"] = args.b_path;
    manifest["p"] = args.p;
    manifest["tol"] = args.tol;
    manifest["epsilon"] = args.epsilon;
    manifest["max_iters"] = args.max_iters;
    manifest["timestamp"] = args.timestamp;
    write_manifest(out / "manifest.json", manifest);

    std::cerr << (sol.converged ? "converged" : "max iterations reached") << " after "
              << sol.iterations << " iterations, objective "
              << l2p::format_double(sol.objective) << "\n";
    return sol.converged ? kExitOk : kExitNoConvergence;
}

struct SelectArgs {
    std::string data_path, label_column = "label", out_dir, manifest_path, timestamp;
    std::vector<double> p_values;
    std::vector<std::size_t> k_values;
    std::vector<Eigen::Index> true_support;
    double gamma = 1.0, tol = 1e-8, epsilon = 1e-12;
    int max_iters = 100;
    unsigned seed = 0;
    bool bias = true;
};

std::string p_tag(double p) {
    std::string tag = l2p::format_double(p);
    for (char& ch : tag)
        if (ch == '.') ch = '_';
    return tag;
}

int run_select(SelectArgs args) {
    if (!args.manifest_path.empty()) {
        const json m = load_manifest(args.manifest_path, "select");
        args.data_path = m.at("data");
        args.label_column = m.at("label_column");
        args.p_values = m.at("p").get<std::vector<double>>();
        args.k_values = m.at("k").get<std::vector<std::size_t>>();
        args.true_support = m.at("true_support").get<std::vector<Eigen::Index>>();
        args.gamma = m.at("gamma");
        args.tol = m.at("tol");
        args.epsilon = m.at("epsilon");
        args.max_iters = m.at("max_iters");
        args.seed = m.at("seed");
        args.bias = m.at("bias");
        args.timestamp = m.at("timestamp");
    } else {
        args.timestamp = timestamp_now();
    }
    if (args.p_values.empty()) args.p_values = {0.25, 0.5, 0.75, 1.0};
    if (args.k_values.empty()) args.k_values = {20, 40, 60, 80};

    l2p::CsvSchema schema;
    schema.label_column = args.label_column;
    const l2p::Dataset raw = l2p::load_csv(args.data_path, schema);
    const l2p::Dataset ds = l2p::standardize(raw);
    auto [A, B] = l2p::to_design_matrices(ds, args.bias);
    const Eigen::Index d = ds.feature_count();

    for (std::size_t k : args.k_values)
        if (k < 1 || k > static_cast<std::size_t>(d))
            throw std::out_of_range("k = " + std::to_string(k) +
                                    " outside [1, " + std::to_string(d) + "]");

    const fs::path out(args.out_dir);
    fs::create_directories(out);
    if (ds.standardization)
        l2p::write_standardization((out / "standardization.txt").string(),
                                   *ds.standardization);

    const std::set<Eigen::Index> support(args.true_support.begin(), args.true_support.end());

    std::ostringstream summary;
    summary << "p,k,score_sum,nonzero_rows"
            << (support.empty() ? "" : ",support_recovery") << '\n';

    bool all_converged = true;
    for (double pv : args.p_values) {
        const l2p::RegressionProblem rp(A, B, args.gamma, l2p::Exponent(pv), args.bias);
        l2p::SolverConfig config;
        config.tol_rho = args.tol;
        config.epsilon = args.epsilon;
        config.max_iters = args.max_iters;
        const l2p::RegressionSolution rs = l2p::solve_regression(rp, config);
        all_converged = all_converged && rs.solver_solution.converged;

        const std::optional<Eigen::Index> bias_row =
            args.bias ? std::optional<Eigen::Index>(d) : std::nullopt;
        const l2p::FeatureRanking ranking = l2p::rank_features(rs.X, bias_row);

        const std::string tag = p_tag(pv);
        l2p::write_text_atomic((out / ("trace_p" + tag + ".csv")).string(),
                               trace_csv(*rs.solver_solution.trace));
        {
            std::ostringstream rank_out;
            rank_out << "feature_index,score\n";
            for (const auto& e : ranking.entries)
                rank_out << e.index << ',' << l2p::format_double(e.score) << '\n';
            l2p::write_text_atomic((out / ("ranking_p" + tag + ".csv")).string(),
                                   rank_out.str());
        }

        const Eigen::VectorXd norms = l2p::row_l2_norms(rs.X);
        Eigen::VectorXd feature_norms =
            args.bias ? Eigen::VectorXd(norms.head(d)) : Eigen::VectorXd(norms);
        const double cutoff = 1e-4 * feature_norms.maxCoeff();
        const auto nonzero_rows = (feature_norms.array() > cutoff).count();

        for (std::size_t k : args.k_values) {
            const auto selected = l2p::select_top_k(ranking, k);
            {
                std::ostringstream sel_out;
                sel_out << "feature_index\n";
                for (Eigen::Index i : selected) sel_out << i << '\n';
                l2p::write_text_atomic(
                    (out / ("topk_p" + tag + "_k" + std::to_string(k) + ".csv")).string(),
                    sel_out.str());
            }
            double score_sum = 0.0;
            for (std::size_t i = 0; i < k; ++i) score_sum += ranking.entries[i].score;
            summary << l2p::format_double(pv) << ',' << k << ','
                    << l2p::format_double(score_sum) << ',' << nonzero_rows;
            if (!support.empty())
                summary << ','
                        << l2p::format_double(l2p::support_recovery_rate(selected, support));
            summary << '\n';
        }
    }
    l2p::write_text_atomic((out / "summary.csv").string(), summary.str());

    json manifest;
    manifest["command"] = "select";
    manifest["data"] = args.data_path;
    manifest["label_column"] = args.label_column;
    manifest["p"] = args.p_values;
    manifest["k"] = args.k_values;
    manifest["true_support"] = args.true_support;
    manifest["gamma"] = args.gamma;
    manifest["tol"] = args.tol;
    manifest["epsilon"] = args.epsilon;
    manifest["max_iters"] = args.max_iters;
    manifest["seed"] = args.seed;
    manifest["bias"] = args.bias;
    manifest["timestamp"] = args.timestamp;
    write_manifest(out / "manifest.json", manifest);

    return all_converged ? kExitOk : kExitNoConvergence;
}

struct TraceMergeArgs {
    std::vector<std::string> trace_files;
    std::vector<double> p_values;
    std::string out_path;
};

int run_trace_plot_data(const TraceMergeArgs& args) {
    if (args.p_values.size() != args.trace_files.size())
        throw std::invalid_argument("need one --p per trace file");

    std::ostringstream out;
    out << "p,k,rho\n";
    for (std::size_t f = 0; f < args.trace_files.size(); ++f) {
        std::ifstream in(args.trace_files[f]);
        if (!in) throw std::runtime_error("cannot open trace " + args.trace_files[f]);
        std::string line;
        if (!std::getline(in, line) || line.rfind("k,objective,rho", 0) != 0)
            throw std::runtime_error("malformed trace header in " + args.trace_files[f]);
        bool any = false;
        std::size_t lineno = 1;
        while (std::getline(in, line)) {
            ++lineno;
            if (line.empty()) continue;
            std::istringstream fields(line);
            std::string k_str, obj_str, rho_str;
            if (!std::getline(fields, k_str, ',') || !std::getline(fields, obj_str, ',') ||
                !std::getline(fields, rho_str, ','))
                throw std::runtime_error("malformed trace row " + std::to_string(lineno) +
                                         " in " + args.trace_files[f]);
            out << l2p::format_double(args.p_values[f]) << ',' << k_str << ',' << rho_str
                << '\n';
            any = true;
        }
        if (!any) throw std::runtime_error("empty trace file " + args.trace_files[f]);
    }
    l2p::write_text_atomic(args.out_path, out.str());
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Joint-sparse l_{2,p} minimization and feature selection"};
    app.require_subcommand(1);

    SolveArgs solve_args;
    solve_args.out_dir = default_out_dir();
    auto* solve_cmd = app.add_subcommand("solve", "Solve min ||Y||_{2,p}^p s.t. MY = B");
    solve_cmd->add_option("--m", solve_args.m_path, "Constraint matrix M (headerless CSV)");
    solve_cmd->add_option("--b", solve_args.b_path, "Right-hand side B (headerless CSV)");
    solve_cmd->add_option("--p", solve_args.p, "Exponent p in (0, 1]");
    solve_cmd->add_option("--tol", solve_args.tol, "Stopping threshold on rho");
    solve_cmd->add_option("--max-iters", solve_args.max_iters, "Iteration cap");
    solve_cmd->add_option("--epsilon", solve_args.epsilon, "Weight smoothing epsilon");
    solve_cmd->add_option("--out-dir", solve_args.out_dir, "Output directory");
    solve_cmd->add_option("--manifest", solve_args.manifest_path,
                          "Rerun from a previous run's manifest");

    SelectArgs select_args;
    select_args.out_dir = default_out_dir();
    auto* select_cmd =
        app.add_subcommand("select", "Feature-selection pipeline over a p grid");
    select_cmd->add_option("--data", select_args.data_path, "Labeled CSV dataset");
    select_cmd->add_option("--label-column", select_args.label_column,
                           "Label column name or index");
    select_cmd->add_option("--p", select_args.p_values,
                           "Exponent grid (repeatable; default 0.25 0.5 0.75 1)");
    select_cmd->add_option("--k", select_args.k_values,
                           "Top-k sizes (repeatable; default 20 40 60 80)");
    select_cmd->add_option("--gamma", select_args.gamma, "Regularization gamma > 0");
    select_cmd->add_option("--tol", select_args.tol, "Stopping threshold on rho");
    select_cmd->add_option("--max-iters", select_args.max_iters, "Iteration cap");
    select_cmd->add_option("--epsilon", select_args.epsilon, "Weight smoothing epsilon");
    select_cmd->add_option("--seed", select_args.seed, "Recorded run seed");
    select_cmd->add_flag("--bias,!--no-bias", select_args.bias,
                         "Append a constant-1 bias feature (default on)");
    select_cmd->add_option("--true-support", select_args.true_support,
                           "Known support indices for recovery scoring (repeatable)");
    select_cmd->add_option("--out-dir", select_args.out_dir, "Output directory");
    select_cmd->add_option("--manifest", select_args.manifest_path,
                           "Rerun from a previous run's manifest");

    TraceMergeArgs trace_args;
    auto* trace_cmd = app.add_subcommand(
        "trace-plot-data", "Merge trace CSVs into long-format (p, k, rho) plot data");
    trace_cmd->add_option("--p", trace_args.p_values, "p value per trace file, in order");
    trace_cmd->add_option("--out", trace_args.out_path, "Merged output CSV")->required();
    trace_cmd->add_option("traces", trace_args.trace_files, "Input trace CSVs")->required();

    try {
        app.parse(argc, argv);
        if (solve_cmd->parsed()) return run_solve(solve_args);
        if (select_cmd->parsed()) return run_select(select_args);
        return run_trace_plot_data(trace_args);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kExitOk : kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
}
