#include "covrt/cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#include "covrt/csv_io.hpp"
#include "covrt/dataset_split.hpp"
#include "covrt/evaluate.hpp"
#include "covrt/experiments.hpp"
#include "covrt/grow.hpp"
#include "covrt/model_io.hpp"
#include "covrt/prune.hpp"
#include "covrt/simgen.hpp"
#include "covrt/theory.hpp"

namespace covrt {

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitVerification = 3;

struct CliOptions {
    // shared
    std::string data_path;
    std::string target = "y";
    std::string model_path;
    std::string out;
    std::uint64_t seed = 1;
    long reps = 0;  // 0 = subcommand default
    int threads = 0;

    // train / prune
    std::string criterion = "covrt";
    int max_depth = -1;
    bool full = false;
    int min_node_size = 5;
    int leaves = 0;
    std::string validation_path;

    // simulate
    std::string dgp;
    long n = 1000;
    std::vector<std::string> params;

    // table2
    std::string boston;
    std::string airfoil;
    std::string abalone;
};

std::map<std::string, double> parse_params(const std::vector<std::string>& params) {
    std::map<std::string, double> out;
    for (const std::string& item : params) {
        const std::size_t eq = item.find('=');
        if (eq == std::string::npos)
            throw CLI::ValidationError("--param", "expected name=value: " + item);
        try {
            out[item.substr(0, eq)] = std::stod(item.substr(eq + 1));
        } catch (const std::exception&) {
            throw CLI::ValidationError("--param", "bad numeric value in " + item);
        }
    }
    return out;
}

int emit_check_report(const CheckReport& report, const std::string& out) {
    if (out.empty()) {
        write_check_csv(report, std::cout);
    } else {
        std::ofstream file(out);
        if (!file) throw DataError("cannot write " + out);
        write_check_csv(report, file);
    }
    const int violations = report.violations();
    std::cerr << report.rows.size() << " checks, " << violations
              << " violations\n";
    return violations == 0 ? kExitOk : kExitVerification;
}

int run_train(const CliOptions& opt) {
    const Dataset data = load_csv(opt.data_path, opt.target);
    const CriterionKind criterion = criterion_from_string(opt.criterion);
    Tree tree;
    if (opt.full) {
        tree = grow_full(data, criterion, opt.min_node_size, opt.seed);
    } else {
        if (opt.max_depth < 0)
            throw CLI::ValidationError("--max-depth",
                                       "required unless --full is given");
        GrowConfig config;
        config.criterion = criterion;
        config.max_depth = opt.max_depth;
        config.min_node_size = opt.min_node_size;
        config.seed = opt.seed;
        tree = grow(data, config);
    }
    save_model(tree, opt.out);
    std::cerr << "trained " << to_string(criterion) << " tree: "
              << tree.leaf_count() << " leaves, training risk "
              << format_double(leaf_weighted_risk(tree)) << "\n";
    return kExitOk;
}

int run_predict(const CliOptions& opt) {
    const Tree tree = load_model(opt.model_path);
    const CsvTable table = read_csv_table(opt.data_path);
    const Eigen::MatrixXd x = extract_features(table, tree.column_names);
    std::ofstream file(opt.out);
    if (!file) throw DataError("cannot write " + opt.out);
    file << "prediction\n";
    for (Eigen::Index i = 0; i < x.rows(); ++i)
        file << format_double(predict(tree, x.row(i).transpose())) << '\n';
    return kExitOk;
}

int run_evaluate(const CliOptions& opt) {
    const Tree tree = load_model(opt.model_path);
    const Dataset data = load_csv(opt.data_path, opt.target);
    if (data.n_cols() != tree.n_features())
        throw DataError("dataset has " + std::to_string(data.n_cols()) +
                        " features, model expects " +
                        std::to_string(tree.n_features()));
    const double risk = empirical_l2_risk(tree, data);
    std::string r2 = "nan";
    try {
        r2 = format_double(r_squared(tree, data));
    } catch (const std::invalid_argument&) {
        // constant response leaves R^2 undefined
    }
    std::ostringstream line;
    line << "l2_risk,r_squared,n\n"
         << format_double(risk) << ',' << r2 << ',' << data.n_rows() << '\n';
    if (opt.out.empty()) {
        std::cout << line.str();
    } else {
        std::ofstream file(opt.out);
        if (!file) throw DataError("cannot write " + opt.out);
        file << line.str();
    }
    return kExitOk;
}

int run_prune(const CliOptions& opt) {
    const Tree tree = load_model(opt.model_path);
    const Dataset data = load_csv(opt.data_path, opt.target);
    if (tree.root().n != data.n_rows())
        throw DataError("pruning data does not match the training data "
                        "(row count differs from the model's root count)");
    Tree pruned;
    if (!opt.validation_path.empty()) {
        const Dataset validation = load_csv(opt.validation_path, opt.target);
        const AlphaSelection selection = select_alpha(tree, data, validation);
        std::cerr << "selected alpha " << format_double(selection.alpha) << ", "
                  << selection.pruned.leaf_count() << " leaves, validation risk "
                  << format_double(selection.validation_risk) << "\n";
        pruned = selection.pruned;
    } else if (opt.leaves >= 1) {
        pruned = prune_to_leaves(tree, data, opt.leaves);
    } else {
        throw CLI::ValidationError("prune", "need --leaves or --validation");
    }
    save_model(pruned, opt.out);
    return kExitOk;
}

int run_simulate(const CliOptions& opt) {
    DgpSpec spec;
    spec.name = opt.dgp;
    spec.parameters = parse_params(opt.params);
    spec.n = opt.n;
    spec.seed = opt.seed;
    const auto [data, g] = generate(spec);
    write_dataset_csv(data, opt.out);
    return kExitOk;
}

}  // namespace

int cli_main(int argc, const char* const* argv) {
    CLI::App app{"regression trees with a covariance-driven splitting criterion"};
    app.require_subcommand(1);
    CliOptions opt;

    const auto add_seed = [&](CLI::App* cmd) {
        cmd->add_option("--seed", opt.seed, "base RNG seed");
    };
    const auto add_threads = [&](CLI::App* cmd) {
        cmd->add_option("--threads", opt.threads,
                        "worker threads (0 = hardware concurrency)");
    };

    CLI::App* train = app.add_subcommand("train", "fit a tree on a CSV dataset");
    train->add_option("--data", opt.data_path, "training CSV")->required();
    train->add_option("--target", opt.target, "response column name")->required();
    train->add_option("--criterion", opt.criterion, "covrt | cart | random");
    train->add_option("--max-depth", opt.max_depth, "maximum depth K");
    train->add_flag("--full", opt.full, "grow until the stopping rules fire");
    train->add_option("--min-node-size", opt.min_node_size,
                      "do not split nodes at or below this size");
    train->add_option("--out", opt.out, "model file to write")->required();
    add_seed(train);

    CLI::App* predict_cmd = app.add_subcommand("predict", "predict with a model");
    predict_cmd->add_option("--model", opt.model_path)->required();
    predict_cmd->add_option("--data", opt.data_path, "CSV with the model's columns")
        ->required();
    predict_cmd->add_option("--out", opt.out, "prediction CSV to write")->required();

    CLI::App* evaluate_cmd =
        app.add_subcommand("evaluate", "L2 risk and R^2 of a model on a CSV");
    evaluate_cmd->add_option("--model", opt.model_path)->required();
    evaluate_cmd->add_option("--data", opt.data_path)->required();
    evaluate_cmd->add_option("--target", opt.target)->required();
    evaluate_cmd->add_option("--out", opt.out, "write the result CSV here");

    CLI::App* prune_cmd = app.add_subcommand(
        "prune", "weakest-link pruning to a leaf count or by validation risk");
    prune_cmd->add_option("--model", opt.model_path)->required();
    prune_cmd->add_option("--data", opt.data_path, "training CSV")->required();
    prune_cmd->add_option("--target", opt.target)->required();
    prune_cmd->add_option("--leaves", opt.leaves, "target leaf count");
    prune_cmd->add_option("--validation", opt.validation_path,
                          "validation CSV for alpha selection");
    prune_cmd->add_option("--out", opt.out, "model file to write")->required();

    CLI::App* simulate = app.add_subcommand("simulate", "sample a named DGP");
    simulate->add_option("--dgp", opt.dgp,
                         "model1|model2|model3|model4|overfit5|simple_linear|cubic1d")
        ->required();
    simulate->add_option("--n", opt.n, "sample size")->required();
    simulate->add_option("--param", opt.params,
                         "DGP parameter name=value (repeatable)");
    simulate->add_option("--out", opt.out, "CSV to write")->required();
    add_seed(simulate);

    CLI::App* experiment = app.add_subcommand("experiment", "paper-scale studies");
    experiment->require_subcommand(1);
    CLI::App* fig_overfit = experiment->add_subcommand(
        "fig-overfit", "train/test risk against the pruned leaf count");
    CLI::App* fig_density =
        experiment->add_subcommand("fig-density", "depth-1 split-point samples");
    CLI::App* fig_accuracy = experiment->add_subcommand(
        "fig-accuracy", "signal-covariate identification accuracy");
    CLI::App* table1 =
        experiment->add_subcommand("table1", "simulation risk benchmark");
    CLI::App* table2 =
        experiment->add_subcommand("table2", "real-data benchmark (local CSVs)");
    for (CLI::App* cmd : {fig_overfit, fig_density, fig_accuracy, table1, table2}) {
        cmd->add_option("--out", opt.out, "report CSV to write")->required();
        cmd->add_option("--reps", opt.reps, "replications (default per experiment)");
        add_seed(cmd);
        add_threads(cmd);
    }
    table2->add_option("--boston", opt.boston, "Boston Housing CSV")->required();
    table2->add_option("--airfoil", opt.airfoil, "Airfoil Self-Noise CSV")->required();
    table2->add_option("--abalone", opt.abalone, "Abalone CSV")->required();

    CLI::App* verify = app.add_subcommand("verify", "executable theory checks");
    verify->require_subcommand(1);
    CLI::App* v_prop1 = verify->add_subcommand("prop1", "inner-product identity");
    CLI::App* v_ig = verify->add_subcommand("ig-identity", "gain identity");
    CLI::App* v_lemma1 = verify->add_subcommand("lemma1", "excess-risk lower bound");
    CLI::App* v_thm3 = verify->add_subcommand("thm3", "empirical risk bound");
    CLI::App* v_thm1 = verify->add_subcommand("thm1", "linear-model closed form");
    CLI::App* v_thm2 = verify->add_subcommand("thm2", "split-point convergence");
    for (CLI::App* cmd : {v_prop1, v_ig, v_lemma1, v_thm3, v_thm1, v_thm2}) {
        cmd->add_option("--out", opt.out, "report CSV (default: stdout)");
        cmd->add_option("--reps", opt.reps, "fuzz nodes / seeds / replications");
        add_seed(cmd);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*train) return run_train(opt);
        if (*predict_cmd) return run_predict(opt);
        if (*evaluate_cmd) return run_evaluate(opt);
        if (*prune_cmd) return run_prune(opt);
        if (*simulate) return run_simulate(opt);
        if (*experiment) {
            ExperimentReport report;
            if (*fig_overfit) {
                FigOverfitConfig config;
                config.seed = opt.seed;
                config.threads = opt.threads;
                if (opt.reps > 0) config.reps = opt.reps;
                report = run_fig_overfit(config);
            } else if (*fig_density) {
                FigDensityConfig config;
                config.seed = opt.seed;
                config.threads = opt.threads;
                if (opt.reps > 0) config.reps = opt.reps;
                report = run_fig_density(config);
            } else if (*fig_accuracy) {
                FigAccuracyConfig config;
                config.seed = opt.seed;
                config.threads = opt.threads;
                if (opt.reps > 0) config.reps = opt.reps;
                report = run_fig_accuracy(config);
            } else if (*table1) {
                Table1Config config;
                config.seed = opt.seed;
                config.threads = opt.threads;
                if (opt.reps > 0) config.reps = opt.reps;
                report = run_table1(config);
            } else {
                Table2Config config;
                config.seed = opt.seed;
                config.threads = opt.threads;
                if (opt.reps > 0) config.partitions = opt.reps;
                config.paths = {opt.boston, opt.airfoil, opt.abalone};
                config.targets = {"medv", "pressure", "rings"};
                report = run_table2(config);
            }
            write_report_csv(report, opt.out);
            std::cerr << "wrote " << report.rows.size() << " raw rows to "
                      << opt.out << "\n";
            return kExitOk;
        }
        if (*verify) {
            const std::uint64_t seed = opt.seed;
            CheckReport report;
            if (*v_prop1) {
                report = verify_prop1(opt.reps > 0 ? static_cast<int>(opt.reps) : 1000, seed);
            } else if (*v_ig) {
                report = verify_ig_identity(opt.reps > 0 ? static_cast<int>(opt.reps) : 1000, seed);
            } else if (*v_lemma1) {
                report = verify_lemma1(opt.reps > 0 ? static_cast<int>(opt.reps) : 100, 6, 300, seed);
            } else if (*v_thm3) {
                report = verify_thm3(opt.reps > 0 ? static_cast<int>(opt.reps) : 100, 6, 300, seed);
            } else if (*v_thm1) {
                report = check_thm1(1.0, 100000, seed);
            } else {
                report = check_thm2_convergence(
                    1.0, {100, 1000, 10000},
                    opt.reps > 0 ? static_cast<int>(opt.reps) : 201, seed, 1.0);
            }
            return emit_check_report(report, opt.out);
        }
    } catch (const DataError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitData;
    } catch (const CLI::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}

}  // namespace covrt
