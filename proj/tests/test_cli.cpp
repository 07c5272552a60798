#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <vector>

#include "covrt/cli.hpp"
#include "covrt/csv_io.hpp"
#include "covrt/model_io.hpp"

using namespace covrt;

namespace {

int run(const std::vector<std::string>& args) {
    std::vector<const char*> argv = {"covrt"};
    for (const std::string& a : args) argv.push_back(a.c_str());
    return cli_main(static_cast<int>(argv.size()), argv.data());
}

std::string tmp(const std::string& name) {
    return (std::filesystem::temp_directory_path() / name).string();
}

std::string slurp(const std::string& path) {
    std::ifstream file(path);
    std::stringstream ss;
    ss << file.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("cli: simulate, train, evaluate, predict, prune pipeline") {
    const std::string data_csv = tmp("cli_data.csv");
    const std::string valid_csv = tmp("cli_valid.csv");
    const std::string model_json = tmp("cli_model.json");
    const std::string pruned_json = tmp("cli_pruned.json");
    const std::string pred_csv = tmp("cli_pred.csv");

    CHECK(run({"simulate", "--dgp", "model1", "--n", "200", "--seed", "3",
               "--out", data_csv}) == 0);
    CHECK(run({"simulate", "--dgp", "model1", "--n", "120", "--seed", "4",
               "--out", valid_csv}) == 0);

    CHECK(run({"train", "--data", data_csv, "--target", "y", "--criterion",
               "covrt", "--max-depth", "3", "--out", model_json}) == 0);
    const Tree tree = load_model(model_json);
    CHECK(tree.max_depth == 3);
    CHECK(tree.criterion == CriterionKind::covrt);

    CHECK(run({"evaluate", "--model", model_json, "--data", data_csv,
               "--target", "y"}) == 0);

    CHECK(run({"predict", "--model", model_json, "--data", data_csv, "--out",
               pred_csv}) == 0);
    const std::string predictions = slurp(pred_csv);
    CHECK(predictions.rfind("prediction\n", 0) == 0);
    CHECK(std::count(predictions.begin(), predictions.end(), '\n') == 201);

    CHECK(run({"train", "--data", data_csv, "--target", "y", "--full", "--out",
               model_json}) == 0);
    CHECK(run({"prune", "--model", model_json, "--data", data_csv, "--target",
               "y", "--leaves", "4", "--out", pruned_json}) == 0);
    CHECK(load_model(pruned_json).leaf_count() <= 4);
    CHECK(run({"prune", "--model", model_json, "--data", data_csv, "--target",
               "y", "--validation", valid_csv, "--out", pruned_json}) == 0);

    for (const std::string& path :
         {data_csv, valid_csv, model_json, pruned_json, pred_csv})
        std::remove(path.c_str());
}

TEST_CASE("cli: exit codes") {
    SUBCASE("usage errors exit 1") {
        CHECK(run({}) == 1);
        CHECK(run({"no-such-command"}) == 1);
        CHECK(run({"train", "--data", "x.csv"}) == 1);  // missing required flags
    }
    SUBCASE("data errors exit 2") {
        const std::string model_json = tmp("cli_missing_model.json");
        CHECK(run({"simulate", "--dgp", "unknown_dgp", "--n", "5", "--out",
                   tmp("cli_x.csv")}) == 2);
        CHECK(run({"train", "--data", "/nonexistent.csv", "--target", "y",
                   "--max-depth", "1", "--out", model_json}) == 2);
    }
    SUBCASE("verification checks exit 0 when clean") {
        const std::string report_csv = tmp("cli_prop1.csv");
        CHECK(run({"verify", "prop1", "--reps", "25", "--seed", "5", "--out",
                   report_csv}) == 0);
        const std::string text = slurp(report_csv);
        CHECK(text.rfind("check,instance,lhs,rhs,margin,pass\n", 0) == 0);
        CHECK(std::count(text.begin(), text.end(), '\n') == 26);
        std::remove(report_csv.c_str());
    }
}

TEST_CASE("cli: experiment subcommand writes a report") {
    const std::string report_csv = tmp("cli_fig_accuracy.csv");
    CHECK(run({"experiment", "fig-accuracy", "--reps", "5", "--seed", "2",
               "--threads", "2", "--out", report_csv}) == 0);
    const std::string text = slurp(report_csv);
    CHECK(text.rfind("experiment,model/dataset,", 0) == 0);

    // same invocation reproduces the same bytes
    const std::string report2_csv = tmp("cli_fig_accuracy2.csv");
    CHECK(run({"experiment", "fig-accuracy", "--reps", "5", "--seed", "2",
               "--threads", "1", "--out", report2_csv}) == 0);
    CHECK(slurp(report2_csv) == text);
    std::remove(report_csv.c_str());
    std::remove(report2_csv.c_str());
}

TEST_CASE("cli: table2 demands the dataset files") {
    CHECK(run({"experiment", "table2", "--out", tmp("cli_t2.csv"), "--boston",
               "/missing/boston.csv", "--airfoil", "/missing/airfoil.csv",
               "--abalone", "/missing/abalone.csv"}) == 2);
}

TEST_CASE("cli: verify rejects unknown checks") {
    CHECK(run({"verify", "spectral-radius"}) == 1);
}
