#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "covrt/dataset.hpp"

namespace covrt {

// One result record. Raw rows carry the replication index and its derived
// seed; aggregate rows (mean over replications) use replication = -1 and the
// experiment's base seed, and are appended at emit time.
struct ReportRow {
    std::string experiment;
    std::string model_or_dataset;
    std::string method;  // {covrt,cart,random} x {fixed_depth,pruned}
    int depth_or_leaves = 0;
    std::string metric;  // l2_risk | r2 | accuracy | split_point | gap
    double value = 0;
    long replication = 0;
    std::uint64_t seed = 0;
};

struct ExperimentReport {
    std::vector<ReportRow> rows;  // raw rows only
    std::uint64_t base_seed = 0;
};

// Deterministic emission order, independent of scheduling.
void sort_rows(std::vector<ReportRow>& rows);

// Group means over replications for every (experiment, model, method,
// depth_or_leaves, metric) key, appended with replication = -1.
std::vector<ReportRow> aggregate_rows(const std::vector<ReportRow>& raw,
                                      std::uint64_t base_seed);

// Header: experiment,model/dataset,method,depth_or_leaves,metric,value,
// replication,seed. Raw rows (sorted) followed by aggregate rows.
void write_report_csv(const ExperimentReport& report, const std::string& path);

// Mean of raw rows matching the given key (aggregation helper for tests and
// the acceptance suite).
double mean_value(const ExperimentReport& report, const std::string& model,
                  const std::string& method, int depth_or_leaves,
                  const std::string& metric);

// Runs fn(0..total-1) on `threads` workers; results must be slotted by index.
void parallel_for(long total, int threads, const std::function<void(long)>& fn);

// ---- experiment pipelines -------------------------------------------------

struct FigOverfitConfig {
    long reps = 500;
    std::uint64_t seed = 1;
    int threads = 0;  // 0 = hardware concurrency
    long n = 3000;
    int max_leaves = 20;
    double beta = 1.0;
};

// Heteroskedastic 5-covariate study: full trees pruned to 1..max_leaves
// leaves; emits train/test risk curves (model tags "overfit5:train" and
// "overfit5:test") and the generalization gap per leaf count.
ExperimentReport run_fig_overfit(const FigOverfitConfig& config);

struct FigDensityConfig {
    long reps = 5000;
    std::uint64_t seed = 1;
    int threads = 0;
    long n = 200;
    std::vector<double> c1_grid = {0.0, 0.5, 1.0};
};

// Depth-1 split-point distributions for random/CART/CovRT on the simple
// linear model; emits raw split points (metric "split_point", model "c1=...").
ExperimentReport run_fig_density(const FigDensityConfig& config);

struct FigAccuracyConfig {
    long reps = 5000;
    std::uint64_t seed = 1;
    int threads = 0;
    long n = 200;
    std::vector<double> c1_grid = {0.0, 0.1, 0.2, 0.3, 0.4, 0.5,
                                   0.6, 0.7, 0.8, 0.9, 1.0};
};

// Signal-covariate identification accuracy: indicator rows per replication
// (metric "accuracy", model "c1=...").
ExperimentReport run_fig_accuracy(const FigAccuracyConfig& config);

struct Table1Config {
    long reps = 500;
    std::uint64_t seed = 1;
    int threads = 0;
    long n_train = 300;
    long n_validation = 300;
    long n_test = 1000;
    std::vector<int> depths = {3, 4, 5, 6};
};

// Simulation benchmark: fixed-depth and post-pruned CovRT/CART test risks on
// models 1..4 (metric "l2_risk", model "model1".."model4").
ExperimentReport run_table1(const Table1Config& config);

struct Table2Config {
    long partitions = 100;
    std::uint64_t seed = 1;
    int threads = 0;
    // name -> (csv path, target column); missing files raise DataError with
    // fetch instructions.
    std::vector<std::string> names = {"boston", "airfoil", "abalone"};
    std::vector<std::string> paths;
    std::vector<std::string> targets;
    std::vector<int> depth_grid = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
};

// Real-data benchmark over random 2:1:1 partitions; fixed depth chosen per
// partition by validation risk, pruned variants via alpha selection. Emits
// l2_risk and r2 per (dataset, method).
ExperimentReport run_table2(const Table2Config& config);

}  // namespace covrt
