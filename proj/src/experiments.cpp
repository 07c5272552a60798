#include "covrt/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <limits>
#include <map>
#include <mutex>
#include <thread>
#include <tuple>

#include "covrt/csv_io.hpp"
#include "covrt/dataset_split.hpp"
#include "covrt/evaluate.hpp"
#include "covrt/grow.hpp"
#include "covrt/model_io.hpp"
#include "covrt/prune.hpp"
#include "covrt/rng.hpp"
#include "covrt/simgen.hpp"

namespace covrt {

namespace {

auto row_key(const ReportRow& row) {
    return std::tie(row.experiment, row.model_or_dataset, row.method,
                    row.depth_or_leaves, row.metric, row.replication);
}

int resolve_threads(int requested) {
    if (requested > 0) return requested;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

}  // namespace

void sort_rows(std::vector<ReportRow>& rows) {
    std::sort(rows.begin(), rows.end(), [](const ReportRow& a, const ReportRow& b) {
        return row_key(a) < row_key(b);
    });
}

std::vector<ReportRow> aggregate_rows(const std::vector<ReportRow>& raw,
                                      std::uint64_t base_seed) {
    std::map<std::tuple<std::string, std::string, std::string, int, std::string>,
             std::pair<double, long>>
        groups;
    for (const ReportRow& row : raw) {
        auto& [sum, count] = groups[{row.experiment, row.model_or_dataset,
                                     row.method, row.depth_or_leaves, row.metric}];
        sum += row.value;
        ++count;
    }
    std::vector<ReportRow> out;
    out.reserve(groups.size());
    for (const auto& [key, acc] : groups) {
        ReportRow row;
        std::tie(row.experiment, row.model_or_dataset, row.method,
                 row.depth_or_leaves, row.metric) = key;
        row.value = acc.first / static_cast<double>(acc.second);
        row.replication = -1;
        row.seed = base_seed;
        out.push_back(std::move(row));
    }
    return out;
}

void write_report_csv(const ExperimentReport& report, const std::string& path) {
    std::ofstream file(path);
    if (!file) throw DataError("cannot write " + path);
    std::vector<ReportRow> rows = report.rows;
    sort_rows(rows);
    const std::vector<ReportRow> means = aggregate_rows(rows, report.base_seed);
    file << "experiment,model/dataset,method,depth_or_leaves,metric,value,"
            "replication,seed\n";
    const auto emit = [&file](const ReportRow& row) {
        file << row.experiment << ',' << row.model_or_dataset << ',' << row.method
             << ',' << row.depth_or_leaves << ',' << row.metric << ','
             << format_double(row.value) << ',' << row.replication << ','
             << row.seed << '\n';
    };
    for (const ReportRow& row : rows) emit(row);
    for (const ReportRow& row : means) emit(row);
}

double mean_value(const ExperimentReport& report, const std::string& model,
                  const std::string& method, int depth_or_leaves,
                  const std::string& metric) {
    double sum = 0;
    long count = 0;
    for (const ReportRow& row : report.rows) {
        if (row.model_or_dataset == model && row.method == method &&
            row.depth_or_leaves == depth_or_leaves && row.metric == metric) {
            sum += row.value;
            ++count;
        }
    }
    if (count == 0)
        throw std::invalid_argument("mean_value: no rows match " + model + "/" +
                                    method + "/" + metric);
    return sum / static_cast<double>(count);
}

void parallel_for(long total, int threads, const std::function<void(long)>& fn) {
    threads = std::min<long>(resolve_threads(threads), total);
    if (threads <= 1) {
        for (long i = 0; i < total; ++i) fn(i);
        return;
    }
    std::atomic<long> next{0};
    std::vector<std::thread> workers;
    workers.reserve(static_cast<std::size_t>(threads));
    std::atomic<bool> failed{false};
    std::exception_ptr error;
    std::mutex error_mutex;
    for (int t = 0; t < threads; ++t) {
        workers.emplace_back([&] {
            for (;;) {
                const long i = next.fetch_add(1);
                if (i >= total || failed.load()) return;
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_mutex);
                    if (!error) error = std::current_exception();
                    failed.store(true);
                    return;
                }
            }
        });
    }
    for (std::thread& worker : workers) worker.join();
    if (error) std::rethrow_exception(error);
}

// ---- fig-overfit -----------------------------------------------------------

ExperimentReport run_fig_overfit(const FigOverfitConfig& config) {
    ExperimentReport report;
    report.base_seed = config.seed;
    std::vector<std::vector<ReportRow>> slots(static_cast<std::size_t>(config.reps));

    parallel_for(config.reps, config.threads, [&](long rep) {
        const std::uint64_t rep_seed =
            derive_seed(config.seed, static_cast<std::uint64_t>(rep));
        DgpSpec spec;
        spec.name = "overfit5";
        spec.parameters["beta"] = config.beta;
        spec.n = config.n;
        spec.seed = derive_seed(rep_seed, 0);
        const auto [train, g_train] = generate(spec);
        spec.seed = derive_seed(rep_seed, 1);
        const auto [test, g_test] = generate(spec);

        std::vector<ReportRow>& rows = slots[static_cast<std::size_t>(rep)];
        for (CriterionKind criterion : {CriterionKind::covrt, CriterionKind::cart}) {
            const Tree full = grow_full(train, criterion);
            const PruneSequence seq = prune_sequence(full, train);
            const std::string method = to_string(criterion) + "_pruned";
            for (int leaves = 1; leaves <= config.max_leaves; ++leaves) {
                // largest subtree in the sequence with <= `leaves` leaves
                std::size_t steps = 0;
                if (full.leaf_count() > leaves) {
                    while (steps < seq.steps.size() &&
                           seq.steps[steps].leaves_after > leaves)
                        ++steps;
                    ++steps;
                }
                const Tree subtree =
                    subtree_after_steps(full, seq, std::min(steps, seq.steps.size()));
                const double train_risk = empirical_l2_risk(subtree, train);
                const double test_risk = empirical_l2_risk(subtree, test);
                ReportRow row;
                row.experiment = "fig-overfit";
                row.method = method;
                row.depth_or_leaves = leaves;
                row.replication = rep;
                row.seed = rep_seed;
                row.metric = "l2_risk";
                row.model_or_dataset = "overfit5:train";
                row.value = train_risk;
                rows.push_back(row);
                row.model_or_dataset = "overfit5:test";
                row.value = test_risk;
                rows.push_back(row);
                row.model_or_dataset = "overfit5";
                row.metric = "gap";
                row.value = test_risk - train_risk;
                rows.push_back(row);
            }
        }
    });
    for (auto& slot : slots)
        report.rows.insert(report.rows.end(), slot.begin(), slot.end());
    return report;
}

// ---- fig-density -----------------------------------------------------------

ExperimentReport run_fig_density(const FigDensityConfig& config) {
    ExperimentReport report;
    report.base_seed = config.seed;
    const long total = config.reps * static_cast<long>(config.c1_grid.size());
    std::vector<std::vector<ReportRow>> slots(static_cast<std::size_t>(total));

    parallel_for(total, config.threads, [&](long index) {
        const std::size_t scenario =
            static_cast<std::size_t>(index) / static_cast<std::size_t>(config.reps);
        const long rep = index % config.reps;
        const double c1 = config.c1_grid[scenario];
        const std::uint64_t rep_seed = derive_seed(
            derive_seed(config.seed, static_cast<std::uint64_t>(scenario)),
            static_cast<std::uint64_t>(rep));

        DgpSpec spec;
        spec.name = "simple_linear";
        spec.parameters["c0"] = 1.0;
        spec.parameters["c1"] = c1;
        spec.n = config.n;
        spec.seed = derive_seed(rep_seed, 0);
        const auto [data, g] = generate(spec);

        const std::string model = "c1=" + format_double(c1);
        std::vector<ReportRow>& rows = slots[static_cast<std::size_t>(index)];
        for (CriterionKind criterion :
             {CriterionKind::random, CriterionKind::cart, CriterionKind::covrt}) {
            GrowConfig grow_config;
            grow_config.criterion = criterion;
            grow_config.max_depth = 1;
            grow_config.seed = derive_seed(rep_seed, 1);
            const Tree tree = grow(data, grow_config);
            if (tree.root().is_leaf) continue;  // zero-gain stop; no split point
            ReportRow row;
            row.experiment = "fig-density";
            row.model_or_dataset = model;
            row.method = to_string(criterion) + "_fixed_depth";
            row.depth_or_leaves = 1;
            row.metric = "split_point";
            row.value = tree.root().threshold;
            row.replication = rep;
            row.seed = rep_seed;
            rows.push_back(std::move(row));
        }
    });
    for (auto& slot : slots)
        report.rows.insert(report.rows.end(), slot.begin(), slot.end());
    return report;
}

// ---- fig-accuracy ----------------------------------------------------------

ExperimentReport run_fig_accuracy(const FigAccuracyConfig& config) {
    ExperimentReport report;
    report.base_seed = config.seed;
    const long total = config.reps * static_cast<long>(config.c1_grid.size());
    std::vector<std::vector<ReportRow>> slots(static_cast<std::size_t>(total));

    parallel_for(total, config.threads, [&](long index) {
        const std::size_t scenario =
            static_cast<std::size_t>(index) / static_cast<std::size_t>(config.reps);
        const long rep = index % config.reps;
        const double c1 = config.c1_grid[scenario];
        const std::uint64_t rep_seed = derive_seed(
            derive_seed(config.seed, static_cast<std::uint64_t>(scenario)),
            static_cast<std::uint64_t>(rep));

        DgpSpec spec;
        spec.name = "simple_linear";
        spec.parameters["c0"] = 1.0;
        spec.parameters["c1"] = c1;
        spec.parameters["extra_covariates"] = 4.0;
        spec.n = config.n;
        spec.seed = derive_seed(rep_seed, 0);
        const auto [data, g] = generate(spec);

        const std::string model = "c1=" + format_double(c1);
        std::vector<ReportRow>& rows = slots[static_cast<std::size_t>(index)];
        for (CriterionKind criterion :
             {CriterionKind::random, CriterionKind::cart, CriterionKind::covrt}) {
            GrowConfig grow_config;
            grow_config.criterion = criterion;
            grow_config.max_depth = 1;
            grow_config.seed = derive_seed(rep_seed, 1);
            const Tree tree = grow(data, grow_config);
            ReportRow row;
            row.experiment = "fig-accuracy";
            row.model_or_dataset = model;
            row.method = to_string(criterion) + "_fixed_depth";
            row.depth_or_leaves = 1;
            row.metric = "accuracy";
            row.value =
                (!tree.root().is_leaf && tree.root().feature == 0) ? 1.0 : 0.0;
            row.replication = rep;
            row.seed = rep_seed;
            rows.push_back(std::move(row));
        }
    });
    for (auto& slot : slots)
        report.rows.insert(report.rows.end(), slot.begin(), slot.end());
    return report;
}

// ---- table 1 ---------------------------------------------------------------

ExperimentReport run_table1(const Table1Config& config) {
    ExperimentReport report;
    report.base_seed = config.seed;
    const std::vector<std::string> models = {"model1", "model2", "model3", "model4"};
    const long total = config.reps * static_cast<long>(models.size());
    std::vector<std::vector<ReportRow>> slots(static_cast<std::size_t>(total));
    const int max_depth = *std::max_element(config.depths.begin(), config.depths.end());

    parallel_for(total, config.threads, [&](long index) {
        const std::size_t model_index =
            static_cast<std::size_t>(index) / static_cast<std::size_t>(config.reps);
        const long rep = index % config.reps;
        const std::uint64_t rep_seed = derive_seed(
            derive_seed(config.seed, static_cast<std::uint64_t>(model_index)),
            static_cast<std::uint64_t>(rep));

        DgpSpec spec;
        spec.name = models[model_index];
        spec.seed = derive_seed(rep_seed, 0);
        spec.n = config.n_train;
        const auto [train, g1] = generate(spec);
        spec.seed = derive_seed(rep_seed, 1);
        spec.n = config.n_validation;
        const auto [validation, g2] = generate(spec);
        spec.seed = derive_seed(rep_seed, 2);
        spec.n = config.n_test;
        const auto [test, g3] = generate(spec);

        std::vector<ReportRow>& rows = slots[static_cast<std::size_t>(index)];
        ReportRow row;
        row.experiment = "table1";
        row.model_or_dataset = models[model_index];
        row.metric = "l2_risk";
        row.replication = rep;
        row.seed = rep_seed;
        for (CriterionKind criterion : {CriterionKind::covrt, CriterionKind::cart}) {
            GrowConfig grow_config;
            grow_config.criterion = criterion;
            grow_config.max_depth = max_depth;
            const Tree deep = grow(train, grow_config);
            for (int K : config.depths) {
                const Tree tree = truncate_to_depth(deep, K);
                row.method = to_string(criterion) + "_fixed_depth";
                row.depth_or_leaves = K;
                row.value = empirical_l2_risk(tree, test);
                rows.push_back(row);
            }
            const Tree full = grow_full(train, criterion);
            const AlphaSelection selection = select_alpha(full, train, validation);
            row.method = to_string(criterion) + "_pruned";
            row.depth_or_leaves = 0;  // not keyed by depth
            row.value = empirical_l2_risk(selection.pruned, test);
            rows.push_back(row);
        }
    });
    for (auto& slot : slots)
        report.rows.insert(report.rows.end(), slot.begin(), slot.end());
    return report;
}

// ---- table 2 ---------------------------------------------------------------

ExperimentReport run_table2(const Table2Config& config) {
    if (config.paths.size() != config.names.size() ||
        config.targets.size() != config.names.size())
        throw std::invalid_argument("table2: names/paths/targets size mismatch");
    ExperimentReport report;
    report.base_seed = config.seed;

    std::vector<Dataset> datasets;
    datasets.reserve(config.names.size());
    for (std::size_t d = 0; d < config.names.size(); ++d)
        datasets.push_back(load_csv(config.paths[d], config.targets[d]));

    const long total =
        config.partitions * static_cast<long>(config.names.size());
    std::vector<std::vector<ReportRow>> slots(static_cast<std::size_t>(total));
    const int max_depth =
        *std::max_element(config.depth_grid.begin(), config.depth_grid.end());

    parallel_for(total, config.threads, [&](long index) {
        const std::size_t dataset_index =
            static_cast<std::size_t>(index) /
            static_cast<std::size_t>(config.partitions);
        const long partition = index % config.partitions;
        const std::uint64_t rep_seed = derive_seed(
            derive_seed(config.seed, static_cast<std::uint64_t>(dataset_index)),
            static_cast<std::uint64_t>(partition));

        const ThreeWaySplit parts =
            split_dataset(datasets[dataset_index], SplitRatios{2, 1, 1}, rep_seed);

        std::vector<ReportRow>& rows = slots[static_cast<std::size_t>(index)];
        ReportRow row;
        row.experiment = "table2";
        row.model_or_dataset = config.names[dataset_index];
        row.replication = partition;
        row.seed = rep_seed;
        for (CriterionKind criterion : {CriterionKind::covrt, CriterionKind::cart}) {
            GrowConfig grow_config;
            grow_config.criterion = criterion;
            grow_config.max_depth = max_depth;
            const Tree deep = grow(parts.train, grow_config);
            // fixed depth chosen per partition by validation risk
            double best_risk = std::numeric_limits<double>::infinity();
            int best_depth = config.depth_grid.front();
            for (int K : config.depth_grid) {
                const double risk =
                    empirical_l2_risk(truncate_to_depth(deep, K), parts.validation);
                if (risk < best_risk) {
                    best_risk = risk;
                    best_depth = K;
                }
            }
            const Tree fixed = truncate_to_depth(deep, best_depth);
            row.method = to_string(criterion) + "_fixed_depth";
            row.depth_or_leaves = 0;  // K varies per partition; keyed at 0
            row.metric = "l2_risk";
            row.value = empirical_l2_risk(fixed, parts.test);
            rows.push_back(row);
            row.metric = "r2";
            row.value = r_squared(fixed, parts.test);
            rows.push_back(row);

            const Tree full = grow_full(parts.train, criterion);
            const AlphaSelection selection =
                select_alpha(full, parts.train, parts.validation);
            row.method = to_string(criterion) + "_pruned";
            row.depth_or_leaves = 0;
            row.metric = "l2_risk";
            row.value = empirical_l2_risk(selection.pruned, parts.test);
            rows.push_back(row);
            row.metric = "r2";
            row.value = r_squared(selection.pruned, parts.test);
            rows.push_back(row);
        }
    });
    for (auto& slot : slots)
        report.rows.insert(report.rows.end(), slot.begin(), slot.end());
    return report;
}

}  // namespace covrt
