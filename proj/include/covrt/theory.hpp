#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "covrt/additive.hpp"
#include "covrt/dataset.hpp"
#include "covrt/rng.hpp"
#include "covrt/tree.hpp"

namespace covrt {

// One line of a check report; margin >= 0 means the inequality (or identity
// tolerance) holds for that instance.
struct CheckRow {
    std::string check;
    std::string instance;
    double lhs = 0;
    double rhs = 0;
    double margin = 0;
    bool pass = true;
};

struct CheckReport {
    std::vector<CheckRow> rows;
    int violations() const;
};

// CSV with header: check,instance,lhs,rhs,margin,pass
void write_check_csv(const CheckReport& report, std::ostream& out);

// Closed-form population covariance-squared for a linear component beta * x
// with x uniform on (a, b], split at s: ((s-a)/(b-a) * ... ) evaluated as
// (integral_a^s beta*(x - (a+b)/2) dx / (b-a))^2. Maximized at s = (a+b)/2
// with value beta^2 (b-a)^2 / 64. Throws unless a < s <= b.
double population_cs_linear(double beta, double a, double b, double s);

struct Prop1Result {
    double covariance_squared = 0;
    double inner_product_sq = 0;  // |<y - mean_t, phi_t>_t|^2
    double residual = 0;          // inner_product_sq - covariance_squared
    double parent_risk = 0;
};

// Inner-product identity for the split criterion at (feature, threshold):
// phi_t(x) = n_right/n_t - 1{x_j > s}. Throws if a daughter is empty.
Prop1Result check_prop1(const Dataset& data, const NodeRegion& region,
                        int feature, double threshold);

// Node-wise excess-risk lower bound on the split criterion: for every
// terminal node t of `tree_prefix` (depth K-1) with excess
// e = risk_t(tree) - risk_t(g) > 0, requires max-CS(t) >= e^2 / (4 tv^2).
// Nodes with tv = 0 and positive excess are flagged as degenerate rows.
CheckReport check_lemma1(const Tree& tree_prefix, const Dataset& data,
                         const AdditiveFunction& g);

// Global empirical risk bound at depth K >= 1:
// risk(tree_K) <= risk(g) + tv^2 / (K + 3). Throws for K < 1.
CheckRow check_thm3(const Dataset& data, const AdditiveFunction& g, int K);

// Depth-1 split-point consistency on y = beta * x + noise_sd * N(0,1) with
// x uniform on (0,1]: per sample size, the median |s_hat - 0.5| over `reps`
// fits must be non-increasing and must drop below 0.05 at the largest
// N >= 10^4. beta = 0 violates the unique-maximum assumption; the report
// then carries a single unasserted row.
CheckReport check_thm2_convergence(double beta, const std::vector<long>& sample_sizes,
                                   int reps, std::uint64_t seed,
                                   double noise_sd = 1.0);

// Empirical sanity check of the closed form: depth-1 fit on a noiseless
// linear sample of size n must place its criterion maximum within 5% of
// beta^2/64 and its split within 0.02 of 0.5.
CheckReport check_thm1(double beta, long n, std::uint64_t seed);

// ---- fuzz harnesses (shared by the verify CLI and the acceptance suite) --

// Small random dataset: 2..max_n rows, 1..max_p columns, mixed continuous
// and quantized features (to exercise duplicate values), response scaled so
// the node impurity is bounded away from denormal territory.
Dataset make_fuzz_dataset(Rng& rng, int max_n = 50, int max_p = 5);

// Identity of Prop. 1 on every candidate split of `n_nodes` fuzzed nodes;
// margins are 1e-12-relative slack (scale: parent impurity).
CheckReport verify_prop1(int n_nodes, std::uint64_t seed);

// Gain identity IG = CS / (pl * pr) on every candidate split of `n_nodes`
// fuzzed nodes, same tolerance convention.
CheckReport verify_ig_identity(int n_nodes, std::uint64_t seed);

// Lemma-1 suite over the four simulation models, depths 1..max_k, one row
// per (model, K, seed) summarizing the worst node margin.
CheckReport verify_lemma1(int seeds, int max_k, long n, std::uint64_t seed);

// Theorem-3 suite over the same grid.
CheckReport verify_thm3(int seeds, int max_k, long n, std::uint64_t seed);

}  // namespace covrt
