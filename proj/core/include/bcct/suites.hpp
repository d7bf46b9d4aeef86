#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bcct/circle_sets.hpp"
#include "bcct/factors.hpp"

namespace bcct {

struct CheckResult {
    std::string name;
    double value = 0.0;
    double threshold = 0.0;
    std::string relation;  // "<=", ">=", "<", ">", "info"
    bool pass = true;
    bool timing = false;  // wall-clock value, kept out of the verdict files
    std::string note;
};

struct DataTable {
    std::string name;
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
};

struct SuiteReport {
    std::string suite;
    std::vector<CheckResult> checks;
    std::vector<DataTable> tables;
    double seconds = 0.0;

    bool pass() const;
    CheckResult& add(std::string name, double value, std::string relation, double threshold, std::string note = {});
    const CheckResult* find(const std::string& name) const;
};

struct WeightSpec {
    std::vector<double> levels{1.0};
    std::vector<Bump> bumps;
};

struct NamedSet {
    std::string name;
    BeurlingCarlesonSet set;
};

struct SuiteContext {
    BeurlingCarlesonSet set;          // main fixture
    std::vector<NamedSet> sets;       // every set fixture
    WeightSpec weight;                // smooth weight on `set`
    WeightSpec divisor_weight;        // piecewise-constant weight for the divisor pairs
    std::vector<Atom> atoms;          // tagged atoms
    std::vector<cplx> blaschke;
    AnalyticSeries coefficients;      // input of the weights suite
    std::optional<int> log2_size;     // overrides the per-suite grid
    int k_max = 16;
    double tol_scale = 1.0;           // multiplies residual thresholds
    std::uint64_t seed = 1;
    int whitney_trials = 100;
};

// The shipped two-gap configuration, with weights and atoms, built in code.
SuiteContext default_context();

const std::vector<std::string>& suite_names();
int default_grid(const std::string& suite);

SuiteReport run_suite(const std::string& name, const SuiteContext& ctx);

SuiteReport suite_whitney(const SuiteContext& ctx);
SuiteReport suite_cutoff(const SuiteContext& ctx);
SuiteReport suite_outer(const SuiteContext& ctx);
SuiteReport suite_transform(const SuiteContext& ctx);
SuiteReport suite_weights(const SuiteContext& ctx);
SuiteReport suite_annihilator(const SuiteContext& ctx);
SuiteReport suite_permanence(const SuiteContext& ctx);
SuiteReport suite_dbr_psd(const SuiteContext& ctx);

}  // namespace bcct
