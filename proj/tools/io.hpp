#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "bcct/suites.hpp"

namespace bcct::io {

// Fixture files are JSON. Angles are in turns unless "units": "radians".
//   set:     {"gaps": [[a, b], ...], "tail": {"bound": x, "threshold": y}}
//   weight:  {"levels": [...], "bumps": [{"center", "half_width", "amplitude"}]}
//   measure: {"atoms": [{"angle", "mass", "part": "C"|"K"}], "blaschke": [[re, im], ...]}
//   config:  {"set", "sets", "weight", "divisor_weight", "measure", "coefficients"}
// A config entry is either inline or a path relative to the config file.
BeurlingCarlesonSet load_set(const std::filesystem::path& file);
WeightSpec load_weight(const std::filesystem::path& file);
SuiteContext load_config(const std::filesystem::path& file);

// One complex value per line: "re" or "re,im". A header line is skipped.
AnalyticSeries read_coefficients_csv(const std::filesystem::path& file);
void write_csv(const std::filesystem::path& file, const std::vector<std::string>& columns,
               const std::vector<std::vector<double>>& rows);

// %.17g; non-finite values become null
std::string number(double x);
std::string quote(const std::string& s);

// Verdict JSON without wall-clock values, so that runs are reproducible.
std::string verdict_json(const SuiteReport& r);
std::string timing_json(const SuiteReport& r);

// Writes <suite>.json, <suite>.timing.json and one CSV per table.
void write_report(const std::filesystem::path& dir, const SuiteReport& r);

// Reads every verdict file in dir; returns (suite, pass) pairs.
std::vector<std::pair<std::string, bool>> read_verdicts(const std::filesystem::path& dir);

}  // namespace bcct::io
