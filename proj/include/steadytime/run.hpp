#pragma once

#include <filesystem>
#include <optional>

#include "steadytime/tables.hpp"

namespace steadytime {

/// Parsed batch configuration. Problems are kept exact; `exact` chooses
/// the arithmetic of the moment recursion.
struct RunConfig {
    std::vector<CaseInput> problems;
    std::vector<int> methods;      // subset of {1, 2, 3}
    std::vector<int> k_list;       // method 3 moment indices
    std::vector<double> delta_list;
    bool exact = true;
    int terms = 50;
    SupOptions sup;
};

/// Paths in the JSON are resolved relative to base_dir (normally the
/// directory containing the config file). Throws ConfigError on any
/// schema or invariant violation.
RunConfig run_config_from_json(const nlohmann::json& j,
                               const std::filesystem::path& base_dir);
RunConfig load_run_config(const std::filesystem::path& path);

/// Output selection for a run: the full report is always written;
/// table/profile artifacts are opt-in.
struct RunOutputs {
    std::filesystem::path out_dir = ".";
    bool audit = false;
    bool table2 = false;
    bool table3 = false;
    bool profile = false;
    int profile_k = 10;
    double profile_delta = 1e-2;
};

/// One report cell: a (problem, method, k, delta) combination. Methods 1
/// and 2 ignore k/delta. Failed cells carry "ERR:<code>" and the run
/// continues.
struct ReportCell {
    std::string problem;
    int method = 0;
    int k = 0;                     // 0 when not applicable
    double delta = 0.0;            // 0 when not applicable
    bool ok = false;
    std::string err;               // "ERR:<code>" when !ok
    double t_hat = 0.0;
    double argmax_x = 0.0;
    std::optional<double> exact_t; // method 3 only
    std::optional<double> rel_err; // method 3 only
    double epsilon = 0.0;
};

struct RunResult {
    int exit_code = 0;             // 0 ok, 3 when any cell failed
    std::vector<ReportCell> cells;
    std::vector<std::string> files;
    std::vector<std::string> failures;  // human-readable failing cells
};

RunResult run(const RunConfig& config, const RunOutputs& outputs);

/// Short stable identifier of an error for the ERR:<code> cells.
std::string error_code(const std::exception& e);

} // namespace steadytime
