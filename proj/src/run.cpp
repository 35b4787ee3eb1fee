#include "steadytime/run.hpp"

#include <algorithm>
#include <fstream>

#include "steadytime/csv.hpp"

namespace steadytime {

namespace {

std::vector<int> int_list(const nlohmann::json& j, const char* key) {
    std::vector<int> out;
    for (const auto& v : j.at(key)) {
        if (!v.is_number_integer()) throw ConfigError(std::string(key) + ": expected integers");
        out.push_back(v.get<int>());
    }
    return out;
}

} // namespace

RunConfig run_config_from_json(const nlohmann::json& j,
                               const std::filesystem::path& base_dir) {
    RunConfig cfg;
    if (j.contains("D") && j.contains("domain")) {
        // a bare ProblemSpec doubles as a one-problem config with defaults
        CaseInput input{j.value("name", std::string("problem_0")),
                        problem_from_json<Rational>(j)};
        cfg.problems.push_back(std::move(input));
        cfg.methods = {1, 2, 3};
        cfg.k_list = {1, 2, 5, 10};
        cfg.delta_list = {1e-1, 1e-2, 1e-3, 1e-4, 1e-5, 1e-6};
        return cfg;
    }
    if (!j.contains("problems") || !j.at("problems").is_array() || j.at("problems").empty())
        throw ConfigError("config: 'problems' must be a nonempty array");
    for (const auto& p : j.at("problems")) {
        CaseInput input;
        input.name = p.value("name", std::string());
        if (p.contains("spec")) {
            input.spec = problem_from_json<Rational>(p.at("spec"));
        } else if (p.contains("path")) {
            auto path = base_dir / p.at("path").get<std::string>();
            std::ifstream in(path);
            if (!in) throw ConfigError("config: missing problem file " + path.string());
            nlohmann::json pj = nlohmann::json::parse(in, nullptr, false);
            if (pj.is_discarded())
                throw ConfigError("config: invalid JSON in " + path.string());
            if (input.name.empty()) input.name = pj.value("name", path.stem().string());
            input.spec = problem_from_json<Rational>(pj);
        } else {
            throw ConfigError("config: each problem needs 'spec' or 'path'");
        }
        if (input.name.empty())
            input.name = "problem_" + std::to_string(cfg.problems.size());
        cfg.problems.push_back(std::move(input));
    }

    if (!j.contains("methods")) throw ConfigError("config: 'methods' is required");
    cfg.methods = int_list(j, "methods");
    if (cfg.methods.empty()) throw ConfigError("config: 'methods' must be nonempty");
    for (int m : cfg.methods)
        if (m < 1 || m > 3) throw ConfigError("config: methods must be in {1, 2, 3}");

    bool wants_m3 = std::find(cfg.methods.begin(), cfg.methods.end(), 3) != cfg.methods.end();
    if (j.contains("k_list")) cfg.k_list = int_list(j, "k_list");
    if (j.contains("delta_list"))
        for (const auto& v : j.at("delta_list")) cfg.delta_list.push_back(v.get<double>());
    if (wants_m3 && (cfg.k_list.empty() || cfg.delta_list.empty()))
        throw ConfigError("config: method 3 requires nonempty k_list and delta_list");
    for (int k : cfg.k_list)
        if (k < 1 || k > 20) throw ConfigError("config: k_list entries must be in [1, 20]");
    for (double d : cfg.delta_list)
        if (!(d > 0.0 && d < 1.0))
            throw ConfigError("config: delta_list entries must be in (0, 1)");

    std::string arithmetic = j.value("arithmetic", std::string("exact"));
    if (arithmetic == "exact") cfg.exact = true;
    else if (arithmetic == "float") cfg.exact = false;
    else throw ConfigError("config: arithmetic must be 'exact' or 'float'");

    cfg.terms = j.value("terms", 50);
    if (cfg.terms < 1) throw ConfigError("config: terms must be >= 1");
    if (j.contains("samples_per_interval")) {
        cfg.sup.samples_per_interval = j.at("samples_per_interval").get<int>();
        if (cfg.sup.samples_per_interval < 8)
            throw ConfigError("config: samples_per_interval must be >= 8");
    }
    return cfg;
}

RunConfig load_run_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config " + path.string());
    nlohmann::json j = nlohmann::json::parse(in, nullptr, false);
    if (j.is_discarded()) throw ConfigError("invalid JSON in " + path.string());
    return run_config_from_json(j, path.parent_path());
}

std::string error_code(const std::exception& e) {
    if (dynamic_cast<const ExcludedPoint*>(&e)) return "ExcludedPoint";
    if (dynamic_cast<const DegenerateMoments*>(&e)) return "DegenerateMoments";
    if (dynamic_cast<const NumericalInconsistency*>(&e)) return "NumericalInconsistency";
    if (dynamic_cast<const EigenBracketError*>(&e)) return "EigenBracketError";
    if (dynamic_cast<const RootBracketError*>(&e)) return "RootBracketError";
    if (dynamic_cast<const SingularSystem*>(&e)) return "SingularSystem";
    if (dynamic_cast<const NoSteadyState*>(&e)) return "NoSteadyState";
    if (dynamic_cast<const NothingToDo*>(&e)) return "NothingToDo";
    if (dynamic_cast<const InconsistentConstraint*>(&e)) return "InconsistentConstraint";
    if (dynamic_cast<const PrecisionError*>(&e)) return "PrecisionError";
    if (dynamic_cast<const ConfigError*>(&e)) return "ConfigError";
    if (dynamic_cast<const DomainError*>(&e)) return "DomainError";
    return "Error";
}

namespace {

std::string cell_label(const ReportCell& c) {
    std::string s = c.problem + " method=" + std::to_string(c.method);
    if (c.method == 3)
        s += " k=" + std::to_string(c.k) + " delta=" + csv::fmt_compact(c.delta);
    return s;
}

void report_csv(std::ostream& os, const std::vector<ReportCell>& cells) {
    csv::write_row(os, {"problem", "method", "k", "delta", "t_hat", "argmax_x", "exact_t",
                        "rel_err", "epsilon", "status"});
    for (const auto& c : cells) {
        std::vector<std::string> row;
        row.push_back(c.problem);
        row.push_back(std::to_string(c.method));
        row.push_back(c.method == 3 ? std::to_string(c.k) : "");
        row.push_back(c.method == 3 ? csv::fmt_compact(c.delta) : "");
        if (!c.ok) {
            row.insert(row.end(), {c.err, "", "", "", "", c.err});
        } else {
            row.push_back(csv::fmt_full(c.t_hat));
            row.push_back(csv::fmt_full(c.argmax_x));
            row.push_back(c.exact_t ? csv::fmt_full(*c.exact_t) : "");
            row.push_back(c.rel_err ? csv::fmt_sci(*c.rel_err) : "");
            row.push_back(csv::fmt_sci(c.epsilon));
            row.push_back("ok");
        }
        csv::write_row(os, row);
    }
}

nlohmann::json audit_json(const RunConfig& cfg, const std::vector<ReportCell>& cells) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& c : cells) {
        nlohmann::json entry;
        entry["cell"] = {{"problem", c.problem}, {"method", c.method}};
        if (c.method == 3) {
            entry["cell"]["k"] = c.k;
            entry["cell"]["delta"] = c.delta;
        }
        entry["module"] = "estimators";
        entry["operation"] = c.method == 1   ? "mat"
                             : c.method == 2 ? "mat_sd"
                                             : "t3_local";
        entry["parameters"] = {{"terms", cfg.terms},
                               {"samples_per_interval", cfg.sup.samples_per_interval},
                               {"arithmetic", cfg.exact ? "exact" : "float"}};
        entry["reference"] = {{"module", "reference"},
                              {"operations", {"exact_global", "epsilon_error"}}};
        entry["status"] = c.ok ? "ok" : c.err;
        arr.push_back(std::move(entry));
    }
    return arr;
}

} // namespace

RunResult run(const RunConfig& config, const RunOutputs& outputs) {
    RunResult result;

    std::vector<std::optional<CaseContext>> contexts;
    std::vector<std::string> context_err(config.problems.size());
    contexts.reserve(config.problems.size());
    for (std::size_t pi = 0; pi < config.problems.size(); ++pi) {
        int q = 2;
        for (int k : config.k_list) q = std::max(q, k);
        if (outputs.profile) q = std::max(q, outputs.profile_k);
        if (outputs.table2) q = std::max(q, 5);
        if (outputs.table3)
            q = std::max(q, *std::max_element(table3_ks.begin(), table3_ks.end()));
        try {
            contexts.push_back(
                make_context(config.problems[pi], config.terms, q, config.exact));
        } catch (const std::exception& e) {
            contexts.push_back(std::nullopt);
            context_err[pi] = "ERR:" + error_code(e);
        }
    }

    // enumerate cells in deterministic order
    std::vector<std::size_t> cell_problem;  // index into contexts per cell
    for (std::size_t pi = 0; pi < config.problems.size(); ++pi)
        for (int m : config.methods) {
            if (m != 3) {
                ReportCell c;
                c.problem = config.problems[pi].name;
                c.method = m;
                result.cells.push_back(c);
                cell_problem.push_back(pi);
            } else {
                for (int k : config.k_list)
                    for (double d : config.delta_list) {
                        ReportCell c;
                        c.problem = config.problems[pi].name;
                        c.method = 3;
                        c.k = k;
                        c.delta = d;
                        result.cells.push_back(c);
                        cell_problem.push_back(pi);
                    }
            }
        }

    parallel_for(int(result.cells.size()), [&](int i) {
        auto& c = result.cells[std::size_t(i)];
        std::size_t pi = cell_problem[std::size_t(i)];
        if (!contexts[pi]) {
            c.ok = false;
            c.err = context_err[pi];
            return;
        }
        const auto& cc = *contexts[pi];
        try {
            auto method = static_cast<Method>(c.method);
            auto g = global_sup(cc.ms, cc.region, method, c.k, c.delta, config.sup);
            c.t_hat = g.t_hat;
            c.argmax_x = g.argmax_x;
            if (c.method == 3) {
                double exact = exact_global(cc.ee, c.delta, cc.region, config.sup).t_hat;
                c.exact_t = exact;
                c.rel_err = std::fabs(exact - c.t_hat) / std::fabs(exact);
            }
            c.epsilon = epsilon_error(cc.ee, c.t_hat, cc.region, config.sup);
            c.ok = true;
        } catch (const std::exception& e) {
            c.ok = false;
            c.err = "ERR:" + error_code(e);
        }
    });

    std::filesystem::create_directories(outputs.out_dir);
    auto emit = [&](const std::string& name, auto&& writer) {
        auto path = outputs.out_dir / name;
        std::ofstream os(path, std::ios::binary);
        if (!os) throw ConfigError("run: cannot write " + path.string());
        writer(os);
        result.files.push_back(path.string());
    };

    std::vector<CaseContext> live;
    for (const auto& cc : contexts)
        if (cc) live.push_back(*cc);

    emit("report.csv", [&](std::ostream& os) { report_csv(os, result.cells); });
    if (outputs.table2)
        emit("table2.csv", [&](std::ostream& os) { table2_csv(os, table2_rows(live)); });
    if (outputs.table3)
        emit("table3.csv", [&](std::ostream& os) { table3_csv(os, table3_blocks(live)); });
    if (outputs.profile)
        for (const auto& cc : live)
            emit("profile_" + cc.input.name + ".csv", [&](std::ostream& os) {
                profile_csv(os, profile_points(cc, outputs.profile_k,
                                               outputs.profile_delta));
            });
    if (outputs.audit)
        emit("audit.json", [&](std::ostream& os) {
            os << audit_json(config, result.cells).dump(2) << "\n";
        });

    for (const auto& c : result.cells)
        if (!c.ok) result.failures.push_back(cell_label(c) + ": " + c.err);
    result.exit_code = result.failures.empty() ? 0 : 3;
    return result;
}

} // namespace steadytime
