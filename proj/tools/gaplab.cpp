#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "gaplab/error.hpp"
#include "gaplab/runner.hpp"

namespace {

using namespace gaplab;

struct Output {
    std::string out_dir;
    bool quiet = false;

    void write(const std::string& name, const std::string& text) const {
        if (out_dir.empty()) return;
        std::filesystem::create_directories(out_dir);
        const auto path = std::filesystem::path(out_dir) / name;
        std::ofstream f(path);
        if (!f) throw ConfigError("cannot write " + path.string());
        f << text << '\n';
    }

    void print(const std::string& text) const {
        if (!quiet) std::cout << text << '\n';
    }
};

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::vector<double> parse_values(const std::string& list) {
    std::vector<double> values;
    std::stringstream ss(list);
    for (std::string item; std::getline(ss, item, ',');) {
        const auto first = item.find_first_not_of(" \t");
        if (first == std::string::npos) continue;
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(item.substr(first), &used);
        } catch (const std::exception&) {
            throw ConfigError("sweep value '" + item + "' is not a number");
        }
        if (item.find_first_not_of(" \t", first + used) != std::string::npos) {
            throw ConfigError("sweep value '" + item + "' is not a number");
        }
        values.push_back(v);
    }
    return values;
}

int cmd_run(const std::string& path, const Output& out) {
    const RunReport report = run(load_config(path));
    const std::string json = to_json(report);
    out.write("report.json", json);
    out.write("report.csv", csv_header() + "\n" + csv_row("0", report));
    if (out.out_dir.empty()) {
        out.print(json);
    } else {
        out.print("status " + to_string(report.status) + ", gap " + fmt(report.gap.gap));
    }
    return exit_code(report);
}

int cmd_sweep(const std::string& path, const std::string& axis, const std::string& list, const Output& out) {
    const RunConfig base = load_config(path);
    const auto rows = sweep(base, axis, parse_values(list));
    std::string csv = csv_header();
    int code = 0;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto id = std::to_string(i);
        if (rows[i].report) {
            csv += "\n" + csv_row(id, *rows[i].report);
            if (exit_code(*rows[i].report) != 0 && code == 0) code = 1;
        } else {
            csv += "\n" + csv_error_row(id, base, rows[i].error);
            std::cerr << "sweep row " << id << " (" << axis << " = " << fmt(rows[i].value) << "): "
                      << rows[i].error_type << ": " << rows[i].error << '\n';
            code = 2;
        }
    }
    out.write("report.json", to_json(rows, axis));
    out.write("report.csv", csv);
    out.print(csv);
    return code;
}

int cmd_converge(const std::string& path, int steps, const Output& out) {
    const ConvergenceTable table = converge(load_config(path), steps);
    std::string csv = "level,h,lambda1,lambda2,error1,error2,identity_residual,quotient_residual,boundary_derivative";
    for (std::size_t k = 0; k < table.levels.size(); ++k) {
        const auto& l = table.levels[k];
        csv += "\n" + std::to_string(k);
        for (double v : {l.h, l.lambda1, l.lambda2, l.error1, l.error2, l.identity_residual, l.quotient_residual, l.boundary_derivative}) {
            csv += "," + fmt(v);
        }
    }
    const std::string json = to_json(table);
    out.write("report.json", json);
    out.write("report.csv", csv);
    out.print(out.out_dir.empty() ? json : csv);
    return 0;
}

int cmd_oracle(const std::string& path, const Output& out) {
    const OracleComparison c = oracle(load_config(path));
    std::string csv = "dofs,lambda1,lambda2,oracle1,oracle2,deviation1,deviation2,status\n" + std::to_string(c.dofs);
    for (double v : {c.lambda1, c.lambda2, c.oracle1, c.oracle2, c.deviation1, c.deviation2}) csv += "," + fmt(v);
    csv += c.agree ? ",PASS" : ",FAIL";
    const std::string json = to_json(c);
    out.write("report.json", json);
    out.write("report.csv", csv);
    out.print(json);
    return c.agree ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Fundamental gap experiments for -Laplacian + V on convex domains"};
    app.require_subcommand(1);
    Output out;
    std::string config;
    std::string axis;
    std::string values;
    int steps = 0;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("config", config, "JSON run configuration")->required();
        sub->add_option("--out", out.out_dir, "Directory for report.json and report.csv");
        sub->add_flag("--quiet", out.quiet, "Suppress standard output");
    };
    auto* run_cmd = app.add_subcommand("run", "Solve one configuration and evaluate every check");
    add_common(run_cmd);
    auto* sweep_cmd = app.add_subcommand("sweep", "One run per value of a numeric parameter");
    add_common(sweep_cmd);
    sweep_cmd->add_option("--axis", axis, "c, d, or a dotted config path such as potential.a2")->required();
    sweep_cmd->add_option("--values", values, "Comma-separated values")->required();
    auto* converge_cmd = app.add_subcommand("converge", "Grid refinement study halving h per level");
    add_common(converge_cmd);
    converge_cmd->add_option("--steps", steps, "Number of grid levels (at least 2)")->required();
    auto* oracle_cmd = app.add_subcommand("oracle", "Compare the iterative solver with the dense oracle");
    add_common(oracle_cmd);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (run_cmd->parsed()) return cmd_run(config, out);
        if (sweep_cmd->parsed()) return cmd_sweep(config, axis, values, out);
        if (converge_cmd->parsed()) return cmd_converge(config, steps, out);
        return cmd_oracle(config, out);
    } catch (const std::exception& e) {
        const std::string type = error_type(e);
        std::cerr << "gaplab: " << type << ": " << e.what() << '\n';
        try {
            out.write("report.json", error_json(type, e.what()));
        } catch (const std::exception&) {
        }
        return 2;
    }
}
