// mdpin: reproduces the rank-based pinning test for the gauge-fixed
// Maxwell-Dirac system. Exit codes: 0 pipeline completed (verdicts are data,
// not errors), 2 configuration error, 3 background solve failure, 4 internal
// inconsistency.
#include <cstdio>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "mdpin/pipeline.hpp"

namespace {

using mdpin::RunConfig;
using mdpin::RunReport;

void write_output(const std::string& out_path, const std::string& contents) {
    if (out_path.empty()) {
        std::cout << contents;
        return;
    }
    std::ofstream os(out_path);
    if (!os) throw std::runtime_error("cannot write " + out_path);
    os << contents;
}

std::string sweep_text(const std::vector<RunReport>& runs) {
    std::string text;
    for (const auto& r : runs) text += r.to_text() + "\n";
    text += "pinning transition\n";
    for (std::size_t c = 0; c < runs.front().pin_tests.size(); ++c) {
        int first = -1;
        for (const auto& r : runs)
            if (r.pin_tests[c].pinned) {
                first = r.config.max_order;
                break;
            }
        text += "  column " + mdpin::to_at_string(runs.front().pin_tests[c].column) +
                ": " +
                (first < 0 ? std::string("not pinned at any swept order")
                           : "first pinned at max_order " + std::to_string(first)) +
                "\n";
    }
    return text;
}

std::string sweep_json(const std::vector<RunReport>& runs) {
    nlohmann::ordered_json j;
    j["experiment"] = "order-sweep";
    j["runs"] = nlohmann::ordered_json::array();
    for (const auto& r : runs)
        j["runs"].push_back(nlohmann::ordered_json::parse(r.to_json()));
    return j.dump(2) + "\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "Exact-arithmetic pinning test for the spinor components of the "
        "gauge-fixed Maxwell-Dirac system"};

    RunConfig cfg;
    std::string e2_text = "221/2410";
    std::string columns_text;
    std::string rank_mode = "both";
    std::string column_policy = "occurring";
    std::string emit = "text";
    std::string out_path;
    std::string experiment;

    app.add_option("--seed", cfg.seed, "Seed for initial data and primes")
        ->capture_default_str();
    app.add_option("--max-order", cfg.max_order,
                   "Highest total derivative order kept (>= 2)")
        ->capture_default_str();
    app.add_option("--e2", e2_text, "Coupling constant as p/q")
        ->capture_default_str();
    app.add_option("--columns", columns_text,
                   "Comma-separated test columns, each var@i0,i1,i2,i3 "
                   "(default: the 7 spinor components at 0,0,0,0)");
    app.add_option("--rank-mode", rank_mode, "modular | exact | both")
        ->capture_default_str();
    app.add_option("--column-policy", column_policy, "occurring | all-jets")
        ->capture_default_str();
    app.add_option("--retries", cfg.retries,
                   "Reseed attempts when the background solve gets stuck")
        ->capture_default_str();
    app.add_option("--dump-system", cfg.dump_system_path,
                   "Write the 12 equations, gamma matrices and currents here");
    app.add_option("--dump-point", cfg.dump_point_path,
                   "Write the completed background point here");
    app.add_option("--dump-matrix", cfg.dump_matrix_path,
                   "Write the linearization in triplet form here (plus .cols)");
    app.add_option("--emit", emit, "Report format: text | json")
        ->capture_default_str();
    app.add_option("--out", out_path, "Write the report here (default stdout)");
    app.add_option("--experiment", experiment,
                   "order-sweep: run max_order 3,4,5 and report the pinning "
                   "transition");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        cfg.e2 = mdpin::parse_rational(e2_text);
        if (!columns_text.empty()) cfg.test_columns = mdpin::parse_columns(columns_text);
        if (rank_mode == "modular")
            cfg.rank_mode = mdpin::RankMode::Modular;
        else if (rank_mode == "exact")
            cfg.rank_mode = mdpin::RankMode::Exact;
        else if (rank_mode == "both")
            cfg.rank_mode = mdpin::RankMode::Both;
        else
            throw mdpin::ConfigError("unknown rank mode '" + rank_mode + "'");
        if (column_policy == "occurring")
            cfg.column_policy = mdpin::ColumnPolicy::Occurring;
        else if (column_policy == "all-jets")
            cfg.column_policy = mdpin::ColumnPolicy::AllJets;
        else
            throw mdpin::ConfigError("unknown column policy '" + column_policy +
                                     "'");
        if (emit != "text" && emit != "json")
            throw mdpin::ConfigError("unknown emit format '" + emit + "'");
        if (!experiment.empty() && experiment != "order-sweep")
            throw mdpin::ConfigError("unknown experiment '" + experiment + "'");

        if (experiment == "order-sweep") {
            std::vector<RunReport> runs;
            for (int order : {3, 4, 5}) {
                RunConfig c = cfg;
                c.max_order = order;
                runs.push_back(mdpin::run_pipeline(c));
            }
            write_output(out_path, emit == "json" ? sweep_json(runs)
                                                  : sweep_text(runs));
        } else {
            const RunReport report = mdpin::run_pipeline(cfg);
            write_output(out_path, emit == "json" ? report.to_json()
                                                  : report.to_text());
        }
        return 0;
    } catch (const std::invalid_argument& e) {
        std::cerr << "mdpin: configuration error: " << e.what() << "\n";
        return 2;
    } catch (const mdpin::ConfigError& e) {
        std::cerr << "mdpin: configuration error: " << e.what() << "\n";
        return 2;
    } catch (const mdpin::SolveFailure& e) {
        std::cerr << "mdpin: solve failure: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "mdpin: internal inconsistency: " << e.what() << "\n";
        return 4;
    }
}
