#include "mdpin/pipeline.hpp"

#include <chrono>
#include <fstream>
#include <future>
#include <sstream>

#include <json.hpp>

namespace mdpin {

namespace {

using json = nlohmann::ordered_json;

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
        .count();
}

std::string rank_mode_name(RankMode m) {
    switch (m) {
        case RankMode::Modular: return "modular";
        case RankMode::Exact: return "exact";
        case RankMode::Both: return "both";
    }
    return "?";
}

std::string policy_name(ColumnPolicy p) {
    return p == ColumnPolicy::Occurring ? "occurring" : "all-jets";
}

void write_file(const std::string& path, const std::string& contents) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot write " + path);
    os << contents;
}

std::string complex_entry_text(const ComplexRational& c) {
    if (c.im == 0) return to_string(c.re);
    return to_string(c.re) + (c.im > 0 ? "+" : "") + to_string(c.im) + "i";
}

std::string render_system_dump(const SystemSpec& sys) {
    std::ostringstream os;
    const GammaOracle o = build_gamma_oracle();
    for (int mu = 0; mu < 4; ++mu) {
        os << "gamma^" << mu << ":\n";
        for (int i = 0; i < 4; ++i) {
            os << " ";
            for (int j = 0; j < 4; ++j)
                os << ' ' << complex_entry_text(o.gamma[mu][i][j]);
            os << '\n';
        }
    }
    for (int mu = 0; mu < 4; ++mu)
        os << "current_" << mu << " = " << to_text(o.current[mu]) << '\n';
    os << "e2 = " << to_string(sys.e2) << '\n';
    for (const auto& eq : sys.equations)
        os << eq.name << " = " << to_text(eq.poly) << '\n';
    return os.str();
}

}  // namespace

std::vector<JetVar> default_test_columns() {
    return {
        jet(DepVar::Psi1r, 0, 0, 0, 0), jet(DepVar::Psi2r, 0, 0, 0, 0),
        jet(DepVar::Psi2i, 0, 0, 0, 0), jet(DepVar::Psi3r, 0, 0, 0, 0),
        jet(DepVar::Psi3i, 0, 0, 0, 0), jet(DepVar::Psi4r, 0, 0, 0, 0),
        jet(DepVar::Psi4i, 0, 0, 0, 0),
    };
}

std::string format_columns(const std::vector<JetVar>& columns) {
    std::string out;
    for (const auto& v : columns) {
        if (!out.empty()) out += ",";
        out += to_at_string(v);
    }
    return out;
}

std::vector<JetVar> parse_columns(const std::string& spec) {
    // Comma-separated "var@i0,i1,i2,i3" items; the component commas are
    // consumed greedily, so items can be joined with plain commas.
    std::vector<JetVar> out;
    std::size_t pos = 0;
    while (pos < spec.size()) {
        const auto at = spec.find('@', pos);
        if (at == std::string::npos)
            throw ConfigError("malformed column list near '" + spec.substr(pos) +
                              "'");
        std::size_t end = at + 1;
        int commas = 0;
        while (end < spec.size() && commas < 4) {
            if (spec[end] == ',') {
                ++commas;
                if (commas == 4) break;
            }
            ++end;
        }
        const std::string item = spec.substr(pos, end - pos);
        const auto v = jetvar_from_at_string(item);
        if (!v) throw ConfigError("malformed column '" + item + "'");
        out.push_back(*v);
        pos = end == spec.size() ? end : end + 1;
    }
    if (out.empty()) throw ConfigError("empty column list");
    return out;
}

RunReport run_pipeline(const RunConfig& cfg) {
    if (cfg.max_order < 2) throw ConfigError("max_order must be at least 2");
    if (cfg.max_order > 12)
        throw ConfigError("max_order above 12 is not supported");
    if (cfg.retries < 0) throw ConfigError("retries must be nonnegative");
    if (cfg.e2 == 0) throw ConfigError("e2 must be nonzero");
    if (cfg.test_columns.empty()) throw ConfigError("no test columns given");
    for (const auto& v : cfg.test_columns) {
        if (!is_spinor(v.var))
            throw ConfigError("test column " + to_at_string(v) +
                              " is not a spinor jet");
        if (v.order() > cfg.max_order)
            throw ConfigError("test column " + to_at_string(v) +
                              " exceeds max_order");
    }

    RunReport report;
    report.config = cfg;
    const auto stage_start = std::chrono::steady_clock::now();
    auto t = stage_start;
    const auto lap = [&](const char* stage) {
        report.timings.push_back({stage, seconds_since(t)});
        t = std::chrono::steady_clock::now();
    };

    const SystemSpec sys = build_system(cfg.e2);
    const auto construction = verify_construction(sys);
    if (!construction.all_pass()) {
        std::string bad;
        for (const auto& c : construction.checks)
            if (!c.pass) bad += " " + c.name;
        throw InternalInconsistency("construction checks failed:" + bad);
    }
    report.system_equations = sys.equations.size();
    report.dependent_variables = kDepVarCount;
    if (!cfg.dump_system_path.empty())
        write_file(cfg.dump_system_path, render_system_dump(sys));
    lap("build");

    const auto eqs = enumerate_used_system(sys, cfg.max_order);
    report.prolonged_equations = eqs.size();
    lap("prolong");

    JetPoint pt;
    SolveLog solve_log;
    bool solved = false;
    for (int attempt = 0; attempt <= cfg.retries; ++attempt) {
        const std::uint64_t seed = cfg.seed + static_cast<std::uint64_t>(attempt);
        try {
            solve_log = SolveLog{};
            pt = saturate_solve(eqs,
                                draw_initial_data({seed}, cfg.max_order),
                                &solve_log);
            report.seed_used = seed;
            solved = true;
            break;
        } catch (const StuckSolve&) {
            report.failed_seeds.push_back(seed);
        }
    }
    if (!solved) {
        std::string seeds;
        for (auto s : report.failed_seeds) seeds += " " + std::to_string(s);
        throw SolveFailure("background solve stuck after retries; seeds:" +
                           seeds);
    }
    report.initial_jets = pt.initial_count();
    report.solved_jets = pt.solved_count();
    report.free_completed_jets = solve_log.free_completed_total;
    report.solve_rounds = solve_log.rounds.size();

    const auto residuals = residual_check(eqs, pt);
    report.residual_nonzero = residuals.nonzero;
    if (residuals.nonzero != 0)
        throw InternalInconsistency(
            "background point leaves " + std::to_string(residuals.nonzero) +
            " nonzero residuals (worst " + residuals.worst->first + ")");
    if (!cfg.dump_point_path.empty()) {
        std::ostringstream os;
        dump_point(os, pt);
        write_file(cfg.dump_point_path, os.str());
    }
    lap("solve");

    const SparseRatMatrix matrix =
        build_linearization(eqs, pt, cfg.column_policy, cfg.max_order);
    report.matrix_rows = matrix.n_rows();
    report.matrix_cols = matrix.n_cols();
    report.matrix_nnz = matrix.nnz();
    if (!cfg.dump_matrix_path.empty()) {
        std::ostringstream os;
        export_matrix(os, matrix);
        write_file(cfg.dump_matrix_path, os.str());
        std::ostringstream cs;
        export_column_map(cs, matrix);
        write_file(cfg.dump_matrix_path + ".cols", cs.str());
    }
    lap("linearize");

    // Primes are derived from the run seed so reruns are reproducible.
    RankOptions rank_opts;
    rank_opts.mode = cfg.rank_mode;
    rank_opts.prime_seed = cfg.seed;

    const RankResult full = rank_of(matrix, rank_opts);
    report.rank_full = full.rank;
    report.rank_primes_used = full.primes;
    report.rank_escalated = full.escalated;

    // Deleted-column ranks are independent; run them concurrently.
    std::vector<std::future<PinVerdict>> futures;
    for (const auto& column : cfg.test_columns)
        futures.push_back(std::async(std::launch::async, [&, column] {
            return pin_test_with_full(matrix, full.rank, column, rank_opts);
        }));
    report.all_pinned = true;
    for (auto& f : futures) {
        report.pin_tests.push_back(f.get());
        if (!report.pin_tests.back().pinned) report.all_pinned = false;
    }
    lap("rank");
    report.timings.push_back({"total", seconds_since(stage_start)});
    return report;
}

std::string RunReport::to_json(bool include_timings) const {
    json j;
    j["tool"] = "mdpin";
    json jc;
    jc["seed"] = config.seed;
    jc["max_order"] = config.max_order;
    jc["e2"] = to_string(config.e2);
    jc["rank_mode"] = rank_mode_name(config.rank_mode);
    jc["column_policy"] = policy_name(config.column_policy);
    jc["retries"] = config.retries;
    json cols = json::array();
    for (const auto& v : config.test_columns) cols.push_back(to_at_string(v));
    jc["test_columns"] = cols;
    j["config"] = jc;

    j["system"] = {{"equations", system_equations},
                   {"dependent_variables", dependent_variables}};
    j["prolonged"] = {{"equations", prolonged_equations},
                      {"max_order", config.max_order}};

    json bg;
    bg["seed_used"] = seed_used;
    bg["failed_seeds"] = failed_seeds;
    bg["initial_jets"] = initial_jets;
    bg["solved_jets"] = solved_jets;
    bg["free_completed_jets"] = free_completed_jets;
    bg["rounds"] = solve_rounds;
    bg["residual_nonzero"] = residual_nonzero;
    j["background"] = bg;

    j["linearization"] = {{"rows", matrix_rows},
                          {"cols", matrix_cols},
                          {"nnz", matrix_nnz}};

    json jr;
    jr["mode"] = rank_mode_name(config.rank_mode);
    json primes = json::array();
    for (auto p : rank_primes_used) primes.push_back(std::to_string(p));
    jr["primes"] = primes;
    jr["escalated"] = rank_escalated;
    jr["rank_full"] = rank_full;
    j["rank"] = jr;

    json pins = json::array();
    for (const auto& p : pin_tests)
        pins.push_back({{"column", to_at_string(p.column)},
                        {"rank_full", p.rank_full},
                        {"rank_deleted", p.rank_deleted},
                        {"pinned", p.pinned}});
    j["pin_tests"] = pins;
    j["all_pinned"] = all_pinned;

    if (include_timings) {
        json jt;
        for (const auto& [stage, secs] : timings) jt[stage] = secs;
        j["timings"] = jt;
    }
    return j.dump(2) + "\n";
}

std::string RunReport::to_text() const {
    std::ostringstream os;
    os << "maxwell-dirac pinning run\n";
    os << "  seed=" << config.seed << " max_order=" << config.max_order
       << " e2=" << to_string(config.e2)
       << " rank_mode=" << rank_mode_name(config.rank_mode)
       << " column_policy=" << policy_name(config.column_policy) << "\n";
    os << "  equations: " << system_equations << " base, "
       << prolonged_equations << " prolonged\n";
    os << "  background: seed_used=" << seed_used
       << " initial=" << initial_jets << " solved=" << solved_jets
       << " free_completed=" << free_completed_jets
       << " rounds=" << solve_rounds << " nonzero_residuals="
       << residual_nonzero << "\n";
    os << "  matrix: " << matrix_rows << " x " << matrix_cols
       << " (nnz " << matrix_nnz << ")\n";
    os << "  rank_full=" << rank_full << "\n";
    for (const auto& p : pin_tests)
        os << "  column " << to_at_string(p.column) << ": rank_full="
           << p.rank_full << " rank_deleted=" << p.rank_deleted
           << " pinned=" << (p.pinned ? "yes" : "no") << "\n";
    os << "  all_pinned=" << (all_pinned ? "yes" : "no") << "\n";
    return os.str();
}

}  // namespace mdpin
