// Pipeline orchestration: build -> prolong -> draw -> solve -> linearize ->
// pin tests, with machine- and human-readable reports.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mdpin/linalg.hpp"

namespace mdpin {

struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};
struct SolveFailure : std::runtime_error {
    explicit SolveFailure(const std::string& what) : std::runtime_error(what) {}
};
struct InternalInconsistency : std::runtime_error {
    explicit InternalInconsistency(const std::string& what)
        : std::runtime_error(what) {}
};

std::vector<JetVar> default_test_columns();  // the 7 spinor components at 0

struct RunConfig {
    std::uint64_t seed = 1;
    int max_order = 5;
    Rational e2 = default_coupling();
    std::vector<JetVar> test_columns = default_test_columns();
    RankMode rank_mode = RankMode::Both;
    ColumnPolicy column_policy = ColumnPolicy::Occurring;
    int retries = 3;

    std::string dump_system_path;  // empty = no dump
    std::string dump_point_path;
    std::string dump_matrix_path;  // writes PATH and PATH.cols
};

struct RunReport {
    RunConfig config;

    std::size_t system_equations = 0;
    std::size_t dependent_variables = 0;
    std::size_t prolonged_equations = 0;

    std::uint64_t seed_used = 0;
    std::vector<std::uint64_t> failed_seeds;
    std::size_t initial_jets = 0;
    std::size_t solved_jets = 0;
    std::size_t free_completed_jets = 0;
    std::size_t solve_rounds = 0;
    std::size_t residual_nonzero = 0;

    int matrix_rows = 0;
    int matrix_cols = 0;
    std::size_t matrix_nnz = 0;

    std::vector<std::uint64_t> rank_primes_used;
    bool rank_escalated = false;
    int rank_full = 0;

    std::vector<PinVerdict> pin_tests;
    bool all_pinned = false;

    std::vector<std::pair<std::string, double>> timings;  // stage, seconds

    // Deterministic for a fixed config apart from the "timings" object.
    std::string to_json(bool include_timings = true) const;
    std::string to_text() const;
};

RunReport run_pipeline(const RunConfig& cfg);

// Helpers shared with the CLI.
std::string format_columns(const std::vector<JetVar>& columns);
std::vector<JetVar> parse_columns(const std::string& spec);  // "var@i,i,i,i,..."

}  // namespace mdpin
