// Sparse exact-rational matrices, the linearization of the used system with
// respect to spinor jet variations, and exact rank / column-pinning tests
// (modular with certification, or fully fraction-free over the integers).
#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "mdpin/cauchy.hpp"

namespace mdpin {

class SparseRatMatrix {
  public:
    using Row = std::vector<std::pair<int, Rational>>;  // sorted by column

    SparseRatMatrix(int n_rows, int n_cols);
    static SparseRatMatrix from_dense(
        const std::vector<std::vector<Rational>>& dense);

    int n_rows() const { return static_cast<int>(rows_.size()); }
    int n_cols() const { return n_cols_; }
    std::size_t nnz() const;
    const Row& row(int i) const { return rows_[i]; }

    // Accumulates into (r, c); zeros are dropped on finalize().
    void add(int r, int c, const Rational& v);
    void finalize();

    const std::vector<JetVar>& column_jets() const { return column_jets_; }
    void set_column_jets(std::vector<JetVar> jets);
    int column_of(const JetVar& v) const;  // -1 when absent

    SparseRatMatrix without_column(int col) const;

  private:
    int n_cols_;
    std::vector<Row> rows_;
    std::vector<JetVar> column_jets_;  // empty unless set
};

enum class ColumnPolicy { Occurring, AllJets };

// One row per equation; entry (e, v) is the partial derivative of the
// equation with respect to the spinor jet v, evaluated at the background
// point. Potential jets contribute no columns. Under Occurring the column
// set is the spinor jets appearing in at least one equation; under AllJets
// it is every spinor jet of order <= max_order.
SparseRatMatrix build_linearization(const std::vector<ProlongedEquation>& eqs,
                                    const JetPoint& pt, ColumnPolicy policy,
                                    int max_order);

enum class RankMode { Modular, Exact, Both };

struct RankOptions {
    RankMode mode = RankMode::Both;
    int prime_count = 3;
    std::uint64_t prime_seed = 0;
};

struct RankResult {
    int rank = 0;
    std::vector<std::uint64_t> primes;  // empty in exact mode
    bool escalated = false;  // primes disagreed; exact value returned
};

RankResult rank_of(const SparseRatMatrix& m, const RankOptions& opts = {});

// Direct engines (the modular path clears denominators row-wise first;
// disagreeing primes are reported through RankResult by rank_of).
int rank_exact(const SparseRatMatrix& m);
int rank_modular_prime(const SparseRatMatrix& m, std::uint64_t prime);

// Deterministic stream of distinct 62-bit primes for a given seed.
std::vector<std::uint64_t> rank_primes(std::uint64_t seed, int count);

struct PinVerdict {
    JetVar column;
    int rank_full = 0;
    int rank_deleted = 0;
    bool pinned = false;  // rank_full == rank_deleted + 1
};

PinVerdict pin_test(const SparseRatMatrix& m, const JetVar& column,
                    const RankOptions& opts = {});
// Same, reusing an already computed full rank.
PinVerdict pin_test_with_full(const SparseRatMatrix& m, int rank_full,
                              const JetVar& column,
                              const RankOptions& opts = {});

// Exact right-kernel basis via rational reduction; intended for small
// matrices (the oracle side of the pin test). Each basis vector is
// normalized so its free coordinate equals 1.
std::vector<std::vector<Rational>> nullspace_small(const SparseRatMatrix& m);

// Triplet text format: "rows cols", lines "i j p/q" (1-based), then "0 0 0".
void export_matrix(std::ostream& os, const SparseRatMatrix& m);
// Sidecar: "j var (i0,i1,i2,i3)" per column, 1-based.
void export_column_map(std::ostream& os, const SparseRatMatrix& m);

}  // namespace mdpin
