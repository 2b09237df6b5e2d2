#include "mdpin/linalg.hpp"

#include <algorithm>
#include <map>
#include <ostream>
#include <stdexcept>

namespace mdpin {

SparseRatMatrix::SparseRatMatrix(int n_rows, int n_cols)
    : n_cols_(n_cols), rows_(n_rows) {}

SparseRatMatrix SparseRatMatrix::from_dense(
    const std::vector<std::vector<Rational>>& dense) {
    const int rows = static_cast<int>(dense.size());
    const int cols = rows == 0 ? 0 : static_cast<int>(dense[0].size());
    SparseRatMatrix m(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j)
            if (dense[i][j] != 0) m.rows_[i].push_back({j, dense[i][j]});
    return m;
}

std::size_t SparseRatMatrix::nnz() const {
    std::size_t n = 0;
    for (const auto& r : rows_) n += r.size();
    return n;
}

void SparseRatMatrix::add(int r, int c, const Rational& v) {
    rows_[r].push_back({c, v});
}

void SparseRatMatrix::finalize() {
    for (auto& row : rows_) {
        std::sort(row.begin(), row.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        Row merged;
        for (auto& e : row) {
            if (!merged.empty() && merged.back().first == e.first)
                merged.back().second += e.second;
            else
                merged.push_back(std::move(e));
            if (!merged.empty() && merged.back().second == 0) merged.pop_back();
        }
        row = std::move(merged);
    }
}

void SparseRatMatrix::set_column_jets(std::vector<JetVar> jets) {
    if (static_cast<int>(jets.size()) != n_cols_)
        throw std::invalid_argument("column map size mismatch");
    column_jets_ = std::move(jets);
}

int SparseRatMatrix::column_of(const JetVar& v) const {
    for (int j = 0; j < static_cast<int>(column_jets_.size()); ++j)
        if (column_jets_[j] == v) return j;
    return -1;
}

SparseRatMatrix SparseRatMatrix::without_column(int col) const {
    SparseRatMatrix m(n_rows(), n_cols_ - 1);
    for (int i = 0; i < n_rows(); ++i)
        for (const auto& [c, v] : rows_[i])
            if (c != col) m.rows_[i].push_back({c < col ? c : c - 1, v});
    if (!column_jets_.empty()) {
        std::vector<JetVar> jets = column_jets_;
        jets.erase(jets.begin() + col);
        m.column_jets_ = std::move(jets);
    }
    return m;
}

SparseRatMatrix build_linearization(const std::vector<ProlongedEquation>& eqs,
                                    const JetPoint& pt, ColumnPolicy policy,
                                    int max_order) {
    std::vector<JetVar> cols;
    if (policy == ColumnPolicy::Occurring) {
        for (const auto& eq : eqs)
            for (const auto& v : eq.poly.jet_vars())
                if (is_spinor(v.var)) cols.push_back(v);
        std::sort(cols.begin(), cols.end());
        cols.erase(std::unique(cols.begin(), cols.end()), cols.end());
    } else {
        for (int k = 0; k <= max_order; ++k)
            for (DepVar var : kAllDepVars) {
                if (!is_spinor(var)) continue;
                for (const auto& idx : indices_of_order(k))
                    cols.push_back(JetVar{var, idx});
            }
        std::sort(cols.begin(), cols.end());
    }
    std::unordered_map<JetVar, int, JetVarHash> col_of;
    for (int j = 0; j < static_cast<int>(cols.size()); ++j) col_of[cols[j]] = j;

    SparseRatMatrix m(static_cast<int>(eqs.size()),
                      static_cast<int>(cols.size()));
    const auto& values = pt.values();
    const auto value_of = [&](const JetVar& v) -> const Rational& {
        const auto it = values.find(v);
        if (it == values.end()) throw MissingJetValue(v);
        return it->second;
    };

    // One pass per term: d(c * v1...vk)/d(vi) evaluated at the point is
    // c times the product of the other factors' values.
    for (int e = 0; e < static_cast<int>(eqs.size()); ++e) {
        std::map<int, Rational> entries;
        for (const auto& t : eqs[e].poly.terms()) {
            for (std::size_t i = 0; i < t.mono.size(); ++i) {
                const JetVar& v = t.mono[i];
                if (!is_spinor(v.var)) continue;
                Rational w = t.coeff;
                for (std::size_t k = 0; k < t.mono.size(); ++k)
                    if (k != i) w *= value_of(t.mono[k]);
                if (w == 0) continue;
                Rational& slot = entries[col_of.at(v)];
                slot += w;
            }
        }
        for (const auto& [c, v] : entries)
            if (v != 0) m.add(e, c, v);
    }
    m.finalize();
    m.set_column_jets(std::move(cols));
    return m;
}

namespace {

using IntRow = std::vector<std::pair<int, Integer>>;

// Clears denominators row by row (multiplying a row by a nonzero integer
// does not change the rank).
std::vector<IntRow> integer_rows(const SparseRatMatrix& m) {
    std::vector<IntRow> rows(m.n_rows());
    for (int i = 0; i < m.n_rows(); ++i) {
        Integer l(1);
        for (const auto& [c, v] : m.row(i))
            mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), v.get_den().get_mpz_t());
        for (const auto& [c, v] : m.row(i)) {
            Rational scaled = v * Rational(l);
            rows[i].push_back({c, scaled.get_num()});
        }
    }
    return rows;
}

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
    return static_cast<std::uint64_t>(
        static_cast<unsigned __int128>(a) * b % p);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
    std::uint64_t r = 1;
    while (e) {
        if (e & 1) r = mulmod(r, a, p);
        a = mulmod(a, a, p);
        e >>= 1;
    }
    return r;
}

bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t q : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL,
                            19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        if (n % q == 0) return n == q;
    }
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    // Deterministic Miller-Rabin base set for 64-bit integers.
    for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL,
                            19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        std::uint64_t x = powmod(a % n, d, n);
        if (x == 1 || x == n - 1) continue;
        bool witness = true;
        for (int i = 1; i < s; ++i) {
            x = mulmod(x, x, n);
            if (x == n - 1) {
                witness = false;
                break;
            }
        }
        if (witness) return false;
    }
    return true;
}

int rank_mod_prime_rows(const std::vector<IntRow>& int_rows, int n_cols,
                        std::uint64_t p) {
    const int m = static_cast<int>(int_rows.size());
    std::vector<std::vector<std::uint64_t>> a(
        m, std::vector<std::uint64_t>(n_cols, 0));
    for (int i = 0; i < m; ++i)
        for (const auto& [c, v] : int_rows[i])
            a[i][c] = mpz_fdiv_ui(v.get_mpz_t(), p);

    int rank = 0;
    for (int c = 0; c < n_cols && rank < m; ++c) {
        int pivot = -1;
        for (int i = rank; i < m; ++i)
            if (a[i][c] != 0) {
                pivot = i;
                break;
            }
        if (pivot < 0) continue;
        std::swap(a[rank], a[pivot]);
        const std::uint64_t inv = powmod(a[rank][c], p - 2, p);
        for (int i = rank + 1; i < m; ++i) {
            if (a[i][c] == 0) continue;
            const std::uint64_t f = mulmod(a[i][c], inv, p);
            a[i][c] = 0;
            for (int j = c + 1; j < n_cols; ++j)
                if (a[rank][j] != 0)
                    a[i][j] = (a[i][j] + p - mulmod(f, a[rank][j], p)) % p;
        }
        ++rank;
    }
    return rank;
}

// Sparse fraction-free elimination over the integers with per-row content
// removal; pivots chosen to keep fill and growth down (fewest entries in
// the pivot row, then fewest active rows in the pivot column, then the
// shortest pivot).
int rank_exact_rows(std::vector<IntRow> rows, int n_cols) {
    const auto strip_content = [](IntRow& row) {
        if (row.empty()) return;
        Integer g(0);
        for (const auto& [c, v] : row)
            mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
        if (g > 1)
            for (auto& [c, v] : row)
                mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), g.get_mpz_t());
    };

    std::vector<int> active;
    std::vector<int> col_count(n_cols, 0);
    for (int i = 0; i < static_cast<int>(rows.size()); ++i) {
        strip_content(rows[i]);
        if (!rows[i].empty()) {
            active.push_back(i);
            for (const auto& [c, v] : rows[i]) ++col_count[c];
        }
    }

    int rank = 0;
    while (!active.empty()) {
        int pr = -1, pc = -1;
        std::size_t pr_nnz = 0, pv_bits = 0;
        for (int i : active) {
            if (pr >= 0 && rows[i].size() > pr_nnz) continue;
            for (const auto& [c, v] : rows[i]) {
                const std::size_t bits = mpz_sizeinbase(v.get_mpz_t(), 2);
                const bool better =
                    pr < 0 || rows[i].size() < pr_nnz ||
                    col_count[c] < col_count[pc] ||
                    (col_count[c] == col_count[pc] && bits < pv_bits);
                if (better) {
                    pr = i;
                    pc = c;
                    pr_nnz = rows[i].size();
                    pv_bits = bits;
                }
            }
        }
        ++rank;

        const IntRow pivot_row = std::move(rows[pr]);
        Integer pivot;
        for (const auto& [c, v] : pivot_row) {
            --col_count[c];
            if (c == pc) pivot = v;
        }
        active.erase(std::find(active.begin(), active.end(), pr));
        rows[pr].clear();

        std::vector<int> next_active;
        next_active.reserve(active.size());
        for (int i : active) {
            auto hit = std::find_if(rows[i].begin(), rows[i].end(),
                                    [&](const auto& e) { return e.first == pc; });
            if (hit == rows[i].end()) {
                next_active.push_back(i);
                continue;
            }
            const Integer w = hit->second;
            for (const auto& [c, v] : rows[i]) --col_count[c];
            IntRow merged;
            merged.reserve(rows[i].size() + pivot_row.size());
            auto x = rows[i].begin();
            auto y = pivot_row.begin();
            while (x != rows[i].end() || y != pivot_row.end()) {
                if (y == pivot_row.end() ||
                    (x != rows[i].end() && x->first < y->first)) {
                    merged.push_back({x->first, pivot * x->second});
                    ++x;
                } else if (x == rows[i].end() || y->first < x->first) {
                    merged.push_back({y->first, -w * y->second});
                    ++y;
                } else {
                    Integer v = pivot * x->second - w * y->second;
                    if (v != 0) merged.push_back({x->first, std::move(v)});
                    ++x;
                    ++y;
                }
            }
            strip_content(merged);
            rows[i] = std::move(merged);
            if (!rows[i].empty()) {
                for (const auto& [c, v] : rows[i]) ++col_count[c];
                next_active.push_back(i);
            }
        }
        active = std::move(next_active);
    }
    return rank;
}

}  // namespace

std::vector<std::uint64_t> rank_primes(std::uint64_t seed, int count) {
    // Distinct 62-bit primes, deterministic in the seed.
    SplitMix64 rng(seed ^ 0x9D8C0FB2AE1D4C6BULL);
    std::vector<std::uint64_t> primes;
    while (static_cast<int>(primes.size()) < count) {
        std::uint64_t cand =
            (1ULL << 61) | (rng.next() & ((1ULL << 61) - 1)) | 1ULL;
        if (!is_prime_u64(cand)) continue;
        if (std::find(primes.begin(), primes.end(), cand) != primes.end())
            continue;
        primes.push_back(cand);
    }
    return primes;
}

int rank_exact(const SparseRatMatrix& m) {
    return rank_exact_rows(integer_rows(m), m.n_cols());
}

int rank_modular_prime(const SparseRatMatrix& m, std::uint64_t prime) {
    return rank_mod_prime_rows(integer_rows(m), m.n_cols(), prime);
}

RankResult rank_of(const SparseRatMatrix& m, const RankOptions& opts) {
    RankResult result;
    if (opts.mode == RankMode::Exact) {
        result.rank = rank_exact(m);
        return result;
    }

    const auto int_rows = integer_rows(m);
    SplitMix64 rng(opts.prime_seed ^ 0x9D8C0FB2AE1D4C6BULL);
    std::vector<int> ranks;
    while (static_cast<int>(result.primes.size()) < opts.prime_count) {
        std::uint64_t cand =
            (1ULL << 61) | (rng.next() & ((1ULL << 61) - 1)) | 1ULL;
        if (!is_prime_u64(cand)) continue;
        if (std::find(result.primes.begin(), result.primes.end(), cand) !=
            result.primes.end())
            continue;
        // A prime dividing a row's clearing factor would null the row; the
        // stream just moves on to the next prime.
        bool usable = true;
        for (int i = 0; i < m.n_rows() && usable; ++i) {
            if (m.row(i).empty() || int_rows[i].empty()) continue;
            bool all_divisible = true;
            for (const auto& [c, v] : int_rows[i])
                if (mpz_fdiv_ui(v.get_mpz_t(), cand) != 0) {
                    all_divisible = false;
                    break;
                }
            if (all_divisible) usable = false;
        }
        if (!usable) continue;
        result.primes.push_back(cand);
        ranks.push_back(rank_mod_prime_rows(int_rows, m.n_cols(), cand));
    }

    const bool agree =
        std::all_of(ranks.begin(), ranks.end(),
                    [&](int r) { return r == ranks.front(); });
    const int modular = *std::max_element(ranks.begin(), ranks.end());

    if (opts.mode == RankMode::Modular) {
        if (agree) {
            result.rank = modular;
        } else {
            // Prime disagreement: escalate to the exact engine.
            result.rank = rank_exact_rows(int_rows, m.n_cols());
            result.escalated = true;
        }
        return result;
    }

    // Both: certify the modular answer against the exact one. Disagreeing
    // primes escalate exactly as in modular mode; an agreeing modular rank
    // that differs from the exact one is an engine bug.
    const int exact = rank_exact_rows(int_rows, m.n_cols());
    if (!agree) {
        result.escalated = true;
    } else if (exact != modular) {
        throw std::logic_error("modular and exact ranks disagree: modular=" +
                               std::to_string(modular) +
                               " exact=" + std::to_string(exact));
    }
    result.rank = exact;
    return result;
}

PinVerdict pin_test_with_full(const SparseRatMatrix& m, int rank_full,
                              const JetVar& column, const RankOptions& opts) {
    const int col = m.column_of(column);
    if (col < 0)
        throw std::invalid_argument("column " + to_at_string(column) +
                                    " is not in the matrix");
    PinVerdict v;
    v.column = column;
    v.rank_full = rank_full;
    v.rank_deleted = rank_of(m.without_column(col), opts).rank;
    if (v.rank_deleted != v.rank_full && v.rank_deleted != v.rank_full - 1)
        throw std::logic_error("deleting one column changed the rank by more "
                               "than one");
    v.pinned = (v.rank_full == v.rank_deleted + 1);
    return v;
}

PinVerdict pin_test(const SparseRatMatrix& m, const JetVar& column,
                    const RankOptions& opts) {
    return pin_test_with_full(m, rank_of(m, opts).rank, column, opts);
}

std::vector<std::vector<Rational>> nullspace_small(const SparseRatMatrix& m) {
    const int rows = m.n_rows();
    const int cols = m.n_cols();
    std::vector<std::vector<Rational>> a(rows,
                                         std::vector<Rational>(cols, Rational(0)));
    for (int i = 0; i < rows; ++i)
        for (const auto& [c, v] : m.row(i)) a[i][c] = v;

    // Rational RREF.
    std::vector<int> pivot_col;
    int r = 0;
    for (int c = 0; c < cols && r < rows; ++c) {
        int pivot = -1;
        for (int i = r; i < rows; ++i)
            if (a[i][c] != 0) {
                pivot = i;
                break;
            }
        if (pivot < 0) continue;
        std::swap(a[r], a[pivot]);
        const Rational inv = a[r][c];
        for (int j = c; j < cols; ++j) a[r][j] /= inv;
        for (int i = 0; i < rows; ++i) {
            if (i == r || a[i][c] == 0) continue;
            const Rational f = a[i][c];
            for (int j = c; j < cols; ++j) a[i][j] -= f * a[r][j];
        }
        pivot_col.push_back(c);
        ++r;
    }

    std::vector<bool> is_pivot(cols, false);
    for (int c : pivot_col) is_pivot[c] = true;
    std::vector<std::vector<Rational>> basis;
    for (int f = 0; f < cols; ++f) {
        if (is_pivot[f]) continue;
        std::vector<Rational> v(cols, Rational(0));
        v[f] = Rational(1);
        for (int i = 0; i < static_cast<int>(pivot_col.size()); ++i)
            v[pivot_col[i]] = -a[i][f];
        basis.push_back(std::move(v));
    }
    return basis;
}

void export_matrix(std::ostream& os, const SparseRatMatrix& m) {
    os << m.n_rows() << ' ' << m.n_cols() << '\n';
    for (int i = 0; i < m.n_rows(); ++i)
        for (const auto& [c, v] : m.row(i))
            os << i + 1 << ' ' << c + 1 << ' ' << to_string(v) << '\n';
    os << "0 0 0\n";
}

void export_column_map(std::ostream& os, const SparseRatMatrix& m) {
    const auto& jets = m.column_jets();
    for (int j = 0; j < static_cast<int>(jets.size()); ++j)
        os << j + 1 << ' ' << name(jets[j].var) << ' ' << to_string(jets[j].idx)
           << '\n';
}

}  // namespace mdpin
