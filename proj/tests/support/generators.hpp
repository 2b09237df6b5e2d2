// Deterministic random generators shared by the property suites.
#pragma once

#include <vector>

#include "mdpin/cauchy.hpp"
#include "mdpin/jetpoly.hpp"
#include "mdpin/linalg.hpp"

namespace mdpin::testgen {

class Gen {
  public:
    explicit Gen(std::uint64_t seed) : rng_(seed) {}

    std::uint64_t raw() { return rng_.next(); }

    long pick(long lo, long hi) {  // inclusive
        return lo + static_cast<long>(raw() % static_cast<std::uint64_t>(hi - lo + 1));
    }

    Rational rational() {
        const long num = pick(1, 9);
        const long den = pick(1, 9);
        return make_rational((raw() & 1) ? -num : num, den);
    }

    Rational rational_or_zero() {
        if (raw() % 4 == 0) return Rational(0);
        return rational();
    }

    JetVar jetvar(int max_order = 2) {
        const DepVar var = kAllDepVars[pick(0, kDepVarCount - 1)];
        MultiIndex idx;
        const int order = static_cast<int>(pick(0, max_order));
        for (int n = 0; n < order; ++n) ++idx.k[pick(0, 3)];
        return JetVar{var, idx};
    }

    // Random polynomial of degree <= 2 (the shape everything here works on).
    JetPolynomial poly(int max_terms = 6, int max_order = 2) {
        std::vector<JetPolynomial::Term> terms;
        const int n = static_cast<int>(pick(1, max_terms));
        for (int t = 0; t < n; ++t) {
            Monomial m;
            const int deg = static_cast<int>(pick(0, 2));
            for (int f = 0; f < deg; ++f) m.push_back(jetvar(max_order));
            std::sort(m.begin(), m.end());
            terms.push_back({rational(), std::move(m)});
        }
        return JetPolynomial::from_terms(std::move(terms));
    }

    JetValueMap values_for(const JetPolynomial& p) {
        JetValueMap vals;
        for (const auto& v : p.jet_vars()) vals[v] = rational_or_zero();
        return vals;
    }

    SparseRatMatrix dense_matrix(int rows, int cols) {
        std::vector<std::vector<Rational>> d(rows,
                                             std::vector<Rational>(cols));
        for (auto& row : d)
            for (auto& x : row) x = rational_or_zero();
        return SparseRatMatrix::from_dense(d);
    }

    // Product of random rows x cols factors through inner dimension k;
    // guarantees rank <= k so kernels are nontrivial.
    SparseRatMatrix low_rank_matrix(int rows, int cols, int k) {
        std::vector<std::vector<Rational>> a(rows, std::vector<Rational>(k));
        std::vector<std::vector<Rational>> b(k, std::vector<Rational>(cols));
        for (auto& row : a)
            for (auto& x : row) x = rational_or_zero();
        for (auto& row : b)
            for (auto& x : row) x = rational_or_zero();
        std::vector<std::vector<Rational>> d(rows,
                                             std::vector<Rational>(cols, Rational(0)));
        for (int i = 0; i < rows; ++i)
            for (int j = 0; j < cols; ++j)
                for (int l = 0; l < k; ++l) d[i][j] += a[i][l] * b[l][j];
        return SparseRatMatrix::from_dense(d);
    }

    SparseRatMatrix sparse_matrix(int rows, int cols, int nnz_per_row) {
        SparseRatMatrix m(rows, cols);
        for (int i = 0; i < rows; ++i) {
            for (int e = 0; e < nnz_per_row; ++e)
                m.add(i, static_cast<int>(pick(0, cols - 1)), rational());
        }
        m.finalize();
        return m;
    }

  private:
    SplitMix64 rng_;
};

}  // namespace mdpin::testgen
