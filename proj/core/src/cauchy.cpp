#include "mdpin/cauchy.hpp"

#include <algorithm>
#include <map>
#include <ostream>
#include <sstream>

namespace mdpin {

JetClass classify(const JetVar& v) {
    const auto& i = v.idx;
    switch (v.var) {
        case DepVar::A0:
        case DepVar::Psi1r:
        case DepVar::Psi2r:
        case DepVar::Psi3r:
        case DepVar::Psi3i:
        case DepVar::Psi4r:
        case DepVar::Psi4i:
            return i[0] == 0 ? JetClass::InitialDatum : JetClass::Determined;
        case DepVar::A2:
        case DepVar::A3:
            return i[0] <= 1 ? JetClass::InitialDatum : JetClass::Determined;
        case DepVar::A1:
            return (i[0] == 0 || (i[0] == 1 && i[1] == 0))
                       ? JetClass::InitialDatum
                       : JetClass::Determined;
        case DepVar::Psi2i:
            return (i[0] == 0 && i[1] == 0) ? JetClass::InitialDatum
                                            : JetClass::Determined;
    }
    return JetClass::Determined;
}

void JetPoint::set(const JetVar& v, Rational value, Provenance prov) {
    values_[v] = std::move(value);
    if (prov == Provenance::Initial) initial_.insert(v);
}

Provenance JetPoint::provenance(const JetVar& v) const {
    return initial_.count(v) ? Provenance::Initial : Provenance::Solved;
}

std::vector<std::pair<JetVar, Rational>> JetPoint::sorted_entries() const {
    std::vector<std::pair<JetVar, Rational>> out(values_.begin(), values_.end());
    std::sort(out.begin(), out.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    return out;
}

JetPoint draw_initial_data(const RandomDataConfig& cfg, int max_order) {
    SplitMix64 rng(cfg.seed);
    JetPoint pt;
    for (int k = 0; k <= max_order; ++k)
        for (DepVar var : kAllDepVars)
            for (const auto& idx : indices_of_order(k)) {
                const JetVar v{var, idx};
                if (classify(v) != JetClass::InitialDatum) continue;
                const std::uint64_t s = rng.next();
                const std::uint64_t n = rng.next();
                const std::uint64_t d = rng.next();
                const long num = static_cast<long>(1 + n % 9);
                const long den = static_cast<long>(1 + d % 9);
                pt.set(v, make_rational((s & 1) ? -num : num, den),
                       Provenance::Initial);
            }
    return pt;
}

StuckSolve::StuckSolve(std::vector<JetVar> remaining)
    : std::runtime_error("solver stuck with " +
                         std::to_string(remaining.size()) +
                         " undetermined jets"),
      unknowns(std::move(remaining)) {}

namespace {

// One linear equation of a round: sum coeff*var + constant = 0.
struct LinRow {
    std::map<JetVar, Rational> coeff;
    Rational constant;
    int eq_index;
};

// Affine form over free columns, used for back-substitution.
struct Affine {
    std::map<int, Rational> lin;
    Rational cst;
};

Integer row_denominator_lcm(const LinRow& row) {
    Integer l(1);
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), row.constant.get_den().get_mpz_t());
    for (const auto& [v, c] : row.coeff)
        mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den().get_mpz_t());
    return l;
}

Integer exact_div(const Integer& x, const Integer& d) {
    Integer q, rem;
    mpz_tdiv_qr(q.get_mpz_t(), rem.get_mpz_t(), x.get_mpz_t(), d.get_mpz_t());
    if (rem != 0)
        throw std::logic_error("fraction-free elimination lost exactness");
    return q;
}

// Solves the joint system exactly and collects the unknowns with a unique
// value. Fraction-free (Bareiss) forward elimination with smallest-pivot
// pivoting, then symbolic back-substitution over the free columns so that
// cancelling dependencies are still recognized as unique. Returns the free
// (non-pivot) columns.
std::vector<JetVar> solve_joint(const std::vector<LinRow>& rows,
                                std::map<JetVar, Rational>& assigned) {
    if (rows.empty()) return {};

    std::vector<JetVar> cols;
    for (const auto& r : rows)
        for (const auto& [v, c] : r.coeff) cols.push_back(v);
    std::sort(cols.begin(), cols.end());
    cols.erase(std::unique(cols.begin(), cols.end()), cols.end());
    std::map<JetVar, int> col_of;
    for (int j = 0; j < static_cast<int>(cols.size()); ++j) col_of[cols[j]] = j;

    const int m = static_cast<int>(rows.size());
    const int n = static_cast<int>(cols.size());
    std::vector<std::vector<Integer>> a(m, std::vector<Integer>(n, Integer(0)));
    std::vector<Integer> rhs(m, Integer(0));
    for (int i = 0; i < m; ++i) {
        const Integer l = row_denominator_lcm(rows[i]);
        for (const auto& [v, c] : rows[i].coeff) {
            Rational scaled = c * Rational(l);
            a[i][col_of[v]] = scaled.get_num();
        }
        Rational scaled = -rows[i].constant * Rational(l);
        rhs[i] = scaled.get_num();
    }

    std::vector<int> pivot_col;
    Integer prev(1);
    int r = 0;
    for (int c = 0; c < n && r < m; ++c) {
        int best = -1;
        std::size_t best_bits = 0;
        for (int i = r; i < m; ++i) {
            if (a[i][c] == 0) continue;
            const std::size_t bits = mpz_sizeinbase(a[i][c].get_mpz_t(), 2);
            if (best < 0 || bits < best_bits) {
                best = i;
                best_bits = bits;
            }
        }
        if (best < 0) continue;
        std::swap(a[r], a[best]);
        std::swap(rhs[r], rhs[best]);
        for (int i = r + 1; i < m; ++i) {
            if (a[i][c] == 0) {
                // Bareiss still rescales untouched rows.
                for (int j = c + 1; j < n; ++j)
                    if (a[i][j] != 0) a[i][j] = exact_div(a[i][j] * a[r][c], prev);
                if (rhs[i] != 0) rhs[i] = exact_div(rhs[i] * a[r][c], prev);
                continue;
            }
            for (int j = c + 1; j < n; ++j)
                a[i][j] = exact_div(a[r][c] * a[i][j] - a[i][c] * a[r][j], prev);
            rhs[i] = exact_div(a[r][c] * rhs[i] - a[i][c] * rhs[r], prev);
            a[i][c] = 0;
        }
        prev = a[r][c];
        pivot_col.push_back(c);
        ++r;
    }
    for (int i = r; i < m; ++i)
        if (rhs[i] != 0)
            throw InconsistentSystem(
                "linear round system has no solution (residual row)");

    // Column affine forms: free columns are themselves; pivot columns are
    // resolved bottom-up.
    std::vector<Affine> form(n);
    std::vector<bool> is_pivot(n, false);
    for (int i = 0; i < r; ++i) is_pivot[pivot_col[i]] = true;
    for (int j = 0; j < n; ++j)
        if (!is_pivot[j]) form[j].lin[j] = Rational(1);

    for (int i = r - 1; i >= 0; --i) {
        const int c = pivot_col[i];
        Affine acc;
        acc.cst = Rational(rhs[i]);
        for (int j = c + 1; j < n; ++j) {
            if (a[i][j] == 0) continue;
            const Rational w(a[i][j]);
            acc.cst -= w * form[j].cst;
            for (const auto& [f, fc] : form[j].lin) {
                Rational& slot = acc.lin[f];
                slot -= w * fc;
                if (slot == 0) acc.lin.erase(f);
            }
        }
        const Rational piv(a[i][c]);
        acc.cst /= piv;
        for (auto& [f, fc] : acc.lin) fc /= piv;
        if (acc.lin.empty()) assigned[cols[c]] = acc.cst;
        form[c] = std::move(acc);
    }

    std::vector<JetVar> free_cols;
    for (int j = 0; j < n; ++j)
        if (!is_pivot[j]) free_cols.push_back(cols[j]);
    return free_cols;
}

}  // namespace

JetPoint saturate_solve(const std::vector<ProlongedEquation>& eqs,
                        const JetPoint& data, SolveLog* log) {
    JetPoint pt = data;

    struct EqState {
        JetPolynomial residual;
        bool done = false;
    };
    std::vector<EqState> state(eqs.size());
    const auto reduce = [&](int i, const JetValueMap& vals) {
        auto& st = state[i];
        if (st.done) return;
        st.residual = st.residual.substituted(vals);
        if (st.residual.is_zero()) {
            st.done = true;
        } else if (st.residual.degree() == 0) {
            throw InconsistentSystem("equation " + eqs[i].label() +
                                     " reduces to nonzero constant " +
                                     to_string(st.residual.terms()[0].coeff));
        }
    };
    for (std::size_t i = 0; i < eqs.size(); ++i) {
        state[i].residual = eqs[i].poly;
        reduce(static_cast<int>(i), pt.values());
    }

    const auto collect_unknowns = [&] {
        std::vector<JetVar> u;
        for (const auto& st : state)
            if (!st.done)
                for (const auto& v : st.residual.jet_vars()) u.push_back(v);
        std::sort(u.begin(), u.end());
        u.erase(std::unique(u.begin(), u.end()), u.end());
        return u;
    };

    while (true) {
        bool all_done = true;
        for (const auto& st : state)
            if (!st.done) all_done = false;
        if (all_done) {
            // Everything occurring in the used system must be known.
            std::vector<JetVar> missing;
            for (const auto& eq : eqs)
                for (const auto& v : eq.poly.jet_vars())
                    if (!pt.contains(v)) missing.push_back(v);
            std::sort(missing.begin(), missing.end());
            missing.erase(std::unique(missing.begin(), missing.end()),
                          missing.end());
            if (!missing.empty()) throw StuckSolve(std::move(missing));
            return pt;
        }

        // Collect the equations that are linear in their unknowns.
        std::vector<LinRow> rows;
        std::vector<int> linear_eqs;
        for (std::size_t i = 0; i < state.size(); ++i) {
            const auto& st = state[i];
            if (st.done) continue;
            bool linear = true;
            for (const auto& t : st.residual.terms())
                if (t.mono.size() > 1) linear = false;
            if (!linear) continue;
            LinRow row;
            row.eq_index = static_cast<int>(i);
            row.constant = Rational(0);
            for (const auto& t : st.residual.terms()) {
                if (t.mono.empty())
                    row.constant = t.coeff;
                else
                    row.coeff[t.mono[0]] = t.coeff;
            }
            rows.push_back(std::move(row));
            linear_eqs.push_back(static_cast<int>(i));
        }
        if (rows.empty()) throw StuckSolve(collect_unknowns());

        std::map<JetVar, Rational> assigned;

        // Cheap pass first: equations with a single unknown are solved
        // directly and substituted inside the round's system; the rest go
        // through the joint elimination.
        bool changed = true;
        while (changed) {
            changed = false;
            for (auto& row : rows) {
                if (row.coeff.size() != 1) continue;
                const auto& [v, c] = *row.coeff.begin();
                const Rational val = -row.constant / c;
                const auto it = assigned.find(v);
                if (it != assigned.end()) {
                    if (it->second != val)
                        throw InconsistentSystem(
                            "conflicting values for " + to_at_string(v));
                } else {
                    assigned[v] = val;
                    changed = true;
                }
                row.coeff.clear();
                row.constant = Rational(0);
            }
            if (!assigned.empty())
                for (auto& row : rows) {
                    for (auto it = row.coeff.begin(); it != row.coeff.end();) {
                        const auto hit = assigned.find(it->first);
                        if (hit == assigned.end()) {
                            ++it;
                            continue;
                        }
                        row.constant += it->second * hit->second;
                        it = row.coeff.erase(it);
                        changed = true;
                    }
                    if (row.coeff.empty() && row.constant != 0)
                        throw InconsistentSystem(
                            "equation " + eqs[row.eq_index].label() +
                            " contradicts values already determined");
                }
        }
        std::vector<LinRow> remaining;
        for (auto& row : rows)
            if (!row.coeff.empty()) remaining.push_back(std::move(row));
        const std::vector<JetVar> free_cols = solve_joint(remaining, assigned);

        SolveLog::Round round;
        if (assigned.empty()) {
            // No unknown received a unique value. If everything still open
            // is linear, this is the underdetermined final block: fix its
            // free unknowns at zero and let the next round solve the rest.
            std::size_t pending = 0;
            for (const auto& st : state)
                if (!st.done) ++pending;
            if (free_cols.empty() || rows.size() != pending)
                throw StuckSolve(collect_unknowns());
            for (const auto& v : free_cols) {
                assigned[v] = Rational(0);
                round.free_completed.push_back(v);
            }
        }

        JetValueMap new_vals;
        for (const auto& [v, val] : assigned) {
            pt.set(v, val, Provenance::Solved);
            new_vals[v] = val;
            round.solved.push_back(v);
        }
        if (log) {
            round.linear_equations = std::move(linear_eqs);
            log->free_completed_total += round.free_completed.size();
            log->rounds.push_back(std::move(round));
        }
        for (std::size_t i = 0; i < state.size(); ++i)
            reduce(static_cast<int>(i), new_vals);
    }
}

ResidualReport residual_check(const std::vector<ProlongedEquation>& eqs,
                              const JetPoint& pt) {
    ResidualReport report;
    for (const auto& eq : eqs) {
        ++report.checked;
        const Rational r = eq.poly.evaluate(pt.values());
        if (r == 0) continue;
        ++report.nonzero;
        if (!report.worst || cmp(abs(r), abs(report.worst->second)) > 0)
            report.worst = {eq.label(), r};
    }
    return report;
}

void dump_point(std::ostream& os, const JetPoint& pt) {
    for (const auto& [v, val] : pt.sorted_entries())
        os << name(v.var) << ' ' << to_string(v.idx) << " = " << to_string(val)
           << ' '
           << (pt.provenance(v) == Provenance::Initial ? "initial" : "solved")
           << '\n';
}

}  // namespace mdpin
