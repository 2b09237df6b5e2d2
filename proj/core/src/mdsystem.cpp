#include "mdpin/mdsystem.hpp"

#include <set>
#include <sstream>

namespace mdpin {

namespace {

const ComplexRational kZero{Rational(0), Rational(0)};
const ComplexRational kOne{Rational(1), Rational(0)};
const ComplexRational kI{Rational(0), Rational(1)};

ComplexRational cr(long re, long im = 0) {
    return {Rational(re), Rational(im)};
}

GammaMatrix zero_matrix() {
    GammaMatrix m;
    for (auto& row : m) row.fill(kZero);
    return m;
}

GammaMatrix mat_mul(const GammaMatrix& a, const GammaMatrix& b) {
    GammaMatrix m = zero_matrix();
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            for (int k = 0; k < 4; ++k) m[i][j] = m[i][j] + a[i][k] * b[k][j];
    return m;
}

GammaMatrix mat_add(const GammaMatrix& a, const GammaMatrix& b) {
    GammaMatrix m;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) m[i][j] = a[i][j] + b[i][j];
    return m;
}

// Jet polynomial for a single variable at a multi-index.
JetPolynomial P(DepVar v, MultiIndex idx = {}) {
    return JetPolynomial::variable(JetVar{v, idx});
}

// Complex spinor component psi_k (k = 1..4) at derivative index idx,
// with the gauge psi1 real baked in.
ComplexJetPolynomial psi(int k, MultiIndex idx = {}) {
    switch (k) {
        case 1: return {P(DepVar::Psi1r, idx), {}};
        case 2: return {P(DepVar::Psi2r, idx), P(DepVar::Psi2i, idx)};
        case 3: return {P(DepVar::Psi3r, idx), P(DepVar::Psi3i, idx)};
        default: return {P(DepVar::Psi4r, idx), P(DepVar::Psi4i, idx)};
    }
}

// A^mu as a (real) complex polynomial.
ComplexJetPolynomial Ac(int mu) { return {P(potential_var(mu)), {}}; }

// psi_{k,d}: first derivative of component k in direction d.
ComplexJetPolynomial dpsi(int k, int d) { return psi(k, unit_index(d)); }

}  // namespace

GammaOracle build_gamma_oracle() {
    GammaOracle o;
    for (auto& g : o.gamma) g = zero_matrix();

    // gamma^0 = [[0,-I],[-I,0]]
    o.gamma[0][0][2] = cr(-1);
    o.gamma[0][1][3] = cr(-1);
    o.gamma[0][2][0] = cr(-1);
    o.gamma[0][3][1] = cr(-1);
    // gamma^1: sigma^1 = [[0,1],[1,0]]
    o.gamma[1][0][3] = cr(1);
    o.gamma[1][1][2] = cr(1);
    o.gamma[1][2][1] = cr(-1);
    o.gamma[1][3][0] = cr(-1);
    // gamma^2: sigma^2 = [[0,-i],[i,0]]
    o.gamma[2][0][3] = cr(0, -1);
    o.gamma[2][1][2] = cr(0, 1);
    o.gamma[2][2][1] = cr(0, 1);
    o.gamma[2][3][0] = cr(0, -1);
    // gamma^3: sigma^3 = [[1,0],[0,-1]]
    o.gamma[3][0][2] = cr(1);
    o.gamma[3][1][3] = cr(-1);
    o.gamma[3][2][0] = cr(-1);
    o.gamma[3][3][1] = cr(1);

    // Current bilinears psi-bar gamma_mu psi = sum conj(psi_a) (g^0 g_mu)_ab psi_b.
    for (int mu = 0; mu < 4; ++mu) {
        GammaMatrix m = mat_mul(o.gamma[0], o.gamma[mu]);
        const Rational g(metric_sign(mu));
        ComplexJetPolynomial bilinear;
        for (int a = 0; a < 4; ++a)
            for (int b = 0; b < 4; ++b) {
                if (m[a][b] == kZero) continue;
                const ComplexRational c{g * m[a][b].re, g * m[a][b].im};
                bilinear = bilinear + c * (psi(a + 1).conj() * psi(b + 1));
            }
        o.current_complex[mu] = bilinear;
        o.current[mu] = bilinear.re;
    }
    return o;
}

std::array<ComplexJetPolynomial, 4> build_dirac_complex() {
    const ComplexJetPolynomial A0 = Ac(0), A1 = Ac(1), A2 = Ac(2), A3 = Ac(3);
    const auto iA2 = A2.times_i();

    std::array<ComplexJetPolynomial, 4> r;
    // (A0+A3) psi3 + (A1 - i A2) psi4 + i (psi3,3 - i psi4,2 + psi4,1 - psi3,0) = psi1
    r[0] = (A0 + A3) * psi(3) + (A1 - iA2) * psi(4) +
           (dpsi(3, 3) - dpsi(4, 2).times_i() + dpsi(4, 1) - dpsi(3, 0)).times_i() -
           psi(1);
    // (A1 + i A2) psi3 + (A0 - A3) psi4 - i (psi4,3 - i psi3,2 - psi3,1 + psi4,0) = psi2
    r[1] = (A1 + iA2) * psi(3) + (A0 - A3) * psi(4) -
           (dpsi(4, 3) - dpsi(3, 2).times_i() - dpsi(3, 1) + dpsi(4, 0)).times_i() -
           psi(2);
    // (A0 - A3) psi1 - (A1 - i A2) psi2 - i (psi1,3 - i psi2,2 + psi2,1 + psi1,0) = psi3
    r[2] = (A0 - A3) * psi(1) - (A1 - iA2) * psi(2) -
           (dpsi(1, 3) - dpsi(2, 2).times_i() + dpsi(2, 1) + dpsi(1, 0)).times_i() -
           psi(3);
    // -(A1 + i A2) psi1 + (A0 + A3) psi2 + i psi2,3 + psi1,2 - i (psi1,1 + psi2,0) = psi4
    r[3] = (kZero - kOne) * ((A1 + iA2) * psi(1)) + (A0 + A3) * psi(2) +
           dpsi(2, 3).times_i() + dpsi(1, 2) -
           (dpsi(1, 1) + dpsi(2, 0)).times_i() - psi(4);
    return r;
}

std::array<ComplexJetPolynomial, 4> build_dirac_from_gamma() {
    const GammaOracle o = build_gamma_oracle();
    std::array<ComplexJetPolynomial, 4> r;
    for (int a = 0; a < 4; ++a) {
        ComplexJetPolynomial lhs;
        for (int mu = 0; mu < 4; ++mu) {
            const Rational g(metric_sign(mu));
            for (int b = 0; b < 4; ++b) {
                const ComplexRational& c = o.gamma[mu][a][b];
                if (c == kZero) continue;
                // i gamma^mu psi_{b,mu}
                lhs = lhs + (kI * c) * psi(b + 1, unit_index(mu));
                // - A_mu gamma^mu psi_b, A_mu = g_{mu mu} A^mu
                const ComplexRational ca{-g * c.re, -g * c.im};
                lhs = lhs + ca * (Ac(mu) * psi(b + 1));
            }
        }
        r[a] = lhs - psi(a + 1);
    }
    return r;
}

SystemSpec build_system(const Rational& e2) {
    SystemSpec spec;
    spec.e2 = e2;

    const auto dirac = build_dirac_complex();
    static const char* dirac_names[] = {"D3", "D4", "D5", "D6"};
    for (int k = 0; k < 4; ++k) {
        spec.equations.push_back(
            {std::string(dirac_names[k]) + "re", dirac[k].re, 1});
        spec.equations.push_back(
            {std::string(dirac_names[k]) + "im", dirac[k].im, 1});
    }

    const GammaOracle o = build_gamma_oracle();
    for (int mu = 0; mu < 4; ++mu) {
        const DepVar amu = potential_var(mu);
        const Rational g(metric_sign(mu));
        // Box A_mu = g_{mu mu} (A^mu_{,2000} - A^mu_{,0200} - A^mu_{,0020} - A^mu_{,0002})
        JetPolynomial box = P(amu, MultiIndex{{2, 0, 0, 0}});
        for (int d = 1; d < 4; ++d) {
            MultiIndex idx;
            idx.k[d] = 2;
            box -= P(amu, idx);
        }
        box = g * box;
        // A^nu_{,nu mu}: second derivative of each A^nu in directions (nu, mu)
        JetPolynomial divgrad;
        for (int nu = 0; nu < 4; ++nu)
            divgrad += P(potential_var(nu), unit_index(nu) + unit_index(mu));
        spec.equations.push_back({"M" + std::to_string(mu),
                                  box - divgrad - e2 * o.current[mu], 2});
    }
    return spec;
}

bool ConstructionReport::all_pass() const {
    for (const auto& c : checks)
        if (!c.pass) return false;
    return true;
}

ConstructionReport verify_construction(const SystemSpec& spec) {
    ConstructionReport report;
    const auto add = [&](std::string name, bool pass, std::string detail = "") {
        report.checks.push_back({std::move(name), pass, std::move(detail)});
    };

    // Clifford relations {gamma^mu, gamma^nu} = 2 g^{mu nu} I, exactly.
    const GammaOracle o = build_gamma_oracle();
    bool clifford = true;
    for (int mu = 0; mu < 4 && clifford; ++mu)
        for (int nu = 0; nu < 4 && clifford; ++nu) {
            GammaMatrix anti =
                mat_add(mat_mul(o.gamma[mu], o.gamma[nu]),
                        mat_mul(o.gamma[nu], o.gamma[mu]));
            for (int i = 0; i < 4; ++i)
                for (int j = 0; j < 4; ++j) {
                    ComplexRational want = kZero;
                    if (mu == nu && i == j) want = cr(2 * metric_sign(mu));
                    if (!(anti[i][j] == want)) clifford = false;
                }
        }
    add("clifford_relations", clifford);

    // Currents: real, pure degree 2, no potential variables.
    bool real_ok = true, deg_ok = true, content_ok = true;
    for (int mu = 0; mu < 4; ++mu) {
        if (!o.current_complex[mu].im.is_zero()) real_ok = false;
        for (const auto& t : o.current[mu].terms()) {
            if (t.mono.size() != 2) deg_ok = false;
            for (const auto& v : t.mono)
                if (!is_spinor(v.var) || v.order() != 0) content_ok = false;
        }
    }
    add("currents_real", real_ok);
    add("currents_pure_degree2", deg_ok);
    add("currents_spinor_only", content_ok);

    // Two independent Dirac derivations agree.
    const auto from_components = build_dirac_complex();
    const auto from_gamma = build_dirac_from_gamma();
    bool dirac_ok = true;
    for (int k = 0; k < 4; ++k)
        if (!(from_components[k] == from_gamma[k])) dirac_ok = false;
    add("dirac_components_vs_gamma", dirac_ok);

    // The 8 real rows reassemble into the complex residuals exactly.
    bool split_ok = spec.equations.size() == 12;
    if (split_ok)
        for (int k = 0; k < 4; ++k) {
            const ComplexJetPolynomial rebuilt{spec.equations[2 * k].poly,
                                               spec.equations[2 * k + 1].poly};
            if (!(rebuilt == from_components[k])) split_ok = false;
        }
    add("real_split_reconstruction", split_ok);

    // Degree bound and variable census.
    bool degree_ok = true;
    std::set<DepVar> seen;
    for (const auto& eq : spec.equations) {
        if (eq.poly.degree() > 2) degree_ok = false;
        for (const auto& v : eq.poly.jet_vars()) seen.insert(v.var);
    }
    add("all_equations_degree_le_2", degree_ok);
    add("eleven_dependent_variables", seen.size() == kDepVarCount,
        "found " + std::to_string(seen.size()));

    // The zero jet annihilates every residual (the system is homogeneous in
    // the sense that zero fields solve it).
    bool zero_ok = true;
    JetValueMap zeros;
    for (const auto& eq : spec.equations)
        for (const auto& v : eq.poly.jet_vars()) zeros[v] = Rational(0);
    for (const auto& eq : spec.equations)
        if (eq.poly.evaluate(zeros) != 0) zero_ok = false;
    add("zero_point_annihilates", zero_ok);

    // Dirac rows: order-1 jets are spinor jets entering linearly with
    // coefficient +-1, never multiplied by fields.
    bool order1_ok = true;
    for (int i = 0; i < 8 && i < static_cast<int>(spec.equations.size()); ++i) {
        if (spec.equations[i].base_order != 1) order1_ok = false;
        for (const auto& t : spec.equations[i].poly.terms()) {
            bool has_order1 = false;
            for (const auto& v : t.mono)
                if (v.order() >= 1) has_order1 = true;
            if (!has_order1) continue;
            if (t.mono.size() != 1 || !is_spinor(t.mono[0].var) ||
                !(t.coeff == 1 || t.coeff == -1))
                order1_ok = false;
        }
    }
    add("dirac_order1_unit_coefficients", order1_ok);

    return report;
}

}  // namespace mdpin
