// Construction of the twelve real polynomial equations of the gauge-fixed
// Maxwell-Dirac system (psi1 real), plus the exact gamma-matrix oracle used
// to cross-validate the construction.
#pragma once

#include <array>
#include <string>
#include <vector>

#include "mdpin/jetpoly.hpp"

namespace mdpin {

struct ComplexRational {
    Rational re{0};
    Rational im{0};

    friend ComplexRational operator+(const ComplexRational& a, const ComplexRational& b) {
        return {a.re + b.re, a.im + b.im};
    }
    friend ComplexRational operator-(const ComplexRational& a, const ComplexRational& b) {
        return {a.re - b.re, a.im - b.im};
    }
    friend ComplexRational operator*(const ComplexRational& a, const ComplexRational& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend bool operator==(const ComplexRational& a, const ComplexRational& b) {
        return a.re == b.re && a.im == b.im;
    }
    ComplexRational conj() const { return {re, -im}; }
};

using GammaMatrix = std::array<std::array<ComplexRational, 4>, 4>;

struct ComplexJetPolynomial {
    JetPolynomial re;
    JetPolynomial im;

    friend ComplexJetPolynomial operator+(const ComplexJetPolynomial& a,
                                          const ComplexJetPolynomial& b) {
        return {a.re + b.re, a.im + b.im};
    }
    friend ComplexJetPolynomial operator-(const ComplexJetPolynomial& a,
                                          const ComplexJetPolynomial& b) {
        return {a.re - b.re, a.im - b.im};
    }
    friend ComplexJetPolynomial operator*(const ComplexJetPolynomial& a,
                                          const ComplexJetPolynomial& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend ComplexJetPolynomial operator*(const ComplexRational& c,
                                          const ComplexJetPolynomial& p) {
        return {c.re * p.re - c.im * p.im, c.re * p.im + c.im * p.re};
    }
    friend bool operator==(const ComplexJetPolynomial& a,
                           const ComplexJetPolynomial& b) {
        return a.re == b.re && a.im == b.im;
    }
    ComplexJetPolynomial times_i() const { return {-im, re}; }
    ComplexJetPolynomial conj() const { return {re, -im}; }
};

// Metric diag(+1,-1,-1,-1).
constexpr int metric_sign(int mu) { return mu == 0 ? 1 : -1; }

struct GammaOracle {
    std::array<GammaMatrix, 4> gamma;  // upper index, chiral representation
    // Current bilinears with lower index, psi-bar gamma_mu psi, as complex
    // polynomials in the spinor components (psi1 real). Their imaginary
    // parts are identically zero; current() exposes the real parts.
    std::array<ComplexJetPolynomial, 4> current_complex;
    std::array<JetPolynomial, 4> current;
};

GammaOracle build_gamma_oracle();

// The four complex Dirac residuals (left minus right side) written from the
// component equations, with psi1 real and each psi_k = psi_kr + i*psi_ki.
std::array<ComplexJetPolynomial, 4> build_dirac_complex();

// The same residuals derived independently by 4x4 gamma-matrix arithmetic:
// i*gamma^mu*psi_{,mu} - (A_mu gamma^mu) psi - psi.
std::array<ComplexJetPolynomial, 4> build_dirac_from_gamma();

inline Rational default_coupling() { return make_rational(221, 2410); }

struct SystemSpec {
    struct Equation {
        std::string name;
        JetPolynomial poly;
        int base_order;  // 1 for Dirac rows, 2 for Maxwell rows
    };
    std::vector<Equation> equations;  // D3re..D6im, M0..M3
    Rational e2;
};

SystemSpec build_system(const Rational& e2 = default_coupling());

struct ConstructionReport {
    struct Check {
        std::string name;
        bool pass;
        std::string detail;
    };
    std::vector<Check> checks;
    bool all_pass() const;
};

// Cross-validates the constructed system: Clifford relations, current
// realness/degree/content, equality of the two Dirac derivations, exact
// reconstruction of the complex rows from the real split, degree bounds,
// and annihilation at the zero point. Never throws; returns per-check results.
ConstructionReport verify_construction(const SystemSpec& spec);

}  // namespace mdpin
