// Multivariate polynomials over jet variables with exact rational
// coefficients, kept in canonical form: terms sorted by monomial, no zero
// coefficients, no duplicate monomials. Total derivatives, algebraic
// partials and exact evaluation live here.
#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "mdpin/jetvar.hpp"
#include "mdpin/rational.hpp"

namespace mdpin {

// Monomial: multiset of jet variables, stored sorted in canonical order.
using Monomial = std::vector<JetVar>;

// Graded order: by degree, then lexicographic on the sorted factor lists.
bool monomial_less(const Monomial& a, const Monomial& b);

using JetValueMap = std::unordered_map<JetVar, Rational, JetVarHash>;

struct MissingJetValue : std::runtime_error {
    JetVar var;
    explicit MissingJetValue(const JetVar& v);
};

class JetPolynomial {
  public:
    struct Term {
        Rational coeff;
        Monomial mono;
    };

    JetPolynomial() = default;  // zero
    static JetPolynomial constant(const Rational& c);
    static JetPolynomial variable(const JetVar& v);
    // Canonicalizes: sorts, merges duplicates, drops zeros.
    static JetPolynomial from_terms(std::vector<Term> terms);

    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }
    const std::vector<Term>& terms() const { return terms_; }

    // Highest monomial degree; 0 for constants and for the zero polynomial.
    int degree() const;

    // Maximum derivative order over all jet variables occurring.
    // Rejects the zero polynomial (std::domain_error).
    int max_order() const;

    // Sorted distinct jet variables occurring.
    std::vector<JetVar> jet_vars() const;

    // Coefficient of an exact monomial, 0 if absent.
    Rational coefficient(const Monomial& m) const;

    JetPolynomial operator-() const;
    friend JetPolynomial operator+(const JetPolynomial& p, const JetPolynomial& q);
    friend JetPolynomial operator-(const JetPolynomial& p, const JetPolynomial& q);
    friend JetPolynomial operator*(const JetPolynomial& p, const JetPolynomial& q);
    friend JetPolynomial operator*(const Rational& c, const JetPolynomial& p);
    JetPolynomial& operator+=(const JetPolynomial& q);
    JetPolynomial& operator-=(const JetPolynomial& q);

    friend bool operator==(const JetPolynomial& p, const JetPolynomial& q);
    friend bool operator!=(const JetPolynomial& p, const JetPolynomial& q) {
        return !(p == q);
    }

    // Formal total derivative D_d: shifts each jet's multi-index by e_d,
    // extended by the Leibniz rule; constants map to zero.
    JetPolynomial total_derivative(int direction) const;

    // Algebraic partial derivative, treating every jet variable as an
    // independent indeterminate.
    JetPolynomial partial_wrt(const JetVar& v) const;

    // Exact evaluation; throws MissingJetValue if a jet has no value.
    Rational evaluate(const JetValueMap& values) const;

    // Partial evaluation: known jets are folded into coefficients, the
    // rest stay symbolic. Result is canonical.
    JetPolynomial substituted(const JetValueMap& values) const;

  private:
    std::vector<Term> terms_;
};

// Plain-text form: sum of "coeff*var[(i0,i1,i2,i3)]*..." terms joined by
// " + ", rationals as "p/q", "0" for the zero polynomial. Round-trips
// through jetpoly_from_text.
std::string to_text(const JetPolynomial& p);
JetPolynomial jetpoly_from_text(const std::string& text);

std::ostream& operator<<(std::ostream& os, const JetPolynomial& p);

}  // namespace mdpin
