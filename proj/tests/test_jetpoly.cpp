#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "mdpin/jetpoly.hpp"
#include "support/generators.hpp"

using namespace mdpin;

namespace {
JetPolynomial var(DepVar v, int i0 = 0, int i1 = 0, int i2 = 0, int i3 = 0) {
    return JetPolynomial::variable(jet(v, i0, i1, i2, i3));
}
}  // namespace

TEST_CASE("rationals are canonical") {
    CHECK(make_rational(2, 4) == make_rational(1, 2));
    CHECK(make_rational(-2, -4) == make_rational(1, 2));
    CHECK(make_rational(3, -7).get_den() == 7);  // positive denominator
    CHECK(to_string(make_rational(-6, 4)) == "-3/2");
    CHECK(parse_rational("221/2410") == make_rational(221, 2410));
    CHECK(parse_rational("-5") == make_rational(-5));
    CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
    CHECK_THROWS_AS(parse_rational("x"), std::invalid_argument);
}

TEST_CASE("ring operations keep canonical form") {
    const auto u = var(DepVar::Psi3r);
    const auto v = var(DepVar::A0);

    CHECK((u + v) + (-u) == v);
    CHECK(make_rational(2, 3) * u * (make_rational(3, 2) * u) == u * u);
    CHECK((u * JetPolynomial{}).is_zero());
    CHECK((u - u).is_zero());

    // duplicate monomials merge, zero coefficients drop
    const auto p = JetPolynomial::from_terms(
        {{Rational(1), {jet(DepVar::A0, 0, 0, 0, 0)}},
         {Rational(2), {jet(DepVar::A0, 0, 0, 0, 0)}},
         {Rational(0), {jet(DepVar::A1, 0, 0, 0, 0)}}});
    CHECK(p.term_count() == 1);
    CHECK(p.coefficient({jet(DepVar::A0, 0, 0, 0, 0)}) == 3);
}

TEST_CASE("total derivative") {
    CHECK(var(DepVar::Psi3r).total_derivative(0) == var(DepVar::Psi3r, 1, 0, 0, 0));
    // matches the mixed-derivative subscript convention
    CHECK(var(DepVar::A1, 1, 0, 0, 0).total_derivative(1) ==
          var(DepVar::A1, 1, 1, 0, 0));
    CHECK(JetPolynomial::constant(make_rational(5, 3)).total_derivative(2).is_zero());

    const auto u = var(DepVar::Psi2r);
    const auto v = var(DepVar::A3, 0, 0, 1, 0);
    CHECK((u * v).total_derivative(2) ==
          u.total_derivative(2) * v + u * v.total_derivative(2));
}

TEST_CASE("algebraic partial derivative") {
    const auto u = var(DepVar::Psi3r);
    const JetVar uj = jet(DepVar::Psi3r, 0, 0, 0, 0);
    CHECK((u * u).partial_wrt(uj) == Rational(2) * u);
    CHECK((var(DepVar::A0) * u).partial_wrt(uj) == var(DepVar::A0));
    CHECK(var(DepVar::A1).partial_wrt(uj).is_zero());
}

TEST_CASE("evaluation") {
    CHECK(JetPolynomial{}.evaluate({}) == 0);

    const auto u = var(DepVar::Psi2i);
    const auto v = var(DepVar::A2);
    const JetVar uj = jet(DepVar::Psi2i, 0, 0, 0, 0);
    const JetVar vj = jet(DepVar::A2, 0, 0, 0, 0);
    JetValueMap vals{{uj, make_rational(2, 3)}, {vj, make_rational(4, 9)}};
    CHECK((u * u - v).evaluate(vals) == 0);

    CHECK_THROWS_AS(u.evaluate({}), MissingJetValue);
}

TEST_CASE("max_order and degree") {
    CHECK(var(DepVar::Psi3r, 1, 0, 0, 0).max_order() == 1);
    CHECK_THROWS_AS(JetPolynomial{}.max_order(), std::domain_error);
    CHECK(JetPolynomial::constant(Rational(3)).max_order() == 0);
    CHECK(JetPolynomial::constant(Rational(3)).degree() == 0);
    CHECK((var(DepVar::A0) * var(DepVar::Psi2r)).degree() == 2);
}

TEST_CASE("substituted folds known values") {
    const auto u = var(DepVar::Psi2r);
    const auto v = var(DepVar::A0);
    const JetVar vj = jet(DepVar::A0, 0, 0, 0, 0);
    const auto p = u * v + v;
    const auto q = p.substituted({{vj, make_rational(1, 2)}});
    CHECK(q == make_rational(1, 2) * u + JetPolynomial::constant(make_rational(1, 2)));
}

TEST_CASE("text round trip") {
    const auto p = make_rational(-2, 3) * (var(DepVar::Psi3r, 1, 0, 0, 0) *
                                           var(DepVar::A0)) +
                   var(DepVar::Psi2i) + JetPolynomial::constant(make_rational(7, 5));
    CHECK(jetpoly_from_text(to_text(p)) == p);
    CHECK(to_text(JetPolynomial{}) == "0");
    CHECK(jetpoly_from_text("0").is_zero());
    CHECK(jetpoly_from_text("1*psi1r[(0,0,0,0)]") ==
          var(DepVar::Psi1r));
    CHECK_THROWS_AS(jetpoly_from_text("1*bogus[(0,0,0,0)]"),
                    std::invalid_argument);
}

TEST_CASE("jetvar ordering is order, then rank, then index") {
    const JetVar a = jet(DepVar::Psi1r, 0, 0, 0, 0);  // order 0, last variable
    const JetVar b = jet(DepVar::A0, 1, 0, 0, 0);     // order 1, first variable
    CHECK(a < b);
    const JetVar c = jet(DepVar::A0, 0, 0, 0, 1);
    const JetVar d = jet(DepVar::A0, 0, 0, 1, 0);
    CHECK(c < d);  // lexicographic on the index
    CHECK(jetvar_from_at_string("psi1r@0,1,2,3") == jet(DepVar::Psi1r, 0, 1, 2, 3));
    CHECK(!jetvar_from_at_string("nope@0,0,0,0").has_value());
}

// Property suite: the jet-algebra laws on random degree-<=2 polynomials.
TEST_CASE("properties: derivative commutativity, Leibniz, degree, evaluation") {
    testgen::Gen gen(20250809);
    for (int it = 0; it < 500; ++it) {
        const auto p = gen.poly();
        const auto q = gen.poly();
        const int d = static_cast<int>(gen.pick(0, 3));
        const int e = static_cast<int>(gen.pick(0, 3));

        CHECK(p.total_derivative(d).total_derivative(e) ==
              p.total_derivative(e).total_derivative(d));

        CHECK((p * q).total_derivative(d) ==
              p.total_derivative(d) * q + p * q.total_derivative(d));

        CHECK((p * q).degree() <= p.degree() + q.degree());
        if (!p.is_zero() && !p.total_derivative(d).is_zero())
            CHECK(p.total_derivative(d).degree() <= p.degree());

        auto vals = gen.values_for(p);
        for (const auto& [v, val] : gen.values_for(q))
            vals.emplace(v, val);
        CHECK((p + q).evaluate(vals) == p.evaluate(vals) + q.evaluate(vals));
        CHECK((p * q).evaluate(vals) == p.evaluate(vals) * q.evaluate(vals));

        // partial_wrt: linearity and the product rule
        const JetVar w = gen.jetvar();
        CHECK((p + q).partial_wrt(w) == p.partial_wrt(w) + q.partial_wrt(w));
        CHECK((p * q).partial_wrt(w) ==
              p.partial_wrt(w) * q + p * q.partial_wrt(w));
        if (p.degree() <= 2 && !p.partial_wrt(w).is_zero())
            CHECK(p.partial_wrt(w).degree() <= 1);
    }
}
