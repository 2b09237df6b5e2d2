#include "mdpin/jetpoly.hpp"

#include <algorithm>
#include <cctype>
#include <ostream>
#include <sstream>

namespace mdpin {

bool monomial_less(const Monomial& a, const Monomial& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

MissingJetValue::MissingJetValue(const JetVar& v)
    : std::runtime_error("no value for jet variable " + to_at_string(v)),
      var(v) {}

JetPolynomial JetPolynomial::constant(const Rational& c) {
    JetPolynomial p;
    if (c != 0) p.terms_.push_back({c, {}});
    return p;
}

JetPolynomial JetPolynomial::variable(const JetVar& v) {
    JetPolynomial p;
    p.terms_.push_back({Rational(1), {v}});
    return p;
}

JetPolynomial JetPolynomial::from_terms(std::vector<Term> terms) {
    std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) {
        return monomial_less(a.mono, b.mono);
    });
    JetPolynomial p;
    for (auto& t : terms) {
        if (!p.terms_.empty() && p.terms_.back().mono == t.mono)
            p.terms_.back().coeff += t.coeff;
        else
            p.terms_.push_back(std::move(t));
        if (!p.terms_.empty() && p.terms_.back().coeff == 0) p.terms_.pop_back();
    }
    return p;
}

int JetPolynomial::degree() const {
    std::size_t d = 0;
    for (const auto& t : terms_) d = std::max(d, t.mono.size());
    return static_cast<int>(d);
}

int JetPolynomial::max_order() const {
    if (is_zero())
        throw std::domain_error("max_order is undefined for the zero polynomial");
    int m = 0;
    for (const auto& t : terms_)
        for (const auto& v : t.mono) m = std::max(m, v.order());
    return m;
}

std::vector<JetVar> JetPolynomial::jet_vars() const {
    std::vector<JetVar> vars;
    for (const auto& t : terms_)
        vars.insert(vars.end(), t.mono.begin(), t.mono.end());
    std::sort(vars.begin(), vars.end());
    vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
    return vars;
}

Rational JetPolynomial::coefficient(const Monomial& m) const {
    const auto it = std::lower_bound(
        terms_.begin(), terms_.end(), m, [](const Term& t, const Monomial& mm) {
            return monomial_less(t.mono, mm);
        });
    if (it != terms_.end() && it->mono == m) return it->coeff;
    return Rational(0);
}

JetPolynomial JetPolynomial::operator-() const {
    JetPolynomial p = *this;
    for (auto& t : p.terms_) t.coeff = -t.coeff;
    return p;
}

JetPolynomial operator+(const JetPolynomial& p, const JetPolynomial& q) {
    // Merge of two canonical term lists.
    JetPolynomial r;
    auto a = p.terms_.begin();
    auto b = q.terms_.begin();
    while (a != p.terms_.end() || b != q.terms_.end()) {
        if (b == q.terms_.end() ||
            (a != p.terms_.end() && monomial_less(a->mono, b->mono))) {
            r.terms_.push_back(*a++);
        } else if (a == p.terms_.end() || monomial_less(b->mono, a->mono)) {
            r.terms_.push_back(*b++);
        } else {
            Rational c = a->coeff + b->coeff;
            if (c != 0) r.terms_.push_back({std::move(c), a->mono});
            ++a;
            ++b;
        }
    }
    return r;
}

JetPolynomial operator-(const JetPolynomial& p, const JetPolynomial& q) {
    return p + (-q);
}

JetPolynomial& JetPolynomial::operator+=(const JetPolynomial& q) {
    *this = *this + q;
    return *this;
}

JetPolynomial& JetPolynomial::operator-=(const JetPolynomial& q) {
    *this = *this - q;
    return *this;
}

JetPolynomial operator*(const JetPolynomial& p, const JetPolynomial& q) {
    std::vector<JetPolynomial::Term> out;
    out.reserve(p.terms_.size() * q.terms_.size());
    for (const auto& a : p.terms_)
        for (const auto& b : q.terms_) {
            Monomial m;
            m.reserve(a.mono.size() + b.mono.size());
            std::merge(a.mono.begin(), a.mono.end(), b.mono.begin(),
                       b.mono.end(), std::back_inserter(m));
            out.push_back({a.coeff * b.coeff, std::move(m)});
        }
    return JetPolynomial::from_terms(std::move(out));
}

JetPolynomial operator*(const Rational& c, const JetPolynomial& p) {
    if (c == 0) return {};
    JetPolynomial r = p;
    for (auto& t : r.terms_) t.coeff *= c;
    return r;
}

bool operator==(const JetPolynomial& p, const JetPolynomial& q) {
    if (p.terms_.size() != q.terms_.size()) return false;
    for (std::size_t i = 0; i < p.terms_.size(); ++i)
        if (p.terms_[i].mono != q.terms_[i].mono ||
            p.terms_[i].coeff != q.terms_[i].coeff)
            return false;
    return true;
}

JetPolynomial JetPolynomial::total_derivative(int direction) const {
    std::vector<Term> out;
    for (const auto& t : terms_)
        for (std::size_t i = 0; i < t.mono.size(); ++i) {
            Monomial m = t.mono;
            m[i] = JetVar{m[i].var, m[i].idx.bumped(direction)};
            std::sort(m.begin(), m.end());
            out.push_back({t.coeff, std::move(m)});
        }
    return from_terms(std::move(out));
}

JetPolynomial JetPolynomial::partial_wrt(const JetVar& v) const {
    std::vector<Term> out;
    for (const auto& t : terms_) {
        const auto mult =
            std::count(t.mono.begin(), t.mono.end(), v);
        if (mult == 0) continue;
        Monomial m = t.mono;
        m.erase(std::find(m.begin(), m.end(), v));
        out.push_back({Rational(static_cast<long>(mult)) * t.coeff, std::move(m)});
    }
    return from_terms(std::move(out));
}

Rational JetPolynomial::evaluate(const JetValueMap& values) const {
    Rational sum(0);
    for (const auto& t : terms_) {
        Rational prod = t.coeff;
        for (const auto& v : t.mono) {
            const auto it = values.find(v);
            if (it == values.end()) throw MissingJetValue(v);
            prod *= it->second;
        }
        sum += prod;
    }
    return sum;
}

JetPolynomial JetPolynomial::substituted(const JetValueMap& values) const {
    std::vector<Term> out;
    out.reserve(terms_.size());
    for (const auto& t : terms_) {
        Term nt{t.coeff, {}};
        for (const auto& v : t.mono) {
            const auto it = values.find(v);
            if (it == values.end())
                nt.mono.push_back(v);
            else
                nt.coeff *= it->second;
        }
        if (nt.coeff != 0) out.push_back(std::move(nt));
    }
    return from_terms(std::move(out));
}

std::string to_text(const JetPolynomial& p) {
    if (p.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& t : p.terms()) {
        if (!first) os << " + ";
        first = false;
        os << to_string(t.coeff);
        for (const auto& v : t.mono)
            os << '*' << name(v.var) << '[' << to_string(v.idx) << ']';
    }
    return os.str();
}

namespace {

std::string strip(const std::string& s) {
    auto b = s.find_first_not_of(" \t\n\r");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t\n\r");
    return s.substr(b, e - b + 1);
}

JetVar parse_factor(const std::string& raw) {
    const std::string s = strip(raw);
    const auto br = s.find('[');
    if (br == std::string::npos || s.back() != ']')
        throw std::invalid_argument("malformed jet factor: '" + raw + "'");
    const auto var = depvar_from_name(s.substr(0, br));
    if (!var) throw std::invalid_argument("unknown variable in '" + raw + "'");
    const std::string inner = s.substr(br + 1, s.size() - br - 2);
    if (inner.size() < 2 || inner.front() != '(' || inner.back() != ')')
        throw std::invalid_argument("malformed index in '" + raw + "'");
    MultiIndex idx;
    std::istringstream is(inner.substr(1, inner.size() - 2));
    for (int d = 0; d < kIndependentVars; ++d) {
        if (!(is >> idx.k[d]) || idx.k[d] < 0)
            throw std::invalid_argument("malformed index in '" + raw + "'");
        if (d < kIndependentVars - 1) {
            char comma = 0;
            if (!(is >> comma) || comma != ',')
                throw std::invalid_argument("malformed index in '" + raw + "'");
        }
    }
    return JetVar{*var, idx};
}

}  // namespace

JetPolynomial jetpoly_from_text(const std::string& text) {
    const std::string body = strip(text);
    if (body == "0") return {};
    std::vector<JetPolynomial::Term> terms;
    std::size_t pos = 0;
    while (pos <= body.size()) {
        auto plus = body.find('+', pos);
        const std::string chunk =
            body.substr(pos, plus == std::string::npos ? plus : plus - pos);
        pos = plus == std::string::npos ? body.size() + 1 : plus + 1;
        const std::string term = strip(chunk);
        if (term.empty())
            throw std::invalid_argument("empty term in polynomial text");
        JetPolynomial::Term t{Rational(0), {}};
        std::size_t fpos = 0;
        int part = 0;
        while (fpos <= term.size()) {
            auto star = term.find('*', fpos);
            const std::string tok =
                term.substr(fpos, star == std::string::npos ? star : star - fpos);
            fpos = star == std::string::npos ? term.size() + 1 : star + 1;
            if (part == 0)
                t.coeff = parse_rational(strip(tok));
            else
                t.mono.push_back(parse_factor(tok));
            ++part;
        }
        std::sort(t.mono.begin(), t.mono.end());
        terms.push_back(std::move(t));
    }
    return JetPolynomial::from_terms(std::move(terms));
}

std::ostream& operator<<(std::ostream& os, const JetPolynomial& p) {
    return os << to_text(p);
}

}  // namespace mdpin
