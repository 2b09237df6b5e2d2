#include <sstream>
#include <stdexcept>

#include "mdpin/depvar.hpp"
#include "mdpin/jetvar.hpp"
#include "mdpin/multiindex.hpp"
#include "mdpin/rational.hpp"

namespace mdpin {

Rational parse_rational(const std::string& text) {
    const auto bad = [&] {
        throw std::invalid_argument("malformed rational: '" + text + "'");
    };
    const auto slash = text.find('/');
    const std::string num_s = text.substr(0, slash);
    const std::string den_s =
        slash == std::string::npos ? "1" : text.substr(slash + 1);
    Integer num, den;
    if (num_s.empty() || num.set_str(num_s, 10) != 0) bad();
    if (den_s.empty() || den.set_str(den_s, 10) != 0) bad();
    if (den == 0) throw std::invalid_argument("zero denominator: '" + text + "'");
    Rational q(num);
    q /= Rational(den);
    return q;
}

std::vector<MultiIndex> indices_of_order(int n) {
    std::vector<MultiIndex> out;
    for (int i0 = 0; i0 <= n; ++i0)
        for (int i1 = 0; i1 <= n - i0; ++i1)
            for (int i2 = 0; i2 <= n - i0 - i1; ++i2)
                out.push_back(MultiIndex{{i0, i1, i2, n - i0 - i1 - i2}});
    return out;
}

std::vector<MultiIndex> indices_up_to_order(int n) {
    std::vector<MultiIndex> out;
    for (int k = 0; k <= n; ++k) {
        auto grade = indices_of_order(k);
        out.insert(out.end(), grade.begin(), grade.end());
    }
    return out;
}

std::string to_string(const MultiIndex& idx) {
    std::ostringstream os;
    os << '(' << idx[0] << ',' << idx[1] << ',' << idx[2] << ',' << idx[3] << ')';
    return os.str();
}

std::string_view name(DepVar v) {
    switch (v) {
        case DepVar::A0: return "A0";
        case DepVar::A1: return "A1";
        case DepVar::A2: return "A2";
        case DepVar::A3: return "A3";
        case DepVar::Psi1r: return "psi1r";
        case DepVar::Psi2r: return "psi2r";
        case DepVar::Psi2i: return "psi2i";
        case DepVar::Psi3r: return "psi3r";
        case DepVar::Psi3i: return "psi3i";
        case DepVar::Psi4r: return "psi4r";
        case DepVar::Psi4i: return "psi4i";
    }
    return "?";
}

std::optional<DepVar> depvar_from_name(std::string_view s) {
    for (DepVar v : kAllDepVars)
        if (name(v) == s) return v;
    return std::nullopt;
}

std::string to_at_string(const JetVar& v) {
    std::ostringstream os;
    os << name(v.var) << '@' << v.idx[0] << ',' << v.idx[1] << ',' << v.idx[2]
       << ',' << v.idx[3];
    return os.str();
}

std::optional<JetVar> jetvar_from_at_string(const std::string& s) {
    const auto at = s.find('@');
    if (at == std::string::npos) return std::nullopt;
    const auto var = depvar_from_name(s.substr(0, at));
    if (!var) return std::nullopt;
    MultiIndex idx;
    std::istringstream is(s.substr(at + 1));
    for (int d = 0; d < kIndependentVars; ++d) {
        if (!(is >> idx.k[d]) || idx.k[d] < 0) return std::nullopt;
        if (d < kIndependentVars - 1) {
            char comma = 0;
            if (!(is >> comma) || comma != ',') return std::nullopt;
        }
    }
    char extra = 0;
    if (is >> extra) return std::nullopt;
    return JetVar{*var, idx};
}

}  // namespace mdpin
