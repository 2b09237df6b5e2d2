#include "mdpin/prolong.hpp"

#include <map>
#include <stdexcept>

namespace mdpin {

std::string ProlongedEquation::label() const {
    return base_name + "@" + to_string(j);
}

namespace {

void check_invariants(const ProlongedEquation& pe, int base_order) {
    if (pe.poly.is_zero() || pe.poly.max_order() != base_order + pe.j.order())
        throw std::logic_error("prolongation lost its leading jets: " +
                               pe.label());
    if (pe.poly.degree() > 2)
        throw std::logic_error("prolongation raised the degree: " + pe.label());
}

}  // namespace

ProlongedEquation prolong(const SystemSpec::Equation& eq, int base_index,
                          const MultiIndex& j) {
    JetPolynomial p = eq.poly;
    for (int d = 0; d < kIndependentVars; ++d)
        for (int n = 0; n < j[d]; ++n) p = p.total_derivative(d);
    ProlongedEquation pe{base_index, eq.name, j, std::move(p),
                         eq.base_order + j.order()};
    check_invariants(pe, eq.base_order);
    return pe;
}

std::vector<ProlongedEquation> enumerate_used_system(const SystemSpec& spec,
                                                     int max_order) {
    if (max_order < 2)
        throw std::invalid_argument("max_order must be at least 2");

    std::vector<ProlongedEquation> out;
    for (int e = 0; e < static_cast<int>(spec.equations.size()); ++e) {
        const auto& eq = spec.equations[e];
        const int budget = max_order - eq.base_order;
        // Walk the prolongation lattice grade by grade; D^J is derived from
        // D^{J - e_d} for the first nonzero direction d.
        std::map<MultiIndex, JetPolynomial> memo;
        for (const auto& j : indices_up_to_order(budget)) {
            JetPolynomial p;
            if (j.order() == 0) {
                p = eq.poly;
            } else {
                int d = 0;
                while (j[d] == 0) ++d;
                MultiIndex prev = j;
                --prev.k[d];
                p = memo.at(prev).total_derivative(d);
            }
            memo[j] = p;
            ProlongedEquation pe{e, eq.name, j, std::move(p),
                                 eq.base_order + j.order()};
            check_invariants(pe, eq.base_order);
            out.push_back(std::move(pe));
        }
    }
    return out;
}

long expected_equation_count(const SystemSpec& spec, int max_order) {
    // Multi-indices with |J| <= b over 4 variables: C(b+4,4).
    const auto count_up_to = [](long b) {
        return (b + 1) * (b + 2) * (b + 3) * (b + 4) / 24;
    };
    long total = 0;
    for (const auto& eq : spec.equations)
        if (max_order >= eq.base_order)
            total += count_up_to(max_order - eq.base_order);
    return total;
}

}  // namespace mdpin
