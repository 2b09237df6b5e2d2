// Prolongation: total derivatives of the base equations up to the order
// cutoff. The used equation set fixes the universe for the background solve
// and the linearization.
#pragma once

#include <vector>

#include "mdpin/mdsystem.hpp"

namespace mdpin {

struct ProlongedEquation {
    int base_index;         // position in SystemSpec::equations
    std::string base_name;
    MultiIndex j;           // prolongation multi-index
    JetPolynomial poly;     // D^J applied to the base equation
    int order;              // base_order + |J|

    std::string label() const;  // "D3re@(1,0,0,0)"
};

// D^J applied to one equation (repeated total derivatives; the order of
// directions is irrelevant by commutativity).
ProlongedEquation prolong(const SystemSpec::Equation& eq, int base_index,
                          const MultiIndex& j);

// Every D^J(eq) with base_order + |J| <= max_order, ordered by base
// equation, then J graded-lexicographically. Verifies per equation that
// the prolongation realizes the maximal order and stays at degree <= 2.
std::vector<ProlongedEquation> enumerate_used_system(const SystemSpec& spec,
                                                     int max_order);

// Closed-form size of enumerate_used_system's output.
long expected_equation_count(const SystemSpec& spec, int max_order);

}  // namespace mdpin
