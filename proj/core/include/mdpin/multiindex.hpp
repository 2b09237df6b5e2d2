// Derivative multi-indices over the four independent variables x^0..x^3.
#pragma once

#include <array>
#include <compare>
#include <string>
#include <vector>

namespace mdpin {

inline constexpr int kIndependentVars = 4;

struct MultiIndex {
    std::array<int, kIndependentVars> k{0, 0, 0, 0};

    constexpr int order() const { return k[0] + k[1] + k[2] + k[3]; }
    constexpr int operator[](int d) const { return k[d]; }

    MultiIndex bumped(int d) const {
        MultiIndex r = *this;
        ++r.k[d];
        return r;
    }

    friend MultiIndex operator+(const MultiIndex& a, const MultiIndex& b) {
        MultiIndex r;
        for (int d = 0; d < kIndependentVars; ++d) r.k[d] = a.k[d] + b.k[d];
        return r;
    }

    // Lexicographic on (i0,i1,i2,i3).
    friend auto operator<=>(const MultiIndex&, const MultiIndex&) = default;
};

inline MultiIndex unit_index(int d) {
    MultiIndex r;
    r.k[d] = 1;
    return r;
}

// All multi-indices of exact total order n, lexicographically ascending.
std::vector<MultiIndex> indices_of_order(int n);

// All multi-indices of total order <= n, graded lexicographic (by order,
// then lexicographic within each order).
std::vector<MultiIndex> indices_up_to_order(int n);

std::string to_string(const MultiIndex& idx);  // "(i0,i1,i2,i3)"

}  // namespace mdpin
