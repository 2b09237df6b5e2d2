// The eleven real dependent variables of the gauge-fixed system, in the
// ranking order used everywhere for canonical sorting: A0, psi4i, psi4r,
// psi3i, psi3r, psi2i, psi2r, A3, A2, A1, psi1r. The imaginary part of
// psi1 does not exist as a variable; the gauge removes it at the type level.
#pragma once

#include <array>
#include <optional>
#include <string_view>

namespace mdpin {

enum class DepVar : int {
    A0 = 0,
    Psi4i,
    Psi4r,
    Psi3i,
    Psi3r,
    Psi2i,
    Psi2r,
    A3,
    A2,
    A1,
    Psi1r,
};

inline constexpr int kDepVarCount = 11;

inline constexpr std::array<DepVar, kDepVarCount> kAllDepVars{
    DepVar::A0,    DepVar::Psi4i, DepVar::Psi4r, DepVar::Psi3i,
    DepVar::Psi3r, DepVar::Psi2i, DepVar::Psi2r, DepVar::A3,
    DepVar::A2,    DepVar::A1,    DepVar::Psi1r,
};

inline constexpr std::array<DepVar, 7> kSpinorVars{
    DepVar::Psi4i, DepVar::Psi4r, DepVar::Psi3i, DepVar::Psi3r,
    DepVar::Psi2i, DepVar::Psi2r, DepVar::Psi1r,
};

constexpr bool is_potential(DepVar v) {
    return v == DepVar::A0 || v == DepVar::A1 || v == DepVar::A2 ||
           v == DepVar::A3;
}

constexpr bool is_spinor(DepVar v) { return !is_potential(v); }

// Spacetime component of a potential variable (A0 -> 0, ..., A3 -> 3).
constexpr int potential_component(DepVar v) {
    switch (v) {
        case DepVar::A0: return 0;
        case DepVar::A1: return 1;
        case DepVar::A2: return 2;
        case DepVar::A3: return 3;
        default: return -1;
    }
}

constexpr DepVar potential_var(int mu) {
    constexpr std::array<DepVar, 4> a{DepVar::A0, DepVar::A1, DepVar::A2,
                                      DepVar::A3};
    return a[mu];
}

std::string_view name(DepVar v);
std::optional<DepVar> depvar_from_name(std::string_view s);

}  // namespace mdpin
