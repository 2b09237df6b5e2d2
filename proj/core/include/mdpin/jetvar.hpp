// A jet variable: one dependent variable together with a derivative
// multi-index, treated as an independent algebraic indeterminate.
#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>

#include "mdpin/depvar.hpp"
#include "mdpin/multiindex.hpp"

namespace mdpin {

struct JetVar {
    DepVar var{DepVar::A0};
    MultiIndex idx{};

    int order() const { return idx.order(); }

    friend bool operator==(const JetVar&, const JetVar&) = default;

    // Canonical order: derivative order, then variable rank, then index.
    friend bool operator<(const JetVar& a, const JetVar& b) {
        const int oa = a.order(), ob = b.order();
        if (oa != ob) return oa < ob;
        if (a.var != b.var) return static_cast<int>(a.var) < static_cast<int>(b.var);
        return a.idx < b.idx;
    }

    // Packed key for hash containers; valid while each index component < 16.
    std::uint32_t key() const {
        std::uint32_t k = static_cast<std::uint32_t>(var);
        for (int d = 0; d < kIndependentVars; ++d)
            k = (k << 4) | static_cast<std::uint32_t>(idx[d]);
        return k;
    }
};

inline JetVar jet(DepVar v, int i0, int i1, int i2, int i3) {
    return JetVar{v, MultiIndex{{i0, i1, i2, i3}}};
}

struct JetVarHash {
    std::size_t operator()(const JetVar& v) const {
        return std::hash<std::uint32_t>{}(v.key());
    }
};

// "psi1r@0,0,0,0" — the form used on the command line and in reports.
std::string to_at_string(const JetVar& v);
std::optional<JetVar> jetvar_from_at_string(const std::string& s);

}  // namespace mdpin
