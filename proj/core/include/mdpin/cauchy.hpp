// The Cauchy data schema, the deterministic random draw of rational initial
// data, and the saturating solver that completes the truncated power-series
// background solution.
#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <unordered_set>
#include <vector>

#include "mdpin/prolong.hpp"

namespace mdpin {

enum class JetClass { InitialDatum, Determined };

// Which jets carry freely chosen data. Everything else is determined by
// the equations and their prolongations.
JetClass classify(const JetVar& v);

// SplitMix64: the standard 64-bit mixing generator. State advances by the
// golden-gamma constant; output is the xor-shift-multiply finalizer. Fixed
// here bit-exactly so other implementations can reproduce every draw:
//   state += 0x9E3779B97F4A7C15
//   z = state
//   z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
//   z = (z ^ (z >> 27)) * 0x94D049BB133111EB
//   return z ^ (z >> 31)
struct SplitMix64 {
    std::uint64_t state;
    explicit SplitMix64(std::uint64_t seed) : state(seed) {}
    std::uint64_t next() {
        state += 0x9E3779B97F4A7C15ULL;
        std::uint64_t z = state;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }
};

struct RandomDataConfig {
    std::uint64_t seed = 1;
};

enum class Provenance { Initial, Solved };

class JetPoint {
  public:
    bool contains(const JetVar& v) const { return values_.count(v) != 0; }
    const Rational* find(const JetVar& v) const {
        const auto it = values_.find(v);
        return it == values_.end() ? nullptr : &it->second;
    }
    void set(const JetVar& v, Rational value, Provenance prov);

    const JetValueMap& values() const { return values_; }
    Provenance provenance(const JetVar& v) const;

    std::size_t size() const { return values_.size(); }
    std::size_t initial_count() const { return initial_.size(); }
    std::size_t solved_count() const { return values_.size() - initial_.size(); }

    // Entries in canonical jet order, for dumps and deterministic output.
    std::vector<std::pair<JetVar, Rational>> sorted_entries() const;

  private:
    JetValueMap values_;
    std::unordered_set<JetVar, JetVarHash> initial_;
};

// One value sign*p/q per initial-datum jet of order <= max_order, drawn in
// canonical jet order. Per jet, three generator outputs (s, n, d) give
// sign = (s & 1) ? -1 : +1, p = 1 + n % 9, q = 1 + d % 9.
JetPoint draw_initial_data(const RandomDataConfig& cfg, int max_order);

struct StuckSolve : std::runtime_error {
    std::vector<JetVar> unknowns;
    explicit StuckSolve(std::vector<JetVar> remaining);
};

struct InconsistentSystem : std::runtime_error {
    explicit InconsistentSystem(const std::string& what)
        : std::runtime_error(what) {}
};

struct SolveLog {
    struct Round {
        std::vector<int> linear_equations;  // indices into eqs
        std::vector<JetVar> solved;         // canonical order
        std::vector<JetVar> free_completed; // see below; usually empty
    };
    std::vector<Round> rounds;
    std::size_t free_completed_total = 0;
};

// Fixpoint propagation: substitute the known jets into every open equation,
// collect the equations that are now linear in their unknowns, solve that
// linear system exactly, keep every unknown that receives a unique value,
// and repeat until everything occurring in eqs is known.
//
// The used universe leaves the highest-order potential jets underdetermined:
// A-jets of order exactly k occur only in the |J| = k-2 Maxwell rows, which
// are fewer than those jets. They never enter the linearization (nothing
// multiplies a spinor jet there), so when the fixpoint stalls with every
// remaining equation linear and consistent, the free unknowns of that final
// block are set to zero and the rest solved; the completed jets are recorded
// in the log. A stall with a nonlinear equation still pending is StuckSolve;
// a residual reducing to a nonzero constant is InconsistentSystem.
JetPoint saturate_solve(const std::vector<ProlongedEquation>& eqs,
                        const JetPoint& data, SolveLog* log = nullptr);

struct ResidualReport {
    std::size_t checked = 0;
    std::size_t nonzero = 0;
    std::optional<std::pair<std::string, Rational>> worst;  // label, value
};

ResidualReport residual_check(const std::vector<ProlongedEquation>& eqs,
                              const JetPoint& pt);

// Text dump, one line per jet: "var (i0,i1,i2,i3) = p/q initial|solved".
void dump_point(std::ostream& os, const JetPoint& pt);

}  // namespace mdpin
