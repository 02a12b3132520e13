#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <utility>
#include <vector>

#include "limaut/machine.hpp"

namespace limaut {

// ---- crossing matrices -----------------------------------------------------

// Crossing behaviour of a frozen region, indexed by (state, direction) pairs:
// entry (q, d) means the head enters in state q moving d (d = +1 enters at the
// left end); exit (p, d') means it leaves in state p moving d'. Exits into a
// halting state are recorded as (p, +1) regardless of where the head is.
// Entries count distinct in-region paths, kOmega when infinitely many.
struct CrossingMatrix {
    static constexpr std::uint64_t kOmega = ~std::uint64_t{0};

    int states = 0;
    std::vector<char> halting;          // per state of the source machine
    std::vector<std::uint64_t> paths;   // dim() x dim(), row = entry
    std::vector<char> loops;            // per entry: some path never leaves

    int dim() const { return 2 * states; }
    static int index(int q, int d) { return 2 * q + (d > 0 ? 1 : 0); }
    static int state_of(int i) { return i / 2; }
    static int dir_of(int i) { return i % 2 ? +1 : -1; }
    std::uint64_t at(int i, int j) const { return paths[static_cast<std::size_t>(i) * dim() + j]; }
    bool bit(int i, int j) const { return at(i, j) != 0; }

    bool operator==(const CrossingMatrix& o) const { return paths == o.paths && loops == o.loops; }
};

struct RegionExits {
    std::map<std::pair<int, int>, std::uint64_t> exits;  // (state, direction) -> path count
    bool loops = false;
    std::set<std::pair<int, int>> pairs() const;
};

// States (q, d) remembering the direction of the last head move.
LimitedAutomaton annotate_directions(const LimitedAutomaton& m);

// Matrix of the one-cell region holding frozen symbol f. Throws NOT_FROZEN.
CrossingMatrix crossing_matrix(const LimitedAutomaton& m, int f);

// Matrix of the concatenated region uv. Throws DIM_MISMATCH.
CrossingMatrix compose_crossing(const CrossingMatrix& tu, const CrossingMatrix& tv);

// Exits of the region uv for a head that starts at the u|v boundary in state q
// moving d (into v when d = +1, into u when d = -1). A null side is an empty
// region. No exits and no loop means every path dies inside.
RegionExits d_delta(const CrossingMatrix* tu, int q, int d, const CrossingMatrix* tv);

// ---- limited automata and pushdown automata ---------------------------------

// Throws WRONG_K (k < 2) and NOT_NONDET.
LimitedAutomaton to_blank_skipping(const LimitedAutomaton& m);

// Throws NOT_BLANK_SKIPPING and WRONG_K.
PushdownAutomaton lpa2_to_1ppda(const LimitedAutomaton& m);

// Throws NOT_IDEAL_SHAPE.
LimitedAutomaton ppda_to_lpa2(const PushdownAutomaton& m);

// ---- closure constructions ---------------------------------------------------

Rational amplification_alpha(const Rational& epsilon, const Rational& gap);  // throws GAP_OUT_OF_RANGE
LimitedAutomaton amplify_one_sided(const LimitedAutomaton& m, const Rational& epsilon, const Rational& gap);

LimitedAutomaton union_one_sided(const std::vector<LimitedAutomaton>& ms);  // throws ALPHABET_MISMATCH
LimitedAutomaton complement_swap(const LimitedAutomaton& m);
// Throws EPSILON_TOO_LARGE unless epsilon < 1/6.
LimitedAutomaton bounded_or(const LimitedAutomaton& m1, const LimitedAutomaton& m2, const Rational& epsilon = 0);
LimitedAutomaton bounded_and(const LimitedAutomaton& m1, const LimitedAutomaton& m2, const Rational& epsilon = 0);

// Product with a DFA stepped on first visits. Throws ALPHABET_MISMATCH.
LimitedAutomaton intersect_regular(const LimitedAutomaton& m, const Dfa& d);
LimitedAutomaton union_regular(const LimitedAutomaton& m, const Dfa& d);

}  // namespace limaut
