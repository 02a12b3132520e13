#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "limaut/machine.hpp"

namespace limaut {

// Output strings of a transducer on one input, with the number of accepting
// paths producing each.
using OutputMultiset = std::map<Word, mpz_class>;

mpz_class total_multiplicity(const OutputMultiset& f);

// Reverses every output string.
OutputMultiset reversed(const OutputMultiset& f);

// Exhaustive evaluation: a path reads |c x $ and must end in an accepting state.
OutputMultiset evaluate_transducer(const RtTransducer& t, const Word& x);

// Transducer for x -> { f(y^R)^R : y in g(x) }, where m1 computes f and m2
// computes g. m1 must write nothing on the endmarkers (NOT_SUPPORTED).
// Several accepting states are kept so that path counts survive the merge.
RtTransducer compose_transducers(const RtTransducer& m1, const RtTransducer& m2);

// Printed form of a cell state, "(d,q,σ|τ,p,e|h)".
std::string cell_state_name(char d, const std::string& q, const std::string& sigma, const std::string& tau,
                            const std::string& p, char e, const std::string& h);

// Real-time transducer emitting, for each cell of |c x $, the cell state of a
// first left-to-right traverse of m. Left turns carry a guessed return
// (t, r, a). Requires m.k >= 3 (WRONG_K) and weights in {0,1} (NOT_SUPPORTED).
RtTransducer first_traverse_transducer(const LimitedAutomaton& m);

// (m.k - 1)-limited machine reading the reversed cell-state string and
// simulating m from its first visit to $ on. A guess that turns out wrong
// accepts and rejects with weight 1/2 each.
LimitedAutomaton residual_machine(const LimitedAutomaton& m);

// Σ mult(y)·p_acc(m, y) > threshold · Σ mult(y), exactly. Throws EMPTY_OUTPUT
// on an empty multiset and GAP_OUT_OF_RANGE unless 0 < threshold < 1.
bool lfm_membership(const OutputMultiset& f, const LimitedAutomaton& m, const Rational& threshold);
bool lfm_membership(const OutputMultiset& f, const PushdownAutomaton& m, const Rational& threshold);

// Step-by-step run of a deterministic limited automaton, kept apart from the
// configuration-graph code so that it can serve as a replay oracle.
struct RunStep {
    long cell = 0;  // 0 is |c, |x| + 1 is $
    int from = 0, read = 0, to = 0, write = 0, dir = 0;
};

struct DeterministicRun {
    std::vector<RunStep> steps;
    bool halted = false;
    bool accepted = false;
};

// Throws NOT_DETERMINISTIC if some configuration has two moves.
DeterministicRun run_deterministic(const LimitedAutomaton& m, const Word& x, long step_cap = 10'000);

// The cell states of the run's first traverse, or nullopt when the run halts
// before it ends or returns to a turning cell without moving right.
std::optional<Word> first_traverse_of(const LimitedAutomaton& m, const Word& x, const DeterministicRun& run);

// Runs on which the decomposition is exact: m halts, the first traverse is
// complete, and every turning cell is left leftwards on its third visit.
bool decomposable(const LimitedAutomaton& m, const Word& x, const DeterministicRun& run);

}  // namespace limaut
