#pragma once

#include <string>
#include <vector>

#include "limaut/machine.hpp"

namespace limaut {

struct Violation {
    std::string condition;  // STOCH, LIM1, LIM2, LIM3, ENDMARK, LEVELS, PUSHSIZE, BOTTOM
    int transition = -1;    // offending transition id, -1 for machine-level problems
    std::string message;
    bool operator==(const Violation&) const = default;
};

using ValidationReport = std::vector<Violation>;

ValidationReport validate_limited(const LimitedAutomaton& m);
ValidationReport validate_pda(const PushdownAutomaton& m);
ValidationReport validate_dfa(const Dfa& d);
ValidationReport validate_transducer(const RtTransducer& t);

// The level a transition of a k-limited machine must write, given the read
// level and direction. Turns at level k-1 are capped at k.
int required_write_level(int k, int read_level, int dir);

struct ShapeCheck {
    bool ok = false;
    int transition = -1;  // first violating transition, if any
    std::string witness;
    // For blank-skipping machines: per state +1 / -1 for Q_{+1} / Q_{-1}, 0 if halting.
    std::vector<int> direction;
};

ShapeCheck is_blank_skipping(const LimitedAutomaton& m);
ShapeCheck is_ideal_shape(const PushdownAutomaton& m);

struct MachineClass {
    bool deterministic = false;
    bool nondeterministic = false;
    bool unambiguous_claimed = false;
    bool blank_skipping = false;
    bool ideal_shape = false;
    bool operator==(const MachineClass&) const = default;
};

MachineClass classify(const LimitedAutomaton& m);
MachineClass classify(const PushdownAutomaton& m);

// True when every positive weight is exactly 1.
bool has_integral_weights(const LimitedAutomaton& m);
bool has_integral_weights(const PushdownAutomaton& m);

}  // namespace limaut
