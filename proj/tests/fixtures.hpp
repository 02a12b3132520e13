// Hand-built machines shared by the unit tests and the acceptance binary.
#pragma once

#include <set>
#include <string>
#include <vector>

#include "limaut/machine.hpp"

namespace fixtures {

using namespace limaut;

struct ValidatorCase {
    std::string name;
    AnyMachine machine;
    std::set<std::string> expected;
};

// 2-limited machine over {a} with one work symbol per level and a frozen F.
inline LimitedAutomaton small_2la() {
    auto m = LimitedAutomaton::with_input(2, {"a"});
    m.add_symbol("A1", 1);
    m.add_symbol("F", 2);
    m.add_state("q");
    m.add_state("acc", true);
    m.add_state("rej", false, true);
    return m;
}

inline PushdownAutomaton small_pda() {
    auto m = PushdownAutomaton::with_input({"a"});
    m.add_stack_symbol("A");
    m.add_state("q");
    m.add_state("acc", true);
    return m;
}

// One level-changing transition from a symbol at `read` level to `write` level.
inline LimitedAutomaton parity_case(int k, int read_level, int write_level, int dir) {
    auto m = LimitedAutomaton::with_input(k, {"a"});
    for (int l = 1; l < k; ++l) m.add_symbol("W" + std::to_string(l), l);
    m.add_symbol("F", k);
    m.add_state("q");
    m.add_state("acc", true);
    auto name = [&](int l) { return l == 0 ? std::string("a") : l == k ? std::string("F") : "W" + std::to_string(l); };
    m.add("q", name(read_level), "q", name(write_level), dir);
    return m;
}

// One machine per violation class per machine kind, plus a clean PDA.
inline std::vector<ValidatorCase> validator_cases() {
    std::vector<ValidatorCase> cs;

    auto stoch = small_2la();
    stoch.add("q", "a", "q", "A1", +1, Rational(3, 4));
    cs.push_back({"limited STOCH (weights 3/4)", stoch, {"STOCH"}});

    auto lim1 = small_2la();
    lim1.add("q", "F", "q", "A1", +1);
    cs.push_back({"limited LIM1 (frozen symbol rewritten)", lim1, {"LIM1"}});

    cs.push_back({"limited LIM2 (even level, d=+1, jumps two levels)", parity_case(2, 0, 2, +1), {"LIM2"}});
    cs.push_back({"limited LIM3 (odd level, d=+1, stays)", parity_case(3, 1, 1, +1), {"LIM3"}});

    auto endmark = small_2la();
    endmark.add("q", "$", "q", "$", +1);
    cs.push_back({"limited ENDMARK (head leaves the tape)", endmark, {"ENDMARK"}});

    auto levels = small_2la();
    levels.level[levels.right_end] = 1;
    cs.push_back({"limited LEVELS (endmarker below level k)", levels, {"LEVELS"}});

    auto pstoch = small_pda();
    pstoch.add("q", "a", "⊥", "q", "⊥");
    pstoch.add("q", "λ", "⊥", "q", "⊥", Rational(1, 4));
    cs.push_back({"pda STOCH (1 + 1/4)", pstoch, {"STOCH"}});

    auto push = small_pda();
    push.add("q", "a", "⊥", "q", "A A ⊥");
    cs.push_back({"pda PUSHSIZE (push of length e+1)", push, {"PUSHSIZE"}});

    auto bottom = small_pda();
    bottom.add("q", "a", "⊥", "q", "⊥ ⊥");
    cs.push_back({"pda BOTTOM (bottom pushed above position 0)", bottom, {"BOTTOM"}});

    auto clean = small_pda();
    clean.add("q", "a", "⊥", "q", "⊥", Rational(1, 2));
    clean.add("q", "|c", "⊥", "q", "⊥", Rational(1, 2));
    clean.add("q", "$", "⊥", "acc", "⊥", Rational(1, 2));
    clean.add("q", "λ", "⊥", "acc", "⊥", Rational(1, 2));
    cs.push_back({"pda clean (1/2 + 1/2)", clean, {}});

    Dfa d;
    d.input.add("a");
    d.add_state("s", true);
    cs.push_back({"dfa STOCH (partial map)", d, {"STOCH"}});

    auto t = RtTransducer::with_alphabets({"a"}, {"x"});
    t.add_state("s", true, true);
    cs.push_back({"transducer STOCH (accepting and rejecting)", t, {"STOCH"}});
    return cs;
}

// Accepts every word over sigma.
inline Dfa dfa_all(const std::vector<std::string>& sigma) {
    Dfa d;
    for (const auto& s : sigma) d.input.add(s);
    d.add_state("s", true);
    for (const auto& s : sigma) d.set("s", s, "s");
    return d;
}

// Accepts words over sigma that avoid `banned`.
inline Dfa dfa_avoiding(const std::vector<std::string>& sigma, const std::string& banned) {
    Dfa d;
    for (const auto& s : sigma) d.input.add(s);
    d.add_state("s", true);
    d.add_state("dead");
    for (const auto& s : sigma) {
        d.set("s", s, s == banned ? "dead" : "s");
        d.set("dead", s, "dead");
    }
    return d;
}

// Accepts a* over sigma.
inline Dfa dfa_only(const std::vector<std::string>& sigma, const std::string& a) {
    Dfa d;
    for (const auto& s : sigma) d.input.add(s);
    d.add_state("s", true);
    d.add_state("dead");
    for (const auto& s : sigma) {
        d.set("s", s, s == a ? "s" : "dead");
        d.set("dead", s, "dead");
    }
    return d;
}

// Accepts words of even length.
inline Dfa dfa_even(const std::vector<std::string>& sigma) {
    Dfa d;
    for (const auto& s : sigma) d.input.add(s);
    d.add_state("e", true);
    d.add_state("o");
    for (const auto& s : sigma) {
        d.set("e", s, "o");
        d.set("o", s, "e");
    }
    return d;
}

}  // namespace fixtures
