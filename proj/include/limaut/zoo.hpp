#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "limaut/machine.hpp"

namespace limaut::zoo {

// Membership oracles: direct string checks with no automaton machinery.
bool oracle_L2(const Word& x);         // a^n b^n c  or  a^n b^2n d
bool oracle_Lk(int k, const Word& x);  // block language over {a,b,c,#}, k >= 3
bool oracle_L1p(const Word& x);        // a^n b^n c^m
bool oracle_L2p(const Word& x);        // a^n b^m c^m
bool oracle_anbncn(const Word& x);
bool oracle_contains_a(const Word& x);

struct LanguageOracle {
    std::string name;
    std::vector<std::string> alphabet;
    std::function<bool(const Word&)> member;
};

LanguageOracle language(const std::string& name);  // "L2", "L1p", "L2p", "anbncn", "L3", ...

// One-sided 1ppda for L2: fair coin between the c-check and the d-check.
PushdownAutomaton build_L2_rppda();
// Ideal-shape DPDAs for a^n b^n c^m and a^n b^m c^m.
std::pair<PushdownAutomaton, PushdownAutomaton> build_dcfl2_witnesses();
// λ-loop on ⊥: accept with 1/2, repeat with 1/2.
PushdownAutomaton geometric_loop_pda();
PushdownAutomaton fair_coin_pda();

// Deterministic 2-lda's for a^n b^n c^m and a^n b^m c^m (not blank-skipping).
LimitedAutomaton l1p_2lda();
LimitedAutomaton l2p_2lda();
// 2-lna accepting words with an 'a'; one accepting path per 'a'.
LimitedAutomaton some_a_2lna();
// 2-lna accepting words containing "ab" as a factor, guessing the 'a'.
LimitedAutomaton ab_factor_2lna();
// Deterministic 3-lda's that finish every computation at |c.
LimitedAutomaton sweep_3lda();
LimitedAutomaton turn_3lda();

struct ZooEntry {
    std::string name;
    AnyMachine machine;
    std::string oracle;  // language name, empty if none
    bool one_sided = false;
};

std::vector<ZooEntry> catalogue();
const ZooEntry& entry(const std::string& name);

struct RandomSpec {
    std::string kind = "limited";  // "limited" | "pda" | "transducer"
    int k = 2;
    int states = 3;
    int input_symbols = 2;
    int work_symbols = 1;  // per level for limited machines, stack symbols for PDAs
    int output_symbols = 2;
    std::string determinism = "det";  // "det" | "nondet" | "prob"
    std::uint64_t seed = 0;
};

// Deterministic in the seed. Throws DomainError INCONSISTENT_SPEC.
AnyMachine random_machine(const RandomSpec& spec);

// Transducers (f, g) with f reading g's output alphabet and writing nothing on
// the endmarkers, ready for compose_transducers(f, g).
std::pair<RtTransducer, RtTransducer> random_transducer_pair(const RandomSpec& spec);

}  // namespace limaut::zoo
