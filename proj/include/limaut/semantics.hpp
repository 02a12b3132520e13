#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "limaut/machine.hpp"

namespace limaut {

struct Caps {
    std::size_t max_nodes = 2'000'000;
    long max_stack_height = -1;  // -1: e·(|x|+2) + 16
};

long default_stack_cap(const PushdownAutomaton& m, std::size_t input_length);

enum class NodeKind : std::uint8_t { Transient, Accept, Reject, Unresolved };

// Reachable configurations of one machine on one input. Outgoing weights of a
// transient node plus its dead-end deficit sum to 1; the deficit is mass that
// halts without an applicable move and counts as rejection.
struct ConfigurationGraph {
    std::vector<NodeKind> kind;
    std::vector<std::vector<std::pair<int, Rational>>> out;
    std::vector<Rational> deficit;
    int initial = 0;

    std::size_t node_count() const { return kind.size(); }
    std::size_t edge_count() const;
};

ConfigurationGraph build_config_graph(const LimitedAutomaton& m, const Word& x, const Caps& caps = {});
ConfigurationGraph build_config_graph(const PushdownAutomaton& m, const Word& x, const Caps& caps = {});

struct ProbabilityReport {
    Rational p_acc = 0;
    Rational p_rej = 0;
    Rational p_nonhalt = 0;
    Rational p_unresolved = 0;
    // Set when every path halts and nothing is unresolved.
    std::optional<Rational> expected_steps;
    bool steps_infinite = false;  // halting probability < 1
    std::size_t nodes = 0;
    std::size_t edges = 0;

    Rational acc_hi() const { return p_acc + p_unresolved; }
    Rational rej_hi() const { return p_rej + p_unresolved; }
};

nlohmann::json to_json(const ProbabilityReport& r);

// Absorption probabilities and, when defined, expected steps from the initial node.
ProbabilityReport acceptance_probability(const ConfigurationGraph& g);

// +∞ is std::nullopt. Throws DomainError UNRESOLVED_MASS when caps were hit.
std::optional<Rational> expected_steps(const ConfigurationGraph& g);

ProbabilityReport evaluate(const LimitedAutomaton& m, const Word& x, const Caps& caps = {});
ProbabilityReport evaluate(const PushdownAutomaton& m, const Word& x, const Caps& caps = {});

struct PathCount {
    mpz_class count = 0;
    bool truncated = false;
};

// Number of accepting computation paths of length <= step_cap. Requires
// weights in {0,1}; throws DomainError NOT_NONDET otherwise.
PathCount count_accepting_paths(const LimitedAutomaton& m, const Word& x, long step_cap = 10'000);
PathCount count_accepting_paths(const PushdownAutomaton& m, const Word& x, long step_cap = 10'000);

// Depth-first enumeration of computation paths, independent of the graph solver.
ProbabilityReport enumerate_paths_oracle(const LimitedAutomaton& m, const Word& x, long step_cap = 10'000);
ProbabilityReport enumerate_paths_oracle(const PushdownAutomaton& m, const Word& x, long step_cap = 10'000);

enum class Verdict { Accept, Reject, Unresolved };
std::string to_string(Verdict v);

struct Mode {
    enum Kind { Exact, OneSided, Bounded, Existential } kind = Exact;
    Rational epsilon = 0;

    static Mode exact() { return {}; }
    static Mode one_sided(Rational eps) { return {OneSided, std::move(eps)}; }
    static Mode bounded(Rational eps) { return {Bounded, std::move(eps)}; }
    // Nondeterministic reading: accept iff some accepting path exists.
    static Mode existential() { return {Existential, 0}; }
};

// margin_violation (optional) reports a breach of the mode's error promise.
Verdict verdict_of(const ProbabilityReport& r, const Mode& mode, bool* margin_violation = nullptr);

struct VerdictEntry {
    Word word;
    Verdict verdict = Verdict::Unresolved;
    ProbabilityReport report;
    bool margin_violation = false;
};

std::vector<VerdictEntry> decide_language_upto(const LimitedAutomaton& m, int n, const Mode& mode,
                                               const Caps& caps = {}, int jobs = 1);
std::vector<VerdictEntry> decide_language_upto(const PushdownAutomaton& m, int n, const Mode& mode,
                                               const Caps& caps = {}, int jobs = 1);

// Whether some accepting node is reachable; independent of probabilities.
bool accepting_reachable(const ConfigurationGraph& g);

}  // namespace limaut
