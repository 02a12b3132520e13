#include "limaut/semantics.hpp"

#include "limaut/errors.hpp"
#include "limaut/parallel.hpp"
#include "limaut/validate.hpp"

namespace limaut {

namespace {

PathCount count_paths(const ConfigurationGraph& g, long step_cap) {
    PathCount pc;
    std::vector<mpz_class> ways(g.node_count());
    std::vector<int> active{g.initial}, next_active;
    ways[g.initial] = 1;
    std::vector<mpz_class> next(g.node_count());
    for (long t = 0; !active.empty(); ++t) {
        next_active.clear();
        for (int v : active) {
            switch (g.kind[v]) {
                case NodeKind::Accept: pc.count += ways[v]; break;
                case NodeKind::Reject: break;
                case NodeKind::Unresolved: pc.truncated = true; break;
                case NodeKind::Transient:
                    if (t == step_cap) {
                        pc.truncated = true;
                        break;
                    }
                    for (const auto& [w, p] : g.out[v]) {
                        if (next[w] == 0) next_active.push_back(w);
                        next[w] += ways[v];
                    }
                    break;
            }
            ways[v] = 0;
        }
        std::swap(ways, next);
        std::swap(active, next_active);
    }
    return pc;
}

template <class M>
std::vector<VerdictEntry> decide(const M& m, int n, const Mode& mode, const Caps& caps, int jobs) {
    auto words = words_upto(input_alphabet(m), n);
    std::vector<VerdictEntry> out(words.size());
    parallel_for(words.size(), jobs, [&](std::size_t i) {
        out[i].word = words[i];
        out[i].report = evaluate(m, words[i], caps);
        out[i].verdict = verdict_of(out[i].report, mode, &out[i].margin_violation);
    });
    return out;
}

}  // namespace

ProbabilityReport evaluate(const LimitedAutomaton& m, const Word& x, const Caps& caps) {
    return acceptance_probability(build_config_graph(m, x, caps));
}

ProbabilityReport evaluate(const PushdownAutomaton& m, const Word& x, const Caps& caps) {
    return acceptance_probability(build_config_graph(m, x, caps));
}

PathCount count_accepting_paths(const LimitedAutomaton& m, const Word& x, long step_cap) {
    if (!has_integral_weights(m)) throw DomainError("NOT_NONDET", "machine has fractional weights");
    return count_paths(build_config_graph(m, x), step_cap);
}

PathCount count_accepting_paths(const PushdownAutomaton& m, const Word& x, long step_cap) {
    if (!has_integral_weights(m)) throw DomainError("NOT_NONDET", "machine has fractional weights");
    return count_paths(build_config_graph(m, x), step_cap);
}

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::Accept: return "accept";
        case Verdict::Reject: return "reject";
        default: return "unresolved";
    }
}

Verdict verdict_of(const ProbabilityReport& r, const Mode& mode, bool* margin_violation) {
    bool violation = false;
    Verdict v = Verdict::Unresolved;
    const Rational half(1, 2);
    switch (mode.kind) {
        case Mode::Exact:
        case Mode::Bounded:
            if (r.p_acc > half) v = Verdict::Accept;
            else if (r.p_rej >= half) v = Verdict::Reject;
            if (mode.kind == Mode::Bounded)
                violation = !(r.p_acc >= 1 - mode.epsilon || r.p_rej >= 1 - mode.epsilon);
            break;
        case Mode::OneSided: {
            Rational threshold = 1 - mode.epsilon;
            if (r.p_acc >= threshold) v = Verdict::Accept;
            else if (r.acc_hi() < threshold) v = Verdict::Reject;
            violation = v == Verdict::Reject && r.p_rej != 1;
            break;
        }
        case Mode::Existential:
            if (r.p_acc > 0) v = Verdict::Accept;
            else if (r.acc_hi() == 0) v = Verdict::Reject;
            break;
    }
    if (margin_violation) *margin_violation = violation;
    return v;
}

std::vector<VerdictEntry> decide_language_upto(const LimitedAutomaton& m, int n, const Mode& mode, const Caps& caps,
                                               int jobs) {
    return decide(m, n, mode, caps, jobs);
}

std::vector<VerdictEntry> decide_language_upto(const PushdownAutomaton& m, int n, const Mode& mode, const Caps& caps,
                                               int jobs) {
    return decide(m, n, mode, caps, jobs);
}

nlohmann::json to_json(const ProbabilityReport& r) {
    nlohmann::json j;
    if (r.p_unresolved > 0) {
        j["p_acc"] = {format_rational(r.p_acc), format_rational(r.acc_hi())};
        j["p_rej"] = {format_rational(r.p_rej), format_rational(r.rej_hi())};
    } else {
        j["p_acc"] = format_rational(r.p_acc);
        j["p_rej"] = format_rational(r.p_rej);
    }
    j["p_nonhalt"] = format_rational(r.p_nonhalt);
    j["p_unresolved"] = format_rational(r.p_unresolved);
    if (r.expected_steps) j["expected_steps"] = format_rational(*r.expected_steps);
    else if (r.steps_infinite) j["expected_steps"] = "inf";
    else j["expected_steps"] = nullptr;
    j["nodes"] = r.nodes;
    j["edges"] = r.edges;
    return j;
}

}  // namespace limaut
