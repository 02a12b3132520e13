#include "limaut/validate.hpp"

#include <algorithm>

namespace limaut {

namespace {

std::string describe(const LimitedAutomaton& m, int t) {
    const auto& tr = m.transitions[t];
    return "δ(" + m.states.name(tr.from) + "," + m.symbols.name(tr.read) + " | " + m.states.name(tr.to) + "," +
           m.symbols.name(tr.write) + "," + (tr.dir > 0 ? "+1" : "-1") + ")";
}

std::string describe(const PushdownAutomaton& m, int t) {
    const auto& tr = m.transitions[t];
    return "δ(" + m.states.name(tr.from) + "," + m.read_name(tr.read) + "," + m.stack.name(tr.top) + " | " +
           m.states.name(tr.to) + "," + (tr.push.empty() ? kLambda : m.format_push(tr.push)) + ")";
}

template <class M>
void check_states(const M& m, ValidationReport& out) {
    if (m.initial < 0 || m.initial >= m.num_states())
        out.push_back({"STOCH", -1, "initial state out of range"});
    for (int q = 0; q < m.num_states(); ++q)
        if (m.accepting[q] && m.rejecting[q])
            out.push_back({"STOCH", -1, "state " + m.states.name(q) + " is both accepting and rejecting"});
}

bool integral(const Rational& r) { return r == 0 || r == 1; }

}  // namespace

int required_write_level(int k, int i, int d) {
    if (i >= k) return k;
    int step = (i % 2 == 0) ? (d > 0 ? 1 : 2) : (d > 0 ? 2 : 1);
    return std::min(k, i + step);
}

ValidationReport validate_limited(const LimitedAutomaton& m) {
    ValidationReport out;
    const int nsym = m.num_symbols();
    if (m.k < 1) out.push_back({"LEVELS", -1, "k must be positive"});
    if (static_cast<int>(m.level.size()) != nsym) {
        out.push_back({"LEVELS", -1, "level table does not cover the alphabet"});
        return out;
    }
    for (int s = 0; s < nsym; ++s)
        if (m.level[s] < 0 || m.level[s] > m.k)
            out.push_back({"LEVELS", -1, "symbol " + m.symbols.name(s) + " has level outside [0,k]"});
    for (int e : {m.left_end, m.right_end}) {
        if (e < 0 || e >= nsym) {
            out.push_back({"LEVELS", -1, "missing endmarker"});
            return out;
        }
        if (m.level[e] != m.k) out.push_back({"LEVELS", -1, "endmarker " + m.symbols.name(e) + " not in level k"});
    }
    if (m.blank >= 0 && m.level[m.blank] != m.k)
        out.push_back({"LEVELS", -1, "blank " + m.symbols.name(m.blank) + " not in level k"});
    check_states(m, out);

    std::vector<std::vector<int>> groups(static_cast<std::size_t>(m.num_states()) * nsym);
    for (int t = 0; t < static_cast<int>(m.transitions.size()); ++t) {
        const auto& tr = m.transitions[t];
        if (tr.from < 0 || tr.from >= m.num_states() || tr.to < 0 || tr.to >= m.num_states() || tr.read < 0 ||
            tr.read >= nsym || tr.write < 0 || tr.write >= nsym) {
            out.push_back({"STOCH", t, "transition refers to unknown states or symbols"});
            continue;
        }
        if (tr.dir != 1 && tr.dir != -1) out.push_back({"STOCH", t, "direction must be +1 or -1: " + describe(m, t)});
        if (!is_probability(tr.prob)) out.push_back({"STOCH", t, "weight outside [0,1]: " + describe(m, t)});
        if (m.halting(tr.from)) out.push_back({"STOCH", t, "transition out of a halting state: " + describe(m, t)});
        groups[static_cast<std::size_t>(tr.from) * nsym + tr.read].push_back(t);

        int i = m.level[tr.read], j = m.level[tr.write];
        bool end_read = tr.read == m.left_end || tr.read == m.right_end;
        bool end_write = tr.write == m.left_end || tr.write == m.right_end;
        if (i == m.k) {
            if (tr.read != tr.write || j != m.k) out.push_back({"LIM1", t, "level-k symbol rewritten: " + describe(m, t)});
        } else if (j != required_write_level(m.k, i, tr.dir)) {
            out.push_back({i % 2 == 0 ? "LIM2" : "LIM3", t,
                           "level " + std::to_string(i) + " to " + std::to_string(j) + " with d=" +
                               std::to_string(tr.dir) + ": " + describe(m, t)});
        }
        if ((tr.read == m.left_end && tr.dir < 0) || (tr.read == m.right_end && tr.dir > 0))
            out.push_back({"ENDMARK", t, "head leaves the tape: " + describe(m, t)});
        if (!end_read && end_write) out.push_back({"ENDMARK", t, "endmarker written inside the tape: " + describe(m, t)});
    }
    for (const auto& g : groups) {
        if (g.empty()) continue;
        Rational sum = 0;
        bool all_integral = true;
        for (int t : g) {
            sum += m.transitions[t].prob;
            all_integral = all_integral && integral(m.transitions[t].prob);
        }
        if (sum != 0 && sum != 1 && !all_integral)
            out.push_back({"STOCH", g.front(), "weights sum to " + format_rational(sum) + " at " + describe(m, g.front())});
    }
    return out;
}

ValidationReport validate_pda(const PushdownAutomaton& m) {
    ValidationReport out;
    check_states(m, out);
    if (m.stack.size() < 1) {
        out.push_back({"BOTTOM", -1, "stack alphabet lacks a bottom marker"});
        return out;
    }
    const int reads = m.num_reads();
    // (q, top) -> per read slot (0 = λ) transition ids
    std::vector<std::vector<std::vector<int>>> groups(static_cast<std::size_t>(m.num_states()) * m.stack.size(),
                                                      std::vector<std::vector<int>>(reads + 1));
    for (int t = 0; t < static_cast<int>(m.transitions.size()); ++t) {
        const auto& tr = m.transitions[t];
        if (tr.from < 0 || tr.from >= m.num_states() || tr.to < 0 || tr.to >= m.num_states() || tr.top < 0 ||
            tr.top >= m.stack.size() || tr.read < kReadLambda || tr.read >= reads) {
            out.push_back({"STOCH", t, "transition refers to unknown states or symbols"});
            continue;
        }
        if (!is_probability(tr.prob)) out.push_back({"STOCH", t, "weight outside [0,1]: " + describe(m, t)});
        if (m.halting(tr.from)) out.push_back({"STOCH", t, "transition out of a halting state: " + describe(m, t)});
        if (static_cast<int>(tr.push.size()) > m.push_size)
            out.push_back({"PUSHSIZE", t, "push string longer than e=" + std::to_string(m.push_size) + ": " + describe(m, t)});
        bool bad_bottom = false;
        for (std::size_t i = 0; i < tr.push.size(); ++i)
            if (tr.push[i] == 0 && !(tr.top == 0 && i + 1 == tr.push.size())) bad_bottom = true;
        if (tr.top == 0 && (tr.push.empty() || tr.push.back() != 0)) bad_bottom = true;
        if (bad_bottom) out.push_back({"BOTTOM", t, "bottom marker misplaced or popped: " + describe(m, t)});
        groups[static_cast<std::size_t>(tr.from) * m.stack.size() + tr.top][tr.read + 1].push_back(t);
    }
    for (const auto& per_read : groups) {
        bool any = false, all_integral = true;
        std::vector<Rational> sums(reads + 1, Rational(0));
        int first = -1;
        for (int r = 0; r <= reads; ++r)
            for (int t : per_read[r]) {
                any = true;
                if (first < 0) first = t;
                sums[r] += m.transitions[t].prob;
                all_integral = all_integral && integral(m.transitions[t].prob);
            }
        if (!any || all_integral) continue;
        const Rational& lam = sums[0];
        bool ok = lam <= 1;
        for (int r = 1; ok && r <= reads; ++r) {
            if (lam == 0) ok = sums[r] == 0 || sums[r] == 1;
            else ok = sums[r] == 1 - lam;
        }
        if (!ok) out.push_back({"STOCH", first, "δ[q,σ,a]+δ[q,λ,a] != 1 at " + describe(m, first)});
    }
    return out;
}

ValidationReport validate_dfa(const Dfa& d) {
    ValidationReport out;
    if (d.start < 0 || d.start >= d.states.size()) out.push_back({"STOCH", -1, "start state out of range"});
    for (int q = 0; q < d.states.size(); ++q)
        for (int a = 0; a < d.input.size(); ++a)
            if (d.next[q][a] < 0 || d.next[q][a] >= d.states.size())
                out.push_back({"STOCH", -1, "transition map not total at " + d.states.name(q) + "," + d.input.name(a)});
    return out;
}

ValidationReport validate_transducer(const RtTransducer& t) {
    ValidationReport out;
    check_states(t, out);
    for (int i = 0; i < static_cast<int>(t.transitions.size()); ++i) {
        const auto& tr = t.transitions[i];
        if (tr.from < 0 || tr.from >= t.num_states() || tr.to < 0 || tr.to >= t.num_states() || tr.read < 0 ||
            tr.read > t.right_read() || tr.output < -1 || tr.output >= t.output.size())
            out.push_back({"STOCH", i, "transition refers to unknown states or symbols"});
    }
    return out;
}

ShapeCheck is_blank_skipping(const LimitedAutomaton& m) {
    ShapeCheck r;
    r.direction.assign(m.num_states(), 0);
    auto top = m.symbols_at(m.k);
    if (m.blank < 0 || top.size() != 3) {
        r.witness = "Γ_k must be exactly {|c, $, B}";
        return r;
    }
    std::vector<int> seen(m.num_states(), 0);
    for (int t = 0; t < static_cast<int>(m.transitions.size()); ++t) {
        const auto& tr = m.transitions[t];
        if (tr.read != m.blank) continue;
        if (tr.prob == 0) continue;
        if (tr.to != tr.from || tr.write != m.blank || tr.prob != 1 || seen[tr.from]) {
            r.transition = t;
            r.witness = "blank not skipped: " + describe(m, t);
            return r;
        }
        seen[tr.from] = 1;
        r.direction[tr.from] = tr.dir;
    }
    for (int q = 0; q < m.num_states(); ++q)
        if (!m.halting(q) && !seen[q]) {
            r.witness = "state " + m.states.name(q) + " has no blank-skipping move";
            return r;
        }
    r.ok = true;
    return r;
}

ShapeCheck is_ideal_shape(const PushdownAutomaton& m) {
    ShapeCheck r;
    std::vector<char> lambda_pos(static_cast<std::size_t>(m.num_states()) * m.stack.size(), 0);
    for (const auto& tr : m.transitions)
        if (tr.read == kReadLambda && tr.prob > 0) lambda_pos[static_cast<std::size_t>(tr.from) * m.stack.size() + tr.top] = 1;
    auto fail = [&](int t, const std::string& why) {
        r.transition = t;
        r.witness = why + ": " + describe(m, t);
        return r;
    };
    for (int t = 0; t < static_cast<int>(m.transitions.size()); ++t) {
        const auto& tr = m.transitions[t];
        if (tr.prob == 0) continue;
        const auto& u = tr.push;
        if (tr.read == kReadLambda) {
            if (!u.empty()) return fail(t, "(i) λ-move must pop");
            continue;
        }
        bool pop = u.empty();
        bool stay = u.size() == 1 && u[0] == tr.top;
        bool push = u.size() == 2 && u[1] == tr.top && u[0] != 0;
        if (!pop && !stay && !push) return fail(t, "(ii) push string not in {λ, ba, a}");
        if (push && lambda_pos[static_cast<std::size_t>(tr.to) * m.stack.size() + u[0]])
            return fail(t, "(iii) λ-move enabled after a push");
        if (stay && lambda_pos[static_cast<std::size_t>(tr.to) * m.stack.size() + tr.top])
            return fail(t, "(iv) λ-move enabled after a stationary move");
    }
    r.ok = true;
    return r;
}

bool has_integral_weights(const LimitedAutomaton& m) {
    return std::all_of(m.transitions.begin(), m.transitions.end(), [](const auto& t) { return integral(t.prob); });
}

bool has_integral_weights(const PushdownAutomaton& m) {
    return std::all_of(m.transitions.begin(), m.transitions.end(), [](const auto& t) { return integral(t.prob); });
}

MachineClass classify(const LimitedAutomaton& m) {
    MachineClass c;
    c.nondeterministic = has_integral_weights(m);
    c.deterministic = c.nondeterministic;
    if (c.deterministic)
        for (const auto& g : m.index()) {
            int positive = 0;
            for (int t : g) positive += m.transitions[t].prob > 0;
            if (positive > 1) c.deterministic = false;
        }
    c.unambiguous_claimed = m.claims_unambiguous;
    c.blank_skipping = is_blank_skipping(m).ok;
    return c;
}

MachineClass classify(const PushdownAutomaton& m) {
    MachineClass c;
    c.nondeterministic = has_integral_weights(m);
    c.deterministic = c.nondeterministic;
    if (c.deterministic) {
        auto idx = m.index();
        for (int q = 0; q < m.num_states() && c.deterministic; ++q)
            for (int a = 0; a < m.stack.size() && c.deterministic; ++a) {
                auto positive = [&](int read) {
                    int n = 0;
                    for (int t : idx[m.index_key(q, read, a)]) n += m.transitions[t].prob > 0;
                    return n;
                };
                int lam = positive(kReadLambda);
                if (lam > 1) c.deterministic = false;
                for (int r = 0; r < m.num_reads(); ++r) {
                    int n = positive(r);
                    if (n > 1 || (n > 0 && lam > 0)) c.deterministic = false;
                }
            }
    }
    c.unambiguous_claimed = m.claims_unambiguous;
    c.ideal_shape = is_ideal_shape(m).ok;
    return c;
}

}  // namespace limaut
