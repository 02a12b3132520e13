// Brute-force path enumeration. Deliberately independent of the configuration
// graph and the linear solver: it walks computation paths one by one on a
// mutable tape or stack, in transition-id order, and sums path probabilities.

#include "limaut/errors.hpp"
#include "limaut/semantics.hpp"

namespace limaut {

namespace {

struct Sums {
    Rational acc = 0, rej = 0, cut = 0;
};

Rational share(const Rational& w, const Rational& total) { return total > 1 ? Rational(w / total) : w; }

Sums walk_limited(const LimitedAutomaton& m, const Word& x, long step_cap) {
    std::vector<int> tape{m.left_end};
    for (const auto& s : x) {
        int id = m.symbols.find(s);
        if (id < 0 || m.level[id] != 0) throw InputError("\"" + s + "\" is not an input symbol");
        tape.push_back(id);
    }
    tape.push_back(m.right_end);

    struct Frame {
        int q, pos;
        Rational prob;
        std::vector<int> moves;
        Rational total;
        std::size_t next = 0;
        bool expanded = false;
        int undo_pos = -1, undo_sym = -1;
    };
    Sums s;
    std::vector<Frame> stack;
    stack.push_back({m.initial, 0, Rational(1), {}, Rational(0)});
    while (!stack.empty()) {
        Frame& f = stack.back();
        if (!f.expanded) {
            f.expanded = true;
            if (m.accepting[f.q] || m.rejecting[f.q]) {
                (m.accepting[f.q] ? s.acc : s.rej) += f.prob;
                f.next = f.moves.size();
            } else if (static_cast<long>(stack.size()) - 1 >= step_cap) {
                s.cut += f.prob;
            } else {
                for (int t = 0; t < static_cast<int>(m.transitions.size()); ++t) {
                    const auto& tr = m.transitions[t];
                    if (tr.from == f.q && tr.read == tape[f.pos] && tr.prob != 0) {
                        f.moves.push_back(t);
                        f.total += tr.prob;
                    }
                }
                if (f.total < 1) s.rej += f.prob * (1 - f.total);
            }
        }
        if (f.next < f.moves.size()) {
            const auto& tr = m.transitions[f.moves[f.next++]];
            Frame child{tr.to, f.pos + tr.dir, f.prob * share(tr.prob, f.total), {}, Rational(0)};
            child.undo_pos = f.pos;
            child.undo_sym = tape[f.pos];
            tape[f.pos] = tr.write;
            stack.push_back(std::move(child));
            continue;
        }
        if (f.undo_pos >= 0) tape[f.undo_pos] = f.undo_sym;
        stack.pop_back();
    }
    return s;
}

Sums walk_pda(const PushdownAutomaton& m, const Word& x, long step_cap) {
    std::vector<int> input;
    for (const auto& s : x) {
        int id = m.input.find(s);
        if (id < 0) throw InputError("\"" + s + "\" is not an input symbol");
        input.push_back(id);
    }
    const int n = static_cast<int>(input.size());
    std::vector<int> pds{0};  // back is the top

    struct Frame {
        int q, pos;
        Rational prob;
        std::vector<int> moves;
        Rational total;
        std::size_t next = 0;
        bool expanded = false;
        int popped = -1;  // symbol removed by the move into this frame
        int pushed = 0;
    };
    Sums s;
    std::vector<Frame> stack;
    stack.push_back({m.initial, 0, Rational(1), {}, Rational(0)});
    while (!stack.empty()) {
        Frame& f = stack.back();
        if (!f.expanded) {
            f.expanded = true;
            if (m.accepting[f.q] || m.rejecting[f.q]) {
                (m.accepting[f.q] ? s.acc : s.rej) += f.prob;
            } else if (static_cast<long>(stack.size()) - 1 >= step_cap) {
                s.cut += f.prob;
            } else {
                int here = f.pos == 0 ? m.left_read() : f.pos <= n ? input[f.pos - 1] : m.right_read();
                for (int t = 0; t < static_cast<int>(m.transitions.size()); ++t) {
                    const auto& tr = m.transitions[t];
                    if (tr.from != f.q || tr.top != pds.back() || tr.prob == 0) continue;
                    if (tr.read == kReadLambda || (f.pos <= n + 1 && tr.read == here)) {
                        f.moves.push_back(t);
                        f.total += tr.prob;
                    }
                }
                if (f.total < 1) s.rej += f.prob * (1 - f.total);
            }
        }
        if (f.next < f.moves.size()) {
            const auto& tr = m.transitions[f.moves[f.next++]];
            Frame child{tr.to, tr.read == kReadLambda ? f.pos : f.pos + 1, f.prob * share(tr.prob, f.total), {},
                        Rational(0)};
            child.popped = pds.back();
            pds.pop_back();
            for (auto it = tr.push.rbegin(); it != tr.push.rend(); ++it) pds.push_back(*it);
            child.pushed = static_cast<int>(tr.push.size());
            if (pds.empty()) throw DomainError("BOTTOM", "stack emptied");
            stack.push_back(std::move(child));
            continue;
        }
        if (f.popped >= 0) {
            pds.resize(pds.size() - f.pushed);
            pds.push_back(f.popped);
        }
        stack.pop_back();
    }
    return s;
}

ProbabilityReport to_report(const Sums& s) {
    ProbabilityReport r;
    r.p_acc = s.acc;
    r.p_rej = s.rej;
    r.p_unresolved = s.cut;
    r.p_nonhalt = 0;
    return r;
}

}  // namespace

ProbabilityReport enumerate_paths_oracle(const LimitedAutomaton& m, const Word& x, long step_cap) {
    return to_report(walk_limited(m, x, step_cap));
}

ProbabilityReport enumerate_paths_oracle(const PushdownAutomaton& m, const Word& x, long step_cap) {
    return to_report(walk_pda(m, x, step_cap));
}

}  // namespace limaut
