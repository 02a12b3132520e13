// Conversions between blank-skipping 2-limited automata and 1-way pushdown
// automata.

#include "limaut/errors.hpp"
#include "limaut/transforms.hpp"
#include "limaut/validate.hpp"

namespace limaut {

// The stack holds the non-blank level-1 cells left of the head, top nearest.
// A maximal run of blanks directly below the frontier (or between two kept
// cells) is compressed into one G. In q+ the head is sweeping right towards
// the next unread cell; in q- it sits on the cell described by the stack top
// (|c when the top is ⊥). After $ has been read the machine can only take
// λ-moves, so if M may continue past $ the states get post-$ copies in which
// "reach the frontier" means "read $ again". In that phase a top τ̂ marks the
// cell next to $, and E above ⊥ marks an empty input.
PushdownAutomaton lpa2_to_1ppda(const LimitedAutomaton& m) {
    if (m.k != 2) throw DomainError("WRONG_K", "expected a 2-limited automaton");
    ShapeCheck bs = is_blank_skipping(m);
    if (!bs.ok) throw DomainError("NOT_BLANK_SKIPPING", bs.witness);
    const auto& dir = bs.direction;
    const int n = m.num_states();

    bool post = false;
    for (const auto& t : m.transitions)
        if (t.read == m.right_end && t.prob > 0 && !m.halting(t.to)) post = true;

    auto out = PushdownAutomaton::with_input(input_alphabet(m));
    for (int q = 0; q < n; ++q) {
        out.add_state(m.states.name(q) + "+", m.accepting[q], m.rejecting[q]);
        out.add_state(m.states.name(q) + "-", m.accepting[q], m.rejecting[q]);
    }
    if (post)
        for (int q = 0; q < n; ++q) {
            out.add_state(m.states.name(q) + "+$", m.accepting[q], m.rejecting[q]);
            out.add_state(m.states.name(q) + "-$", m.accepting[q], m.rejecting[q]);
        }
    auto plus = [&](int q, bool after) { return 2 * q + (after ? 2 * n : 0); };
    auto minus = [&](int q, bool after) { return 2 * q + 1 + (after ? 2 * n : 0); };
    out.initial = plus(m.initial, false);

    const auto level1 = m.symbols_at(1);
    std::vector<int> cell(m.num_symbols(), -1), marked(m.num_symbols(), -1);
    for (int s : level1) cell[s] = out.add_stack_symbol(m.symbols.name(s));
    const int G = out.add_stack_symbol("G");
    int E = -1;
    if (post) {
        E = out.add_stack_symbol("E");
        for (int s : level1) marked[s] = out.add_stack_symbol(m.symbols.name(s) + "^");
    }
    const int S = out.stack.size();
    auto idx = m.index();
    auto moves = [&](int q, int sym) -> const std::vector<int>& { return idx[q * m.num_symbols() + sym]; };
    // Where M ends up after leaving a cell rightwards onto blanks in state p.
    auto onward = [&](int p, bool after) { return m.halting(p) || dir[p] > 0 ? plus(p, after) : minus(p, after); };

    for (int q = 0; q < n; ++q) {
        if (m.halting(q)) continue;
        // Reading |c at the start.
        for (int id : moves(q, m.left_end)) {
            const auto& t = m.transitions[id];
            out.add(plus(q, false), out.left_read(), 0, plus(t.to, false), {0}, t.prob);
        }
        for (int a = 0; a < S; ++a) {
            // First visit of a cell.
            for (int sigma : m.input_symbols())
                for (int id : moves(q, sigma)) {
                    const auto& t = m.transitions[id];
                    int r = out.input.find(m.symbols.name(sigma));
                    if (t.dir > 0) out.add(plus(q, false), r, a, plus(t.to, false), {cell[t.write], a}, t.prob);
                    else out.add(plus(q, false), r, a, minus(t.to, false), {a}, t.prob);
                }
            // Reading $.
            for (int id : moves(q, m.right_end)) {
                const auto& t = m.transitions[id];
                if (m.halting(t.to) || !post) {
                    out.add(plus(q, false), out.right_read(), a, minus(t.to, false), {a}, t.prob);
                    continue;
                }
                std::vector<int> u{a};
                if (a == 0) u = {E, 0};
                else if (a != G) {
                    for (int s : level1)
                        if (cell[s] == a) u = {marked[s]};
                }
                out.add(plus(q, false), out.right_read(), a, minus(t.to, true), u, t.prob);
            }
        }
        for (bool after : {false, true}) {
            if (after && !post) continue;
            // Head on a kept level-1 cell: M blanks it.
            for (int s : level1)
                for (bool adjacent : {false, true}) {
                    if (adjacent && !after) continue;
                    int top = adjacent ? marked[s] : cell[s];
                    for (int id : moves(q, s)) {
                        const auto& t = m.transitions[id];
                        if (t.dir < 0) out.add(minus(q, after), kReadLambda, top, minus(t.to, after), {}, t.prob);
                        else if (adjacent) out.add(minus(q, after), kReadLambda, top, plus(t.to, after), {G}, t.prob);
                        else out.add(minus(q, after), kReadLambda, top, onward(t.to, after), {G}, t.prob);
                    }
                }
            // Head inside a blank run.
            if (dir[q] < 0) out.add(minus(q, after), kReadLambda, G, minus(q, after), {});
            else out.add(minus(q, after), kReadLambda, G, plus(q, after), {G});
            // Head on |c.
            for (int id : moves(q, m.left_end)) {
                const auto& t = m.transitions[id];
                out.add(minus(q, after), kReadLambda, 0, minus(t.to, after), {G, 0}, t.prob);
                if (after) out.add(minus(q, after), kReadLambda, E, plus(t.to, true), {E}, t.prob);
            }
            // Post-$ arrival at $: apply M's $-move again.
            if (after)
                for (int id : moves(q, m.right_end)) {
                    const auto& t = m.transitions[id];
                    for (int a = 1; a < S; ++a) {
                        std::vector<int> u{a};
                        for (int s : level1)
                            if (cell[s] == a) u = {marked[s]};
                        out.add(plus(q, true), kReadLambda, a, minus(t.to, true), u, t.prob);
                    }
                }
        }
    }
    return out;
}

// States [q a] (q reading an input symbol with a on top) and plain q (popping
// leftwards); level-1 cells hold the stack symbol below the one pushed there,
// B1 marks a cell that did not change the stack.
LimitedAutomaton ppda_to_lpa2(const PushdownAutomaton& m) {
    ShapeCheck shape = is_ideal_shape(m);
    if (!shape.ok) throw DomainError("NOT_IDEAL_SHAPE", shape.witness);
    const int n = m.num_states(), l = m.stack.size();
    const bool integral = has_integral_weights(m);

    bool dollar_pop = false;
    for (const auto& t : m.transitions) {
        if (t.read != m.right_read() || t.prob == 0) continue;
        if (t.push.empty()) dollar_pop = true;
        else if (!m.halting(t.to))
            throw DomainError("NOT_IDEAL_SHAPE", "a non-popping move on $ must enter a halting state");
    }

    auto out = LimitedAutomaton::with_input(2, m.input.names());
    std::vector<int> cell(l);
    for (int a = 0; a < l; ++a) cell[a] = out.add_symbol("[" + m.stack.name(a) + "]", 1);
    const int b1 = out.add_symbol("B1", 1);
    const int blank = out.add_symbol("B", 2);
    out.blank = blank;
    for (int q = 0; q < n; ++q)
        for (int a = 0; a < l; ++a)
            out.add_state("[" + m.states.name(q) + " " + m.stack.name(a) + "]", m.accepting[q], m.rejecting[q]);
    for (int q = 0; q < n; ++q) out.add_state(m.states.name(q), m.accepting[q], m.rejecting[q]);
    if (dollar_pop)
        for (int q = 0; q < n; ++q) out.add_state(m.states.name(q) + "$", m.accepting[q], m.rejecting[q]);
    auto top = [&](int q, int a) { return q * l + a; };
    auto plain = [&](int q) { return n * l + q; };
    auto after = [&](int q) { return m.halting(q) ? plain(q) : n * l + n + q; };
    out.initial = top(m.initial, 0);

    std::vector<Rational> lambda(static_cast<std::size_t>(n) * l, 0);
    std::vector<char> reads(static_cast<std::size_t>(n) * l, 0);
    for (const auto& t : m.transitions) {
        if (t.prob == 0) continue;
        if (t.read == kReadLambda) lambda[t.from * l + t.top] += t.prob;
        else reads[t.from * l + t.top] = 1;
    }
    auto turn_weight = [&](int q, int a) -> Rational {
        if (integral) return reads[q * l + a] ? 1 : 0;
        return 1 - lambda[q * l + a];
    };

    for (const auto& t : m.transitions) {
        if (t.prob == 0 || m.halting(t.from)) continue;
        const int q = t.from, a = t.top;
        if (t.read == kReadLambda) {
            out.add(plain(q), cell[a], t.push.empty() ? plain(t.to) : top(t.to, a), blank, -1, t.prob);
            if (a == 0) out.add(plain(q), out.left_end, t.push.empty() ? plain(t.to) : top(t.to, a), out.left_end, +1,
                                t.prob);
            if (dollar_pop) out.add(after(q), cell[a], after(t.to), blank, -1, t.prob);
            continue;
        }
        Rational w = t.prob;
        Rational free = turn_weight(q, a);
        if (!integral) {
            if (free == 0) continue;
            w /= free;
        }
        const bool pop = t.push.empty();
        const bool stay = !pop && t.push.size() == 1;
        if (t.read == m.left_read()) {
            // Only the initial configuration reads |c; the bottom is the endmarker itself.
            int to = stay ? top(t.to, 0) : top(t.to, t.push[0]);
            out.add(top(q, a), out.left_end, to, out.left_end, +1, w);
        } else if (t.read == m.right_read()) {
            if (pop) out.add(top(q, a), out.right_end, after(t.to), out.right_end, -1, w);
            else out.add(top(q, a), out.right_end, stay ? top(t.to, a) : top(t.to, t.push[0]), out.right_end, -1, w);
        } else {
            int sigma = out.symbols.find(m.input.name(t.read));
            if (pop) out.add(top(q, a), sigma, plain(t.to), blank, -1, w);
            else if (stay) out.add(top(q, a), sigma, top(t.to, a), b1, +1, w);
            else out.add(top(q, a), sigma, top(t.to, t.push[0]), cell[a], +1, w);
        }
    }
    for (int q = 0; q < n; ++q) {
        if (m.halting(q)) continue;
        for (int a = 0; a < l; ++a) {
            out.add(top(q, a), blank, top(q, a), blank, +1);
            Rational w = turn_weight(q, a);
            if (w > 0) {
                out.add(plain(q), cell[a], top(q, a), blank, +1, w);
                if (a == 0) out.add(plain(q), out.left_end, top(q, 0), out.left_end, +1, w);
            }
        }
        out.add(plain(q), blank, plain(q), blank, -1);
        out.add(plain(q), b1, plain(q), blank, -1);
        if (dollar_pop) {
            out.add(after(q), blank, after(q), blank, -1);
            out.add(after(q), b1, after(q), blank, -1);
        }
    }
    return out;
}

}  // namespace limaut
