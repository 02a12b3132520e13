// Closure constructions for limited automata: error amplification, unions,
// complement, bounded OR/AND and products with finite automata.

#include <algorithm>
#include <map>
#include <set>

#include "limaut/errors.hpp"
#include "limaut/transforms.hpp"
#include "limaut/validate.hpp"

namespace limaut {

namespace {

// Some writable symbol of the given level, added as "⊘j" if the alphabet has none.
int filler(LimitedAutomaton& m, int lvl) {
    for (int s = 0; s < m.num_symbols(); ++s)
        if (m.level[s] == lvl && s != m.left_end && s != m.right_end) return s;
    return m.add_symbol("⊘" + std::to_string(lvl), lvl);
}

int write_for(LimitedAutomaton& m, int read, int dir) {
    if (m.level[read] == m.k) return read;
    return filler(m, required_write_level(m.k, m.level[read], dir));
}

std::string fresh_name(const NameTable& t, std::string base) {
    while (t.find(base) >= 0) base += "'";
    return base;
}

// Turns every dead end into an explicit move to `target`.
void complete_dead_ends(LimitedAutomaton& m, int target) {
    const int nq = m.num_states(), ns = m.num_symbols();
    std::vector<char> has(static_cast<std::size_t>(nq) * ns, 0);
    for (const auto& t : m.transitions)
        if (t.prob > 0) has[static_cast<std::size_t>(t.from) * ns + t.read] = 1;
    for (int q = 0; q < nq; ++q) {
        if (m.halting(q)) continue;
        for (int s = 0; s < ns; ++s) {
            if (has[static_cast<std::size_t>(q) * ns + s]) continue;
            int dir = s == m.right_end ? -1 : +1;
            m.add(q, s, target, write_for(m, s, dir), dir);
        }
    }
}

// Redirects moves into rejecting states: a share `to_accept` of each such
// move goes to a fresh accepting state, the rest to a fresh rejecting state.
// Dead ends are first made explicit so that all rejection passes through here.
LimitedAutomaton split_rejections(const LimitedAutomaton& m, const Rational& to_accept) {
    LimitedAutomaton out = m;
    out.claims_unambiguous = false;
    int acc = out.add_state(fresh_name(out.states, "acc+"), true, false);
    int rej = out.add_state(fresh_name(out.states, "rej+"), false, true);
    complete_dead_ends(out, rej);
    std::vector<LimitedTransition> moves;
    for (const auto& t : out.transitions) {
        if (!out.rejecting[t.to]) {
            moves.push_back(t);
            continue;
        }
        Rational a = t.prob * to_accept, r = t.prob - a;
        if (a > 0) moves.push_back({t.from, t.read, acc, t.write, t.dir, a});
        if (r > 0) moves.push_back({t.from, t.read, rej, t.write, t.dir, r});
    }
    out.transitions = std::move(moves);
    return out;
}

std::set<std::string> input_names(const LimitedAutomaton& m) {
    std::set<std::string> s;
    for (int a : m.input_symbols()) s.insert(m.symbols.name(a));
    return s;
}

// Disjoint union entered by a coin at |c: component i is chosen with weight
// 1/h and its first move is taken right away.
LimitedAutomaton coin_union(const std::vector<LimitedAutomaton>& ms) {
    if (ms.empty()) throw DomainError("EMPTY_UNION", "no machines to combine");
    const auto& first = ms.front();
    for (const auto& m : ms)
        if (m.k != first.k || input_names(m) != input_names(first))
            throw DomainError("ALPHABET_MISMATCH", "components differ in k or input alphabet");
    const Rational share = fraction(1, static_cast<long>(ms.size()));

    std::vector<std::string> input;
    for (int a : first.input_symbols()) input.push_back(first.symbols.name(a));
    auto out = LimitedAutomaton::with_input(first.k, input);
    const int start = out.add_state("start");
    out.initial = start;
    for (std::size_t i = 0; i < ms.size(); ++i) {
        const auto& m = ms[i];
        const std::string tag = std::to_string(i + 1) + ":";
        std::vector<int> sym(m.num_symbols()), st(m.num_states());
        for (int s = 0; s < m.num_symbols(); ++s) {
            if (s == m.left_end) sym[s] = out.left_end;
            else if (s == m.right_end) sym[s] = out.right_end;
            else if (m.level[s] == 0) sym[s] = out.symbols.find(m.symbols.name(s));
            else sym[s] = out.add_symbol(tag + m.symbols.name(s), m.level[s]);
        }
        for (int q = 0; q < m.num_states(); ++q)
            st[q] = out.add_state(tag + m.states.name(q), m.accepting[q], m.rejecting[q]);
        for (const auto& t : m.transitions) {
            out.add(st[t.from], sym[t.read], st[t.to], sym[t.write], t.dir, t.prob);
            if (t.from == m.initial && t.read == m.left_end)
                out.add(start, out.left_end, st[t.to], out.left_end, +1, t.prob * share);
        }
        if (m.halting(m.initial)) out.add(start, out.left_end, st[m.initial], out.left_end, +1, share);
    }
    return out;
}

int dfa_step(const Dfa& d, int s, const std::string& a) {
    if (s < 0) return -1;
    int c = d.input.find(a);
    return c < 0 ? -1 : d.next[s][c];
}

bool dfa_accepting(const Dfa& d, int s) { return s >= 0 && d.accepting[s]; }

// Product with a DFA. Whenever M halts with a verdict that the DFA can still
// overturn, the product sweeps right to $ feeding the unread suffix to the DFA.
// The unread suffix is exactly the level-0 cells, which first visits consume
// left to right.
LimitedAutomaton regular_product(const LimitedAutomaton& m_in, const Dfa& d, bool conjunction) {
    std::set<std::string> dfa_in(d.input.names().begin(), d.input.names().end());
    if (dfa_in != input_names(m_in)) throw DomainError("ALPHABET_MISMATCH", "DFA and machine read different alphabets");
    LimitedAutomaton m = m_in;
    if (!conjunction) {
        int dead = m.add_state(fresh_name(m.states, "rej+"), false, true);
        complete_dead_ends(m, dead);
    }
    std::vector<std::string> input;
    for (int a : m.input_symbols()) input.push_back(m.symbols.name(a));
    auto out = LimitedAutomaton::with_input(m.k, input);
    for (int s = 0; s < m.num_symbols(); ++s)
        if (m.level[s] > 0 && s != m.left_end && s != m.right_end) out.add_symbol(m.symbols.name(s), m.level[s]);
    out.blank = m.blank < 0 ? -1 : out.symbols.find(m.symbols.name(m.blank));
    auto sym = [&](int s) { return out.symbols.find(m.symbols.name(s)); };
    const int acc = out.add_state("[acc]", true, false);
    const int rej = out.add_state("[rej]", false, true);

    std::map<std::pair<int, int>, int> ids;
    std::vector<std::pair<int, int>> todo;
    auto pair_state = [&](int q, int s) {
        auto [it, fresh] = ids.try_emplace({q, s}, -1);
        if (fresh) {
            it->second = out.add_state("(" + m.states.name(q) + "," + (s < 0 ? "∅" : d.states.name(s)) + ")");
            todo.push_back({q, s});
        }
        return it->second;
    };
    std::map<int, int> sweeps;
    auto sweep = [&](int s) {
        auto [it, fresh] = sweeps.try_emplace(s, -1);
        if (fresh) it->second = out.add_state("sweep(" + (s < 0 ? std::string("∅") : d.states.name(s)) + ")");
        return it->second;
    };
    // Target for "M halts with verdict v, DFA in state s".
    auto verdict = [&](bool v, int s) {
        if (conjunction) return v ? sweep(s) : rej;
        return v ? acc : sweep(s);
    };
    if (m.halting(m.initial)) out.initial = verdict(m.accepting[m.initial], d.start);
    else out.initial = pair_state(m.initial, d.start);

    auto idx = m.index();
    while (!todo.empty()) {
        auto [q, s] = todo.back();
        todo.pop_back();
        int from = ids[{q, s}];
        for (int a = 0; a < m.num_symbols(); ++a)
            for (int id : idx[static_cast<std::size_t>(q) * m.num_symbols() + a]) {
                const auto& t = m.transitions[id];
                int s2 = m.level[a] == 0 ? dfa_step(d, s, m.symbols.name(a)) : s;
                int to = m.halting(t.to) ? verdict(m.accepting[t.to], s2) : pair_state(t.to, s2);
                out.add(from, sym(a), to, sym(t.write), t.dir, t.prob);
            }
    }
    // Sweeps are created on demand above; give each one its moves. A sweep only
    // needs the DFA states reachable from those already present.
    for (int lvl = 1; lvl <= out.k; ++lvl) filler(out, lvl);
    std::vector<int> pending;
    for (const auto& [s, id] : sweeps) pending.push_back(s);
    std::set<int> done;
    while (!pending.empty()) {
        int s = pending.back();
        pending.pop_back();
        if (!done.insert(s).second) continue;
        int from = sweep(s);
        for (int a = 0; a < out.num_symbols(); ++a) {
            if (a == out.left_end) {
                out.add(from, a, from, a, +1);
                continue;
            }
            if (a == out.right_end) {
                bool ok = dfa_accepting(d, s);
                out.add(from, a, ok ? acc : rej, a, -1);
                continue;
            }
            int s2 = s;
            if (out.level[a] == 0) {
                s2 = dfa_step(d, s, out.symbols.name(a));
                if (!sweeps.count(s2)) pending.push_back(s2);
            }
            out.add(from, a, sweep(s2), write_for(out, a, +1), +1);
        }
    }
    return out;
}

}  // namespace

Rational amplification_alpha(const Rational& epsilon, const Rational& gap) {
    if (epsilon < fraction(1, 2) || epsilon >= 1)
        throw DomainError("GAP_OUT_OF_RANGE", "error bound must lie in [1/2, 1)");
    Rational hi = (1 - epsilon) / (2 * (1 + epsilon));
    if (gap <= 0 || gap >= hi)
        throw DomainError("GAP_OUT_OF_RANGE", "gap must lie strictly between 0 and " + format_rational(hi));
    return 1 - (1 - 2 * gap) / (2 * epsilon);
}

LimitedAutomaton amplify_one_sided(const LimitedAutomaton& m, const Rational& epsilon, const Rational& gap) {
    return split_rejections(m, amplification_alpha(epsilon, gap));
}

LimitedAutomaton union_one_sided(const std::vector<LimitedAutomaton>& ms) { return coin_union(ms); }

LimitedAutomaton complement_swap(const LimitedAutomaton& m) {
    LimitedAutomaton out = m;
    out.claims_unambiguous = false;
    // Dead ends reject; make them explicit so that they turn into acceptance.
    int rej = out.add_state(fresh_name(out.states, "rej+"), false, true);
    complete_dead_ends(out, rej);
    std::swap(out.accepting, out.rejecting);
    return out;
}

LimitedAutomaton bounded_or(const LimitedAutomaton& m1, const LimitedAutomaton& m2, const Rational& epsilon) {
    if (epsilon >= fraction(1, 6) || epsilon < 0)
        throw DomainError("EPSILON_TOO_LARGE", "bounded OR needs error below 1/6");
    const Rational third = fraction(1, 3);
    return coin_union({split_rejections(m1, third), split_rejections(m2, third)});
}

LimitedAutomaton bounded_and(const LimitedAutomaton& m1, const LimitedAutomaton& m2, const Rational& epsilon) {
    return complement_swap(bounded_or(complement_swap(m1), complement_swap(m2), epsilon));
}

LimitedAutomaton intersect_regular(const LimitedAutomaton& m, const Dfa& d) { return regular_product(m, d, true); }

LimitedAutomaton union_regular(const LimitedAutomaton& m, const Dfa& d) { return regular_product(m, d, false); }

}  // namespace limaut
