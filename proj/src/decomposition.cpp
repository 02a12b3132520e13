// Real-time transducers, their composition, and the split of a (k+1)-limited
// automaton into a first-traverse transducer and a k-limited residual machine.

#include "limaut/decomposition.hpp"

#include <array>
#include <set>

#include "limaut/errors.hpp"
#include "limaut/semantics.hpp"
#include "limaut/validate.hpp"

namespace limaut {

mpz_class total_multiplicity(const OutputMultiset& f) {
    mpz_class n = 0;
    for (const auto& [y, c] : f) n += c;
    return n;
}

OutputMultiset reversed(const OutputMultiset& f) {
    OutputMultiset out;
    for (const auto& [y, c] : f) out[reversed(y)] += c;
    return out;
}

OutputMultiset evaluate_transducer(const RtTransducer& t, const Word& x) {
    std::vector<int> reads{t.left_read()};
    for (const auto& a : x) {
        int id = t.input.find(a);
        if (id < 0) throw InputError("symbol '" + a + "' is not in the transducer's input alphabet");
        reads.push_back(id);
    }
    reads.push_back(t.right_read());
    auto idx = t.index();
    const int reads_per_state = t.input.size() + 2;

    std::map<int, OutputMultiset> layer{{t.initial, {{Word{}, 1}}}};
    for (int r : reads) {
        std::map<int, OutputMultiset> next;
        for (const auto& [q, outs] : layer)
            for (int id : idx[q * reads_per_state + r]) {
                const auto& tr = t.transitions[id];
                auto& dst = next[tr.to];
                for (const auto& [y, c] : outs) {
                    Word z = y;
                    if (tr.output >= 0) z.push_back(t.output.name(tr.output));
                    dst[z] += c;
                }
            }
        layer = std::move(next);
    }
    OutputMultiset out;
    for (const auto& [q, outs] : layer)
        if (t.accepting[q])
            for (const auto& [y, c] : outs) out[y] += c;
    return out;
}

// N reads x and runs m2 forwards. Alongside, it runs m1 backwards over m2's
// output: its memory holds the state m1 is in just after reading the newest
// output symbol of m2, and each step guesses the state before it. The guesses
// are anchored by an accepting $-move at |c and checked against m1's |c-move
// at $. State keys carry the transitions taken last, so distinct path pairs
// stay distinct paths of N.
RtTransducer compose_transducers(const RtTransducer& m1, const RtTransducer& m2) {
    std::set<std::string> mid1(m1.input.names().begin(), m1.input.names().end());
    std::set<std::string> mid2(m2.output.names().begin(), m2.output.names().end());
    if (mid1 != mid2) throw DomainError("ALPHABET_MISMATCH", "m2's output alphabet differs from m1's input alphabet");
    for (const auto& tr : m1.transitions)
        if ((tr.read == m1.left_read() || tr.read == m1.right_read()) && tr.output >= 0)
            throw DomainError("NOT_SUPPORTED", "the second stage must write nothing on the endmarkers");

    auto out = RtTransducer::with_alphabets(m2.input.names(), m1.output.names());
    out.initial = out.add_state("start");
    const auto idx1 = m1.index(), idx2 = m2.index();
    const int w1 = m1.input.size() + 2, w2 = m2.input.size() + 2;
    // Transitions of m1 grouped by (target, read).
    std::map<std::pair<int, int>, std::vector<int>> into;
    for (int i = 0; i < static_cast<int>(m1.transitions.size()); ++i)
        into[{m1.transitions[i].to, m1.transitions[i].read}].push_back(i);
    auto arriving = [&](int s, int read) -> const std::vector<int>& {
        static const std::vector<int> none;
        auto it = into.find({s, read});
        return it == into.end() ? none : it->second;
    };

    // key: q2, s1, last m2 move, last m1 move, m1's $-move (first step), final flag
    using Key = std::array<int, 6>;
    std::map<Key, int> ids;
    std::vector<Key> todo;
    auto state = [&](const Key& key) {
        auto [it, fresh] = ids.try_emplace(key, -1);
        if (fresh) {
            bool final = key[5] != 0;
            std::string name = final ? "acc" : "(" + m2.states.name(key[0]) + "," + m1.states.name(key[1]) + ")";
            name += "#" + std::to_string(ids.size());
            it->second = out.add_state(name, final, false);
            if (!final) todo.push_back(key);
        }
        return it->second;
    };

    // Applies m2's move t2 (and, on |c, m1's $-move d1) from N state `from`
    // holding m1 state s; emits one N transition per backward m1 move.
    auto expand = [&](int from, int s, int t2, int d1, int read) {
        const auto& tr2 = m2.transitions[t2];
        const bool last = read == m2.right_read();
        if (last && !m2.accepting[tr2.to]) return;
        auto finish = [&](int s_before, int t1, int emit) {
            if (!last) {
                out.add(from, read, state({tr2.to, s_before, t2, t1, d1, 0}), emit);
                return;
            }
            for (int c1 : idx1[m1.initial * w1 + m1.left_read()])
                if (m1.transitions[c1].to == s_before)
                    out.add(from, read, state({tr2.to, s_before, t2, t1, c1, 1}), emit);
        };
        if (tr2.output < 0) {
            finish(s, -1, -1);
            return;
        }
        int b = m1.input.find(m2.output.name(tr2.output));
        for (int t1 : arriving(s, b)) finish(m1.transitions[t1].from, t1, m1.transitions[t1].output);
    };

    for (int t2 : idx2[m2.initial * w2 + m2.left_read()])
        for (int d1 = 0; d1 < static_cast<int>(m1.transitions.size()); ++d1) {
            const auto& dm = m1.transitions[d1];
            if (dm.read == m1.right_read() && m1.accepting[dm.to]) expand(out.initial, dm.from, t2, d1, m2.left_read());
        }
    while (!todo.empty()) {
        Key key = todo.back();
        todo.pop_back();
        const int from = ids[key];
        for (int r = 0; r < w2; ++r) {
            if (r == m2.left_read()) continue;
            for (int t2 : idx2[key[0] * w2 + r]) expand(from, key[1], t2, -1, r);
        }
    }
    return out;
}

std::string cell_state_name(char d, const std::string& q, const std::string& sigma, const std::string& tau,
                            const std::string& p, char e, const std::string& h) {
    return std::string("(") + d + "," + q + "," + sigma + "|" + tau + "," + p + "," + e + "|" + h + ")";
}

namespace {

enum class CellKind { Start, Plain, Turn, DollarTurn, DollarHalt };

struct Cell {
    CellKind kind = CellKind::Plain;
    int q = -1, sigma = -1, tau = -1, p = -1;
    int t = -1, r = -1, a = -1;  // return guess of a left turn
    std::string name;
};

void require_decomposable(const LimitedAutomaton& m) {
    if (m.k < 3) throw DomainError("WRONG_K", "decomposition needs a k-limited automaton with k >= 3");
    for (const auto& t : m.transitions)
        if (t.prob != 0 && t.prob != 1)
            throw DomainError("NOT_SUPPORTED", "decomposition of machines with fractional weights");
}

// Every cell state some first traverse of m can produce.
std::vector<Cell> cell_states(const LimitedAutomaton& m) {
    std::vector<Cell> cells;
    const auto& S = m.symbols;
    auto name = [&](int q) { return m.states.name(q); };
    auto live = [&](const LimitedTransition& t) { return t.prob > 0 && !m.halting(t.from); };
    auto first = [](CellKind kind, const LimitedTransition& t) {
        Cell c;
        c.kind = kind;
        c.q = t.from, c.sigma = t.read, c.tau = t.write, c.p = t.to;
        return c;
    };
    for (const auto& t : m.transitions) {
        if (!live(t)) continue;
        if (t.read == m.left_end && t.from == m.initial && !m.halting(t.to)) {
            Cell c = first(CellKind::Start, t);
            c.name = cell_state_name('N', name(t.from), S.name(t.read), S.name(t.write), name(t.to), 'R', kLambda);
            cells.push_back(c);
        } else if (t.read == m.right_end) {
            bool halts = m.halting(t.to);
            Cell c = first(halts ? CellKind::DollarHalt : CellKind::DollarTurn, t);
            c.name = cell_state_name('L', name(t.from), kRightEnd, kRightEnd, name(t.to), halts ? 'R' : 'L', kLambda);
            cells.push_back(c);
        } else if (m.level[t.read] == 0 && !m.halting(t.to)) {
            if (t.dir > 0) {
                Cell c = first(CellKind::Plain, t);
                c.name = cell_state_name('L', name(t.from), S.name(t.read), S.name(t.write), name(t.to), 'R', kLambda);
                cells.push_back(c);
                continue;
            }
            for (const auto& back : m.transitions) {
                if (!live(back) || back.read != t.write || back.dir < 0 || m.halting(back.to)) continue;
                Cell c = first(CellKind::Turn, t);
                c.t = back.from, c.r = back.to, c.a = back.write;
                c.name = cell_state_name('L', name(t.from), S.name(t.read), S.name(t.write), name(t.to), 'L',
                                         name(back.from) + "," + name(back.to) + "," + S.name(back.write));
                cells.push_back(c);
            }
        }
    }
    return cells;
}

}  // namespace

RtTransducer first_traverse_transducer(const LimitedAutomaton& m) {
    require_decomposable(m);
    const auto cells = cell_states(m);
    std::vector<std::string> names;
    for (const auto& c : cells) names.push_back(c.name);
    auto out = RtTransducer::with_alphabets(input_alphabet(m), names);
    out.initial = out.add_state("start");
    std::vector<int> st(m.num_states());
    for (int q = 0; q < m.num_states(); ++q) st[q] = out.add_state(m.states.name(q));
    std::string acc_name = "acc";
    while (out.states.find(acc_name) >= 0) acc_name += "'";
    const int acc = out.add_state(acc_name, true, false);

    for (int i = 0; i < static_cast<int>(cells.size()); ++i) {
        const auto& c = cells[i];
        switch (c.kind) {
            case CellKind::Start: out.add(out.initial, out.left_read(), st[c.p], i); break;
            case CellKind::Plain:
                out.add(st[c.q], out.input.find(m.symbols.name(c.sigma)), st[c.p], i);
                break;
            case CellKind::Turn: out.add(st[c.q], out.input.find(m.symbols.name(c.sigma)), st[c.r], i); break;
            case CellKind::DollarTurn:
            case CellKind::DollarHalt: out.add(st[c.q], out.right_read(), acc, i); break;
        }
    }
    return out;
}

// N's tape holds the cell states in reverse, so an M-move in direction d is an
// N-move in direction -d, and an M-symbol of level i sits at level i - 1.
// Turning cells are first reached on M's third visit; N notes the pending
// third-visit move in a level-1 symbol pend(t,u,b) and replays the detour that
// followed the left turn, checking on its return that M arrives in state t.
// Once M halts, N sweeps to $ and back to |c; any turning cell not yet
// resolved cancels the run.
LimitedAutomaton residual_machine(const LimitedAutomaton& m) {
    require_decomposable(m);
    const int k = m.k - 1;
    const auto cells = cell_states(m);
    std::vector<std::string> names;
    for (const auto& c : cells) names.push_back(c.name);
    auto n = LimitedAutomaton::with_input(k, names);
    const auto& S = m.symbols;

    // Tape symbols.
    std::vector<int> image(m.num_symbols(), -1);
    for (int a = 0; a < m.num_symbols(); ++a)
        if (a != m.left_end && a != m.right_end && m.level[a] >= 2) image[a] = n.add_symbol("[" + S.name(a) + "]", m.level[a] - 1);
    std::vector<int> left_copy(k + 1, -1), right_copy(k + 1, -1), junk(k + 1, -1);
    for (int j = 1; j <= k; ++j) {
        left_copy[j] = n.add_symbol("[" + kLeftEnd + "]" + std::to_string(j), j);
        right_copy[j] = n.add_symbol("[" + kRightEnd + "]" + std::to_string(j), j);
        junk[j] = n.add_symbol("⊘" + std::to_string(j), j);
    }
    auto sym_of_cell = [&](int i) { return n.symbols.find(cells[i].name); };
    // pend symbols, keyed by (t, u, b).
    std::map<std::array<int, 3>, int> pend;
    for (const auto& c : cells) {
        if (c.kind != CellKind::Turn) continue;
        for (const auto& tr : m.transitions)
            if (tr.prob > 0 && tr.read == c.a && tr.dir < 0 && !m.halting(tr.from)) {
                std::array<int, 3> key{c.t, tr.to, tr.write};
                if (!pend.count(key))
                    pend[key] = n.add_symbol("pend(" + m.states.name(c.t) + "," + m.states.name(tr.to) + "," +
                                                 S.name(tr.write) + ")",
                                             1);
            }
    }

    // States.
    const int start = n.add_state("start");
    const int init = n.add_state("init");
    std::vector<int> mem(m.num_states(), -1);
    for (int q = 0; q < m.num_states(); ++q)
        if (!m.halting(q)) mem[q] = n.add_state("mem(" + m.states.name(q) + ")");
    const int check_r[2] = {n.add_state("check_R(rej)"), n.add_state("check_R(acc)")};
    const int check_l[2] = {n.add_state("check_L(rej)"), n.add_state("check_L(acc)")};
    const int acc = n.add_state("acc", true, false);
    const int rej = n.add_state("rej", false, true);
    n.initial = start;
    auto next = [&](int q) { return m.halting(q) ? check_r[m.accepting[q] ? 1 : 0] : mem[q]; };
    auto level = [&](int s) { return n.level[s]; };
    auto filler = [&](int s, int dir) { return level(s) == k ? s : junk[required_write_level(k, level(s), dir)]; };
    auto copy = [&](int read, bool left, int dir) {
        int j = required_write_level(k, level(read), dir);
        return left ? left_copy[j] : right_copy[j];
    };
    const Rational half = fraction(1, 2);
    auto cancel = [&](int from, int read, int dir) {
        int w = filler(read, dir);
        n.add(from, read, acc, w, dir, half);
        n.add(from, read, rej, w, dir, half);
    };

    n.add(start, n.left_end, init, n.left_end, +1);
    for (int i = 0; i < static_cast<int>(cells.size()); ++i) {
        const auto& c = cells[i];
        int s = sym_of_cell(i);
        if (c.kind == CellKind::DollarTurn) n.add(init, s, mem[c.p], copy(s, false, +1), +1);
        if (c.kind == CellKind::DollarHalt) n.add(init, s, next(c.p), copy(s, false, +1), +1);
    }

    // Symbols on N's tape standing for M-content a.
    std::vector<std::vector<int>> holders(m.num_symbols());
    for (int i = 0; i < static_cast<int>(cells.size()); ++i) {
        const auto& c = cells[i];
        if (c.kind == CellKind::Start) holders[m.left_end].push_back(sym_of_cell(i));
        if (c.kind == CellKind::Plain) holders[c.tau].push_back(sym_of_cell(i));
    }
    for (int j = 1; j <= k; ++j) {
        holders[m.left_end].push_back(left_copy[j]);
        holders[m.right_end].push_back(right_copy[j]);
    }
    for (int a = 0; a < m.num_symbols(); ++a)
        if (image[a] >= 0) holders[a].push_back(image[a]);

    std::set<std::pair<int, int>> canceled;
    for (const auto& t : m.transitions) {
        if (t.prob == 0 || m.halting(t.from)) continue;
        const int from = mem[t.from], dir = -t.dir;
        for (int s : holders[t.read]) {
            int w;
            if (t.read == m.left_end) w = copy(s, true, dir);
            else if (t.read == m.right_end) w = copy(s, false, dir);
            else w = image[t.write];
            if (w < 0) continue;
            n.add(from, s, next(t.to), w, dir);
        }
        // Third visit of a turning cell.
        for (int i = 0; i < static_cast<int>(cells.size()); ++i) {
            const auto& c = cells[i];
            if (c.kind != CellKind::Turn || c.a != t.read) continue;
            int s = sym_of_cell(i);
            if (t.dir < 0) n.add(from, s, mem[c.p], pend.at({c.t, t.to, t.write}), +1);
            else if (canceled.insert({from, s}).second) cancel(from, s, +1);
        }
    }
    // Return to a turning cell at the end of the detour.
    for (const auto& [key, s] : pend) {
        auto [t, u, b] = key;
        for (int q = 0; q < m.num_states(); ++q) {
            if (m.halting(q)) continue;
            if (q != t || image[b] < 0) cancel(mem[q], s, +1);
            else n.add(mem[q], s, next(u), image[b], +1);
        }
    }

    std::set<int> unresolved;
    for (const auto& [key, s] : pend) unresolved.insert(s);
    for (int i = 0; i < static_cast<int>(cells.size()); ++i)
        if (cells[i].kind == CellKind::Turn) unresolved.insert(sym_of_cell(i));

    // A dead end of M is a rejection, but pending guesses still need checking.
    {
        std::set<std::pair<int, int>> has;
        for (const auto& t : n.transitions) has.insert({t.from, t.read});
        for (int q = 0; q < m.num_states(); ++q) {
            if (m.halting(q)) continue;
            for (int s = 0; s < n.num_symbols(); ++s) {
                if (has.count({mem[q], s})) continue;
                if (unresolved.count(s)) {
                    cancel(mem[q], s, +1);
                    continue;
                }
                int dir = s == n.right_end ? -1 : +1;
                n.add(mem[q], s, check_r[0], s == n.left_end || s == n.right_end ? s : filler(s, dir), dir);
            }
        }
    }

    // Final sweeps.
    for (int v = 0; v < 2; ++v) {
        n.add(check_r[v], n.left_end, check_r[v], n.left_end, +1);
        n.add(check_r[v], n.right_end, check_l[v], n.right_end, -1);
        n.add(check_l[v], n.left_end, v ? acc : rej, n.left_end, +1);
        for (int s = 0; s < n.num_symbols(); ++s) {
            if (s == n.left_end || s == n.right_end) continue;
            for (int dir : {+1, -1}) {
                int from = dir > 0 ? check_r[v] : check_l[v];
                if (unresolved.count(s)) cancel(from, s, dir);
                else n.add(from, s, from, filler(s, dir), dir);
            }
        }
    }
    return n;
}

namespace {

template <class Machine>
bool lfm(const OutputMultiset& f, const Machine& m, const Rational& threshold) {
    if (f.empty()) throw DomainError("EMPTY_OUTPUT", "the transducer produced no output");
    if (threshold <= 0 || threshold >= 1) throw DomainError("GAP_OUT_OF_RANGE", "threshold must lie in (0, 1)");
    Rational sum = 0, total = 0;
    for (const auto& [y, c] : f) {
        Rational mult(c);
        sum += mult * evaluate(m, y).p_acc;
        total += mult;
    }
    return sum > threshold * total;
}

}  // namespace

bool lfm_membership(const OutputMultiset& f, const LimitedAutomaton& m, const Rational& threshold) {
    return lfm(f, m, threshold);
}

bool lfm_membership(const OutputMultiset& f, const PushdownAutomaton& m, const Rational& threshold) {
    return lfm(f, m, threshold);
}

}  // namespace limaut
