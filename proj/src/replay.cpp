// Direct simulation of deterministic limited automata and the first-traverse
// data read off a run.

#include <map>

#include "limaut/decomposition.hpp"
#include "limaut/errors.hpp"

namespace limaut {

DeterministicRun run_deterministic(const LimitedAutomaton& m, const Word& x, long step_cap) {
    std::vector<int> tape{m.left_end};
    for (const auto& a : x) {
        int id = m.symbols.find(a);
        if (id < 0 || m.level[id] != 0) throw InputError("symbol '" + a + "' is not an input symbol");
        tape.push_back(id);
    }
    tape.push_back(m.right_end);

    DeterministicRun run;
    int q = m.initial;
    long cell = 0;
    if (m.halting(q)) {
        run.halted = true;
        run.accepted = m.accepting[q];
        return run;
    }
    for (long step = 0; step < step_cap; ++step) {
        const LimitedTransition* move = nullptr;
        for (const auto& t : m.transitions) {
            if (t.from != q || t.read != tape[cell] || t.prob == 0) continue;
            if (move) throw DomainError("NOT_DETERMINISTIC", "two moves at " + m.states.name(q) + "," + m.symbols.name(t.read));
            move = &t;
        }
        if (!move) {
            run.halted = true;
            return run;
        }
        run.steps.push_back({cell, q, move->read, move->to, move->write, move->dir});
        tape[cell] = move->write;
        q = move->to;
        cell += move->dir;
        if (m.halting(q)) {
            run.halted = true;
            run.accepted = m.accepting[q];
            return run;
        }
    }
    return run;
}

namespace {

std::map<long, std::vector<std::size_t>> visits_by_cell(const DeterministicRun& run) {
    std::map<long, std::vector<std::size_t>> v;
    for (std::size_t i = 0; i < run.steps.size(); ++i) v[run.steps[i].cell].push_back(i);
    return v;
}

}  // namespace

std::optional<Word> first_traverse_of(const LimitedAutomaton& m, const Word& x, const DeterministicRun& run) {
    const long last = static_cast<long>(x.size()) + 1;
    auto visits = visits_by_cell(run);
    auto st = [&](int q) { return m.states.name(q); };
    auto sy = [&](int a) { return m.symbols.name(a); };
    Word out;
    for (long cell = 0; cell <= last; ++cell) {
        auto it = visits.find(cell);
        if (it == visits.end()) return std::nullopt;
        const auto& v = it->second;
        const RunStep& s = run.steps[v[0]];
        if (cell == last) {
            bool halts = m.halting(s.to);
            out.push_back(cell_state_name('L', st(s.from), kRightEnd, kRightEnd, st(s.to), halts ? 'R' : 'L', kLambda));
            break;
        }
        if (m.halting(s.to)) return std::nullopt;
        if (cell == 0) {
            out.push_back(cell_state_name('N', st(s.from), kLeftEnd, kLeftEnd, st(s.to), 'R', kLambda));
        } else if (s.dir > 0) {
            out.push_back(cell_state_name('L', st(s.from), sy(s.read), sy(s.write), st(s.to), 'R', kLambda));
        } else {
            if (v.size() < 2) return std::nullopt;
            const RunStep& back = run.steps[v[1]];
            if (back.dir < 0 || m.halting(back.to)) return std::nullopt;
            out.push_back(cell_state_name('L', st(s.from), sy(s.read), sy(s.write), st(s.to), 'L',
                                          st(back.from) + "," + st(back.to) + "," + sy(back.write)));
        }
    }
    return out;
}

bool decomposable(const LimitedAutomaton& m, const Word& x, const DeterministicRun& run) {
    if (!run.halted || !first_traverse_of(m, x, run)) return false;
    const long last = static_cast<long>(x.size()) + 1;
    for (const auto& [cell, v] : visits_by_cell(run)) {
        if (cell == 0 || cell == last || run.steps[v[0]].dir > 0) continue;
        if (v.size() < 3 || run.steps[v[2]].dir > 0) return false;
    }
    return true;
}

}  // namespace limaut
