// Seeded fixture generator. Only raw mt19937_64 output is used (no standard
// distributions) so that a seed yields the same machine on every platform.

#include <algorithm>
#include <random>

#include "limaut/errors.hpp"
#include "limaut/validate.hpp"
#include "limaut/zoo.hpp"

namespace limaut::zoo {

namespace {

class Draw {
public:
    explicit Draw(std::uint64_t seed) : rng_(seed) {}
    int below(int n) { return static_cast<int>(rng_() % static_cast<std::uint64_t>(n)); }
    bool chance(int num, int den) { return below(den) < num; }
    template <class T>
    const T& pick(const std::vector<T>& v) { return v[below(static_cast<int>(v.size()))]; }

    // Dyadic weights summing to 1 over `parts` outcomes.
    std::vector<Rational> split(int parts) {
        std::vector<Rational> w;
        Rational left = 1;
        for (int i = 0; i + 1 < parts; ++i) {
            Rational piece = left * fraction(1 + below(3), 4);
            w.push_back(piece);
            left -= piece;
        }
        w.push_back(left);
        return w;
    }

private:
    std::mt19937_64 rng_;
};

std::vector<std::string> letters(int n) {
    std::vector<std::string> out;
    for (int i = 0; i < n; ++i) out.push_back(std::string(1, static_cast<char>('a' + i)));
    return out;
}

// Repeated draws of the same move are merged: weights add up, and a
// non-probabilistic move keeps weight 1.
void add_move(LimitedAutomaton& m, bool prob, int q, int sym, int to, int write, int dir, const Rational& w) {
    for (auto& t : m.transitions)
        if (t.from == q && t.read == sym && t.to == to && t.write == write && t.dir == dir) {
            if (prob) t.prob += w;
            return;
        }
    m.add(q, sym, to, write, dir, w);
}

void add_move(PushdownAutomaton& m, bool prob, int q, int r, int top, int to, const std::vector<int>& push,
              const Rational& w) {
    for (auto& t : m.transitions)
        if (t.from == q && t.read == r && t.top == top && t.to == to && t.push == push) {
            if (prob) t.prob += w;
            return;
        }
    m.add(q, r, top, to, push, w);
}

int branching(Draw& d, const std::string& mode) { return mode == "det" ? 1 : 1 + d.below(2); }

std::vector<Rational> weights(Draw& d, const std::string& mode, int parts) {
    if (mode == "prob") return d.split(parts);
    return std::vector<Rational>(parts, Rational(1));
}

LimitedAutomaton random_limited(const RandomSpec& s, Draw& d) {
    auto m = LimitedAutomaton::with_input(s.k, letters(s.input_symbols));
    for (int lvl = 1; lvl <= s.k; ++lvl)
        for (int j = 0; j < s.work_symbols; ++j)
            m.add_symbol("s" + std::to_string(lvl) + "_" + std::to_string(j), lvl);
    for (int q = 0; q < s.states; ++q) m.add_state("q" + std::to_string(q));
    int acc = m.add_state("acc", true, false);
    int rej = m.add_state("rej", false, true);

    std::vector<std::vector<int>> writable(s.k + 1);
    for (int sym = 0; sym < m.num_symbols(); ++sym)
        if (sym != m.left_end && sym != m.right_end) writable[m.level[sym]].push_back(sym);

    for (int q = 0; q < s.states; ++q) {
        for (int sym = 0; sym < m.num_symbols(); ++sym) {
            bool must = q == m.initial && sym == m.left_end;
            if (!must && d.chance(1, 8)) continue;
            int parts = branching(d, s.determinism);
            auto w = weights(d, s.determinism, parts);
            for (int i = 0; i < parts; ++i) {
                int dir = sym == m.left_end ? +1 : sym == m.right_end ? -1 : (d.chance(1, 2) ? +1 : -1);
                int write = sym;
                if (m.level[sym] < s.k) write = d.pick(writable[required_write_level(s.k, m.level[sym], dir)]);
                int to = d.chance(1, 5) ? (d.chance(1, 2) ? acc : rej) : d.below(s.states);
                add_move(m, s.determinism == "prob", q, sym, to, write, dir, w[i]);
            }
        }
    }
    return m;
}

// Ideal-shape generator: states are split into reading states, which never
// take λ-moves, and popping states. Push and stationary moves only enter
// reading or halting states; λ-moves always pop a non-bottom symbol.
PushdownAutomaton random_pda(const RandomSpec& s, Draw& d) {
    auto m = PushdownAutomaton::with_input(letters(s.input_symbols));
    for (int j = 0; j < s.work_symbols; ++j) m.add_stack_symbol("S" + std::to_string(j));
    std::vector<int> reading, popping;
    for (int q = 0; q < s.states; ++q) {
        bool pops = q > 0 && d.chance(1, 3);
        int id = m.add_state((pops ? "p" : "r") + std::to_string(q));
        (pops ? popping : reading).push_back(id);
    }
    int acc = m.add_state("acc", true, false);
    int rej = m.add_state("rej", false, true);
    std::vector<int> enter = reading;
    enter.push_back(acc);
    enter.push_back(rej);
    std::vector<int> any = enter;
    any.insert(any.end(), popping.begin(), popping.end());
    const int stack_n = m.stack.size();
    const bool prob = s.determinism == "prob";

    for (int q = 0; q < s.states; ++q) {
        bool pops = std::find(popping.begin(), popping.end(), q) != popping.end();
        for (int top = 0; top < stack_n; ++top) {
            Rational lam = 0;
            if (pops && top != 0) {
                lam = s.determinism == "prob" ? fraction(d.below(3), 2) : Rational(d.below(2));
                if (lam > 0) {
                    int parts = branching(d, s.determinism);
                    auto w = s.determinism == "prob" ? d.split(parts) : weights(d, s.determinism, parts);
                    for (int i = 0; i < parts; ++i) add_move(m, prob, q, kReadLambda, top, d.pick(any), {}, w[i] * lam);
                }
            }
            if (lam == 1) continue;
            for (int r = 0; r < m.num_reads(); ++r) {
                if (r == m.left_read() && top != 0) continue;
                int parts = branching(d, s.determinism);
                auto w = weights(d, s.determinism, parts);
                for (int i = 0; i < parts; ++i) {
                    Rational p = s.determinism == "prob" ? w[i] * (1 - lam) : w[i];
                    if (r == m.right_read()) {
                        add_move(m, prob, q, r, top, d.chance(1, 2) ? acc : rej, {top}, p);
                        continue;
                    }
                    int kind = d.below(3);  // 0 pop, 1 stationary, 2 push
                    if (kind == 0 && top != 0) {
                        add_move(m, prob, q, r, top, d.pick(any), {}, p);
                    } else if (kind == 2 && stack_n > 1) {
                        int b = 1 + d.below(stack_n - 1);
                        add_move(m, prob, q, r, top, d.pick(enter), {b, top}, p);
                    } else {
                        add_move(m, prob, q, r, top, d.pick(enter), {top}, p);
                    }
                }
            }
        }
    }
    return m;
}

RtTransducer random_transducer(const RandomSpec& s, Draw& d) {
    auto t = RtTransducer::with_alphabets(letters(s.input_symbols), [&] {
        std::vector<std::string> out;
        for (int j = 0; j < s.output_symbols; ++j) out.push_back("o" + std::to_string(j));
        return out;
    }());
    for (int q = 0; q < s.states; ++q) t.add_state("t" + std::to_string(q), q > 0 && d.chance(1, 2), false);
    if (s.states == 1) t.accepting[0] = 1;
    const int reads = t.input.size() + 2;
    for (int q = 0; q < s.states; ++q)
        for (int r = 0; r < reads; ++r) {
            int parts = branching(d, s.determinism);
            if (s.determinism != "det" && d.chance(1, 6)) parts = 0;
            for (int i = 0; i < parts; ++i) {
                int to = d.below(s.states), out = d.chance(1, 4) ? -1 : d.below(s.output_symbols);
                bool seen = std::any_of(t.transitions.begin(), t.transitions.end(), [&](const TransducerTransition& x) {
                    return x.from == q && x.read == r && x.to == to && x.output == out;
                });
                if (!seen) t.add(q, r, to, out);
            }
        }
    return t;
}

}  // namespace

AnyMachine random_machine(const RandomSpec& s) {
    auto bad = [](const std::string& why) { return DomainError("INCONSISTENT_SPEC", why); };
    if (s.states < 1) throw bad("need at least one state");
    if (s.input_symbols < 1 || s.input_symbols > 26) throw bad("input alphabet size must be in 1..26");
    if (s.determinism != "det" && s.determinism != "nondet" && s.determinism != "prob")
        throw bad("determinism must be det, nondet or prob");
    Draw d(s.seed);
    if (s.kind == "limited") {
        if (s.k < 1) throw bad("k must be at least 1");
        if (s.work_symbols < 1) throw bad("need at least one work symbol per level");
        return random_limited(s, d);
    }
    if (s.kind == "pda") {
        if (s.work_symbols < 0) throw bad("negative stack alphabet");
        return random_pda(s, d);
    }
    if (s.kind == "transducer") {
        if (s.output_symbols < 1) throw bad("need at least one output symbol");
        if (s.determinism == "prob") throw bad("transducers are not probabilistic");
        return random_transducer(s, d);
    }
    throw bad("unknown kind " + s.kind);
}

std::pair<RtTransducer, RtTransducer> random_transducer_pair(const RandomSpec& s) {
    RandomSpec first = s, second = s;
    first.kind = second.kind = "transducer";
    second.seed = s.seed ^ 0x9e3779b97f4a7c15ULL;
    second.input_symbols = s.output_symbols;
    auto g = std::get<RtTransducer>(random_machine(first));
    auto raw = std::get<RtTransducer>(random_machine(second));
    // Read ids are positional, so relabelling the input alphabet keeps the moves.
    auto f = RtTransducer::with_alphabets(g.output.names(), raw.output.names());
    f.states = raw.states;
    f.initial = raw.initial;
    f.accepting = raw.accepting;
    f.rejecting = raw.rejecting;
    for (auto t : raw.transitions) {
        if (t.read >= raw.input.size()) t.output = -1;
        bool seen = std::find(f.transitions.begin(), f.transitions.end(), t) != f.transitions.end();
        if (!seen) f.transitions.push_back(t);
    }
    return {f, g};
}

}  // namespace limaut::zoo
