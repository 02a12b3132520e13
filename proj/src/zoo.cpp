#include "limaut/zoo.hpp"

#include <map>
#include <stdexcept>

#include "limaut/errors.hpp"

namespace limaut::zoo {

namespace {

// Counts a maximal run of `c` starting at i; advances i.
int run(const Word& x, std::size_t& i, const char* c) {
    int n = 0;
    while (i < x.size() && x[i] == c) ++i, ++n;
    return n;
}

struct Block {
    int n = 0, m = 0, p = 0;
};

bool parse_abc(const Word& x, std::size_t from, std::size_t to, Block& b) {
    Word part(x.begin() + from, x.begin() + to);
    std::size_t i = 0;
    b.n = run(part, i, "a");
    b.m = run(part, i, "b");
    b.p = run(part, i, "c");
    return i == part.size();
}

// Completes a PDA with explicit rejecting moves: every (q, σ, a) that has no
// λ-move and no σ-move goes to `rej` leaving the stack unchanged.
void complete_with_reject(PushdownAutomaton& m, int rej) {
    std::vector<std::vector<char>> has(static_cast<std::size_t>(m.num_states()) * m.stack.size(),
                                       std::vector<char>(m.num_reads() + 1, 0));
    for (const auto& t : m.transitions) has[static_cast<std::size_t>(t.from) * m.stack.size() + t.top][t.read + 1] = 1;
    for (int q = 0; q < m.num_states(); ++q) {
        if (m.halting(q)) continue;
        for (int a = 0; a < m.stack.size(); ++a) {
            const auto& h = has[static_cast<std::size_t>(q) * m.stack.size() + a];
            if (h[0]) continue;
            for (int r = 0; r < m.num_reads(); ++r)
                if (!h[r + 1]) m.add(q, r, a, rej, {a});
        }
    }
}

}  // namespace

bool oracle_L2(const Word& x) {
    std::size_t i = 0;
    int n = run(x, i, "a");
    int m = run(x, i, "b");
    if (i + 1 != x.size()) return false;
    if (x[i] == "c") return m == n;
    if (x[i] == "d") return m == 2 * n;
    return false;
}

bool oracle_L1p(const Word& x) {
    Block b;
    return parse_abc(x, 0, x.size(), b) && b.n == b.m;
}

bool oracle_L2p(const Word& x) {
    Block b;
    return parse_abc(x, 0, x.size(), b) && b.m == b.p;
}

bool oracle_anbncn(const Word& x) {
    Block b;
    return parse_abc(x, 0, x.size(), b) && b.n == b.m && b.m == b.p;
}

bool oracle_contains_a(const Word& x) {
    for (const auto& s : x)
        if (s == "a") return true;
    return false;
}

namespace {

bool oracle_ab_factor(const Word& x) {
    for (std::size_t i = 0; i + 1 < x.size(); ++i)
        if (x[i] == "a" && x[i + 1] == "b") return true;
    return false;
}

bool oracle_astar_bstar(const Word& x) {
    std::size_t i = 0;
    run(x, i, "a");
    run(x, i, "b");
    return i == x.size();
}

}  // namespace

bool oracle_Lk(int k, const Word& x) {
    if (k < 3) throw std::invalid_argument("oracle_Lk needs k >= 3");
    // Block order on the tape: even indices ascending below k, then k, then the
    // odd indices in [3, k-1] descending, then 1.
    std::vector<int> order;
    for (int i = 2; i <= k - 1; i += 2) order.push_back(i);
    order.push_back(k);
    for (int i = (k - 1) % 2 == 1 ? k - 1 : k - 2; i >= 3; i -= 2) order.push_back(i);
    order.push_back(1);

    std::vector<std::size_t> cuts{0};
    for (std::size_t i = 0; i < x.size(); ++i)
        if (x[i] == "#") cuts.push_back(i + 1);
    if (cuts.size() != order.size()) return false;
    cuts.push_back(x.size() + 1);

    std::vector<Block> w(k + 1);
    std::string w1;
    for (std::size_t b = 0; b < order.size(); ++b) {
        std::size_t from = cuts[b], to = cuts[b + 1] - 1;
        if (order[b] == 1) {
            if (to - from != 1 || (x[from] != "a" && x[from] != "b")) return false;
            w1 = x[from];
        } else if (!parse_abc(x, from, to, w[order[b]])) {
            return false;
        }
    }
    // (i)
    if (w1 == "a" ? !(w[2].n <= w[2].p) : !(w[2].m <= w[2].p)) return false;
    // (ii), both consequents required when both guards hold
    for (int j = 3; j <= k - 1; ++j) {
        const Block& v = w[j - 1];
        if ((v.n == v.p || v.n < v.m) && !(w[j].n <= w[j].m)) return false;
        if ((v.n < v.p || v.n == v.m) && !(w[j].n <= w[j].p)) return false;
    }
    // (iii)
    const Block& v = w[k - 1];
    const Block& u = w[k];
    if (v.n == v.p && u.n != u.m) return false;
    if (v.n < v.p && !(u.n < u.p)) return false;
    if (v.n == v.m && u.n != u.p) return false;
    if (v.n < v.m && !(u.n < u.m)) return false;
    return true;
}

LanguageOracle language(const std::string& name) {
    const std::vector<std::string> abc{"a", "b", "c"};
    if (name == "L2") return {name, {"a", "b", "c", "d"}, oracle_L2};
    if (name == "L1p") return {name, abc, oracle_L1p};
    if (name == "L2p") return {name, abc, oracle_L2p};
    if (name == "anbncn") return {name, abc, oracle_anbncn};
    if (name == "contains_a") return {name, {"a", "b"}, oracle_contains_a};
    if (name == "ab_factor") return {name, {"a", "b"}, oracle_ab_factor};
    if (name == "astar_bstar") return {name, {"a", "b"}, oracle_astar_bstar};
    if (name == "sigma_star") return {name, {"a", "b"}, [](const Word&) { return true; }};
    if (name.size() > 1 && name[0] == 'L') {
        int k = std::stoi(name.substr(1));
        if (k >= 3) return {name, {"a", "b", "c", "#"}, [k](const Word& x) { return oracle_Lk(k, x); }};
    }
    throw InputError("unknown language " + name);
}

PushdownAutomaton build_L2_rppda() {
    auto m = PushdownAutomaton::with_input({"a", "b", "c", "d"});
    m.add_stack_symbol("A");
    for (const char* q : {"q0", "pc", "cb", "ce", "pd", "dh", "df", "de"}) m.add_state(q);
    int rej = m.add_state("rej", false, true);
    m.add_state("acc", true, false);
    const Rational half(1, 2);
    m.add("q0", "|c", "⊥", "pc", "⊥", half);
    m.add("q0", "|c", "⊥", "pd", "⊥", half);
    // c-branch: a^n b^n c
    m.add("pc", "a", "⊥", "pc", "A ⊥");
    m.add("pc", "a", "A", "pc", "A A");
    m.add("pc", "b", "A", "cb", "");
    m.add("pc", "c", "⊥", "ce", "⊥");
    m.add("cb", "b", "A", "cb", "");
    m.add("cb", "c", "⊥", "ce", "⊥");
    m.add("ce", "$", "⊥", "acc", "⊥");
    // d-branch: a^n b^2n d, one pop per pair of b's
    m.add("pd", "a", "⊥", "pd", "A ⊥");
    m.add("pd", "a", "A", "pd", "A A");
    m.add("pd", "b", "A", "dh", "A");
    m.add("pd", "d", "⊥", "de", "⊥");
    m.add("dh", "b", "A", "df", "");
    m.add("df", "b", "A", "dh", "A");
    m.add("df", "d", "⊥", "de", "⊥");
    m.add("de", "$", "⊥", "acc", "⊥");
    complete_with_reject(m, rej);
    return m;
}

std::pair<PushdownAutomaton, PushdownAutomaton> build_dcfl2_witnesses() {
    auto l1 = PushdownAutomaton::with_input({"a", "b", "c"});
    l1.add_stack_symbol("A");
    for (const char* q : {"s0", "pa", "pb", "pc"}) l1.add_state(q);
    int rej1 = l1.add_state("rej", false, true);
    l1.add_state("acc", true, false);
    l1.add("s0", "|c", "⊥", "pa", "⊥");
    l1.add("pa", "a", "⊥", "pa", "A ⊥");
    l1.add("pa", "a", "A", "pa", "A A");
    l1.add("pa", "b", "A", "pb", "");
    l1.add("pa", "c", "⊥", "pc", "⊥");
    l1.add("pa", "$", "⊥", "acc", "⊥");
    l1.add("pb", "b", "A", "pb", "");
    l1.add("pb", "c", "⊥", "pc", "⊥");
    l1.add("pb", "$", "⊥", "acc", "⊥");
    l1.add("pc", "c", "⊥", "pc", "⊥");
    l1.add("pc", "$", "⊥", "acc", "⊥");
    complete_with_reject(l1, rej1);

    auto l2 = PushdownAutomaton::with_input({"a", "b", "c"});
    l2.add_stack_symbol("B");
    for (const char* q : {"s0", "pa", "pb", "pc"}) l2.add_state(q);
    int rej2 = l2.add_state("rej", false, true);
    l2.add_state("acc", true, false);
    l2.add("s0", "|c", "⊥", "pa", "⊥");
    l2.add("pa", "a", "⊥", "pa", "⊥");
    l2.add("pa", "b", "⊥", "pb", "B ⊥");
    l2.add("pa", "$", "⊥", "acc", "⊥");
    l2.add("pb", "b", "B", "pb", "B B");
    l2.add("pb", "c", "B", "pc", "");
    l2.add("pc", "c", "B", "pc", "");
    l2.add("pc", "$", "⊥", "acc", "⊥");
    complete_with_reject(l2, rej2);
    return {l1, l2};
}

PushdownAutomaton geometric_loop_pda() {
    auto m = PushdownAutomaton::with_input({"a", "b"});
    m.add_state("q");
    m.add_state("acc", true, false);
    m.add("q", "λ", "⊥", "acc", "⊥", Rational(1, 2));
    m.add("q", "λ", "⊥", "q", "⊥", Rational(1, 2));
    return m;
}

PushdownAutomaton fair_coin_pda() {
    auto m = PushdownAutomaton::with_input({"a", "b"});
    m.add_state("q");
    m.add_state("acc", true, false);
    m.add_state("rej", false, true);
    m.add("q", "λ", "⊥", "acc", "⊥", Rational(1, 2));
    m.add("q", "λ", "⊥", "rej", "⊥", Rational(1, 2));
    return m;
}

namespace {

LimitedAutomaton limited(int k, const std::vector<std::string>& input,
                         const std::vector<std::vector<std::string>>& levels,
                         const std::vector<std::string>& states) {
    auto m = LimitedAutomaton::with_input(k, input);
    for (std::size_t i = 0; i < levels.size(); ++i)
        for (const auto& s : levels[i]) m.add_symbol(s, static_cast<int>(i) + 1);
    for (const auto& q : states) m.add_state(q);
    m.add_state("acc", true, false);
    m.add_state("rej", false, true);
    return m;
}

}  // namespace

LimitedAutomaton l1p_2lda() {
    auto m = limited(2, {"a", "b", "c"}, {{"A1", "C1"}, {"X", "C2"}}, {"q0", "P", "L", "R", "Cs", "V"});
    m.add("q0", "|c", "P", "|c", +1);
    m.add("P", "a", "P", "A1", +1);
    m.add("P", "b", "L", "X", -1);
    m.add("P", "c", "Cs", "C1", +1);
    m.add("P", "$", "V", "$", -1);
    m.add("L", "X", "L", "X", -1);
    m.add("L", "A1", "R", "X", +1);
    m.add("L", "|c", "rej", "|c", +1);
    m.add("R", "X", "R", "X", +1);
    m.add("R", "b", "L", "X", -1);
    m.add("R", "c", "Cs", "C1", +1);
    m.add("R", "$", "V", "$", -1);
    m.add("R", "a", "rej", "A1", +1);
    m.add("Cs", "c", "Cs", "C1", +1);
    m.add("Cs", "$", "V", "$", -1);
    m.add("Cs", "a", "rej", "A1", +1);
    m.add("Cs", "b", "rej", "C1", +1);
    m.add("V", "X", "V", "X", -1);
    m.add("V", "C1", "V", "C2", -1);
    m.add("V", "A1", "rej", "X", -1);
    m.add("V", "|c", "acc", "|c", +1);
    m.claims_unambiguous = true;
    return m;
}

LimitedAutomaton l2p_2lda() {
    auto m = limited(2, {"a", "b", "c"}, {{"A1", "B1"}, {"X", "A2"}}, {"q0", "P", "Pb", "L", "R", "V"});
    m.add("q0", "|c", "P", "|c", +1);
    m.add("P", "a", "P", "A1", +1);
    m.add("P", "b", "Pb", "B1", +1);
    m.add("P", "c", "L", "X", -1);
    m.add("P", "$", "V", "$", -1);
    m.add("Pb", "b", "Pb", "B1", +1);
    m.add("Pb", "c", "L", "X", -1);
    m.add("Pb", "$", "V", "$", -1);
    m.add("L", "X", "L", "X", -1);
    m.add("L", "B1", "R", "X", +1);
    m.add("R", "X", "R", "X", +1);
    m.add("R", "c", "L", "X", -1);
    m.add("R", "$", "V", "$", -1);
    m.add("V", "X", "V", "X", -1);
    m.add("V", "A1", "V", "A2", -1);
    m.add("V", "|c", "acc", "|c", +1);
    return m;
}

LimitedAutomaton some_a_2lna() {
    auto m = limited(2, {"a", "b"}, {{"A1", "B1"}, {"M", "A2", "B2"}}, {"q0", "S", "Lm"});
    m.add("q0", "|c", "S", "|c", +1);
    m.add("S", "a", "S", "A1", +1);
    m.add("S", "a", "Lm", "M", -1);
    m.add("S", "b", "S", "B1", +1);
    m.add("S", "$", "rej", "$", -1);
    m.add("Lm", "A1", "Lm", "A2", -1);
    m.add("Lm", "B1", "Lm", "B2", -1);
    m.add("Lm", "|c", "acc", "|c", +1);
    return m;
}

LimitedAutomaton ab_factor_2lna() {
    auto m = limited(2, {"a", "b"}, {{"A1", "B1", "G"}, {"A2", "B2", "G2", "Y"}},
                     {"q0", "S", "Chk", "Back", "Back2", "Fwd"});
    m.add("q0", "|c", "S", "|c", +1);
    m.add("S", "a", "S", "A1", +1);
    m.add("S", "b", "S", "B1", +1);
    m.add("S", "a", "Chk", "G", +1);
    m.add("Chk", "b", "Back", "Y", -1);
    m.add("Back", "G", "Back2", "G2", -1);
    m.add("Back2", "A1", "Back2", "A2", -1);
    m.add("Back2", "B1", "Back2", "B2", -1);
    m.add("Back2", "|c", "Fwd", "|c", +1);
    for (const char* f : {"A2", "B2", "G2", "Y"}) m.add("Fwd", f, "Fwd", f, +1);
    m.add("Fwd", "a", "Fwd", "A1", +1);
    m.add("Fwd", "b", "Fwd", "B1", +1);
    m.add("Fwd", "$", "acc", "$", -1);
    return m;
}

LimitedAutomaton sweep_3lda() {
    // a*b*: one right sweep, then back to |c carrying the verdict.
    auto m = limited(3, {"a", "b"}, {{"A1", "B1"}, {"A2", "B2"}, {}}, {"q0", "Pa", "Pb", "Bad", "V", "VF"});
    m.add("q0", "|c", "Pa", "|c", +1);
    m.add("Pa", "a", "Pa", "A1", +1);
    m.add("Pa", "b", "Pb", "B1", +1);
    m.add("Pa", "$", "V", "$", -1);
    m.add("Pb", "b", "Pb", "B1", +1);
    m.add("Pb", "a", "Bad", "A1", +1);
    m.add("Pb", "$", "V", "$", -1);
    m.add("Bad", "a", "Bad", "A1", +1);
    m.add("Bad", "b", "Bad", "B1", +1);
    m.add("Bad", "$", "VF", "$", -1);
    for (const char* v : {"V", "VF"}) {
        m.add(v, "A1", v, "A2", -1);
        m.add(v, "B1", v, "B2", -1);
    }
    m.add("V", "|c", "acc", "|c", +1);
    m.add("VF", "|c", "rej", "|c", +1);
    return m;
}

LimitedAutomaton turn_3lda() {
    // a^n b^n c^m. Each b is a turning point of the first traverse: the head
    // turns left on it, cancels the nearest unmatched a, and comes back.
    auto m = limited(3, {"a", "b", "c"}, {{"A1", "B1", "C1"}, {"Bt", "A2", "B2", "C2"}, {"X"}},
                     {"q0", "P", "L", "R", "Rf", "P2", "Pc", "F", "V", "VF"});
    m.add("q0", "|c", "P", "|c", +1);
    for (const char* p : {"P", "P2"}) {
        m.add(p, "b", "L", "Bt", -1);
        m.add(p, "c", "Pc", "C1", +1);
        m.add(p, "$", "V", "$", -1);
    }
    m.add("P", "a", "P", "A1", +1);
    m.add("P2", "a", "F", "A1", +1);
    m.add("L", "X", "L", "X", -1);
    m.add("L", "A1", "R", "X", +1);
    m.add("L", "|c", "Rf", "|c", +1);
    m.add("R", "X", "R", "X", +1);
    m.add("R", "Bt", "P2", "X", +1);
    m.add("Rf", "X", "Rf", "X", +1);
    m.add("Rf", "Bt", "F", "X", +1);
    m.add("Pc", "c", "Pc", "C1", +1);
    m.add("Pc", "a", "F", "A1", +1);
    m.add("Pc", "b", "F", "B1", +1);
    m.add("Pc", "$", "V", "$", -1);
    m.add("F", "a", "F", "A1", +1);
    m.add("F", "b", "F", "B1", +1);
    m.add("F", "c", "F", "C1", +1);
    m.add("F", "$", "VF", "$", -1);
    for (const char* v : {"V", "VF"}) {
        m.add(v, "X", v, "X", -1);
        m.add(v, "C1", v, "C2", -1);
        m.add(v, "B1", "VF", "B2", -1);
        m.add(v, "A1", "VF", "A2", -1);
    }
    m.add("V", "|c", "acc", "|c", +1);
    m.add("VF", "|c", "rej", "|c", +1);
    return m;
}

std::vector<ZooEntry> catalogue() {
    auto [l1, l2] = build_dcfl2_witnesses();
    return {
        {"Z_L2PPDA", build_L2_rppda(), "L2", true},
        {"Z_L1P_DPDA", l1, "L1p", false},
        {"Z_L2P_DPDA", l2, "L2p", false},
        {"Z_GEOM", geometric_loop_pda(), "sigma_star", false},
        {"Z_COIN", fair_coin_pda(), "", false},
        {"Z_L1P_2LDA", l1p_2lda(), "L1p", false},
        {"Z_L2P_2LDA", l2p_2lda(), "L2p", false},
        {"Z_SOMEA_2LNA", some_a_2lna(), "contains_a", false},
        {"Z_ABFACTOR_2LNA", ab_factor_2lna(), "ab_factor", false},
        {"Z_SWEEP_3LDA", sweep_3lda(), "astar_bstar", false},
        {"Z_TURN_3LDA", turn_3lda(), "L1p", false},
    };
}

const ZooEntry& entry(const std::string& name) {
    static const std::vector<ZooEntry> all = catalogue();
    for (const auto& e : all)
        if (e.name == name) return e;
    throw std::invalid_argument("no zoo machine named " + name);
}

}  // namespace limaut::zoo
